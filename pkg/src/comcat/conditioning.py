"""Conditioning maps, marginals, conditional states, remote evaluation.

Coordinate convention (the single authoritative statement, used by every
reshape in the package): a bipartite vector omega over factors (A, B)
stores the form coefficients row-major, index i*n_B + j for basis pair
(i, j), so W = reshape(omega, n_A, n_B) satisfies

    omega(a, b) = a^T W b.

Consequences used everywhere below:
    conditioning map    hat(omega) = W^T : A-effects -> B-states,
    its linear adjoint  hat(omega)^* = W : B-effects -> A-states,
    co-conditioning     hat(f) = F^T : A-states -> B-effects,
    and the swapped state sigma(omega) has form matrix W^T.

Remote evaluation identities are never trusted: both sides are computed
through different code paths (conditioning algebra vs explicit tripartite
contraction) and compared before a result is returned.
"""

from __future__ import annotations

from .com import Com
from .composites import in_max_cone
from .config import numeric_tolerance
from .errors import (
    DimensionMismatch,
    NotNonsignalingState,
    RemoteEvalMismatch,
    ZeroProbabilityCondition,
)
from .linalg import (
    dot,
    is_exact,
    matvec,
    max_abs,
    scale_vector,
    sub_vectors,
    tensor_vector,
    transpose,
    vec_to_matrix,
)


def form_matrix(v, A: Com, B: Com):
    if len(v) != A.dim * B.dim:
        raise DimensionMismatch(f"bipartite vector length {len(v)} vs {A.dim}x{B.dim}")
    return vec_to_matrix(v, A.dim, B.dim)


def evaluate_form(v, a, b, A: Com, B: Com):
    return dot(matvec(form_matrix(v, A, B), b), a)


def conditioning_map(omega, A: Com, B: Com, check: bool = True):
    """Matrix of hat(omega): effects of A to subnormalized states of B.

    Requires omega to be nonsignaling-positive (in the max cone)."""
    W = form_matrix(omega, A, B)
    if check and not in_max_cone(omega, A, B):
        raise NotNonsignalingState("form is negative on a product of effect generators")
    return transpose(W)


def co_conditioning_map(f, A: Com, B: Com):
    """Matrix of hat(f): states of A to effect space of B."""
    F = form_matrix(f, A, B)
    return transpose(F)


def conditioning_adjoint(omega, A: Com, B: Com):
    """Matrix of hat(omega)^*: effects of B to states of A (same form,
    evaluated in the opposite order)."""
    return form_matrix(omega, A, B)


def marginals(omega, A: Com, B: Com) -> tuple:
    """(omega_A, omega_B) = (hat(omega)^* u_B, hat(omega) u_A)."""
    W = form_matrix(omega, A, B)
    omega_b = matvec(transpose(W), A.unit)
    omega_a = matvec(W, B.unit)
    return omega_a, omega_b


def conditional_state(omega, b, A: Com, B: Com):
    """Normalized conditional state of A given effect b on B."""
    W = form_matrix(omega, A, B)
    _, omega_b = marginals(omega, A, B)
    prob = dot(omega_b, b)
    threshold = 0 if is_exact(omega) and is_exact(b) else numeric_tolerance()
    if prob <= threshold:
        raise ZeroProbabilityCondition(f"conditioning probability {prob} is not positive")
    unnormalized = matvec(W, b)
    if is_exact(unnormalized) and is_exact(prob):
        from fractions import Fraction

        return scale_vector(Fraction(1) / prob, unnormalized)
    return scale_vector(1.0 / prob, unnormalized)


def _tripartite_left(f, omega, alpha, A: Com, B: Com, C: Com):
    """(f x id_C)(alpha x omega) by explicit tensor contraction."""
    F = vec_to_matrix(f, A.dim, B.dim)
    big = tensor_vector(alpha, omega)  # index (i*nB + j)*nC + k
    nB, nC = B.dim, C.dim
    out = []
    for k in range(nC):
        total = 0
        for i in range(A.dim):
            for j in range(nB):
                total = total + F[i][j] * big[(i * nB + j) * nC + k]
        out.append(total)
    return tuple(out)


def _tripartite_right(omega, beta, f, A: Com, B: Com, C: Com):
    """(id_A x f)(omega x beta) by explicit tensor contraction; omega is a
    state over (A, C), f a form over (C, B), beta a state of B."""
    F = vec_to_matrix(f, C.dim, B.dim)
    big = tensor_vector(omega, beta)  # index (i*nC + k)*nB + j
    nC, nB = C.dim, B.dim
    out = []
    for i in range(A.dim):
        total = 0
        for k in range(nC):
            for j in range(nB):
                total = total + F[k][j] * big[(i * nC + k) * nB + j]
        out.append(total)
    return tuple(out)


def _assert_same(lhs, rhs, what: str):
    if is_exact(lhs) and is_exact(rhs):
        if tuple(lhs) != tuple(rhs):
            raise RemoteEvalMismatch(f"{what}: exact sides differ: {lhs} vs {rhs}")
    else:
        err = max_abs(sub_vectors(lhs, rhs))
        if err > numeric_tolerance():
            raise RemoteEvalMismatch(f"{what}: sides differ by {err}")


def remote_evaluate(f, omega, alpha, A: Com, B: Com, C: Com):
    """Process an A-state through a bipartite effect on (A,B) and a shared
    state on (B,C): returns the unnormalized conditional state of C.

    Computes hat(omega)(hat(f)(alpha)) and, independently, the one-shot
    contraction (f x id_C)(alpha x omega); raises if they disagree."""
    f_hat = co_conditioning_map(f, A, B)
    omega_hat = conditioning_map(omega, B, C, check=False)
    rhs = matvec(omega_hat, matvec(f_hat, alpha))
    lhs = _tripartite_left(f, omega, alpha, A, B, C)
    _assert_same(lhs, rhs, "remote evaluation")
    return rhs


def remote_evaluation_residual(f, omega, alpha, A: Com, B: Com, C: Com):
    """(result, max-abs difference between the two evaluation routes)."""
    f_hat = co_conditioning_map(f, A, B)
    omega_hat = conditioning_map(omega, B, C, check=False)
    rhs = matvec(omega_hat, matvec(f_hat, alpha))
    lhs = _tripartite_left(f, omega, alpha, A, B, C)
    return rhs, max_abs(sub_vectors(lhs, rhs))


def remote_evaluate_dual(f, omega, beta, A: Com, B: Com, C: Com):
    """Mirror protocol: omega lives on (A,C), f on (C,B), beta is a state
    of B; returns hat(omega)^*(hat(f)^*(beta)) in A, checked against the
    contraction (id_A x f)(omega x beta)."""
    f_hat_star = vec_to_matrix(f, C.dim, B.dim)
    omega_hat_star = conditioning_adjoint(omega, A, C)
    rhs = matvec(omega_hat_star, matvec(f_hat_star, beta))
    lhs = _tripartite_right(omega, beta, f, A, B, C)
    _assert_same(lhs, rhs, "dual remote evaluation")
    return rhs
