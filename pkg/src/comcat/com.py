"""Convex operational models: state/effect cone pairs with a unit functional.

The effect space is coordinatized in the same R^n as the state space via
the standard dot-product pairing, so the abstract dual is concrete and
linear adjoints are matrix transposes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import numpy as np

from . import hermitian
from .cones import PSD, POLYHEDRAL, Cone, cones_equal, dual_cone
from .config import numeric_tolerance
from .errors import DimensionMismatch, NotAMorphism, ZeroMap
from .linalg import (
    dot,
    fmt,
    frac_vector,
    is_exact,
    matvec,
    scale_matrix,
    transpose,
    vector,
)
from .lp import in_cone


@dataclass(frozen=True)
class Com:
    """A state space, a chosen effect cone inside its dual, and a unit."""

    label: str
    state_cone: Cone
    effect_cone: Cone
    unit: tuple

    @property
    def dim(self) -> int:
        return self.state_cone.dim

    @property
    def kind(self) -> str:
        return self.state_cone.kind

    def is_exact(self) -> bool:
        return self.kind == POLYHEDRAL

    def __repr__(self):
        return f"Com({self.label!r}, dim={self.dim}, kind={self.kind})"


def validate_com(com: Com, sample_seed: int = 0) -> list[str]:
    """All invariant violations of the triple (empty list = valid).

    Checks are exhaustive rather than fail-fast: unit in the effect cone,
    unit strictly positive on states, effect cone inside the dual of the
    state cone, and regularity of both cones.  PSD models are checked
    spectrally; regularity holds by construction there.
    """
    violations: list[str] = []
    A, E, u = com.state_cone, com.effect_cone, com.unit
    if A.dim != E.dim or len(u) != A.dim:
        return [
            f"carrier dimensions disagree: state {A.dim}, effect {E.dim}, unit {len(u)}"
        ]
    if A.kind != E.kind:
        violations.append(f"state cone kind {A.kind} differs from effect cone kind {E.kind}")
        return violations

    if A.kind == PSD:
        tol = numeric_tolerance()
        if hermitian.min_eigenvalue(u, A.hilbert_dims) <= tol:
            violations.append("unit functional is not strictly positive on the state cone")
        if A.hilbert_dims != E.hilbert_dims:
            violations.append("state and effect PSD cones have different factorizations")
        return violations

    if not E.member(u):
        violations.append("unit functional is not in the effect cone")
    if not A.strictly_positive(u):
        violations.append("unit functional is not strictly positive on the state cone")
    violations.extend(_effect_cone_in_dual(A, E))
    return violations


def _effect_cone_in_dual(A: Cone, E: Cone) -> list[str]:
    out = []
    if E.has_generators() or not A.has_generators():
        for e in E.generators:
            bad = [g for g in A.generators if dot(e, g) < 0]
            if bad:
                out.append(
                    f"effect generator {fmt(e)} is negative on state generator {fmt(bad[0])}"
                )
    else:
        # effect cone known only by facets: E sub dual(A) iff every state
        # generator lies in the cone spanned by those facet normals.
        for g in A.generators:
            if not in_cone(frac_vector(g), E.facets):
                out.append(
                    f"state generator {fmt(g)} violates duality with the effect cone"
                )
    return out


def is_saturated(com: Com) -> bool:
    """True iff the effect cone is the full dual of the state cone."""
    if com.kind == PSD:
        return True
    return cones_equal(com.effect_cone, dual_cone(com.state_cone))


def normalized_state_vertices(com: Com) -> tuple:
    """Extreme normalized states: generators scaled to unit value one."""
    out = []
    for g in com.state_cone.generators:
        s = dot(com.unit, g)
        out.append(tuple(x / s for x in g))
    return tuple(out)


def is_state(com: Com, alpha, normalized: bool = False) -> bool:
    if not com.state_cone.member(alpha):
        return False
    if normalized:
        value = dot(com.unit, alpha)
        if com.is_exact():
            return value == 1
        return abs(value - 1) <= numeric_tolerance()
    return True


def is_effect(com: Com, a) -> bool:
    """Effect test: both a and u - a lie in the effect cone."""
    u_minus = tuple(x - y for x, y in zip(com.unit, a))
    if com.kind == PSD:
        tol = numeric_tolerance()
        return (
            hermitian.min_eigenvalue(a, com.state_cone.hilbert_dims) >= -tol
            and hermitian.min_eigenvalue(u_minus, com.state_cone.hilbert_dims) >= -tol
        )
    E = com.effect_cone
    test = E.member if E.has_facets() else E.member_by_lp
    return test(a) and test(u_minus)


# ---------------------------------------------------------------------------
# Morphisms and processes


@dataclass
class MorphismReport:
    ok: bool
    violations: list[str] = field(default_factory=list)
    sampled: bool = False


def linear_adjoint(phi) -> tuple:
    """Adjoint in the fixed pairing coordinates: the matrix transpose."""
    return transpose(phi)


def _psd_state_samples(dims, seed=0, count=24):
    rng = np.random.default_rng(seed)
    d = int(np.prod(dims))
    samples = [np.eye(d, dtype=complex)[:, [i]] @ np.eye(d, dtype=complex)[[i], :] for i in range(d)]
    for _ in range(count):
        v = rng.normal(size=d) + 1j * rng.normal(size=d)
        v = v / np.linalg.norm(v)
        samples.append(np.outer(v, v.conj()))
    return [hermitian.coords(m, dims) for m in samples]


def is_morphism(phi, A: Com, B: Com, seed: int = 0) -> MorphismReport:
    """Positivity of phi on state cones plus positivity of its adjoint on
    the designated effect cones; the certificate names violating rays.

    Polyhedral checks are exact over generators.  PSD cones have no finite
    generator list, so those directions are checked on a deterministic
    sample of pure states and flagged as sampled.
    """
    rows = len(phi)
    cols = len(phi[0]) if rows else 0
    if rows != B.dim or cols != A.dim:
        raise DimensionMismatch(f"map is {rows}x{cols}, expected {B.dim}x{A.dim}")
    violations = []
    sampled = False
    tol = numeric_tolerance()

    if A.kind == POLYHEDRAL:
        for g in A.state_cone.generators:
            if not B.state_cone.member(matvec(phi, g)):
                violations.append(f"image of state generator {fmt(g)} leaves the target state cone")
    else:
        sampled = True
        for x in _psd_state_samples(A.state_cone.hilbert_dims, seed):
            y = matvec(phi, x)
            if B.kind == PSD:
                if hermitian.min_eigenvalue(y, B.state_cone.hilbert_dims) < -tol:
                    violations.append("image of a sampled pure state leaves the target state cone")
                    break
            elif not B.state_cone.member(y):
                violations.append("image of a sampled pure state leaves the target state cone")
                break

    adj = linear_adjoint(phi)
    if B.kind == POLYHEDRAL:
        eff_test = (
            A.effect_cone.member
            if A.effect_cone.has_facets()
            else A.effect_cone.member_by_lp
        )
        for e in B.effect_cone.generators:
            if not eff_test(matvec(adj, e)):
                violations.append(f"adjoint image of effect generator {fmt(e)} leaves the source effect cone")
    elif B.kind == PSD:
        sampled = True
        for x in _psd_state_samples(B.effect_cone.hilbert_dims, seed + 1):
            y = matvec(adj, x)
            if A.kind == PSD:
                if hermitian.min_eigenvalue(y, A.effect_cone.hilbert_dims) < -tol:
                    violations.append("adjoint image of a sampled effect leaves the source effect cone")
                    break
            elif not A.effect_cone.member(y):
                violations.append("adjoint image of a sampled effect leaves the source effect cone")
                break

    return MorphismReport(not violations, violations, sampled)


def process_scale(phi, A: Com, B: Com) -> object:
    """max of u_B(phi(alpha)) over normalized states alpha (exact for
    polyhedral via polytope vertices; analytic top eigenvalue for PSD)."""
    w = matvec(linear_adjoint(phi), B.unit)
    if A.kind == POLYHEDRAL:
        return max(dot(w, v) for v in normalized_state_vertices(A))
    return float(np.max(hermitian.eigenvalues(w, A.state_cone.hilbert_dims)))


def is_process(phi, A: Com, B: Com) -> bool:
    """Morphism with adjoint(unit) bounded by the unit."""
    report = is_morphism(phi, A, B)
    if not report.ok:
        raise NotAMorphism("; ".join(report.violations))
    w = matvec(linear_adjoint(phi), B.unit)
    residual = tuple(x - y for x, y in zip(A.unit, w))
    if A.kind == PSD:
        return hermitian.min_eigenvalue(residual, A.state_cone.hilbert_dims) >= -numeric_tolerance()
    E = A.effect_cone
    test = E.member if E.has_facets() else E.member_by_lp
    return test(residual)


def normalize_morphism(phi, A: Com, B: Com):
    """Scale a nonzero morphism to a process: returns (phi / M, M) with M
    the tight maximum of u_B over images of normalized states."""
    report = is_morphism(phi, A, B)
    if not report.ok:
        raise NotAMorphism("; ".join(report.violations))
    if all(x == 0 for row in phi for x in row):
        raise ZeroMap("cannot normalize the zero map")
    M = process_scale(phi, A, B)
    if M == 0:
        raise ZeroMap("unit never fires on the image; no finite normalization")
    if A.kind == POLYHEDRAL:
        inv = Fraction(1) / M
    else:
        inv = 1.0 / M
    return scale_matrix(inv, phi), M


def random_positive_map(rng, A: Com, B: Com, terms: int = 3):
    """Random COM morphism: nonnegative combination of rank-one maps built
    from target state generators and source effect generators."""
    gens_b = B.state_cone.generators
    effs_a = A.effect_cone.generators
    out = [[Fraction(0)] * A.dim for _ in range(B.dim)]
    for _ in range(terms):
        g = gens_b[rng.randrange(len(gens_b))]
        e = effs_a[rng.randrange(len(effs_a))]
        c = Fraction(rng.randint(1, 4), rng.randint(1, 4))
        for i in range(B.dim):
            for j in range(A.dim):
                out[i][j] += c * g[i] * e[j]
    return tuple(tuple(row) for row in out)
