"""Combinatorial search for order isomorphisms between polyhedral cones.

An order isomorphism must send extreme rays bijectively to extreme rays
(up to positive scaling), so the search runs over ray bijections,
pre-pruned by a combinatorial invariant (how many facets are tight at a
ray), then solves one exact LP per surviving bijection for the matrix and
the per-ray scalings.  Exhaustive and deterministic for cones with at
most eight extreme rays; larger inputs are refused.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Iterator, Optional, Sequence

from .cones import Cone
from .errors import UnsupportedKind
from .linalg import canonical_rays, dot, inverse, matvec, rank
from .lp import eq, solve_lp

MAX_RAYS = 8


def _tightness_profile(rays, facets):
    return [sum(1 for h in facets if dot(h, g) == 0) for g in rays]


def order_isomorphisms(
    source: Cone,
    target: Cone,
    symmetric: bool = False,
    extra_rows: Optional[Sequence[tuple[tuple, tuple]]] = None,
    limit: Optional[int] = None,
) -> Iterator[tuple]:
    """Yield matrices M with M(source) = target, extreme rays to extreme
    rays; optionally only symmetric M, optionally subject to additional
    exact linear conditions (coeff_matrix_row, value) meaning
    sum_ij row[i][j] * M[i][j] == value.

    Results are verified (invertibility plus two-sided cone inclusion on
    generators) before being yielded, in deterministic order.
    """
    if source.kind != "polyhedral" or target.kind != "polyhedral":
        raise UnsupportedKind("ray matching needs polyhedral cones")
    n = source.dim
    if target.dim != n:
        return
    src = list(canonical_rays(source.generators))
    tgt = list(canonical_rays(target.generators))
    if len(src) != len(tgt):
        return
    k = len(src)
    if k > MAX_RAYS:
        raise UnsupportedKind(f"{k} extreme rays exceed the exhaustive search bound {MAX_RAYS}")

    src_profile = _tightness_profile(src, source.facets)
    tgt_profile = _tightness_profile(tgt, target.facets)
    compatible = [
        [j for j in range(k) if tgt_profile[j] == src_profile[i]] for i in range(k)
    ]

    found = 0
    for perm in permutations(range(k)):
        if any(perm[i] not in compatible[i] for i in range(k)):
            continue
        M = _solve_matching(src, tgt, perm, n, symmetric, extra_rows)
        if M is None:
            continue
        if not _verify_order_iso(M, source, target):
            continue
        yield M
        found += 1
        if limit is not None and found >= limit:
            return


def _solve_matching(src, tgt, perm, n, symmetric, extra_rows):
    """LP for M (n*n entries, free) and scalings lam_i >= 1 with
    M src_i = lam_i tgt_{perm(i)}; minimizes sum(lam) for a canonical pick."""
    k = len(src)
    nvars = n * n + k
    cons = []
    for i in range(k):
        t = tgt[perm[i]]
        for row in range(n):
            coeffs = [Fraction(0)] * nvars
            for col in range(n):
                coeffs[row * n + col] = Fraction(src[i][col])
            coeffs[n * n + i] = -Fraction(t[row])
            cons.append(eq(tuple(coeffs), 0))
    for i in range(k):
        coeffs = [Fraction(0)] * nvars
        coeffs[n * n + i] = Fraction(1)
        from .lp import ge

        cons.append(ge(tuple(coeffs), 1))
    if symmetric:
        for a in range(n):
            for b in range(a + 1, n):
                coeffs = [Fraction(0)] * nvars
                coeffs[a * n + b] = Fraction(1)
                coeffs[b * n + a] = Fraction(-1)
                cons.append(eq(tuple(coeffs), 0))
    if extra_rows:
        for rows_matrix, value in extra_rows:
            coeffs = [Fraction(0)] * nvars
            for a in range(n):
                for b in range(n):
                    coeffs[a * n + b] = Fraction(rows_matrix[a][b])
            cons.append(eq(tuple(coeffs), value))
    objective = [Fraction(0)] * (n * n) + [Fraction(1)] * k
    res = solve_lp(nvars, cons, objective=objective)
    if res.status != "optimal":
        return None
    flat = res.x
    return tuple(tuple(flat[row * n + col] for col in range(n)) for row in range(n))


def _verify_order_iso(M, source: Cone, target: Cone) -> bool:
    if rank(M) != len(M):
        return False
    for g in source.generators:
        if not target.member(matvec(M, g)):
            return False
    Minv = inverse(M)
    for h in target.generators:
        if not source.member(matvec(Minv, h)):
            return False
    return True


def find_order_isomorphism(
    source: Cone, target: Cone, symmetric: bool = False
) -> Optional[tuple]:
    """First order isomorphism in search order, or None after exhaustion."""
    for M in order_isomorphisms(source, target, symmetric=symmetric, limit=1):
        return M
    return None


def com_isomorphism(A, B) -> Optional[tuple]:
    """An order isomorphism of models: maps state cone onto state cone,
    pulls the unit back correctly, and its inverse-transpose carries the
    effect cone onto the effect cone.  None if the search exhausts."""
    from .linalg import transpose

    unit_rows = []
    # u_B(M alpha) = u_A(alpha) for all alpha: M^T u_B = u_A, n linear rows.
    n = A.dim
    for col in range(n):
        row = [[Fraction(0)] * n for _ in range(n)]
        for r in range(n):
            row[r][col] = Fraction(B.unit[r])
        unit_rows.append((row, Fraction(A.unit[col])))
    for M in order_isomorphisms(A.state_cone, B.state_cone, extra_rows=unit_rows):
        Mt_inv = inverse(transpose(M))
        images = [matvec(Mt_inv, e) for e in A.effect_cone.generators]
        if all(B.effect_cone.member(v) for v in images):
            back = [matvec(transpose(M), e) for e in B.effect_cone.generators]
            if all(A.effect_cone.member(v) for v in back):
                return M
    return None
