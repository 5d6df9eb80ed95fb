"""Regular cones: exact polyhedral (rational) and spectral PSD (float).

A polyhedral cone keeps two interchangeable descriptions: extreme
generators and facet inequalities.  Either may be supplied at
construction; the other is derived on demand by brute-force enumeration
over (n-1)-subsets, which is exact and entirely adequate at desk scale
(tens of rays, dimension <= 16).  A PSD cone is the Hermitian
positive-semidefinite cone in its fixed real coordinatization; it is
self-dual and its membership test is spectral.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from . import hermitian
from .config import numeric_tolerance
from .errors import DimensionMismatch, KindMismatch, NotGenerating, NotPointed
from .linalg import (
    canonical_rays,
    dot,
    frac_vector,
    primitive,
    rank,
)
from .lp import eq, in_cone, lp_feasible, solve_lp

POLYHEDRAL = "polyhedral"
PSD = "psd"


class Cone:
    """Immutable regular cone; construct via the factory functions.

    Values never change after construction, so concurrent reads are safe;
    the lazy representation conversion is idempotent, so a rare duplicated
    computation is the only cost of racing callers."""

    __slots__ = ("kind", "dim", "_generators", "_facets", "hilbert_dims", "self_dual")

    def __init__(self, kind, dim, generators=None, facets=None, hilbert_dims=None, self_dual=False):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_generators", generators)
        object.__setattr__(self, "_facets", facets)
        object.__setattr__(self, "hilbert_dims", hilbert_dims)
        object.__setattr__(self, "self_dual", self_dual)

    def __setattr__(self, *_):
        raise AttributeError("Cone is immutable")

    def __repr__(self):
        if self.kind == PSD:
            return f"Cone(psd, hilbert_dims={self.hilbert_dims})"
        gens = "?" if self._generators is None else len(self._generators)
        facets = "?" if self._facets is None else len(self._facets)
        return f"Cone(polyhedral, dim={self.dim}, generators={gens}, facets={facets})"

    # -- polyhedral representations ------------------------------------

    @property
    def generators(self) -> tuple:
        if self.kind != POLYHEDRAL:
            raise KindMismatch("PSD cones have no finite generator list")
        if self._generators is None:
            gens = _enumerate_facets(self._facets, self.dim)
            object.__setattr__(self, "_generators", gens)
        return self._generators

    @property
    def facets(self) -> tuple:
        if self.kind != POLYHEDRAL:
            raise KindMismatch("PSD cones have no finite facet list")
        if self._facets is None:
            facets = _enumerate_facets(self._generators, self.dim)
            object.__setattr__(self, "_facets", facets)
        return self._facets

    def has_generators(self) -> bool:
        return self._generators is not None

    def has_facets(self) -> bool:
        return self._facets is not None

    # -- predicates -----------------------------------------------------

    def member(self, x, tolerance: Optional[float] = None) -> bool:
        """Cone membership: exact facet signs (polyhedral) or spectral."""
        if len(x) != self.dim:
            raise DimensionMismatch(f"vector of length {len(x)} vs cone dim {self.dim}")
        if self.kind == PSD:
            tol = numeric_tolerance() if tolerance is None else tolerance
            return hermitian.min_eigenvalue(x, self.hilbert_dims) >= -tol
        if self._facets is not None:
            return all(dot(h, x) >= 0 for h in self._facets)
        return in_cone(frac_vector(x), self._generators)

    def member_by_lp(self, x) -> bool:
        """Exact membership via LP over the generator description."""
        if self.kind != POLYHEDRAL:
            raise KindMismatch("LP membership needs a polyhedral cone")
        return in_cone(frac_vector(x), self.generators)

    def interior_point(self) -> tuple:
        """Sum of generators (polyhedral) or identity coordinates (PSD)."""
        if self.kind == PSD:
            return hermitian.unit_coords(self.hilbert_dims)
        gens = self.generators
        out = list(gens[0])
        for g in gens[1:]:
            out = [a + b for a, b in zip(out, g)]
        return tuple(out)

    def strictly_positive(self, u) -> bool:
        """Is the functional u strictly positive on the cone minus 0?"""
        if self.kind == PSD:
            return hermitian.min_eigenvalue(u, self.hilbert_dims) > numeric_tolerance()
        if self._generators is not None:
            return all(dot(u, g) > 0 for g in self._generators)
        # u interior to the dual cone spanned by the facet normals:
        # u - t*p stays in that cone for some t > 0, p an interior point.
        facets = self._facets
        p = [sum(col) for col in zip(*facets)]
        k = len(facets)
        cons = [
            eq(tuple(h[i] for h in facets) + (p[i],), u[i]) for i in range(self.dim)
        ]
        res = solve_lp(
            k + 1,
            cons,
            objective=(0,) * k + (1,),
            maximize=True,
            nonneg=[True] * (k + 1),
        )
        return res.status == "optimal" and res.value > 0


def cone_from_generators(gens: Sequence[Sequence]) -> Cone:
    """Exact polyhedral cone from generating rays.

    Zero vectors are dropped, redundant generators removed (LP test),
    and regularity enforced: raises NotPointed / NotGenerating.
    """
    rows = [frac_vector(g) for g in gens]
    if not rows:
        raise NotGenerating("no generators given")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("generators of mixed length")
    rays = [r for r in canonical_rays(rows) if any(x != 0 for x in r)]
    if not rays:
        raise NotGenerating("all generators are zero")
    if rank(rays) < n:
        raise NotGenerating(f"generators span rank {rank(rays)} < {n}")
    if not _pointed(rays, n):
        raise NotPointed("cone contains a line")
    rays = _drop_redundant(rays)
    return Cone(POLYHEDRAL, n, generators=tuple(frac_vector(r) for r in rays))


def cone_from_facets(facets: Sequence[Sequence]) -> Cone:
    """Polyhedral cone {x : h.x >= 0 for all h}; h-list must be regular."""
    rows = [frac_vector(h) for h in facets]
    if not rows:
        raise NotGenerating("no facet inequalities given")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("facets of mixed length")
    normals = [r for r in canonical_rays(rows) if any(x != 0 for x in r)]
    if rank(normals) < n:
        raise NotPointed("facet normals do not span; cone contains a line")
    if not _pointed(normals, n):
        raise NotGenerating("facet system admits no interior; cone not generating")
    normals = _drop_redundant(normals)
    return Cone(POLYHEDRAL, n, facets=tuple(frac_vector(h) for h in normals))


def psd_cone(hilbert_dims: Iterable[int] | int) -> Cone:
    """Hermitian PSD cone; pass factor dims for composite coordinatization."""
    dims = (hilbert_dims,) if isinstance(hilbert_dims, int) else tuple(hilbert_dims)
    if any(d < 1 for d in dims):
        raise ValueError("Hilbert dimensions must be positive")
    return Cone(PSD, hermitian.ambient_dim(dims), hilbert_dims=dims, self_dual=True)


def _pointed(rays, n) -> bool:
    # Pointed iff 0 has no nontrivial nonnegative representation.
    k = len(rays)
    cons = [eq(tuple(r[i] for r in rays), 0) for i in range(n)]
    cons.append(eq((1,) * k, 1))
    return lp_feasible(k, cons, nonneg=[True] * k) is None


def _drop_redundant(rays):
    rays = list(rays)
    i = 0
    while i < len(rays):
        others = rays[:i] + rays[i + 1 :]
        if others and in_cone(rays[i], others):
            rays.pop(i)
        else:
            i += 1
    return rays


def _enumerate_facets(rays, n) -> tuple:
    """All facet normals of cone(rays): brute force over (n-1)-subsets.

    Each subset goes through one fraction-free integer elimination that
    yields the rank and, when the kernel is one-dimensional, its normal."""
    if n == 1:
        h = primitive(rays[0])
        return (frac_vector(h),)
    prim = [primitive(r) for r in rays]
    found = set()
    for subset in combinations(range(len(prim)), n - 1):
        h = _kernel_if_corank_one([list(prim[i]) for i in subset], n)
        if h is None:
            continue
        signs = [dot(h, r) for r in prim]
        if all(s >= 0 for s in signs):
            found.add(h)
        elif all(s <= 0 for s in signs):
            found.add(tuple(-x for x in h))
    return tuple(frac_vector(h) for h in sorted(found))


def _kernel_if_corank_one(rows: list[list[int]], n: int):
    """Primitive integer kernel vector of an (n-1) x n integer matrix of
    rank n-1, or None when the rank is lower (Bareiss elimination)."""
    m = len(rows)
    pivots = []
    prev = 1
    r = 0
    for c in range(n):
        if r >= m:
            break
        piv = None
        for i in range(r, m):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        rc = rows[r][c]
        for i in range(r + 1, m):
            ric = rows[i][c]
            row_i, row_r = rows[i], rows[r]
            for j in range(c + 1, n):
                row_i[j] = (rc * row_i[j] - ric * row_r[j]) // prev
            row_i[c] = 0
        prev = rc
        pivots.append(c)
        r += 1
    if r != n - 1:
        return None
    free = next(c for c in range(n) if c not in pivots)
    h = [Fraction(0)] * n
    h[free] = Fraction(1)
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        s = sum(rows[i][j] * h[j] for j in range(c + 1, n) if h[j])
        h[c] = -s / rows[i][c]
    return primitive(h)


def dual_cone(C: Cone) -> Cone:
    """Dual cone.  Polyhedral: generated by the facet normals (facets are
    recomputed by enumeration, so the double dual is a genuine check).
    PSD: the same cone, flagged self-dual."""
    if C.kind == PSD:
        return Cone(PSD, C.dim, hilbert_dims=C.hilbert_dims, self_dual=True)
    return cone_from_generators(C.facets)


def cones_equal(C: Cone, D: Cone) -> bool:
    """Equality as sets: canonical generators match up to positive scaling."""
    if C.kind != D.kind or C.dim != D.dim:
        return False
    if C.kind == PSD:
        return C.hilbert_dims == D.hilbert_dims
    return canonical_rays(C.generators) == canonical_rays(D.generators)


def member(C: Cone, x, tolerance: Optional[float] = None) -> bool:
    return C.member(x, tolerance=tolerance)


def interior_point(C: Cone) -> tuple:
    return C.interior_point()
