"""Composites of models on the tensor-product carrier.

Local tomography is hard-wired: the composite carrier is the tensor
product of the factor carriers, row-major (left factor major).  A
composite state omega is simultaneously a vector of length n_A*n_B and a
bilinear form on effect pairs via omega(a, b) = a^T W b, W the n_A x n_B
reshape of the vector.

The two polyhedral composites are dual twins, both saturated:

  min: states generated by products of state generators; effects = the
       full dual of that cone (facet description: the state products).
  max: states = everything positive on products of effect generators
       (facet description: the effect products); effects generated by
       the effect products.

Generator descriptions of the facet-described cones are enumerated only
on demand.  For two PSD factors the composite of interest is the spatial
one: the PSD cone on the tensor-product Hilbert space, coordinatized by
the product basis so that product states have product coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import hermitian
from .com import Com
from .cones import PSD, POLYHEDRAL, cone_from_facets, cone_from_generators, psd_cone
from .config import numeric_tolerance
from .errors import KindMismatch, MixedKindUnsupported
from .linalg import (
    canonical_rays,
    dot,
    frac_vector,
    swap_matrix,
    tensor_vector,
)
from .lp import in_cone, le, solve_lp

MIN, MAX, SPATIAL, CUSTOM = "min", "max", "spatial_quantum", "custom"


@dataclass(frozen=True)
class CompositeCom(Com):
    factors: tuple[Com, Com] = None
    composite_kind: str = CUSTOM

    def __repr__(self):
        return (
            f"CompositeCom({self.label!r}, kind={self.composite_kind}, dim={self.dim})"
        )


def product_state(alpha, beta) -> tuple:
    return tensor_vector(alpha, beta)


def product_effect(a, b) -> tuple:
    return tensor_vector(a, b)


def _product_rays(gens_a, gens_b):
    return canonical_rays(tensor_vector(g, h) for g in gens_a for h in gens_b)


def _require_polyhedral(A: Com, B: Com):
    if A.kind != POLYHEDRAL or B.kind != POLYHEDRAL:
        raise MixedKindUnsupported(
            "exact tensor cones need polyhedral factors; use the spatial composite for quantum models"
        )


def min_tensor(A: Com, B: Com) -> CompositeCom:
    """Separable composite: states are mixtures of products, effects are
    everything positive on them (the full dual)."""
    _require_polyhedral(A, B)
    state_products = _product_rays(A.state_cone.generators, B.state_cone.generators)
    state_cone = cone_from_generators(state_products)
    effect_cone = cone_from_facets(state_cone.generators)
    return CompositeCom(
        label=f"{A.label}(min){B.label}",
        state_cone=state_cone,
        effect_cone=effect_cone,
        unit=tensor_vector(A.unit, B.unit),
        factors=(A, B),
        composite_kind=MIN,
    )


def max_tensor(A: Com, B: Com) -> CompositeCom:
    """Nonsignaling composite: states are all bilinear forms positive on
    product effects; effects are generated by the product effects."""
    _require_polyhedral(A, B)
    effect_products = _product_rays(A.effect_cone.generators, B.effect_cone.generators)
    state_cone = cone_from_facets(effect_products)
    effect_cone = cone_from_generators(effect_products)
    return CompositeCom(
        label=f"{A.label}(max){B.label}",
        state_cone=state_cone,
        effect_cone=effect_cone,
        unit=tensor_vector(A.unit, B.unit),
        factors=(A, B),
        composite_kind=MAX,
    )


def spatial_quantum_composite(A: Com, B: Com) -> CompositeCom:
    """Quantum composite on the tensor-product Hilbert space."""
    if A.kind != PSD or B.kind != PSD:
        raise KindMismatch("spatial composite needs two PSD factors")
    dims = A.state_cone.hilbert_dims + B.state_cone.hilbert_dims
    cone = psd_cone(dims)
    return CompositeCom(
        label=f"{A.label}(spatial){B.label}",
        state_cone=cone,
        effect_cone=psd_cone(dims),
        unit=tensor_vector(A.unit, B.unit),
        factors=(A, B),
        composite_kind=SPATIAL,
    )


def tensor(A: Com, B: Com, kind: str) -> CompositeCom:
    if kind == MIN:
        return min_tensor(A, B)
    if kind == MAX:
        return max_tensor(A, B)
    if kind in (SPATIAL, "spatial"):
        return spatial_quantum_composite(A, B)
    raise KeyError(f"unknown composite kind {kind!r}")


def swap_map(A: Com, B: Com) -> tuple:
    """Matrix of the symmetry isomorphism from the (A,B) carrier to (B,A)."""
    return swap_matrix(A.dim, B.dim)


def in_max_cone(omega, A: Com, B: Com, tolerance: Optional[float] = None) -> bool:
    """Positivity of the form on every pair of effect generators.

    For PSD factors this is a sampled check over pure-state effects plus
    the spectral test when the composite form is itself a PSD vector."""
    if A.kind == POLYHEDRAL and B.kind == POLYHEDRAL:
        for a in A.effect_cone.generators:
            for b in B.effect_cone.generators:
                if dot(omega, tensor_vector(a, b)) < 0:
                    return False
        return True
    tol = numeric_tolerance() if tolerance is None else tolerance
    rng = np.random.default_rng(0)
    for _ in range(64):
        a = _random_pure_effect(rng, A)
        b = _random_pure_effect(rng, B)
        if dot(omega, tensor_vector(a, b)) < -tol:
            return False
    return True


def _random_pure_effect(rng, M: Com):
    dims = M.state_cone.hilbert_dims
    d = int(np.prod(dims))
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    v = v / np.linalg.norm(v)
    return hermitian.coords(np.outer(v, v.conj()), dims)


def is_composite(AB: Com, A: Com, B: Com, seed: int = 0) -> list[str]:
    """All composite-contract violations (empty list = valid composite):
    unit is the product unit, product states and product effects belong to
    the designated cones, and every composite state is positive on product
    effects (max-cone inclusion), the latter with a named witness pair."""
    violations: list[str] = []
    if AB.dim != A.dim * B.dim:
        return [f"carrier dim {AB.dim} is not {A.dim}*{B.dim}"]
    exact = AB.kind == POLYHEDRAL

    u_prod = tensor_vector(A.unit, B.unit)
    if exact:
        if tuple(AB.unit) != tuple(u_prod):
            violations.append("unit is not the product of the factor units")
    elif max(abs(x - y) for x, y in zip(AB.unit, u_prod)) > numeric_tolerance():
        violations.append("unit is not the product of the factor units")

    if exact:
        state_test = (
            AB.state_cone.member if AB.state_cone.has_facets() else AB.state_cone.member_by_lp
        )
        effect_test = (
            AB.effect_cone.member if AB.effect_cone.has_facets() else AB.effect_cone.member_by_lp
        )
        for g in A.state_cone.generators:
            for h in B.state_cone.generators:
                if not state_test(tensor_vector(g, h)):
                    violations.append(f"product state of {g} and {h} missing from the state cone")
        for a in A.effect_cone.generators:
            for b in B.effect_cone.generators:
                if not effect_test(tensor_vector(a, b)):
                    violations.append(f"product effect of {a} and {b} missing from the effect cone")
        state_gens = AB.state_cone.generators
        for w in state_gens:
            for a in A.effect_cone.generators:
                for b in B.effect_cone.generators:
                    if dot(w, tensor_vector(a, b)) < 0:
                        violations.append(
                            f"state {w} is negative on the product effect of {a} and {b}"
                        )
        return violations

    # Spectral composite: sampled product checks.
    rng = np.random.default_rng(seed)
    tol = numeric_tolerance()
    dims = AB.state_cone.hilbert_dims
    for _ in range(16):
        alpha = _random_pure_effect(rng, A)
        beta = _random_pure_effect(rng, B)
        if not AB.state_cone.member(tensor_vector(alpha, beta)):
            violations.append("a sampled product state left the composite cone")
            break
    for _ in range(16):
        w = _random_density(rng, dims)
        if not in_max_cone(w, A, B):
            violations.append("a sampled composite state is negative on a product effect")
            break
    return violations


def _random_density(rng, dims):
    d = int(np.prod(dims))
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = g @ g.conj().T
    rho = rho / np.trace(rho).real
    return hermitian.coords(rho, dims)


def separability_check(omega, AB_min: CompositeCom) -> bool:
    """Exact LP membership of the state in the separable (min) cone;
    False means entangled."""
    if AB_min.kind != POLYHEDRAL:
        raise MixedKindUnsupported("separability LP needs polyhedral factors")
    return in_cone(frac_vector(omega), AB_min.state_cone.generators)


def separating_functional(omega, generators) -> Optional[tuple]:
    """An exact functional s with s nonpositive on every generator but
    s(omega) > 0, certifying that omega is outside the generated cone.
    Entries are box-bounded so the separation LP stays bounded."""
    omega = frac_vector(omega)
    n = len(omega)
    cons = [le(g, 0) for g in generators]
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        cons.append(le(e, 1))
        cons.append(le(tuple(-x for x in e), 1))
    res = solve_lp(n, cons, objective=omega, maximize=True)
    if res.status == "optimal" and res.value > 0:
        return res.x
    return None
