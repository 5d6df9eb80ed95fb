from fractions import Fraction as F
from itertools import combinations

from hypothesis import given, settings
from hypothesis import strategies as st

from comcat import linalg as la
from comcat.lp import Constraint, eq, ge, le, lp_feasible, in_cone, solve_lp


def test_infeasible_interval():
    # x >= 1 together with x <= 0
    assert lp_feasible(1, [ge((1,), 1), le((1,), 0)]) is None


def test_segment_feasible():
    point = lp_feasible(2, [eq((1, 1), 1), ge((1, 0), 0), ge((0, 1), 0)])
    assert point is not None
    x, y = point
    assert x + y == 1 and x >= 0 and y >= 0


def test_solution_is_exact():
    point = lp_feasible(2, [eq((F(1, 3), F(1, 7)), F(2, 21)), ge((1, 0), 0), ge((0, 1), 0)])
    assert point is not None
    assert F(1, 3) * point[0] + F(1, 7) * point[1] == F(2, 21)


def test_free_variables():
    point = lp_feasible(1, [le((1,), -5)])
    assert point is not None and point[0] <= -5


def test_maximize():
    res = solve_lp(
        2,
        [le((1, 1), 4), le((1, 0), 3), ge((1, 0), 0), ge((0, 1), 0)],
        objective=(2, 1),
        maximize=True,
    )
    assert res.status == "optimal"
    assert res.value == 7
    assert res.x == (F(3), F(1))


def test_minimize():
    res = solve_lp(
        2,
        [ge((1, 1), 2), ge((1, 0), 0), ge((0, 1), 0)],
        objective=(3, 1),
    )
    assert res.status == "optimal"
    assert res.value == 2
    assert res.x == (F(0), F(2))


def test_unbounded():
    res = solve_lp(1, [ge((1,), 0)], objective=(1,), maximize=True)
    assert res.status == "unbounded"


def test_degenerate_no_cycle():
    # Beale's cycling example; Bland's rule must terminate at the optimum.
    res = solve_lp(
        4,
        [
            le((F(1, 4), -60, F(-1, 25), 9), 0),
            le((F(1, 2), -90, F(-1, 50), 3), 0),
            le((0, 0, 1, 0), 1),
        ],
        objective=(F(-3, 4), 150, F(-1, 50), 6),
        nonneg=[True] * 4,
    )
    assert res.status == "optimal"
    assert res.value == F(-1, 20)
    assert res.x == (F(1, 25), F(0), F(1), F(0))


def test_in_cone():
    gens = [(1, 0), (1, 1)]
    assert in_cone((2, 1), gens)
    assert in_cone((0, 0), gens)
    assert not in_cone((0, 1), gens)
    assert not in_cone((-1, 0), gens)


def _brute_force_feasible(constraints, num_vars, box=6):
    """Vertex-enumeration oracle: intersect all subsets of boundaries.

    Bounding-box constraints are appended so the region, if nonempty, has a
    vertex inside the search set.
    """
    cons = list(constraints)
    for i in range(num_vars):
        coeff = [0] * num_vars
        coeff[i] = 1
        cons.append(le(tuple(coeff), box))
        cons.append(ge(tuple(coeff), -box))
    for subset in combinations(range(len(cons)), num_vars):
        A = [cons[i].coeffs for i in subset]
        b = [cons[i].rhs for i in subset]
        point = la.solve(A, b)
        if point is None:
            continue
        if all(c.holds(point) for c in cons):
            return point
    return None


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.integers(-3, 3),
            st.integers(-3, 3),
            st.sampled_from(["<=", ">=", "=="]),
            st.integers(-4, 4),
        ),
        min_size=1,
        max_size=5,
    )
)
def test_feasibility_matches_vertex_enumeration(raw):
    cons = [Constraint((F(a), F(b)), rel, F(r)) for a, b, rel, r in raw]
    boxed = cons + [
        le((1, 0), 6), ge((1, 0), -6), le((0, 1), 6), ge((0, 1), -6),
    ]
    got = lp_feasible(2, boxed)
    expected = _brute_force_feasible(cons, 2)
    if expected is None:
        assert got is None
    else:
        assert got is not None
        assert all(c.holds(got) for c in boxed)
