import pytest

from groupcut.rationals import Q
from groupcut.simplex import (
    INFEASIBLE,
    OPTIMAL,
    LpState,
    SimplexError,
    lp_solve,
)


def test_structural_needs_a_bound():
    with pytest.raises(SimplexError):
        LpState([(None, None)])


def test_box_lp_exact_corner():
    state = LpState([(0, 1), (0, 1)])
    state.add_row({0: 1, 1: 1}, None, Q(3, 2))
    status, val = state.maximize({0: 1, 1: 1})
    assert status == OPTIMAL
    assert val == Q(3, 2)
    x, y = state.point()
    assert x + y == Q(3, 2)
    assert 0 <= x <= 1 and 0 <= y <= 1


def test_textbook_lp():
    # max 3x + 2y  s.t.  x + y <= 4, x <= 2, y <= 3, x,y >= 0
    state = LpState([(0, None), (0, None)])
    state.add_row({0: 1, 1: 1}, None, 4)
    state.add_row({0: 1}, None, 2)
    state.add_row({1: 1}, None, 3)
    status, val = state.maximize({0: 3, 1: 2})
    assert status == OPTIMAL
    assert val == 10
    assert state.point() == [2, 2]


def test_fractional_optimum_is_exact():
    state = LpState([(0, None)])
    state.add_row({0: 3}, None, 1)
    status, val = state.maximize({0: 1})
    assert status == OPTIMAL
    assert val == Q(1, 3)


def test_infeasible_row():
    state = LpState([(0, 1)])
    state.add_row({0: 1}, 2, None)
    status, val = state.maximize({0: 1})
    assert status == INFEASIBLE
    assert val is None


def test_minimize_and_lp_solve_dispatch():
    state = LpState([(0, 2), (0, 2)])
    state.add_row({0: 1, 1: 2}, 2, None)
    status, val = lp_solve(state, {0: 1, 1: 1}, direction="min")
    assert status == OPTIMAL
    assert val == 1  # x=0, y=1 meets x + 2y >= 2 cheapest
    with pytest.raises(ValueError):
        lp_solve(state, {0: 1}, direction="sideways")


def test_warm_restart_after_bound_change():
    state = LpState([(0, 10)])
    status, val = state.maximize({0: 1})
    assert (status, val) == (OPTIMAL, 10)
    state.set_bounds(0, 0, 4)
    status, val = state.maximize({0: 1})
    assert (status, val) == (OPTIMAL, 4)
    state.set_bounds(0, 6, 10)
    status, val = state.minimize({0: 1})
    assert (status, val) == (OPTIMAL, 6)


def test_logical_variable_reuse_in_rows():
    # rows may reference earlier logicals: z = x + y, then z + x <= 3
    state = LpState([(0, 5), (0, 5)])
    z = state.add_row({0: 1, 1: 1}, None, None)
    state.add_row({z: 1, 0: 1}, None, 3)
    status, val = state.maximize({0: 1, 1: 1})
    assert status == OPTIMAL
    assert val == 3  # x=0, y=3 maximizes x+y under 2x+y <= 3


def test_clone_solves_independently():
    state = LpState([(0, 1), (0, 1)])
    state.add_row({0: 1, 1: 1}, None, 1)
    twin = state.clone()
    twin.set_bounds(0, Q(3, 4), 1)
    status, val = twin.maximize({1: 1})
    assert (status, val) == (OPTIMAL, Q(1, 4))
    status, val = state.maximize({1: 1})
    assert (status, val) == (OPTIMAL, 1)


def test_box_objective_property(rng):
    # with only redundant rows the optimum is the obvious box corner
    for _ in range(25):
        n = rng.randint(1, 5)
        bounds = []
        for _ in range(n):
            lo = Q(rng.randint(-5, 0))
            hi = lo + Q(rng.randint(0, 7))
            bounds.append((lo, hi))
        state = LpState(bounds)
        state.add_row({j: 1 for j in range(n)}, None, sum(b[1] for b in bounds))
        obj = {j: Q(rng.randint(-4, 4)) for j in range(n)}
        want = sum((bounds[j][1] if c > 0 else bounds[j][0]) * c
                   for j, c in obj.items() if c)
        status, val = state.maximize(obj)
        assert status == OPTIMAL
        assert val == want
        point = state.point()
        for j, (lo, hi) in enumerate(bounds):
            assert lo <= point[j] <= hi


def test_value_by_variable_id():
    state = LpState([(0, 3)])
    row = state.add_row({0: 2}, None, 4)
    state.maximize({0: 1})
    assert state.value(0) == 2
    assert state.value(row) == 4
