from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from laghom.core.tropical import (
    binomial_lifting,
    build_tropical_system,
    check_unit_cell,
    lower_hull_cells_univariate,
    solve_tropical,
    univariate_row,
    zero_lifting,
)
from laghom.errors import LHTropicalError


def test_uniform_degree_has_the_unit_cell_only():
    ok, solutions = check_unit_cell([3, 3, 3, 3])
    assert ok
    assert solutions[0].a == (1, 1, 1, 1)
    assert solutions[0].b == 0


def test_mixed_degrees_have_the_unit_cell_only():
    ok, _ = check_unit_cell([2, 3, 4])
    assert ok


@pytest.mark.timeout(60)
def test_unit_cell_for_all_small_profiles():
    for n in range(1, 6):
        for ds in itertools.combinations_with_replacement(range(2, 6), n):
            ok, solutions = check_unit_cell(list(ds))
            assert ok, (ds, solutions)


def test_solutions_attain_row_minimum_twice():
    degrees = [2, 2, 5]
    rows = build_tropical_system(degrees, binomial_lifting(degrees))
    for sol in solve_tropical(rows):
        for row in rows:
            assert len(row.minimizers(sol.point)) >= 2


def test_lifting_values():
    omega = binomial_lifting([2, 3])
    assert omega[(0, 1)] == -1
    assert omega[(1, 1)] == -2
    assert omega[(2, 0)] == 0
    assert omega[(2, 1)] == -2
    assert omega[(2, 2)] == -2


def test_trivial_lifting_is_not_a_unit_cell():
    rows = build_tropical_system([2, 2], zero_lifting(2))
    solutions = solve_tropical(rows)
    assert [s.point for s in solutions] == [(0, 0, 0)]
    assert not solutions[0].is_unit_cell()


def test_missing_lifting_entry():
    omega = binomial_lifting([2, 3])
    del omega[(2, 1)]
    with pytest.raises(LHTropicalError):
        build_tropical_system([2, 3], omega)


def test_univariate_row_solutions():
    row = univariate_row([(0, 0), (2, 1)])
    solutions = solve_tropical([row], multiplier=False)
    assert [s.a for s in solutions] == [(Fraction(-1, 2),)]
    assert solutions[0].b is None


def test_lower_hull_of_the_cubic_example():
    cells = lower_hull_cells_univariate([(0, 0), (1, 3), (2, 1), (3, 2)])
    assert [c.normal for c in cells] == [(Fraction(-1, 2), 1), (Fraction(-1), 1)]
    assert [tuple(e for e, _ in c.points) for c in cells] == [(0, 2), (2, 3)]


def test_collinear_points_form_one_cell():
    cells = lower_hull_cells_univariate([(0, 0), (1, 1), (2, 2), (3, 5)])
    assert len(cells) == 2
    assert [e for e, _ in cells[0].points] == [0, 1, 2]


def test_lower_hull_input_errors():
    with pytest.raises(LHTropicalError):
        lower_hull_cells_univariate([(0, 0)])
    with pytest.raises(LHTropicalError):
        lower_hull_cells_univariate([(0, 0), (0, 1)])


def test_cubic_example_row_solutions_match_hull_normals():
    points = [(0, 0), (1, 3), (2, 1), (3, 2)]
    solutions = solve_tropical([univariate_row(points)], multiplier=False)
    assert [s.a for s in solutions] == [(Fraction(-1),), (Fraction(-1, 2),)]
    cells = lower_hull_cells_univariate(points)
    assert sorted(c.normal[0] for c in cells) == [s.a[0] for s in solutions]
    assert all(c.normal[1] == 1 for c in cells)
