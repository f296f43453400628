from __future__ import annotations

from fractions import Fraction

import anyio
import numpy as np
import pytest

from laghom.config import TrackerConfig
from laghom.core.poly import SparsePolynomial
from laghom.core.tracker import _predict, track_all, track_all_async, track_path
from laghom.core.tropical import lower_hull_cells_univariate
from laghom.errors import LHPreconditionError
from laghom.homotopy import LiftedHomotopy, StraightLineHomotopy, univariate_cell_homotopy


WEIGHTS = {0: 0, 1: 3, 2: 1, 3: 2}
GAMMA = complex(np.exp(0.7j))


def _quadratic(root_sq: float) -> SparsePolynomial:
    return SparsePolynomial.from_terms(1, {(2,): 1.0, (0,): -root_sq})


def test_straight_line_paths_converge():
    h = StraightLineHomotopy([_quadratic(1.0)], [_quadratic(4.0)], GAMMA)
    results = track_all(h, [[1.0], [-1.0]])
    assert all(r.status == "converged" for r in results)
    assert all(r.final_t == 1.0 and r.residual < 1e-10 for r in results)
    endpoints = sorted(complex(r.endpoint[0]).real for r in results)
    assert endpoints == pytest.approx([-2.0, 2.0])
    assert [r.start_index for r in results] == [0, 1]


def test_path_to_infinity_is_diverged():
    target = SparsePolynomial.from_terms(1, {(1,): 1.0, (0,): -2.0})
    h = StraightLineHomotopy([_quadratic(1.0)], [target], GAMMA)
    results = track_all(h, [[1.0], [-1.0]])
    assert sorted(r.status for r in results) == ["converged", "diverged"]
    done = [r for r in results if r.converged][0]
    assert complex(done.endpoint[0]) == pytest.approx(2.0)
    lost = [r for r in results if r.status == "diverged"][0]
    assert np.max(np.abs(lost.endpoint)) > TrackerConfig().escape_norm
    assert lost.residual == float("inf")


def test_stalled_large_path_counts_as_diverged():
    target = SparsePolynomial.from_terms(1, {(1,): 1.0, (0,): -2.0})
    h = StraightLineHomotopy([_quadratic(1.0)], [target], GAMMA)
    # a tiny step budget stops both paths early; neither has escaped yet
    cfg = TrackerConfig(max_steps=3)
    assert all(r.status == "failed" and r.message == "step budget exhausted" for r in track_all(h, [[1.0], [-1.0]], cfg))
    loose = TrackerConfig(max_steps=3, escape_norm=1e-3)
    assert all(r.status == "diverged" for r in track_all(h, [[1.0], [-1.0]], loose))


def test_start_point_must_lie_on_the_start_system():
    h = StraightLineHomotopy([_quadratic(1.0)], [_quadratic(4.0)], GAMMA)
    with pytest.raises(LHPreconditionError):
        track_path(h, [1.5])
    with pytest.raises(LHPreconditionError):
        track_path(h, [1.0, 0.0])


def test_lifted_homotopy_endpoints():
    # y^3 s - y^2 + 2 y s^5 - 1
    poly = SparsePolynomial.from_terms(2, {(3, 1): 1.0, (2, 0): -1.0, (1, 5): 2.0, (0, 0): -1.0})
    h = LiftedHomotopy([poly])
    assert h.nvars == 1
    assert h.start.residual([1j]) == 0.0
    value, hz, ht = h.evaluate(np.array([1j]), 0.0)
    assert abs(value[0]) < 1e-15
    assert hz[0, 0] == pytest.approx(-2j)
    assert ht[0] == pytest.approx(-1j)


def test_cubic_example_cells_recover_all_roots(cubic):
    weights = {k: Fraction(w) for k, w in WEIGHTS.items()}
    cells = lower_hull_cells_univariate(list(weights.items()))
    endpoints = []
    starts_seen = []
    for cell in cells:
        h, starts = univariate_cell_homotopy(cubic, weights, cell)
        starts_seen.extend(complex(s[0]) for s in starts)
        for res in track_all(h, starts):
            assert res.status == "converged"
            assert res.residual < 1e-10
            endpoints.append(complex(res.endpoint[0]))
    assert sorted(starts_seen, key=lambda z: (round(z.real, 8), z.imag)) == pytest.approx([-1j, 1j, 1.0])
    expected = sorted(np.roots([1.0, -1.0, 2.0, -1.0]), key=lambda z: (round(z.real, 8), z.imag))
    found = sorted(endpoints, key=lambda z: (round(z.real, 8), z.imag))
    assert found == pytest.approx(expected, abs=1e-9)
    assert max(abs(cubic([z])) for z in found) < 1e-10


def test_threaded_tracking_keeps_order():
    h = StraightLineHomotopy([_quadratic(1.0)], [_quadratic(9.0)], GAMMA)
    starts = [[1.0], [-1.0]]
    serial = track_all(h, starts)
    threaded = track_all(h, starts, threads=2)
    assert [r.start_index for r in threaded] == [0, 1]
    for a, b in zip(serial, threaded):
        assert a.status == b.status
        assert np.allclose(a.endpoint, b.endpoint)


def test_async_tracking():
    h = StraightLineHomotopy([_quadratic(1.0)], [_quadratic(9.0)], GAMMA)

    async def _inner():
        return await track_all_async(h, [[1.0], [-1.0]], TrackerConfig(), threads=2)

    results = anyio.run(_inner)
    assert [r.status for r in results] == ["converged", "converged"]


def test_tracker_config_validation():
    with pytest.raises(ValueError):
        TrackerConfig(min_step=0.1, initial_step=0.05)
    with pytest.raises(ValueError):
        TrackerConfig(corrector_tol=0.0)
    with pytest.raises(ValueError):
        TrackerConfig(escape_norm=1e9)


def test_step_doubling_estimate_shrinks_with_the_step():
    h = StraightLineHomotopy([_quadratic(1.0)], [_quadratic(4.0)], GAMMA)
    z = np.array([1.0 + 0j])
    cfg = TrackerConfig()
    coarse_guess, coarse = _predict(h, z, 0.0, 0.1, cfg)
    fine_guess, fine = _predict(h, z, 0.0, 0.05, cfg)
    assert 0.0 < fine < coarse
    # fifth-order local error
    assert coarse / fine > 8.0
    assert h.evaluate(fine_guess, 0.05)[0][0] == pytest.approx(0.0, abs=1e-6)


def test_tight_predictor_tolerance_takes_more_steps():
    h = StraightLineHomotopy([_quadratic(1.0)], [_quadratic(4.0)], GAMMA)
    loose = track_path(h, [1.0], TrackerConfig(predictor_tol=1e-2))
    tight = track_path(h, [1.0], TrackerConfig(predictor_tol=1e-9))
    assert loose.converged and tight.converged
    assert tight.steps_taken > loose.steps_taken
    assert complex(tight.endpoint[0]) == pytest.approx(complex(loose.endpoint[0]))
