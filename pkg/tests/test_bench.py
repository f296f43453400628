from __future__ import annotations

import pytest

from laghom.core import bench
from laghom.core.bench import run_bench
from laghom.errors import LHProfileError, LHTrackingError


def test_rows_cover_the_dimension_range():
    rows = run_bench(2, 2, 3, repetitions=2)
    assert [r.n for r in rows] == [2, 3]
    assert all(r.found == 2 and r.failed_runs == 0 for r in rows)
    assert all(r.time_mean is not None and r.oracle_found is None for r in rows)


def test_failed_repetition_is_counted_and_skipped(monkeypatch):
    real_solve = bench.solve

    def flaky(problem, cfg):
        if cfg.seed == 1:
            raise LHTrackingError("all 2 paths failed to converge")
        return real_solve(problem, cfg)

    monkeypatch.setattr(bench, "solve", flaky)
    [row] = run_bench(2, 2, 2, repetitions=3)
    assert row.failed_runs == 1
    assert row.found == 2
    assert row.time_mean is not None


def test_all_repetitions_failing_gives_na(monkeypatch):
    def broken(problem, cfg):
        raise LHTrackingError("all 2 paths failed to converge")

    monkeypatch.setattr(bench, "solve", broken)
    [row] = run_bench(2, 2, 2, repetitions=2, oracle_max_paths=8)
    assert row.failed_runs == 2
    assert row.paths is None and row.time_mean is None
    assert row.oracle_found is None


def test_bench_range_is_validated():
    with pytest.raises(LHProfileError):
        run_bench(2, 4, 3)
    assert run_bench(2, 2, 3, repetitions=0) == []
