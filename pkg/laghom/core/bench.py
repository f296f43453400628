"""Desk-scale timing sweep: binomial-start solve against the total-degree oracle."""

from __future__ import annotations

import logging
import statistics
from dataclasses import asdict, dataclass
from typing import Iterator, Optional

from ..config import SolverConfig
from ..errors import LHError, LHProfileError
from .degree import bezout_count, refined_hypersurface_degree
from .lagrange import lagrange_linear_hypersurface, random_hypersurface_problem
from .solver import solve, solve_oracle_total_degree


logger = logging.getLogger(__name__)


@dataclass
class BenchRow:
	d: int
	n: int
	expected_count: int
	paths: Optional[int]
	converged: Optional[int]
	found: Optional[int]
	time_mean: Optional[float]
	time_median: Optional[float]
	oracle_paths: int
	oracle_converged: Optional[int] = None
	oracle_found: Optional[int] = None
	oracle_time: Optional[float] = None
	failed_runs: int = 0

	def to_dict(self) -> dict:
		return asdict(self)


def iter_bench(
	d: int,
	n_min: int,
	n_max: int,
	repetitions: int = 1,
	seed: int = 0,
	threads: int = 1,
	oracle_max_paths: int = 0,
	cfg: SolverConfig | None = None,
) -> Iterator[BenchRow]:
	"""One row per dimension.

	A repetition whose solve raises is logged and counted in ``failed_runs``;
	the timings cover the remaining repetitions. Cells with no successful
	repetition are ``None`` (printed as NA). The oracle runs once per row, on
	the first repetition that solved.
	"""
	if d < 1 or n_min < 1 or n_max < n_min or repetitions < 0:
		raise LHProfileError(f"invalid bench range d={d}, n={n_min}..{n_max}, repetitions={repetitions}")
	if repetitions == 0:
		return
	base = cfg or SolverConfig()
	for n in range(n_min, n_max + 1):
		expected = refined_hypersurface_degree([d] * n)
		oracle_paths = bezout_count([d] * (n + 1))
		times, paths, converged, found = [], None, None, None
		failed = 0
		oracle_row: dict = {}
		oracle_done = False
		for rep in range(repetitions):
			run_seed = seed + rep
			run_cfg = base.model_copy(update={"seed": run_seed, "threads": threads})
			problem = random_hypersurface_problem(n, degree=d, seed=run_seed)
			try:
				report = solve(problem, run_cfg)
			except LHError as exc:
				logger.warning("bench d=%d n=%d seed=%d failed: %s", d, n, run_seed, exc)
				failed += 1
				continue
			times.append(report.wall_time)
			paths, converged, found = report.n_paths, report.n_converged, len(report.found)
			if not oracle_done and 0 < oracle_paths <= oracle_max_paths:
				oracle_done = True
				try:
					oracle = solve_oracle_total_degree(lagrange_linear_hypersurface(problem), run_cfg, problem.u, expected)
					oracle_row = {"oracle_converged": oracle.n_converged, "oracle_found": len(oracle.found), "oracle_time": oracle.wall_time}
				except LHError as exc:
					logger.warning("bench oracle d=%d n=%d failed: %s", d, n, exc)
		if times:
			yield BenchRow(d, n, expected, paths, converged, found, statistics.fmean(times), statistics.median(times), oracle_paths, **oracle_row, failed_runs=failed)
		else:
			yield BenchRow(d, n, expected, None, None, None, None, None, oracle_paths, **oracle_row, failed_runs=failed)


def run_bench(*args, **kwargs) -> list[BenchRow]:
	return list(iter_bench(*args, **kwargs))
