from __future__ import annotations

import dataclasses
import logging
import time
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

import numpy as np
from scipy.spatial import cKDTree

from ..config import SolverConfig
from ..errors import LHSupportError, LHTrackingError
from ..homotopy import StraightLineHomotopy, univariate_cell_homotopy
from ..types import CriticalPoint, PathResult, RealPartition, SolveReport
from .degree import bezout_count, refined_hypersurface_degree
from .lagrange import LinearObjectiveProblem, SquareSystem, lagrange_linear_hypersurface
from .poly import CompiledSystem, SparsePolynomial, coordinate_degrees, evaluate, gradient
from .start_system import build_binomial_start, build_total_degree_start, vertex_coefficients
from .tracker import track_all
from .tropical import lower_hull_cells_univariate


logger = logging.getLogger(__name__)

Objective = Union[Sequence[float], SparsePolynomial]

NOTE_DEGREE_ZERO = "algebraic degree zero"
NOTE_ABSENT_VARIABLE = "variable absent from constraint"


def _rng(cfg: SolverConfig) -> np.random.Generator:
	return np.random.default_rng(cfg.seed)


def _gamma(cfg: SolverConfig, rng: np.random.Generator) -> complex:
	if cfg.gamma is not None:
		return complex(cfg.gamma)
	return complex(np.exp(2j * np.pi * rng.uniform()))


def check_support(f: SparsePolynomial, degrees: Sequence[int]) -> None:
	"""Every exponent must satisfy ``sum_i a_i / d_i <= 1``."""
	for exps, _ in f.terms:
		weight = sum((Fraction(e, d) for e, d in zip(exps, degrees) if e), Fraction(0))
		if weight > 1:
			raise LHSupportError(
				f"monomial {exps} lies outside the simplex spanned by the coordinate degrees {tuple(degrees)}; "
				"use the total-degree oracle (solve_oracle_total_degree) for this constraint"
			)


def dedup_points(points: Sequence[np.ndarray], radius: float, residuals: Sequence[float] | None = None) -> list[int]:
	"""Greedy clustering in max-norm; returns one representative index per cluster.

	The representative is the member with the smallest residual, or the first
	member when no residuals are given.
	"""
	if not points:
		return []
	stacked = np.array([np.asarray(p, dtype=complex) for p in points])
	embedded = np.hstack([stacked.real, stacked.imag])
	tree = cKDTree(embedded)
	assigned = np.zeros(len(points), dtype=bool)
	keep = []
	for i in range(len(points)):
		if assigned[i]:
			continue
		members = [j for j in tree.query_ball_point(embedded[i], radius, p=np.inf) if not assigned[j]]
		if i not in members:
			members.append(i)
		assigned[members] = True
		if len(members) > 1:
			logger.warning("merged %d endpoints within %.1e of each other; the instance may be nongeneric", len(members), radius)
		best = min(members, key=lambda j: (residuals[j] if residuals is not None else 0.0, j))
		keep.append(best)
	return sorted(keep)


def _sort_key(p: CriticalPoint) -> tuple:
	z = p.coordinates
	return tuple(z.real) + tuple(z.imag)


def _objective_value(objective: Objective, x: np.ndarray) -> float:
	if isinstance(objective, SparsePolynomial):
		return float(evaluate(objective, x).real)
	return float(np.asarray(objective, dtype=float) @ x)


def classify_real(points: Sequence[CriticalPoint], real_tol: float = 1e-8, objective: Objective | None = None) -> RealPartition:
	"""Split points into real and non-real, strictly: ``|Im z_k| < real_tol (1 + |z_k|)`` for every coordinate.

	A real point always carries its objective value, so without an
	``objective`` (a linear form ``u`` or a polynomial) every point is
	reported non-real.
	"""
	real, nonreal = [], []
	for p in points:
		z = p.coordinates
		if objective is not None and np.all(np.abs(z.imag) < real_tol * (1.0 + np.abs(z))):
			value = _objective_value(objective, p.x.real)
			real.append(dataclasses.replace(p, is_real=True, objective_value=value))
		else:
			nonreal.append(dataclasses.replace(p, is_real=False, objective_value=None))
	return RealPartition(real, nonreal)


def _status_counts(paths: Sequence[PathResult]) -> tuple[int, int, int]:
	statuses = [p.status for p in paths]
	return statuses.count("converged"), statuses.count("diverged"), statuses.count("failed")


def _empty_report(summary: dict, expected: int, note: str, started: float) -> SolveReport:
	return SolveReport(summary, expected, [], 0, 0, 0, 0, None, time.perf_counter() - started, note=note)


def _finish(
	summary: dict,
	expected: int,
	paths: list[PathResult],
	points: list[CriticalPoint],
	cfg: SolverConfig,
	objective: Objective | None,
	wall: float,
	grad: CompiledSystem | None = None,
	note: str = "",
) -> SolveReport:
	partition = classify_real(points, cfg.real_tol, objective)
	found = sorted(partition.real + partition.nonreal, key=_sort_key)
	real = [p for p in found if p.is_real]
	best = min(real, key=lambda p: p.objective_value) if real and objective is not None else None
	min_grad = None
	if grad is not None and real:
		min_grad = min(float(np.linalg.norm(grad.evaluate(p.x.real))) for p in real)
	n_conv, n_div, n_fail = _status_counts(paths)
	return SolveReport(
		problem=summary,
		expected_count=expected,
		found=found,
		n_paths=len(paths),
		n_converged=n_conv,
		n_diverged=n_div,
		n_failed=n_fail,
		global_minimum=best,
		wall_time=wall,
		min_grad_norm=min_grad,
		note=note,
		paths=paths if cfg.keep_paths else [],
	)


def solve(problem: LinearObjectiveProblem, cfg: SolverConfig | None = None) -> SolveReport:
	"""All critical points of ``u^T x`` on ``f = 0`` from the binomial start system."""
	cfg = cfg or SolverConfig()
	started = time.perf_counter()
	rng = _rng(cfg)
	n = problem.n
	summary = problem.summary()
	degrees = coordinate_degrees(problem.f)
	if any(d == 0 for d in degrees):
		logger.warning("constraint does not involve every variable; no critical points exist")
		return _empty_report(summary, 0, NOTE_ABSENT_VARIABLE, started)
	check_support(problem.f, degrees)

	order = sorted(range(n), key=lambda i: degrees[i])
	work = problem.permuted(order)
	ds = [degrees[i] for i in order]
	expected = refined_hypersurface_degree(ds)
	if expected == 0:
		logger.info("degree profile %s has algebraic degree zero; nothing to track", ds)
		return _empty_report(summary, 0, NOTE_DEGREE_ZERO, started)

	start = build_binomial_start(work, vertex_coefficients(work.f, ds, rng), ds)
	target = lagrange_linear_hypersurface(work)
	homotopy = StraightLineHomotopy(start.system.polys, target.polys, _gamma(cfg, rng))
	logger.info("tracking %d paths for degrees %s", start.count, ds)
	t0 = time.perf_counter()
	paths = track_all(homotopy, start.roots(), cfg.tracker, cfg.threads)
	wall = time.perf_counter() - t0
	converged = [p for p in paths if p.converged]
	n_conv, n_div, n_fail = _status_counts(paths)
	logger.info("paths: %d converged, %d diverged, %d failed", n_conv, n_div, n_fail)
	for p in paths:
		if not p.converged:
			logger.debug("path %d %s at t=%.6f: %s", p.start_index, p.status, p.final_t, p.message)
	if paths and not converged:
		raise LHTrackingError(f"all {len(paths)} paths failed to converge")

	keep = dedup_points([p.endpoint for p in converged], cfg.dedup_radius, [p.residual for p in converged])
	original = CompiledSystem(lagrange_linear_hypersurface(problem).polys)
	points = []
	for k in keep:
		z = converged[k].endpoint
		x = np.empty(n, dtype=complex)
		x[order] = z[:n]
		full = np.append(x, z[n:])
		points.append(CriticalPoint(x, z[n:].copy(), original.residual(full)))
	grad = CompiledSystem(gradient(problem.f))
	return _finish(summary, expected, paths, points, cfg, problem.u, wall, grad)


def solve_oracle_total_degree(
	system: SquareSystem,
	cfg: SolverConfig | None = None,
	objective: Objective | None = None,
	expected: Optional[int] = None,
) -> SolveReport:
	"""Track all Bezout-many paths from ``{z_i^(D_i) = gamma_i}``.

	``expected_count`` is ``expected`` when given and the Bezout number
	otherwise. ``objective`` is a linear form or a polynomial in the first ``nx``
	variables; without it no point is classified real.
	"""
	cfg = cfg or SolverConfig()
	rng = _rng(cfg)
	summary = {"nvars": system.nvars, "nx": system.nx, "total_degrees": [p.total_degree for p in system.polys]}
	start = build_total_degree_start(system, rng)
	homotopy = StraightLineHomotopy(start.system.polys, system.polys, _gamma(cfg, rng))
	logger.info("oracle: tracking %d paths", start.count)
	t0 = time.perf_counter()
	paths = track_all(homotopy, start.roots(), cfg.tracker, cfg.threads)
	wall = time.perf_counter() - t0
	if paths and all(p.status == "failed" for p in paths):
		raise LHTrackingError(f"all {len(paths)} oracle paths failed")
	converged = [p for p in paths if p.converged]
	keep = dedup_points([p.endpoint for p in converged], cfg.dedup_radius, [p.residual for p in converged])
	points = [
		CriticalPoint(converged[k].endpoint[: system.nx].copy(), converged[k].endpoint[system.nx :].copy(), converged[k].residual)
		for k in keep
	]
	count = bezout_count(summary["total_degrees"]) if expected is None else expected
	note = "" if expected is not None else "expected_count is the Bezout bound"
	return _finish(summary, count, paths, points, cfg, objective, wall, note=note)


def solve_univariate_polyhedral(poly: SparsePolynomial, weights: Mapping[int, Fraction | int], cfg: SolverConfig | None = None) -> np.ndarray:
	"""Nonzero roots of a univariate polynomial, one cell homotopy per lower-hull edge."""
	cfg = cfg or SolverConfig()
	cells = lower_hull_cells_univariate([(k, w) for k, w in weights.items()])
	roots, residuals = [], []
	for cell in cells:
		homotopy, starts = univariate_cell_homotopy(poly, weights, cell)
		logger.info("cell %s with normal %s: %d paths", [e for e, _ in cell.points], cell.normal, len(starts))
		for res in track_all(homotopy, starts, cfg.tracker, cfg.threads):
			if res.converged:
				roots.append(res.endpoint)
				residuals.append(res.residual)
			else:
				logger.warning("cell path %d %s: %s", res.start_index, res.status, res.message)
	keep = dedup_points(roots, cfg.dedup_radius, residuals)
	out = np.array([complex(roots[k][0]) for k in keep], dtype=complex)
	return out[np.lexsort((out.imag, out.real))] if out.size else out
