"""Predictor-corrector path tracking.

The predictor integrates the Davidenko equation ``Hz dz/dt = -Ht`` with
classical Runge-Kutta, taking the step once whole and once as two halves; the
difference of the two estimates bounds the local error (step doubling) and
the half-step result is used. The corrector runs a few Newton iterations on
``H(., t) = 0``. A step is rejected when the error bound is exceeded, when a
linear solve is ill-conditioned, when Newton does not settle within its
iteration cap, or when its first update is large against the predicted move
(a sign of jumping to a nearby path). Rejection halves the step, a run of
acceptances grows it.

A path whose norm passes ``divergence_norm`` is diverged. A path that stalls
before reaching a good endpoint is also reported diverged when its norm has
passed ``escape_norm``: solutions running off to infinity as ``t -> 1``
usually exhaust the step size long before the hard bound.
"""

from __future__ import annotations

import logging
import warnings
from typing import Sequence

import anyio
import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from ..config import TrackerConfig
from ..errors import LHPreconditionError
from ..homotopy.base import Homotopy
from ..types import PathResult


logger = logging.getLogger(__name__)

START_RESIDUAL_MAX = 1e-8
JUMP_RATIO = 0.25


class _SolveFailed(Exception):
	pass


def _norm(v: np.ndarray) -> float:
	return float(np.max(np.abs(v))) if v.size else 0.0


def _solve(a: np.ndarray, b: np.ndarray, cond_max: float) -> np.ndarray:
	"""Partial-pivot LU solve; the ratio of extreme pivots stands in for the condition number."""
	try:
		with warnings.catch_warnings():
			warnings.simplefilter("ignore", LinAlgWarning)
			lu, piv = lu_factor(a)
	except (ValueError, np.linalg.LinAlgError) as exc:
		raise _SolveFailed(str(exc)) from exc
	pivots = np.abs(np.diag(lu))
	smallest = float(pivots.min())
	if smallest == 0.0 or float(pivots.max()) / smallest > cond_max:
		raise _SolveFailed("ill-conditioned Jacobian")
	out = lu_solve((lu, piv), b)
	if not np.all(np.isfinite(out)):
		raise _SolveFailed("non-finite solve")
	return out


def _tangent(h: Homotopy, z: np.ndarray, t: float, cfg: TrackerConfig) -> np.ndarray:
	_, hz, ht = h.evaluate(z, t)
	return _solve(hz, -ht, cfg.cond_max)


def _rk4(h: Homotopy, z: np.ndarray, t: float, dt: float, k1: np.ndarray, cfg: TrackerConfig) -> np.ndarray:
	k2 = _tangent(h, z + 0.5 * dt * k1, t + 0.5 * dt, cfg)
	k3 = _tangent(h, z + 0.5 * dt * k2, t + 0.5 * dt, cfg)
	k4 = _tangent(h, z + dt * k3, t + dt, cfg)
	return z + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _predict(h: Homotopy, z: np.ndarray, t: float, dt: float, cfg: TrackerConfig) -> tuple[np.ndarray, float]:
	"""Two half RK4 steps and the step-doubling error estimate against one full step."""
	k1 = _tangent(h, z, t, cfg)
	full = _rk4(h, z, t, dt, k1, cfg)
	mid = 0.5 * dt
	half = _rk4(h, z, t, mid, k1, cfg)
	two = _rk4(h, half, t + mid, mid, _tangent(h, half, t + mid, cfg), cfg)
	return two, _norm(two - full) / 15.0


def _correct(h: Homotopy, z: np.ndarray, t: float, moved: float, cfg: TrackerConfig) -> np.ndarray | None:
	for it in range(cfg.max_corrector_iters):
		value, hz, _ = h.evaluate(z, t)
		scale = 1.0 + _norm(z)
		if _norm(value) < cfg.corrector_tol * scale:
			return z
		delta = _solve(hz, -value, cfg.cond_max)
		size = _norm(delta)
		if it == 0 and size > JUMP_RATIO * max(moved, 1e-8 * scale):
			return None
		z = z + delta
		if size < cfg.corrector_tol * scale:
			return z
	value, _, _ = h.evaluate(z, t)
	if _norm(value) < cfg.corrector_tol * (1.0 + _norm(z)):
		return z
	return None


def refine(h: Homotopy, z: np.ndarray, cfg: TrackerConfig) -> np.ndarray:
	"""Newton on the target system; stops early once updates are at rounding level."""
	for _ in range(cfg.refine_iters):
		value, jac = h.target.evaluate_and_jacobian(z)
		try:
			delta = _solve(jac, -value, np.inf)
		except _SolveFailed:
			break
		z = z + delta
		if _norm(delta) < 1e-15 * (1.0 + _norm(z)):
			break
	return z


def _stalled(h: Homotopy, z: np.ndarray, accepted: int, t: float, message: str, cfg: TrackerConfig) -> PathResult:
	size = _norm(z)
	if size > cfg.escape_norm:
		return PathResult("diverged", z, float("inf"), accepted, t, message=f"{message}; iterate norm {size:.3e} past escape bound")
	return PathResult("failed", z, h.target.residual(z), accepted, t, message=message)


def track_path(h: Homotopy, start_point: Sequence[complex], cfg: TrackerConfig | None = None) -> PathResult:
	"""Track one root of ``H(., 0)`` to ``t = 1``."""
	cfg = cfg or TrackerConfig()
	z = np.asarray(start_point, dtype=complex).reshape(-1).copy()
	if z.shape[0] != h.nvars:
		raise LHPreconditionError(f"start point has {z.shape[0]} coordinates, homotopy has {h.nvars}")
	start_res = h.start.residual(z)
	if not start_res < START_RESIDUAL_MAX:
		raise LHPreconditionError(f"start point residual {start_res:.3e} is not below {START_RESIDUAL_MAX:g}")

	t = 0.0
	step = cfg.initial_step
	streak = 0
	accepted = 0
	for _ in range(cfg.max_steps):
		if t >= 1.0:
			break
		dt = min(step, 1.0 - t)
		t_next = 1.0 if dt >= 1.0 - t else t + dt
		try:
			guess, error = _predict(h, z, t, t_next - t, cfg)
			if error > cfg.predictor_tol * (1.0 + _norm(z)):
				corrected = None
			else:
				corrected = _correct(h, guess, t_next, _norm(guess - z), cfg)
		except _SolveFailed:
			corrected = None
		if corrected is None:
			step *= 0.5
			streak = 0
			if step < cfg.min_step:
				return _stalled(h, z, accepted, t, "step size underflow", cfg)
			continue
		z, t = corrected, t_next
		accepted += 1
		if _norm(z) > cfg.divergence_norm:
			return PathResult("diverged", z, float("inf"), accepted, t, message="iterate norm exceeded bound")
		streak += 1
		if streak >= cfg.growth_after:
			step = min(step * cfg.step_growth, cfg.max_step)
			streak = 0
	else:
		if t < 1.0:
			return _stalled(h, z, accepted, t, "step budget exhausted", cfg)

	z = refine(h, z, cfg)
	residual = h.target.residual(z)
	if residual < cfg.endpoint_tol:
		return PathResult("converged", z, residual, accepted, 1.0)
	return _stalled(h, z, accepted, 1.0, f"endpoint residual {residual:.3e}", cfg)


def track_all(h: Homotopy, starts: Sequence[Sequence[complex]] | np.ndarray, cfg: TrackerConfig | None = None, threads: int = 1) -> list[PathResult]:
	"""Track every start point; results keep input order."""
	cfg = cfg or TrackerConfig()
	if threads <= 1:
		results = []
		for k, s in enumerate(starts):
			res = track_path(h, s, cfg)
			res.start_index = k
			results.append(res)
		return results
	return anyio.run(track_all_async, h, starts, cfg, threads)


async def track_all_async(h: Homotopy, starts: Sequence[Sequence[complex]] | np.ndarray, cfg: TrackerConfig | None = None, threads: int = 1) -> list[PathResult]:
	cfg = cfg or TrackerConfig()
	starts = list(starts)
	results: list[PathResult | None] = [None] * len(starts)
	limiter = anyio.CapacityLimiter(max(1, threads))

	async def _one(k: int) -> None:
		res = await anyio.to_thread.run_sync(track_path, h, starts[k], cfg, limiter=limiter)
		res.start_index = k
		results[k] = res

	async with anyio.create_task_group() as tg:
		for k in range(len(starts)):
			tg.start_soon(_one, k)
	logger.debug("tracked %d paths on %d threads", len(starts), threads)
	return results  # type: ignore[return-value]
