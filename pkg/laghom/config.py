from __future__ import annotations

import os
from typing import Optional

from pydantic import BaseModel, Field, model_validator


DEFAULT_THREADS = 1
DEFAULT_SEED = 0
DEFAULT_ENDPOINT_TOL = 1e-10
DEFAULT_REAL_TOL = 1e-8
DEFAULT_LOG_LEVEL = "WARNING"


def _env_int(name: str, default: int) -> int:
	value = os.getenv(name)
	if not value:
		return default
	try:
		return int(value)
	except ValueError:
		return default


def _env_float(name: str, default: float) -> float:
	value = os.getenv(name)
	if not value:
		return default
	try:
		return float(value)
	except ValueError:
		return default


def env_log_level() -> str:
	return os.getenv("LH_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()


class TrackerConfig(BaseModel):
	initial_step: float = Field(default=0.05, description="First step in t")
	min_step: float = Field(default=1e-14, description="Path fails below this step")
	max_step: float = Field(default=0.1, description="Step growth cap")
	corrector_tol: float = Field(default=1e-12, description="Newton update tolerance, relative to 1+|z|")
	max_corrector_iters: int = Field(default=3, ge=1)
	divergence_norm: float = Field(default=1e8, description="Iterate max-norm that declares divergence")
	escape_norm: float = Field(default=1e4, description="A path stalled before t=1 with a larger max-norm is reported diverged")
	predictor_tol: float = Field(default=1e-4, description="Step-doubling error bound on the predictor, relative to 1+|z|")
	endpoint_tol: float = Field(default_factory=lambda: _env_float("LH_ENDPOINT_TOL", DEFAULT_ENDPOINT_TOL))
	max_steps: int = Field(default=50000, ge=1)
	refine_iters: int = Field(default=5, ge=0, description="Newton iterations on the target at t=1")
	cond_max: float = Field(default=1e12, description="LU pivot ratio treated as singular")
	step_growth: float = Field(default=1.5, gt=1.0)
	growth_after: int = Field(default=4, ge=1, description="Consecutive successes before growing the step")

	@model_validator(mode="after")
	def _check_ranges(self) -> "TrackerConfig":
		if not (0 < self.min_step < self.initial_step <= self.max_step < 1):
			raise ValueError("require 0 < min_step < initial_step <= max_step < 1")
		for name in ("corrector_tol", "endpoint_tol", "divergence_norm", "escape_norm", "predictor_tol", "cond_max"):
			if getattr(self, name) <= 0:
				raise ValueError(f"{name} must be positive")
		if self.escape_norm > self.divergence_norm:
			raise ValueError("escape_norm must not exceed divergence_norm")
		return self


class SolverConfig(BaseModel):
	tracker: TrackerConfig = Field(default_factory=TrackerConfig)
	real_tol: float = Field(default_factory=lambda: _env_float("LH_REAL_TOL", DEFAULT_REAL_TOL), gt=0)
	dedup_radius: float = Field(default=1e-8, gt=0)
	seed: int = Field(default_factory=lambda: _env_int("LH_SEED", DEFAULT_SEED))
	threads: int = Field(default_factory=lambda: max(1, _env_int("LH_THREADS", DEFAULT_THREADS)), ge=1)
	gamma: Optional[complex] = Field(default=None, description="Homotopy constant; drawn from seed when unset")
	keep_paths: bool = Field(default=False, description="Attach per-path results to reports")
