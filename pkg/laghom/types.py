from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Literal, Optional

import numpy as np


PathStatus = Literal["converged", "diverged", "failed"]


@dataclass
class PathResult:
	status: PathStatus
	endpoint: np.ndarray
	residual: float
	steps_taken: int
	final_t: float
	start_index: int = -1
	message: str = ""

	@property
	def converged(self) -> bool:
		return self.status == "converged"


@dataclass(frozen=True)
class CriticalPoint:
	x: np.ndarray
	multipliers: np.ndarray
	residual: float
	is_real: bool = False
	objective_value: Optional[float] = None

	@property
	def lam(self) -> complex | np.ndarray:
		"""The multiplier, as a scalar for a single constraint."""
		if self.multipliers.shape[0] == 1:
			return complex(self.multipliers[0])
		return self.multipliers

	@property
	def coordinates(self) -> np.ndarray:
		return np.concatenate([self.x, self.multipliers])


@dataclass
class RealPartition:
	real: list[CriticalPoint]
	nonreal: list[CriticalPoint]


@dataclass
class SolveReport:
	problem: dict[str, Any]
	expected_count: int
	found: list[CriticalPoint]
	n_paths: int
	n_converged: int
	n_diverged: int
	n_failed: int
	global_minimum: Optional[CriticalPoint]
	wall_time: float
	min_grad_norm: Optional[float] = None
	note: str = ""
	paths: list[PathResult] = field(default_factory=list)

	@property
	def real_points(self) -> list[CriticalPoint]:
		return [p for p in self.found if p.is_real]

	@property
	def count_matches(self) -> bool:
		return len(self.found) == self.expected_count
