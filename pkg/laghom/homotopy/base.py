from __future__ import annotations

from typing import Protocol

import numpy as np

from ..core.poly import CompiledSystem


class Homotopy(Protocol):
	name: str
	nvars: int

	# endpoints: H(., 0) and H(., 1) as plain systems
	start: CompiledSystem
	target: CompiledSystem

	def evaluate(self, z: np.ndarray, t: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
		"""Return ``(H, dH/dz, dH/dt)`` at ``(z, t)``."""
		...
