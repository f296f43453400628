from __future__ import annotations

from typing import Sequence

import numpy as np

from ..core.poly import CompiledSystem, SparsePolynomial
from ..errors import LHDimensionError


class StraightLineHomotopy:
	"""``H(z, t) = (1 - t) B(z) + t gamma L(z)``."""

	name = "straight-line"

	def __init__(self, start: Sequence[SparsePolynomial] | CompiledSystem, target: Sequence[SparsePolynomial] | CompiledSystem, gamma: complex = 1.0):
		self.start = start if isinstance(start, CompiledSystem) else CompiledSystem(start)
		self.target = target if isinstance(target, CompiledSystem) else CompiledSystem(target)
		if len(self.start) != len(self.target) or self.start.nvars != self.target.nvars:
			raise LHDimensionError("start and target systems must have the same shape")
		if len(self.start) != self.start.nvars:
			raise LHDimensionError("homotopy systems must be square")
		self.nvars = self.start.nvars
		self.gamma = complex(gamma)

	def evaluate(self, z: np.ndarray, t: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
		b, jb = self.start.evaluate_and_jacobian(z)
		ell, jl = self.target.evaluate_and_jacobian(z)
		gl = self.gamma * ell
		return (1.0 - t) * b + t * gl, (1.0 - t) * jb + (t * self.gamma) * jl, gl - b
