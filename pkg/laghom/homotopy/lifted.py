"""Homotopies given directly as polynomials in ``(z, s)``.

A lifted homotopy is one polynomial system in ``nvars + 1`` variables whose
last variable is the path parameter. ``univariate_cell_homotopy`` builds the
one attached to a lower-hull cell of a lifted univariate polynomial: with
inner normal ``(alpha, 1)`` the substitution ``x = y t^alpha`` followed by
division by the cell's minimal value leaves nonnegative rational powers of
``t``; writing ``t = s^q`` for the common denominator ``q`` clears them. At
``s = 0`` only the cell's terms survive, at ``s = 1`` the system is the
original polynomial.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from ..core.poly import CompiledSystem, SparsePolynomial
from ..core.tropical import LowerHullCell
from ..errors import LHDimensionError, LHTropicalError


def _restrict(p: SparsePolynomial, value: int) -> SparsePolynomial:
	nvars = p.nvars - 1
	if value == 0:
		return SparsePolynomial.from_terms(nvars, [(e[:-1], c) for e, c in p.terms if e[-1] == 0])
	return SparsePolynomial.from_terms(nvars, [(e[:-1], c) for e, c in p.terms])


class LiftedHomotopy:
	name = "lifted"

	def __init__(self, polys: Sequence[SparsePolynomial]):
		self.polys = tuple(polys)
		if not self.polys:
			raise LHDimensionError("empty system")
		self.nvars = self.polys[0].nvars - 1
		if len(self.polys) != self.nvars:
			raise LHDimensionError(f"{len(self.polys)} equations in {self.nvars} unknowns plus the path parameter")
		self.system = CompiledSystem(self.polys)
		self.start = CompiledSystem([_restrict(p, 0) for p in self.polys])
		self.target = CompiledSystem([_restrict(p, 1) for p in self.polys])

	def evaluate(self, z: np.ndarray, t: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
		point = np.append(np.asarray(z, dtype=complex), complex(t))
		h, jac = self.system.evaluate_and_jacobian(point)
		return h, jac[:, : self.nvars], jac[:, self.nvars]


def univariate_cell_homotopy(poly: SparsePolynomial, weights: Mapping[int, Fraction | int], cell: LowerHullCell) -> tuple[LiftedHomotopy, np.ndarray]:
	"""Homotopy and start roots for one cell; the roots are the nonzero roots of the cell polynomial."""
	if poly.nvars != 1:
		raise LHDimensionError("univariate polynomial expected")
	coeffs = {e[0]: c for e, c in poly.terms}
	if set(coeffs) != set(weights):
		raise LHTropicalError("weights must cover exactly the support of the polynomial")
	cell_exps = [e for e, _ in cell.points]
	if len(cell_exps) < 2 or any(e not in coeffs for e in cell_exps):
		raise LHTropicalError("cell must be an edge of the lifted support")
	alpha = cell.normal[0]
	values = {k: alpha * k + Fraction(w) for k, w in weights.items()}
	low = min(values.values())
	shifts = {k: v - low for k, v in values.items()}
	q = math.lcm(*(s.denominator for s in shifts.values()))
	terms = [((k, int(shifts[k] * q)), c) for k, c in coeffs.items()]
	homotopy = LiftedHomotopy([SparsePolynomial.from_terms(2, terms)])
	lo, hi = min(cell_exps), max(cell_exps)
	dense = [coeffs.get(k, 0j) if k in cell_exps else 0j for k in range(hi, lo - 1, -1)]
	roots = np.roots(np.array(dense, dtype=complex)).astype(complex)
	return homotopy, roots.reshape(-1, 1)
