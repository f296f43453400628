"""Start systems with closed-form roots.

``BinomialStart`` is the binomial system

    u_i - d_i c_i lambda x_i^(d_i - 1) = 0    (i = 1..n)
    c_0 + c_1 x_1^(d_1) = 0

for ascending coordinate degrees; its roots are enumerated by solving the
last equation for x_1, the first for lambda, and each remaining equation for
x_i, then taking the Cartesian product. ``TotalDegreeStart`` is
``{z_i^(D_i) - gamma_i}`` with Bezout-many roots.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from ..errors import LHStartSystemError
from .degree import refined_hypersurface_degree
from .lagrange import LinearObjectiveProblem, SquareSystem, variable_names
from .poly import SparsePolynomial


logger = logging.getLogger(__name__)


def kth_roots(w: complex, k: int) -> list[complex]:
	"""All k-th roots of ``w``, by increasing argument in [0, 2pi)."""
	if k <= 0:
		return []
	r = abs(w) ** (1.0 / k)
	theta = float(np.angle(w)) % (2 * np.pi)
	return [r * complex(np.exp(1j * (theta + 2 * np.pi * j) / k)) for j in range(k)]


def _unit_complex(rng: np.random.Generator) -> complex:
	return complex(np.exp(2j * np.pi * rng.uniform()))


@dataclass(frozen=True)
class BinomialStart:
	system: SquareSystem
	degrees: tuple[int, ...]
	coefficients: tuple[complex, ...]
	u: tuple[float, ...]

	@property
	def count(self) -> int:
		return refined_hypersurface_degree(self.degrees)

	def iter_roots(self) -> Iterator[np.ndarray]:
		d = self.degrees
		c = self.coefficients
		u = self.u
		for x1 in kth_roots(-c[0] / c[1], d[0]):
			lam = u[0] / (d[0] * c[1] * x1 ** (d[0] - 1))
			others = [kth_roots(u[i] / (d[i] * lam * c[i + 1]), d[i] - 1) for i in range(1, len(d))]
			for rest in itertools.product(*others):
				yield np.array([x1, *rest, lam], dtype=complex)

	def roots(self) -> np.ndarray:
		n = len(self.degrees)
		out = list(self.iter_roots())
		return np.array(out, dtype=complex).reshape(len(out), n + 1)


@dataclass(frozen=True)
class TotalDegreeStart:
	system: SquareSystem
	degrees: tuple[int, ...]
	gammas: tuple[complex, ...]

	@property
	def count(self) -> int:
		return math.prod(self.degrees)

	def iter_roots(self) -> Iterator[np.ndarray]:
		factors = [kth_roots(g, d) for g, d in zip(self.gammas, self.degrees)]
		for combo in itertools.product(*factors):
			yield np.array(combo, dtype=complex)

	def roots(self) -> np.ndarray:
		out = list(self.iter_roots())
		return np.array(out, dtype=complex).reshape(len(out), len(self.degrees))


def vertex_coefficients(f: SparsePolynomial, degrees: Sequence[int], rng: np.random.Generator) -> tuple[complex, ...]:
	"""Coefficients of ``f`` at ``0, d_1 e_1, ..., d_n e_n``; absent ones drawn generic."""
	n = f.nvars
	coeffs = [f.coefficient((0,) * n)]
	for i, d in enumerate(degrees):
		vertex = [0] * n
		vertex[i] = d
		coeffs.append(f.coefficient(vertex))
	for k, c in enumerate(coeffs):
		if c == 0:
			coeffs[k] = _unit_complex(rng)
			if k:
				logger.warning("vertex %d of the simplex is missing from f; substituting a generic coefficient", k)
	return tuple(coeffs)


def build_binomial_start(problem: LinearObjectiveProblem, coeffs: Sequence[complex], degrees: Sequence[int]) -> BinomialStart:
	n = problem.n
	degrees = tuple(int(d) for d in degrees)
	coeffs = tuple(complex(c) for c in coeffs)
	if len(degrees) != n or len(coeffs) != n + 1:
		raise LHStartSystemError(f"need {n} degrees and {n + 1} coefficients")
	if any(d < 1 for d in degrees) or any(a > b for a, b in zip(degrees, degrees[1:])):
		raise LHStartSystemError(f"degrees must be >= 1 and ascending, got {degrees}")
	if any(c == 0 for c in coeffs):
		raise LHStartSystemError("vertex coefficients must be nonzero")
	if any(v == 0 for v in problem.u):
		raise LHStartSystemError("objective entries must be nonzero")
	total = n + 1
	lam = SparsePolynomial.variable(total, n)
	polys = []
	for i, d in enumerate(degrees):
		exps = [0] * total
		exps[i] = d - 1
		mono = SparsePolynomial.from_terms(total, {tuple(exps): d * coeffs[i + 1]})
		polys.append(problem.u[i] - lam * mono)
	last = [0] * total
	last[0] = degrees[0]
	polys.append(SparsePolynomial.from_terms(total, {(0,) * total: coeffs[0], tuple(last): coeffs[1]}))
	system = SquareSystem(tuple(polys), variable_names(n, 1), n)
	return BinomialStart(system, degrees, coeffs, problem.u)


def build_total_degree_start(target: SquareSystem, seed: int | np.random.Generator | None = None) -> TotalDegreeStart:
	rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
	nvars = target.nvars
	degrees = tuple(p.total_degree for p in target.polys)
	gammas = tuple(_unit_complex(rng) for _ in degrees)
	polys = []
	for i, (d, g) in enumerate(zip(degrees, gammas)):
		exps = [0] * nvars
		exps[i] = d
		polys.append(SparsePolynomial.from_terms(nvars, {tuple(exps): 1.0, (0,) * nvars: -g}))
	return TotalDegreeStart(SquareSystem(tuple(polys), target.variable_names, target.nx), degrees, gammas)
