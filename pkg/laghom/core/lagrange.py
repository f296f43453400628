from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import LHDimensionError, LHProblemError
from .poly import SparsePolynomial, partial, random_generic, dense_support, simplex_support, multiaffine_support


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearObjectiveProblem:
	"""``min u^T x  s.t.  f(x) = 0``."""

	u: tuple[float, ...]
	f: SparsePolynomial

	def __post_init__(self) -> None:
		object.__setattr__(self, "u", tuple(float(v) for v in self.u))
		if len(self.u) != self.f.nvars:
			raise LHProblemError(f"objective has {len(self.u)} entries but f has {self.f.nvars} variables")
		if self.f.is_constant:
			raise LHProblemError("constraint must be nonconstant")
		if any(v == 0 for v in self.u):
			logger.warning("objective has a zero entry; u is not generic")

	@property
	def n(self) -> int:
		return self.f.nvars

	def objective(self, x: Sequence[complex]) -> complex:
		return complex(np.dot(np.asarray(self.u, dtype=float), np.asarray(x, dtype=complex)))

	def permuted(self, order: Sequence[int]) -> "LinearObjectiveProblem":
		"""Reorder coordinates so that new coordinate k is old coordinate ``order[k]``."""
		positions = [0] * self.n
		for new, old in enumerate(order):
			positions[old] = new
		return LinearObjectiveProblem(tuple(self.u[i] for i in order), self.f.embed(self.n, positions))

	def summary(self) -> dict:
		return {
			"n": self.n,
			"terms": len(self.f.terms),
			"total_degree": self.f.total_degree,
			"coordinate_degrees": [self.f.degree_in(i) for i in range(self.n)],
		}


@dataclass(frozen=True)
class SquareSystem:
	"""``n + m`` polynomials in ``(x_1..x_n, lambda_1..lambda_m)``."""

	polys: tuple[SparsePolynomial, ...]
	variable_names: tuple[str, ...]
	nx: int

	def __post_init__(self) -> None:
		object.__setattr__(self, "polys", tuple(self.polys))
		object.__setattr__(self, "variable_names", tuple(self.variable_names))
		nvars = len(self.variable_names)
		if len(self.polys) != nvars:
			raise LHDimensionError(f"{len(self.polys)} equations in {nvars} unknowns")
		if any(p.nvars != nvars for p in self.polys):
			raise LHDimensionError("every equation must live in all system variables")
		if not 0 <= self.nx <= nvars:
			raise LHDimensionError("primal variable count out of range")

	@property
	def nvars(self) -> int:
		return len(self.variable_names)

	@property
	def m(self) -> int:
		return self.nvars - self.nx

	def __len__(self) -> int:
		return len(self.polys)

	def __iter__(self):
		return iter(self.polys)


def variable_names(n: int, m: int) -> tuple[str, ...]:
	lam = ("lambda",) if m == 1 else tuple(f"lambda{j + 1}" for j in range(m))
	return tuple(f"x{i + 1}" for i in range(n)) + lam


def lagrange_linear_hypersurface(problem: LinearObjectiveProblem) -> SquareSystem:
	"""``{u_i - lambda * df/dx_i} u {f}`` in ``(x, lambda)``."""
	n = problem.n
	lam = SparsePolynomial.variable(n + 1, n)
	polys = []
	for i in range(n):
		polys.append(problem.u[i] - lam * partial(problem.f, i).embed(n + 1))
	polys.append(problem.f.embed(n + 1))
	return SquareSystem(tuple(polys), variable_names(n, 1), n)


def lagrange_general(f0: SparsePolynomial, F: Sequence[SparsePolynomial]) -> SquareSystem:
	"""Lagrange system of ``L = f0 - sum_j lambda_j f_j``."""
	n, m = f0.nvars, len(F)
	if any(f.nvars != n for f in F):
		raise LHDimensionError("objective and constraints must share the variable count")
	if m > n:
		raise LHProblemError(f"{m} constraints exceed {n} variables")
	total = n + m
	lams = [SparsePolynomial.variable(total, n + j) for j in range(m)]
	polys = []
	for i in range(n):
		ell = partial(f0, i).embed(total)
		for lam, f in zip(lams, F):
			ell = ell - lam * partial(f, i).embed(total)
		polys.append(ell)
	polys.extend(f.embed(total) for f in F)
	return SquareSystem(tuple(polys), variable_names(n, m), n)


def random_hypersurface_problem(n: int, degree: int | None = None, degrees: Sequence[int] | None = None, seed: int | np.random.Generator | None = None, real: bool = False) -> LinearObjectiveProblem:
	"""Generic problem with dense degree-``degree`` support, or simplex support on ``degrees``."""
	rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
	if degrees is not None:
		support = simplex_support(degrees)
	elif degree is not None:
		support = dense_support(n, degree)
	else:
		raise LHProblemError("need degree or degrees")
	f = random_generic(n, support, rng, real=real)
	u = rng.choice([-1.0, 1.0], size=n) * rng.uniform(0.5, 1.5, size=n)
	return LinearObjectiveProblem(tuple(u), f)


def random_multiaffine_pair(n: int, seed: int | np.random.Generator | None = None) -> tuple[SparsePolynomial, SparsePolynomial]:
	rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
	support = multiaffine_support(n)
	return random_generic(n, support, rng), random_generic(n, support, rng)
