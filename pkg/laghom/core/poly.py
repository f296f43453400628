"""Sparse multivariate polynomials over complex scalars.

A polynomial is a canonical (lexicographically sorted) tuple of
``(exponent_vector, coefficient)`` terms with no zero coefficients, so
structural equality is polynomial equality. ``CompiledSystem`` turns a list
of polynomials into sparse maps over a shared monomial table and evaluates
values and Jacobians of the whole system in one vectorized pass.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy import sparse

from ..errors import LHDimensionError, LHIndexError


Exponent = tuple[int, ...]


@dataclass(frozen=True)
class SupportDescription:
	"""Generators of a Newton polytope, as given (not hull-reduced)."""

	vertices: tuple[Exponent, ...]

	def __post_init__(self) -> None:
		if not self.vertices:
			raise ValueError("support must be nonempty")
		n = len(self.vertices[0])
		for v in self.vertices:
			if len(v) != n or any(e < 0 for e in v):
				raise ValueError(f"bad exponent vector {v}")

	@property
	def nvars(self) -> int:
		return len(self.vertices[0])


@dataclass(frozen=True)
class SparsePolynomial:
	nvars: int
	terms: tuple[tuple[Exponent, complex], ...] = ()

	@classmethod
	def from_terms(cls, nvars: int, terms: Mapping[Sequence[int], complex] | Iterable[tuple[Sequence[int], complex]]) -> "SparsePolynomial":
		"""Build a canonical polynomial; repeated exponents are summed."""
		items = terms.items() if isinstance(terms, Mapping) else terms
		acc: dict[Exponent, complex] = {}
		for exps, coef in items:
			key = tuple(int(e) for e in exps)
			if len(key) != nvars:
				raise LHDimensionError(f"exponent {key} has length {len(key)}, expected {nvars}")
			if any(e < 0 for e in key):
				raise ValueError(f"negative exponent in {key}")
			acc[key] = acc.get(key, 0j) + complex(coef)
		return cls(nvars, tuple(sorted((k, v) for k, v in acc.items() if v != 0)))

	@classmethod
	def constant(cls, nvars: int, value: complex) -> "SparsePolynomial":
		return cls.from_terms(nvars, {(0,) * nvars: value})

	@classmethod
	def variable(cls, nvars: int, i: int) -> "SparsePolynomial":
		if not 0 <= i < nvars:
			raise LHIndexError(f"variable index {i} out of range for {nvars} variables")
		exps = [0] * nvars
		exps[i] = 1
		return cls.from_terms(nvars, {tuple(exps): 1.0})

	@cached_property
	def _as_dict(self) -> dict[Exponent, complex]:
		return dict(self.terms)

	def coefficient(self, exps: Sequence[int]) -> complex:
		return self._as_dict.get(tuple(exps), 0j)

	@property
	def is_zero(self) -> bool:
		return not self.terms

	@property
	def is_constant(self) -> bool:
		return all(not any(e) for e, _ in self.terms)

	@property
	def total_degree(self) -> int:
		return max((sum(e) for e, _ in self.terms), default=0)

	def degree_in(self, i: int) -> int:
		return max((e[i] for e, _ in self.terms), default=0)

	@property
	def support(self) -> SupportDescription:
		return SupportDescription(tuple(e for e, _ in self.terms))

	@cached_property
	def exponent_matrix(self) -> np.ndarray:
		return np.array([e for e, _ in self.terms], dtype=np.int64).reshape(len(self.terms), self.nvars)

	@cached_property
	def coefficient_vector(self) -> np.ndarray:
		return np.array([c for _, c in self.terms], dtype=complex)

	def embed(self, nvars: int, positions: Sequence[int] | None = None) -> "SparsePolynomial":
		"""Re-express in ``nvars`` variables; variable i goes to ``positions[i]``."""
		positions = list(range(self.nvars)) if positions is None else list(positions)
		if len(positions) != self.nvars or any(not 0 <= p < nvars for p in positions):
			raise LHDimensionError("embedding positions do not match the variable count")
		out = []
		for exps, coef in self.terms:
			new = [0] * nvars
			for i, e in enumerate(exps):
				new[positions[i]] = e
			out.append((tuple(new), coef))
		return SparsePolynomial.from_terms(nvars, out)

	def __add__(self, other: "SparsePolynomial | complex") -> "SparsePolynomial":
		other = self._coerce(other)
		return SparsePolynomial.from_terms(self.nvars, [*self.terms, *other.terms])

	__radd__ = __add__

	def __neg__(self) -> "SparsePolynomial":
		return SparsePolynomial(self.nvars, tuple((e, -c) for e, c in self.terms))

	def __sub__(self, other: "SparsePolynomial | complex") -> "SparsePolynomial":
		return self + (-self._coerce(other))

	def __rsub__(self, other: complex) -> "SparsePolynomial":
		return self._coerce(other) - self

	def __mul__(self, other: "SparsePolynomial | complex") -> "SparsePolynomial":
		other = self._coerce(other)
		prod = []
		for (ea, ca), (eb, cb) in itertools.product(self.terms, other.terms):
			prod.append((tuple(x + y for x, y in zip(ea, eb)), ca * cb))
		return SparsePolynomial.from_terms(self.nvars, prod)

	__rmul__ = __mul__

	def _coerce(self, other: "SparsePolynomial | complex") -> "SparsePolynomial":
		if isinstance(other, SparsePolynomial):
			if other.nvars != self.nvars:
				raise LHDimensionError(f"cannot combine polynomials in {self.nvars} and {other.nvars} variables")
			return other
		return SparsePolynomial.constant(self.nvars, other)

	def __call__(self, point: Sequence[complex]) -> complex:
		return evaluate(self, point)

	def __str__(self) -> str:
		if not self.terms:
			return "0"
		parts = []
		for exps, coef in self.terms:
			mono = "*".join(f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}" for i, e in enumerate(exps) if e)
			parts.append(f"({coef:g})" + (f"*{mono}" if mono else ""))
		return " + ".join(parts)


def _check_point(nvars: int, point: Sequence[complex]) -> np.ndarray:
	z = np.asarray(point, dtype=complex).reshape(-1)
	if z.shape[0] != nvars:
		raise LHDimensionError(f"point has {z.shape[0]} coordinates, expected {nvars}")
	return z


def _power_table(z: np.ndarray, max_degree: int) -> np.ndarray:
	table = np.ones((max_degree + 1, z.shape[0]), dtype=complex)
	for k in range(1, max_degree + 1):
		table[k] = table[k - 1] * z
	return table


def evaluate(p: SparsePolynomial, point: Sequence[complex]) -> complex:
	z = _check_point(p.nvars, point)
	if p.is_zero:
		return 0j
	exps = p.exponent_matrix
	table = _power_table(z, int(exps.max(initial=0)))
	monomials = np.prod(table[exps, np.arange(p.nvars)], axis=1)
	return complex(monomials @ p.coefficient_vector)


def partial(p: SparsePolynomial, i: int) -> SparsePolynomial:
	"""Derivative with respect to variable ``i`` (0-based)."""
	if not 0 <= i < p.nvars:
		raise LHIndexError(f"variable index {i} out of range for {p.nvars} variables")
	out = []
	for exps, coef in p.terms:
		if exps[i]:
			lowered = list(exps)
			lowered[i] -= 1
			out.append((tuple(lowered), coef * exps[i]))
	return SparsePolynomial.from_terms(p.nvars, out)


def gradient(p: SparsePolynomial) -> list[SparsePolynomial]:
	return [partial(p, i) for i in range(p.nvars)]


def random_generic(nvars: int, support: SupportDescription, seed: int | np.random.Generator | None, real: bool = False) -> SparsePolynomial:
	"""Generic coefficients on ``support``.

	Complex mode draws unit-modulus coefficients with uniform phase; real mode
	draws from [-1, -0.1] u [0.1, 1].
	"""
	if support.nvars != nvars:
		raise LHDimensionError(f"support lives in {support.nvars} variables, expected {nvars}")
	rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
	vertices = sorted(set(support.vertices))
	if real:
		coeffs = rng.choice([-1.0, 1.0], size=len(vertices)) * rng.uniform(0.1, 1.0, size=len(vertices))
	else:
		coeffs = np.exp(2j * np.pi * rng.uniform(0.0, 1.0, size=len(vertices)))
	return SparsePolynomial.from_terms(nvars, zip(vertices, coeffs))


def jacobian(system: Sequence[SparsePolynomial], point: Sequence[complex]) -> np.ndarray:
	return CompiledSystem(system).jacobian(point)


def dense_support(nvars: int, degree: int) -> SupportDescription:
	"""All exponents of total degree <= ``degree``; C(n+d, d) of them."""
	vertices = []
	for k in range(degree + 1):
		for combo in itertools.combinations_with_replacement(range(nvars), k):
			e = [0] * nvars
			for i in combo:
				e[i] += 1
			vertices.append(tuple(e))
	return SupportDescription(tuple(vertices))



def simplex_support(degrees: Sequence[int]) -> SupportDescription:
	"""The vertices ``{0, d_1 e_1, ..., d_n e_n}``."""
	n = len(degrees)
	vertices = [(0,) * n]
	for i, d in enumerate(degrees):
		v = [0] * n
		v[i] = d
		vertices.append(tuple(v))
	return SupportDescription(tuple(vertices))


def multiaffine_support(nvars: int) -> SupportDescription:
	return SupportDescription(tuple(itertools.product((0, 1), repeat=nvars)))


def coordinate_degrees(p: SparsePolynomial) -> list[int]:
	return [p.degree_in(i) for i in range(p.nvars)]


class CompiledSystem:
	"""A polynomial system prepared for repeated numerical evaluation."""

	def __init__(self, polys: Sequence[SparsePolynomial]):
		self.polys = tuple(polys)
		if not self.polys:
			raise LHDimensionError("empty system")
		self.nvars = self.polys[0].nvars
		if any(p.nvars != self.nvars for p in self.polys):
			raise LHDimensionError("all polynomials of a system must share the variable count")
		index: dict[Exponent, int] = {}

		def col(exps: Exponent) -> int:
			return index.setdefault(exps, len(index))

		v_rows, v_cols, v_vals = [], [], []
		j_rows, j_cols, j_vals = [], [], []
		for i, p in enumerate(self.polys):
			for exps, coef in p.terms:
				v_rows.append(i)
				v_cols.append(col(exps))
				v_vals.append(coef)
				for j, e in enumerate(exps):
					if e:
						lowered = list(exps)
						lowered[j] -= 1
						j_rows.append(i * self.nvars + j)
						j_cols.append(col(tuple(lowered)))
						j_vals.append(coef * e)
		width = max(len(index), 1)
		m = len(self.polys)
		self._exps = np.array(list(index), dtype=np.int64).reshape(len(index), self.nvars)
		self._max_degree = int(self._exps.max(initial=0))
		self._value_map = sparse.csr_matrix((np.array(v_vals, dtype=complex), (v_rows, v_cols)), shape=(m, width))
		self._abs_map = sparse.csr_matrix((np.abs(np.array(v_vals, dtype=complex)), (v_rows, v_cols)), shape=(m, width))
		self._jac_map = sparse.csr_matrix((np.array(j_vals, dtype=complex), (j_rows, j_cols)), shape=(m * self.nvars, width))

	def __len__(self) -> int:
		return len(self.polys)

	def monomials(self, point: Sequence[complex]) -> np.ndarray:
		z = _check_point(self.nvars, point)
		if self._exps.shape[0] == 0:
			return np.zeros(1, dtype=complex)
		table = _power_table(z, self._max_degree)
		return np.prod(table[self._exps, np.arange(self.nvars)], axis=1)

	def evaluate(self, point: Sequence[complex]) -> np.ndarray:
		return self._value_map @ self.monomials(point)

	def jacobian(self, point: Sequence[complex]) -> np.ndarray:
		return (self._jac_map @ self.monomials(point)).reshape(len(self.polys), self.nvars)

	def evaluate_and_jacobian(self, point: Sequence[complex]) -> tuple[np.ndarray, np.ndarray]:
		mono = self.monomials(point)
		return self._value_map @ mono, (self._jac_map @ mono).reshape(len(self.polys), self.nvars)

	def residual(self, point: Sequence[complex]) -> float:
		"""Relative backward error ``max_i |F_i(z)| / max(1, sum |c||z^a|)``."""
		mono = self.monomials(point)
		values = np.abs(self._value_map @ mono)
		scale = np.maximum(1.0, self._abs_map @ np.abs(mono))
		return float(np.max(values / scale))

	def total_degrees(self) -> list[int]:
		return [p.total_degree for p in self.polys]

