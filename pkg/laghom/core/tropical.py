"""Tropical verification of binomial start systems.

All values are exact ``Fraction``s. A tropical row is a list of affine forms
``coeffs . v + offset`` over the tropical variables ``v = (a_1..a_n, b)``; a
point solves the system when in every row the minimum is attained at least
twice. Candidate points come from choosing one pair of terms per row and
solving the resulting square linear system over QQ.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from ..errors import LHTropicalError


Lifting = Mapping[tuple[int, int], Fraction]


@dataclass(frozen=True)
class TropicalTerm:
	coeffs: tuple[Fraction, ...]
	offset: Fraction

	def value(self, point: Sequence[Fraction]) -> Fraction:
		return sum((c * p for c, p in zip(self.coeffs, point)), Fraction(0)) + self.offset


@dataclass(frozen=True)
class TropicalRow:
	terms: tuple[TropicalTerm, ...]

	def __post_init__(self) -> None:
		if len(self.terms) < 2:
			raise LHTropicalError("a tropical row needs at least two terms")
		width = len(self.terms[0].coeffs)
		if any(len(t.coeffs) != width for t in self.terms):
			raise LHTropicalError("terms of a row disagree on the variable count")

	@property
	def nvars(self) -> int:
		return len(self.terms[0].coeffs)

	def values(self, point: Sequence[Fraction]) -> list[Fraction]:
		return [t.value(point) for t in self.terms]

	def minimizers(self, point: Sequence[Fraction]) -> tuple[int, ...]:
		values = self.values(point)
		low = min(values)
		return tuple(k for k, v in enumerate(values) if v == low)


@dataclass(frozen=True)
class TropicalSolution:
	a: tuple[Fraction, ...]
	b: Fraction | None
	active_terms: tuple[tuple[int, ...], ...]

	@property
	def point(self) -> tuple[Fraction, ...]:
		return self.a if self.b is None else (*self.a, self.b)

	def is_unit_cell(self) -> bool:
		return all(v == 1 for v in self.a) and self.b == 0


@dataclass(frozen=True)
class LowerHullCell:
	points: tuple[tuple[int, Fraction], ...]
	normal: tuple[Fraction, Fraction]


def binomial_lifting(degrees: Sequence[int]) -> dict[tuple[int, int], Fraction]:
	"""The lifting that makes ``a = 1, b = 0`` the only cell.

	Keys are ``(row, term)``, 0-based. Rows ``i < n`` carry 0 on the constant
	``u_i`` and ``1 - d_i`` on the multiplier term; the last row carries 0 on
	``c_0``, ``-d_1`` on ``x_1^{d_1}`` and ``1 - d_i`` on the others.
	"""
	n = len(degrees)
	omega: dict[tuple[int, int], Fraction] = {}
	for i, d in enumerate(degrees):
		omega[(i, 0)] = Fraction(0)
		omega[(i, 1)] = Fraction(1 - d)
	omega[(n, 0)] = Fraction(0)
	for i, d in enumerate(degrees):
		omega[(n, i + 1)] = Fraction(-d) if i == 0 else Fraction(1 - d)
	return omega


def uniform_lifting(n: int, d: int) -> dict[tuple[int, int], Fraction]:
	return binomial_lifting([d] * n)


def zero_lifting(n: int) -> dict[tuple[int, int], Fraction]:
	keys = [(i, k) for i in range(n) for k in range(2)] + [(n, k) for k in range(n + 1)]
	return {key: Fraction(0) for key in keys}


def build_tropical_system(degrees: Sequence[int], lifting: Lifting) -> list[TropicalRow]:
	"""Tropical rows of the lifted binomial Lagrange system, variables ``(a, b)``."""
	n = len(degrees)
	if n == 0:
		raise LHTropicalError("empty degree list")

	def weight(key: tuple[int, int]) -> Fraction:
		if key not in lifting:
			raise LHTropicalError(f"lifting has no entry for row {key[0]}, term {key[1]}")
		return Fraction(lifting[key])

	zero = (Fraction(0),) * (n + 1)
	rows = []
	for i, d in enumerate(degrees):
		coeffs = [Fraction(0)] * (n + 1)
		coeffs[i] = Fraction(d - 1)
		coeffs[n] = Fraction(1)
		rows.append(TropicalRow((TropicalTerm(zero, weight((i, 0))), TropicalTerm(tuple(coeffs), weight((i, 1))))))
	last = [TropicalTerm(zero, weight((n, 0)))]
	for i, d in enumerate(degrees):
		coeffs = [Fraction(0)] * (n + 1)
		coeffs[i] = Fraction(d)
		last.append(TropicalTerm(tuple(coeffs), weight((n, i + 1))))
	rows.append(TropicalRow(tuple(last)))
	return rows


def univariate_row(points: Iterable[tuple[int, Fraction | int]]) -> TropicalRow:
	"""Row ``min_k {k a + w_k}`` for lifted points ``(k, w_k)``."""
	return TropicalRow(tuple(TropicalTerm((Fraction(k),), Fraction(w)) for k, w in points))


def _solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> tuple[Fraction, ...] | None:
	size = len(rhs)
	A = DomainMatrix([[QQ(v.numerator, v.denominator) for v in row] for row in matrix], (size, size), QQ)
	if A.rank() < size:
		return None
	b = DomainMatrix([[QQ(v.numerator, v.denominator)] for v in rhs], (size, 1), QQ)
	x = A.lu_solve(b)
	return tuple(Fraction(int(e.numerator), int(e.denominator)) for [e] in x.to_list())


def solve_tropical(rows: Sequence[TropicalRow], multiplier: bool = True) -> list[TropicalSolution]:
	"""All points where each row's minimum is attained at least twice.

	Selections whose linear system is singular are skipped. With
	``multiplier`` the last tropical variable is reported as ``b``.
	"""
	if not rows:
		raise LHTropicalError("empty tropical system")
	nvars = rows[0].nvars
	if any(r.nvars != nvars for r in rows) or len(rows) != nvars:
		raise LHTropicalError(f"need a square system, got {len(rows)} rows in {nvars} variables")
	seen: dict[tuple[Fraction, ...], TropicalSolution] = {}
	choices = [list(itertools.combinations(range(len(r.terms)), 2)) for r in rows]
	for selection in itertools.product(*choices):
		matrix, rhs = [], []
		for row, (p, q) in zip(rows, selection):
			tp, tq = row.terms[p], row.terms[q]
			matrix.append([x - y for x, y in zip(tp.coeffs, tq.coeffs)])
			rhs.append(tq.offset - tp.offset)
		point = _solve_exact(matrix, rhs)
		if point is None or point in seen:
			continue
		active = []
		for row, (p, q) in zip(rows, selection):
			winners = row.minimizers(point)
			if p not in winners or q not in winners:
				break
			active.append(winners)
		else:
			a, b = (point[:-1], point[-1]) if multiplier else (point, None)
			seen[point] = TropicalSolution(tuple(a), b, tuple(active))
	return sorted(seen.values(), key=lambda s: s.point)


def lower_hull_cells_univariate(points: Sequence[tuple[int, Fraction | int]]) -> list[LowerHullCell]:
	"""Edges of the lower hull of lifted points ``(exponent, weight)``.

	Each cell lists every input point on the edge; its inner normal is scaled
	to last coordinate 1.
	"""
	if len(points) < 2:
		raise LHTropicalError("need at least two lifted points")
	pts = sorted((int(e), Fraction(w)) for e, w in points)
	if len({e for e, _ in pts}) != len(pts):
		raise LHTropicalError("exponents must be distinct")

	def cross(o, p, q) -> Fraction:
		return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])

	hull: list[tuple[int, Fraction]] = []
	for p in pts:
		while len(hull) >= 2 and cross(hull[-2], hull[-1], p) <= 0:
			hull.pop()
		hull.append(p)
	cells = []
	for (e0, w0), (e1, w1) in zip(hull, hull[1:]):
		slope = (w1 - w0) / (e1 - e0)
		on_edge = tuple(p for p in pts if e0 <= p[0] <= e1 and p[1] == w0 + slope * (p[0] - e0))
		cells.append(LowerHullCell(on_edge, (-slope, Fraction(1))))
	return cells


def check_unit_cell(degrees: Sequence[int]) -> tuple[bool, list[TropicalSolution]]:
	"""Solve the binomial lifting's tropical system; True iff the only cell is ``a = 1, b = 0``."""
	solutions = solve_tropical(build_tropical_system(degrees, binomial_lifting(degrees)))
	return len(solutions) == 1 and solutions[0].is_unit_cell(), solutions
