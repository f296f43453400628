"""Closed-form algebraic degrees. All counts are Python ints."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

from ..errors import LHProfileError


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DegreeProfile:
	d0: int
	ds: tuple[int, ...]
	n: int

	def __post_init__(self) -> None:
		object.__setattr__(self, "ds", tuple(int(d) for d in self.ds))
		if self.n < 0 or len(self.ds) > self.n:
			raise LHProfileError(f"{len(self.ds)} constraints in dimension {self.n}")
		if self.d0 < 1 or any(d < 1 for d in self.ds):
			raise LHProfileError("all degrees must be >= 1")

	@property
	def m(self) -> int:
		return len(self.ds)


def symmetric_sum(r: int, ns: Sequence[int]) -> int:
	"""``S_r(n_1..n_k)``: sum over compositions of r of ``prod n_j^{i_j}``."""
	if r < 0:
		raise LHProfileError("r must be >= 0")
	# row[j] holds the sum restricted to compositions of j over the slots seen so far
	row = [1] + [0] * r
	for value in ns:
		for j in range(1, r + 1):
			row[j] += value * row[j - 1]
	return row[r]


def algebraic_degree_generic(profile: DegreeProfile) -> int:
	product = math.prod(profile.ds)
	return product * symmetric_sum(profile.n - profile.m, [profile.d0 - 1, *(d - 1 for d in profile.ds)])


def refined_hypersurface_degree(ds: Sequence[int]) -> int:
	"""``d_1 * prod_{i>=2}(d_i - 1)`` for ascending ``ds``."""
	ds = [int(d) for d in ds]
	if not ds:
		raise LHProfileError("empty degree list")
	if any(d < 1 for d in ds):
		raise LHProfileError("all degrees must be >= 1")
	if any(a > b for a, b in zip(ds, ds[1:])):
		raise LHProfileError(f"degrees must be sorted ascending, got {ds}")
	if ds[0] == 1 and any(d > 2 for d in ds[1:]):
		logger.warning("degree profile %s lies outside the degree-one corollary's support; using the product formula", ds)
	return ds[0] * math.prod(d - 1 for d in ds[1:])


def derangement(k: int) -> int:
	if k < 0:
		raise LHProfileError("k must be >= 0")
	return sum(math.factorial(t) * (-1) ** (k - t) * math.comb(k, t) for t in range(k + 1))


def multiaffine_degree(n: int) -> int:
	return derangement(n + 1)


def bezout_count(degrees: Sequence[int]) -> int:
	return math.prod(degrees)
