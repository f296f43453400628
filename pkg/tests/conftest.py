from __future__ import annotations

from typing import Callable

import numpy as np
import pytest

from laghom.core.lagrange import LinearObjectiveProblem
from laghom.core.poly import SparsePolynomial


def _signed_uniform(rng: np.random.Generator, low: float, high: float, size: int) -> np.ndarray:
    return rng.choice([-1.0, 1.0], size=size) * rng.uniform(low, high, size=size)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture()
def degree_one_instance() -> Callable[[int], tuple[LinearObjectiveProblem, np.ndarray, np.ndarray]]:
    """Factory for ``c0 + c1 x1 + c2 x2 + c3 x2^2`` with real generic data; returns (problem, c, u)."""

    def make(seed: int):
        gen = np.random.default_rng(seed)
        c = _signed_uniform(gen, 0.5, 2.0, 4)
        u = _signed_uniform(gen, 0.5, 1.5, 2)
        f = SparsePolynomial.from_terms(2, {(0, 0): c[0], (1, 0): c[1], (0, 1): c[2], (0, 2): c[3]})
        return LinearObjectiveProblem(tuple(u), f), c, u

    return make


def degree_one_closed_form(c: np.ndarray, u: np.ndarray) -> tuple[float, float, float]:
    c0, c1, c2, c3 = c
    u1, u2 = u
    x1 = (c2**2 * u1**2 - 4 * c0 * c3 * u1**2 - c1**2 * u2**2) / (4 * c1 * c3 * u1**2)
    x2 = (c1 * u2 - c2 * u1) / (2 * c3 * u1)
    return x1, x2, u1 / c1


@pytest.fixture()
def closed_form() -> Callable[[np.ndarray, np.ndarray], tuple[float, float, float]]:
    return degree_one_closed_form


@pytest.fixture()
def cubic() -> SparsePolynomial:
    """x^3 - x^2 + 2x - 1."""
    return SparsePolynomial.from_terms(1, {(0,): -1.0, (1,): 2.0, (2,): -1.0, (3,): 1.0})


def max_rel_diff(a, b) -> float:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return float(np.max(np.abs(a - b) / (1.0 + np.abs(b))))


@pytest.fixture()
def rel_diff() -> Callable:
    return max_rel_diff
