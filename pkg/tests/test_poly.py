from __future__ import annotations

import math

import numpy as np
import pytest

from laghom.core.poly import (
    CompiledSystem,
    SparsePolynomial,
    coordinate_degrees,
    dense_support,
    evaluate,
    gradient,
    jacobian,
    multiaffine_support,
    partial,
    random_generic,
    simplex_support,
)
from laghom.errors import LHDimensionError, LHIndexError


def test_from_terms_is_canonical():
    p = SparsePolynomial.from_terms(2, [((1, 0), 2.0), ((0, 1), 1.0), ((1, 0), -2.0)])
    q = SparsePolynomial.from_terms(2, {(0, 1): 1.0})
    assert p == q
    assert p.coefficient((1, 0)) == 0
    assert not SparsePolynomial.from_terms(2, {(0, 0): 0.0}).terms


def test_evaluate_and_arithmetic(cubic):
    assert evaluate(cubic, [2.0]) == pytest.approx(7.0)
    x = SparsePolynomial.variable(1, 0)
    rebuilt = x * x * x - x * x + 2 * x - 1
    assert rebuilt == cubic
    assert cubic.total_degree == 3
    assert cubic([1j]) == pytest.approx(-1j + 1 + 2j - 1)


def test_partial_and_gradient():
    # x1^3 x2 + 5 x2
    p = SparsePolynomial.from_terms(2, {(3, 1): 1.0, (0, 1): 5.0})
    assert partial(p, 0) == SparsePolynomial.from_terms(2, {(2, 1): 3.0})
    assert partial(p, 1) == SparsePolynomial.from_terms(2, {(3, 0): 1.0, (0, 0): 5.0})
    assert [g.total_degree for g in gradient(p)] == [3, 3]
    with pytest.raises(LHIndexError):
        partial(p, 2)


def test_point_length_is_checked(cubic):
    with pytest.raises(LHDimensionError):
        evaluate(cubic, [1.0, 2.0])
    with pytest.raises(LHDimensionError):
        CompiledSystem([cubic]).evaluate([1.0, 2.0])


def test_supports():
    assert len(dense_support(3, 2).vertices) == math.comb(5, 2)
    assert simplex_support([2, 3]).vertices == ((0, 0), (2, 0), (0, 3))
    assert len(multiaffine_support(3).vertices) == 8


def test_embed_moves_variables():
    p = SparsePolynomial.from_terms(2, {(2, 1): 1.0})
    q = p.embed(3, [2, 0])
    assert q.terms == (((1, 0, 2), 1 + 0j),)


def test_compiled_system_matches_termwise_evaluation(rng):
    polys = [random_generic(3, dense_support(3, 3), rng) for _ in range(3)]
    system = CompiledSystem(polys)
    z = rng.normal(size=3) + 1j * rng.normal(size=3)
    expected = np.array([evaluate(p, z) for p in polys])
    assert np.allclose(system.evaluate(z), expected, rtol=1e-12, atol=1e-12)
    values, jac = system.evaluate_and_jacobian(z)
    assert np.allclose(values, expected, rtol=1e-12, atol=1e-12)
    assert jac.shape == (3, 3)


def test_jacobian_against_central_differences(rng):
    h = 1e-7
    for _ in range(100):
        n = int(rng.integers(1, 4))
        d = int(rng.integers(1, 4))
        polys = [random_generic(n, dense_support(n, d), rng) for _ in range(n)]
        z = rng.normal(size=n) + 1j * rng.normal(size=n)
        jac = jacobian(polys, z)
        fd = np.empty((n, n), dtype=complex)
        for j in range(n):
            step = np.zeros(n, dtype=complex)
            step[j] = h
            fd[:, j] = [(evaluate(p, z + step) - evaluate(p, z - step)) / (2 * h) for p in polys]
        rel = np.max(np.abs(jac - fd)) / max(1.0, np.max(np.abs(jac)))
        assert rel < 1e-6


def test_residual_is_relative_backward_error():
    p = SparsePolynomial.from_terms(1, {(1,): 1.0, (0,): -1.0})
    system = CompiledSystem([p])
    assert system.residual([1.0]) == 0.0
    # |z - 1| / max(1, |z| + 1) at z = 3
    assert system.residual([3.0]) == pytest.approx(0.5)


def test_random_generic_real_mode(rng):
    p = random_generic(2, dense_support(2, 2), rng, real=True)
    coeffs = np.array([c for _, c in p.terms])
    assert np.all(coeffs.imag == 0)
    assert np.all((np.abs(coeffs.real) >= 0.1) & (np.abs(coeffs.real) <= 1.0))


def test_coordinate_degrees():
    p = SparsePolynomial.from_terms(3, {(2, 1, 0): 1.0, (0, 3, 0): 1.0, (0, 0, 0): 1.0})
    assert coordinate_degrees(p) == [2, 3, 0]


@pytest.mark.timeout(10)
def test_dense_support_scales_with_its_size():
    support = dense_support(50, 2)
    assert len(support.vertices) == math.comb(52, 2) == 1326
    assert len(set(support.vertices)) == 1326
    assert all(sum(e) <= 2 for e in support.vertices)
    assert len(dense_support(3, 0).vertices) == 1
