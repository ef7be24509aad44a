import math

import numpy as np
import pytest
from hypothesis import given

from conftest import su3_irreps
from u3coupling.patterns import GelfandPattern as G, SU3Irrep, U3Irrep as U
from u3coupling.physical import (allowed_L, cached_transform, hw_transform, inner_multiplicity,
                                 int_m, int_p, l_minus_matrix, l_plus_matrix, l_zero_matrix,
                                 lower_transform, physical_basis, q_bounds, so3_dimension_check)


def test_int_parts():
    assert int_p(1.5) == 1 and int_p(-0.5) == 0 and int_p(0) == 0
    assert int_m(0.5) == 1 and int_m(2.0) == 2 and int_m(-0.5) == 0


@pytest.mark.parametrize("irrep, L, k", [((2, 1, 0), 0, 0), ((1, 0, 0), 1, 1), ((4, 2, 0), 2, 2),
                                         ((4, 2, 0), 1, 0), ((2, 0, 0), 5, 0)])
def test_inner_multiplicity(irrep, L, k):
    assert inner_multiplicity(U(*irrep), L) == k


def test_allowed_L():
    assert allowed_L(2, 2) == {0: 1, 2: 2, 3: 1, 4: 1}
    assert allowed_L(1, 0) == {1: 1}
    assert allowed_L(0, 0) == {0: 1}
    assert allowed_L(0, 3) == {1: 1, 3: 1}


def test_normalized_only():
    with pytest.raises(ValueError):
        inner_multiplicity(U(2, 1, 1), 0)


def test_q_bounds():
    assert q_bounds(1, 0, 3, 2) == (1, 1)
    assert q_bounds(0, 0, 2, 0) == (0, 1)
    assert q_bounds(2, 0, 2, 0) == (0, 0)


def test_transform_examples():
    t = hw_transform(U(2, 0, 0), 2)
    assert [p for _, _, p in t.states] == [G(2, 0, 0, 2, 0, 2)]
    assert t.coefficients[0, 0] == pytest.approx(1.0)
    t = hw_transform(U(2, 0, 0), 0)
    assert [p for _, _, p in t.states] == [G(2, 0, 0, 0, 0, 0), G(2, 0, 0, 2, 0, 1)]
    assert t.coefficients[0] == pytest.approx([1 / math.sqrt(3), -math.sqrt(2 / 3)], abs=1e-12)
    assert t.coefficient(1, 1, 0) == pytest.approx(-math.sqrt(2 / 3))
    assert hw_transform(U(2, 1, 0), 0).kappa_max == 0


def test_lowering_fundamental():
    g = U(1, 0, 0)
    t = hw_transform(g, 1)
    assert lower_transform(t, 1, 1) == t.combo(1, 1)
    v = t.vector(1, 0)
    assert np.linalg.norm(v) == pytest.approx(1.0)
    assert np.allclose(l_zero_matrix(g) @ v, 0.0)


@pytest.mark.parametrize("irrep", [(1, 0, 0), (2, 0, 0), (2, 1, 0), (4, 2, 0), (3, 3, 0), (5, 2, 0)])
def test_ladder(irrep):
    g = U(*irrep)
    lp, l0 = l_plus_matrix(g), l_zero_matrix(g)
    su3 = g.to_su3()
    for L in allowed_L(su3.lam, su3.mu):
        t = cached_transform(g, L)
        for k in range(1, t.kappa_max + 1):
            top = t.vector(k, L)
            assert np.abs(lp @ top).max() <= 1e-10
            for M in range(-L, L + 1):
                assert np.allclose(l0 @ t.vector(k, M), M * t.vector(k, M), atol=1e-10)
            # climb back from M = -L
            v = t.vector(k, -L)
            for M in range(-L, L):
                v = lp @ v / math.sqrt((L - M) * (L + M + 1))
            assert np.allclose(v, top, atol=1e-10)
        block = t.vectors.reshape(-1, g.dim)
        assert np.allclose(block @ block.T, np.eye(block.shape[0]), atol=1e-10)


def test_physical_basis_orthogonal():
    labels, m = physical_basis(U(4, 2, 0))
    assert m.shape == (27, 27)
    assert len(set(labels)) == 27
    assert np.allclose(m.T @ m, np.eye(27), atol=1e-12)


def test_ladder_ops_are_so3():
    g = U(3, 1, 0)
    lp, lm, l0 = l_plus_matrix(g), l_minus_matrix(g), l_zero_matrix(g)
    assert np.allclose(lp @ lm - lm @ lp, 2 * l0)
    assert np.allclose(l0 @ lp - lp @ l0, lp)


def test_kappa_overflow():
    t = cached_transform(U(4, 2, 0), 2)
    assert t.kappa_max == 2
    with pytest.raises(ValueError):
        t.vector(1, 3)


def test_first_expansion_entry_positive():
    for L, km in allowed_L(4, 2).items():
        t = cached_transform(SU3Irrep(4, 2).to_u3(), L)
        for k in range(km):
            row = t.coefficients[k]
            assert row[np.flatnonzero(np.abs(row) > 1e-10)[0]] > 0


@given(su3_irreps(max_sum=12))
def test_content_consistent(s):
    g = s.to_u3()
    counts = allowed_L(s.lam, s.mu)
    assert so3_dimension_check(g)
    assert sum(k * (2 * L + 1) for L, k in counts.items()) == g.dim
    for L in range(g.n13 + 2):
        assert counts.get(L, 0) == inner_multiplicity(g, L)
