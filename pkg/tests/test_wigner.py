import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy.physics.quantum.cg import CG

from u3coupling.canonical_cgc import cached_table
from u3coupling.errors import InternalMismatch
from u3coupling.oracles import reduced_wigner_by_eigenbasis
from u3coupling.patterns import SU3Irrep, U3Irrep as U
from u3coupling.physical import physical_basis
from u3coupling.selfcheck import _unitarity, full_wigner_matrix
from u3coupling.tensor import decompose
from u3coupling.wigner import full_wigner, reduced_wigner, so3_cgc, wigner_table


def test_so3_examples():
    assert so3_cgc(3, -2, 0, 0, 3, -2) == pytest.approx(1.0)
    assert so3_cgc(1, 1, 1, -1, 0, 0) == pytest.approx(1 / math.sqrt(3))
    assert so3_cgc(1, 1, 1, 1, 2, 2) == pytest.approx(1.0)
    assert so3_cgc(1, 1, 1, 1, 1, 2) == 0.0
    assert so3_cgc(1, 0, 1, 0, 1, 0) == 0.0


@given(st.integers(0, 5), st.integers(0, 5), st.data())
def test_so3_against_sympy(j1, j2, data):
    J = data.draw(st.integers(abs(j1 - j2), j1 + j2))
    m1 = data.draw(st.integers(-j1, j1))
    M = data.draw(st.integers(-J, J))
    m2 = M - m1
    ref = float(CG(j1, m1, j2, m2, J, M).doit()) if abs(m2) <= j2 else 0.0
    assert so3_cgc(j1, m1, j2, m2, J, M) == pytest.approx(ref, abs=1e-14)


def test_trivial_partner():
    a = U(2, 0, 0)
    assert reduced_wigner((a, 1, 2), (U(0, 0, 0), 1, 0), (a, 1, 2)) == pytest.approx(1.0)
    assert reduced_wigner((a, 1, 0), (U(0, 0, 0), 1, 0), (a, 1, 0)) == pytest.approx(1.0)


def test_fundamentals_against_oracle():
    f = U(1, 0, 0)
    ref = reduced_wigner_by_eigenbasis(f, f, so3_cgc)
    assert reduced_wigner((f, 1, 1), (f, 1, 1), (U(2, 0, 0), 1, 2)) == pytest.approx(
        ref[(U(2, 0, 0), 1, 1, 1, 1, 1, 1, 2)], abs=1e-8)
    table = wigner_table(SU3Irrep(1, 0), SU3Irrep(1, 0))
    assert table.values.keys() == ref.keys()
    for k, v in ref.items():
        assert table.values[k] == pytest.approx(v, abs=1e-8)


@pytest.mark.parametrize("a, b", [((2, 0), (1, 0)), ((1, 1), (1, 0)), ((2, 0), (0, 1)),
                                  ((2, 0), (2, 0)), ((3, 0), (1, 0))])
def test_multiplicity_free_oracle(a, b):
    s1, s2 = SU3Irrep(*a), SU3Irrep(*b)
    try:
        ref = reduced_wigner_by_eigenbasis(s1.to_u3(), s2.to_u3(), so3_cgc)
    except ValueError:
        pytest.skip("oracle needs multiplicity one")
    table = wigner_table(s1, s2)
    assert max(abs(table.values[k] - v) for k, v in ref.items()) <= 1e-8


def test_full_wigner_selection():
    f = U(1, 0, 0)
    assert full_wigner((f, 1, 1), 1, (f, 1, 1), 1, (U(2, 0, 0), 1, 2), 1) == 0.0
    v = full_wigner((f, 1, 1), 1, (f, 1, 1), 0, (U(2, 0, 0), 1, 2), 1)
    assert v == pytest.approx(so3_cgc(1, 1, 1, 0, 2, 1)
                              * reduced_wigner((f, 1, 1), (f, 1, 1), (U(2, 0, 0), 1, 2)))


def test_bad_kappa():
    with pytest.raises(ValueError):
        reduced_wigner((U(4, 2, 0), 3, 2), (U(1, 0, 0), 1, 1), (U(5, 2, 0), 1, 3))
    with pytest.raises(ValueError):
        reduced_wigner((U(2, 1, 1), 1, 1), (U(1, 0, 0), 1, 1), (U(3, 1, 1), 1, 1))


def test_triangle_violations_are_zero():
    f = U(1, 0, 0)
    # L'' = 1 cannot come from L = 3 and L' = 1
    assert reduced_wigner((U(3, 0, 0), 1, 3), (f, 1, 1), (U(3, 1, 0), 1, 1)) == 0.0


def test_vanishing_prefactor_guard(monkeypatch):
    import u3coupling.wigner as mod
    monkeypatch.setattr(mod, "so3_cgc", lambda *a: 0.0)
    f = U(1, 0, 0)
    with pytest.raises(InternalMismatch):
        mod.reduced_wigner((f, 1, 1), (f, 1, 1), (U(2, 0, 0), 1, 2))


@pytest.mark.parametrize("a, b", [((1, 0), (1, 0)), ((1, 1), (1, 1)), ((2, 0), (1, 1))])
def test_full_blocks_orthogonal(a, b):
    w = full_wigner_matrix(SU3Irrep(*a), SU3Irrep(*b))
    assert _unitarity(w) <= 1e-8


def test_octet_two_sheets():
    t = wigner_table(SU3Irrep(1, 1), SU3Irrep(1, 1))
    assert t.couplings()[U(3, 2, 1)] == 2
    sheet = [[t.get(U(3, 2, 1), r, 1, 1, 1, 1, 1, 1) for r in (1, 2)],
             [t.get(U(3, 2, 1), r, 1, 2, 1, 1, 1, 1) for r in (1, 2)]]
    assert np.abs(np.array(sheet)).max() > 0


def _basis_change(a: SU3Irrep, b: SU3Irrep):
    g1, g2 = a.to_u3(), b.to_u3()
    l1, t1 = physical_basis(g1)
    l2, t2 = physical_basis(g2)
    cols = []
    for e in decompose(g1, g2):
        su3 = e.coupled.to_su3()
        _, t3 = physical_basis(su3.to_u3())
        table = cached_table(g1, g2, e.coupled)
        for rho in range(e.rho_max):
            cols.append(table.coeffs[rho].T @ t3)
    c = np.hstack(cols)
    return np.kron(t1, t2).T @ c


@pytest.mark.parametrize("a, b", [((1, 1), (1, 1)), ((2, 0), (1, 1)), ((2, 1), (1, 1))])
def test_basis_change_consistency(a, b):
    s1, s2 = SU3Irrep(*a), SU3Irrep(*b)
    # both matrices use rows (k1 L1 M1) x (k2 L2 M2) and the decomposition column order
    assert np.allclose(full_wigner_matrix(s1, s2), _basis_change(s1, s2), atol=1e-8)


@pytest.mark.slow
def test_basis_change_27x27():
    s = SU3Irrep(2, 2)
    assert np.allclose(full_wigner_matrix(s, s), _basis_change(s, s), atol=1e-8)
