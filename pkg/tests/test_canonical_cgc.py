import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import u3_irreps
from u3coupling.canonical_cgc import (ProductState, cached_table, full_table,
                                      highest_weight_cgc, hw_nullity, hw_vectors,
                                      lower_weight_block, product_space, selection_ok)
from u3coupling.errors import MultiplicityMismatch
from u3coupling.oracles import casimir_cg_table
from u3coupling.patterns import (GelfandPattern as G, U3Irrep as U, enumerate_patterns,
                                 highest_weight, pattern_index)
from u3coupling.selfcheck import table_residuals
from u3coupling.tensor import decompose

F = U(1, 0, 0)
R2 = 1 / math.sqrt(2.0)


def test_selection_rule():
    hw = highest_weight(F)
    assert selection_ok(hw, hw, highest_weight(U(2, 0, 0)))
    assert not selection_ok(hw, hw, G(1, 1, 0, 1, 1, 1))
    assert not selection_ok(hw, G(1, 0, 0, 0, 0, 0), highest_weight(U(2, 0, 0)))


def test_hw_symmetric():
    assert highest_weight_cgc(F, F, U(2, 0, 0)) == {
        1: {ProductState(highest_weight(F), highest_weight(F)): 1.0}}


def test_hw_antisymmetric():
    (terms,) = highest_weight_cgc(F, F, U(1, 1, 0)).values()
    a, b = G(1, 0, 0, 1, 0, 1), G(1, 0, 0, 1, 0, 0)
    assert terms == {ProductState(a, b): pytest.approx(R2), ProductState(b, a): pytest.approx(-R2)}


def test_octet_multiplicity_two():
    g = U(2, 1, 0)
    assert hw_nullity(g, g, U(3, 2, 1)) == 2
    v = hw_vectors(g, g, U(3, 2, 1))
    assert v.shape == (2, 64)
    assert np.allclose(v @ v.T, np.eye(2))


def test_hw_rejects_absent_irrep():
    with pytest.raises(ValueError):
        hw_vectors(F, F, U(3, 0, 0))


def test_multiplicity_mismatch_is_raised(monkeypatch):
    import u3coupling.canonical_cgc as mod
    monkeypatch.setattr(mod, "outer_multiplicity", lambda *a: 2)
    with pytest.raises(MultiplicityMismatch):
        mod.hw_vectors(F, F, U(2, 0, 0))


def test_lower_symmetric_doublet():
    t = full_table(F, F, U(2, 0, 0))
    terms = t.terms(G(2, 0, 0, 1, 0, 1), cutoff=1e-14)
    assert sorted(terms.values()) == pytest.approx([R2, R2])
    space = product_space(F, F)
    w = (1, 1)
    again = lower_weight_block(t.coeffs, space, U(2, 0, 0), w)
    assert np.allclose(again[0], t.coeffs[0][np.ix_([pattern_index(U(2, 0, 0))[G(2, 0, 0, 1, 0, 1)]], space.blocks[w])])


def test_symmetric_table_against_casimir_oracle():
    t = full_table(F, F, U(2, 0, 0))
    assert t.coeffs.shape == (1, 6, 9)
    assert np.allclose(t.coeffs[0], casimir_cg_table(F, F, U(2, 0, 0)), atol=1e-12)


def test_identity_coupling():
    g = U(2, 1, 0)
    t = full_table(g, U(0, 0, 0), g)
    assert np.allclose(t.coeffs[0], np.eye(8))


def test_unitarity_24_block():
    t = full_table(U(2, 1, 0), F, U(2, 1, 1))
    c = t.coeffs[0]
    assert c.shape == (3, 24)
    assert np.allclose((c ** 2).sum(axis=1), 1.0)


@settings(max_examples=25)
@given(u3_irreps(max_n13=3), u3_irreps(max_n13=3))
def test_orthogonal_and_equivariant(a, b):
    orth, equiv = table_residuals(a, b)
    assert orth <= 1e-10 and equiv <= 1e-10


@settings(max_examples=25)
@given(u3_irreps(max_n13=3), u3_irreps(max_n13=3))
def test_phase_and_selection(a, b):
    for e in decompose(a, b):
        t = cached_table(a, b, e.coupled)
        for rho in range(t.rho_max):
            hw = t.coeffs[rho, 0]
            lead = np.flatnonzero(np.abs(hw) > 1e-10)[0]
            assert hw[lead] > 0
        for target, rho, terms in t.entries(cutoff=0.0):
            for s in terms:
                assert selection_ok(s.left, s.right, target)


def test_multiplicity_free_tables_match_oracle():
    for a, b in [(U(2, 1, 0), F), (U(2, 0, 0), U(1, 1, 0)), (U(2, 1, 0), U(1, 1, 0))]:
        for e in decompose(a, b):
            t = cached_table(a, b, e.coupled)
            assert np.allclose(t.coeffs[0], casimir_cg_table(a, b, e.coupled), atol=1e-10)


def test_coefficient_lookup():
    t = cached_table(F, F, U(1, 1, 0))
    a, b = G(1, 0, 0, 1, 0, 1), G(1, 0, 0, 1, 0, 0)
    assert t.coefficient(a, b, highest_weight(U(1, 1, 0))) == pytest.approx(R2)
    assert t.coefficient(a, a, highest_weight(U(1, 1, 0))) == 0.0
    assert len(list(t.entries())) == 3
    assert enumerate_patterns(t.coupled)[0] == highest_weight(t.coupled)


@settings(max_examples=20)
@given(u3_irreps(max_n13=3), u3_irreps(max_n13=3), st.integers(1, 3))
def test_shift_invariance(a, b, m):
    for e in decompose(a, b):
        plain = cached_table(a, b, e.coupled).coeffs
        shifted = cached_table(a.shifted(m), b, e.coupled.shifted(m)).coeffs
        assert np.array_equal(plain, shifted)
