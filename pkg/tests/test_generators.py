import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import u3_irreps
from u3coupling.generators import apply_generator, apply_to_combo, generator_matrix
from u3coupling.patterns import GelfandPattern as G, U3Irrep, highest_weight, p_weight
from u3coupling.selfcheck import commutator_residual

PAIRS = [(i, j) for i in (1, 2, 3) for j in (1, 2, 3)]


def test_lowering_fundamental():
    assert apply_generator(2, 1, G(1, 0, 0, 1, 0, 1)) == {G(1, 0, 0, 1, 0, 0): pytest.approx(1.0)}


def test_raising_kills_highest_weight():
    assert apply_generator(1, 2, highest_weight(U3Irrep(3, 2, 0))) == {}


def test_e23_fundamental():
    out = apply_generator(2, 3, G(1, 0, 0, 0, 0, 0))
    assert out.keys() == {G(1, 0, 0, 1, 0, 0)}
    assert out[G(1, 0, 0, 1, 0, 0)] == pytest.approx(1.0)


def test_e11_matrix():
    assert np.array_equal(generator_matrix(U3Irrep(1, 0, 0), 1, 1), np.diag([1.0, 0.0, 0.0]))


def test_matrices_read_only():
    m = generator_matrix(U3Irrep(2, 1, 0), 2, 1)
    with pytest.raises(ValueError):
        m[0, 0] = 1.0


@given(u3_irreps(max_n13=5))
def test_conjugation_and_commutators(g):
    comm, conj = commutator_residual(g)
    assert comm <= 1e-12 and conj <= 1e-12


@given(u3_irreps(max_n13=6))
def test_first_casimir(g):
    c1 = sum(generator_matrix(g, i, i) for i in (1, 2, 3))
    assert np.array_equal(c1, g.quanta * np.eye(g.dim))


@given(u3_irreps(max_n13=5), st.sampled_from([p for p in PAIRS if p[0] != p[1]]), st.data())
def test_weight_shift(g, ij, data):
    from u3coupling.patterns import enumerate_patterns
    i, j = ij
    p = data.draw(st.sampled_from(enumerate_patterns(g)))
    w = list(p_weight(p))  # (w3, w2, w1)
    for q in apply_generator(i, j, p):
        want = list(w)
        want[3 - i] += 1
        want[3 - j] -= 1
        assert list(p_weight(q)) == want


def test_combo_linear():
    g = U3Irrep(2, 1, 0)
    hw = highest_weight(g)
    once = apply_generator(2, 1, hw)
    twice = apply_to_combo(3, 2, once)
    direct = generator_matrix(g, 3, 2) @ generator_matrix(g, 2, 1)
    from u3coupling.patterns import pattern_index
    idx = pattern_index(g)
    vec = np.zeros(g.dim)
    for p, v in twice.items():
        vec[idx[p]] = v
    assert np.allclose(vec, direct[:, 0])
