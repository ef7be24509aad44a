from hypothesis import given

from conftest import u3_irreps
from u3coupling.oracles import decompose_by_weights
from u3coupling.patterns import U3Irrep as U
from u3coupling.tensor import decompose, outer_multiplicity


def as_dict(entries):
    return {e.coupled: e.rho_max for e in entries}


def test_fundamentals():
    assert as_dict(decompose(U(1, 0, 0), U(1, 0, 0))) == {U(2, 0, 0): 1, U(1, 1, 0): 1}


def test_octet_squared():
    got = as_dict(decompose(U(2, 1, 0), U(2, 1, 0)))
    assert got == {U(4, 2, 0): 1, U(3, 3, 0): 1, U(4, 1, 1): 1, U(3, 2, 1): 2, U(2, 2, 2): 1}
    assert sum(c.dim * r for c, r in got.items()) == 64


def test_descending_order():
    keys = [e.coupled.astuple() for e in decompose(U(3, 1, 0), U(2, 1, 0))]
    assert keys == sorted(keys, reverse=True)


def test_missing_irrep_has_zero_multiplicity():
    assert outer_multiplicity(U(1, 0, 0), U(1, 0, 0), U(3, 0, 0)) == 0
    assert outer_multiplicity(U(1, 0, 0), U(1, 0, 0), U(1, 1, 1)) == 0


@given(u3_irreps(max_n13=5))
def test_trivial_partner(g):
    assert as_dict(decompose(g, U(0, 0, 0))) == {g: 1}
    assert as_dict(decompose(U(0, 0, 0), g)) == {g: 1}


@given(u3_irreps(max_n13=5), u3_irreps(max_n13=4))
def test_against_weight_peeling(a, b):
    got = as_dict(decompose(a, b))
    assert got == decompose_by_weights(a, b)
    assert sum(c.dim * r for c, r in got.items()) == a.dim * b.dim


@given(u3_irreps(max_n13=5), u3_irreps(max_n13=5))
def test_commutes(a, b):
    assert as_dict(decompose(a, b)) == as_dict(decompose(b, a))
