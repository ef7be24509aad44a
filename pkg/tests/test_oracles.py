"""The reference routines themselves, on cases small enough to do by hand."""

import math

import numpy as np
import pytest

from u3coupling.oracles import casimir_cg_table, decompose_by_weights, weight_multiplicities
from u3coupling.patterns import U3Irrep as U

F = U(1, 0, 0)


def test_weight_multiplicities_octet():
    w = weight_multiplicities(U(2, 1, 0))
    assert w[(1, 1, 1)] == 2
    assert sum(w.values()) == 8


def test_peeling():
    assert decompose_by_weights(F, F) == {U(2, 0, 0): 1, U(1, 1, 0): 1}
    assert decompose_by_weights(U(2, 1, 0), U(2, 1, 0))[U(3, 2, 1)] == 2


def test_casimir_antisymmetric():
    c = casimir_cg_table(F, F, U(1, 1, 0))
    r = 1 / math.sqrt(2)
    assert np.allclose(c[0][[1, 3]], [r, -r])


def test_casimir_refuses_multiplicity():
    o = U(2, 1, 0)
    with pytest.raises(ValueError):
        casimir_cg_table(o, o, U(3, 2, 1))
