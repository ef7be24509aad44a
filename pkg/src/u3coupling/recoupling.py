"""U(3) Racah recoupling: U- and Z-coefficients and 9-U(3) coefficients.

U connects (g1 g2)g12, g3 with g1, (g2 g3)g23 and Z connects it with
(g1 g3)g13, g2.  Both are found by fixing the final state and the second
intermediate state at their highest weights and letting the remaining free
pattern run, which gives an overdetermined linear system for all values of
the last multiplicity index at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .canonical_cgc import cached_hw_vectors, cached_table
from .linalg import DEFAULT_TOL, solve_consistent
from .patterns import U3Irrep, enumerate_patterns, highest_weight, p_weight
from .tensor import decompose, outer_multiplicity


@dataclass(frozen=True, eq=False)
class UTensor:
    """U(g1 g2 g g3; g12 rho12 rho12_3, g23 rho23 rho1_23), indexed values[rho12-1, rho12_3-1, rho23-1, rho1_23-1]."""

    labels: tuple[U3Irrep, ...]
    values: np.ndarray


@dataclass(frozen=True, eq=False)
class ZTensor:
    """Z(g2 g1 g g3; g12 rho12 rho12_3, g13 rho13 rho13_2), indexed values[rho12-1, rho12_3-1, rho13-1, rho13_2-1]."""

    labels: tuple[U3Irrep, ...]
    values: np.ndarray


@dataclass(frozen=True, eq=False)
class NineU3:
    """9-U(3) coefficient between (g1 g2)g12 (g3 g4)g34 and (g1 g3)g13 (g2 g4)g24.

    ``values[rho12-1, rho34-1, rho13-1, rho24-1, rho12_34-1, rho13_24-1]``.
    """

    labels: tuple[U3Irrep, ...]
    values: np.ndarray


def _mult(a: U3Irrep, b: U3Irrep, c: U3Irrep) -> int:
    m = outer_multiplicity(a, b, c)
    if m == 0:
        raise ValueError(f"{c} does not occur in {a} x {b}")
    return m


def _hw_slice(g_a: U3Irrep, g_b: U3Irrep, g: U3Irrep, tol: float) -> np.ndarray:
    """HW coefficients of g in g_a x g_b as an array (rho, dim g_a, dim g_b)."""
    return cached_hw_vectors(g_a, g_b, g, tol).reshape(-1, g_a.dim, g_b.dim)


def _running_rows(free: U3Irrep, fixed: U3Irrep, g: U3Irrep) -> np.ndarray:
    """Canonical indices of the free patterns that can pair with the fixed HW state."""
    target = p_weight(highest_weight(g))
    w_fixed = p_weight(highest_weight(fixed))
    want = tuple(t - f for t, f in zip(target, w_fixed))
    return np.array([i for i, p in enumerate(enumerate_patterns(free)) if p_weight(p) == want],
                    dtype=np.int64)


def u_coefficients(g1: U3Irrep, g2: U3Irrep, g: U3Irrep, g3: U3Irrep,
                   g12: U3Irrep, g23: U3Irrep, tol: float = DEFAULT_TOL) -> UTensor:
    r12, r12_3 = _mult(g1, g2, g12), _mult(g12, g3, g)
    r23, r1_23 = _mult(g2, g3, g23), _mult(g1, g23, g)
    c12 = cached_table(g1, g2, g12, tol).coeffs.reshape(r12, g12.dim, g1.dim, g2.dim)
    c12_3 = _hw_slice(g12, g3, g, tol)     # (r12_3, G12, G3)
    c23 = _hw_slice(g2, g3, g23, tol)      # (r23, G2, G3)
    c1_23 = _hw_slice(g1, g23, g, tol)     # (r1_23, G1, G23)
    rows = _running_rows(g1, g23, g)
    # rhs[G1, rho12, rho12_3, rho23]
    rhs = np.einsum("akxb,ckz,dbz->xacd", c12, c12_3, c23, optimize=True)
    a = c1_23[:, rows, 0].T
    b = rhs[rows].reshape(rows.size, -1)
    # the right-hand side is built from unit-normalized CG rows, hence b_scale=1
    x = solve_consistent(a, b, tol, require_full_rank=True, b_scale=1.0)
    values = x.reshape(r1_23, r12, r12_3, r23).transpose(1, 2, 3, 0)
    return UTensor((g1, g2, g, g3, g12, g23), np.ascontiguousarray(values))


def z_coefficients(g2: U3Irrep, g1: U3Irrep, g: U3Irrep, g3: U3Irrep,
                   g12: U3Irrep, g13: U3Irrep, tol: float = DEFAULT_TOL) -> ZTensor:
    r12, r12_3 = _mult(g1, g2, g12), _mult(g12, g3, g)
    r13, r13_2 = _mult(g1, g3, g13), _mult(g13, g2, g)
    c12 = cached_table(g1, g2, g12, tol).coeffs.reshape(r12, g12.dim, g1.dim, g2.dim)
    c12_3 = _hw_slice(g12, g3, g, tol)     # (r12_3, G12, G3)
    c13 = _hw_slice(g1, g3, g13, tol)      # (r13, G1, G3)
    c13_2 = _hw_slice(g13, g2, g, tol)     # (r13_2, G13, G2)
    rows = _running_rows(g2, g13, g)
    # rhs[G2, rho12, rho12_3, rho13]
    rhs = np.einsum("akbx,ckz,dbz->xacd", c12, c12_3, c13, optimize=True)
    a = c13_2[:, 0, rows].T
    b = rhs[rows].reshape(rows.size, -1)
    # the right-hand side is built from unit-normalized CG rows, hence b_scale=1
    x = solve_consistent(a, b, tol, require_full_rank=True, b_scale=1.0)
    values = x.reshape(r13_2, r12, r12_3, r13).transpose(1, 2, 3, 0)
    return ZTensor((g2, g1, g, g3, g12, g13), np.ascontiguousarray(values))


def intermediate_irreps(g1: U3Irrep, g2: U3Irrep, g3: U3Irrep,
                        g12: U3Irrep, g13: U3Irrep, g4: U3Irrep, g: U3Irrep) -> list[U3Irrep]:
    """g0 in both (g12 x g3) and (g13 x g2) that still couple with g4 to g."""
    a = {e.coupled for e in decompose(g12, g3)}
    b = {e.coupled for e in decompose(g13, g2)}
    return sorted((g0 for g0 in a & b if outer_multiplicity(g0, g4, g)),
                  key=U3Irrep.astuple, reverse=True)


def nine_u3(g1: U3Irrep, g2: U3Irrep, g12: U3Irrep,
            g3: U3Irrep, g4: U3Irrep, g34: U3Irrep,
            g13: U3Irrep, g24: U3Irrep, g: U3Irrep, tol: float = DEFAULT_TOL) -> NineU3:
    """Sum over g0 of U(g13 g2 g g4) * Z(g2 g1 g0 g3) * U(g12 g3 g g4)."""
    shape = (_mult(g1, g2, g12), _mult(g3, g4, g34), _mult(g1, g3, g13),
             _mult(g2, g4, g24), _mult(g12, g34, g), _mult(g13, g24, g))
    total = np.zeros(shape)
    for g0 in intermediate_irreps(g1, g2, g3, g12, g13, g4, g):
        ua = u_coefficients(g13, g2, g, g4, g0, g24, tol).values
        z = z_coefficients(g2, g1, g0, g3, g12, g13, tol).values
        ub = u_coefficients(g12, g3, g, g4, g0, g34, tol).values
        # ua[r13_2, r04, r24, r13_24], z[r12, r12_3, r13, r13_2], ub[r12_3, r04, r34, r12_34]
        total += np.einsum("pqxy,abcp,bqdz->adcxzy", ua, z, ub, optimize=True)
    return NineU3((g1, g2, g12, g3, g4, g34, g13, g24, g), total)
