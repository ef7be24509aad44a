"""Brute-force reference computations used to cross-check the main pipeline.

None of these routines use the null-space or recursion code paths they are
meant to check.
"""

from __future__ import annotations

import math
from collections import Counter

import numpy as np

from .generators import generator_matrix
from .patterns import U3Irrep, enumerate_patterns, p_weight

_PAIRS = [(i, j) for i in (1, 2, 3) for j in (1, 2, 3)]


def weight_multiplicities(irrep: U3Irrep) -> Counter:
    """Multiplicity of each (E11, E22, E33) eigenvalue triple."""
    return Counter(tuple(reversed(p_weight(p))) for p in enumerate_patterns(irrep))


def decompose_by_weights(g1: U3Irrep, g2: U3Irrep) -> dict[U3Irrep, int]:
    """Tensor-product decomposition by repeatedly peeling off the top dominant weight."""
    left, right = weight_multiplicities(g1), weight_multiplicities(g2)
    product: Counter = Counter()
    for a, m in left.items():
        for b, n in right.items():
            product[tuple(x + y for x, y in zip(a, b))] += m * n
    out: dict[U3Irrep, int] = {}
    while True:
        dominant = [w for w, m in product.items() if m > 0 and w[0] >= w[1] >= w[2]]
        if not dominant:
            break
        top = max(dominant)
        mult = product[top]
        irrep = U3Irrep(*top)
        out[irrep] = mult
        for w, m in weight_multiplicities(irrep).items():
            product[w] -= mult * m
    if any(m != 0 for m in product.values()):
        raise AssertionError("weight peeling left a remainder")
    return out


def _product_ops(g1: U3Irrep, g2: U3Irrep) -> dict[tuple[int, int], np.ndarray]:
    i1, i2 = np.eye(g1.dim), np.eye(g2.dim)
    return {(i, j): np.kron(generator_matrix(g1, i, j), i2) + np.kron(i1, generator_matrix(g2, i, j))
            for i, j in _PAIRS}


def _casimirs(ops: dict, n: int = 3) -> list[np.ndarray]:
    idx = range(1, n + 1)
    c2 = sum(ops[i, j] @ ops[j, i] for i in idx for j in idx)
    c3 = sum(ops[i, j] @ ops[j, k] @ ops[k, i] for i in idx for j in idx for k in idx)
    return [c2, c3]


def _joint_kernel(pairs: list[tuple[np.ndarray, float]], dim: int, tol: float = 1e-8) -> np.ndarray:
    a = np.vstack([op - lam * np.eye(dim) for op, lam in pairs])
    _, s, vt = np.linalg.svd(a)
    scale = max(s[0], 1.0)
    rank = int(np.sum(s > tol * scale))
    return vt[rank:].T


def casimir_cg_table(g1: U3Irrep, g2: U3Irrep, coupled: U3Irrep) -> np.ndarray:
    """CG coefficients (dim coupled, dim g1 * dim g2) by Casimir diagonalization.

    Only for multiplicity-free couplings.  Each coupled Gelfand state is the
    joint eigenvector of the U(3) Casimirs C2, C3, the U(2) Casimirs and E11
    with the eigenvalues of that pattern; the top state is phased so that its
    first nonzero product coefficient is positive, and every other state so
    that a positive matrix element of E21 or E32 from an earlier state holds.
    """
    ops = _product_ops(g1, g2)
    n = g1.dim * g2.dim
    irrep_ops = {(i, j): generator_matrix(coupled, i, j) for i, j in _PAIRS}
    big = _casimirs(ops) + _casimirs({k: ops[k] for k in ops if max(k) <= 2}, 2)
    small = _casimirs(irrep_ops) + _casimirs({k: irrep_ops[k] for k in irrep_ops if max(k) <= 2}, 2)
    big += [ops[1, 1] + ops[2, 2], ops[1, 1]]
    small += [irrep_ops[1, 1] + irrep_ops[2, 2], irrep_ops[1, 1]]
    pats = enumerate_patterns(coupled)
    out = np.zeros((len(pats), n))
    for k in range(len(pats)):
        pairs = [(b, s[k, k]) for b, s in zip(big, small)]
        v = _joint_kernel(pairs, n)
        if v.shape[1] != 1:
            raise ValueError("casimir oracle needs a multiplicity-free coupling")
        v = v[:, 0]
        if k == 0:
            lead = np.flatnonzero(np.abs(v) > 1e-10)[0]
            v = v if v[lead] > 0 else -v
        else:
            for (i, j) in ((2, 1), (3, 2)):
                parents = np.flatnonzero(np.abs(irrep_ops[i, j][k, :k]) > 1e-12)
                if parents.size:
                    p = parents[0]
                    if (v @ ops[i, j] @ out[p]) * irrep_ops[i, j][k, p] < 0:
                        v = -v
                    break
        out[k] = v
    return out


def u_by_overlap(g1, g2, g, g3, g12, g23, tables) -> np.ndarray:
    """U as the overlap <1(23)|(12)3> of full three-particle HW states.

    ``tables(a, b, c)`` must return the (rho, dim c, dim a * dim b) CG array.
    """
    t12 = tables(g1, g2, g12).reshape(-1, g12.dim, g1.dim, g2.dim)
    t123 = tables(g12, g3, g)[:, 0].reshape(-1, g12.dim, g3.dim)
    t23 = tables(g2, g3, g23).reshape(-1, g23.dim, g2.dim, g3.dim)
    t1 = tables(g1, g23, g)[:, 0].reshape(-1, g1.dim, g23.dim)
    left = np.einsum("ckz,akxb->acxbz", t123, t12)
    right = np.einsum("rxk,skbz->srxbz", t1, t23)
    return np.einsum("acxbz,srxbz->acsr", left, right)


def z_by_overlap(g2, g1, g, g3, g12, g13, tables) -> np.ndarray:
    t12 = tables(g1, g2, g12).reshape(-1, g12.dim, g1.dim, g2.dim)
    t123 = tables(g12, g3, g)[:, 0].reshape(-1, g12.dim, g3.dim)
    t13 = tables(g1, g3, g13).reshape(-1, g13.dim, g1.dim, g3.dim)
    t132 = tables(g13, g2, g)[:, 0].reshape(-1, g13.dim, g2.dim)
    left = np.einsum("ckz,akxb->acxbz", t123, t12)        # particles (1, 2, 3)
    right = np.einsum("rkb,skxz->srxbz", t132, t13)
    return np.einsum("acxbz,srxbz->acsr", left, right)


def nine_by_overlap(g1, g2, g12, g3, g4, g34, g13, g24, g, tables) -> np.ndarray:
    """<(13)(24)|(12)(34)> from full four-particle HW states."""
    t12 = tables(g1, g2, g12).reshape(-1, g12.dim, g1.dim, g2.dim)
    t34 = tables(g3, g4, g34).reshape(-1, g34.dim, g3.dim, g4.dim)
    t13 = tables(g1, g3, g13).reshape(-1, g13.dim, g1.dim, g3.dim)
    t24 = tables(g2, g4, g24).reshape(-1, g24.dim, g2.dim, g4.dim)
    tl = tables(g12, g34, g)[:, 0].reshape(-1, g12.dim, g34.dim)
    tr = tables(g13, g24, g)[:, 0].reshape(-1, g13.dim, g24.dim)
    # indices a,b,c,d = particles 1..4
    left = np.einsum("zkl,pkab,qlcd->pqzabcd", tl, t12, t34)
    right = np.einsum("ykl,rkac,slbd->rsyabcd", tr, t13, t24)
    return np.einsum("pqzabcd,rsyabcd->pqrszy", left, right)


def _so3_ops(ops: dict) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    lp = math.sqrt(2.0) * (ops[1, 3] + ops[3, 2])
    lm = math.sqrt(2.0) * (ops[3, 1] + ops[2, 3])
    l0 = ops[1, 1] - ops[2, 2]
    return lp, l0, lm


def _physical_vectors(ops: dict, dim: int, L: int, order: np.ndarray) -> np.ndarray:
    """Rows |L M>, M = L..-L, for a multiplicity-free L by eigen-decomposition of L^2.

    The M = L state is phased positive on the first index of ``order`` where
    it is nonzero; lower M follow from positive <M|L-|M+1>.
    """
    lp, l0, lm = _so3_ops(ops)
    l2 = lm @ lp + l0 @ l0 + l0
    top = _joint_kernel([(l2, L * (L + 1)), (l0, L)], dim)
    if top.shape[1] != 1:
        raise ValueError("physical oracle needs inner multiplicity one")
    v = top[:, 0]
    lead = next(i for i in order if abs(v[i]) > 1e-10)
    v = v if v[lead] > 0 else -v
    rows = [v]
    for M in range(L - 1, -L - 1, -1):
        w = _joint_kernel([(l2, L * (L + 1)), (l0, M)], dim)[:, 0]
        if w @ lm @ rows[-1] < 0:
            w = -w
        rows.append(w)
    return np.array(rows)


def reduced_wigner_by_eigenbasis(g1: U3Irrep, g2: U3Irrep, cg) -> dict[tuple, float]:
    """Reduced Wigner coefficients for multiplicity-free cases from a full basis change.

    Coupled physical states are built directly in the product space as joint
    eigenvectors of the coupled Casimirs, L^2 and L0; their phases are tied
    to the oracle canonical basis from :func:`casimir_cg_table`.  The reduced
    value is sum over M1 + M2 = M3 of <L1 M1; L2 M2|L3 M3> times the overlap.
    ``cg(j1, m1, j2, m2, J, M)`` supplies SO(3) Clebsch-Gordan coefficients.
    """
    from .physical import allowed_L, expansion_states
    from .patterns import normalize, pattern_index

    def phys(irrep: U3Irrep, ops: dict, dim: int, L: int):
        norm_irrep = normalize(irrep)[0].to_u3()
        idx = pattern_index(irrep)
        order = np.array([idx[p.shifted(irrep.n33)] for _, _, p in expansion_states(norm_irrep, L)])
        return _physical_vectors(ops, dim, L, order)

    out: dict[tuple, float] = {}
    ops1 = {k: generator_matrix(g1, *k) for k in _PAIRS}
    ops2 = {k: generator_matrix(g2, *k) for k in _PAIRS}
    content1 = allowed_L(*_lm(g1))
    content2 = allowed_L(*_lm(g2))
    vec1 = {L: phys(g1, ops1, g1.dim, L) for L in content1}
    vec2 = {L: phys(g2, ops2, g2.dim, L) for L in content2}
    for g3, rho in decompose_by_weights(g1, g2).items():
        if rho != 1:
            raise ValueError("eigenbasis oracle needs multiplicity-free couplings")
        canon = casimir_cg_table(g1, g2, g3)
        ops3 = {k: generator_matrix(g3, *k) for k in _PAIRS}
        for L3 in allowed_L(*_lm(g3)):
            # coupled physical state in the coupled canonical basis, then product space
            v3 = phys(g3, ops3, g3.dim, L3)[0] @ canon
            for L1 in content1:
                for L2 in content2:
                    if not abs(L1 - L2) <= L3 <= L1 + L2:
                        continue
                    total = 0.0
                    for M1 in range(-L1, L1 + 1):
                        M2 = L3 - M1
                        if abs(M2) > L2:
                            continue
                        prod = np.kron(vec1[L1][L1 - M1], vec2[L2][L2 - M2])
                        total += cg(L1, M1, L2, M2, L3, L3) * float(prod @ v3)
                    out[(g3, 1, 1, L1, 1, L2, 1, L3)] = total
    return out


def _lm(irrep: U3Irrep) -> tuple[int, int]:
    return irrep.n13 - irrep.n23, irrep.n23 - irrep.n33

