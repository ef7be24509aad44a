"""U(3) > U(2) > U(1) Clebsch-Gordan coefficients for g1 x g2 -> coupled.

Product states |G>|G'> are indexed by ``i1 * dim(g2) + i2`` where ``i1, i2``
are canonical pattern indices, so the left pattern is the major key.  The
highest-weight coefficients come from the null space of the coupled raising
operators E12 and E23 restricted to the right weight; every lower weight is
then fixed, one whole weight block at a time, by acting with the lowering
operators E21 and E32 on the already known parent states.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple

import numpy as np
import scipy.sparse as sp

from .errors import MultiplicityMismatch
from .generators import generator_matrix
from .linalg import DEFAULT_TOL, null_space, nullity, solve_consistent
from .patterns import (GelfandPattern, U3Irrep, ZWeight, enumerate_patterns,
                       highest_weight, pattern_index, weight_blocks, z_weight)
from .tensor import outer_multiplicity

# z-weight shift produced by each off-diagonal generator
Z_SHIFT = {
    (1, 2): (0, 1), (2, 1): (0, -1),
    (2, 3): (1, 0), (3, 2): (-1, 0),
    (1, 3): (1, 1), (3, 1): (-1, -1),
}


class ProductState(NamedTuple):
    left: GelfandPattern
    right: GelfandPattern


def selection_ok(g: GelfandPattern, gp: GelfandPattern, gpp: GelfandPattern) -> bool:
    return (gpp.n11 == g.n11 + gp.n11
            and gpp.n12 + gpp.n22 == g.n12 + g.n22 + gp.n12 + gp.n22)


class ProductSpace:
    """Carrier space of g1 x g2 with the coupled generators E''_ij."""

    def __init__(self, g1: U3Irrep, g2: U3Irrep):
        self.g1, self.g2 = g1, g2
        self.left = enumerate_patterns(g1)
        self.right = enumerate_patterns(g2)
        self.d1, self.d2 = len(self.left), len(self.right)
        zl = np.array([z_weight(p) for p in self.left], dtype=np.int64).reshape(-1, 2)
        zr = np.array([z_weight(p) for p in self.right], dtype=np.int64).reshape(-1, 2)
        z = (zl[:, None, :] + zr[None, :, :]).reshape(-1, 2)
        self.blocks: dict[tuple[int, int], np.ndarray] = {}
        for w in sorted({tuple(map(int, r)) for r in z}):
            self.blocks[w] = np.flatnonzero((z[:, 0] == w[0]) & (z[:, 1] == w[1]))
        self._ops: dict[tuple[int, int], sp.csr_matrix] = {}
        self._block_cache: dict[tuple[int, int, tuple[int, int]], np.ndarray] = {}

    @property
    def dim(self) -> int:
        return self.d1 * self.d2

    def product_state(self, index: int) -> ProductState:
        return ProductState(self.left[index // self.d2], self.right[index % self.d2])

    def index(self, left: GelfandPattern, right: GelfandPattern) -> int:
        return pattern_index(self.g1)[left] * self.d2 + pattern_index(self.g2)[right]

    def op(self, i: int, j: int) -> sp.csr_matrix:
        """E''_ij = E_ij x 1 + 1 x E'_ij as a sparse matrix on the product space."""
        if (i, j) not in self._ops:
            a = sp.csr_matrix(generator_matrix(self.g1, i, j))
            b = sp.csr_matrix(generator_matrix(self.g2, i, j))
            self._ops[i, j] = sp.csr_matrix(
                sp.kron(a, sp.identity(self.d2)) + sp.kron(sp.identity(self.d1), b))
        return self._ops[i, j]

    def block(self, i: int, j: int, w: tuple[int, int]) -> np.ndarray:
        """Dense E''_ij from the weight block ``w`` to its image block."""
        key = (i, j, w)
        if key not in self._block_cache:
            dz = Z_SHIFT[i, j]
            src = self.blocks.get(w, np.empty(0, dtype=np.int64))
            dst = self.blocks.get((w[0] + dz[0], w[1] + dz[1]), np.empty(0, dtype=np.int64))
            if src.size and dst.size:
                # gather E x 1 + 1 x E' entrywise from the two factors
                ta, tb = np.divmod(dst, self.d2)
                sa, sb = np.divmod(src, self.d2)
                e1 = generator_matrix(self.g1, i, j)[np.ix_(ta, sa)]
                e2 = generator_matrix(self.g2, i, j)[np.ix_(tb, sb)]
                m = e1 * (tb[:, None] == sb[None, :]) + e2 * (ta[:, None] == sa[None, :])
            else:
                m = np.zeros((dst.size, src.size))
            self._block_cache[key] = m
        return self._block_cache[key]


@lru_cache(maxsize=256)
def product_space(g1: U3Irrep, g2: U3Irrep) -> ProductSpace:
    return ProductSpace(g1, g2)


@dataclass(frozen=True, eq=False)
class CGTable:
    """All coefficients C_{G,G'}^{G'',rho} for one coupling g1 x g2 -> coupled.

    ``coeffs[rho - 1, k, n]`` is the coefficient of product state ``n`` in
    coupled state ``k`` (canonical index) of multiplicity copy ``rho``.
    """

    g1: U3Irrep
    g2: U3Irrep
    coupled: U3Irrep
    coeffs: np.ndarray

    @property
    def rho_max(self) -> int:
        return self.coeffs.shape[0]

    @property
    def space(self) -> ProductSpace:
        return product_space(self.g1, self.g2)

    def coefficient(self, left: GelfandPattern, right: GelfandPattern,
                    target: GelfandPattern, rho: int = 1) -> float:
        k = pattern_index(self.coupled)[target]
        return float(self.coeffs[rho - 1, k, self.space.index(left, right)])

    def terms(self, target: GelfandPattern, rho: int = 1,
              cutoff: float = 0.0) -> dict[ProductState, float]:
        """Nonzero coefficients of one coupled state, keyed by product state."""
        row = self.coeffs[rho - 1, pattern_index(self.coupled)[target]]
        return {self.space.product_state(int(n)): float(row[n])
                for n in np.flatnonzero(np.abs(row) > cutoff)}

    def entries(self, cutoff: float = 0.0) -> Iterator[tuple[GelfandPattern, int, dict]]:
        for k, target in enumerate(enumerate_patterns(self.coupled)):
            for rho in range(1, self.rho_max + 1):
                yield target, rho, self.terms(target, rho, cutoff)


def _hw_system(space: ProductSpace, coupled: U3Irrep) -> tuple[np.ndarray, np.ndarray]:
    """Candidate product indices for the coupled highest weight and the matrix P(HW)."""
    w = z_weight(highest_weight(coupled))
    cols = space.blocks.get(w, np.empty(0, dtype=np.int64))
    p = np.vstack([space.block(1, 2, w), space.block(2, 3, w)])
    return cols, p


def hw_nullity(g1: U3Irrep, g2: U3Irrep, coupled: U3Irrep, tol: float = DEFAULT_TOL) -> int:
    """Raw null-space dimension of P(HW''), with no multiplicity cross-check."""
    if coupled.quanta != g1.quanta + g2.quanta:
        return 0
    cols, p = _hw_system(product_space(g1, g2), coupled)
    return nullity(p, tol) if cols.size else 0


def hw_vectors(g1: U3Irrep, g2: U3Irrep, coupled: U3Irrep,
               tol: float = DEFAULT_TOL) -> np.ndarray:
    """Highest-weight coefficient vectors, shape (rho_max, dim g1 * dim g2)."""
    space = product_space(g1, g2)
    rho_lr = outer_multiplicity(g1, g2, coupled)
    if rho_lr == 0:
        raise ValueError(f"{coupled} does not occur in {g1} x {g2}")
    cols, p = _hw_system(space, coupled)
    vecs = null_space(p, tol) if cols.size else []
    if len(vecs) != rho_lr:
        raise MultiplicityMismatch(
            f"{g1} x {g2} -> {coupled}: null space has dimension {len(vecs)}, "
            f"Littlewood-Richardson multiplicity is {rho_lr}")
    out = np.zeros((rho_lr, space.dim))
    for r, v in enumerate(vecs):
        out[r, cols] = v
    return out


def highest_weight_cgc(g1: U3Irrep, g2: U3Irrep, coupled: U3Irrep,
                       tol: float = DEFAULT_TOL) -> dict[int, dict[ProductState, float]]:
    space = product_space(g1, g2)
    vecs = hw_vectors(g1, g2, coupled, tol)
    return {r + 1: {space.product_state(int(n)): float(v[n]) for n in np.flatnonzero(v)}
            for r, v in enumerate(vecs)}


def lower_weight_block(coeffs: np.ndarray, space: ProductSpace, coupled: U3Irrep,
                       w: ZWeight | tuple[int, int], tol: float = DEFAULT_TOL) -> np.ndarray:
    """Coefficients of every coupled state of weight ``w``, all rho at once.

    ``coeffs`` must already hold the parent blocks (z-weights w + (0, 1) and
    w + (1, 0)).  Returns an array (rho, states at w, product states at w).
    """
    blocks = weight_blocks(coupled)
    targets = np.array(blocks[w])
    cols = space.blocks[tuple(w)]
    rho = coeffs.shape[0]
    a_parts, b_parts = [], []
    for (i, j) in ((2, 1), (3, 2)):
        dz = Z_SHIFT[i, j]
        pw = (w[0] - dz[0], w[1] - dz[1])
        parents = blocks.get(pw)
        if not parents:
            continue
        parents = np.array(parents)
        m = generator_matrix(coupled, i, j)
        a_parts.append(m[np.ix_(targets, parents)].T)
        pcols = space.blocks[pw]
        e = space.block(i, j, pw)
        known = coeffs[:, parents][:, :, pcols]
        b_parts.append(known @ e.T)
    a = np.vstack(a_parts)
    b = np.concatenate(b_parts, axis=1)
    p_rows = a.shape[0]
    b2 = b.transpose(1, 0, 2).reshape(p_rows, rho * cols.size)
    x = solve_consistent(a, b2, tol, require_full_rank=True)
    return x.reshape(targets.size, rho, cols.size).transpose(1, 0, 2)


def full_table(g1: U3Irrep, g2: U3Irrep, coupled: U3Irrep,
               tol: float = DEFAULT_TOL) -> CGTable:
    space = product_space(g1, g2)
    hw = hw_vectors(g1, g2, coupled, tol)
    rho = hw.shape[0]
    blocks = weight_blocks(coupled)
    coeffs = np.zeros((rho, coupled.dim, space.dim))
    coeffs[:, 0, :] = hw
    for n, w in enumerate(blocks):
        if n == 0:
            continue
        targets = np.array(blocks[w])
        cols = space.blocks[w]
        block = lower_weight_block(coeffs, space, coupled, w, tol)
        coeffs[np.ix_(np.arange(rho), targets, cols)] = block
    coeffs.flags.writeable = False
    return CGTable(g1, g2, coupled, coeffs)


@lru_cache(maxsize=512)
def cached_table(g1: U3Irrep, g2: U3Irrep, coupled: U3Irrep,
                 tol: float = DEFAULT_TOL) -> CGTable:
    return full_table(g1, g2, coupled, tol)


@lru_cache(maxsize=2048)
def cached_hw_vectors(g1: U3Irrep, g2: U3Irrep, coupled: U3Irrep,
                      tol: float = DEFAULT_TOL) -> np.ndarray:
    v = hw_vectors(g1, g2, coupled, tol)
    v.flags.writeable = False
    return v
