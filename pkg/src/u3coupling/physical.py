"""SU(3) > SO(3) > SO(2) reduction and the physical-to-canonical basis change.

With L+ = sqrt(2)(E13 + E32), L0 = E11 - E22 and L- = sqrt(2)(E31 + E23),
the M = L states of angular momentum L in ``[n13, n23, 0]`` span the kernel
of E13 + E32 inside the L0 = L eigenspace.  That eigenspace is spanned by the
patterns ``(n12, n22; n11) = (L + 2q - t, t; L + q)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import InternalMismatch, MultiplicityMismatch
from .generators import LinearCombo, generator_matrix
from .linalg import DEFAULT_TOL, null_space
from .patterns import (GelfandPattern, SU3Irrep, U3Irrep, dimension_u3,
                       enumerate_patterns, pattern_index)


def int_p(x) -> int:
    """Integer part for x >= 0, else 0."""
    x = Fraction(x)
    return math.floor(x) if x >= 0 else 0


def int_m(x) -> int:
    """Round half-integers up; identity on integers."""
    return math.ceil(Fraction(x))


def _require_normal(irrep: U3Irrep):
    if irrep.n33 != 0:
        raise ValueError(f"expected a normalized irrep [n13,n23,0], got {irrep}")


def inner_multiplicity(irrep: U3Irrep, L: int) -> int:
    """Number of times L occurs in ``[n13, n23, 0]`` (closed IntP formula)."""
    _require_normal(irrep)
    n13, n23 = irrep.n13, irrep.n23
    if L < 0 or L > n13:
        return 0
    k = (int_p(Fraction(n13 - L, 2))
         - int_p(Fraction(n13 - n23 + 1 - L, 2))
         - int_p(Fraction(n23 + 1 - L, 2)) + 1)
    return max(k, 0)


def allowed_L(lam: int, mu: int) -> dict[int, int]:
    """L content of (lam, mu) by Elliott's K-band rule, checked against the closed formula."""
    lo, hi = min(lam, mu), max(lam, mu)
    counts: dict[int, int] = {}
    for K in range(lo, -1, -2):
        ls = range(K, K + hi + 1) if K > 0 else range(hi, -1, -2)
        for L in ls:
            counts[L] = counts.get(L, 0) + 1
    irrep = SU3Irrep(lam, mu).to_u3()
    for L in range(irrep.n13 + 1):
        if counts.get(L, 0) != inner_multiplicity(irrep, L):
            raise InternalMismatch(
                f"({lam},{mu}) L={L}: K rule gives {counts.get(L, 0)}, "
                f"closed formula gives {inner_multiplicity(irrep, L)}")
    return dict(sorted(counts.items()))


def q_bounds(L: int, t: int, n13: int, n23: int) -> tuple[int, int]:
    q_min = max(t, int_m(Fraction(t - L + n23, 2)))
    q_max = math.floor(Fraction(n13 - L + t, 2))
    return q_min, q_max


def so3_dimension_check(irrep: U3Irrep) -> bool:
    _require_normal(irrep)
    total = sum(inner_multiplicity(irrep, L) * (2 * L + 1) for L in range(irrep.n13 + 1))
    return total == dimension_u3(irrep)


def expansion_states(irrep: U3Irrep, L: int) -> list[tuple[int, int, GelfandPattern]]:
    """(q, t, pattern) for every M = L pattern, t ascending then q ascending."""
    _require_normal(irrep)
    n13, n23 = irrep.n13, irrep.n23
    out = []
    for t in range(n23 + 1):
        qmin, qmax = q_bounds(L, t, n13, n23)
        for q in range(qmin, qmax + 1):
            out.append((q, t, GelfandPattern(n13, n23, 0, L + 2 * q - t, t, L + q)))
    return out


def l_plus_matrix(irrep: U3Irrep) -> np.ndarray:
    return math.sqrt(2.0) * (generator_matrix(irrep, 1, 3) + generator_matrix(irrep, 3, 2))


def l_minus_matrix(irrep: U3Irrep) -> np.ndarray:
    return math.sqrt(2.0) * (generator_matrix(irrep, 3, 1) + generator_matrix(irrep, 2, 3))


def l_zero_matrix(irrep: U3Irrep) -> np.ndarray:
    return generator_matrix(irrep, 1, 1) - generator_matrix(irrep, 2, 2)


@dataclass(frozen=True, eq=False)
class TransformTable:
    """Physical states ``|[n13,n23,0] kappa L M>`` expanded in Gelfand states.

    ``coefficients[kappa - 1, s]`` is C^kappa_qt for the s-th entry of
    ``states`` (the M = L expansion).  ``vectors[kappa - 1, L - M]`` is the
    full canonical-basis vector of the state with projection M.
    """

    irrep: U3Irrep
    L: int
    states: tuple[tuple[int, int, GelfandPattern], ...]
    coefficients: np.ndarray
    vectors: np.ndarray

    @property
    def kappa_max(self) -> int:
        return self.coefficients.shape[0]

    def coefficient(self, kappa: int, q: int, t: int) -> float:
        for s, (qq, tt, _) in enumerate(self.states):
            if (qq, tt) == (q, t):
                return float(self.coefficients[kappa - 1, s])
        raise KeyError((q, t))

    def vector(self, kappa: int, M: int) -> np.ndarray:
        if abs(M) > self.L:
            raise ValueError(f"|M| > L for M={M}, L={self.L}")
        return self.vectors[kappa - 1, self.L - M]

    def combo(self, kappa: int, M: int) -> LinearCombo:
        pats = enumerate_patterns(self.irrep)
        v = self.vector(kappa, M)
        return {pats[i]: float(v[i]) for i in np.flatnonzero(v)}


def hw_transform(irrep: U3Irrep, L: int, tol: float = DEFAULT_TOL) -> TransformTable:
    """Solve (E13 + E32)|kappa L L> = 0 in the M = L subspace and lower to every M."""
    _require_normal(irrep)
    kappa_max = inner_multiplicity(irrep, L)
    states = expansion_states(irrep, L)
    index = pattern_index(irrep)
    cols = np.array([index[p] for _, _, p in states], dtype=np.int64)
    raise_op = generator_matrix(irrep, 1, 3) + generator_matrix(irrep, 3, 2)
    p = raise_op[:, cols] if cols.size else np.zeros((0, 0))
    p = p[np.any(p != 0.0, axis=1)]
    vecs = null_space(p, tol) if cols.size else []
    if len(vecs) != kappa_max:
        raise MultiplicityMismatch(
            f"{irrep} L={L}: null space has dimension {len(vecs)}, expected {kappa_max}")
    coefficients = np.array(vecs).reshape(kappa_max, len(states))
    d = irrep.dim
    vectors = np.zeros((kappa_max, 2 * L + 1, d))
    lower = l_minus_matrix(irrep)
    for k in range(kappa_max):
        v = np.zeros(d)
        v[cols] = coefficients[k]
        vectors[k, 0] = v
        raw = v
        for g in range(1, 2 * L + 1):
            raw = lower @ raw
            M = L - g
            # |L M> = sqrt((L+M)! / ((2L)! (L-M)!)) (L-)^(L-M) |L L>
            norm = math.exp(0.5 * (math.lgamma(L + M + 1) - math.lgamma(2 * L + 1)
                                   - math.lgamma(L - M + 1)))
            vectors[k, g] = norm * raw
    coefficients.flags.writeable = False
    vectors.flags.writeable = False
    return TransformTable(irrep, L, tuple(states), coefficients, vectors)


@lru_cache(maxsize=2048)
def cached_transform(irrep: U3Irrep, L: int, tol: float = DEFAULT_TOL) -> TransformTable:
    return hw_transform(irrep, L, tol)


def lower_transform(table: TransformTable, kappa: int, M: int) -> LinearCombo:
    """Expansion of ``|kappa L M>`` in Gelfand states."""
    return table.combo(kappa, M)


def physical_basis(irrep: U3Irrep, tol: float = DEFAULT_TOL) -> tuple[list[tuple[int, int, int]], np.ndarray]:
    """All (kappa, L, M) labels and the orthogonal matrix whose columns are their vectors."""
    _require_normal(irrep)
    labels, cols = [], []
    for L in range(irrep.n13 + 1):
        if inner_multiplicity(irrep, L) == 0:
            continue
        t = cached_transform(irrep, L, tol)
        for k in range(1, t.kappa_max + 1):
            for M in range(L, -L - 1, -1):
                labels.append((k, L, M))
                cols.append(t.vector(k, M))
    return labels, np.array(cols).T
