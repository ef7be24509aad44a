"""SU(3) > SO(3) > SO(2) Wigner coefficients from canonical CG tables.

A full coefficient factors as <L M; L' M' | L'' M''> times a reduced
coefficient.  The reduced one is read off at M' = L', M'' = L'' and
M = L'' - L', where the SO(3) factor never vanishes for an allowed triangle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np

from .canonical_cgc import cached_table
from .errors import InternalMismatch
from .linalg import DEFAULT_TOL
from .patterns import SU3Irrep, U3Irrep, normalize
from .physical import allowed_L, cached_transform, inner_multiplicity
from .tensor import decompose

PhysicalState = tuple[U3Irrep, int, int]  # (irrep, kappa, L)


@lru_cache(maxsize=65536)
def so3_cgc(j1: int, m1: int, j2: int, m2: int, J: int, M: int) -> float:
    """Condon-Shortley <j1 m1; j2 m2 | J M> for integer j, by Racah's sum in exact rationals."""
    if M != m1 + m2 or not abs(j1 - j2) <= J <= j1 + j2:
        return 0.0
    if abs(m1) > j1 or abs(m2) > j2 or abs(M) > J:
        return 0.0
    f = math.factorial
    pre = Fraction((2 * J + 1) * f(J + j1 - j2) * f(J - j1 + j2) * f(j1 + j2 - J),
                   f(j1 + j2 + J + 1))
    pre *= f(J + M) * f(J - M) * f(j1 - m1) * f(j1 + m1) * f(j2 - m2) * f(j2 + m2)
    total = Fraction(0)
    k_lo = max(0, j2 - J - m1, j1 - J + m2)
    k_hi = min(j1 + j2 - J, j1 - m1, j2 + m2)
    for k in range(k_lo, k_hi + 1):
        den = (f(k) * f(j1 + j2 - J - k) * f(j1 - m1 - k) * f(j2 + m2 - k)
               * f(J - j2 + m1 + k) * f(J - j1 - m2 + k))
        total += Fraction((-1) ** k, den)
    if total == 0:
        return 0.0
    return math.copysign(math.sqrt(pre * total * total), total)


@dataclass(frozen=True)
class ReducedWigner:
    irrep1: U3Irrep
    kappa1: int
    L1: int
    irrep2: U3Irrep
    kappa2: int
    L2: int
    coupled: U3Irrep
    kappa: int
    L: int
    rho: int
    value: float


def _check_state(state: PhysicalState):
    irrep, kappa, L = state
    if irrep.n33 != 0:
        raise ValueError(f"physical states need a normalized irrep, got {irrep}")
    if not 1 <= kappa <= inner_multiplicity(irrep, L):
        raise ValueError(f"kappa={kappa} out of range for {irrep} L={L}")


def _coupled_vector(coupled: U3Irrep, kappa: int, L: int, tol: float) -> np.ndarray:
    """M = L vector of the coupled physical state in the canonical basis of ``coupled``.

    Shifting an irrep by n33 shifts every pattern entry uniformly, which
    keeps the canonical order and every off-diagonal matrix element.
    """
    su3, _ = normalize(coupled)
    return cached_transform(su3.to_u3(), L, tol).vector(kappa, L)


def reduced_wigner(state1: PhysicalState, state2: PhysicalState,
                   coupled: PhysicalState, rho: int = 1, tol: float = DEFAULT_TOL) -> float:
    """Reduced coefficient <state1; state2 || coupled>_rho (coupled given by its U(3) label)."""
    (g1, k1, L1), (g2, k2, L2), (g3, k3, L3) = state1, state2, coupled
    _check_state(state1)
    _check_state(state2)
    su3, _ = normalize(g3)
    if not 1 <= k3 <= inner_multiplicity(su3.to_u3(), L3):
        raise ValueError(f"kappa={k3} out of range for {g3} L={L3}")
    if not abs(L1 - L2) <= L3 <= L1 + L2:
        return 0.0
    gamma = L1 + L2 - L3
    M1 = L1 - gamma
    cg = so3_cgc(L1, M1, L2, L2, L3, L3)
    if cg == 0.0:
        raise InternalMismatch(f"<{L1} {M1}; {L2} {L2} | {L3} {L3}> vanishes")
    table = cached_table(g1, g2, g3, tol)
    v3 = _coupled_vector(g3, k3, L3, tol)
    s = (v3 @ table.coeffs[rho - 1]).reshape(g1.dim, g2.dim)
    v1 = cached_transform(g1, L1, tol).vector(k1, M1)
    v2 = cached_transform(g2, L2, tol).vector(k2, L2)
    return float(v1 @ s @ v2) / cg


def full_wigner(state1: PhysicalState, M1: int, state2: PhysicalState, M2: int,
                coupled: PhysicalState, M3: int, rho: int = 1, tol: float = DEFAULT_TOL) -> float:
    cg = so3_cgc(state1[2], M1, state2[2], M2, coupled[2], M3)
    if cg == 0.0:
        return 0.0
    return cg * reduced_wigner(state1, state2, coupled, rho, tol)


def _physical_labels(irrep: U3Irrep) -> list[tuple[int, int]]:
    su3, _ = normalize(irrep)
    return [(k, L) for L, kmax in allowed_L(su3.lam, su3.mu).items()
            for k in range(1, kmax + 1)]


@dataclass(frozen=True, eq=False)
class WignerTable:
    """Every reduced coefficient of (lam1, mu1) x (lam2, mu2).

    ``values[(coupled, rho, k1, L1, k2, L2, k3, L3)]`` with ``coupled`` the
    U(3) label found in the decomposition of the normalized lifts.
    """

    su3_1: SU3Irrep
    su3_2: SU3Irrep
    values: dict[tuple, float]

    def couplings(self) -> dict[U3Irrep, int]:
        out: dict[U3Irrep, int] = {}
        for key in self.values:
            out[key[0]] = max(out.get(key[0], 0), key[1])
        return out

    def __iter__(self) -> Iterator[ReducedWigner]:
        g1, g2 = self.su3_1.to_u3(), self.su3_2.to_u3()
        for (g3, rho, k1, L1, k2, L2, k3, L3), v in self.values.items():
            yield ReducedWigner(g1, k1, L1, g2, k2, L2, g3, k3, L3, rho, v)

    def __len__(self) -> int:
        return len(self.values)

    def get(self, coupled: U3Irrep, rho: int, k1: int, L1: int, k2: int, L2: int,
            k3: int, L3: int) -> float:
        return self.values.get((coupled, rho, k1, L1, k2, L2, k3, L3), 0.0)


def wigner_table(su3_1: SU3Irrep, su3_2: SU3Irrep, tol: float = DEFAULT_TOL) -> WignerTable:
    """All reduced coefficients, assembled coupled irrep by coupled irrep."""
    g1, g2 = su3_1.to_u3(), su3_2.to_u3()
    labels1, labels2 = _physical_labels(g1), _physical_labels(g2)
    # Physical transforms (independent of the CG tables below)
    hw2 = np.array([cached_transform(g2, L, tol).vector(k, L) for k, L in labels2])
    values: dict[tuple, float] = {}
    for entry in decompose(g1, g2):
        g3 = entry.coupled
        labels3 = _physical_labels(g3)
        hw3 = np.array([_coupled_vector(g3, k, L, tol) for k, L in labels3])
        table = cached_table(g1, g2, g3, tol)
        for rho in range(1, entry.rho_max + 1):
            s = (hw3 @ table.coeffs[rho - 1]).reshape(len(labels3), g1.dim, g2.dim)
            x = s @ hw2.T  # (coupled label, left canonical index, right label)
            for a, (k3, L3) in enumerate(labels3):
                for b, (k2, L2) in enumerate(labels2):
                    for k1, L1 in labels1:
                        if not abs(L1 - L2) <= L3 <= L1 + L2:
                            continue
                        M1 = L3 - L2
                        cg = so3_cgc(L1, M1, L2, L2, L3, L3)
                        if cg == 0.0:
                            raise InternalMismatch(f"<{L1} {M1}; {L2} {L2} | {L3} {L3}> vanishes")
                        v1 = cached_transform(g1, L1, tol).vector(k1, M1)
                        values[(g3, rho, k1, L1, k2, L2, k3, L3)] = float(v1 @ x[a, :, b]) / cg
    return WignerTable(su3_1, su3_2, values)
