"""Littlewood-Richardson decomposition of a product of two U(3) irreps."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InternalMismatch
from .patterns import U3Irrep, dimension_u3


@dataclass(frozen=True)
class DecompositionEntry:
    coupled: U3Irrep
    rho_max: int


def _lr_count(outer: tuple[int, ...], inner: tuple[int, ...], content: tuple[int, ...]) -> int:
    """Number of LR tableaux of skew shape outer/inner with the given content.

    With three rows, row r may only hold labels <= r, so row 1 is all 1s,
    row 2 is fixed by its count of 1s, and row 3 by the content.
    """
    lengths = [o - i for o, i in zip(outer, inner)]
    if any(n < 0 for n in lengths):
        return 0
    count = 0
    for ones_in_row2 in range(lengths[1] + 1):
        rows = [
            [1] * lengths[0],
            [1] * ones_in_row2 + [2] * (lengths[1] - ones_in_row2),
        ]
        rest = [content[0] - lengths[0] - ones_in_row2,
                content[1] - (lengths[1] - ones_in_row2),
                content[2]]
        if any(r < 0 for r in rest) or sum(rest) != lengths[2]:
            continue
        rows.append([1] * rest[0] + [2] * rest[1] + [3] * rest[2])
        if _is_lr_tableau(rows, inner):
            count += 1
    return count


def _is_lr_tableau(rows: list[list[int]], inner: tuple[int, ...]) -> bool:
    cells = {}
    for r, row in enumerate(rows):
        for k, label in enumerate(row):
            cells[(r, inner[r] + k)] = label
    for (r, c), label in cells.items():
        above = cells.get((r - 1, c))
        if above is not None and above >= label:
            return False
    seen = [0, 0, 0, 0]
    for row in rows:
        for label in reversed(row):
            seen[label] += 1
            if label > 1 and seen[label] > seen[label - 1]:
                return False
    return True


@lru_cache(maxsize=8192)
def decompose(g1: U3Irrep, g2: U3Irrep) -> tuple[DecompositionEntry, ...]:
    """Coupled irreps of g1 x g2 with outer multiplicities, descending by label."""
    lam = g1.astuple()
    mu = g2.astuple()
    total = sum(lam) + sum(mu)
    out = []
    for a in range(lam[0] + mu[0], lam[0] - 1, -1):
        for b in range(min(a, lam[1] + mu[0]), lam[1] - 1, -1):
            c = total - a - b
            if c < lam[2] or c > b:
                continue
            n = _lr_count((a, b, c), lam, mu)
            if n:
                out.append(DecompositionEntry(U3Irrep(a, b, c), n))
    out.sort(key=lambda e: e.coupled.astuple(), reverse=True)
    if (sum(e.rho_max * dimension_u3(e.coupled) for e in out)
            != dimension_u3(g1) * dimension_u3(g2)):
        raise InternalMismatch(f"dimension sum fails for {g1} x {g2}")
    return tuple(out)


def outer_multiplicity(g1: U3Irrep, g2: U3Irrep, coupled: U3Irrep) -> int:
    for e in decompose(g1, g2):
        if e.coupled == coupled:
            return e.rho_max
    return 0
