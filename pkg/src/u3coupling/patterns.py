"""U(3) irrep labels and Gelfand-Tsetlin patterns.

A pattern is written row by row as ``n13,n23,n33;n12,n22;n11``.  Within an
irrep the patterns are kept in one fixed order (see :func:`pattern_sort_key`)
with the highest-weight state first; every table in the package indexes
states by position in that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple


@dataclass(frozen=True)
class U3Irrep:
    """U(3) irrep ``[n13, n23, n33]`` with ``n13 >= n23 >= n33 >= 0``."""

    n13: int
    n23: int
    n33: int

    def __post_init__(self):
        for v in (self.n13, self.n23, self.n33):
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError(f"irrep labels must be integers, got {v!r}")
        if not self.n13 >= self.n23 >= self.n33 >= 0:
            raise ValueError(f"invalid U(3) irrep {list(self.astuple())}")

    @classmethod
    def parse(cls, text: str) -> "U3Irrep":
        """Parse ``"3,2,0"`` (brackets and spaces tolerated)."""
        parts = text.strip().strip("[]()").replace(" ", "").split(",")
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated integers, got {text!r}")
        return cls(*(int(p) for p in parts))

    def astuple(self) -> tuple[int, int, int]:
        return (self.n13, self.n23, self.n33)

    @property
    def quanta(self) -> int:
        return self.n13 + self.n23 + self.n33

    @property
    def dim(self) -> int:
        return dimension_u3(self)

    def shifted(self, m: int) -> "U3Irrep":
        return U3Irrep(self.n13 + m, self.n23 + m, self.n33 + m)

    def to_su3(self) -> "SU3Irrep":
        return normalize(self)[0]

    def key(self) -> str:
        return f"{self.n13},{self.n23},{self.n33}"

    def __str__(self) -> str:
        return f"[{self.key()}]"


@dataclass(frozen=True)
class SU3Irrep:
    """Elliott label ``(lam, mu)``, i.e. the normalized irrep ``[lam+mu, mu, 0]``."""

    lam: int
    mu: int

    def __post_init__(self):
        if self.lam < 0 or self.mu < 0:
            raise ValueError(f"invalid SU(3) irrep ({self.lam},{self.mu})")

    def to_u3(self) -> U3Irrep:
        return U3Irrep(self.lam + self.mu, self.mu, 0)

    @property
    def dim(self) -> int:
        return dimension_su3(self)

    def __str__(self) -> str:
        return f"({self.lam},{self.mu})"


class GelfandPattern(NamedTuple):
    n13: int
    n23: int
    n33: int
    n12: int
    n22: int
    n11: int

    @property
    def irrep(self) -> U3Irrep:
        return U3Irrep(self.n13, self.n23, self.n33)

    def shifted(self, m: int) -> "GelfandPattern":
        return GelfandPattern(*(v + m for v in self))

    @classmethod
    def parse(cls, text: str) -> "GelfandPattern":
        rows = [r.split(",") for r in text.replace(" ", "").split(";")]
        if [len(r) for r in rows] != [3, 2, 1]:
            raise ValueError(f"expected 'n13,n23,n33;n12,n22;n11', got {text!r}")
        return cls(*(int(v) for row in rows for v in row))

    def __str__(self) -> str:
        return (f"{self.n13},{self.n23},{self.n33};"
                f"{self.n12},{self.n22};{self.n11}")


class PWeight(NamedTuple):
    w3: int
    w2: int
    w1: int


class ZWeight(NamedTuple):
    z2: int
    z1: int


def validate(p: GelfandPattern) -> bool:
    """True iff row 3 is a valid irrep and the betweenness conditions hold."""
    n13, n23, n33, n12, n22, n11 = p
    return (n13 >= n23 >= n33 >= 0
            and n13 >= n12 >= n23
            and n23 >= n22 >= n33
            and n12 >= n11 >= n22)


def dimension_u3(irrep: U3Irrep) -> int:
    n13, n23, n33 = irrep.astuple()
    # (n13 - n33 + 2) times the two other factors is always even.
    return (1 + n13 - n23) * (1 + n23 - n33) * (2 + n13 - n33) // 2


def dimension_su3(irrep: SU3Irrep) -> int:
    lam, mu = irrep.lam, irrep.mu
    return (1 + lam) * (1 + mu) * (2 + lam + mu) // 2


def normalize(irrep: U3Irrep) -> tuple[SU3Irrep, int]:
    """Strip complete columns: returns the Elliott label and the shift ``n33``."""
    return SU3Irrep(irrep.n13 - irrep.n23, irrep.n23 - irrep.n33), irrep.n33


def p_weight(p: GelfandPattern) -> PWeight:
    n13, n23, n33, n12, n22, n11 = p
    return PWeight(n13 + n23 + n33 - n12 - n22, n12 + n22 - n11, n11)


def z_weight(p: GelfandPattern) -> ZWeight:
    return ZWeight(p.n12 + p.n22, p.n11)


def weights(p: GelfandPattern) -> tuple[PWeight, ZWeight]:
    return p_weight(p), z_weight(p)


def highest_weight(irrep: U3Irrep) -> GelfandPattern:
    n13, n23, n33 = irrep.astuple()
    return GelfandPattern(n13, n23, n33, n13, n23, n13)


def pattern_sort_key(p: GelfandPattern) -> tuple[int, ...]:
    """Ascending sort on this key gives the canonical order (highest weight first)."""
    z2, z1 = p.n12 + p.n22, p.n11
    return (-(z2 + z1), -z2, -p.n12, -p.n22, -p.n11)


def weight_sort_key(w: ZWeight) -> tuple[int, int]:
    return (-(w[0] + w[1]), -w[0])


@lru_cache(maxsize=4096)
def enumerate_patterns(irrep: U3Irrep) -> tuple[GelfandPattern, ...]:
    """All patterns of ``irrep`` in canonical order."""
    n13, n23, n33 = irrep.astuple()
    out = [GelfandPattern(n13, n23, n33, n12, n22, n11)
           for n12 in range(n23, n13 + 1)
           for n22 in range(n33, n23 + 1)
           for n11 in range(n22, n12 + 1)]
    out.sort(key=pattern_sort_key)
    return tuple(out)


@lru_cache(maxsize=4096)
def pattern_index(irrep: U3Irrep) -> dict[GelfandPattern, int]:
    return {p: i for i, p in enumerate(enumerate_patterns(irrep))}


@lru_cache(maxsize=4096)
def weight_blocks(irrep: U3Irrep) -> dict[ZWeight, tuple[int, ...]]:
    """Canonical indices grouped by z-weight; keys in sweep order (top first)."""
    blocks: dict[ZWeight, list[int]] = {}
    for i, p in enumerate(enumerate_patterns(irrep)):
        blocks.setdefault(z_weight(p), []).append(i)
    return {w: tuple(blocks[w]) for w in sorted(blocks, key=weight_sort_key)}


def irreps_with_quanta(total: int) -> list[U3Irrep]:
    """Every U(3) irrep carrying exactly ``total`` quanta, descending."""
    out = []
    for n13 in range(total, -1, -1):
        for n23 in range(min(n13, total - n13), -1, -1):
            n33 = total - n13 - n23
            if 0 <= n33 <= n23:
                out.append(U3Irrep(n13, n23, n33))
    return out
