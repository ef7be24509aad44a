"""Action of the U(3) generators E_ij on Gelfand states.

Off-diagonal amplitudes are square roots of ratios of integer factors.  A
term is dropped when its target pattern breaks betweenness; in that case some
numerator factor vanishes, possibly together with a denominator factor, and
the 0/0 is read as 0.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .patterns import (GelfandPattern, U3Irrep, enumerate_patterns,
                       p_weight, pattern_index, validate)

LinearCombo = dict[GelfandPattern, float]


def _amp(num: tuple[int, ...], den: tuple[int, ...]) -> float:
    top = 1
    for f in num:
        if f == 0:
            return 0.0
        top *= f
    bottom = 1
    for f in den:
        bottom *= f
    return math.sqrt(top / bottom)


def _terms(i: int, j: int, p: GelfandPattern):
    """Yield (shift of (n12, n22, n11), sign, numerator, denominator) for E_ij, i != j."""
    n13, n23, n33, n12, n22, n11 = p
    d = n12 - n22
    if (i, j) == (1, 2):
        yield (0, 0, 1), 1, (n12 - n11, n11 - n22 + 1), ()
    elif (i, j) == (2, 1):
        yield (0, 0, -1), 1, (n12 - n11 + 1, n11 - n22), ()
    elif (i, j) == (2, 3):
        yield (1, 0, 0), 1, (n13 - n12, n12 - n23 + 1, n12 - n33 + 2, n12 - n11 + 1), (d + 2, d + 1)
        yield (0, 1, 0), 1, (n13 - n22 + 1, n23 - n22, n22 - n33 + 1, n11 - n22), (d + 1, d)
    elif (i, j) == (3, 2):
        yield (-1, 0, 0), 1, (n13 - n12 + 1, n12 - n23, n12 - n33 + 1, n12 - n11), (d + 1, d)
        yield (0, -1, 0), 1, (n13 - n22 + 2, n23 - n22 + 1, n22 - n33, n11 - n22 + 1), (d + 2, d + 1)
    elif (i, j) == (1, 3):
        yield (1, 0, 1), 1, (n13 - n12, n12 - n23 + 1, n12 - n33 + 2, n11 - n22 + 1), (d + 2, d + 1)
        yield (0, 1, 1), -1, (n13 - n22 + 1, n23 - n22, n22 - n33 + 1, n12 - n11), (d + 1, d)
    elif (i, j) == (3, 1):
        yield (-1, 0, -1), 1, (n13 - n12 + 1, n12 - n23, n12 - n33 + 1, n11 - n22), (d + 1, d)
        yield (0, -1, -1), -1, (n13 - n22 + 2, n23 - n22 + 1, n22 - n33, n12 - n11 + 1), (d + 2, d + 1)
    else:
        raise ValueError(f"generator indices must lie in 1..3, got ({i}, {j})")


def apply_generator(i: int, j: int, p: GelfandPattern) -> LinearCombo:
    """E_ij |p>, as a map from target pattern to amplitude (zeros omitted)."""
    if i == j:
        if i not in (1, 2, 3):
            raise ValueError(f"generator indices must lie in 1..3, got ({i}, {j})")
        w = p_weight(p)[3 - i]
        return {p: float(w)} if w else {}
    out: LinearCombo = {}
    for (a, b, c), sign, num, den in _terms(i, j, p):
        q = GelfandPattern(p.n13, p.n23, p.n33, p.n12 + a, p.n22 + b, p.n11 + c)
        if not validate(q):
            continue
        amp = _amp(num, den)
        if amp != 0.0:
            out[q] = sign * amp
    return out


def apply_to_combo(i: int, j: int, combo: LinearCombo) -> LinearCombo:
    out: LinearCombo = {}
    for p, c in combo.items():
        for q, a in apply_generator(i, j, p).items():
            out[q] = out.get(q, 0.0) + a * c
    return {q: v for q, v in out.items() if v != 0.0}


@lru_cache(maxsize=2048)
def generator_matrix(irrep: U3Irrep, i: int, j: int) -> np.ndarray:
    """Dense matrix M with M[target, source] = <target|E_ij|source> (read-only)."""
    index = pattern_index(irrep)
    pats = enumerate_patterns(irrep)
    m = np.zeros((len(pats), len(pats)))
    for col, p in enumerate(pats):
        for q, a in apply_generator(i, j, p).items():
            m[index[q], col] = a
    m.flags.writeable = False
    return m
