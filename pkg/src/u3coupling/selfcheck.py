"""Self-checks backing ``u3coupling selftest`` and the acceptance tests.

Every check returns a :class:`CheckResult`; irrep sets can be capped by
total quanta so a quick run stays quick.
"""

from __future__ import annotations

import io
import math
import tempfile
import time
from contextlib import redirect_stdout
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import canonical_cgc, generators, patterns, physical, tensor, wigner
from .cache import load_wigner, store_wigner
from .canonical_cgc import cached_table, hw_nullity, product_space
from .generators import generator_matrix
from .oracles import reduced_wigner_by_eigenbasis
from .patterns import SU3Irrep, U3Irrep, dimension_u3, enumerate_patterns, irreps_with_quanta
from .physical import (allowed_L, cached_transform, inner_multiplicity,
                       l_plus_matrix, so3_dimension_check)
from .recoupling import nine_u3, u_coefficients, z_coefficients
from .tensor import decompose, outer_multiplicity
from .wigner import so3_cgc, wigner_table


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.2f} s)"


def clear_caches() -> None:
    """Drop every in-memory table so timings start cold."""
    for fn in (patterns.enumerate_patterns, patterns.pattern_index, patterns.weight_blocks,
               generators.generator_matrix, tensor.decompose, canonical_cgc.product_space,
               canonical_cgc.cached_table, canonical_cgc.cached_hw_vectors,
               physical.cached_transform, wigner.so3_cgc):
        fn.cache_clear()


def _cap(limit: int, max_quanta: int | None) -> int:
    return limit if max_quanta is None else min(limit, max_quanta)


def all_irreps(max_n13: int) -> list[U3Irrep]:
    return [U3Irrep(a, b, c) for a in range(max_n13 + 1)
            for b in range(a + 1) for c in range(b + 1)]


def normalized_irreps(max_dim: int, max_quanta: int | None = None) -> list[U3Irrep]:
    out = []
    lam_mu = 0
    while (lam_mu + 1) * (lam_mu + 2) // 2 <= max_dim:
        for lam in range(lam_mu + 1):
            g = SU3Irrep(lam, lam_mu - lam).to_u3()
            if g.dim <= max_dim and (max_quanta is None or g.quanta <= max_quanta):
                out.append(g)
        lam_mu += 1
    return sorted(out, key=lambda g: (g.dim, g.astuple()))


def coupling_pairs(max_product_dim: int = 400, max_quanta: int | None = None):
    """Ordered pairs of normalized irreps whose product space is small enough."""
    irreps = normalized_irreps(max_product_dim, max_quanta)
    return [(a, b) for a in irreps for b in irreps if a.dim * b.dim <= max_product_dim]


def check_dimensions(max_n13: int = 10, max_quanta: int | None = None) -> CheckResult:
    t0 = time.perf_counter()
    patterns.enumerate_patterns.cache_clear()
    bad = []
    irreps = [g for g in all_irreps(max_n13) if max_quanta is None or g.quanta <= max_quanta]
    for g in irreps:
        if len(enumerate_patterns(g)) != dimension_u3(g):
            bad.append(g)
    dt = time.perf_counter() - t0
    return CheckResult(1, "pattern count vs dimension formula", not bad and dt < 2.0,
                       f"{len(irreps)} irreps, {len(bad)} mismatches", dt)


def commutator_residual(g: U3Irrep) -> tuple[float, float]:
    e = {(i, j): generator_matrix(g, i, j) for i in (1, 2, 3) for j in (1, 2, 3)}
    comm = conj = 0.0
    for (i, j), (k, l) in product(e, e):
        lhs = e[i, j] @ e[k, l] - e[k, l] @ e[i, j]
        rhs = (j == k) * e[i, l] - (i == l) * e[k, j]
        comm = max(comm, float(np.abs(lhs - rhs).max(initial=0.0)))
    for (i, j) in e:
        conj = max(conj, float(np.abs(e[j, i] - e[i, j].T).max(initial=0.0)))
    return comm, conj


def check_algebra(max_dim: int = 50, max_n13: int = 10, max_quanta: int | None = None,
                  tol: float = 1e-12) -> CheckResult:
    t0 = time.perf_counter()
    irreps = [g for g in all_irreps(max_n13) if g.dim <= max_dim
              and (max_quanta is None or g.quanta <= max_quanta)]
    worst = 0.0
    for g in irreps:
        worst = max(worst, *commutator_residual(g))
    dt = time.perf_counter() - t0
    return CheckResult(2, "commutators and conjugation", worst <= tol and dt < 5.0,
                       f"{len(irreps)} irreps, max residual {worst:.2e}", dt)


def check_null_space_vs_lr(max_product_dim: int = 400, max_quanta: int | None = None,
                           tol: float = 1e-10) -> CheckResult:
    t0 = time.perf_counter()
    pairs = coupling_pairs(max_product_dim, max_quanta)
    bad, checked = [], 0
    for g1, g2 in pairs:
        entries = decompose(g1, g2)  # raises on a dimension-sum failure
        if sum(e.rho_max * e.coupled.dim for e in entries) != g1.dim * g2.dim:
            bad.append((g1, g2, "dimension sum"))
        for c in irreps_with_quanta(g1.quanta + g2.quanta):
            checked += 1
            if hw_nullity(g1, g2, c, tol) != outer_multiplicity(g1, g2, c):
                bad.append((g1, g2, c))
    dt = time.perf_counter() - t0
    return CheckResult(3, "null-space dimension vs LR multiplicity", not bad,
                       f"{len(pairs)} pairs, {checked} candidates, {len(bad)} mismatches", dt)


def table_residuals(g1: U3Irrep, g2: U3Irrep, tol: float = 1e-10) -> tuple[float, float]:
    """(orthogonality, equivariance) residuals over the full decomposition."""
    space = product_space(g1, g2)
    rows = []
    equiv = 0.0
    ops = {(i, j): space.op(i, j) for i in (1, 2, 3) for j in (1, 2, 3)}
    for e in decompose(g1, g2):
        t = cached_table(g1, g2, e.coupled, tol)
        for rho in range(t.rho_max):
            c = t.coeffs[rho]
            rows.append(c)
            for (i, j), op in ops.items():
                lhs = (op @ c.T)
                rhs = c.T @ generator_matrix(e.coupled, i, j)
                equiv = max(equiv, float(np.abs(lhs - rhs).max()))
    full = np.vstack(rows)
    orth = 0.0
    for cols in space.blocks.values():
        sub = full[:, cols]
        sub = sub[np.any(sub != 0.0, axis=1)]
        if sub.shape[0] != cols.size:
            return math.inf, equiv
        orth = max(orth, float(np.abs(sub @ sub.T - np.eye(cols.size)).max()),
                   float(np.abs(sub.T @ sub - np.eye(cols.size)).max()))
    return orth, equiv


def check_cgc_tables(max_product_dim: int = 400, max_quanta: int | None = None,
                     tol: float = 1e-10) -> CheckResult:
    t0 = time.perf_counter()
    pairs = coupling_pairs(max_product_dim, max_quanta)
    worst_o = worst_e = 0.0
    for g1, g2 in pairs:
        o, e = table_residuals(g1, g2, tol)
        worst_o, worst_e = max(worst_o, o), max(worst_e, e)
        canonical_cgc.cached_table.cache_clear()
    dt = time.perf_counter() - t0
    ok = worst_o <= 1e-10 and worst_e <= 1e-10 and dt < 60.0
    return CheckResult(4, "CG orthogonality and equivariance", ok,
                       f"{len(pairs)} pairs, orthogonality {worst_o:.2e}, "
                       f"equivariance {worst_e:.2e}", dt)


def _couples(a: U3Irrep, b: U3Irrep) -> list[U3Irrep]:
    return [e.coupled for e in decompose(a, b)]


def u_matrix(g1, g2, g3, g, tol=1e-10) -> np.ndarray:
    """U as a square matrix over (g12, rho12, rho12_3) x (g23, rho23, rho1_23)."""
    rows = [x for x in _couples(g1, g2) if outer_multiplicity(x, g3, g)]
    cols = [x for x in _couples(g2, g3) if outer_multiplicity(g1, x, g)]
    blocks = []
    for g12 in rows:
        line = []
        for g23 in cols:
            v = u_coefficients(g1, g2, g, g3, g12, g23, tol).values
            line.append(v.reshape(v.shape[0] * v.shape[1], -1))
        blocks.append(line)
    return np.block(blocks)


def z_matrix(g1, g2, g3, g, tol=1e-10) -> np.ndarray:
    rows = [x for x in _couples(g1, g2) if outer_multiplicity(x, g3, g)]
    cols = [x for x in _couples(g1, g3) if outer_multiplicity(x, g2, g)]
    blocks = []
    for g12 in rows:
        line = []
        for g13 in cols:
            v = z_coefficients(g2, g1, g, g3, g12, g13, tol).values
            line.append(v.reshape(v.shape[0] * v.shape[1], -1))
        blocks.append(line)
    return np.block(blocks)


def _unitarity(m: np.ndarray) -> float:
    if m.shape[0] != m.shape[1]:
        return math.inf
    n = m.shape[0]
    return max(float(np.abs(m @ m.T - np.eye(n)).max()), float(np.abs(m.T @ m - np.eye(n)).max()))


def check_recoupling(max_irrep_quanta: int = 4, max_quanta: int | None = None,
                     tol: float = 1e-10) -> CheckResult:
    t0 = time.perf_counter()
    q = _cap(max_irrep_quanta, max_quanta)
    irreps = [g for n in range(q + 1) for g in irreps_with_quanta(n)]
    worst_u = worst_z = worst_9 = 0.0
    count = 0
    trivial = U3Irrep(0, 0, 0)
    for g1, g2, g3 in product(irreps, repeat=3):
        finals = sorted({g for g12 in _couples(g1, g2) for g in _couples(g12, g3)},
                        key=U3Irrep.astuple)
        for g in finals:
            count += 1
            worst_u = max(worst_u, _unitarity(u_matrix(g1, g2, g3, g, tol)))
            worst_z = max(worst_z, _unitarity(z_matrix(g1, g2, g3, g, tol)))
        if g1.quanta + g2.quanta + g3.quanta > 6:
            continue
        for g12 in _couples(g1, g2):
            for g13 in _couples(g1, g3):
                for g in _couples(g12, g3):
                    if not outer_multiplicity(g13, g2, g):
                        continue
                    nine = nine_u3(g1, g2, g12, g3, trivial, g3, g13, g2, g, tol).values
                    # [r12, r13, r12_34, r13_24] -> Z order [r12, r12_3, r13, r13_2]
                    nine = nine[:, 0, :, 0].transpose(0, 2, 1, 3)
                    z = z_coefficients(g2, g1, g, g3, g12, g13, tol).values
                    worst_9 = max(worst_9, float(np.abs(nine - z).max()))
    dt = time.perf_counter() - t0
    ok = max(worst_u, worst_z, worst_9) <= 1e-9
    return CheckResult(5, "U/Z unitarity and 9-U(3) reduction", ok,
                       f"{count} label sets, U {worst_u:.2e}, Z {worst_z:.2e}, "
                       f"9U-Z {worst_9:.2e}", dt)


def check_so3_content(max_sum: int = 12, max_quanta: int | None = None) -> CheckResult:
    t0 = time.perf_counter()
    top = _cap(max_sum, max_quanta)
    bad = []
    for s in range(top + 1):
        for lam in range(s + 1):
            mu = s - lam
            g = SU3Irrep(lam, mu).to_u3()
            counts = allowed_L(lam, mu)  # raises if the two rules disagree
            closed = {L: inner_multiplicity(g, L) for L in range(g.n13 + 1)
                      if inner_multiplicity(g, L)}
            if counts != closed or not so3_dimension_check(g):
                bad.append((lam, mu))
    dt = time.perf_counter() - t0
    return CheckResult(6, "SO(3) content", not bad,
                       f"lam+mu <= {top}, {len(bad)} failures", dt)


def check_physical_transform(max_sum: int = 8, max_quanta: int | None = None,
                             tol: float = 1e-10) -> CheckResult:
    t0 = time.perf_counter()
    top = _cap(max_sum, max_quanta)
    worst = 0.0
    for s in range(top + 1):
        for lam in range(s + 1):
            g = SU3Irrep(lam, s - lam).to_u3()
            lp = l_plus_matrix(g)
            for L in allowed_L(lam, s - lam):
                table = cached_transform(g, L, tol)
                for k in range(1, table.kappa_max + 1):
                    worst = max(worst, float(np.abs(lp @ table.vector(k, L)).max()))
    t = cached_transform(SU3Irrep(2, 0).to_u3(), 0, tol)
    ref = np.array([1 / math.sqrt(3.0), -math.sqrt(2.0 / 3.0)])
    hand = float(np.abs(t.coefficients[0] - ref).max())
    dt = time.perf_counter() - t0
    return CheckResult(7, "physical transform", worst <= 1e-10 and hand <= 1e-12,
                       f"L+ residual {worst:.2e}, (2,0) L=0 error {hand:.2e}", dt)


def full_wigner_matrix(a: SU3Irrep, b: SU3Irrep, tol: float = 1e-10) -> np.ndarray:
    """Full Wigner coefficients as a square matrix, rows (k1 L1 M1, k2 L2 M2)."""
    table = wigner_table(a, b, tol)
    labels = []
    for s in (a, b):
        labels.append([(k, L, M) for L, km in allowed_L(s.lam, s.mu).items()
                       for k in range(1, km + 1) for M in range(L, -L - 1, -1)])
    rows = {(x, y): n for n, (x, y) in enumerate(product(*labels))}
    cols = []
    for g3, rho_max in table.couplings().items():
        su3 = g3.to_su3()
        for rho in range(1, rho_max + 1):
            for L3, km in allowed_L(su3.lam, su3.mu).items():
                for k3 in range(1, km + 1):
                    for M3 in range(L3, -L3 - 1, -1):
                        cols.append((g3, rho, k3, L3, M3))
    w = np.zeros((len(rows), len(cols)))
    for c, (g3, rho, k3, L3, M3) in enumerate(cols):
        for ((k1, L1, M1), (k2, L2, M2)), r in rows.items():
            if M1 + M2 != M3:
                continue
            cg = so3_cgc(L1, M1, L2, M2, L3, M3)
            if cg:
                w[r, c] = cg * table.get(g3, rho, k1, L1, k2, L2, k3, L3)
    return w


def check_wigner_unitarity(tol: float = 1e-10) -> CheckResult:
    t0 = time.perf_counter()
    cases = [((1, 0), (1, 0)), ((1, 1), (1, 1)), ((2, 0), (1, 1))]
    worst = 0.0
    sheets = 0
    for a, b in cases:
        s1, s2 = SU3Irrep(*a), SU3Irrep(*b)
        worst = max(worst, _unitarity(full_wigner_matrix(s1, s2, tol)))
        if a == b == (1, 1):
            sheets = wigner_table(s1, s2, tol).couplings().get(U3Irrep(3, 2, 1), 0)
    dt = time.perf_counter() - t0
    return CheckResult(8, "Wigner orthonormality and completeness", worst <= 1e-8 and sheets == 2,
                       f"max deviation {worst:.2e}, (1,1)x(1,1)->(1,1) sheets {sheets}", dt)


def check_wigner_oracle(tol: float = 1e-10) -> CheckResult:
    t0 = time.perf_counter()
    a = SU3Irrep(1, 0)
    table = wigner_table(a, a, tol)
    ref = reduced_wigner_by_eigenbasis(a.to_u3(), a.to_u3(), so3_cgc)
    keys_ok = set(ref) == set(table.values)
    worst = max(abs(table.values.get(k, 0.0) - v) for k, v in ref.items())
    dt = time.perf_counter() - t0
    return CheckResult(9, "reduced Wigner vs basis-change oracle", keys_ok and worst <= 1e-8,
                       f"{len(ref)} values, max error {worst:.2e}", dt)


def check_performance(tol: float = 1e-10, cache_dir: str | None = None) -> CheckResult:
    a, b = SU3Irrep(4, 2), SU3Irrep(2, 2)
    clear_caches()
    t0 = time.perf_counter()
    table = wigner_table(a, b, tol)
    build = time.perf_counter() - t0
    with tempfile.TemporaryDirectory() as tmp:
        where = cache_dir or tmp
        store_wigner(where, table, tol)
        t1 = time.perf_counter()
        again = load_wigner(where, a, b, tol)
        reload = time.perf_counter() - t1
    same = again is not None and list(again.values) == list(table.values) and np.array_equal(
        np.array(list(again.values.values())).view(np.uint64),
        np.array(list(table.values.values())).view(np.uint64))
    ok = build < 30.0 and reload < 0.1 and same
    return CheckResult(10, "(4,2)x(2,2) Wigner table build and reload", ok,
                       f"{len(table)} values, build {build:.2f} s, reload {reload * 1e3:.1f} ms, "
                       f"bit-identical {same}", build + reload)


DETERMINISM_COMMANDS = [
    ["dim", "3,2,0"],
    ["enumerate", "2,1,0"],
    ["decompose", "2,1,0", "2,1,0"],
    ["cgc", "2,1,0", "1,0,0", "2,1,1"],
    ["ucoef", "1,0,0", "1,0,0", "2,1,0", "1,0,0", "2,0,0", "2,0,0"],
    ["zcoef", "1,0,0", "1,0,0", "2,1,0", "1,0,0", "2,0,0", "1,1,0"],
    ["nine", "1,0,0", "1,0,0", "2,0,0", "1,0,0", "1,0,0", "1,1,0", "2,0,0", "1,1,0", "3,1,0"],
    ["content", "2", "2"],
    ["transform", "2", "2", "2"],
    ["wigner", "1", "0", "1", "0"],
    ["wigner", "1", "1", "1", "1"],
    ["wigner", "2", "0", "1", "1"],
]


def check_determinism(commands=None) -> CheckResult:
    """Run each JSON subcommand twice in-process from cold caches and compare bytes."""
    from .cli import main

    t0 = time.perf_counter()
    commands = commands or DETERMINISM_COMMANDS
    diffs = []
    for cmd in commands:
        outs = []
        for _ in range(2):
            clear_caches()
            buf = io.StringIO()
            with redirect_stdout(buf):
                code = main([*cmd, "--format", "json", "--no-cache"])
            outs.append((code, buf.getvalue()))
        if outs[0] != outs[1] or outs[0][0] != 0:
            diffs.append(cmd[0])
    dt = time.perf_counter() - t0
    return CheckResult(11, "byte-identical JSON", not diffs,
                       f"{len(commands)} subcommands, differing: {diffs or 'none'}", dt)


def run_all(max_quanta: int | None = None, tol: float = 1e-10) -> list[CheckResult]:
    return [
        check_dimensions(max_quanta=max_quanta),
        check_algebra(max_quanta=max_quanta),
        check_null_space_vs_lr(max_quanta=max_quanta, tol=tol),
        check_cgc_tables(max_quanta=max_quanta, tol=tol),
        check_recoupling(max_quanta=max_quanta, tol=tol),
        check_so3_content(max_quanta=max_quanta),
        check_physical_transform(max_quanta=max_quanta, tol=tol),
        check_wigner_unitarity(tol),
        check_wigner_oracle(tol),
        check_performance(tol),
        check_determinism(),
    ]
