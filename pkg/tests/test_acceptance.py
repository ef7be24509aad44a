"""One test per acceptance criterion, each reporting a PASS/FAIL line."""

import subprocess
import sys
import time

from u3coupling import selfcheck as sc
from u3coupling.selfcheck import CheckResult


def _check(report, result: CheckResult):
    report(result.line())
    assert result.passed, result.detail


def test_01_dimensions(report):
    _check(report, sc.check_dimensions(max_n13=10))


def test_02_algebra(report):
    _check(report, sc.check_algebra(max_dim=50, max_n13=10, tol=1e-12))


def test_03_null_space_vs_lr(report):
    _check(report, sc.check_null_space_vs_lr(max_product_dim=400))


def test_04_cgc_unitarity_equivariance(report):
    _check(report, sc.check_cgc_tables(max_product_dim=400))


def test_05_recoupling_unitarity(report):
    _check(report, sc.check_recoupling(max_irrep_quanta=4))


def test_06_so3_content(report):
    _check(report, sc.check_so3_content(max_sum=12))


def test_07_physical_transform(report):
    _check(report, sc.check_physical_transform())


def test_08_wigner_orthonormality(report):
    _check(report, sc.check_wigner_unitarity())


def test_09_wigner_oracle(report):
    _check(report, sc.check_wigner_oracle())


def test_10_performance(report, tmp_path):
    _check(report, sc.check_performance(cache_dir=str(tmp_path)))


def _cli(args):
    proc = subprocess.run([sys.executable, "-m", "u3coupling", *args, "--format", "json",
                           "--no-cache"], capture_output=True, check=False)
    return proc.returncode, proc.stdout


def test_11_determinism(report):
    t0 = time.perf_counter()
    differing = []
    for cmd in sc.DETERMINISM_COMMANDS:
        first, second = _cli(cmd), _cli(cmd)
        if first != second or first[0] != 0 or not first[1]:
            differing.append(" ".join(cmd))
    detail = (f"{len(sc.DETERMINISM_COMMANDS)} subcommands in separate processes, "
              f"differing: {differing or 'none'}")
    _check(report, CheckResult(11, "byte-identical JSON", not differing, detail,
                               time.perf_counter() - t0))
