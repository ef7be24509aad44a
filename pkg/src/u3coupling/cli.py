"""Command-line front end.

U(3) irreps are written ``n13,n23,n33`` and Gelfand patterns
``n13,n23,n33;n12,n22;n11``; SU(3) irreps are two bare integers.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

import numpy as np

from . import __version__
from .cache import load_table, load_wigner, store_table, store_wigner
from .canonical_cgc import full_table
from .errors import NumericalDiagnostic
from .linalg import DEFAULT_TOL
from .patterns import (SU3Irrep, U3Irrep, dimension_su3, dimension_u3,
                       enumerate_patterns, p_weight, z_weight)
from .physical import allowed_L, cached_transform
from .recoupling import nine_u3, u_coefficients, z_coefficients
from .tensor import decompose
from .wigner import wigner_table

# Terms smaller than this are round-off on exact zeros and are not printed.
PRINT_CUTOFF = 1e-13


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _irrep(text: str) -> U3Irrep:
    try:
        return U3Irrep.parse(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad irrep {text!r}: {exc}") from None


def _dump(o, pad: str = "") -> str:
    """JSON text with sorted keys and every float at 17 significant digits."""
    inner = pad + " "
    if isinstance(o, bool) or o is None or isinstance(o, (int, str)):
        return json.dumps(o)
    if isinstance(o, float):
        if not np.isfinite(o):
            raise ValueError(f"cannot serialize {o}")
        return format(o + 0.0, ".17g")
    if isinstance(o, dict):
        if not o:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_dump(o[k], inner)}" for k in sorted(o)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(o, (list, tuple)):
        if not o:
            return "[]"
        return "[\n" + ",\n".join(inner + _dump(v, inner) for v in o) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dumps(doc) -> str:
    return _dump(doc)


def _doc(kind: str, labels: dict, entries: list) -> dict:
    return {"kind": kind, "labels": labels, "entries": entries}


# --- subcommands -----------------------------------------------------------------

def cmd_dim(args) -> tuple[dict, list[str]]:
    nums = args.labels
    if len(nums) == 1 and "," in nums[0]:
        g = _irrep(nums[0])
        return _doc("dim", {"irrep": g.key()}, [{"dim": dimension_u3(g)}]), [str(dimension_u3(g))]
    try:
        vals = [int(x) for x in nums]
    except ValueError:
        raise UsageError(f"expected integers, got {' '.join(nums)}") from None
    if len(vals) == 3:
        g = U3Irrep(*vals)
        d, label = dimension_u3(g), {"irrep": g.key()}
    elif len(vals) == 2:
        s = SU3Irrep(*vals)
        d, label = dimension_su3(s), {"su3": f"{s.lam},{s.mu}"}
    else:
        raise UsageError("dim takes n13 n23 n33, n13,n23,n33 or lam mu")
    return _doc("dim", label, [{"dim": d}]), [str(d)]


def cmd_enumerate(args):
    g = args.irrep
    entries, lines = [], []
    for i, p in enumerate(enumerate_patterns(g)):
        pw, zw = p_weight(p), z_weight(p)
        entries.append({"index": i, "pattern": str(p), "p_weight": list(pw), "z_weight": list(zw)})
        lines.append(f"{i:4d}  {p}  p=({pw[0]},{pw[1]},{pw[2]})  z=({zw[0]},{zw[1]})")
    return _doc("enumerate", {"irrep": g.key()}, entries), lines


def cmd_decompose(args):
    entries = decompose(args.g1, args.g2)
    return (_doc("decompose", {"g1": args.g1.key(), "g2": args.g2.key()},
                 [{"target": e.coupled.key(), "rho": e.rho_max} for e in entries]),
            [f"{e.coupled} x{e.rho_max}" for e in entries])


def _cg_table(args, g1, g2, g12):
    if not args.no_cache and args.cache_dir:
        t = load_table(args.cache_dir, g1, g2, g12, args.tol)
        if t is not None:
            return t
    t = full_table(g1, g2, g12, args.tol)
    if not args.no_cache and args.cache_dir:
        store_table(args.cache_dir, t, args.tol)
    return t


def cmd_cgc(args):
    table = _cg_table(args, args.g1, args.g2, args.coupled)
    entries, lines = [], []
    for target, rho, terms in table.entries(PRINT_CUTOFF):
        entries.append({"target": str(target), "rho": rho,
                        "terms": [{"left": str(s.left), "right": str(s.right), "value": v}
                                  for s, v in terms.items()]})
        lines.append(f"{target}  rho={rho}")
        lines.extend(f"    {s.left}  {s.right}  {v: .15f}" for s, v in terms.items())
    labels = {"g1": args.g1.key(), "g2": args.g2.key(), "coupled": args.coupled.key()}
    return _doc("cgc", labels, entries), lines


def _tensor_output(kind: str, labels: dict, values: np.ndarray, names: list[str]):
    entries, lines = [], []
    for idx in np.ndindex(values.shape):
        rhos = {n: i + 1 for n, i in zip(names, idx)}
        v = float(values[idx])
        entries.append({"rho": rhos, "value": v})
        lines.append("  ".join(f"{n}={r}" for n, r in rhos.items()) + f"  {v: .15f}")
    return _doc(kind, labels, entries), lines


def cmd_ucoef(args):
    t = u_coefficients(args.g1, args.g2, args.g, args.g3, args.g12, args.g23, args.tol)
    names = ["rho12", "rho12_3", "rho23", "rho1_23"]
    labels = dict(zip(["g1", "g2", "g", "g3", "g12", "g23"], (x.key() for x in t.labels)))
    return _tensor_output("ucoef", labels, t.values, names)


def cmd_zcoef(args):
    t = z_coefficients(args.g2, args.g1, args.g, args.g3, args.g12, args.g13, args.tol)
    names = ["rho12", "rho12_3", "rho13", "rho13_2"]
    labels = dict(zip(["g2", "g1", "g", "g3", "g12", "g13"], (x.key() for x in t.labels)))
    return _tensor_output("zcoef", labels, t.values, names)


def cmd_nine(args):
    t = nine_u3(args.g1, args.g2, args.g12, args.g3, args.g4, args.g34,
                args.g13, args.g24, args.g, args.tol)
    keys = ["g1", "g2", "g12", "g3", "g4", "g34", "g13", "g24", "g"]
    names = ["rho12", "rho34", "rho13", "rho24", "rho12_34", "rho13_24"]
    return _tensor_output("nine", dict(zip(keys, (x.key() for x in t.labels))), t.values, names)


def cmd_content(args):
    counts = allowed_L(args.lam, args.mu)
    return (_doc("content", {"su3": f"{args.lam},{args.mu}"},
                 [{"L": L, "kappa_max": k} for L, k in counts.items()]),
            [" ".join(f"L={L}:{k}" for L, k in counts.items())])


def cmd_transform(args):
    g = SU3Irrep(args.lam, args.mu).to_u3()
    if args.L not in allowed_L(args.lam, args.mu):
        raise UsageError(f"L={args.L} does not occur in ({args.lam},{args.mu})")
    t = cached_transform(g, args.L, args.tol)
    entries, lines = [], []
    for k in range(1, t.kappa_max + 1):
        terms = []
        lines.append(f"kappa={k} L={args.L}")
        for s, (q, tt, p) in enumerate(t.states):
            v = float(t.coefficients[k - 1, s])
            terms.append({"q": q, "t": tt, "pattern": str(p), "value": v})
            lines.append(f"    q={q} t={tt}  {p}  {v: .15f}")
        entries.append({"target": f"kappa={k}", "rho": 1, "terms": terms})
    labels = {"su3": f"{args.lam},{args.mu}", "L": args.L}
    return _doc("transform", labels, entries), lines


def cmd_wigner(args):
    a, b = SU3Irrep(args.lam1, args.mu1), SU3Irrep(args.lam2, args.mu2)
    table = None
    use_cache = not args.no_cache and args.cache_dir
    if use_cache:
        table = load_wigner(args.cache_dir, a, b, args.tol)
    if table is None:
        table = wigner_table(a, b, args.tol)
        if use_cache:
            store_wigner(args.cache_dir, table, args.tol)
    entries, lines = [], []
    for r in table:
        su3 = r.coupled.to_su3()
        row = {"coupled": r.coupled.key(), "rho": r.rho, "kappa1": r.kappa1, "L1": r.L1,
               "kappa2": r.kappa2, "L2": r.L2, "kappa": r.kappa, "L": r.L, "value": r.value}
        entries.append(row)
        lines.append(f"{su3} {r.coupled} rho={r.rho}  k1={r.kappa1} L1={r.L1}  "
                     f"k2={r.kappa2} L2={r.L2}  k={r.kappa} L={r.L}  {r.value: .15f}")
    return _doc("wigner", {"su3_1": f"{a.lam},{a.mu}", "su3_2": f"{b.lam},{b.mu}"}, entries), lines


def cmd_selftest(args):
    from .selfcheck import run_all
    results = run_all(args.max_quanta, args.tol)
    doc = _doc("selftest", {"max_quanta": args.max_quanta},
               [{"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail}
                for r in results])
    return doc, [r.line() for r in results], all(r.passed for r in results)


# --- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--cache-dir", default=None)
    common.add_argument("--no-cache", action="store_true")

    parser = _Parser(prog="u3coupling", description="U(3) and SU(3) coupling coefficients")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, fn: Callable, helptext: str, *irreps: str):
        p = sub.add_parser(name, parents=[common], help=helptext)
        for n in irreps:
            p.add_argument(n, type=_irrep)
        p.set_defaults(fn=fn)
        return p

    p = add("dim", cmd_dim, "dimension of a U(3) or SU(3) irrep")
    p.add_argument("labels", nargs="+")
    add("enumerate", cmd_enumerate, "Gelfand patterns in canonical order", "irrep")
    add("decompose", cmd_decompose, "outer multiplicities of g1 x g2", "g1", "g2")
    add("cgc", cmd_cgc, "full CG table for g1 x g2 -> coupled", "g1", "g2", "coupled")
    add("ucoef", cmd_ucoef, "U(g1 g2 g g3; g12, g23)", "g1", "g2", "g", "g3", "g12", "g23")
    add("zcoef", cmd_zcoef, "Z(g2 g1 g g3; g12, g13)", "g2", "g1", "g", "g3", "g12", "g13")
    add("nine", cmd_nine, "9-U(3) coefficient",
        "g1", "g2", "g12", "g3", "g4", "g34", "g13", "g24", "g")
    for name, fn, helptext, extra in (
            ("content", cmd_content, "SO(3) content of (lam, mu)", ()),
            ("transform", cmd_transform, "physical basis states of angular momentum L", ("L",))):
        p = add(name, fn, helptext)
        for n in ("lam", "mu", *extra):
            p.add_argument(n, type=int)
    p = add("wigner", cmd_wigner, "reduced Wigner table of (lam1,mu1) x (lam2,mu2)")
    for n in ("lam1", "mu1", "lam2", "mu2"):
        p.add_argument(n, type=int)
    p = add("selftest", cmd_selftest, "run the built-in checks")
    p.add_argument("--max-quanta", type=int, default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result = args.fn(args)
    except UsageError as exc:
        print(f"u3coupling: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError) as exc:
        print(f"u3coupling: {exc}", file=sys.stderr)
        return 1
    except NumericalDiagnostic as exc:
        print(f"u3coupling: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    ok = True
    if len(result) == 3:
        doc, lines, ok = result
    else:
        doc, lines = result
    if args.format == "json":
        sys.stdout.write(dumps(doc) + "\n")
    else:
        sys.stdout.write("".join(line + "\n" for line in lines))
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())
