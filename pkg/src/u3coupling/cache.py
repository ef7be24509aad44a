"""On-disk store for CG and reduced Wigner tables.

Each file is one binary record::

    magic (8 bytes) | version u32 | label length u32 | label (utf-8)
    | array count u32 | per array: dtype char, ndim u32, shape u64 * ndim, data

All integers and floats are little-endian.  The label carries the irreps and
the tolerance, so a record written for another tolerance is a miss.  Any
record that fails to parse is treated as a miss as well.  Writes go to a
temporary file in the same directory followed by a rename.
"""

from __future__ import annotations

import os
import struct
import tempfile
from pathlib import Path

import numpy as np

from .canonical_cgc import CGTable
from .patterns import SU3Irrep, U3Irrep
from .wigner import WignerTable

MAGIC = b"U3CPL\x00\x00\x01"
VERSION = 1
_DTYPES = {"d": np.dtype("<f8"), "q": np.dtype("<i8")}


def _pack(label: str, arrays: list[np.ndarray]) -> bytes:
    raw = label.encode()
    parts = [MAGIC, struct.pack("<II", VERSION, len(raw)), raw, struct.pack("<I", len(arrays))]
    for a in arrays:
        code = "d" if a.dtype.kind == "f" else "q"
        a = np.ascontiguousarray(a, dtype=_DTYPES[code])
        parts.append(code.encode() + struct.pack("<I", a.ndim))
        parts.append(struct.pack(f"<{a.ndim}Q", *a.shape))
        parts.append(a.tobytes())
    return b"".join(parts)


def _unpack(data: bytes, label: str) -> list[np.ndarray] | None:
    try:
        if data[:8] != MAGIC:
            return None
        version, n = struct.unpack_from("<II", data, 8)
        pos = 16
        if version != VERSION or data[pos:pos + n].decode() != label:
            return None
        pos += n
        (count,) = struct.unpack_from("<I", data, pos)
        pos += 4
        out = []
        for _ in range(count):
            dtype = _DTYPES[chr(data[pos])]
            (ndim,) = struct.unpack_from("<I", data, pos + 1)
            pos += 5
            shape = struct.unpack_from(f"<{ndim}Q", data, pos)
            pos += 8 * ndim
            size = int(np.prod(shape, dtype=np.int64)) * dtype.itemsize
            if pos + size > len(data):
                return None
            out.append(np.frombuffer(data, dtype, int(np.prod(shape, dtype=np.int64)), pos).reshape(shape))
            pos += size
        return out if pos == len(data) else None
    except (struct.error, KeyError, IndexError, UnicodeDecodeError, ValueError):
        return None


def write_record(path: Path, label: str, arrays: list[np.ndarray]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(_pack(label, arrays))
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_record(path: Path, label: str) -> list[np.ndarray] | None:
    try:
        data = path.read_bytes()
    except OSError:
        return None
    return _unpack(data, label)


def cgc_path(cache_dir, g1: U3Irrep, g2: U3Irrep, g12: U3Irrep) -> Path:
    return Path(cache_dir) / "cgc" / f"{g1.key()}__{g2.key()}__{g12.key()}.bin"


def _cgc_label(g1, g2, g12, tol: float) -> str:
    return f"cgc {g1.key()} {g2.key()} {g12.key()} tol={tol!r}"


def store_table(cache_dir, table: CGTable, tol: float) -> Path:
    path = cgc_path(cache_dir, table.g1, table.g2, table.coupled)
    write_record(path, _cgc_label(table.g1, table.g2, table.coupled, tol), [table.coeffs])
    return path


def load_table(cache_dir, g1: U3Irrep, g2: U3Irrep, g12: U3Irrep, tol: float) -> CGTable | None:
    arrays = read_record(cgc_path(cache_dir, g1, g2, g12), _cgc_label(g1, g2, g12, tol))
    if not arrays or len(arrays) != 1:
        return None
    coeffs = arrays[0]
    if coeffs.ndim != 3 or coeffs.shape[1:] != (g12.dim, g1.dim * g2.dim):
        return None
    return CGTable(g1, g2, g12, coeffs)


def wigner_path(cache_dir, a: SU3Irrep, b: SU3Irrep) -> Path:
    return Path(cache_dir) / "wigner" / f"{a.lam},{a.mu}__{b.lam},{b.mu}.bin"


def _wigner_label(a, b, tol):
    return f"wigner ({a.lam},{a.mu}) ({b.lam},{b.mu}) tol={tol!r}"


def store_wigner(cache_dir, table: WignerTable, tol: float) -> Path:
    keys = np.array([[*g3.astuple(), rho, k1, L1, k2, L2, k3, L3]
                     for (g3, rho, k1, L1, k2, L2, k3, L3) in table.values],
                    dtype=np.int64).reshape(-1, 10)
    vals = np.array(list(table.values.values()), dtype=np.float64)
    path = wigner_path(cache_dir, table.su3_1, table.su3_2)
    write_record(path, _wigner_label(table.su3_1, table.su3_2, tol), [keys, vals])
    return path


def load_wigner(cache_dir, a: SU3Irrep, b: SU3Irrep, tol: float) -> WignerTable | None:
    arrays = read_record(wigner_path(cache_dir, a, b), _wigner_label(a, b, tol))
    if not arrays or len(arrays) != 2:
        return None
    keys, vals = arrays
    if keys.ndim != 2 or keys.shape[1:] != (10,) or vals.shape != (keys.shape[0],):
        return None
    values = {}
    for row, v in zip(keys.tolist(), vals.tolist()):
        values[(U3Irrep(*row[:3]), *row[3:])] = v
    return WignerTable(a, b, values)
