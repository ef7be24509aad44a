"""Dense kernels: null spaces, orthonormalization, phase fixing, consistent solves."""

from __future__ import annotations

import numpy as np

from .errors import ResidualTooLarge, SingularSystem

DEFAULT_TOL = 1e-10
PHASE_TOL = 1e-10
# Minimum residual for a canonical direction to seed a null-space basis vector.
SEED_TOL = 1e-6


def gram_schmidt(vs, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormalize ``vs`` in order; vectors whose residual norm is below tol are dropped."""
    basis: list[np.ndarray] = []
    for v in vs:
        r = np.array(v, dtype=float)
        for _ in range(2):
            for b in basis:
                r -= (b @ r) * b
        n = np.linalg.norm(r)
        if n >= tol:
            basis.append(r / n)
    return basis


def fix_phase(vs, tol: float = PHASE_TOL) -> list[np.ndarray]:
    """Flip each vector so that its first entry of magnitude above tol is positive."""
    out = []
    for v in vs:
        v = np.asarray(v, dtype=float)
        big = np.flatnonzero(np.abs(v) > tol)
        out.append((-v if big.size and v[big[0]] < 0 else v) + 0.0)
    return out


def nullity(a: np.ndarray, tol: float = DEFAULT_TOL) -> int:
    a = np.atleast_2d(np.asarray(a, dtype=float))
    n = a.shape[1]
    if a.shape[0] == 0 or n == 0:
        return n
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0.0:
        return n
    return n - int(np.count_nonzero(s > tol * s[0]))


def null_space(a: np.ndarray, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal, phase-fixed basis of the numerical kernel of ``a``.

    Singular values at or below ``tol * max(sigma)`` count as zero.  The SVD
    kernel basis is arbitrary up to rotation, so it is replaced by the
    Gram-Schmidt orthonormalization of the kernel projections of the unit
    vectors e_0, e_1, ... taken in index order.  The result depends only on
    the kernel itself and on the ordering of coordinates.
    """
    a = np.atleast_2d(np.asarray(a, dtype=float))
    n = a.shape[1]
    if n == 0:
        return []
    if a.shape[0] == 0:
        v = np.eye(n)
    else:
        _, s, vt = np.linalg.svd(a, full_matrices=True)
        rank = int(np.count_nonzero(s > tol * s[0])) if s.size and s[0] > 0 else 0
        v = vt[rank:].T
    if v.shape[1] == 0:
        return []
    # Rows of v are the kernel projections of e_k written in the basis v.
    coords = gram_schmidt(v, tol=SEED_TOL)
    if len(coords) != v.shape[1]:
        coords = gram_schmidt(np.vstack([v, np.eye(v.shape[1])]), tol=SEED_TOL)
    return fix_phase([v @ c for c in coords])


def solve_consistent(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL,
                     require_full_rank: bool = False, b_scale: float = 0.0) -> np.ndarray:
    """Least-squares solution of a system that must be consistent.

    Raises ResidualTooLarge when ``|Ax - b| > tol * (|A||x| + max(|b|, b_scale))``
    and, if requested, SingularSystem when ``A`` lacks full column rank.
    ``b_scale`` is the natural size of ``b``; without it a right-hand side
    that is zero up to round-off can never pass the relative test.
    """
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.asarray(b, dtype=float)
    x, _, rank, sv = np.linalg.lstsq(a, b, rcond=None)
    if require_full_rank and a.shape[1] and (
            rank < a.shape[1] or sv[-1] <= DEFAULT_TOL * sv[0]):
        raise SingularSystem(f"rank {rank} < {a.shape[1]} unknowns")
    resid = np.linalg.norm(a @ x - b)
    bound = tol * (np.linalg.norm(a) * np.linalg.norm(x) + max(np.linalg.norm(b), b_scale))
    if resid > bound:
        raise ResidualTooLarge(f"residual {resid:.3e} exceeds bound {bound:.3e}")
    return x
