"""Hot counting kernels: positivity + PPT verdicts for batches of sampled points.

Two interchangeable backends implement the same per-sample algorithm:

* ``numba`` -- @njit compiled per-sample loop (default when numba imports),
* ``numpy`` -- the identical arithmetic vectorized over the batch.

Selection: set SEPMC_BACKEND=numpy or SEPMC_BACKEND=numba; unset picks numba
when available.  ``benchmarks/bench_kernels.py`` times both and checks they
produce equal tallies.

Positivity is decided by attempting a Cholesky factorization of
rho + tol*I, which succeeds iff the smallest eigenvalue exceeds -tol; this
matches `states.is_positive` (an eigenvalue solve) everywhere except exactly
on the measure-zero tolerance boundary.  For the 4x4/8x8 matrices here it is
roughly 20x faster than an eigensolve, and the factorization exits at the
first non-positive pivot.

Each generator is a Pauli tensor with exactly one nonzero entry per row, so
a state is assembled from its coefficient vector via per-row (column, value)
tables instead of dense m x d x d sums.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

from .states import POSITIVITY_TOL, get_case, pt_sign_vector

try:
    import numba
except ImportError:
    numba = None


def _pick_backend() -> str:
    req = os.environ.get("SEPMC_BACKEND", "").strip().lower()
    if req == "numpy":
        return "numpy"
    if req == "numba":
        if numba is None:
            raise ImportError("SEPMC_BACKEND=numba but numba is not installed")
        return "numba"
    if req:
        raise ValueError(f"SEPMC_BACKEND must be 'numba' or 'numpy', got {req!r}")
    return "numba" if numba is not None else "numpy"


BACKEND = _pick_backend()


@lru_cache(maxsize=None)
def case_tables(tag: str):
    """(cols, vals, pt_signs) sparse-assembly tables for one state family.

    cols[a, i] / vals[a, i] give the single nonzero column and value of
    generator a in row i; pt_signs are the partial-transpose coefficient
    flips (subsystem B).
    """
    case = get_case(tag)
    basis = case.basis
    m, d, _ = basis.shape
    cols = np.zeros((m, d), dtype=np.int64)
    vals = np.zeros((m, d), dtype=np.complex128)
    for a in range(m):
        for i in range(d):
            nz = np.flatnonzero(basis[a, i])
            if nz.size != 1:
                raise AssertionError("generator rows must have exactly one nonzero")
            cols[a, i] = nz[0]
            vals[a, i] = basis[a, i, nz[0]]
    signs = np.asarray(pt_sign_vector(tag), dtype=np.float64)
    for arr in (cols, vals, signs):
        arr.setflags(write=False)
    return cols, vals, signs


# ---------------------------------------------------------------------------
# numpy backend: the scalar algorithm below, vectorized lane-by-lane so that
# alive lanes perform the same operations in the same order.

def _assemble_numpy(pts: np.ndarray, cols: np.ndarray, vals: np.ndarray, d: int) -> np.ndarray:
    n, m = pts.shape
    rho = np.zeros((n, d, d), dtype=np.complex128)
    idx = np.arange(d)
    rho[:, idx, idx] = 1.0 / d
    for a in range(m):
        ca = pts[:, a]
        for i in range(d):
            rho[:, i, cols[a, i]] += ca * vals[a, i]
    return rho


def _chol_pd_numpy(rho: np.ndarray, tol: float) -> np.ndarray:
    """Boolean mask: which matrices in the batch have rho + tol*I positive definite."""
    n, d, _ = rho.shape
    L = np.zeros_like(rho)
    alive = np.ones(n, dtype=bool)
    for j in range(d):
        s = rho[:, j, j].real + tol
        for k in range(j):
            s = s - (L[:, j, k].real ** 2 + L[:, j, k].imag ** 2)
        alive &= s > 0.0
        ljj = np.sqrt(np.where(alive, s, 1.0))
        L[:, j, j] = ljj
        for i in range(j + 1, d):
            c = rho[:, i, j].copy()
            for k in range(j):
                c = c - L[:, i, k] * np.conj(L[:, j, k])
            L[:, i, j] = c / ljj
    return alive


# Tile size keeping the batch of d x d matrices inside cache.
_NUMPY_TILE = 4096


def _count_numpy(pts, cols, vals, signs, d, tol):
    npos = 0
    nsep = 0
    for lo in range(0, len(pts), _NUMPY_TILE):
        tile = pts[lo : lo + _NUMPY_TILE]
        pos = _chol_pd_numpy(_assemble_numpy(tile, cols, vals, d), tol)
        k = int(np.count_nonzero(pos))
        if k == 0:
            continue
        npos += k
        flipped = tile[pos] * signs
        sep = _chol_pd_numpy(_assemble_numpy(flipped, cols, vals, d), tol)
        nsep += int(np.count_nonzero(sep))
    return npos, nsep


# ---------------------------------------------------------------------------
# numba backend

def _count_scalar(pts, cols, vals, signs, d, tol):  # pragma: no cover - numba source
    n, m = pts.shape
    npos = 0
    nsep = 0
    rho = np.zeros((d, d), dtype=np.complex128)
    L = np.zeros((d, d), dtype=np.complex128)
    for t in range(n):
        for i in range(d):
            for j in range(d):
                rho[i, j] = 0.0
            rho[i, i] = 1.0 / d
        for a in range(m):
            ca = pts[t, a]
            for i in range(d):
                rho[i, cols[a, i]] += ca * vals[a, i]
        if not _chol_pd_scalar(rho, L, tol):
            continue
        npos += 1
        for i in range(d):
            for j in range(d):
                rho[i, j] = 0.0
            rho[i, i] = 1.0 / d
        for a in range(m):
            ca = pts[t, a] * signs[a]
            for i in range(d):
                rho[i, cols[a, i]] += ca * vals[a, i]
        if _chol_pd_scalar(rho, L, tol):
            nsep += 1
    return npos, nsep


def _chol_pd_scalar_py(A, L, tol):  # pragma: no cover - numba source
    d = A.shape[0]
    for j in range(d):
        s = A[j, j].real + tol
        for k in range(j):
            s = s - (L[j, k].real ** 2 + L[j, k].imag ** 2)
        if s <= 0.0:
            return False
        ljj = np.sqrt(s)
        L[j, j] = ljj
        for i in range(j + 1, d):
            c = A[i, j]
            for k in range(j):
                c = c - L[i, k] * np.conj(L[j, k])
            L[i, j] = c / ljj
    return True


if numba is not None:
    _chol_pd_scalar = numba.njit(cache=True)(_chol_pd_scalar_py)
    _count_numba = numba.njit(cache=True)(_count_scalar)
else:
    _count_numba = None


def count_tallies(pts: np.ndarray, tag: str, backend: str = None):
    """Count (n_positive, n_separable-by-PPT) over a (n, m) batch of points."""
    case = get_case(tag)
    cols, vals, signs = case_tables(case.tag)
    pts = np.ascontiguousarray(pts, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != case.num_coeffs:
        raise ValueError(
            f"expected points of shape (n, {case.num_coeffs}), got {pts.shape}"
        )
    backend = backend or BACKEND
    if backend == "numba":
        if _count_numba is None:
            raise ImportError("numba backend requested but numba is not installed")
        return _count_numba(pts, cols, vals, signs, case.dim, POSITIVITY_TOL)
    if backend == "numpy":
        return _count_numpy(pts, cols, vals, signs, case.dim, POSITIVITY_TOL)
    raise ValueError(f"unknown backend {backend!r}")
