"""Hot kernels for the oracle's coarse direction scan.

The brute-force oracle evaluates the geodesic distance on up to G^(d-1)
grid directions of the face's coefficient sphere (G = grid points per
dimension, d = face vertex count), which dominates total runtime.  Two
interchangeable implementations live here:

* a numba-compiled loop that generates directions on the fly (no large
  intermediate arrays), and
* a chunked vectorized numpy fallback.

The active one is picked at import time from the HSPROJ_BACKEND
environment variable: "numba", "numpy", or "auto" (default: numba when
importable).  Both are importable directly for parity tests and for the
benchmark script.

Scoring works on reduced data only: with Q = the face block of the edge
matrix, w_i = <p, face_i> and f_i = first coordinate of face_i, a
direction mu gives a candidate v = sum mu_i face_i with

    <v,v> = mu' Q mu,   <p,v> = mu . w,   v_1 = mu . f,

so the cost (cosh of hyperbolic distance, -cos of spherical distance) is
computed in O(d^2) per direction without touching ambient coordinates.
Directions whose candidate is not normalizable (space-like/near-null in
the Lorentzian case) score +inf.
"""

from __future__ import annotations

import math
import os

import numpy as np

__all__ = [
    "using_numba",
    "backend_name",
    "angle_tables",
    "grid_size",
    "score_block",
    "scan_grid",
    "scan_grid_numpy",
]

_CHUNK = 1 << 18

_requested = os.environ.get("HSPROJ_BACKEND", "auto").lower()
if _requested not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"HSPROJ_BACKEND must be 'auto', 'numba' or 'numpy', got {_requested!r}"
    )

using_numba = False
if _requested in ("auto", "numba"):
    try:
        from numba import njit

        using_numba = True
    except ImportError:
        if _requested == "numba":
            raise

backend_name = "numba" if using_numba else "numpy"


def angle_tables(d: int, points_per_dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Cos/sin lookup tables for the spherical-coordinate grid on S^(d-1).

    d-1 angle dimensions: all but the last sweep [0, pi] inclusively, the
    last sweeps the full circle [0, 2pi).  Returns (cos_tab, sin_tab) of
    shape (d-1, points_per_dim).
    """
    if d < 2:
        raise ValueError("angle grid needs at least 2 coefficient dimensions")
    rows = [np.linspace(0.0, np.pi, points_per_dim) for _ in range(d - 2)]
    rows.append(np.linspace(0.0, 2.0 * np.pi, points_per_dim, endpoint=False))
    angles = np.vstack(rows)
    return np.cos(angles), np.sin(angles)


def grid_size(d: int, points_per_dim: int) -> int:
    return points_per_dim ** (d - 1)


def score_block(
    mu: np.ndarray,
    Q: np.ndarray,
    w: np.ndarray,
    f: np.ndarray,
    hyperbolic: bool,
    tol: float = 1e-12,
) -> np.ndarray:
    """Vectorized cost of a block of direction rows (used for probe points)."""
    q = np.einsum("nd,de,ne->n", mu, Q, mu)
    vp = mu @ w
    cost = np.full(mu.shape[0], np.inf)
    if hyperbolic:
        ok = q < -tol
        if np.any(ok):
            sheet = np.where(mu[ok] @ f < 0.0, -1.0, 1.0)
            cost[ok] = -sheet * vp[ok] / np.sqrt(-q[ok])
    else:
        ok = q > tol
        if np.any(ok):
            cost[ok] = -vp[ok] / np.sqrt(q[ok])
    return cost


def _mu_from_flat(flat: np.ndarray, cos_tab: np.ndarray, sin_tab: np.ndarray) -> np.ndarray:
    """Decode flat grid indices (mixed radix) into direction vectors."""
    n_ang, g = cos_tab.shape
    digits = np.empty((n_ang, flat.size), dtype=np.int64)
    rem = flat.copy()
    for a in range(n_ang - 1, -1, -1):
        digits[a] = rem % g
        rem //= g
    mu = np.empty((flat.size, n_ang + 1))
    prefix = np.ones(flat.size)
    for a in range(n_ang):
        mu[:, a] = prefix * cos_tab[a, digits[a]]
        prefix = prefix * sin_tab[a, digits[a]]
    mu[:, n_ang] = prefix
    return mu


def scan_grid_numpy(
    cos_tab: np.ndarray,
    sin_tab: np.ndarray,
    Q: np.ndarray,
    w: np.ndarray,
    f: np.ndarray,
    hyperbolic: bool,
    tol: float = 1e-12,
) -> tuple[float, np.ndarray]:
    """Chunked full-grid scan; returns (best cost, best direction)."""
    n_ang, g = cos_tab.shape
    total = g**n_ang
    best_cost = np.inf
    best_mu = np.zeros(n_ang + 1)
    for start in range(0, total, _CHUNK):
        flat = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        mu = _mu_from_flat(flat, cos_tab, sin_tab)
        cost = score_block(mu, Q, w, f, hyperbolic, tol)
        i = int(np.argmin(cost))
        if cost[i] < best_cost:
            best_cost = float(cost[i])
            best_mu = mu[i]
    return best_cost, best_mu


if using_numba:

    @njit(cache=True)
    def _scan_grid_jit(cos_tab, sin_tab, Q, w, f, hyperbolic, tol):  # pragma: no cover
        n_ang, g = cos_tab.shape
        d = n_ang + 1
        total = g**n_ang
        digits = np.zeros(n_ang, dtype=np.int64)
        mu = np.empty(d)
        best_cost = np.inf
        best_mu = np.zeros(d)
        for _ in range(total):
            prefix = 1.0
            for a in range(n_ang):
                mu[a] = prefix * cos_tab[a, digits[a]]
                prefix *= sin_tab[a, digits[a]]
            mu[n_ang] = prefix
            q = 0.0
            vp = 0.0
            v1 = 0.0
            for i in range(d):
                vp += mu[i] * w[i]
                v1 += mu[i] * f[i]
                row = 0.0
                for k in range(d):
                    row += Q[i, k] * mu[k]
                q += mu[i] * row
            if hyperbolic:
                if q < -tol:
                    c = -vp / math.sqrt(-q)
                    if v1 < 0.0:
                        c = -c
                    if c < best_cost:
                        best_cost = c
                        best_mu[:] = mu
            else:
                if q > tol:
                    c = -vp / math.sqrt(q)
                    if c < best_cost:
                        best_cost = c
                        best_mu[:] = mu
            for a in range(n_ang - 1, -1, -1):
                digits[a] += 1
                if digits[a] < g:
                    break
                digits[a] = 0
        return best_cost, best_mu

    def scan_grid_numba(cos_tab, sin_tab, Q, w, f, hyperbolic, tol=1e-12):
        cost, mu = _scan_grid_jit(
            np.ascontiguousarray(cos_tab),
            np.ascontiguousarray(sin_tab),
            np.ascontiguousarray(Q),
            np.ascontiguousarray(w),
            np.ascontiguousarray(f),
            hyperbolic,
            tol,
        )
        return float(cost), mu

    scan_grid = scan_grid_numba
else:
    scan_grid = scan_grid_numpy
