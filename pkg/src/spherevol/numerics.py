"""Small dense linear algebra and polynomial root finding.

Matrices here are at most ~15x15, so everything favours stability and
determinism over speed.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NotGramMatrixError, UnsupportedError

RANK_TOL = 1e-9


def determinant(m) -> float:
    """Determinant by Gaussian elimination with partial pivoting."""
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionError(f"determinant needs a non-empty square matrix, got shape {a.shape}")
    n = a.shape[0]
    det = 1.0
    for k in range(n):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        if a[piv, k] == 0.0:
            return 0.0
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            det = -det
        det *= a[k, k]
        if k + 1 < n:
            factors = a[k + 1:, k] / a[k, k]
            a[k + 1:, k:] -= np.outer(factors, a[k, k:])
    return float(det)


def kernel_basis(m, tol: float | None = None) -> np.ndarray:
    """Orthonormal basis of the null space of ``m``, one vector per column.

    A full-rank input gives an array with zero columns.
    """
    a = np.atleast_2d(np.asarray(m, dtype=float))
    rows, cols = a.shape
    if rows == 0 or not np.any(a):
        return np.eye(cols)
    _, s, vt = np.linalg.svd(a)
    if tol is None:
        tol = max(rows, cols) * np.finfo(float).eps * s[0]
    rank = int(np.sum(s > tol))
    return vt[rank:].T.copy()


def matrix_rank(m, tol: float | None = None) -> int:
    a = np.atleast_2d(np.asarray(m, dtype=float))
    return a.shape[1] - kernel_basis(a, tol).shape[1]


def psd_factor(g, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Factor a Gram matrix as ``X.T @ X``; returns ``X`` with points as columns.

    The number of rows is the numerical rank: eigenvalues below
    ``rank_tol * max_eigenvalue`` are dropped. A negative eigenvalue below
    ``-rank_tol * max_eigenvalue`` means ``g`` is not a Gram matrix.
    """
    g = np.asarray(g, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise DimensionError(f"Gram matrix must be square, got shape {g.shape}")
    if not np.allclose(g, g.T, atol=1e-10, rtol=0.0):
        raise NotGramMatrixError("matrix is not symmetric")
    w, v = np.linalg.eigh((g + g.T) / 2)
    scale = max(float(np.max(np.abs(w))), 1e-300)
    if w[0] < -rank_tol * scale:
        raise NotGramMatrixError(f"negative eigenvalue {w[0]:.3e}")
    keep = w > rank_tol * scale
    # largest eigenvalues first, sign of each axis fixed for reproducibility
    w, v = w[keep][::-1], v[:, keep][:, ::-1]
    for j in range(v.shape[1]):
        k = int(np.argmax(np.abs(v[:, j])))
        if v[k, j] < 0:
            v[:, j] = -v[:, j]
    return np.sqrt(w)[:, None] * v.T


@dataclass(frozen=True)
class PolynomialRealRoots:
    coefficients: tuple[float, ...]
    roots: tuple[float, ...]
    residuals: tuple[float, ...]


def _polyval(coeffs: np.ndarray, x: float) -> float:
    return float(np.polynomial.polynomial.polyval(x, coeffs))


def real_roots(coeffs, imag_tol: float = 1e-6) -> PolynomialRealRoots:
    """All real roots of a polynomial of degree <= 4, coefficients ascending.

    Roots come from the companion matrix and are polished with Newton steps.
    """
    c = np.trim_zeros(np.asarray(coeffs, dtype=float), "b")
    deg = len(c) - 1
    if deg < 1:
        raise UnsupportedError("polynomial must have degree >= 1")
    if deg > 4:
        raise UnsupportedError(f"degree {deg} > 4 is not supported")
    d1 = np.polynomial.polynomial.polyder(c)
    found: list[float] = []
    for z in np.polynomial.polynomial.polyroots(c):
        if abs(z.imag) > imag_tol * max(1.0, abs(z.real)):
            continue
        x = float(z.real)
        for _ in range(50):
            fx, dfx = _polyval(c, x), _polyval(d1, x)
            if dfx == 0.0 or fx == 0.0:
                break
            step = fx / dfx
            x -= step
            if abs(step) <= 1e-16 * max(1.0, abs(x)):
                break
        if all(abs(x - y) > 1e-9 for y in found):
            found.append(x)
    found.sort()
    return PolynomialRealRoots(
        coefficients=tuple(float(v) for v in c),
        roots=tuple(found),
        residuals=tuple(_polyval(c, x) for x in found),
    )
