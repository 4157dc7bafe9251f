"""Pure-Python (numpy) versions of the hot kernels.

Same signatures and semantics as the compiled ``_ckernels`` module; used when
the extension is not built or ``SPHEREVOL_PURE_PYTHON`` is set.
"""
from __future__ import annotations

from itertools import combinations
from math import factorial

import numpy as np

NAME = "python"
_DEGENERATE = 1e-10


def det(a) -> float:
    a = np.array(a, dtype=float)
    n = a.shape[0]
    out = 1.0
    for k in range(n):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        if a[piv, k] == 0.0:
            return 0.0
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            out = -out
        out *= a[k, k]
        a[k + 1:, k:] -= np.outer(a[k + 1:, k] / a[k, k], a[k, k:])
    return float(out)


def enumerate_facets(points, tol: float = 1e-9):
    """Supporting hyperplanes spanned by affinely independent d-subsets.

    Returns ``(members, normals, offsets)``; ``members[f]`` is the sorted tuple
    of point indices on hyperplane ``f`` and every other point satisfies
    ``normals[f] @ p < offsets[f] - tol``.
    """
    pts = np.ascontiguousarray(points, dtype=float)
    n, d = pts.shape
    if n < d:
        return [], np.zeros((0, d)), np.zeros(0)
    combos = np.array(list(combinations(range(n), d)), dtype=np.intp)
    h = np.concatenate([pts[combos], np.ones((len(combos), d, 1))], axis=2)
    coef = np.empty((len(combos), d + 1))
    for k in range(d + 1):
        minor = np.delete(h, k, axis=2)
        coef[:, k] = (-1) ** k * np.linalg.det(minor) if d > 0 else 1.0
    normals = coef[:, :d]
    norms = np.linalg.norm(normals, axis=1)
    ok = norms > _DEGENERATE
    normals = normals[ok] / norms[ok, None]
    offsets = -coef[ok, d] / norms[ok]
    combos = combos[ok]
    side = normals @ pts.T - offsets[:, None]
    pos = np.any(side > tol, axis=1)
    neg = np.any(side < -tol, axis=1)
    support = ~(pos & neg)
    flip = pos & ~neg
    normals[flip] *= -1
    offsets[flip] *= -1
    members, out_n, out_c, seen = [], [], [], set()
    on = np.abs(side) <= tol
    for f in np.flatnonzero(support):
        key = tuple(int(i) for i in np.flatnonzero(on[f]))
        if key in seen:
            continue
        seen.add(key)
        members.append(key)
        out_n.append(normals[f])
        out_c.append(offsets[f])
    if not members:
        return [], np.zeros((0, d)), np.zeros(0)
    return members, np.array(out_n), np.array(out_c)


def simplex_dets(points, simplices) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    simp = np.asarray(simplices, dtype=np.intp)
    if simp.size == 0:
        return np.zeros(0)
    return np.linalg.det(pts[simp])


def _cofactors(mats: np.ndarray, j: int) -> np.ndarray:
    """Gradient of det(M) with respect to row ``j`` for a stack of matrices."""
    s, d, _ = mats.shape
    out = np.empty((s, d))
    for k in range(d):
        m = mats.copy()
        m[:, j, :] = 0.0
        m[:, j, k] = 1.0
        out[:, k] = np.linalg.det(m)
    return out


def vertex_forces(points, simplices) -> np.ndarray:
    """Per-vertex sum of A(F,p) m(F,p) over the oriented boundary simplices."""
    pts = np.asarray(points, dtype=float)
    simp = np.asarray(simplices, dtype=np.intp)
    n, d = pts.shape
    forces = np.zeros((n, d))
    if simp.size == 0:
        return forces
    mats = pts[simp]
    for j in range(d):
        np.add.at(forces, simp[:, j], _cofactors(mats, j))
    return forces / factorial(d - 1)


def sweep(points, simplices, alpha: float) -> float:
    """One Gauss-Seidel pass p_i <- normalize((1-a) p_i + a m_i/|m_i|), in place.

    Returns the largest vertex displacement.
    """
    pts = points
    simp = np.asarray(simplices, dtype=np.intp)
    n, d = pts.shape
    scale = factorial(d - 1)
    moved = 0.0
    for i in range(n):
        rows, cols = np.nonzero(simp == i)
        if len(rows) == 0:
            continue
        mats = pts[simp[rows]]
        m = np.zeros(d)
        for j in range(d):
            sel = cols == j
            if np.any(sel):
                m += _cofactors(mats[sel], j).sum(axis=0)
        m /= scale
        norm = np.linalg.norm(m)
        if norm == 0.0:
            continue
        new = (1.0 - alpha) * pts[i] + alpha * m / norm
        new /= np.linalg.norm(new)
        moved = max(moved, float(np.linalg.norm(new - pts[i])))
        pts[i] = new
    return moved
