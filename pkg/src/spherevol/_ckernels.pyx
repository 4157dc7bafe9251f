# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: brute-force facet enumeration, simplex determinants,
stationarity forces and the Gauss-Seidel ascent sweep."""
import numpy as np

from libc.math cimport fabs, sqrt
from libc.stdlib cimport free, malloc

NAME = "cython"
cdef double _DEGENERATE = 1e-10


cdef double _det_inplace(double* a, int n) noexcept nogil:
    cdef int i, j, k, piv
    cdef double out = 1.0, mx, t, f
    for k in range(n):
        piv = k
        mx = fabs(a[k * n + k])
        for i in range(k + 1, n):
            t = fabs(a[i * n + k])
            if t > mx:
                mx = t
                piv = i
        if mx == 0.0:
            return 0.0
        if piv != k:
            for j in range(n):
                t = a[k * n + j]
                a[k * n + j] = a[piv * n + j]
                a[piv * n + j] = t
            out = -out
        out *= a[k * n + k]
        for i in range(k + 1, n):
            f = a[i * n + k] / a[k * n + k]
            for j in range(k, n):
                a[i * n + j] -= f * a[k * n + j]
    return out


def det(a):
    cdef double[:, ::1] m = np.array(a, dtype=np.float64, order="C")
    cdef int n = m.shape[0]
    return _det_inplace(&m[0, 0], n)


cdef bint _next_combo(int* c, int k, int n) noexcept nogil:
    cdef int i = k - 1
    while i >= 0 and c[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    c[i] += 1
    for i in range(i + 1, k):
        c[i] = c[i - 1] + 1
    return True


def enumerate_facets(points, double tol=1e-9):
    cdef const double[:, ::1] pts = np.ascontiguousarray(points, dtype=np.float64)
    cdef int n = pts.shape[0], d = pts.shape[1]
    cdef int i, j, k, col, r
    cdef double norm, off, s
    cdef bint pos, neg
    members, out_n, out_c = [], [], []
    if n < d or d < 1:
        return [], np.zeros((0, d)), np.zeros(0)
    seen = set()
    cdef int* combo = <int*> malloc(d * sizeof(int))
    cdef double* minor = <double*> malloc(d * d * sizeof(double))
    cdef double* h = <double*> malloc((d + 1) * sizeof(double))
    cdef double[::1] normal = np.empty(d)
    try:
        for i in range(d):
            combo[i] = i
        while True:
            for k in range(d + 1):
                for r in range(d):
                    col = 0
                    for j in range(d + 1):
                        if j == k:
                            continue
                        minor[r * d + col] = pts[combo[r], j] if j < d else 1.0
                        col += 1
                h[k] = _det_inplace(minor, d) * (1.0 if k % 2 == 0 else -1.0)
            norm = 0.0
            for j in range(d):
                norm += h[j] * h[j]
            norm = sqrt(norm)
            if norm > _DEGENERATE:
                for j in range(d):
                    normal[j] = h[j] / norm
                off = -h[d] / norm
                pos = False
                neg = False
                for i in range(n):
                    s = -off
                    for j in range(d):
                        s += normal[j] * pts[i, j]
                    if s > tol:
                        pos = True
                    elif s < -tol:
                        neg = True
                    if pos and neg:
                        break
                if not (pos and neg):
                    if pos:
                        for j in range(d):
                            normal[j] = -normal[j]
                        off = -off
                    key = []
                    for i in range(n):
                        s = -off
                        for j in range(d):
                            s += normal[j] * pts[i, j]
                        if fabs(s) <= tol:
                            key.append(i)
                    key = tuple(key)
                    if key not in seen:
                        seen.add(key)
                        members.append(key)
                        out_n.append(np.array(normal, copy=True))
                        out_c.append(off)
            if not _next_combo(combo, d, n):
                break
    finally:
        free(combo)
        free(minor)
        free(h)
    if not members:
        return [], np.zeros((0, d)), np.zeros(0)
    return members, np.array(out_n), np.array(out_c)


def simplex_dets(points, simplices):
    cdef const double[:, ::1] pts = np.ascontiguousarray(points, dtype=np.float64)
    simp_arr = np.ascontiguousarray(simplices, dtype=np.intp)
    if simp_arr.size == 0:
        return np.zeros(0)
    cdef Py_ssize_t[:, ::1] simp = simp_arr
    cdef int ns = simp.shape[0], d = pts.shape[1]
    cdef int s, r, j
    out = np.empty(ns)
    cdef double[::1] o = out
    cdef double* m = <double*> malloc(d * d * sizeof(double))
    try:
        for s in range(ns):
            for r in range(d):
                for j in range(d):
                    m[r * d + j] = pts[simp[s, r], j]
            o[s] = _det_inplace(m, d)
    finally:
        free(m)
    return out


cdef void _cofactor(const double[:, ::1] pts, Py_ssize_t[:, ::1] simp, int s, int pos,
                    int d, double* m, double* out) noexcept nogil:
    """out[k] += d det / d p_pos[k] for simplex s."""
    cdef int k, r, j
    for k in range(d):
        for r in range(d):
            for j in range(d):
                if r == pos:
                    m[r * d + j] = 1.0 if j == k else 0.0
                else:
                    m[r * d + j] = pts[simp[s, r], j]
        out[k] += _det_inplace(m, d)


cdef double _factorial(int k) noexcept nogil:
    cdef double f = 1.0
    cdef int i
    for i in range(2, k + 1):
        f *= i
    return f


def vertex_forces(points, simplices):
    cdef const double[:, ::1] pts = np.ascontiguousarray(points, dtype=np.float64)
    cdef int n = pts.shape[0], d = pts.shape[1]
    forces = np.zeros((n, d))
    simp_arr = np.ascontiguousarray(simplices, dtype=np.intp)
    if simp_arr.size == 0:
        return forces
    cdef Py_ssize_t[:, ::1] simp = simp_arr
    cdef double[:, ::1] f = forces
    cdef int ns = simp.shape[0], s, j
    cdef double scale = _factorial(d - 1)
    cdef double* m = <double*> malloc(d * d * sizeof(double))
    try:
        for s in range(ns):
            for j in range(d):
                _cofactor(pts, simp, s, j, d, m, &f[simp[s, j], 0])
    finally:
        free(m)
    for s in range(n):
        for j in range(d):
            f[s, j] /= scale
    return forces


def sweep(double[:, ::1] pts, simplices, double alpha):
    cdef int n = pts.shape[0], d = pts.shape[1]
    simp_arr = np.ascontiguousarray(simplices, dtype=np.intp)
    if simp_arr.size == 0:
        return 0.0
    cdef Py_ssize_t[:, ::1] simp = simp_arr
    cdef int ns = simp.shape[0], i, s, j, k
    cdef double norm, moved = 0.0, disp
    cdef double* m = <double*> malloc(d * d * sizeof(double))
    cdef double* force = <double*> malloc(d * sizeof(double))
    cdef double* new = <double*> malloc(d * sizeof(double))
    cdef bint touched
    try:
        for i in range(n):
            touched = False
            for k in range(d):
                force[k] = 0.0
            for s in range(ns):
                for j in range(d):
                    if simp[s, j] == i:
                        _cofactor(pts, simp, s, j, d, m, force)
                        touched = True
            if not touched:
                continue
            norm = 0.0
            for k in range(d):
                norm += force[k] * force[k]
            norm = sqrt(norm)
            if norm == 0.0:
                continue
            for k in range(d):
                new[k] = (1.0 - alpha) * pts[i, k] + alpha * force[k] / norm
            norm = 0.0
            for k in range(d):
                norm += new[k] * new[k]
            norm = sqrt(norm)
            disp = 0.0
            for k in range(d):
                new[k] /= norm
                disp += (new[k] - pts[i, k]) * (new[k] - pts[i, k])
                pts[i, k] = new[k]
            disp = sqrt(disp)
            if disp > moved:
                moved = disp
    finally:
        free(m)
        free(force)
        free(new)
    return moved
