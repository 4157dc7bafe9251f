"""Inscribed polytopes: facets, boundary triangulation, volume, combinatorics."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from math import factorial

import numpy as np

from . import kernels
from .errors import DimensionError, UnsupportedError

ON_SPHERE_TOL = 1e-9
COPLANAR_TOL = 1e-9
MIN_SEPARATION = 1e-9


@dataclass(frozen=True, eq=False)
class Facet:
    vertex_indices: tuple[int, ...]
    outward_normal: np.ndarray
    offset: float

    @property
    def is_simplex(self) -> bool:
        return len(self.vertex_indices) == len(self.outward_normal)


class InscribedPolytope:
    """Convex hull of ``n`` points on the unit sphere of R^d.

    Vertices are stored read-only. With ``normalize=True`` each input point is
    projected radially onto the sphere before validation.
    """

    def __init__(self, vertices, dim: int | None = None, *, normalize: bool = False,
                 on_sphere_tol: float = ON_SPHERE_TOL):
        v = np.array(vertices, dtype=float)
        if v.ndim != 2:
            raise DimensionError(f"vertices must be a 2-d array, got shape {v.shape}")
        if dim is not None and v.shape[1] != dim:
            raise DimensionError(f"vertices have {v.shape[1]} coordinates, expected dim={dim}")
        if not np.all(np.isfinite(v)):
            raise ValueError("vertex coordinates must be finite")
        n, d = v.shape
        if d < 1:
            raise DimensionError("dimension must be positive")
        if n < d + 1:
            raise DimensionError(f"need at least d+1={d + 1} vertices, got {n}")
        norms = np.linalg.norm(v, axis=1)
        if normalize:
            if np.any(norms == 0):
                raise ValueError("cannot normalize the zero vector")
            v = v / norms[:, None]
            norms = np.linalg.norm(v, axis=1)
        bad = np.flatnonzero(np.abs(norms - 1.0) > on_sphere_tol)
        if bad.size:
            raise ValueError(f"vertex {int(bad[0])} has norm {norms[bad[0]]!r}, not on the unit sphere")
        diff = np.linalg.norm(v[:, None, :] - v[None, :, :], axis=2)
        diff[np.diag_indices(n)] = np.inf
        if diff.min() <= MIN_SEPARATION:
            i, j = np.unravel_index(np.argmin(diff), diff.shape)
            raise ValueError(f"vertices {i} and {j} coincide")
        v.setflags(write=False)
        self._vertices = v
        missing = set(range(n)) - {i for f in self.facets for i in f.vertex_indices}
        if missing:
            raise ValueError(f"vertices {sorted(missing)} are not extreme")

    @property
    def vertices(self) -> np.ndarray:
        return self._vertices

    @property
    def dim(self) -> int:
        return self._vertices.shape[1]

    @property
    def n(self) -> int:
        return self._vertices.shape[0]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"InscribedPolytope(dim={self.dim}, n={self.n})"

    @cached_property
    def facets(self) -> tuple[Facet, ...]:
        return tuple(hull_facets(self._vertices))

    @cached_property
    def complex(self) -> FacetComplex:
        return triangulate_boundary(self)

    def volume(self) -> float:
        return volume(self)

    def transformed(self, rotation) -> InscribedPolytope:
        """Image under an orthogonal matrix (applied to column vectors)."""
        return InscribedPolytope(self._vertices @ np.asarray(rotation, dtype=float).T, normalize=True)

    def reordered(self, order) -> InscribedPolytope:
        return InscribedPolytope(self._vertices[list(order)])

    def to_dict(self) -> dict:
        return {"dim": self.dim, "vertices": self._vertices.tolist()}

    @classmethod
    def from_dict(cls, doc) -> InscribedPolytope:
        if not isinstance(doc, dict):
            raise ValueError("polytope document must be a JSON object")
        for key in ("dim", "vertices"):
            if key not in doc:
                raise ValueError(f"polytope document is missing field '{key}'")
        dim = doc["dim"]
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise ValueError("field 'dim' must be a positive integer")
        verts = doc["vertices"]
        if not isinstance(verts, list) or not verts:
            raise ValueError("field 'vertices' must be a non-empty list")
        for i, row in enumerate(verts):
            if not isinstance(row, list) or len(row) != dim:
                raise ValueError(f"field 'vertices[{i}]' must be a list of {dim} numbers")
            for j, x in enumerate(row):
                if isinstance(x, bool) or not isinstance(x, (int, float)):
                    raise ValueError(f"field 'vertices[{i}][{j}]' is not a number")
        return cls(verts, dim)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> InscribedPolytope:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True, eq=False)
class FacetComplex:
    """Oriented triangulation of the boundary.

    ``simplices[s]`` is a d-tuple of vertex indices lying in facet
    ``facet_of[s]``, ordered so the determinant has the sign of that facet's
    offset (positive whenever the origin is interior).
    """
    simplices: np.ndarray
    facet_of: np.ndarray
    parent: InscribedPolytope

    def __len__(self) -> int:
        return len(self.simplices)

    def determinants(self) -> np.ndarray:
        return kernels.simplex_dets(self.parent.vertices, self.simplices)

    def containing(self, i: int) -> np.ndarray:
        return np.flatnonzero(np.any(self.simplices == i, axis=1))


def hull_facets(points, tol: float = COPLANAR_TOL) -> list[Facet]:
    """Facets of conv(points) by brute force over d-subsets."""
    pts = np.asarray(points, dtype=float)
    n, d = pts.shape
    members, normals, offsets = kernels.enumerate_facets(pts, tol)
    if not members or any(len(m) == n for m in members):
        raise DimensionError("points do not span a full-dimensional polytope")
    return [Facet(m, nu, float(c)) for m, nu, c in zip(members, normals, offsets)]


def enumerate_facets(p: InscribedPolytope) -> list[Facet]:
    return list(p.facets)


def _complement_basis(normal: np.ndarray) -> np.ndarray:
    """Orthonormal basis (columns) of the hyperplane orthogonal to ``normal``."""
    _, _, vt = np.linalg.svd(normal[None, :])
    return vt[1:].T


def _triangulate_convex(coords, labels, keys, reverse, tol):
    """Pulling triangulation of a full-dimensional point set in convex position.

    The pivot is the lexicographically least (greatest if ``reverse``) point
    by ``keys``; it is coned over a recursive triangulation of every facet
    not containing it.
    """
    m, k = coords.shape
    if m == k + 1:
        return [tuple(labels)]
    order = sorted(range(m), key=lambda i: tuple(keys[i]))
    pivot = order[-1] if reverse else order[0]
    members, normals, _ = kernels.enumerate_facets(coords, tol)
    out = []
    for mem, nu in zip(members, normals):
        if pivot in mem:
            continue
        idx = list(mem)
        sub = coords[idx] - coords[idx].mean(axis=0)
        proj = sub @ _complement_basis(nu)
        for s in _triangulate_convex(proj, [labels[i] for i in idx], keys[idx], reverse, tol):
            out.append((labels[pivot],) + s)
    return out


def triangulate_facets(points, facets, *, reverse: bool = False,
                       tol: float = COPLANAR_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Oriented boundary simplices for given facets.

    Returns ``(simplices, facet_of)``. Each simplex is ordered so that
    ``det([normal; q_2-q_1; ...; q_d-q_1]) > 0``, which makes its
    determinant carry the sign of the facet offset.
    """
    pts = np.asarray(points, dtype=float)
    d = pts.shape[1]
    simplices, owner = [], []
    for f_idx, f in enumerate(facets):
        if len(f.vertex_indices) == d:
            simplices.append(f.vertex_indices)
            owner.append(f_idx)
            continue
        idx = list(f.vertex_indices)
        proj = (pts[idx] - pts[idx].mean(axis=0)) @ _complement_basis(f.outward_normal)
        for s in _triangulate_convex(proj, idx, pts[idx], reverse, tol):
            simplices.append(s)
            owner.append(f_idx)
    simp = np.array(simplices, dtype=np.intp).reshape(-1, d)
    owner = np.array(owner, dtype=np.intp)
    if d > 1 and len(simp):
        q = pts[simp]
        normals = np.array([f.outward_normal for f in facets])[owner]
        orient = np.linalg.det(np.concatenate([normals[:, None, :], q[:, 1:] - q[:, :1]], axis=1))
        flip = orient < 0
        simp[flip, 0], simp[flip, 1] = simp[flip, 1], simp[flip, 0].copy()
    return simp, owner


def triangulate_boundary(p: InscribedPolytope, *, reverse: bool = False) -> FacetComplex:
    """Boundary complex of ``p``.

    Simplicial facets are used directly; other facets get a pulling
    triangulation from their lexicographically least vertex (greatest with
    ``reverse=True``, which gives a second, generally different triangulation).
    """
    simp, owner = triangulate_facets(p.vertices, p.facets, reverse=reverse)
    return FacetComplex(simp, owner, p)


def signed_volume(points, simplices) -> float:
    d = np.asarray(points).shape[1]
    return float(np.sum(kernels.simplex_dets(points, simplices)) / factorial(d))


def volume(p: InscribedPolytope, complex_: FacetComplex | None = None) -> float:
    """Volume as the sum of facial simplex volumes |p_i1,...,p_id| / d!."""
    offsets = np.array([f.offset for f in p.facets])
    if np.any(offsets <= COPLANAR_TOL):
        raise UnsupportedError("origin is not in the interior of the polytope")
    if p.dim == 1:
        return float(np.ptp(p.vertices))
    c = p.complex if complex_ is None else complex_
    return signed_volume(p.vertices, c.simplices)


def is_simplicial(p: InscribedPolytope) -> bool:
    return all(f.is_simplex for f in p.facets)


def edge_graph(p: InscribedPolytope) -> dict[int, frozenset[int]]:
    """Adjacency of the 1-skeleton.

    ``i`` and ``j`` are adjacent when the intersection of all facets containing
    both has vertex set exactly ``{i, j}``.
    """
    sets = [frozenset(f.vertex_indices) for f in p.facets]
    adj: dict[int, set[int]] = {i: set() for i in range(p.n)}
    for i in range(p.n):
        for j in range(i + 1, p.n):
            common = [s for s in sets if i in s and j in s]
            if common and frozenset.intersection(*common) == {i, j}:
                adj[i].add(j)
                adj[j].add(i)
    return {i: frozenset(a) for i, a in adj.items()}


def edges(p: InscribedPolytope) -> list[tuple[int, int]]:
    g = edge_graph(p)
    return sorted((i, j) for i, nb in g.items() for j in nb if i < j)


@dataclass(frozen=True)
class ShiftProfile:
    shift: int
    distances: tuple[float, ...]

    @property
    def spread(self) -> float:
        return max(self.distances) - min(self.distances)


def distance_profile(p: InscribedPolytope, ordering=None) -> list[ShiftProfile]:
    """For each shift k = 1..n//2, the distances |p_{i+k} - p_i| (indices mod n)."""
    n = p.n
    order = list(range(n)) if ordering is None else [int(i) for i in ordering]
    if sorted(order) != list(range(n)):
        raise ValueError("ordering must be a permutation of the vertex indices")
    v = p.vertices[order]
    out = []
    for k in range(1, n // 2 + 1):
        dist = np.linalg.norm(np.roll(v, -k, axis=0) - v, axis=1)
        out.append(ShiftProfile(k, tuple(float(x) for x in dist)))
    return out
