"""Exact constructions of the inscribed polytope families."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedError
from .polytope import InscribedPolytope


@dataclass(frozen=True)
class SimplexFactorSpec:
    """Dimensions k_1, ..., k_r of regular simplices in orthogonal coordinate blocks."""
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(k) for k in self.dims)
        if not dims or any(k < 1 for k in dims):
            raise ValueError(f"factor dimensions must be positive, got {self.dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def total(self) -> int:
        return sum(self.dims)

    @property
    def n_vertices(self) -> int:
        return sum(k + 1 for k in self.dims)


def balanced_split(d: int, parts: int) -> tuple[int, ...]:
    """``d`` split into ``parts`` integers each floor(d/parts) or ceil(d/parts), ascending."""
    q, r = divmod(d, parts)
    return tuple([q] * (parts - r) + [q + 1] * r)


def regular_simplex(k: int) -> np.ndarray:
    """k+1 unit vectors in R^k with pairwise inner products -1/k, centroid at o."""
    if k < 1:
        raise ValueError("simplex dimension must be >= 1")
    centred = np.eye(k + 1) - 1.0 / (k + 1)
    # orthonormal basis of the hyperplane sum(x) = 0, from the Helmert matrix
    basis = np.zeros((k + 1, k))
    for j in range(k):
        basis[: j + 1, j] = 1.0
        basis[j + 1, j] = -(j + 1)
        basis[:, j] /= np.linalg.norm(basis[:, j])
    pts = centred @ basis
    return pts / np.linalg.norm(pts, axis=1)[:, None]


def regular_simplex_polytope(k: int) -> InscribedPolytope:
    return InscribedPolytope(regular_simplex(k), normalize=True)


def orthogonal_simplex_product(spec) -> InscribedPolytope:
    """Convex hull of regular simplices inscribed in consecutive coordinate blocks."""
    if not isinstance(spec, SimplexFactorSpec):
        spec = SimplexFactorSpec(tuple(spec))
    d = spec.total
    rows, start = [], 0
    for k in spec.dims:
        block = np.zeros((k + 1, d))
        block[:, start:start + k] = regular_simplex(k)
        rows.append(block)
        start += k
    return InscribedPolytope(np.vstack(rows), normalize=True)


def optimal_dplus2(d: int) -> InscribedPolytope:
    if d < 2:
        raise ValueError("d must be >= 2")
    return orthogonal_simplex_product(balanced_split(d, 2))


def optimal_dplus3(d: int) -> InscribedPolytope:
    if d < 3:
        raise ValueError("d must be >= 3")
    return orthogonal_simplex_product(balanced_split(d, 3))


def cyclic_trig_points(d: int, n: int) -> np.ndarray:
    """sqrt(2/d) (cos t, sin t, cos 2t, sin 2t, ..., cos (d/2)t, sin (d/2)t) at t = 2 pi i / n."""
    theta = 2.0 * np.pi * np.arange(n) / n
    cols = []
    for h in range(1, d // 2 + 1):
        cols += [np.cos(h * theta), np.sin(h * theta)]
    return np.sqrt(2.0 / d) * np.column_stack(cols)


def cyclic_trig(d: int, n: int) -> InscribedPolytope:
    """The inscribed cyclic polytope C_d(n) with dihedral symmetry (d even)."""
    if d % 2 or d < 2:
        raise UnsupportedError(f"cyclic_trig needs an even dimension, got d={d}")
    if n < d + 3:
        raise ValueError(f"cyclic_trig needs n >= d+3, got n={n}")
    return InscribedPolytope(cyclic_trig_points(d, n), normalize=True)


def bipyramid(base: InscribedPolytope) -> InscribedPolytope:
    """Base in the first d-1 coordinates, apexes at +-e_d."""
    b = base.vertices
    d = b.shape[1] + 1
    apex = np.zeros((2, d))
    apex[0, -1], apex[1, -1] = 1.0, -1.0
    return InscribedPolytope(np.vstack([np.hstack([b, np.zeros((len(b), 1))]), apex]), normalize=True)


def cross_polytope(d: int) -> InscribedPolytope:
    """Vertices +-e_i, ordered e_1, -e_1, e_2, -e_2, ..."""
    if d < 1:
        raise ValueError("d must be >= 1")
    eye = np.eye(d)
    return InscribedPolytope(np.vstack([v for i in range(d) for v in (eye[i], -eye[i])]))


def regular_polygon(n: int) -> InscribedPolytope:
    theta = 2.0 * np.pi * np.arange(n) / n
    return InscribedPolytope(np.column_stack([np.cos(theta), np.sin(theta)]), normalize=True)


def p4() -> InscribedPolytope:
    """A regular triangle and two diameters in mutually orthogonal subspaces of R^4."""
    return optimal_dplus3(4)


def p6() -> InscribedPolytope:
    """Three regular triangles in mutually orthogonal planes of R^6."""
    return orthogonal_simplex_product((2, 2, 2))


def remark54_3polytope() -> InscribedPolytope:
    """The six-vertex 3-polytope with D_6 symmetry from the catalogue of symmetric examples."""
    t = 1.0 / 3.0
    return InscribedPolytope([
        (1.0, 0.0, 0.0),
        (-2 * t, -2 * t, t),
        (0.0, 1.0, 0.0),
        (t, -2 * t, -2 * t),
        (0.0, 0.0, 1.0),
        (-2 * t, t, -2 * t),
    ])


def random_inscribed(d: int, n: int, rng=None, max_tries: int = 100) -> InscribedPolytope:
    """Normalized Gaussian points; resampled until they span a d-polytope."""
    rng = np.random.default_rng(rng)
    for _ in range(max_tries):
        x = rng.standard_normal((n, d))
        try:
            return InscribedPolytope(x, normalize=True)
        except ValueError:
            continue
    raise RuntimeError("could not sample a full-dimensional configuration")
