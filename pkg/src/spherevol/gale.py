"""Gale transforms and diagrams of polytopes with few vertices."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from .errors import DimensionError, UnsupportedError
from .numerics import kernel_basis
from .polytope import InscribedPolytope

ANGLE_TOL = 1e-6
COINCIDE_TOL = 1e-7
RELINT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class GaleDiagram:
    """``n`` labelled points in R^codim, codim = n - d - 1.

    ``normalized`` diagrams have every non-zero point on the unit sphere;
    ``contracted`` ones are in standard/contracted form.
    """
    points: np.ndarray
    labels: tuple[int, ...]
    normalized: bool = False
    contracted: bool = False
    note: str = field(default="", compare=False)

    @property
    def codim(self) -> int:
        return self.points.shape[1]

    @property
    def n(self) -> int:
        return self.points.shape[0]

    def multiplicities(self, tol: float = COINCIDE_TOL) -> list[tuple[np.ndarray, list[int]]]:
        """Groups of coincident points as ``(location, labels)``."""
        groups: list[tuple[np.ndarray, list[int]]] = []
        for x, lab in zip(self.points, self.labels):
            for loc, labs in groups:
                if np.linalg.norm(loc - x) <= tol:
                    labs.append(lab)
                    break
            else:
                groups.append((x.copy(), [lab]))
        return groups

    def multiplicity_counts(self) -> list[int]:
        return sorted(len(labs) for _, labs in self.multiplicities())

    def to_dict(self) -> dict:
        return {"codim": self.codim, "points": self.points.tolist(), "labels": list(self.labels)}

    @classmethod
    def from_dict(cls, doc) -> GaleDiagram:
        pts = np.array(doc["points"], dtype=float).reshape(len(doc["points"]), int(doc["codim"]))
        labels = tuple(int(x) for x in doc.get("labels", range(len(pts))))
        if len(labels) != len(pts):
            raise ValueError("labels and points differ in length")
        return cls(pts, labels)


def vertex_matrix(p: InscribedPolytope) -> np.ndarray:
    """The (d+1) x n matrix of homogenized vertex coordinates (columns)."""
    return np.vstack([p.vertices.T, np.ones(p.n)])


def gale_transform(p: InscribedPolytope) -> GaleDiagram:
    """Rows of an orthonormal kernel basis of the homogenized vertex matrix."""
    m = vertex_matrix(p)
    mbar = kernel_basis(m)
    if mbar.shape[1] != p.n - p.dim - 1:
        raise DimensionError("vertex matrix is rank deficient")
    return GaleDiagram(mbar, tuple(range(p.n)))


def from_points(points, labels=None) -> GaleDiagram:
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    labels = tuple(range(len(pts))) if labels is None else tuple(labels)
    return GaleDiagram(pts, labels)


def _clean(points: np.ndarray) -> np.ndarray:
    """Snap near-zero points to o and scale the rest to unit length."""
    norms = np.linalg.norm(points, axis=1)
    out = np.zeros_like(points)
    nz = norms > COINCIDE_TOL
    out[nz] = points[nz] / norms[nz, None]
    return out


def origin_in_relint(points) -> bool:
    """Whether o lies in the relative interior of conv(points).

    Solved as: maximize t subject to sum l_j x_j = 0, sum l_j = 1, l_j >= t;
    o is relatively interior iff the optimum exceeds RELINT_TOL.
    """
    x = np.asarray(points, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    k = x.shape[0]
    if k == 0:
        return False
    if x.shape[1] == 0:
        return True
    x = _clean(x)
    if not np.any(x):
        return True
    c = np.zeros(k + 1)
    c[-1] = -1.0
    a_eq = np.zeros((x.shape[1] + 1, k + 1))
    a_eq[:-1, :k] = x.T
    a_eq[-1, :k] = 1.0
    b_eq = np.zeros(x.shape[1] + 1)
    b_eq[-1] = 1.0
    a_ub = np.hstack([-np.eye(k), np.ones((k, 1))])
    res = linprog(c, A_ub=a_ub, b_ub=np.zeros(k), A_eq=a_eq, b_eq=b_eq,
                  bounds=[(0, None)] * k + [(None, 1.0)], method="highs")
    return bool(res.status == 0 and -res.fun > RELINT_TOL)


def is_face(diag: GaleDiagram, subset) -> bool:
    """``conv(subset)`` is a face iff o is in relint conv of the complementary points."""
    s = set(int(i) for i in subset)
    if not s < set(diag.labels):
        raise ValueError("subset must be a proper subset of the labels")
    co = [k for k, lab in enumerate(diag.labels) if lab not in s]
    return origin_in_relint(diag.points[co])


def _directions(diag: GaleDiagram) -> list[np.ndarray]:
    """Unit normals of the hyperplanes through o that pass through some diagram point."""
    if diag.codim == 1:
        return [np.array([1.0]), np.array([-1.0])]
    dirs = []
    for x in _clean(diag.points):
        if np.any(x):
            u = np.array([-x[1], x[0]])
            dirs += [u, -u]
    if not dirs:
        dirs = [np.array([1.0, 0.0]), np.array([-1.0, 0.0])]
    return dirs


def validate_diagram(diag: GaleDiagram) -> tuple[bool, np.ndarray | None]:
    """Check that every open half-space bounded by a hyperplane through o holds >= 2 points.

    Returns ``(valid, witness)``, where ``witness`` is the normal of a
    violating half-space. All points at o (the simplex case) is valid.
    """
    if diag.codim > 2:
        raise UnsupportedError("diagram validation is implemented for codim <= 2")
    x = _clean(diag.points)
    if diag.codim == 0 or not np.any(x):
        return True, None
    for u in _directions(diag):
        if int(np.sum(x @ u > RELINT_TOL)) < 2:
            return False, u
    return True, None


@dataclass(frozen=True)
class DiagramPredicates:
    simplicial: bool
    pyramid: bool


def diagram_predicates(diag: GaleDiagram) -> DiagramPredicates:
    """Simpliciality (no hyperplane section through o has o in its relint) and pyramid tests."""
    if diag.codim == 0:
        return DiagramPredicates(True, True)
    if diag.codim > 2:
        raise UnsupportedError("predicates are implemented for codim <= 2")
    x = _clean(diag.points)
    zero = ~np.any(x, axis=1)
    pyramid = bool(np.any(zero))
    # o in relint conv(V n H): any zero point (take H avoiding others), or an
    # antipodal pair lying on a common line through o
    simplicial = not pyramid
    if simplicial and diag.codim == 2:
        cos = x @ x.T
        simplicial = not np.any(cos < -1.0 + ANGLE_TOL ** 2 / 2)
    return DiagramPredicates(simplicial, pyramid)


def _angle_groups(angles: np.ndarray) -> list[list[int]]:
    """Cluster indices whose angles agree within ANGLE_TOL (circularly)."""
    order = np.argsort(angles)
    groups: list[list[int]] = []
    for i in order:
        if groups and angles[i] - angles[groups[-1][-1]] <= ANGLE_TOL:
            groups[-1].append(int(i))
        else:
            groups.append([int(i)])
    if len(groups) > 1 and angles[groups[0][0]] + 2 * np.pi - angles[groups[-1][-1]] <= ANGLE_TOL:
        groups[0] = groups.pop() + groups[0]
    return groups


def contract_diagram(diag: GaleDiagram) -> GaleDiagram:
    """Standard/contracted form of a codim 1 or 2 diagram.

    Codim 1: signs. Codim 2, simplicial: neighbouring directions with no
    antipode between them are merged, and the resulting 2k+1 clusters are
    placed on a regular (2k+1)-gon in the same cyclic order. Non-simplicial
    codim 2 diagrams are only normalized (``contracted=False``).
    """
    if diag.codim not in (1, 2):
        raise UnsupportedError("contraction is implemented for codim 1 and 2")
    x = _clean(diag.points)
    if diag.codim == 1:
        return GaleDiagram(np.sign(x), diag.labels, normalized=True, contracted=True)
    if not diagram_predicates(diag).simplicial:
        return GaleDiagram(x, diag.labels, normalized=True, contracted=False,
                           note="not simplicial; normalized only")
    angles = np.mod(np.arctan2(x[:, 1], x[:, 0]), 2 * np.pi)
    groups = _angle_groups(angles)
    dir_angle = [float(angles[g[0]]) for g in groups]
    # circular event list: (angle, kind, group); kind 0 = point, 1 = antipode
    events = sorted([(a, 0, g) for g, a in enumerate(dir_angle)]
                    + [(np.mod(a + np.pi, 2 * np.pi), 1, g) for g, a in enumerate(dir_angle)])
    start = next(i for i, e in enumerate(events) if e[1] == 1)
    events = events[start:] + events[:start]
    clusters: list[list[int]] = []
    prev_kind = 1
    for _, kind, g in events:
        if kind == 0:
            if prev_kind == 0:
                clusters[-1].append(g)
            else:
                clusters.append([g])
        prev_kind = kind
    k = len(clusters)
    if k % 2 == 0:
        return GaleDiagram(x, diag.labels, normalized=True, contracted=False,
                           note="cluster count is even; normalized only")
    out = np.zeros_like(x)
    base = dir_angle[clusters[0][0]]
    for c, members in enumerate(clusters):
        theta = base + 2 * np.pi * c / k
        for g in members:
            out[groups[g]] = (np.cos(theta), np.sin(theta))
    return GaleDiagram(out, diag.labels, normalized=True, contracted=True)
