"""First-order optimality of inscribed polytopes.

For a vertex p, each boundary simplex F containing p contributes the
(d-1)-volume A(F,p) of conv((V(F) u {o}) minus p) times the unit normal
m(F,p) of its span, oriented towards p. The volume is then
``V + <p, m>/d`` with ``m = sum A(F,p) m(F,p)``, so a volume-maximizing
vertex must equal ``m/|m|``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial, sqrt

import numpy as np

from .errors import DegenerateSimplexError, PreconditionError, UnsupportedError
from .polytope import COPLANAR_TOL, FacetComplex, InscribedPolytope, edge_graph

DEFAULT_TOL = 1e-8
_SIGN_TOL = 1e-12


@dataclass
class VertexForce:
    index: int
    force: np.ndarray
    weights: np.ndarray
    normals: np.ndarray
    simplices: np.ndarray
    point: np.ndarray = field(repr=False)
    degenerate: int = 0

    @property
    def residual(self) -> float:
        norm = np.linalg.norm(self.force)
        if norm == 0.0:
            return 2.0
        return float(np.linalg.norm(self.force / norm - self.point))


def _span_normal(q: np.ndarray, d: int) -> np.ndarray:
    """A unit vector orthogonal to the rows of ``q`` (shape (d-1, d))."""
    if q.shape[0] == 0:
        out = np.zeros(d)
        out[0] = 1.0
        return out
    _, _, vt = np.linalg.svd(q, full_matrices=True)
    return vt[-1]


def vertex_force(p: InscribedPolytope, c: FacetComplex, i: int) -> VertexForce:
    """Force vector at vertex ``i`` from the simplices of ``c`` containing it.

    A simplex whose normal is (numerically) orthogonal to the vertex is
    counted as degenerate and contributes nothing.
    """
    v = p.vertices
    d = p.dim
    rows = c.containing(i)
    weights, normals = [], []
    force = np.zeros(d)
    bad = 0
    for s in rows:
        others = [j for j in c.simplices[s] if j != i]
        q = v[others]
        gram = q @ q.T
        area = sqrt(max(np.linalg.det(gram), 0.0)) / factorial(d - 1) if len(others) else 1.0
        nu = _span_normal(q, d)
        h = float(nu @ v[i])
        if abs(h) <= _SIGN_TOL or area == 0.0:
            bad += 1
            weights.append(0.0)
            normals.append(np.zeros(d))
            continue
        if h < 0:
            nu = -nu
        weights.append(area)
        normals.append(nu)
        force += area * nu
    return VertexForce(
        index=i,
        force=force,
        weights=np.array(weights),
        normals=np.array(normals).reshape(-1, d),
        simplices=rows,
        degenerate=bad,
        point=v[i].copy(),
    )


@dataclass
class StationarityReport:
    records: list[VertexForce]
    tol: float
    test: str = "first-order residual |m/|m| - p| per vertex"

    @property
    def residuals(self) -> np.ndarray:
        return np.array([r.residual for r in self.records])

    @property
    def max_residual(self) -> float:
        return float(self.residuals.max())

    @property
    def satisfies(self) -> bool:
        return self.max_residual <= self.tol

    def to_dict(self) -> dict:
        return {
            "verdict": "satisfies" if self.satisfies else "fails",
            "test": self.test,
            "tol": self.tol,
            "max_residual": self.max_residual,
            "vertices": [
                {
                    "index": r.index,
                    "force": r.force.tolist(),
                    "residual": r.residual,
                    "weights": r.weights.tolist(),
                    "normals": r.normals.tolist(),
                    "degenerate_simplices": r.degenerate,
                }
                for r in self.records
            ],
        }


def check_property_z(p: InscribedPolytope, tol: float = DEFAULT_TOL,
                     complex_: FacetComplex | None = None) -> StationarityReport:
    """Test the necessary condition p = m/|m| at every vertex.

    This certifies stationarity only; local maximality is probed separately
    by :func:`spherevol.optimizer.certify`.
    """
    if any(f.offset <= COPLANAR_TOL for f in p.facets):
        raise UnsupportedError("origin is not in the interior of the polytope")
    c = p.complex if complex_ is None else complex_
    return StationarityReport([vertex_force(p, c, i) for i in range(p.n)], tol)


def facet_normal_balance(simplex) -> float:
    """|sum_i vol(F_i) n_i| over the facets of a simplex with outward unit normals.

    ``simplex`` holds s+1 points in R^s. The sum vanishes for every simplex.
    """
    x = np.asarray(simplex, dtype=float)
    k, s = x.shape
    if k != s + 1:
        raise PreconditionError(f"a simplex in R^{s} needs {s + 1} points, got {k}")
    edges = x[1:] - x[0]
    if abs(np.linalg.det(edges)) <= 1e-14 * max(1.0, np.abs(edges).max()) ** s:
        raise DegenerateSimplexError("simplex is degenerate")
    total = np.zeros(s)
    for i in range(k):
        face = np.delete(x, i, axis=0)
        e = face[1:] - face[0]
        vol = sqrt(max(np.linalg.det(e @ e.T), 0.0)) / factorial(s - 1) if s > 1 else 1.0
        nu = _span_normal(e, s)
        if nu @ (x[i] - face[0]) > 0:
            nu = -nu
        total += vol * nu
    return float(np.linalg.norm(total))


@dataclass(frozen=True)
class EdgeCheck:
    equal: bool
    length_difference: float
    inner_product_difference: float


def equal_edge_check(p: InscribedPolytope, i: int, j1: int, j2: int,
                     tol: float = 1e-9) -> EdgeCheck:
    """Compare |p_j1 - p_i| and |p_j2 - p_i| for two neighbours of vertex ``i``."""
    nbrs = edge_graph(p)[i]
    for j in (j1, j2):
        if j not in nbrs:
            raise PreconditionError(f"vertex {j} is not adjacent to vertex {i}")
    v = p.vertices
    l1 = np.linalg.norm(v[j1] - v[i])
    l2 = np.linalg.norm(v[j2] - v[i])
    diff = float(abs(l1 - l2))
    return EdgeCheck(diff <= tol, diff, float(abs(v[i] @ v[j1] - v[i] @ v[j2])))
