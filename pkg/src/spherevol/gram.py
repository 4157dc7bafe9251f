"""Gram-matrix form of the Löwner-ellipsoid conditions and the symmetric cyclic solver.

Unit vectors u_k with weights l_k >= 0 satisfy ``sum l_k u_k = 0`` and
``sum l_k u_k u_k^T = Id`` exactly when (for a d-dimensional set) the Gram
matrix satisfies ``G l = 0`` and ``G diag(l) G = G``. For a configuration whose
Gram matrix is circulant with equal weights, G is diagonalized by the discrete
Fourier basis, and the second condition forces every eigenvalue to be 0 or 1/l.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd

import numpy as np

from .constructions import cyclic_trig_points, orthogonal_simplex_product, regular_simplex
from .errors import NotGramMatrixError
from .numerics import matrix_rank, psd_factor, real_roots

MATCH_TOL = 1e-8


@dataclass
class GramSystem:
    G: np.ndarray
    lambdas: np.ndarray
    circulant_params: tuple[float, ...] | None = None

    def __post_init__(self):
        self.G = np.asarray(self.G, dtype=float)
        self.lambdas = np.asarray(self.lambdas, dtype=float)
        if self.G.shape != (len(self.lambdas), len(self.lambdas)):
            raise ValueError("G must be n x n with one weight per point")

    @property
    def n(self) -> int:
        return len(self.lambdas)

    @classmethod
    def from_points(cls, points, lambdas) -> GramSystem:
        x = np.asarray(points, dtype=float)
        return cls(x @ x.T, np.broadcast_to(np.asarray(lambdas, dtype=float), (len(x),)).copy())

    @classmethod
    def circulant(cls, params, n: int, lam: float) -> GramSystem:
        """Circulant G with G[i, j] = params[min(k, n-k) - 1], k = |i - j|, unit diagonal."""
        row = circulant_row(params, n)
        idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
        return cls(row[idx], np.full(n, lam), tuple(float(p) for p in params))


def circulant_row(params, n: int) -> np.ndarray:
    row = np.ones(n)
    for k in range(1, n):
        row[k] = params[min(k, n - k) - 1]
    return row


def circulant_eigenvalues(row) -> np.ndarray:
    """Eigenvalues of the symmetric circulant matrix with first row ``row``."""
    return np.real(np.fft.fft(np.asarray(row, dtype=float)))


@dataclass(frozen=True)
class LoewnerResiduals:
    balance: float
    identity: float

    def passes(self, tol: float = 1e-8) -> bool:
        return max(self.balance, self.identity) <= tol


def loewner_check(points, lambdas) -> LoewnerResiduals:
    """Max-entry residuals of ``sum l u`` and ``sum l u u^T - Id``."""
    u = np.asarray(points, dtype=float)
    lam = np.broadcast_to(np.asarray(lambdas, dtype=float), (len(u),))
    if np.any(np.abs(np.linalg.norm(u, axis=1) - 1.0) > 1e-9):
        raise ValueError("points must be unit vectors")
    if np.any(lam < 0):
        raise ValueError("weights must be non-negative")
    bal = lam @ u
    ident = (u * lam[:, None]).T @ u - np.eye(u.shape[1])
    return LoewnerResiduals(float(np.abs(bal).max()), float(np.abs(ident).max()))


@dataclass(frozen=True)
class GramResiduals:
    balance: float
    projection: float

    def passes(self, tol: float = 1e-8) -> bool:
        return max(self.balance, self.projection) <= tol


def gram_check(g: GramSystem) -> GramResiduals:
    """Max-entry residuals of ``G l`` and ``G diag(l) G - G``."""
    G, lam = g.G, g.lambdas
    return GramResiduals(
        float(np.abs(G @ lam).max()),
        float(np.abs(G @ (lam[:, None] * G) - G).max()),
    )


def realize(G, rank_tol: float = 1e-9) -> np.ndarray:
    """Points (rows) whose Gram matrix is ``G``, in R^rank."""
    return psd_factor(G, rank_tol).T


def _units(n: int) -> list[int]:
    return [u for u in range(1, n) if gcd(u, n) == 1]


def _same_up_to_cyclic_relabel(G: np.ndarray, ref: np.ndarray, tol: float) -> bool:
    """G equals ref after some relabelling i -> (u i + t) mod n, u a unit."""
    n = len(G)
    for u in _units(n) or [1]:
        for t in range(n):
            perm = (u * np.arange(n) + t) % n
            if np.abs(G - ref[np.ix_(perm, perm)]).max() <= tol:
                return True
    return False


def _simplex_components(G: np.ndarray, tol: float) -> list[list[int]] | None:
    """Split the points into mutually orthogonal regular simplices, if possible."""
    n = len(G)
    seen, comps = set(), []
    for i in range(n):
        if i in seen:
            continue
        stack, comp = [i], []
        seen.add(i)
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in np.flatnonzero(np.abs(G[a]) > tol):
                if b not in seen:
                    seen.add(int(b))
                    stack.append(int(b))
        comps.append(sorted(comp))
    for comp in comps:
        k = len(comp) - 1
        if k < 1:
            return None
        sub = G[np.ix_(comp, comp)]
        target = np.full((k + 1, k + 1), -1.0 / k)
        np.fill_diagonal(target, 1.0)
        if np.abs(sub - target).max() > tol:
            return None
    return comps


def identify_realization(points, tol: float = MATCH_TOL) -> str:
    """Name the configuration: regular simplex, C_r(n), orthogonal simplex product or unknown.

    Congruence is decided by Gram-matrix equality, up to cyclic relabelling
    for the C_r(n) family.
    """
    x = np.asarray(points, dtype=float)
    n = len(x)
    G = x @ x.T
    r = matrix_rank(x, tol=1e-9 * max(1.0, np.abs(x).max()))
    off = G[~np.eye(n, dtype=bool)]
    if np.any(np.abs(np.diag(G) - 1.0) > tol) or (n > 1 and off.max() > 1.0 - tol):
        return "unknown"
    if n == r + 1 and np.all(np.abs(off + 1.0 / r) <= tol):
        return "regular simplex"
    if r % 2 == 0 and n >= r + 1 and n > 2:
        ref = cyclic_trig_points(r, n)
        if _same_up_to_cyclic_relabel(G, ref @ ref.T, tol):
            return f"C_{r}({n})"
    comps = _simplex_components(G, tol)
    if comps is not None and len(comps) > 1 and sum(len(c) - 1 for c in comps) == r:
        dims = ",".join(str(k) for k in sorted(len(c) - 1 for c in comps))
        return f"orthogonal simplex product ({dims})"
    return "unknown"


@dataclass
class GramSolution:
    n: int
    params: tuple[float, ...]
    harmonics: tuple[int, ...]
    lam: float
    residuals: GramResiduals
    rank: int
    status: str
    identification: str
    points: np.ndarray | None = field(default=None, repr=False)

    @property
    def system(self) -> GramSystem:
        return GramSystem.circulant(self.params, self.n, self.lam)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "params": list(self.params),
            "harmonics": list(self.harmonics),
            "lambda": self.lam,
            "constraint_residual": abs(1.0 + 2.0 * sum(self.params[: (self.n - 1) // 2])
                                       + (self.params[-1] if self.n % 2 == 0 else 0.0)),
            "balance_residual": self.residuals.balance,
            "projection_residual": self.residuals.projection,
            "rank": self.rank,
            "status": self.status,
            "identification": self.identification,
        }


def _eigen_classes(n: int) -> list[tuple[int, int]]:
    """(frequency j, multiplicity) for j = 1..n//2; j = n/2 is simple."""
    return [(j, 1 if 2 * j == n else 2) for j in range(1, n // 2 + 1)]


def solve_symmetric(n: int) -> list[GramSolution]:
    """All circulant Gram matrices of n unit vectors meeting both conditions with equal weights.

    ``G 1 = 0`` kills the zero frequency, which is the constraint
    ``1 + 2 sum params = 0``. ``l G^2 = G`` forces each remaining Fourier
    eigenvalue to be 0 or 1/l; the trace (= n) then fixes l. Each non-empty
    choice of non-zero frequency classes gives one candidate, inverted back to
    the circulant parameters. Candidates equal up to permuting parameters are
    merged.
    """
    classes = _eigen_classes(n)
    m = n // 2
    out: list[GramSolution] = []
    seen: list[tuple[float, ...]] = []
    for pattern in product((0, 1), repeat=len(classes)):
        if not any(pattern):
            continue
        active = [j for (j, _), on in zip(classes, pattern) if on]
        count = sum(mult for (_, mult), on in zip(classes, pattern) if on)
        lam = count / n
        mu = np.zeros(n)
        for j in active:
            mu[j] = mu[(n - j) % n] = 1.0 / lam
        row = np.real(np.fft.ifft(mu))
        params = tuple(float(v) for v in row[1: m + 1])
        key = tuple(sorted(params))
        if any(np.allclose(key, s, atol=1e-9, rtol=0) for s in seen):
            continue
        seen.append(key)
        system = GramSystem.circulant(params, n, lam)
        res = gram_check(system)
        try:
            pts = realize(system.G)
            rank = pts.shape[1]
            status = "ok"
        except NotGramMatrixError:
            pts, rank, status = None, -1, "not realizable (negative eigenvalue)"
        if pts is not None and max(params) > 1.0 - 1e-9:
            status = "coinciding points"
        ident = identify_realization(pts) if status == "ok" else "unknown"
        out.append(GramSolution(n, params, tuple(active), lam, res, rank, status, ident, pts))
    return out


def solve_symmetric_d4() -> list[GramSolution]:
    """The seven-vertex case (a, b, c) = (G_01, G_02, G_03)."""
    return solve_symmetric(7)


def cubic_through(values, scale: float = 1.0):
    """Real roots of the monic cubic whose roots are ``scale * values``."""
    coeffs = np.polynomial.polynomial.polyfromroots([scale * v for v in values])
    return real_roots(coeffs)


def interleave_blocks(points: np.ndarray, sizes) -> np.ndarray:
    """Reorder block-structured points so consecutive vertices cycle through the blocks."""
    starts = np.cumsum([0] + list(sizes))[:-1]
    order = [starts[b] + i for i in range(max(sizes)) for b in range(len(sizes)) if i < sizes[b]]
    return points[order]


def verify_symmetric_d6() -> dict:
    """Check the nine-vertex solutions named for d = 6 against explicit constructions."""
    solutions = solve_symmetric(9)
    listed = {
        "regular simplex in R^8": regular_simplex(8),
        "C_2(9)": cyclic_trig_points(2, 9),
        "C_4(9)": cyclic_trig_points(4, 9),
        "C_6(9)": cyclic_trig_points(6, 9),
        "three orthogonal triangles": interleave_blocks(orthogonal_simplex_product((2, 2, 2)).vertices, (3, 3, 3)),
    }
    rows = []
    for name, pts in listed.items():
        G = pts @ pts.T
        row = G[0]
        circulant = bool(np.allclose(G, GramSystem.circulant(row[1:5], 9, 1.0).G, atol=1e-12))
        match = next((s for s in solutions
                      if np.allclose(sorted(s.params), sorted(row[1:5]), atol=1e-9)), None)
        lam = match.lam if match else float("nan")
        res = gram_check(GramSystem(G, np.full(9, lam)))
        rows.append({
            "name": name,
            "circulant": circulant,
            "matched_solution": list(match.params) if match else None,
            "lambda": lam,
            "balance_residual": res.balance,
            "projection_residual": res.projection,
            "rank": realize(G).shape[1],
            "identification": identify_realization(pts),
        })
    return {"solutions": [s.to_dict() for s in solutions], "listed": rows}
