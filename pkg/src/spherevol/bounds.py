"""Closed-form volumes of the optimal and reference inscribed polytopes."""
from __future__ import annotations

from dataclasses import dataclass
from math import cos, factorial, pi, prod, sin, sqrt

from .constructions import balanced_split


@dataclass(frozen=True)
class VolumeRecord:
    d: int
    n: int
    value: float
    formula_id: str
    construction: str | None = None


def v_simplex(k: int) -> float:
    """Volume of the regular k-simplex inscribed in the unit sphere of R^k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return (k + 1) ** ((k + 1) / 2) / (k ** (k / 2) * factorial(k))


def product_volume(dims) -> float:
    """Volume of the hull of regular simplices in orthogonal subspaces of dimensions ``dims``."""
    dims = tuple(int(k) for k in dims)
    d = sum(dims)
    return prod(factorial(k) for k in dims) / factorial(d) * prod(v_simplex(k) for k in dims)


def v_dplus2(d: int) -> float:
    """Maximum volume of an inscribed d-polytope with d+2 vertices."""
    if d < 2:
        raise ValueError("d must be >= 2")
    lo, hi = d // 2, d - d // 2
    return ((lo + 1) ** ((lo + 1) / 2) * (hi + 1) ** ((hi + 1) / 2)
            / (lo ** (lo / 2) * hi ** (hi / 2)) / factorial(d))


def v_dplus3(d: int) -> float:
    """Volume of the balanced three-simplex product in R^d.

    The maximum over all inscribed polytopes with d+3 vertices for odd d; for
    even d, the maximum among non-cyclic ones satisfying the first-order
    condition (whether it is the global maximum is open).
    """
    if d < 3:
        raise ValueError("d must be >= 3")
    return prod((k + 1) ** ((k + 1) / 2) * k ** (-k / 2) for k in balanced_split(d, 3)) / factorial(d)


def c47_volume() -> float:
    """Volume of C_4(7)."""
    return 49 / 192 * (cos(pi / 7) + cos(2 * pi / 7))


def c69_volume() -> float:
    """The reference closed form for vol C_6(9), evaluated literally.

    It evaluates to 0.016971..., which does not match the volume of the
    constructed C_6(9) (see :func:`c69_volume_exact`).
    """
    return 7 / 576 * sin(pi / 9) - 7 / 2880 * sin(4 * pi / 9) + 7 / 1152 * sin(2 * pi / 9)


def c69_volume_exact() -> float:
    """Volume of C_6(9): 3*sqrt(3)*(1 + 2 cos(2 pi/9)) / 640 = 0.0205579996...

    Agrees with the triangulated volume, with a qhull volume and with the
    product of the nonzero Gram eigenvalues of the nine vertices.
    """
    return 3 * sqrt(3) * (1 + 2 * cos(2 * pi / 9)) / 640


def regular_polygon_area(n: int) -> float:
    return n / 2 * sin(2 * pi / n)


def known_optimum(d: int, n: int) -> float | None:
    """Proven maximum volume v_d(n) where a closed form is known, else None."""
    if n == d + 1:
        return v_simplex(d)
    if d == 2 and n >= 3:
        return regular_polygon_area(n)
    if n == d + 2:
        return v_dplus2(d)
    if n == d + 3 and d % 2 == 1:
        return v_dplus3(d)
    return None


def p4_volume() -> float:
    return sqrt(3) / 4


def p6_volume() -> float:
    return 9 * sqrt(3) / 640
