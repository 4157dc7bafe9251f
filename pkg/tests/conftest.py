import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=50, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_rotation(rng, d):
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))


def interior_random(d, n, rng, margin=1e-3):
    """A random inscribed polytope that contains a ball of radius ``margin`` about o."""
    from spherevol.constructions import random_inscribed
    while True:
        p = random_inscribed(d, n, rng)
        if all(f.offset > margin for f in p.facets):
            return p


def brute_force_face(p, subset):
    """S is a face iff it is exactly the common vertex set of the facets containing it."""
    s = frozenset(subset)
    sets = [frozenset(f.vertex_indices) for f in p.facets if s <= frozenset(f.vertex_indices)]
    return bool(sets) and frozenset.intersection(*sets) == s


def few_vertex_constructions(dmax=6):
    """Every named construction in R^d, d <= dmax, with at most d+3 vertices."""
    from spherevol import constructions as c
    out = {}
    for d in range(2, dmax + 1):
        out[f"simplex({d})"] = c.regular_simplex_polytope(d)
        out[f"dplus2({d})"] = c.optimal_dplus2(d)
        out[f"bipyramid(simplex({d - 1}))"] = c.bipyramid(c.regular_simplex_polytope(d - 1))
        if d >= 3:
            out[f"dplus3({d})"] = c.optimal_dplus3(d)
        if d % 2 == 0:
            out[f"C_{d}({d + 3})"] = c.cyclic_trig(d, d + 3)
        if 2 * d <= d + 3:
            out[f"cross({d})"] = c.cross_polytope(d)
    out["product(1,2)"] = c.orthogonal_simplex_product((1, 2))
    out["remark54"] = c.remark54_3polytope()
    return out
