import numpy as np
import pytest

from conftest import random_rotation
from spherevol.bounds import known_optimum
from spherevol.constructions import cyclic_trig, optimal_dplus3, random_inscribed
from spherevol.optimizer import (
    OptimizerConfig, _reproject_lost, ascend, ascend_from, canonical_key, certify, compare_even_d, random_start,
)
from spherevol.polytope import InscribedPolytope, hull_facets


class TestConfig:
    @pytest.mark.parametrize("kw", [dict(n=3), dict(starts=0), dict(alpha=0.0), dict(alpha=1.5),
                                    dict(move_tol=0.0)])
    def test_invalid(self, kw):
        args = dict(d=3, n=6) | kw
        with pytest.raises(ValueError):
            OptimizerConfig(**args)


class TestStarts:
    def test_on_sphere_and_full_dimensional(self, rng):
        x = random_start(4, 7, rng)
        np.testing.assert_allclose(np.linalg.norm(x, axis=1), 1.0)
        assert np.linalg.matrix_rank(x - x[0]) == 4

    def test_gives_up_on_impossible(self, rng):
        with pytest.raises(RuntimeError):
            random_start(3, 3, rng)  # three points never span R^3


class TestAscent:
    def test_monotone_within_combinatorial_type(self, rng):
        for _ in range(10):
            tr = ascend_from(random_start(3, 7, rng), max_iters=300)
            assert np.all(np.diff(tr.volumes) >= -1e-12)

    def test_converges_to_stationary_point(self, rng):
        tr = ascend_from(random_start(4, 6, rng))
        assert tr.converged
        p = InscribedPolytope(tr.points, normalize=True)
        from spherevol.stationarity import check_property_z
        assert check_property_z(p).max_residual <= 1e-6

    def test_rotation_equivariance(self, rng):
        x0 = random_start(3, 6, rng)
        rot = random_rotation(rng, 3)
        a = ascend_from(x0)
        b = ascend_from(x0 @ rot.T)
        assert a.final_volume == pytest.approx(b.final_volume, abs=1e-9)
        np.testing.assert_allclose(a.points @ rot.T, b.points, atol=1e-6)

    def test_lost_vertex_is_reprojected(self):
        # points on the sphere are always extreme; the guard matters once a vertex
        # drops off every facet numerically, simulated here by omitting its facets
        x = np.vstack([np.eye(3), -np.eye(3), [[0.0, 0.6, 0.8]]])
        facets = [f for f in hull_facets(x) if 6 not in f.vertex_indices]
        assert _reproject_lost(x, facets)
        np.testing.assert_allclose(np.linalg.norm(x[6]), 1.0)
        # moved to the pole of the largest cap (a facet of the octahedron)
        np.testing.assert_allclose(np.abs(x[6]), np.full(3, 1 / np.sqrt(3)), atol=1e-12)
        assert not _reproject_lost(x, hull_facets(x))

    def test_fixed_point_stays_put(self):
        x = optimal_dplus3(4).vertices.copy()
        tr = ascend_from(x, max_iters=5)
        assert tr.converged and tr.iterations == 1
        np.testing.assert_allclose(tr.points, x, atol=1e-12)


class TestRecovery:
    @pytest.mark.parametrize("d, n", [(2, n) for n in range(3, 9)] + [(3, 4), (3, 5), (3, 6), (4, 6)])
    def test_known_optimum(self, d, n):
        res = ascend(OptimizerConfig(d, n, starts=50, seed=0))
        target = known_optimum(d, n)
        assert res.best_volume <= target + 1e-9
        assert res.best_volume == pytest.approx(target, abs=1e-6)
        assert res.report is not None and res.report.max_residual <= 1e-6

    def test_deterministic(self):
        cfg = OptimizerConfig(3, 7, starts=5, seed=3)
        a, b = ascend(cfg), ascend(cfg)
        assert a.to_dict() == b.to_dict()

    def test_workers_do_not_change_result(self):
        cfg = OptimizerConfig(3, 6, starts=4, seed=1)
        assert ascend(cfg).to_dict() == ascend(cfg, workers=2).to_dict()

    def test_to_dict(self):
        d = ascend(OptimizerConfig(2, 5, starts=3)).to_dict()
        assert len(d["starts"]) == 3 and d["stationarity"]["verdict"] == "satisfies"
        assert d["known_optimum"] == pytest.approx(known_optimum(2, 5))


class TestCanonicalKey:
    def test_rotation_and_order_invariant(self, rng):
        p = cyclic_trig(4, 7)
        q = p.vertices[rng.permutation(7)] @ random_rotation(rng, 4).T
        # C_4(7) has a repeated Gram eigenvalue, so compare a generic configuration
        x = random_inscribed(3, 6, rng).vertices
        y = x[rng.permutation(6)] @ random_rotation(rng, 3).T
        assert canonical_key(x, 6) == canonical_key(y, 6)
        assert isinstance(canonical_key(q), tuple)


class TestCertify:
    def test_p4(self):
        c = certify(optimal_dplus3(4), samples=500, radius=1e-2)
        assert c.stationary and not c.violated

    def test_c47(self):
        c = certify(cyclic_trig(4, 7), samples=200)
        assert c.stationary and not c.violated

    def test_random_not_stationary(self, rng):
        from conftest import interior_random
        c = certify(interior_random(3, 6, rng), samples=200, radius=0.05)
        assert not c.stationary and c.violated

    def test_dict(self):
        d = certify(optimal_dplus3(3), samples=10).to_dict()
        assert set(d) >= {"max_residual", "worst_violation", "violated"}


class TestCompare:
    def test_d4(self):
        r = compare_even_d(4, starts=10)
        assert r["product_exceeds_cyclic"]
        assert r["volumes"]["dplus3_product"] == pytest.approx(np.sqrt(3) / 4)
        assert r["volumes"]["ascend_best"] <= r["volumes"]["dplus3_product"] + 1e-9 or r["ordering"][0] == "ascend_best"

    def test_rejects_odd(self):
        with pytest.raises(ValueError):
            compare_even_d(5)
