import numpy as np
import pytest

from conftest import poly1, poly2
from nonalter.instances import random_quadform
from nonalter.oracle import GridSpec, grid_min, probe_unbounded
from nonalter.qp1qc import solve_qp1qc, solve_on_affine_subspace
from nonalter.quad_core import QuadForm, evaluate


class TestHandCases:
    def test_boundary_minimum(self):
        f = poly1(axx=1, bx=-4, c=4)  # (x-2)^2
        g = poly1(axx=1, c=-1)
        r = solve_qp1qc(f, g)
        assert r.status == "attained"
        assert r.value == pytest.approx(1.0, abs=1e-8)
        assert r.x[0] == pytest.approx(1.0, abs=1e-8)
        assert r.lam == pytest.approx(1.0, abs=1e-6)

    def test_interior_minimum(self):
        f = poly2(axx=1, ayy=1)
        g = poly2(axx=1, ayy=1, c=-1)
        r = solve_qp1qc(f, g)
        assert r.status == "attained"
        assert r.value == pytest.approx(0.0, abs=1e-10)
        assert np.allclose(r.x, 0.0, atol=1e-8)
        assert r.lam == pytest.approx(0.0, abs=1e-8)

    def test_hard_case_kernel_step(self):
        f = poly2(ayy=-1)  # -y^2
        g = poly2(axx=1, ayy=1, c=-1)
        r = solve_qp1qc(f, g)
        assert r.status == "attained"
        assert r.value == pytest.approx(-1.0, abs=1e-8)
        assert abs(r.x[0]) == pytest.approx(0.0, abs=1e-6)
        assert abs(r.x[1]) == pytest.approx(1.0, abs=1e-6)
        assert r.lam == pytest.approx(1.0, abs=1e-6)

    def test_infeasible(self):
        r = solve_qp1qc(poly1(axx=1), poly1(axx=1, c=1))
        assert r.status == "infeasible"

    def test_constant_constraint_dropped(self):
        r = solve_qp1qc(poly1(axx=1, bx=-4, c=4), QuadForm.constant(1, -2.0))
        assert r.status == "attained" and r.value == pytest.approx(0.0, abs=1e-12)

    def test_unbounded(self):
        r = solve_qp1qc(poly2(axx=-1, ayy=-1), poly2(axx=1, ayy=1, c=-1e6))
        assert r.status in ("attained", "unbounded_below")
        # minimum over a huge disk is attained on its boundary, so check the
        # genuinely unbounded variant too
        r = solve_qp1qc(poly2(bx=1), poly2(axx=1, c=-1))  # min x on |x|<=1 strip: attained
        assert r.status == "attained" and r.value == pytest.approx(-1.0, abs=1e-8)
        r = solve_qp1qc(poly2(by=1), poly2(axx=1, c=-1))  # y is free
        assert r.status == "unbounded_below"

    def test_equality_like_constraint(self):
        # g = (x-1)^2 has minimum exactly 0: the feasible set is the line x=1.
        f = poly2(axx=1, ayy=1)
        g = poly2(axx=1, bx=-2, c=1)
        r = solve_qp1qc(f, g)
        assert r.status == "attained"
        assert r.value == pytest.approx(1.0, abs=1e-9)
        assert r.x[0] == pytest.approx(1.0, abs=1e-8)


class TestAffineSubspace:
    def test_circle_on_line(self):
        f = poly2(axx=1, ayy=1)
        r = solve_on_affine_subspace(f, [1.0, 0.0], [[0.0], [1.0]])
        assert r.status == "attained"
        assert r.value == pytest.approx(1.0)
        assert np.allclose(r.x, [1.0, 0.0], atol=1e-10)

    def test_saddle_on_line(self):
        f = poly2(axy=1)  # x*y
        r = solve_on_affine_subspace(f, [0.0, 1.0], [[1.0], [0.0]])  # y = 1
        assert r.status == "unbounded_below"

    def test_shifted_parabola(self):
        f = poly2(axx=1, bx=-6, c=9)  # (x-3)^2
        r = solve_on_affine_subspace(f, [1.0, 0.0], [[0.0], [1.0]])
        assert r.status == "attained" and r.value == pytest.approx(4.0)


class TestKktInvariants:
    def test_residuals_on_random_instances(self, rng):
        checked = 0
        for _ in range(120):
            f = random_quadform(rng, 2, convex=rng.uniform() < 0.6)
            g = random_quadform(rng, 2)
            r = solve_qp1qc(f, g)
            if r.status != "attained":
                continue
            checked += 1
            scale = 1.0 + abs(r.value)
            assert evaluate(g, r.x) <= 1e-7 * (1 + g.data_scale())
            assert abs(evaluate(f, r.x) - r.value) <= 1e-7 * scale
            assert r.lam >= 0
            assert abs(r.lam * evaluate(g, r.x)) <= 1e-6 * scale * (1 + r.lam)
            Q = f.A + r.lam * g.A
            v = f.a + r.lam * g.a
            stat_scale = 1 + np.abs(Q).max() + np.abs(v).max() + np.linalg.norm(r.x)
            assert np.linalg.norm(Q @ r.x + v) <= 1e-6 * stat_scale
        assert checked >= 60

    def test_dual_value_matches_primal(self, rng):
        # No duality gap in the single-constraint regime with a Slater point.
        from nonalter.qp1qc import _dual_1d

        for _ in range(40):
            f = random_quadform(rng, 2, convex=rng.uniform() < 0.6)
            g = random_quadform(rng, 2)
            r = solve_qp1qc(f, g)
            if r.status != "attained":
                continue
            assert _dual_1d(f, g, r.lam) == pytest.approx(r.value, rel=1e-6, abs=1e-6)


class TestOracleAgreement:
    def test_random_batch(self, rng):
        spec = GridSpec.cube(2, resolution=401, eps=0.0)
        checked = 0
        for _ in range(80):
            f = random_quadform(rng, 2, convex=rng.uniform() < 0.5)
            g = random_quadform(rng, 2)
            r = solve_qp1qc(f, g)
            o = grid_min(f, g, QuadForm.constant(2, -1.0), spec)
            if r.status == "attained":
                if o.feasible_count == 0 or np.abs(r.x).max() > 9.5:
                    continue
                grad = 2 * (f.A @ o.argmin + f.a)
                lip = np.linalg.norm(grad) + 4 * np.abs(f.A).max() * max(spec.spacing)
                bound = 2 * lip * max(spec.spacing) + 1e-6
                assert o.min_value >= r.value - 1e-6
                assert o.min_value - r.value <= bound
                checked += 1
            elif r.status == "unbounded_below":
                w = probe_unbounded(f, g, QuadForm.constant(2, -1.0), spec)
                assert w is not None and evaluate(f, w) < -1e6
                checked += 1
        assert checked >= 40
