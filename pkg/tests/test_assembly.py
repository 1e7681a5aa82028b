"""Energy, residual, and load assembly against hand-computed values."""
from __future__ import annotations

import math

import numpy as np
import pytest

import plapvar as pv


def unit_hat(n=2):
    """The nodal hat of height 1 at the midpoint of (0, 1) split into n cells."""
    mesh = pv.build_interval_mesh(0.0, 1.0, n)
    values = np.zeros(mesh.n_free)
    values[mesh.n_free // 2] = 1.0
    return mesh, pv.make_field(mesh, values)


class TestDirichletEnergy:
    # hat on two cells: slope +-2, so (1/p) * integral of |u'|^p = 2^p / p
    def test_hat_p2(self):
        mesh, u = unit_hat()
        assert math.isclose(pv.dirichlet_energy(mesh, u, 2.0), 2.0, rel_tol=1e-14)

    def test_hat_p3(self):
        mesh, u = unit_hat()
        assert math.isclose(pv.dirichlet_energy(mesh, u, 3.0), 8.0 / 3.0,
                            rel_tol=1e-14)

    def test_linear_profile_2d(self):
        # u = x interpolated, Dirichlet rows masked off: compare against the
        # same quantity assembled from the piecewise gradient directly.
        mesh = pv.build_rectangle_mesh(0.0, 1.0, 0.0, 1.0, 4, 4)
        rng = np.random.default_rng(3)
        u = pv.make_field(mesh, rng.standard_normal(mesh.n_free))
        p = 2.0
        K = pv.stiffness_matrix(mesh)
        quad = float(u.values @ (K @ u.values)) / 2.0
        assert math.isclose(pv.dirichlet_energy(mesh, u, p), quad, rel_tol=1e-12)

    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
    def test_homogeneous_of_degree_p(self, p):
        mesh = pv.build_interval_mesh(0.0, 1.0, 9)
        rng = np.random.default_rng(11)
        u = pv.make_field(mesh, rng.standard_normal(mesh.n_free))
        e1 = pv.dirichlet_energy(mesh, u, p)
        u3 = pv.make_field(mesh, -3.0 * u.values)
        assert math.isclose(pv.dirichlet_energy(mesh, u3, p), 3.0**p * e1,
                            rel_tol=1e-13)

    def test_zero_field(self):
        mesh = pv.build_interval_mesh(0.0, 1.0, 4)
        assert pv.dirichlet_energy(mesh, pv.zero_field(mesh), 2.5) == 0.0


class TestLpIntegral:
    def test_hat_squared(self):
        # int of hat^2 over (0,1) with the hat spanning the whole interval
        mesh, u = unit_hat()
        assert math.isclose(pv.lp_integral(mesh, u, 2.0), 1.0 / 3.0, rel_tol=1e-13)

    def test_hat_p3(self):
        # int of hat^3 = 2 * int_0^{1/2} (2x)^3 dx = 1/4
        mesh, u = unit_hat()
        assert math.isclose(pv.lp_integral(mesh, u, 3.0), 0.25, rel_tol=1e-10)

    def test_constant_on_free_part(self):
        mesh = pv.build_interval_mesh(0.0, 1.0, 200)
        u = pv.interpolate(mesh, lambda x: np.ones(len(x)))
        # trapezoid of the boundary ramps: 1 - h where h = 1/200
        assert math.isclose(pv.lp_integral(mesh, u, 1.0), 1.0 - 1.0 / 200,
                            rel_tol=1e-12)

    @pytest.mark.parametrize("p", [1.5, 2.0, 4.0])
    def test_scaling(self, p):
        mesh = pv.build_interval_mesh(0.0, 1.0, 7)
        rng = np.random.default_rng(5)
        u = pv.make_field(mesh, rng.standard_normal(mesh.n_free))
        v = pv.make_field(mesh, 2.0 * u.values)
        assert math.isclose(pv.lp_integral(mesh, v, p),
                            2.0**p * pv.lp_integral(mesh, u, p), rel_tol=1e-12)


class TestStiffnessMatrix:
    def test_interval_tridiagonal(self):
        n = 5
        mesh = pv.build_interval_mesh(0.0, 1.0, n)
        K = pv.stiffness_matrix(mesh).toarray()
        h = 1.0 / n
        expect = (np.diag(np.full(n - 1, 2.0 / h))
                  + np.diag(np.full(n - 2, -1.0 / h), 1)
                  + np.diag(np.full(n - 2, -1.0 / h), -1))
        assert np.allclose(K, expect, atol=1e-13)

    def test_matches_p2_residual(self):
        mesh = pv.build_rectangle_mesh(0.0, 1.0, 0.0, 1.0, 5, 5)
        rng = np.random.default_rng(0)
        u = pv.make_field(mesh, rng.standard_normal(mesh.n_free))
        r = pv.plap_residual(mesh, u, 2.0)
        K = pv.stiffness_matrix(mesh)
        assert np.allclose(r.values, K @ u.values, atol=1e-12)


class TestResidualAndGradient:
    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
    @pytest.mark.parametrize("dim", [1, 2])
    def test_residual_is_energy_gradient(self, p, dim):
        if dim == 1:
            mesh = pv.build_interval_mesh(0.0, 1.0, 12)
        else:
            mesh = pv.build_rectangle_mesh(0.0, 1.0, 0.0, 1.0, 5, 4)
        rng = np.random.default_rng(17)
        u0 = rng.standard_normal(mesh.n_free)
        r = pv.plap_residual(mesh, pv.make_field(mesh, u0), p)
        eps = 1e-6
        worst = 0.0
        scale = float(np.max(np.abs(r.values)))
        for j in range(mesh.n_free):
            up = u0.copy(); up[j] += eps
            um = u0.copy(); um[j] -= eps
            fd = (pv.dirichlet_energy(mesh, pv.make_field(mesh, up), p)
                  - pv.dirichlet_energy(mesh, pv.make_field(mesh, um), p)) / (2 * eps)
            worst = max(worst, abs(fd - r.values[j]))
        assert worst <= 5e-5 * scale

    def test_residual_p_minus_one_homogeneous(self):
        mesh = pv.build_interval_mesh(0.0, 1.0, 10)
        rng = np.random.default_rng(2)
        u = rng.standard_normal(mesh.n_free)
        p = 3.0
        r1 = pv.plap_residual(mesh, pv.make_field(mesh, u), p).values
        r2 = pv.plap_residual(mesh, pv.make_field(mesh, 2.0 * u), p).values
        assert np.allclose(r2, 2.0 ** (p - 1) * r1, rtol=1e-12)

    def test_odd_symmetry(self):
        mesh = pv.build_interval_mesh(0.0, 1.0, 10)
        rng = np.random.default_rng(4)
        u = rng.standard_normal(mesh.n_free)
        rp = pv.plap_residual(mesh, pv.make_field(mesh, u), 2.5).values
        rm = pv.plap_residual(mesh, pv.make_field(mesh, -u), 2.5).values
        assert np.allclose(rm, -rp, atol=1e-13)


class TestLoadAndPairing:
    def test_hat_against_unit_density(self):
        # int of the midpoint hat is half its support length = 1/2
        mesh, u = unit_hat()
        h = pv.load_vector(mesh, 1.0)
        assert math.isclose(pv.pairing(h, u), 0.5, rel_tol=1e-13)

    def test_callable_density(self):
        mesh = pv.build_interval_mesh(0.0, 1.0, 64)
        h = pv.load_vector(mesh, lambda x: x[:, 0])
        u = pv.interpolate(mesh, lambda x: np.sin(np.pi * x[:, 0]))
        # int x sin(pi x) = 1/pi, P1 interpolation error O(h^2)
        assert math.isclose(pv.pairing(h, u), 1.0 / math.pi, rel_tol=1e-3)

    def test_pairing_is_bilinear(self):
        mesh = pv.build_interval_mesh(0.0, 1.0, 8)
        rng = np.random.default_rng(9)
        h = pv.make_dual(mesh, rng.standard_normal(mesh.n_free))
        u = pv.make_field(mesh, rng.standard_normal(mesh.n_free))
        v = pv.make_field(mesh, rng.standard_normal(mesh.n_free))
        s = pv.make_field(mesh, u.values + 2.0 * v.values)
        assert math.isclose(pv.pairing(h, s),
                            pv.pairing(h, u) + 2.0 * pv.pairing(h, v),
                            rel_tol=1e-12)

    def test_mismatched_mesh_rejected(self):
        m1 = pv.build_interval_mesh(0.0, 1.0, 4)
        m2 = pv.build_interval_mesh(0.0, 1.0, 8)
        h = pv.zero_dual(m1)
        u = pv.zero_field(m2)
        with pytest.raises(ValueError):
            pv.pairing(h, u)


class TestSupNorm:
    def test_nodal_max(self):
        mesh = pv.build_interval_mesh(0.0, 1.0, 6)
        vals = np.array([0.1, -2.5, 0.3, 0.0, 1.0])
        assert pv.sup_norm(mesh, pv.make_field(mesh, vals)) == 2.5

    def test_zero(self):
        mesh = pv.build_interval_mesh(0.0, 1.0, 6)
        assert pv.sup_norm(mesh, pv.zero_field(mesh)) == 0.0
