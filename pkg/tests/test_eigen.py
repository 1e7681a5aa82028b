"""First eigenpair of the Dirichlet p-Laplacian on intervals and rectangles."""
from __future__ import annotations

import math

import numpy as np
import pytest

import plapvar as pv


def interval_lambda1(p):
    """Closed form for the first eigenvalue on the unit interval."""
    return (p - 1.0) * (2.0 * math.pi / (p * math.sin(math.pi / p))) ** p


class TestLinearCase:
    def test_unit_interval_value(self):
        mesh = pv.build_interval_mesh(0.0, 1.0, 512)
        eig = pv.first_eigenpair(mesh, 2.0)
        assert abs(eig.lambda1 - math.pi**2) / math.pi**2 < 5e-3

    def test_discrete_sine_is_exact(self):
        # the interpolated sine is already the discrete minimizer, so the
        # iteration accepts it immediately
        mesh = pv.build_interval_mesh(0.0, 1.0, 128)
        eig = pv.first_eigenpair(mesh, 2.0)
        assert eig.iterations == 0
        assert math.isclose(eig.lambda1, 9.870099859294854, rel_tol=1e-12)

    def test_eigenfunction_shape(self):
        mesh = pv.build_interval_mesh(0.0, 1.0, 512)
        eig = pv.first_eigenpair(mesh, 2.0)
        x = mesh.free_coordinates()[:, 0]
        target = math.sqrt(2.0) * np.sin(math.pi * x)
        diff = np.max(np.abs(eig.phi1.values - target))
        assert diff < 0.01 * np.max(np.abs(target))

    def test_scaled_interval(self):
        mesh = pv.build_interval_mesh(0.0, 2.0, 256)
        eig = pv.first_eigenpair(mesh, 2.0)
        assert abs(eig.lambda1 - math.pi**2 / 4.0) / (math.pi**2 / 4.0) < 5e-3

    def test_unit_square(self):
        mesh = pv.build_rectangle_mesh(0.0, 1.0, 0.0, 1.0, 32, 32)
        eig = pv.first_eigenpair(mesh, 2.0)
        assert abs(eig.lambda1 - 2.0 * math.pi**2) / (2.0 * math.pi**2) < 0.02


class TestNonlinearCase:
    def test_p3_mesh_ladder(self):
        exact = interval_lambda1(3.0)
        values = []
        for n in (64, 128, 256):
            mesh = pv.build_interval_mesh(0.0, 1.0, n)
            values.append(pv.first_eigenpair(mesh, 3.0).lambda1)
        assert values[0] > values[1] > values[2] > exact
        assert (values[2] - exact) / exact < 1e-3

    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
    def test_closed_form_tracks(self, p):
        mesh = pv.build_interval_mesh(0.0, 1.0, 128)
        eig = pv.first_eigenpair(mesh, p)
        exact = interval_lambda1(p)
        assert abs(eig.lambda1 - exact) / exact < 5e-3

    def test_p2_closed_form_is_pi_squared(self):
        assert math.isclose(interval_lambda1(2.0), math.pi**2, rel_tol=1e-15)


class TestInvariants:
    @pytest.mark.parametrize("p,mesh", [
        (2.0, pv.build_interval_mesh(0.0, 1.0, 64)),
        (3.0, pv.build_interval_mesh(0.0, 1.0, 64)),
        (1.5, pv.build_interval_mesh(0.0, 1.0, 64)),
        (2.5, pv.build_rectangle_mesh(0.0, 1.0, 0.0, 1.0, 12, 12)),
    ])
    def test_positivity_normalization_residual(self, p, mesh):
        eig = pv.first_eigenpair(mesh, p)
        assert (eig.phi1.values > 0.0).all()
        assert math.isclose(pv.lp_integral(mesh, eig.phi1, p), 1.0, rel_tol=1e-10)
        assert eig.residual < 1e-6
        assert math.isclose(pv.rayleigh_quotient(mesh, eig.phi1, p),
                            eig.lambda1, rel_tol=1e-12)

    def test_rayleigh_lower_bound(self):
        # lambda1 minimizes the quotient, so any other field scores higher
        mesh = pv.build_interval_mesh(0.0, 1.0, 64)
        p = 2.5
        eig = pv.first_eigenpair(mesh, p)
        rng = np.random.default_rng(8)
        for _ in range(5):
            u = pv.make_field(mesh, rng.standard_normal(mesh.n_free))
            assert pv.rayleigh_quotient(mesh, u, p) >= eig.lambda1 - 1e-10

    def test_deterministic(self):
        mesh = pv.build_interval_mesh(0.0, 1.0, 64)
        a = pv.first_eigenpair(mesh, 3.0, seed=5)
        b = pv.first_eigenpair(mesh, 3.0, seed=5)
        assert a.lambda1 == b.lambda1
        assert np.array_equal(a.phi1.values, b.phi1.values)

    def test_failure_carries_last_iterate(self):
        mesh = pv.build_interval_mesh(0.0, 1.0, 64)
        with pytest.raises(pv.EigenConvergenceError) as exc:
            pv.first_eigenpair(mesh, 3.0, max_iter=3)
        result = exc.value.result
        assert result.iterations == 3
        assert result.residual > 0.0
        assert result.phi1.values.shape == (mesh.n_free,)

    def test_rayleigh_quotient_zero_rejected(self):
        mesh = pv.build_interval_mesh(0.0, 1.0, 8)
        with pytest.raises(ValueError):
            pv.rayleigh_quotient(mesh, pv.zero_field(mesh), 2.0)
