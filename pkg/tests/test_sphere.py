"""Sphere potential/energy tests: constants, derivative ladder, quadrature."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rieszeq.specfun import DomainError
from rieszeq.sphere import (RieszParams, SphereEvalPoint, b_d, c_sd,
                            funk_hecke_oracle, h_eval, h_eval_lambda,
                            h_profile_grid, h_single_form, sphere_energy,
                            sphere_potential)


class TestConstants:
    def test_c_spot_values(self):
        assert c_sd(RieszParams(5, 0.0)) == 1.0
        assert c_sd(RieszParams(8, 4.0)) == 0.5
        # direct quotient: G(5) G(7) / (G(4) G(8)) = 24*720/(6*5040)
        assert c_sd(RieszParams(10, 2.0)) == pytest.approx(4.0 / 7.0, abs=1e-16)

    def test_c_window(self):
        with pytest.raises(DomainError):
            c_sd(RieszParams(4, 3.5))  # needs s < d - 1

    def test_c_positive_and_below_one(self):
        for d in range(3, 11):
            for s in np.linspace(0.05, d - 2.05, 9):
                c = c_sd(RieszParams(d, float(s)))
                assert 0.0 < c < 1.0

    def test_c_convex_in_s(self):
        # discrete second differences positive on a dense grid
        for d in (3, 6, 10):
            sgrid = np.linspace(-1.9, d - 1.1, 121)
            vals = [c_sd(RieszParams(d, float(s))) for s in sgrid]
            second = np.diff(vals, 2)
            assert np.all(second > 0)

    def test_b_spot_values(self):
        assert b_d(2) == pytest.approx(0.0, abs=1e-15)
        assert b_d(4) == pytest.approx(-0.25, abs=1e-15)
        # d=3 closed form: psi(3/2) - psi(2) halved equals 1/2 - log 2
        assert b_d(3) == pytest.approx(0.5 - math.log(2.0), rel=1e-14)


class TestProfile:
    def test_endpoints(self):
        p = RieszParams(8, 4.0)
        assert h_eval_lambda(p, 0.0) == pytest.approx(0.25, abs=1e-16)
        assert h_eval_lambda(p, 1.0) == pytest.approx(0.125, rel=1e-13)
        assert h_eval_lambda(p, 1.0, 1) == pytest.approx(-0.125, rel=1e-12)

    def test_log_endpoints(self):
        p = RieszParams(4, 0.0)
        assert h_eval_lambda(p, 0.0) == 0.0
        assert h_eval_lambda(p, 1.0) == pytest.approx(b_d(4), rel=1e-12)

    def test_eval_point_branch(self):
        pt = SphereEvalPoint(0.5)
        assert pt.branch == "inside"
        assert SphereEvalPoint(1.0).branch == "at_one"
        with pytest.raises(DomainError):
            SphereEvalPoint(2.0, "inside")
        p = RieszParams(8, 4.0)
        assert h_eval(p, pt) == h_eval_lambda(p, 0.5)

    def test_window_enforcement(self):
        with pytest.raises(DomainError):
            h_eval_lambda(RieszParams(4, 3.2), 0.5)       # s >= d-1
        with pytest.raises(DomainError):
            h_eval_lambda(RieszParams(4, 2.5), 0.5, 1)    # s >= d-2

    def test_branch_agreement_at_one(self):
        # both piecewise forms and the single closed form must agree at the
        # sphere itself; the approach tolerance respects the (1-lambda)^q
        # cusp with q = d - s - 1 < 1 close to the window edge
        eps = 1e-9
        for d in (2, 3, 4, 8, 10):
            for s in (-1.5, -0.5, 0.5, d - 2.0, d - 1.2):
                if not -2.0 < s < d - 1.0:
                    continue
                p = RieszParams(d, float(s))
                at = h_eval_lambda(p, 1.0)
                single = h_single_form(p, 1.0)
                assert single == pytest.approx(at, rel=1e-9)
                cusp = min(1.0, d - s - 1.0)
                tol = max(1e-9, 100.0 * eps ** cusp)
                below = h_eval_lambda(p, 1.0 - eps)
                above = h_eval_lambda(p, 1.0 + eps)
                assert abs(below - at) <= tol * max(1.0, abs(at))
                assert abs(above - at) <= tol * max(1.0, abs(at))

    def test_single_form_agreement(self):
        for (d, s) in [(8, 4.0), (4, 0.5), (3, -1.5), (10, 2.0)]:
            p = RieszParams(d, s)
            for lam in (0.25, 1.0, 4.0):
                a = h_single_form(p, lam)
                b = h_eval_lambda(p, lam)
                assert a == pytest.approx(b, rel=1e-9)

    @pytest.mark.parametrize("d,s", [(10, 2.0), (4, 0.5), (3, -1.5), (4, 0.0)])
    def test_derivative_ladder_fd(self, d, s):
        p = RieszParams(d, s)
        h = 1e-5
        for lam in (0.3, 0.7, 1.6, 3.0):
            for order in (0, 1):
                fd = (h_eval_lambda(p, lam + h, order)
                      - h_eval_lambda(p, lam - h, order)) / (2.0 * h)
                an = h_eval_lambda(p, lam, order + 1)
                assert fd == pytest.approx(an, rel=1e-6, abs=1e-8)

    def test_blowup_signs(self):
        # second derivative explodes at lambda=1 once the window closes
        p = RieszParams(4, 1.5)
        v = h_eval_lambda(p, 1.0, 2)
        assert math.isinf(v)
        near = h_eval_lambda(p, 1.0 - 1e-8, 2)
        assert (v > 0) == (near > 0)
        out = h_eval_lambda(p, 1.0 + 1e-8, 2)
        assert (v > 0) == (out > 0)

    @settings(max_examples=40, deadline=None, derandomize=True)
    @given(ri=st.floats(0.2, 5.0), rj=st.floats(0.2, 5.0))
    def test_mutual_energy_symmetry(self, ri, rj):
        p = RieszParams(7, 2.5)
        lhs = rj ** (-p.s) * h_eval_lambda(p, (ri / rj) ** 2)
        rhs = ri ** (-p.s) * h_eval_lambda(p, (rj / ri) ** 2)
        assert lhs == pytest.approx(rhs, rel=1e-10)

    def test_mutual_energy_symmetry_log(self):
        p = RieszParams(4, 0.0)
        for (ri, rj) in [(0.5, 1.5), (2.0, 0.7), (1.0, 3.0)]:
            lhs = -math.log(rj) + h_eval_lambda(p, (ri / rj) ** 2)
            rhs = -math.log(ri) + h_eval_lambda(p, (rj / ri) ** 2)
            assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-12)


class TestPotentialAndEnergy:
    def test_center_values(self):
        p = RieszParams(8, 4.0)
        assert sphere_potential(p, 0.0, 2.0) == pytest.approx(2.0 ** -4 / 4.0)
        p0 = RieszParams(3, 0.0)
        assert sphere_potential(p0, 0.0, 2.0) == pytest.approx(-math.log(2.0))

    def test_energy_values(self):
        assert sphere_energy(RieszParams(8, 4.0), 1.0) == pytest.approx(0.125)
        assert sphere_energy(RieszParams(2, 0.0), 1.0) == pytest.approx(0.0, abs=1e-15)
        p = RieszParams(6, 1.5)
        assert sphere_energy(p, 2.0) == pytest.approx(
            2.0 ** -1.5 * sphere_energy(p, 1.0), rel=1e-14)

    def test_newton_constancy(self):
        # Coulomb case d=3, s=d-2: interior potential is constant
        p = RieszParams(3, 1.0)
        assert funk_hecke_oracle(p, 0.5, 1.0) == pytest.approx(1.0, abs=1e-10)
        assert sphere_potential(p, 0.5, 1.0) == pytest.approx(1.0, abs=1e-13)

    def test_oracle_center(self):
        p = RieszParams(5, 1.2)
        assert funk_hecke_oracle(p, 0.0, 0.7) == pytest.approx(0.7 ** -1.2 / 1.2)

    def test_oracle_on_sphere_singular(self):
        p = RieszParams(8, 4.0)
        got = funk_hecke_oracle(p, 1.0, 1.0)
        assert got == pytest.approx(0.125, rel=1e-6)

    def test_quadrature_equivalence_sample(self):
        # a slice of the acceptance grid, with an off-unit radius
        for (d, s) in [(3, 1.0), (4, 0.0), (10, 8.8), (2, 0.5)]:
            p = RieszParams(d, s)
            for lam in (0.1, 0.99, 1.01, 10.0):
                xn = math.sqrt(lam) * 1.3
                ref = sphere_potential(p, xn, 1.3)
                got = funk_hecke_oracle(p, xn, 1.3)
                assert got == pytest.approx(ref, rel=1e-8, abs=1e-12)


def test_grid_matches_scalar():
    for (d, s) in [(10, 2.0), (5, 1.7), (4, 0.0)]:
        p = RieszParams(d, s)
        lam = np.concatenate([np.geomspace(1e-3, 1e3, 41), [0.0, 1.0]])
        grid = h_profile_grid(p, lam)
        for i, x in enumerate(lam):
            assert grid[i] == pytest.approx(h_eval_lambda(p, float(x)),
                                            rel=1e-11, abs=1e-13)


def test_params_validation():
    with pytest.raises(DomainError):
        RieszParams(1, 0.5)
    with pytest.raises(DomainError):
        RieszParams(4, -2.0)
    with pytest.raises(DomainError):
        RieszParams(4, 4.0)
