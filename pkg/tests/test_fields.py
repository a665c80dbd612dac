"""Field profile tests: exact derivatives, tails, the inverse transform, and
confinement screening."""

import math

import numpy as np
import pytest

from rieszeq.fields import (ConfinementReport, Exponential, LennardJones,
                            PowerLaw, PowerLog, PowerSink, confinement_check,
                            field_eval, field_eval_vec, field_from_dict,
                            field_limits, field_to_dict, q_eval, q_sym_terms,
                            sym_derive, sym_eval)
from rieszeq.specfun import DomainError
from rieszeq.sphere import RieszParams

GENERIC = [
    PowerLaw(1.0, 2.0),
    PowerLaw(2.0, 3.7),
    LennardJones(5.0, 0.95, -6.0, -12.0),
    LennardJones(1.0, 1.0, 3.0, 2.0),
    Exponential(1.0, 1.0, 2.0),
    Exponential(2.0, 0.7, 3.0),
    PowerLog(1.0, 2.0),
    PowerLog(0.5, 3.0),
    PowerSink(1.0, 2.0, 1.0),
    PowerSink(1.0, 3.0, 0.5),
]


@pytest.mark.parametrize("f", GENERIC, ids=lambda f: f"{type(f).__name__}")
def test_finite_difference_consistency(f):
    h = 1e-6
    for rho in (0.5, 1.0, 2.0, 10.0):
        if isinstance(f, PowerSink) and abs(rho - f.sink) < 4 * h:
            continue
        for order in (0, 1):
            fd = (field_eval(f, rho + h, order)
                  - field_eval(f, rho - h, order)) / (2.0 * h)
            an = field_eval(f, rho, order + 1)
            assert fd == pytest.approx(an, rel=2e-6, abs=1e-8)


def test_spec_point_values():
    assert field_eval(PowerLaw(1.0, 2.0), 4.0, 0) == 2.0
    lj = LennardJones(5.0, 19.0 / 20.0, -6.0, -12.0)
    # v'(1) = (gamma/2)(1 - eta)
    assert field_eval(lj, 1.0, 1) == pytest.approx(0.125, abs=1e-15)
    assert field_eval(PowerSink(1.0, 2.0, 1.0), 1.0, 0) == 0.0


def test_lj_inflection_and_minimum():
    g, eta, a, b = 1.0, 0.75, -6.0, -12.0
    f = LennardJones(g, eta, a, b)
    rho_infl = (eta * (2.0 - b) / (2.0 - a)) ** (2.0 / (a - b))
    assert field_eval(f, rho_infl * 0.99, 2) * field_eval(f, rho_infl * 1.01, 2) < 0
    assert field_eval(f, rho_infl, 2) == pytest.approx(0.0, abs=1e-12)
    rho_star = eta ** (2.0 / (a - b))
    v_star = -g * (a - b) / (a * b) * eta ** (a / (a - b))
    assert field_eval(f, rho_star, 1) == pytest.approx(0.0, abs=1e-14)
    assert field_eval(f, rho_star, 0) == pytest.approx(v_star, rel=1e-13)
    # local scan around the minimum
    for rho in (rho_star * 0.9, rho_star * 1.1):
        assert field_eval(f, rho, 0) > v_star


def test_extended_values_at_zero():
    assert field_eval(PowerLaw(1.0, -2.0), 0.0, 0) == -math.inf
    assert field_eval(LennardJones(5.0, 0.95, -6.0, -12.0), 0.0, 0) == math.inf
    assert field_eval(PowerLog(1.0, 2.0), 0.0, 0) == 0.0
    assert field_eval(PowerLog(1.0, 2.0), 0.0, 1) == -math.inf
    assert field_eval(Exponential(1.0, 2.0, 1.0), 0.0, 1) == math.inf


def test_sink_point():
    f = PowerSink(1.0, 2.0, 1.0)
    assert math.isnan(field_eval(f, 1.0, 1))    # one-sided slopes disagree
    assert field_eval(f, 1.0, 2) == 0.0         # (alpha/2)(alpha/2-1) = 0
    f3 = PowerSink(1.0, 3.0, 1.0)
    assert field_eval(f3, 1.0, 2) == math.inf   # both sides blow up positive


def test_field_limits():
    lim = field_limits(PowerLaw(1.0, 4.0))
    assert lim.v_at_zero == 0.0 and lim.v_at_infinity == math.inf
    lim = field_limits(LennardJones(5.0, 0.95, -6.0, -12.0))
    assert lim.v_at_zero == math.inf and lim.v_at_infinity == 0.0
    lim = field_limits(Exponential(1.0, 1.0, 2.0))
    assert lim.v_at_infinity == math.inf
    lim = field_limits(PowerSink(1.0, 2.0, 0.5))
    assert lim.v_at_zero == pytest.approx(0.125)


class TestInverseTransform:
    def test_power_law_closed_form(self):
        # q(kappa) = gamma R^{s+alpha} kappa^{-(s+alpha)/2}
        p = RieszParams(10, 2.0)
        f = PowerLaw(1.3, 4.0)
        R = 0.85
        for kap in (0.1, 0.5, 0.9):
            ref = 1.3 * R ** 6 * kap ** -3.0
            assert q_eval(f, p, R, kap) == pytest.approx(ref, rel=1e-13)

    def test_lj_unit_radius_form(self):
        # q(kappa) = gamma kappa (1 - eta kappa^{b/2 - 1}) with b = -beta - s
        p = RieszParams(8, 4.0)
        f = LennardJones(5.0, 0.95, -6.0, -12.0)
        for kap in (0.2, 0.6, 0.95):
            ref = 5.0 * kap * (1.0 - 0.95 * kap ** 3.0)
            assert q_eval(f, p, 1.0, kap) == pytest.approx(ref, rel=1e-13)
        assert q_eval(f, p, 1.0, 0.0) == 0.0

    def test_limit_at_zero_power_law(self):
        p = RieszParams(10, 2.0)
        assert q_eval(PowerLaw(1.0, 4.0), p, 1.0, 0.0) == math.inf

    def test_generic_orders_match_fd(self):
        p = RieszParams(10, 2.0)
        R = 0.9
        h = 1e-6
        for f in (Exponential(1.0, 1.0, 2.0), PowerLog(1.0, 2.0),
                  PowerSink(1.0, 2.0, 0.5), LennardJones(1.0, 1.0, 3.0, 2.0)):
            for kap in (0.3, 0.7):
                for order in (0, 1, 2):
                    fd = (q_eval(f, p, R, kap + h, order)
                          - q_eval(f, p, R, kap - h, order)) / (2.0 * h)
                    an = q_eval(f, p, R, kap, order + 1)
                    assert fd == pytest.approx(an, rel=3e-6, abs=1e-7)

    def test_sym_terms_match_generic(self):
        p = RieszParams(10, 2.0)
        R = 0.9
        f = PowerLog(1.0, 2.0)
        terms = q_sym_terms(f, 2.0, R)
        for kap in (0.3, 0.8):
            got = sym_eval(terms, kap)
            w = field_eval(f, R * R / kap, 1)
            ref = 2.0 * R ** 4 * kap ** -2.0 * w
            assert got == pytest.approx(ref, rel=1e-12)
        d1 = sym_derive(terms)
        h = 1e-7
        assert sym_eval(d1, 0.5) == pytest.approx(
            (sym_eval(terms, 0.5 + h) - sym_eval(terms, 0.5 - h)) / (2 * h),
            rel=1e-6)

    def test_domain(self):
        p = RieszParams(10, 2.0)
        with pytest.raises(DomainError):
            q_eval(PowerLaw(1.0, 4.0), p, 1.0, 1.0)
        with pytest.raises(DomainError):
            q_eval(PowerLaw(1.0, 4.0), p, -1.0, 0.5)


class TestConfinement:
    def test_power_growth(self):
        rep = confinement_check(PowerLaw(1.0, 4.0), RieszParams(10, 2.0))
        assert isinstance(rep, ConfinementReport)
        assert rep.clause == "a" and rep.satisfied

    def test_lj_decaying_not_guaranteed(self):
        rep = confinement_check(LennardJones(5.0, 0.95, -6.0, -12.0),
                                RieszParams(8, 4.0))
        assert rep.clause == "a" and not rep.satisfied

    def test_log_kernel_clause(self):
        rep = confinement_check(PowerLaw(1.0, 2.0), RieszParams(4, 0.0))
        assert rep.clause == "b" and rep.satisfied

    def test_negative_s_clause(self):
        assert confinement_check(PowerLaw(1.0, 2.0), RieszParams(3, -1.5)).satisfied
        assert not confinement_check(PowerLaw(1.0, 1.0), RieszParams(3, -1.5)).satisfied
        # boundary exponent: limit s*K compared against -2^{-s}
        assert not confinement_check(PowerLaw(2.0, 1.5), RieszParams(3, -1.5)).satisfied
        assert confinement_check(PowerLaw(3.0, 1.5), RieszParams(3, -1.5)).satisfied


class TestFieldJson:
    def test_round_trip(self):
        for f in GENERIC:
            assert field_from_dict(field_to_dict(f)) == f

    def test_unknown_type(self):
        with pytest.raises(DomainError):
            field_from_dict({"type": "quartic", "gamma": 1.0})

    def test_unknown_keys_rejected(self):
        with pytest.raises(DomainError):
            field_from_dict({"type": "power", "gamma": 1.0, "alpha": 2.0,
                             "extra": 3.0})

    def test_missing_keys(self):
        with pytest.raises(DomainError):
            field_from_dict({"type": "power", "gamma": 1.0})

    def test_non_numeric(self):
        with pytest.raises(DomainError):
            field_from_dict({"type": "power", "gamma": "one", "alpha": 2.0})


def test_vectorised_eval_matches_scalar():
    rho = np.array([0.3, 1.0, 2.5, 9.0])
    for f in GENERIC:
        for order in (0, 1):
            vec = field_eval_vec(f, rho, order)
            for i, x in enumerate(rho):
                ref = field_eval(f, float(x), order)
                assert vec[i] == pytest.approx(ref, rel=1e-13, abs=1e-300,
                                               nan_ok=True)


def test_constructor_validation():
    with pytest.raises(DomainError):
        PowerLaw(-1.0, 2.0)
    with pytest.raises(DomainError):
        LennardJones(1.0, 1.0, 2.0, 3.0)   # alpha must exceed beta
    with pytest.raises(DomainError):
        Exponential(1.0, -0.5, 2.0)
    with pytest.raises(DomainError):
        PowerSink(1.0, 2.0, -1.0)
