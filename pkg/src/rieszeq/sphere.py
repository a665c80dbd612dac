"""Potential and energy of the uniform probability measure on a sphere under
Riesz kernels, the constants that govern them, and a Funk-Hecke quadrature
oracle used as independent ground truth.

Conventions: d >= 2 is the ambient dimension, s the kernel exponent with
-2 < s < d, lambda = ||x||^2 / R^2.  The profile h(lambda) is the potential of
the unit-radius sphere measure; operations tighten the (d, s) window as their
formulas require (h needs s < d-1, the first derivative s < d-2, and so on).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels as _k
from .backend import USE_NUMBA
from .specfun import (DEFAULT_CONFIG, DivergentAtOne, DomainError, Hyp2F1Args,
                      NoConvergence, SpecFunConfig, hyp2f1, jacobi_rule)

__all__ = [
    "RieszParams",
    "SphereEvalPoint",
    "QuadratureFailure",
    "c_sd",
    "b_d",
    "h_eval",
    "h_eval_lambda",
    "h_single_form",
    "sphere_potential",
    "sphere_energy",
    "funk_hecke_oracle",
    "h_profile_grid",
]


class QuadratureFailure(RuntimeError):
    """Funk-Hecke quadrature failed its error target at the node cap."""


@dataclass(frozen=True)
class RieszParams:
    d: int
    s: float

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise DomainError(f"d must be an integer >= 2, got {self.d}")
        if not -2.0 < self.s < self.d:
            raise DomainError(f"s must satisfy -2 < s < d, got s={self.s}, d={self.d}")


@dataclass(frozen=True)
class SphereEvalPoint:
    lam: float
    branch: str = ""

    def __post_init__(self):
        if self.lam < 0:
            raise DomainError(f"lambda must be >= 0, got {self.lam}")
        expected = "inside" if self.lam < 1 else ("at_one" if self.lam == 1 else "outside")
        if self.branch == "":
            object.__setattr__(self, "branch", expected)
        elif self.branch != expected:
            raise DomainError(f"branch {self.branch!r} inconsistent with lambda={self.lam}")


def _half_gamma_fraction(two_x: int) -> tuple[Fraction, int]:
    """Gamma(two_x / 2) as (rational, power of sqrt(pi)); two_x >= 1."""
    if two_x % 2 == 0:
        return Fraction(math.factorial(two_x // 2 - 1)), 0
    n = (two_x - 1) // 2  # Gamma(n + 1/2) = (2n)! / (4^n n!) sqrt(pi)
    return Fraction(math.factorial(2 * n), 4 ** n * math.factorial(n)), 1


def _c_sd_exact(d: int, s: int) -> Fraction:
    num1, p1 = _half_gamma_fraction(d)
    num2, p2 = _half_gamma_fraction(2 * (d - s - 1))
    den1, p3 = _half_gamma_fraction(d - s)
    den2, p4 = _half_gamma_fraction(2 * d - s - 2)
    if p1 + p2 != p3 + p4:
        raise ArithmeticError("sqrt(pi) factors do not cancel")
    return num1 * num2 / (den1 * den2)


def c_sd(p: RieszParams, cfg: SpecFunConfig = DEFAULT_CONFIG) -> float:
    """Value of the sphere potential profile at its own radius, times s.

    Gamma-quotient evaluation, cross-checked against the hypergeometric sum
    at z=1.  Exact rational arithmetic when the Gamma arguments land on
    integers and half-integers with cancelling sqrt(pi) factors.
    """
    d, s = p.d, p.s
    if not s < d - 1:
        raise DomainError(f"c_sd needs s < d - 1, got s={s}, d={d}")
    si = round(s)
    if s == si and (si % 2 == 0 or d % 2 == 1):
        val = float(_c_sd_exact(d, int(si)))
    else:
        val = math.exp(_k.ln_gamma_kernel(d / 2.0) + _k.ln_gamma_kernel(d - s - 1.0)
                       - _k.ln_gamma_kernel((d - s) / 2.0)
                       - _k.ln_gamma_kernel(d - s / 2.0 - 1.0))
    check = hyp2f1(Hyp2F1Args(s / 2.0, (2.0 + s - d) / 2.0, d / 2.0, 1.0), cfg)
    if abs(val - check) > 1e-10 * max(1.0, abs(val)):
        raise ArithmeticError(
            f"c_sd cross-check failed: gamma form {val!r} vs series form {check!r}")
    return val


def b_d(d: int) -> float:
    """Logarithmic-kernel analogue of c_sd; two digamma forms cross-checked."""
    if int(d) != d or d < 2:
        raise DomainError(f"d must be an integer >= 2, got {d}")
    val = (-math.log(2.0) + 0.5 * _k.digamma_kernel(d - 1.0)
           - 0.5 * _k.digamma_kernel((d - 1.0) / 2.0))
    alt = 0.5 * (_k.digamma_kernel(d / 2.0) - _k.digamma_kernel(d - 1.0))
    if abs(val - alt) > 1e-12 * max(1.0, abs(val)):
        raise ArithmeticError(f"b_d cross-check failed: {val!r} vs {alt!r}")
    return val


def _divergence_sign(a: float, b: float, c: float) -> float:
    """Sign of the 2F1 blow-up as z -> 1- when c-a-b <= 0 (non-terminating)."""
    q = c - a - b
    if q < 0.0:
        ratio_sign = (_k.gamma_sign(c) * _k.gamma_sign(a + b - c)
                      / (_k.gamma_sign(a) * _k.gamma_sign(b)))
    else:  # q == 0, logarithmic blow-up
        ratio_sign = _k.gamma_sign(a + b) / (_k.gamma_sign(a) * _k.gamma_sign(b))
    return 1.0 if ratio_sign > 0 else -1.0


def _h_inside_prefactor(d: int, s: float, order: int) -> float:
    pref = (2.0 + s - d) / (2.0 ** order * d)
    for j in range(1, order):
        pref *= (2.0 + 2.0 * j + s - d) * (s + 2.0 * j) / (d + 2.0 * j)
    return pref


def _h_outside_prefactor(d: int, s: float, lam: float, order: int) -> float:
    pref = (-1.0) ** order / 2.0 ** order * lam ** (-s / 2.0 - order)
    for j in range(1, order):
        pref *= (s + 2.0 * j)
    return pref


def h_eval_lambda(p: RieszParams, lam: float, order: int = 0,
                  cfg: SpecFunConfig = DEFAULT_CONFIG) -> float:
    """h^(order)(lambda); +/-inf extended-real returns at blow-up points."""
    d, s = p.d, float(p.s)
    if lam < 0:
        raise DomainError(f"lambda must be >= 0, got {lam}")
    if order < 0:
        raise DomainError("order must be >= 0")
    if order == 0:
        if not s < d - 1:
            raise DomainError(f"h needs s < d - 1, got s={s}, d={d}")
        if s == 0.0:
            val, st = _k.h_log_profile_kernel(d, lam, cfg.rel_tol, cfg.max_terms)
        else:
            val, st = _k.h_profile_kernel(d, s, lam, cfg.rel_tol, cfg.max_terms)
        if st != 0:
            raise NoConvergence(f"h evaluation failed at lambda={lam}")
        return val
    if not s < d - 2:
        raise DomainError(f"h derivatives need s < d - 2, got s={s}, d={d}")
    val, st = _k.h_deriv_kernel(d, s, lam, order, cfg.rel_tol, cfg.max_terms)
    if st == 0:
        return val
    if st == 1:
        # blow-up at lambda = 1; sign from the connection-formula prefactor
        if lam <= 1.0:
            a = s / 2.0 + order
            b = (2.0 + s - d) / 2.0 + order
            c = d / 2.0 + order
            pref = _h_inside_prefactor(d, s, order)
        else:
            a = s / 2.0 + order
            b = (2.0 + s - d) / 2.0
            c = d / 2.0
            pref = _h_outside_prefactor(d, s, lam, order)
        return math.copysign(math.inf, pref * _divergence_sign(a, b, c))
    raise NoConvergence(f"h derivative failed at lambda={lam}, order={order}")


def h_eval(p: RieszParams, pt: SphereEvalPoint, order: int = 0,
           cfg: SpecFunConfig = DEFAULT_CONFIG) -> float:
    return h_eval_lambda(p, pt.lam, order, cfg)


def h_single_form(p: RieszParams, lam: float,
                  cfg: SpecFunConfig = DEFAULT_CONFIG) -> float:
    """The (1 + sqrt(lambda)) closed form, kept for cross-checks only."""
    d, s = p.d, float(p.s)
    if not s < d - 1:
        raise DomainError(f"h needs s < d - 1, got s={s}, d={d}")
    if s == 0.0:
        val, st = _k.h_log_profile_kernel(d, lam, cfg.rel_tol, cfg.max_terms)
        if st != 0:
            raise NoConvergence("log-profile evaluation failed")
        return val
    r = math.sqrt(lam)
    z = 4.0 * r / (1.0 + r) ** 2
    if z > 1.0:
        z = 1.0
    f = hyp2f1(Hyp2F1Args(s / 2.0, (d - 1.0) / 2.0, d - 1.0, z), cfg)
    return (1.0 + r) ** (-s) / s * f


def sphere_potential(p: RieszParams, x_norm: float, R: float,
                     cfg: SpecFunConfig = DEFAULT_CONFIG) -> float:
    """Potential of the uniform sphere measure of radius R at distance x_norm."""
    if R <= 0:
        raise DomainError(f"R must be > 0, got {R}")
    if x_norm < 0:
        raise DomainError(f"x_norm must be >= 0, got {x_norm}")
    lam = (x_norm / R) ** 2
    if p.s == 0.0:
        return -math.log(R) + h_eval_lambda(p, lam, 0, cfg)
    return R ** (-p.s) * h_eval_lambda(p, lam, 0, cfg)


def sphere_energy(p: RieszParams, R: float,
                  cfg: SpecFunConfig = DEFAULT_CONFIG) -> float:
    """Self energy of the uniform sphere measure of radius R."""
    if R <= 0:
        raise DomainError(f"R must be > 0, got {R}")
    if p.s == 0.0:
        return -math.log(R) + b_d(p.d)
    return R ** (-p.s) / p.s * c_sd(p, cfg)


# ---------------------------------------------------------------------------
# Funk-Hecke quadrature oracle


def _kernel_factor(rho: float, s: float, t: np.ndarray) -> np.ndarray:
    q = 1.0 + rho * rho - 2.0 * rho * t
    if s == 0.0:
        return -0.5 * np.log(q)
    return np.power(q, -s / 2.0) / s


def funk_hecke_oracle(p: RieszParams, x_norm: float, R: float,
                      nodes: int = 64) -> float:
    """sphere_potential through the 1-D Funk-Hecke integral.

    Gauss-Jacobi abscissae for the (1-t^2)^((d-3)/2) weight; near the sphere
    the integrable endpoint singularity is handled by splitting at t=0 and
    substituting t = 1-u^2 on the right half, with node doubling throughout.
    """
    d, s = p.d, float(p.s)
    if not s < d - 1:
        raise DomainError(f"oracle needs s < d - 1, got s={s}, d={d}")
    if R <= 0 or x_norm < 0:
        raise DomainError("R must be > 0 and x_norm >= 0")
    if nodes < 16:
        raise DomainError("nodes must be >= 16")
    rho = x_norm / R
    scale = 1.0 if s == 0.0 else R ** (-s)
    shift = -math.log(R) if s == 0.0 else 0.0
    if rho == 0.0:
        return shift + scale * (0.0 if s == 0.0 else 1.0 / s)
    a = (d - 3.0) / 2.0
    # 1/tau = B(1/2, (d-1)/2)
    log_tau = (_k.ln_gamma_kernel(d / 2.0) - _k.ln_gamma_kernel(0.5)
               - _k.ln_gamma_kernel((d - 1.0) / 2.0))
    tau = math.exp(log_tau)

    if rho == 1.0 and s != 0.0:
        # kernel factor is (2(1-t))^{-s/2}/s: fold (1-t)^{-s/2} into the weight
        val = _integral_weighted_exact(d, s, a, nodes)
    elif rho == 1.0:
        val = _integral_log_at_one(a, d, nodes)
    elif abs(rho - 1.0) < 0.5:
        val = _integral_split(rho, s, a, d, nodes)
    else:
        val = _integral_whole(rho, s, a, nodes)
    return shift + scale * tau * val


_MAX_QUAD_NODES = 1 << 13


def _double_until(evaluate, n0: int, what: str) -> float:
    """Node-doubling driver: tight stop criterion, relaxed acceptance at the cap."""
    n = max(n0, 16)
    prev = None
    delta = math.inf
    val = math.nan
    while n <= _MAX_QUAD_NODES:
        val = evaluate(n)
        if prev is not None:
            delta = abs(val - prev)
            if delta <= max(1e-10 * abs(val), 5e-15):
                return val
        prev = val
        n *= 2
    if delta <= 1e-8 * max(1.0, abs(val)):
        return val
    raise QuadratureFailure(f"{what} stalled (last delta {delta:.3e})")


def _integral_whole(rho: float, s: float, a: float, n0: int) -> float:
    def evaluate(n: int) -> float:
        t, w = jacobi_rule(n, a, a)
        return float(np.dot(w, _kernel_factor(rho, s, t)))

    return _double_until(evaluate, n0, f"whole-interval rule at rho={rho}")


def _integral_split(rho: float, s: float, a: float, d: int, n0: int) -> float:
    def evaluate(n: int) -> float:
        # left half [-1, 0]: weight (1+t)^a, the (1-t)^a factor is smooth
        t, w = jacobi_rule(n, 0.0, a)
        tl = (t - 1.0) / 2.0
        left = 0.5 ** (a + 1.0) * float(
            np.dot(w, np.power(1.0 - tl, a) * _kernel_factor(rho, s, tl)))
        # right half: t = 1 - u^2, u in (0, 1]; u^{2a+1} = u^{d-2}
        u, wu = jacobi_rule(n, 0.0, float(d - 2))  # weight u^{d-2} on [-1,1]
        uu = (u + 1.0) / 2.0
        tr = 1.0 - uu * uu
        right = 2.0 * 0.5 ** (d - 1.0) * float(
            np.dot(wu, np.power(2.0 - uu * uu, a) * _kernel_factor(rho, s, tr)))
        return left + right

    return _double_until(evaluate, n0, f"split rule at rho={rho}")


def _integral_log_at_one(a: float, d: int, n0: int) -> float:
    """rho = 1, s = 0: log factor is -log(2(1-t))/2, log-singular at t = 1.

    Left half by the usual Jacobi rule; on the right half t = 1 - u^2 and then
    u = exp(-v), which turns the log endpoint into a smooth exponentially
    decaying integrand on [0, V].
    """
    vmax = 45.0 / max(d - 1, 1)

    def evaluate(n: int) -> float:
        t, w = jacobi_rule(n, 0.0, a)
        tl = (t - 1.0) / 2.0
        left = 0.5 ** (a + 1.0) * float(
            np.dot(w, np.power(1.0 - tl, a) * (-0.5) * np.log(2.0 * (1.0 - tl))))
        x, wx = _leggauss_pair(n)
        v = 0.5 * vmax * (x + 1.0)
        u = np.exp(-v)
        integ = np.exp(-(d - 1.0) * v) * np.power(2.0 - u * u, a) * (math.log(2.0) - 2.0 * v)
        right = -0.5 * vmax * float(np.dot(wx, integ))
        return left + right

    return _double_until(evaluate, n0, "log rule at rho=1")


def _leggauss_pair(n: int):
    from .specfun import _leggauss

    return _leggauss(n)


def _integral_weighted_exact(d: int, s: float, a: float, n0: int) -> float:
    """rho = 1, s != 0: integrand is (1-t)^{a-s/2} (1+t)^a 2^{-s/2}/s."""
    def evaluate(n: int) -> float:
        t, w = jacobi_rule(n, a - s / 2.0, a)
        g = np.full_like(t, 2.0 ** (-s / 2.0) / s)
        return float(np.dot(w, g))

    return _double_until(evaluate, n0, "weighted rule at rho=1")


# ---------------------------------------------------------------------------
# grid evaluation (kernel-matrix assembly support)


def h_profile_grid(p: RieszParams, lam: np.ndarray,
                   cfg: SpecFunConfig = DEFAULT_CONFIG) -> np.ndarray:
    """h(lambda) on an array of lambda values (order 0 only).

    Numba backend: compiled scalar loop.  Numpy backend: vectorised series
    with the same branch structure, looping back to the scalar kernel for the
    handful of values the vector path cannot settle.
    """
    d, s = p.d, float(p.s)
    if not s < d - 1:
        raise DomainError(f"h needs s < d - 1, got s={s}, d={d}")
    lam = np.asarray(lam, dtype=np.float64)
    out = np.empty_like(lam)
    flat = lam.ravel()
    res = out.ravel()
    if USE_NUMBA:
        _k.h_grid_loop(d, s, flat, cfg.rel_tol, cfg.max_terms, res)
        if np.isnan(res).any():
            raise NoConvergence("h grid evaluation failed for some lambda")
        return out
    if s == 0.0:
        for i in range(flat.size):
            val, st = _k.h_log_profile_kernel(d, flat[i], cfg.rel_tol, cfg.max_terms)
            if st != 0:
                raise NoConvergence(f"h grid failed at lambda={flat[i]}")
            res[i] = val
        return out
    a = s / 2.0
    b = (2.0 + s - d) / 2.0
    c = d / 2.0
    z = np.where(flat <= 1.0, flat, 1.0 / np.maximum(flat, 1e-300))
    fvals = _hyp2f1_fixed_vec(a, b, c, z, cfg)
    res[:] = np.where(flat <= 1.0, fvals / s,
                      np.power(np.maximum(flat, 1e-300), -s / 2.0) * fvals / s)
    return out


def _hyp2f1_fixed_vec(a: float, b: float, c: float, z: np.ndarray,
                      cfg: SpecFunConfig) -> np.ndarray:
    """2F1 with fixed parameters over an array of z in [0, 1] (numpy path)."""
    out = np.empty_like(z)
    nterm = _k._terminating_order(a, b)
    if nterm >= 0:
        term = np.ones_like(z)
        acc = np.ones_like(z)
        for k in range(nterm):
            term = term * ((a + k) * (b + k) / ((c + k) * (k + 1.0))) * z
            acc += term
        return acc
    series = z <= 0.9
    if np.any(series):
        zs = z[series]
        term = np.ones_like(zs)
        acc = np.ones_like(zs)
        hits = 0
        for k in range(cfg.max_terms):
            term = term * ((a + k) * (b + k) / ((c + k) * (k + 1.0))) * zs
            acc += term
            if np.all(np.abs(term) <= cfg.rel_tol * np.abs(acc)):
                hits += 1
                if hits >= 3:
                    break
            else:
                hits = 0
        else:
            raise NoConvergence("vectorised 2F1 series failed to converge")
        out[series] = acc
    rest = ~series
    if np.any(rest):
        idx = np.nonzero(rest)[0]
        for i in idx:
            val, st = _k.hyp2f1_kernel(a, b, c, float(z[i]), cfg.rel_tol, cfg.max_terms)
            if st == 1:
                raise DivergentAtOne("2F1 grid hit a divergent z=1 entry")
            if st == 2:
                raise NoConvergence("2F1 grid entry failed to converge")
            out[i] = val
    return out


