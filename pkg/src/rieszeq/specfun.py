"""Scalar special functions: log-gamma, digamma, Gauss 2F1 on [0, 1], and the
specific 3F2 that appears in the logarithmic sphere potential.

Evaluation strategy for 2F1: terminating series summed exactly when an upper
parameter is a non-positive integer; plain Pochhammer-ratio series for
z <= 0.9; for z in (0.9, 1) the 1-z connection formula (log-case variant when
c-a-b is an integer), with Taylor continuation of the hypergeometric ODE as
the fallback when the connection is ill-conditioned.  ``hyp2f1_euler_quad``
evaluates the Euler integral by adaptive Gauss-Legendre quadrature and serves
as an independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as _k

__all__ = [
    "SpecFunConfig",
    "Hyp2F1Args",
    "DomainError",
    "DivergentAtOne",
    "NoConvergence",
    "ln_gamma",
    "digamma",
    "hyp2f1",
    "hyp2f1_raw_series",
    "hyp2f1_euler_quad",
    "hyp3f2_log_kernel",
    "hyp3f2_log_quad",
]


class DomainError(ValueError):
    """Argument outside the operation's validity window."""


class DivergentAtOne(ArithmeticError):
    """2F1 at z=1 with c-a-b <= 0; callers must use a limit-form operation."""


class NoConvergence(RuntimeError):
    """Series and fallback evaluations both failed the tolerance."""


@dataclass(frozen=True)
class SpecFunConfig:
    rel_tol: float = 1e-12
    max_terms: int = 10_000
    quad_nodes: int = 256

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be positive")
        if self.max_terms < 64:
            raise DomainError("max_terms must be at least 64")


DEFAULT_CONFIG = SpecFunConfig()


@dataclass(frozen=True)
class Hyp2F1Args:
    a: float
    b: float
    c: float
    z: float

    def __post_init__(self):
        if self.c <= 1e-12 and abs(self.c - round(self.c)) < 1e-12:
            raise DomainError(f"c must not be a non-positive integer, got {self.c}")
        if not 0.0 <= self.z <= 1.0:
            raise DomainError(f"z must lie in [0, 1], got {self.z}")


def ln_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0."""
    if not x > 0.0:
        raise DomainError(f"ln_gamma requires x > 0, got {x}")
    return _k.ln_gamma_kernel(float(x))


def digamma(x: float) -> float:
    """psi_0(x) for x > 0."""
    if not x > 0.0:
        raise DomainError(f"digamma requires x > 0, got {x}")
    return _k.digamma_kernel(float(x))


def hyp2f1(args: Hyp2F1Args, cfg: SpecFunConfig = DEFAULT_CONFIG) -> float:
    """2F1(a, b; c; z) on z in [0, 1]."""
    val, status = _k.hyp2f1_kernel(args.a, args.b, args.c, args.z,
                                   cfg.rel_tol, cfg.max_terms)
    if status == 1:
        raise DivergentAtOne(
            f"2F1({args.a},{args.b};{args.c};1) diverges (c-a-b <= 0)")
    if status == 2:
        raise NoConvergence(f"2F1 failed to converge for {args}")
    return val


def hyp2f1_raw_series(a: float, b: float, c: float, z: float,
                      cfg: SpecFunConfig = DEFAULT_CONFIG) -> float:
    """Brute-force partial sum of the defining series (test oracle)."""
    val, status = _k.hyp2f1_raw_series(float(a), float(b), float(c), float(z),
                                       cfg.rel_tol, cfg.max_terms)
    if status != 0:
        raise NoConvergence(f"series did not settle for z={z}")
    return val


_LEGENDRE_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _leggauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    nodes = _LEGENDRE_CACHE.get(n)
    if nodes is None:
        from scipy.special import roots_legendre

        nodes = roots_legendre(n)
        _LEGENDRE_CACHE[n] = nodes
    return nodes


def _adaptive_gl(f, lo: float, hi: float, n0: int, rel_tol: float,
                 max_nodes: int = 1 << 15):
    n = max(n0, 16)
    prev = None
    while n <= max_nodes:
        x, w = _leggauss(n)
        t = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
        val = 0.5 * (hi - lo) * float(np.dot(w, f(t)))
        if prev is not None and abs(val - prev) <= rel_tol * max(1.0, abs(val)):
            return val, True
        prev = val
        n *= 2
    return prev, False


_JACOBI_CACHE: dict[tuple[int, float, float], tuple[np.ndarray, np.ndarray]] = {}


def jacobi_rule(n: int, alpha: float, beta: float) -> tuple[np.ndarray, np.ndarray]:
    """Cached Gauss-Jacobi nodes/weights for weight (1-t)^alpha (1+t)^beta."""
    key = (n, alpha, beta)
    nodes = _JACOBI_CACHE.get(key)
    if nodes is None:
        from scipy.special import roots_jacobi

        nodes = roots_jacobi(n, alpha, beta)
        _JACOBI_CACHE[key] = nodes
    return nodes


def _adaptive_beta_weighted(f, pb: float, pc: float, n0: int, rel_tol: float,
                            max_nodes: int = 1 << 13):
    """int_0^1 u^{pb-1} (1-u)^{pc-1} f(u) du for smooth f, pb, pc > 0.

    Splits at 1/2; each half uses a Gauss-Jacobi rule whose weight absorbs
    the endpoint power exactly, so convergence is spectral, with node
    doubling as the error estimate.
    """
    n = max(n0 // 8, 16)
    prev = None
    while n <= max_nodes:
        # left half: u = (t+1)/4, weight (1+t)^{pb-1}
        t, w = jacobi_rule(n, 0.0, pb - 1.0)
        u = (t + 1.0) / 4.0
        scale = 0.25 ** pb
        left = scale * float(np.dot(w, np.power(1.0 - u, pc - 1.0) * f(u)))
        # right half: u = (3+t)/4, weight (1-t)^{pc-1}
        t, w = jacobi_rule(n, pc - 1.0, 0.0)
        u = (3.0 + t) / 4.0
        scale = 0.25 ** pc
        right = scale * float(np.dot(w, np.power(u, pb - 1.0) * f(u)))
        val = left + right
        if prev is not None and abs(val - prev) <= rel_tol * max(1.0, abs(val)):
            return val, True
        prev = val
        n *= 2
    return prev, False


def hyp2f1_euler_quad(args: Hyp2F1Args, cfg: SpecFunConfig = DEFAULT_CONFIG) -> float:
    """2F1 via the Euler integral (independent quadrature route).

    Integrates over whichever upper parameter lies in (0, c); requires one to.
    """
    a, b, c, z = args.a, args.b, args.c, args.z
    if z == 1.0 and c - a - b <= 0.0:
        raise DivergentAtOne("Euler integral diverges at z=1 with c-a-b <= 0")
    if not (c > b > 0.0):
        if c > a > 0.0:
            a, b = b, a
        else:
            raise DomainError("Euler integral needs an upper parameter in (0, c)")
    coef = math.exp(_k.ln_gamma_kernel(c) - _k.ln_gamma_kernel(b)
                    - _k.ln_gamma_kernel(c - b))
    val, ok = _adaptive_beta_weighted(lambda u: np.power(1.0 - z * u, -a),
                                      b, c - b, cfg.quad_nodes, cfg.rel_tol * 10)
    if not ok:
        raise NoConvergence("Euler-integral quadrature did not settle")
    return coef * val


def hyp3f2_log_kernel(d: int, z: float, cfg: SpecFunConfig = DEFAULT_CONFIG) -> float:
    """3F2(1, 1, (d+1)/2; 2, d; z) for z in [0, 1]."""
    if d < 2:
        raise DomainError(f"d must be an integer >= 2, got {d}")
    if not 0.0 <= z <= 1.0:
        raise DomainError(f"z must lie in [0, 1], got {z}")
    val, status = _k.hyp3f2_log_kernel_kernel(int(d), float(z),
                                              cfg.rel_tol, cfg.max_terms)
    if status != 0:
        raise NoConvergence(f"3F2 log kernel failed for d={d}, z={z}")
    return val


def hyp3f2_log_quad(d: int, z: float, cfg: SpecFunConfig = DEFAULT_CONFIG) -> float:
    """The same 3F2 through its Euler-type integral (independent oracle).

    Uses  -Gamma(b0)/(z Gamma(a0) Gamma(b0-a0)) *
          int_0^1 t^{a0-2} (1-t)^{b0-a0-1} log(1-z t) dt
    with a0 = (d+1)/2, b0 = d.
    """
    if d < 2:
        raise DomainError(f"d must be an integer >= 2, got {d}")
    if z == 0.0:
        return 1.0
    if not 0.0 < z < 1.0:
        raise DomainError("quadrature oracle needs z in (0, 1)")
    a0 = (d + 1.0) / 2.0
    b0 = float(d)
    coef = -math.exp(_k.ln_gamma_kernel(b0) - _k.ln_gamma_kernel(a0)
                     - _k.ln_gamma_kernel(b0 - a0)) / z
    val, ok = _adaptive_beta_weighted(lambda t: np.log1p(-z * t),
                                      a0 - 1.0, b0 - a0, cfg.quad_nodes,
                                      cfg.rel_tol * 10)
    if not ok:
        raise NoConvergence("3F2 quadrature oracle did not settle")
    return coef * val
