"""Radial external-field profiles v(rho), rho = ||x||^2, with exact
derivatives of every order, symbolic limit/tail descriptors, the inverse
coordinate transform q(kappa) = 2 R^{s+2} kappa^{-s/2-1} v'(R^2 / kappa), and
confinement screening.

Derivatives are closed-form throughout: power-type profiles differentiate via
falling factorials, the log-carrying profile via a two-coefficient recurrence,
and the exponential profile via the complete-Bell recurrence.  Limits at 0 and
infinity are computed from per-variant leading-term records, never by numeric
extrapolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb, factorial, inf, isinf, nan
from typing import Union

from .specfun import DomainError

__all__ = [
    "PowerLaw",
    "LennardJones",
    "Exponential",
    "PowerLog",
    "PowerSink",
    "RadialField",
    "FieldLimits",
    "TailRecord",
    "OrderUnavailable",
    "LimitUndefined",
    "ConfinementReport",
    "field_eval",
    "field_limits",
    "q_eval",
    "confinement_check",
    "field_from_dict",
    "field_to_dict",
    "SymTerm",
    "v_sym_terms",
    "q_sym_terms",
    "sym_eval",
    "sym_derive",
    "sym_sign_on",
]


class OrderUnavailable(ValueError):
    """Requested derivative order beyond the profile's smoothness."""


class LimitUndefined(ArithmeticError):
    """The requested limit does not exist as an extended real."""


@dataclass(frozen=True)
class PowerLaw:
    """v(rho) = (gamma/alpha) rho^(alpha/2)."""
    gamma: float
    alpha: float

    def __post_init__(self):
        if not self.gamma > 0:
            raise DomainError("gamma must be > 0")
        if self.alpha == 0:
            raise DomainError("alpha must be nonzero")


@dataclass(frozen=True)
class LennardJones:
    """v(rho) = (gamma/alpha) rho^(alpha/2) - (gamma*eta/beta) rho^(beta/2)."""
    gamma: float
    eta: float
    alpha: float
    beta: float

    def __post_init__(self):
        if not self.gamma > 0 or not self.eta > 0:
            raise DomainError("gamma and eta must be > 0")
        if self.alpha == 0 or self.beta == 0:
            raise DomainError("alpha and beta must be nonzero")
        if not self.alpha > self.beta:
            raise DomainError("alpha must exceed beta")


@dataclass(frozen=True)
class Exponential:
    """v(rho) = gamma/(alpha*beta) * exp(alpha rho^(beta/2))."""
    gamma: float
    alpha: float
    beta: float

    def __post_init__(self):
        if not self.gamma > 0:
            raise DomainError("gamma must be > 0")
        if not self.alpha > 0:
            raise DomainError("alpha must be > 0")
        if not self.beta > 0:
            raise DomainError("beta must be > 0")


@dataclass(frozen=True)
class PowerLog:
    """v(rho) = gamma rho^(alpha/2) log(rho)."""
    gamma: float
    alpha: float

    def __post_init__(self):
        if not self.gamma > 0:
            raise DomainError("gamma must be > 0")


@dataclass(frozen=True)
class PowerSink:
    """v(rho) = (gamma/alpha) |rho - r0^2|^(alpha/2)."""
    gamma: float
    alpha: float
    r0: float

    def __post_init__(self):
        if not self.gamma > 0:
            raise DomainError("gamma must be > 0")
        if self.alpha == 0:
            raise DomainError("alpha must be nonzero")
        if not self.r0 > 0:
            raise DomainError("r0 must be > 0")

    @property
    def sink(self) -> float:
        return self.r0 * self.r0


RadialField = Union[PowerLaw, LennardJones, Exponential, PowerLog, PowerSink]


@dataclass(frozen=True)
class TailRecord:
    """Leading behaviour K * r^p * (log r)^j of v(r^2) as r -> infinity."""
    coef: float
    power: float     # exponent in r (inf for exponential growth)
    logpow: int


@dataclass(frozen=True)
class FieldLimits:
    v_at_zero: float
    v_at_infinity: float
    tail: TailRecord
    dv_tail: TailRecord  # leading behaviour of v'(rho) as rho -> infinity, in rho


def _ff(p: float, order: int) -> float:
    out = 1.0
    for j in range(order):
        out *= (p - j)
    return out


def _power_at(coef: float, p: float, rho: float, order: int) -> float:
    """order-th derivative of coef * rho^p, extended-real at rho = 0."""
    c = coef * _ff(p, order)
    e = p - order
    if c == 0.0:
        return 0.0
    if rho == 0.0:
        if e > 0:
            return 0.0
        if e == 0:
            return c
        return math.copysign(inf, c)
    return c * rho ** e


def _powerlog_coeffs(gamma: float, p: float, order: int) -> tuple[float, float]:
    """(A, B) with d^order/drho^order [gamma rho^p log rho] = (A log rho + B) rho^(p-order)."""
    a, bcoef = gamma, 0.0
    for j in range(order):
        a, bcoef = a * (p - j), bcoef * (p - j) + a
    return a, bcoef


def field_eval(f: RadialField, rho: float, order: int = 0) -> float:
    """v^(order)(rho) by closed form; extended-real at exceptional points."""
    if rho < 0:
        raise DomainError(f"rho must be >= 0, got {rho}")
    if order < 0:
        raise DomainError("order must be >= 0")
    if isinstance(f, PowerLaw):
        return _power_at(f.gamma / f.alpha, f.alpha / 2.0, rho, order)
    if isinstance(f, LennardJones):
        t1 = _power_at(f.gamma / f.alpha, f.alpha / 2.0, rho, order)
        t2 = _power_at(-f.gamma * f.eta / f.beta, f.beta / 2.0, rho, order)
        if isinf(t1) or isinf(t2):
            # alpha > beta: the beta term dominates at 0
            return t2 if isinf(t2) else t1
        return t1 + t2
    if isinstance(f, PowerLog):
        p = f.alpha / 2.0
        a, bcoef = _powerlog_coeffs(f.gamma, p, order)
        e = p - order
        if rho == 0.0:
            if e > 0:
                return 0.0
            lead = -a if a != 0.0 else bcoef
            if e == 0:
                return math.copysign(inf, lead) if a != 0.0 else bcoef
            return math.copysign(inf, lead) if lead != 0.0 else 0.0
        return (a * math.log(rho) + bcoef) * rho ** e
    if isinstance(f, Exponential):
        return _exp_field_eval(f, rho, order)
    if isinstance(f, PowerSink):
        return _sink_field_eval(f, rho, order)
    raise TypeError(f"unknown field variant {type(f)!r}")


def _exp_field_eval(f: Exponential, rho: float, order: int) -> float:
    base = f.gamma / (f.alpha * f.beta)
    p = f.beta / 2.0
    if rho == 0.0:
        if order == 0:
            return base
        e = p - order
        if e > 0:
            return 0.0
        if e == 0:
            return base * f.alpha * _ff(p, order)
        return math.copysign(inf, _ff(p, order))
    expo = f.alpha * rho ** p
    if order == 0:
        return base * math.exp(expo) if expo < 700.0 else inf
    # complete Bell recurrence on g = alpha rho^p
    gd = [f.alpha * _ff(p, j) * rho ** (p - j) for j in range(order + 1)]
    bell = [1.0]
    for n in range(order):
        bell.append(sum(comb(n, k) * bell[n - k] * gd[k + 1] for k in range(n + 1)))
    if expo >= 700.0:
        return math.copysign(inf, bell[order]) if bell[order] != 0.0 else 0.0
    return base * math.exp(expo) * bell[order]


def _sink_field_eval(f: PowerSink, rho: float, order: int) -> float:
    c = f.sink
    coef = f.gamma / f.alpha
    p = f.alpha / 2.0
    if rho > c:
        return _power_at(coef, p, 0.0, order) if rho == c else \
            coef * _ff(p, order) * (rho - c) ** (p - order)
    if rho < c:
        return coef * _ff(p, order) * (-1.0) ** order * (c - rho) ** (p - order)
    # at the sink: extended-sense value when both one-sided limits agree
    cf = coef * _ff(p, order)
    e = p - order
    if cf == 0.0 or e > 0:
        return 0.0
    if order % 2 == 0:
        return cf if e == 0 else math.copysign(inf, cf)
    return nan  # one-sided limits disagree


def field_limits(f: RadialField) -> FieldLimits:
    """Limits at 0 and infinity plus leading tail records (symbolic)."""
    if isinstance(f, PowerLaw):
        k = f.gamma / f.alpha
        v0 = 0.0 if f.alpha > 0 else math.copysign(inf, k)
        vinf = math.copysign(inf, k) if f.alpha > 0 else 0.0
        return FieldLimits(v0, vinf, TailRecord(k, f.alpha, 0),
                           TailRecord(f.gamma / 2.0, f.alpha / 2.0 - 1.0, 0))
    if isinstance(f, LennardJones):
        ka = f.gamma / f.alpha
        kb = -f.gamma * f.eta / f.beta
        v0 = math.copysign(inf, kb) if f.beta < 0 else 0.0
        vinf = math.copysign(inf, ka) if f.alpha > 0 else 0.0
        return FieldLimits(v0, vinf, TailRecord(ka, f.alpha, 0),
                           TailRecord(f.gamma / 2.0, f.alpha / 2.0 - 1.0, 0))
    if isinstance(f, Exponential):
        base = f.gamma / (f.alpha * f.beta)
        return FieldLimits(base, inf, TailRecord(base, inf, 0),
                           TailRecord(1.0, inf, 0))
    if isinstance(f, PowerLog):
        if f.alpha > 0:
            v0 = 0.0
            vinf = inf
        elif f.alpha == 0:
            v0, vinf = -inf, inf
        else:
            v0, vinf = inf, 0.0
        return FieldLimits(v0, vinf, TailRecord(2.0 * f.gamma, f.alpha, 1),
                           TailRecord(f.gamma * f.alpha / 2.0 if f.alpha != 0 else f.gamma,
                                      f.alpha / 2.0 - 1.0, 1 if f.alpha != 0 else 0))
    if isinstance(f, PowerSink):
        k = f.gamma / f.alpha
        v0 = k * f.sink ** (f.alpha / 2.0)
        vinf = math.copysign(inf, k) if f.alpha > 0 else 0.0
        return FieldLimits(v0, vinf, TailRecord(k, f.alpha, 0),
                           TailRecord(f.gamma / 2.0, f.alpha / 2.0 - 1.0, 0))
    raise TypeError(f"unknown field variant {type(f)!r}")


def field_eval_vec(f: RadialField, rho, order: int = 0):
    """Vectorised v^(order) over an array of rho > 0 (orders 0 and 1)."""
    import numpy as np

    rho = np.asarray(rho, dtype=float)
    if order not in (0, 1):
        raise DomainError("vectorised evaluation supports orders 0 and 1")
    if np.any(rho <= 0):
        return np.array([field_eval(f, float(x), order) for x in rho.ravel()]
                        ).reshape(rho.shape)
    if isinstance(f, PowerLaw):
        if order == 0:
            return (f.gamma / f.alpha) * rho ** (f.alpha / 2.0)
        return (f.gamma / 2.0) * rho ** (f.alpha / 2.0 - 1.0)
    if isinstance(f, LennardJones):
        if order == 0:
            return (f.gamma / f.alpha) * rho ** (f.alpha / 2.0) \
                - (f.gamma * f.eta / f.beta) * rho ** (f.beta / 2.0)
        return (f.gamma / 2.0) * rho ** (f.alpha / 2.0 - 1.0) \
            - (f.gamma * f.eta / 2.0) * rho ** (f.beta / 2.0 - 1.0)
    if isinstance(f, Exponential):
        core = np.exp(np.minimum(f.alpha * rho ** (f.beta / 2.0), 700.0))
        if order == 0:
            return f.gamma / (f.alpha * f.beta) * core
        return (f.gamma / 2.0) * rho ** (f.beta / 2.0 - 1.0) * core
    if isinstance(f, PowerLog):
        p = f.alpha / 2.0
        if order == 0:
            return f.gamma * rho ** p * np.log(rho)
        return f.gamma * rho ** (p - 1.0) * (p * np.log(rho) + 1.0)
    if isinstance(f, PowerSink):
        dev = rho - f.sink
        if order == 0:
            out = (f.gamma / f.alpha) * np.abs(dev) ** (f.alpha / 2.0)
        else:
            with np.errstate(divide="ignore"):
                out = (f.gamma / 2.0) * np.sign(dev) \
                    * np.abs(dev) ** (f.alpha / 2.0 - 1.0)
        at_sink = dev == 0.0
        if np.any(at_sink):
            out = np.where(at_sink, field_eval(f, f.sink, order), out)
        return out
    raise TypeError(f"unknown field variant {type(f)!r}")


# ---------------------------------------------------------------------------
# inverse coordinate transform q


def _w_derivative(f: RadialField, R: float, kappa: float, m: int) -> float:
    """m-th derivative of w(kappa) = v'(R^2 / kappa) for kappa > 0."""
    if m == 0:
        return field_eval(f, R * R / kappa, 1)
    sgn = -1.0 if m % 2 == 1 else 1.0
    x = 1.0 / kappa
    total = 0.0
    for j in range(1, m + 1):
        gj = R ** (2 * j) * field_eval(f, R * R * x, 1 + j)
        total += gj * sgn * (factorial(m) / factorial(j)) * comb(m - 1, j - 1) \
            * kappa ** (-m - j)
    return total


def q_eval(f: RadialField, p, R: float, kappa: float, order: int = 0) -> float:
    """q^(order)(kappa) for kappa in [0, 1); kappa = 0 returns the limit.

    q(kappa) = 2 R^{s+2} kappa^{-s/2-1} v'(R^2 / kappa).
    """
    s = float(p.s)
    if R <= 0:
        raise DomainError("R must be > 0")
    if not 0.0 <= kappa < 1.0:
        raise DomainError(f"kappa must lie in [0, 1), got {kappa}")
    if kappa == 0.0:
        return _q_limit_at_zero(f, s, R, order)
    terms = q_sym_terms(f, s, R)
    if terms is not None:
        for _ in range(order):
            terms = sym_derive(terms)
        return sym_eval(terms, kappa)
    e0 = -s / 2.0 - 1.0
    total = 0.0
    for i in range(order + 1):
        total += comb(order, i) * _ff(e0, i) * kappa ** (e0 - i) \
            * _w_derivative(f, R, kappa, order - i)
    return 2.0 * R ** (s + 2.0) * total


def _q_limit_at_zero(f: RadialField, s: float, R: float, order: int) -> float:
    terms = q_sym_terms(f, s, R)
    if terms is not None:
        for _ in range(order):
            terms = sym_derive(terms)
        return _sym_limit_at_zero(terms)
    if order > 0:
        raise LimitUndefined("q derivative limits at 0 need a power-type field")
    # generic order-0: use the v' tail record
    lim = field_limits(f)
    k, m, j = lim.dv_tail.coef, lim.dv_tail.power, lim.dv_tail.logpow
    if isinf(m):  # exponential growth of v'
        return inf
    e = -s / 2.0 - 1.0 - m
    if e > 0:
        return 0.0
    if e == 0 and j == 0:
        return 2.0 * k * R ** (s + 2.0 + 2.0 * m)
    return math.copysign(inf, k)


# ---------------------------------------------------------------------------
# symbolic term lists: sum of (c_plain + c_log * log x) * x^p


@dataclass(frozen=True)
class SymTerm:
    c_plain: float
    c_log: float
    power: float


def sym_derive(terms: list[SymTerm]) -> list[SymTerm]:
    out = []
    for t in terms:
        out.append(SymTerm(t.c_plain * t.power + t.c_log, t.c_log * t.power,
                           t.power - 1.0))
    return out


def sym_eval(terms: list[SymTerm], x: float) -> float:
    lx = math.log(x)
    return sum((t.c_plain + t.c_log * lx) * x ** t.power for t in terms)


def _sym_limit_at_zero(terms: list[SymTerm]) -> float:
    """Limit of a term sum as x -> 0+ (extended real)."""
    live = [t for t in terms if t.c_plain != 0.0 or t.c_log != 0.0]
    if not live:
        return 0.0
    pmin = min(t.power for t in live)
    lead = [t for t in live if t.power == pmin]
    c_log = sum(t.c_log for t in lead)
    c_plain = sum(t.c_plain for t in lead)
    if pmin > 0:
        return 0.0
    if c_log != 0.0:
        head = -c_log  # log x -> -inf
    else:
        head = c_plain
    if head == 0.0:
        trimmed = [t for t in live if t.power > pmin]
        return _sym_limit_at_zero(trimmed) if pmin == 0 else 0.0
    if pmin == 0 and c_log == 0.0:
        rest = [t for t in live if t.power > pmin]
        return c_plain + _sym_limit_at_zero(rest)
    return math.copysign(inf, head)


def v_sym_terms(f: RadialField, side: str = "above") -> list[SymTerm] | None:
    """v as symbolic terms in rho, when the profile is power-type.

    For PowerSink the expansion argument is |rho - sink| on the given side.
    """
    if isinstance(f, PowerLaw):
        return [SymTerm(f.gamma / f.alpha, 0.0, f.alpha / 2.0)]
    if isinstance(f, LennardJones):
        return [SymTerm(f.gamma / f.alpha, 0.0, f.alpha / 2.0),
                SymTerm(-f.gamma * f.eta / f.beta, 0.0, f.beta / 2.0)]
    if isinstance(f, PowerLog):
        return [SymTerm(0.0, f.gamma, f.alpha / 2.0)]
    if isinstance(f, PowerSink):
        sgn = 1.0 if side == "above" else -1.0
        return [SymTerm(sgn * f.gamma / f.alpha, 0.0, f.alpha / 2.0)]
    return None


def q_sym_terms(f: RadialField, s: float, R: float) -> list[SymTerm] | None:
    """q(kappa) as symbolic terms in kappa, where expressible."""
    pref = 2.0 * R ** (s + 2.0)
    e0 = -s / 2.0 - 1.0
    if isinstance(f, PowerLaw):
        p = f.alpha / 2.0
        return [SymTerm(pref * (f.gamma / 2.0) * R ** (2.0 * p - 2.0), 0.0,
                        e0 - p + 1.0)]
    if isinstance(f, LennardJones):
        pa, pb = f.alpha / 2.0, f.beta / 2.0
        return [
            SymTerm(pref * (f.gamma / 2.0) * R ** (2.0 * pa - 2.0), 0.0, e0 - pa + 1.0),
            SymTerm(-pref * (f.gamma * f.eta / 2.0) * R ** (2.0 * pb - 2.0), 0.0,
                    e0 - pb + 1.0),
        ]
    if isinstance(f, PowerLog):
        p = f.alpha / 2.0
        # v'(rho) = gamma rho^{p-1} (p log rho + 1); rho = R^2 / kappa
        c_log = -f.gamma * p
        c_plain = f.gamma * (2.0 * p * math.log(R) + 1.0)
        scale = pref * R ** (2.0 * p - 2.0)
        return [SymTerm(scale * c_plain, scale * c_log, e0 - p + 1.0)]
    if isinstance(f, PowerSink) and f.alpha == 2.0:
        # v' = gamma/2 above the sink; valid when R^2/kappa stays above it
        return [SymTerm(pref * f.gamma / 2.0, 0.0, e0)]
    return None


def sym_sign_on(terms: list[SymTerm], lo: float, hi: float,
                samples: int = 1000) -> tuple[int, bool]:
    """Sign of a term sum on (lo, hi): (+1, 0, -1, or 2 for mixed, exact?).

    Exact for up to two log-free terms or a single log-carrying term; denser
    sampling fallback otherwise (flagged non-exact).
    """
    live = [t for t in terms if t.c_plain != 0.0 or t.c_log != 0.0]
    if not live:
        return 0, True
    if len(live) == 1:
        t = live[0]
        if t.c_log == 0.0:
            return (1 if t.c_plain > 0 else -1), True
        # sign of c_plain + c_log log x, root at exp(-c_plain/c_log)
        root = math.exp(-t.c_plain / t.c_log)
        if root <= lo or root >= hi:
            mid = math.sqrt(max(lo, 1e-300) * hi) if lo > 0 else hi / 2.0
            val = t.c_plain + t.c_log * math.log(mid)
            return (1 if val > 0 else (-1 if val < 0 else 0)), True
        return 2, True
    if len(live) == 2 and live[0].c_log == 0.0 and live[1].c_log == 0.0:
        t1, t2 = live
        if t1.power == t2.power:
            csum = t1.c_plain + t2.c_plain
            return (1 if csum > 0 else (-1 if csum < 0 else 0)), True
        if (t1.c_plain > 0) == (t2.c_plain > 0):
            return (1 if t1.c_plain > 0 else -1), True
        root = (-t2.c_plain / t1.c_plain) ** (1.0 / (t1.power - t2.power))
        if root <= lo or root >= hi:
            mid = math.sqrt(max(lo, 1e-300) * hi)
            val = sym_eval(live, mid)
            return (1 if val > 0 else (-1 if val < 0 else 0)), True
        return 2, True
    # sampling fallback, non-exact
    import numpy as np

    lo_eff = max(lo, 1e-12 * max(hi, 1.0))
    xs = np.geomspace(lo_eff, hi, samples) if hi > lo_eff else np.array([hi])
    vals = [sym_eval(live, float(x)) for x in xs]
    pos = any(v > 0 for v in vals)
    neg = any(v < 0 for v in vals)
    if pos and neg:
        return 2, False
    return (1 if pos else (-1 if neg else 0)), False


# ---------------------------------------------------------------------------
# confinement screening


@dataclass(frozen=True)
class ConfinementReport:
    clause: str
    satisfied: bool
    detail: str


def confinement_check(f: RadialField, p) -> ConfinementReport:
    """Screen the sufficient growth conditions for a compactly supported
    equilibrium; NotGuaranteed is informational, not fatal."""
    s = float(p.s)
    lim = field_limits(f)
    if s > 0:
        if lim.v_at_infinity == inf:
            return ConfinementReport("a", True, "v(inf) = +inf")
        # v(inf) finite: need lim s r^s (v(r^2) - v(inf)) < -1
        k, pw, j = _v_minus_inf_tail(f, lim)
        if isinf(pw):
            return ConfinementReport("a", False, "no usable tail record")
        e = s + pw
        if e < 0:
            val = 0.0
        elif e == 0 and j == 0:
            val = s * k
        else:
            val = math.copysign(inf, s * k)
        ok = val < -1.0
        return ConfinementReport("a", ok,
                                 f"lim s r^s (v - v(inf)) = {val}")
    if s == 0:
        # lim (v(r^2) - log r) = +inf
        k, pw, j = lim.tail.coef, lim.tail.power, lim.tail.logpow
        if lim.v_at_infinity != inf:
            return ConfinementReport("b", False, "v(inf) finite")
        if isinf(pw) or pw > 0:
            return ConfinementReport("b", True, "v grows faster than log r")
        if pw == 0 and j >= 1:
            if j > 1 or k > 1.0:
                return ConfinementReport("b", True, "log growth dominates")
            return ConfinementReport("b", k > 1.0, f"log coefficient {k}")
        return ConfinementReport("b", False, "v too flat")
    # s < 0: limsup s r^s v(r^2) < -2^{-s}
    bound = -(2.0 ** (-s))
    k, pw, j = lim.tail.coef, lim.tail.power, lim.tail.logpow
    if isinf(pw):
        return ConfinementReport("c", True, "super-polynomial growth")
    e = s + pw
    if lim.v_at_infinity == 0.0 and pw <= 0:
        # tail decays; compare exponent against -s
        if e < 0:
            return ConfinementReport("c", False, "s r^s v -> 0")
        if e == 0 and j == 0:
            return ConfinementReport("c", s * k < bound, f"limit {s * k}")
        return ConfinementReport("c", s * k < 0 and k > 0,
                                 f"limit {math.copysign(inf, s * k)}")
    if e < 0:
        return ConfinementReport("c", False, "s r^s v -> 0")
    if e == 0 and j == 0:
        return ConfinementReport("c", s * k < bound, f"limit {s * k}")
    val = math.copysign(inf, s * k)
    return ConfinementReport("c", val == -inf, f"limit {val}")


def _v_minus_inf_tail(f: RadialField, lim: FieldLimits) -> tuple[float, float, int]:
    """Tail of v(r^2) - v(inf) when v(inf) is finite."""
    if isinstance(f, PowerLaw) and f.alpha < 0:
        return f.gamma / f.alpha, f.alpha, 0
    if isinstance(f, LennardJones) and f.alpha < 0:
        return f.gamma / f.alpha, f.alpha, 0
    if isinstance(f, PowerSink) and f.alpha < 0:
        return f.gamma / f.alpha, f.alpha, 0
    if isinstance(f, PowerLog) and f.alpha < 0:
        return 2.0 * f.gamma, f.alpha, 1
    return lim.tail.coef, lim.tail.power, lim.tail.logpow


# ---------------------------------------------------------------------------
# JSON field specification


_FIELD_SCHEMAS = {
    "power": (PowerLaw, ("gamma", "alpha")),
    "lennard_jones": (LennardJones, ("gamma", "eta", "alpha", "beta")),
    "exponential": (Exponential, ("gamma", "alpha", "beta")),
    "power_log": (PowerLog, ("gamma", "alpha")),
    "power_sink": (PowerSink, ("gamma", "alpha", "r0")),
}


def field_from_dict(spec: dict) -> RadialField:
    """Parse the CLI field record {"type": ..., <named parameters>}."""
    if not isinstance(spec, dict):
        raise DomainError("field specification must be a JSON object")
    kind = spec.get("type")
    if kind not in _FIELD_SCHEMAS:
        raise DomainError(f"unknown field type {kind!r}")
    cls, keys = _FIELD_SCHEMAS[kind]
    unknown = set(spec) - {"type", *keys}
    if unknown:
        raise DomainError(f"unknown keys in field specification: {sorted(unknown)}")
    missing = [k for k in keys if k not in spec]
    if missing:
        raise DomainError(f"missing keys in field specification: {missing}")
    vals = {}
    for k in keys:
        v = spec[k]
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise DomainError(f"field parameter {k!r} must be a number")
        vals[k] = float(v)
    return cls(**vals)


def field_to_dict(f: RadialField) -> dict:
    for kind, (cls, keys) in _FIELD_SCHEMAS.items():
        if isinstance(f, cls):
            out = {"type": kind}
            out.update({k: getattr(f, k) for k in keys})
            return out
    raise TypeError(f"unknown field variant {type(f)!r}")
