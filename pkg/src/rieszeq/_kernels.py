"""Scalar special-function kernels.

Everything here is plain scalar math so that numba can compile it; the public
wrappers in ``specfun`` add argument validation and raise typed exceptions
based on the status codes returned by these kernels.

Status codes: 0 = converged, 1 = divergent at z=1, 2 = no convergence.
"""

from __future__ import annotations

import math

from .backend import njit

# ---------------------------------------------------------------------------
# gamma / digamma

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_HALF_LOG_2PI = 0.9189385332046727


@njit
def _lanczos_core(x: float) -> float:
    # valid for x >= 0.5
    xx = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, 9):
        acc += _LANCZOS[i] / (xx + i)
    t = xx + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (xx + 0.5) * math.log(t) - t + math.log(acc)


@njit
def ln_gamma_kernel(x: float) -> float:
    # Lanczos (g=7, n=9); x > 0 enforced by the wrapper.
    if x < 0.5:
        return math.log(math.pi / math.sin(math.pi * x)) - _lanczos_core(1.0 - x)
    return _lanczos_core(x)


@njit
def digamma_kernel(x: float) -> float:
    # recurrence to x >= 10, then the asymptotic series
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    # Bernoulli tail B_2..B_14
    tail = inv2 * (
        1.0 / 12.0
        - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0
            - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0 - inv2 / 12.0)))))
    )
    return acc + math.log(x) - 0.5 * inv - tail


@njit
def gamma_sign(x: float) -> float:
    """Sign of Gamma(x) for non-pole real x."""
    if x > 0.0:
        return 1.0
    n = math.floor(-x)
    return -1.0 if n % 2 == 0 else 1.0


@njit
def _is_nonpos_int(x: float) -> bool:
    return x <= 1e-12 and abs(x - round(x)) < 1e-12


@njit
def _lgamma_signed(x: float) -> tuple[float, float]:
    """(log|Gamma(x)|, sign); sign 0.0 marks a pole."""
    if _is_nonpos_int(x):
        return 0.0, 0.0
    if x > 0.0:
        return ln_gamma_kernel(x), 1.0
    # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    s = math.sin(math.pi * x)
    return math.log(math.pi / abs(s)) - _lanczos_core(1.0 - x), gamma_sign(x)


# ---------------------------------------------------------------------------
# 2F1 building blocks


@njit
def hyp2f1_raw_series(a: float, b: float, c: float, z: float,
                      rel_tol: float, max_terms: int) -> tuple[float, int]:
    """Plain Pochhammer-ratio series; converges for |z| < 1 (slow near 1).

    The stop rule charges each term with its geometric tail z/(1-z) so the
    truncation error itself is below the requested tolerance.
    """
    term = 1.0
    total = 1.0
    hits = 0
    tail = z / (1.0 - z) if z < 1.0 else 1e300
    if tail < 1.0:
        tail = 1.0
    for k in range(max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        total += term
        if abs(term) * tail <= rel_tol * abs(total):
            hits += 1
            if hits >= 3:
                return total, 0
        else:
            hits = 0
    return total, 2


@njit
def _terminating_order(a: float, b: float) -> int:
    """Degree when a or b is a non-positive integer, else -1."""
    n = -1
    if _is_nonpos_int(a):
        n = int(round(-a))
    if _is_nonpos_int(b):
        nb = int(round(-b))
        if n < 0 or nb < n:
            n = nb
    return n


@njit
def _hyp2f1_poly(a: float, b: float, c: float, z: float, n: int) -> float:
    term = 1.0
    total = 1.0
    for k in range(n):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        total += term
    return total


@njit
def hyp2f1_gauss_at_one(a: float, b: float, c: float) -> float:
    """Gamma-quotient value at z=1; requires c-a-b > 0 and no Gamma poles."""
    lg_c, s_c = _lgamma_signed(c)
    lg_q, s_q = _lgamma_signed(c - a - b)
    lg_ca, s_ca = _lgamma_signed(c - a)
    lg_cb, s_cb = _lgamma_signed(c - b)
    if s_ca == 0.0 or s_cb == 0.0:
        return 0.0  # Gamma pole in the denominator
    return s_c * s_q * s_ca * s_cb * math.exp(lg_c + lg_q - lg_ca - lg_cb)


@njit
def _conn_nonint(a: float, b: float, c: float, z: float,
                 rel_tol: float, max_terms: int) -> tuple[float, int]:
    """DLMF 15.8.4 connection at 1-z; needs c-a-b away from the integers."""
    w = 1.0 - z
    q = c - a - b
    lg_c, s_c = _lgamma_signed(c)
    lg_q, s_q = _lgamma_signed(q)
    lg_ca, s_ca = _lgamma_signed(c - a)
    lg_cb, s_cb = _lgamma_signed(c - b)
    lg_mq, s_mq = _lgamma_signed(-q)
    lg_a, s_a = _lgamma_signed(a)
    lg_b, s_b = _lgamma_signed(b)

    coef1 = 0.0
    if s_ca != 0.0 and s_cb != 0.0:
        coef1 = s_c * s_q * s_ca * s_cb * math.exp(lg_c + lg_q - lg_ca - lg_cb)
    coef2 = 0.0
    if s_a != 0.0 and s_b != 0.0:
        coef2 = s_c * s_mq * s_a * s_b * math.exp(lg_c + lg_mq - lg_a - lg_b)

    f1 = 0.0
    st = 0
    if coef1 != 0.0:
        v1, st1 = hyp2f1_raw_series(a, b, a + b - c + 1.0, w, rel_tol, max_terms)
        if st1 != 0:
            st = st1
        f1 = coef1 * v1
    f2 = 0.0
    if coef2 != 0.0:
        v2, st2 = hyp2f1_raw_series(c - a, c - b, q + 1.0, w, rel_tol, max_terms)
        if st2 != 0:
            st = st2
        f2 = coef2 * math.pow(w, q) * v2
    return f1 + f2, st


@njit
def _conn_int(a: float, b: float, c: float, z: float,
              rel_tol: float, max_terms: int) -> tuple[float, int]:
    """Log-case connection for c-a-b = m, a non-negative integer.

    Abramowitz–Stegun 15.3.10/15.3.11 rearranged around w = 1-z.
    """
    w = 1.0 - z
    m = int(round(c - a - b))
    lg_c, s_c = _lgamma_signed(c)
    lg_a, s_a = _lgamma_signed(a)
    lg_b, s_b = _lgamma_signed(b)
    lg_am, s_am = _lgamma_signed(a + m)
    lg_bm, s_bm = _lgamma_signed(b + m)

    total = 0.0
    if m >= 1 and s_am != 0.0 and s_bm != 0.0:
        coef = s_c * s_am * s_bm * math.exp(ln_gamma_kernel(float(m)) + lg_c - lg_am - lg_bm)
        term = 1.0
        acc = 1.0
        for n in range(1, m):
            term *= (a + n - 1.0) * (b + n - 1.0) / (n * (1.0 - m + n - 1.0)) * w
            acc += term
        total += coef * acc

    if s_a != 0.0 and s_b != 0.0:
        sign = 1.0 if m % 2 == 0 else -1.0
        coef = sign * s_c * s_a * s_b * math.exp(lg_c - lg_a - lg_b)
        logw = math.log(w)
        psi_a = digamma_kernel(a + m) if a + m > 0.0 else 0.0
        psi_b = digamma_kernel(b + m) if b + m > 0.0 else 0.0
        if a + m <= 0.0 or b + m <= 0.0:
            # poles were filtered by the terminating path; defensive only
            return 0.0, 2
        psi_1 = digamma_kernel(1.0)
        psi_m1 = digamma_kernel(float(m + 1))
        # n-th coefficient of the log sum
        cterm = 1.0 / math.exp(ln_gamma_kernel(float(m + 1)))
        wpow = math.pow(w, float(m))
        acc = 0.0
        hits = 0
        for n in range(max_terms):
            bracket = logw - psi_1 - psi_m1 + psi_a + psi_b
            piece = cterm * wpow * bracket
            acc += piece
            if abs(piece) <= rel_tol * (abs(acc) + 1e-300):
                hits += 1
                if hits >= 3:
                    break
            else:
                hits = 0
            cterm *= (a + m + n) * (b + m + n) / ((n + 1.0) * (n + 1.0 + m))
            wpow *= w
            psi_1 += 1.0 / (n + 1.0)
            psi_m1 += 1.0 / (n + 1.0 + m)
            psi_a += 1.0 / (a + m + n)
            psi_b += 1.0 / (b + m + n)
        total -= coef * acc
        return total, 0
    return total, 2


@njit
def _taylor_continue(a: float, b: float, c: float, z: float,
                     rel_tol: float, max_terms: int) -> tuple[float, int]:
    """March the hypergeometric ODE from z0=0.75 toward z by Taylor steps.

    Uniformly valid for z in (0, 1); used when the connection formula is
    ill-conditioned (c-a-b close to but not at an integer).
    """
    z0 = 0.75
    f0, st = hyp2f1_raw_series(a, b, c, z0, rel_tol * 0.1, max_terms)
    if st != 0:
        return f0, st
    f1v, st = hyp2f1_raw_series(a + 1.0, b + 1.0, c + 1.0, z0, rel_tol * 0.1, max_terms)
    if st != 0:
        return f1v, st
    f1 = a * b / c * f1v
    for _ in range(80):
        if z0 >= z:
            break
        dz = 0.5 * (1.0 - z0)
        if z - z0 < dz:
            dz = z - z0
        # Taylor coefficients via the ODE recurrence
        amp = z0 * (1.0 - z0)
        fn = f0
        fn1 = f1
        val = f0 + f1 * dz
        der = f1
        dzk = dz
        converged = False
        for n in range(max_terms):
            fn2 = ((n + a) * (n + b) * fn
                   - (n + 1.0) * ((1.0 - 2.0 * z0) * n + c - (a + b + 1.0) * z0) * fn1
                   ) / (amp * (n + 2.0) * (n + 1.0))
            dzk *= dz
            piece = fn2 * dzk
            val += piece
            der += (n + 2.0) * fn2 * dzk / dz
            fn = fn1
            fn1 = fn2
            if abs(piece) <= 0.05 * rel_tol * abs(val) and n > 4:
                converged = True
                break
        if not converged:
            return val, 2
        z0 += dz
        f0 = val
        f1 = der
    return f0, 0


@njit
def hyp2f1_kernel(a: float, b: float, c: float, z: float,
                  rel_tol: float, max_terms: int) -> tuple[float, int]:
    """Full dispatcher for 2F1 on z in [0, 1]."""
    nterm = _terminating_order(a, b)
    if nterm >= 0:
        return _hyp2f1_poly(a, b, c, z, nterm), 0
    if z == 0.0:
        return 1.0, 0
    q = c - a - b
    if z == 1.0:
        if q <= 0.0:
            return 0.0, 1
        return hyp2f1_gauss_at_one(a, b, c), 0
    # the handoff sits away from commonly probed round values of z so that
    # finite differences never straddle it
    if z <= 0.875:
        return hyp2f1_raw_series(a, b, c, z, rel_tol, max_terms)
    m = round(q)
    dist = abs(q - m)
    if dist > 0.05:
        return _conn_nonint(a, b, c, z, rel_tol, max_terms)
    if dist < 1e-12:
        if m >= 0:
            return _conn_int(a, b, c, z, rel_tol, max_terms)
        # Euler transformation flips c-a-b to +|m|
        val, st = _conn_int(c - a, c - b, c, z, rel_tol, max_terms)
        return math.pow(1.0 - z, q) * val, st
    return _taylor_continue(a, b, c, z, rel_tol, max_terms)


# ---------------------------------------------------------------------------
# 3F2(1, 1, (d+1)/2; 2, d; z) -- the logarithmic sphere-potential kernel


@njit
def hyp3f2_series_kernel(a1: float, a2: float, a3: float, b1: float, b2: float,
                         z: float, rel_tol: float, max_terms: int) -> tuple[float, int]:
    term = 1.0
    total = 1.0
    hits = 0
    tail = z / (1.0 - z) if z < 1.0 else 1e300
    if tail < 1.0:
        tail = 1.0
    for k in range(max_terms):
        term *= (a1 + k) * (a2 + k) * (a3 + k) / ((b1 + k) * (b2 + k) * (k + 1.0)) * z
        total += term
        if abs(term) * tail <= rel_tol * abs(total):
            hits += 1
            if hits >= 3:
                return total, 0
        else:
            hits = 0
    return total, 2


@njit
def _log_b_const(d: int) -> float:
    return -math.log(2.0) + 0.5 * digamma_kernel(d - 1.0) - 0.5 * digamma_kernel((d - 1.0) / 2.0)


@njit
def _hyp3f2_tail_integral(d: int, w0: float, rel_tol: float, max_terms: int) -> tuple[float, int]:
    """J(w0) = int_0^w0 2F1(1,(d+1)/2; d; 1-w) dw, integrated term by term.

    Uses the z->1-z connection of the integrand, whose coefficient series in w
    converges geometrically for w0 <= 0.1.
    """
    bb = (d + 1.0) / 2.0  # upper parameter of the integrand
    mcab = (d - 3.0) / 2.0  # c - a - b of the integrand
    if d % 2 == 0:
        # non-integer exponent branch (two power series); Gamma(m) < 0 for d=2
        m = mcab
        lg_m, s_m = _lgamma_signed(m)
        P = s_m * math.exp(ln_gamma_kernel(float(d)) + lg_m
                           - ln_gamma_kernel(d - 1.0) - ln_gamma_kernel((d - 1.0) / 2.0))
        lg_negm, s_negm = _lgamma_signed(-m)
        Q = s_negm * math.exp(ln_gamma_kernel(float(d)) + lg_negm - ln_gamma_kernel(bb))
        # sum P * p_k w0^{k+1}/(k+1)
        acc = 0.0
        term = 1.0
        wp = w0
        for k in range(max_terms):
            piece = term * wp / (k + 1.0)
            acc += piece
            if abs(piece) <= rel_tol * (abs(acc) + 1e-300) and k > 3:
                break
            term *= (1.0 + k) * (bb + k) / ((1.0 - m + k) * (k + 1.0))
            wp *= w0
        tot = P * acc
        # sum Q * q_k w0^{k+m+1}/(k+m+1)
        acc = 0.0
        term = 1.0
        wp = math.pow(w0, m + 1.0)
        for k in range(max_terms):
            piece = term * wp / (k + m + 1.0)
            acc += piece
            if abs(piece) <= rel_tol * (abs(acc) + 1e-300) and k > 3:
                break
            term *= (d - 1.0 + k) * ((d - 1.0) / 2.0 + k) / ((1.0 + m + k) * (k + 1.0))
            wp *= w0
        return tot + Q * acc, 0
    # integer branch (log case), m = (d-3)/2 in {0, 1, 2, ...}
    m = int(round(mcab))
    logw = math.log(w0)
    tot = 0.0
    if m >= 1:
        A = math.exp(ln_gamma_kernel(float(m)) + ln_gamma_kernel(float(d))
                     - ln_gamma_kernel(m + 1.0) - ln_gamma_kernel(bb + m))
        term = 1.0
        acc = 0.0
        wp = w0
        for k in range(m):
            acc += term * wp / (k + 1.0)
            if k < m - 1:
                term *= (1.0 + k) * (bb + k) / ((1.0 - m + k) * (k + 1.0))
            wp *= w0
        tot += A * acc
    B = math.exp(ln_gamma_kernel(float(d)) - ln_gamma_kernel(bb))
    sign = 1.0 if m % 2 == 0 else -1.0
    cterm = 1.0 / math.exp(ln_gamma_kernel(m + 1.0))
    wp = math.pow(w0, m + 1.0)
    psi_1 = digamma_kernel(1.0)
    psi_bmk = digamma_kernel(bb + m)
    acc = 0.0
    hits = 0
    for k in range(max_terms):
        p = float(m + k + 1)
        bracket = (logw - 1.0 / p) + psi_bmk - psi_1
        piece = cterm * wp * bracket / p
        acc += piece
        if abs(piece) <= rel_tol * (abs(acc) + 1e-300):
            hits += 1
            if hits >= 3:
                break
        else:
            hits = 0
        cterm *= (1.0 + m + k) * (bb + m + k) / ((k + 1.0) * (k + 1.0 + m))
        wp *= w0
        psi_1 += 1.0 / (k + 1.0)
        psi_bmk += 1.0 / (bb + m + k)
    tot -= sign * B * acc
    return tot, 0


@njit
def hyp3f2_log_kernel_kernel(d: int, z: float, rel_tol: float,
                             max_terms: int) -> tuple[float, int]:
    """3F2(1, 1, (d+1)/2; 2, d; z) on z in [0, 1]."""
    if z == 0.0:
        return 1.0, 0
    s_at_1 = 4.0 * (_log_b_const(d) + math.log(2.0))
    if z == 1.0:
        return s_at_1, 0
    if z <= 0.95:
        return hyp3f2_series_kernel(1.0, 1.0, (d + 1.0) / 2.0, 2.0, float(d),
                                    z, rel_tol, max_terms)
    tail, st = _hyp3f2_tail_integral(d, 1.0 - z, rel_tol, max_terms)
    return (s_at_1 - tail) / z, st


# ---------------------------------------------------------------------------
# sphere-potential profile h_{s,d} and its derivative ladder (scalar forms)


@njit
def h_profile_kernel(d: int, s: float, lam: float, rel_tol: float,
                     max_terms: int) -> tuple[float, int]:
    """h(lambda) for s != 0 via the piecewise Gauss forms."""
    a = s / 2.0
    b = (2.0 + s - d) / 2.0
    c = d / 2.0
    if lam <= 1.0:
        v, st = hyp2f1_kernel(a, b, c, lam, rel_tol, max_terms)
        return v / s, st
    v, st = hyp2f1_kernel(a, b, c, 1.0 / lam, rel_tol, max_terms)
    return math.pow(lam, -s / 2.0) * v / s, st


@njit
def h_log_profile_kernel(d: int, lam: float, rel_tol: float,
                         max_terms: int) -> tuple[float, int]:
    """h(lambda) for s = 0 via the (1+sqrt(lambda)) form with the 3F2."""
    if lam == 0.0:
        return 0.0, 0
    r = math.sqrt(lam)
    zz = 4.0 * r / ((1.0 + r) * (1.0 + r))
    if zz > 1.0:
        zz = 1.0  # guards rounding for lam ~ 1
    v, st = hyp3f2_log_kernel_kernel(d, zz, rel_tol, max_terms)
    return -math.log(1.0 + r) + r / ((1.0 + r) * (1.0 + r)) * v, st


@njit
def h_deriv_kernel(d: int, s: float, lam: float, order: int, rel_tol: float,
                   max_terms: int) -> tuple[float, int]:
    """h^(order)(lambda) for order >= 1 (valid for both s = 0 and s != 0)."""
    if lam <= 1.0:
        pref = (2.0 + s - d) / (math.pow(2.0, order) * d)
        for j in range(1, order):
            pref *= (2.0 + 2.0 * j + s - d) * (s + 2.0 * j) / (d + 2.0 * j)
        v, st = hyp2f1_kernel(s / 2.0 + order, (2.0 + s - d) / 2.0 + order,
                              d / 2.0 + order, lam, rel_tol, max_terms)
        return pref * v, st
    sign = -1.0 if order % 2 == 1 else 1.0
    pref = sign / math.pow(2.0, order) * math.pow(lam, -s / 2.0 - order)
    for j in range(1, order):
        pref *= (s + 2.0 * j)
    v, st = hyp2f1_kernel(s / 2.0 + order, (2.0 + s - d) / 2.0,
                          d / 2.0, 1.0 / lam, rel_tol, max_terms)
    return pref * v, st


# ---------------------------------------------------------------------------
# kernel-matrix assembly (radial oracle) and pairwise particle forces


@njit
def h_grid_loop(d: int, s: float, flat, rel_tol: float, max_terms: int,
                res) -> None:
    """Profile evaluation over an array of lambda values (NaN on failure)."""
    for i in range(flat.shape[0]):
        if s == 0.0:
            val, st = h_log_profile_kernel(d, flat[i], rel_tol, max_terms)
        else:
            val, st = h_profile_kernel(d, s, flat[i], rel_tol, max_terms)
        if st != 0:
            res[i] = math.nan
        else:
            res[i] = val


@njit
def assemble_kernel_matrix(d: int, s: float, radii, c_sd: float, b_d: float,
                           rel_tol: float, max_terms: int, out) -> int:
    """Mutual-energy matrix K[i, j] = I(sigma_{r_i}, sigma_{r_j})."""
    m = radii.shape[0]
    for i in range(m):
        for j in range(m):
            if i == j:
                if s != 0.0:
                    out[i, j] = math.pow(radii[i], -s) / s * c_sd
                else:
                    out[i, j] = -math.log(radii[i]) + b_d
                continue
            lam = (radii[i] / radii[j]) ** 2
            if s != 0.0:
                v, st = h_profile_kernel(d, s, lam, rel_tol, max_terms)
                if st != 0:
                    return st
                out[i, j] = math.pow(radii[j], -s) * v
            else:
                v, st = h_log_profile_kernel(d, lam, rel_tol, max_terms)
                if st != 0:
                    return st
                out[i, j] = -math.log(radii[j]) + v
    return 0


@njit(fastmath=True)
def pairwise_energy_grad(points, s: float, grad) -> float:
    """Interaction part of the particle energy and its gradient.

    E_int = (1/N^2) sum_{i != j} K_s(x_i - x_j); grad accumulates in place
    (scaled by 2/N^2).  Returns E_int; coincident points give +inf.
    """
    n = points.shape[0]
    dim = points.shape[1]
    energy = 0.0
    for i in range(n):
        for k in range(dim):
            grad[i, k] = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            r2 = 0.0
            for k in range(dim):
                dx = points[i, k] - points[j, k]
                r2 += dx * dx
            if r2 == 0.0:
                return math.inf
            if s != 0.0:
                # one pow per pair: t = r^{-s-2}, K_s = t r^2 / s
                t = math.pow(r2, -0.5 * s - 1.0)
                energy += 2.0 * t * r2 / s
                coef = -t
            else:
                energy += -math.log(r2)
                coef = -1.0 / r2
            for k in range(dim):
                g = coef * (points[i, k] - points[j, k])
                grad[i, k] += g
                grad[j, k] -= g
    scale = 2.0 / (n * n)
    for i in range(n):
        for k in range(dim):
            grad[i, k] *= scale
    return energy / (n * n)
