"""Pure-Python scalar kernels.

This module is the reference implementation and the fallback used when the
compiled ``_ckernels`` extension is unavailable.  ``_ckernels.pyx`` mirrors it
statement for statement; keep the two in step.
"""

import math

BACKEND = "python"

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
_HALF_LOG_2PI = 0.91893853320467274178
_LN2 = 0.69314718055994530942


def _log_half(x):
    # log(x / 2) without losing x / 2 to subnormal underflow
    if x < 1e-300:
        return math.log(x) - _LN2
    return math.log(0.5 * x)


def _lanczos_sum(z):
    a = _LANCZOS[0]
    for i in range(1, 9):
        a += _LANCZOS[i] / (z + i)
    return a


def lgamma(x):
    """log Gamma(x) for x > 0."""
    if x < 0.5:
        # reflection keeps the Lanczos sum in its accurate range
        return math.log(math.pi / math.sin(math.pi * x)) - lgamma(1.0 - x)
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(_lanczos_sum(z))


def gamma(x):
    """Gamma(x) for x > 0; overflows (OverflowError) past x ~ 171.6."""
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    if x == math.floor(x) and x <= 23.0:
        r = 1.0
        for i in range(2, int(x)):
            r *= i
        return r
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return math.exp(_HALF_LOG_2PI + (z + 0.5) * math.log(t) - t) * _lanczos_sum(z)


# ---------------------------------------------------------------------------
# Bessel J


def _bessel_j_series(nu, x):
    q = -0.25 * x * x
    term = 1.0
    total = 1.0
    k = 0
    while k < 1000:
        k += 1
        term *= q / (k * (nu + k))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
    return total * math.exp(nu * _log_half(x) - lgamma(nu + 1.0))


def _bessel_j_miller(nu, x):
    # Backward recurrence over orders nu0 + j, normalised with the Neumann sum
    #   (x/2)^nu0 / Gamma(nu0 + 1) = sum_k c_k J_{nu0 + 2k}(x),
    #   c_0 = 1, c_k = (nu0 + 2k) Gamma(nu0 + k) / (k! Gamma(nu0 + 1)).
    jtarget = int(math.floor(nu))
    nu0 = nu - jtarget
    big = max(nu, x)
    nstart = int(big + 30.0 + 12.0 * big ** (1.0 / 3.0))
    if nstart % 2:
        nstart += 1
    half = nstart // 2
    coef = [1.0] * (half + 1)
    p = 1.0
    for k in range(1, half + 1):
        if k > 1:
            p *= (nu0 + k - 1.0) / k
        coef[k] = (nu0 + 2.0 * k) * p
    f_next = 0.0
    f = 1e-280
    total = 0.0
    result = 0.0
    if nstart == jtarget:
        result = f
    total += coef[half] * f
    for j in range(nstart, 0, -1):
        f_prev = (2.0 * (nu0 + j) / x) * f - f_next
        f_next = f
        f = f_prev
        jj = j - 1
        if jj == jtarget:
            result = f
        if jj % 2 == 0:
            total += coef[jj // 2] * f
        if abs(f) > 1e250:
            f *= 1e-250
            f_next *= 1e-250
            total *= 1e-250
            result *= 1e-250
    norm = math.exp(nu0 * _log_half(x) - lgamma(nu0 + 1.0))
    return result * norm / total


def bessel_j(nu, x):
    """J_nu(x) for nu >= 0, x >= 0."""
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    if 0.25 * x * x < nu + 1.0 or x < 2.0:
        return _bessel_j_series(nu, x)
    return _bessel_j_miller(nu, x)


# ---------------------------------------------------------------------------
# Bessel I, exponentially scaled


def bessel_i_scaled(nu, x):
    """exp(-x) I_nu(x) for nu >= 0, x >= 0."""
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    # sum outward from the largest series term so nothing under/overflows
    q = 0.25 * x * x
    kpeak = int(max(0.0, 0.5 * (math.sqrt(nu * nu + x * x) - nu)))
    logt = (nu + 2.0 * kpeak) * _log_half(x) - lgamma(kpeak + 1.0) - lgamma(nu + kpeak + 1.0) - x
    tpeak = math.exp(logt)
    total = tpeak
    t = tpeak
    k = kpeak
    while True:
        t *= q / ((k + 1.0) * (nu + k + 1.0))
        k += 1
        total += t
        if t <= 1e-17 * total:
            break
    t = tpeak
    k = kpeak
    while k > 0:
        t *= k * (nu + k) / q
        k -= 1
        total += t
        if t <= 1e-17 * total:
            break
    return total


# ---------------------------------------------------------------------------
# Radial shooting on a geodesic ball of the unit sphere S^n


def cap_shoot(n, l, mu, theta0, eps=1e-6):
    """Integrate the regular radial solution of the sphere eigen-equation.

    Writes u = sin(theta)^l w(theta); w solves
        w'' + (2l + n - 1) cot(theta) w' + (mu - l(l + n - 1)) w = 0,
    w(0) = 1, w'(0) = 0.  Returns ``(w(theta0), zeros)`` where ``zeros`` is the
    number of sign changes of w on (0, theta0].
    """
    a = 2.0 * l + n - 1.0
    q = mu - l * (l + n - 1.0)
    c = -q / (2.0 * (2.0 * l + n))
    w = 1.0 + c * eps * eps
    zeros = 0
    sign = 1.0 if w > 0 else -1.0

    # Phase 1 in s = log(theta): state (w, p = theta w').
    theta_sw = min(0.1, theta0)
    s = math.log(eps)
    s_end = math.log(theta_sw)
    p = 2.0 * c * eps * eps
    hs_max = min(0.05, 1.0 / max(a, 1.0))
    nsteps = int(math.ceil((s_end - s) / hs_max))
    if nsteps < 1:
        nsteps = 1
    hs = (s_end - s) / nsteps
    for _ in range(nsteps):
        th = math.exp(s)
        tc = th / math.tan(th)
        k1w = p
        k1p = (1.0 - a * tc) * p - q * th * th * w
        th = math.exp(s + 0.5 * hs)
        tc = th / math.tan(th)
        w2 = w + 0.5 * hs * k1w
        p2 = p + 0.5 * hs * k1p
        k2w = p2
        k2p = (1.0 - a * tc) * p2 - q * th * th * w2
        w3 = w + 0.5 * hs * k2w
        p3 = p + 0.5 * hs * k2p
        k3w = p3
        k3p = (1.0 - a * tc) * p3 - q * th * th * w3
        th = math.exp(s + hs)
        tc = th / math.tan(th)
        w4 = w + hs * k3w
        p4 = p + hs * k3p
        k4w = p4
        k4p = (1.0 - a * tc) * p4 - q * th * th * w4
        w += hs * (k1w + 2.0 * k2w + 2.0 * k3w + k4w) / 6.0
        p += hs * (k1p + 2.0 * k2p + 2.0 * k3p + k4p) / 6.0
        s += hs
        if w * sign < 0:
            zeros += 1
            sign = -sign
    if theta0 <= theta_sw:
        return w, zeros

    # Phase 2 in theta: state (w, v = w').
    th = theta_sw
    v = p / th
    h_max = min(2e-3, 0.05 / math.sqrt(max(abs(q), 1.0)))
    nsteps = int(math.ceil((theta0 - th) / h_max))
    h = (theta0 - th) / nsteps
    th0 = th
    for i in range(nsteps):
        th = th0 + i * h
        k1w = v
        k1v = -a * v / math.tan(th) - q * w
        tm = th + 0.5 * h
        ct = 1.0 / math.tan(tm)
        w2 = w + 0.5 * h * k1w
        v2 = v + 0.5 * h * k1v
        k2w = v2
        k2v = -a * v2 * ct - q * w2
        w3 = w + 0.5 * h * k2w
        v3 = v + 0.5 * h * k2v
        k3w = v3
        k3v = -a * v3 * ct - q * w3
        tn = th + h
        w4 = w + h * k3w
        v4 = v + h * k3v
        k4w = v4
        k4v = -a * v4 / math.tan(tn) - q * w4
        w += h * (k1w + 2.0 * k2w + 2.0 * k3w + k4w) / 6.0
        v += h * (k1v + 2.0 * k2v + 2.0 * k3v + k4v) / 6.0
        if w * sign < 0:
            zeros += 1
            sign = -sign
    return w, zeros
