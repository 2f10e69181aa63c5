# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scalar kernels; a line-by-line mirror of ``_kernels_py``."""

from libc.math cimport exp, log, sin, tan, sqrt, floor, ceil, fabs, M_PI
from libc.stdlib cimport malloc, free

BACKEND = "cython"

cdef double _LANCZOS_G = 7.0
cdef double[9] _LANCZOS
_LANCZOS[:] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
]
cdef double _HALF_LOG_2PI = 0.91893853320467274178
cdef double _LN2 = 0.69314718055994530942


cdef inline double _log_half(double x) nogil:
    # log(x / 2) without losing x / 2 to subnormal underflow
    if x < 1e-300:
        return log(x) - _LN2
    return log(0.5 * x)


cdef inline double _lanczos_sum(double z) nogil:
    cdef double a = _LANCZOS[0]
    cdef int i
    for i in range(1, 9):
        a += _LANCZOS[i] / (z + i)
    return a


cdef double _lgamma(double x) nogil:
    cdef double z, t
    if x < 0.5:
        return log(M_PI / sin(M_PI * x)) - _lgamma(1.0 - x)
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * log(t) - t + log(_lanczos_sum(z))


cdef double _gamma(double x) nogil:
    cdef double z, t, r
    cdef int i
    if x < 0.5:
        return M_PI / (sin(M_PI * x) * _gamma(1.0 - x))
    if x == floor(x) and x <= 23.0:
        r = 1.0
        for i in range(2, <int>x):
            r *= i
        return r
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return exp(_HALF_LOG_2PI + (z + 0.5) * log(t) - t) * _lanczos_sum(z)


def lgamma(double x):
    """log Gamma(x) for x > 0."""
    return _lgamma(x)


def gamma(double x):
    """Gamma(x) for x > 0; overflows (OverflowError) past x ~ 171.6."""
    cdef double r = _gamma(x)
    if r == float("inf"):
        raise OverflowError("math range error")
    return r


cdef double _bessel_j_series(double nu, double x) nogil:
    cdef double q = -0.25 * x * x
    cdef double term = 1.0
    cdef double total = 1.0
    cdef int k = 0
    while k < 1000:
        k += 1
        term *= q / (k * (nu + k))
        total += term
        if fabs(term) <= 1e-17 * fabs(total):
            break
    return total * exp(nu * _log_half(x) - _lgamma(nu + 1.0))


cdef double _bessel_j_miller(double nu, double x):
    cdef int jtarget = <int>floor(nu)
    cdef double nu0 = nu - jtarget
    cdef double big = nu if nu > x else x
    cdef int nstart = <int>(big + 30.0 + 12.0 * big ** (1.0 / 3.0))
    cdef int half, k, j, jj
    cdef double p, f_next, f, f_prev, total, result, norm
    cdef double *coef
    if nstart % 2:
        nstart += 1
    half = nstart // 2
    coef = <double *>malloc((half + 1) * sizeof(double))
    if coef == NULL:
        raise MemoryError()
    coef[0] = 1.0
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
        if fabs(f) > 1e250:
            f *= 1e-250
            f_next *= 1e-250
            total *= 1e-250
            result *= 1e-250
    free(coef)
    norm = exp(nu0 * _log_half(x) - _lgamma(nu0 + 1.0))
    return result * norm / total


def bessel_j(double nu, double x):
    """J_nu(x) for nu >= 0, x >= 0."""
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    if 0.25 * x * x < nu + 1.0 or x < 2.0:
        return _bessel_j_series(nu, x)
    return _bessel_j_miller(nu, x)


def bessel_i_scaled(double nu, double x):
    """exp(-x) I_nu(x) for nu >= 0, x >= 0."""
    cdef double q, logt, tpeak, total, t
    cdef long kpeak, k
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    q = 0.25 * x * x
    t = 0.5 * (sqrt(nu * nu + x * x) - nu)
    kpeak = <long>(t if t > 0.0 else 0.0)
    logt = (nu + 2.0 * kpeak) * _log_half(x) - _lgamma(kpeak + 1.0) - _lgamma(nu + kpeak + 1.0) - x
    tpeak = exp(logt)
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


def cap_shoot(double n, double l, double mu, double theta0, double eps=1e-6):
    """Integrate the regular radial solution of the sphere eigen-equation.

    See ``_kernels_py.cap_shoot``; returns ``(w(theta0), zeros)``.
    """
    cdef double a = 2.0 * l + n - 1.0
    cdef double q = mu - l * (l + n - 1.0)
    cdef double c = -q / (2.0 * (2.0 * l + n))
    cdef double w = 1.0 + c * eps * eps
    cdef long zeros = 0
    cdef double sign = 1.0 if w > 0 else -1.0
    cdef double theta_sw = 0.1 if theta0 > 0.1 else theta0
    cdef double s = log(eps)
    cdef double s_end = log(theta_sw)
    cdef double p = 2.0 * c * eps * eps
    cdef double amax = a if a > 1.0 else 1.0
    cdef double hs_max = 0.05 if 0.05 < 1.0 / amax else 1.0 / amax
    cdef long nsteps = <long>ceil((s_end - s) / hs_max)
    cdef long i
    cdef double hs, th, tc, k1w, k1p, k2w, k2p, k3w, k3p, k4w, k4p
    cdef double w2, p2, w3, p3, w4, p4
    cdef double v, h_max, h, th0, tm, ct, tn, k1v, k2v, k3v, k4v, v2, v3, v4, qq
    if nsteps < 1:
        nsteps = 1
    hs = (s_end - s) / nsteps
    for i in range(nsteps):
        th = exp(s)
        tc = th / tan(th)
        k1w = p
        k1p = (1.0 - a * tc) * p - q * th * th * w
        th = exp(s + 0.5 * hs)
        tc = th / tan(th)
        w2 = w + 0.5 * hs * k1w
        p2 = p + 0.5 * hs * k1p
        k2w = p2
        k2p = (1.0 - a * tc) * p2 - q * th * th * w2
        w3 = w + 0.5 * hs * k2w
        p3 = p + 0.5 * hs * k2p
        k3w = p3
        k3p = (1.0 - a * tc) * p3 - q * th * th * w3
        th = exp(s + hs)
        tc = th / tan(th)
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

    th = theta_sw
    v = p / th
    qq = fabs(q) if fabs(q) > 1.0 else 1.0
    h_max = 0.05 / sqrt(qq)
    if h_max > 2e-3:
        h_max = 2e-3
    nsteps = <long>ceil((theta0 - th) / h_max)
    h = (theta0 - th) / nsteps
    th0 = th
    for i in range(nsteps):
        th = th0 + i * h
        k1w = v
        k1v = -a * v / tan(th) - q * w
        tm = th + 0.5 * h
        ct = 1.0 / tan(tm)
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
        k4v = -a * v4 / tan(tn) - q * w4
        w += h * (k1w + 2.0 * k2w + 2.0 * k3w + k4w) / 6.0
        v += h * (k1v + 2.0 * k2v + 2.0 * k3v + k4v) / 6.0
        if w * sign < 0:
            zeros += 1
            sign = -sign
    return w, zeros
