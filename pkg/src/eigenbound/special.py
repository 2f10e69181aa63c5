"""Bessel functions, Gamma and root isolation on the real axis.

Scalar evaluation is delegated to :mod:`eigenbound.kernels`, which selects the
compiled or pure-Python backend; this module adds argument checking,
derivatives, zeros and a generic scan-and-bisect root finder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List

from . import kernels
from .errors import BracketExhausted, ConvergenceFailure, DomainError, Overflow

#: Largest x for which the unscaled I_nu is evaluated (exp(709.78) overflows).
I_OVERFLOW_X = 700.0


def _check_order_arg(nu: float, x: float) -> None:
    if not (nu >= 0 and math.isfinite(nu)):
        raise DomainError(f"order must be a finite nonnegative number, got {nu!r}")
    if not (x >= 0 and math.isfinite(x)):
        raise DomainError(f"argument must be a finite nonnegative number, got {x!r}")


def gamma_fn(x: float) -> float:
    """Gamma function for positive real arguments.

    Raises
    ------
    DomainError
        If ``x <= 0``.
    Overflow
        If the result exceeds the double range (``x`` above about 171.6).
    """
    if not (x > 0 and math.isfinite(x)):
        raise DomainError(f"gamma_fn needs x > 0, got {x!r}")
    try:
        return kernels.gamma(float(x))
    except OverflowError:
        raise Overflow(f"Gamma({x!r}) overflows") from None


def sphere_area(d: int) -> float:
    """Area of the unit sphere S^d in R^{d+1}."""
    return 2.0 * math.pi ** ((d + 1) / 2.0) / gamma_fn((d + 1) / 2.0)


def bessel_j(nu: float, x: float) -> float:
    """Bessel function of the first kind J_nu(x) for nu >= 0, x >= 0."""
    _check_order_arg(nu, x)
    return kernels.bessel_j(float(nu), float(x))


def bessel_i_scaled(nu: float, x: float) -> float:
    """Exponentially scaled modified Bessel function exp(-x) I_nu(x)."""
    _check_order_arg(nu, x)
    return kernels.bessel_i_scaled(float(nu), float(x))


def bessel_i(nu: float, x: float) -> float:
    """Modified Bessel function I_nu(x).

    Raises
    ------
    Overflow
        For ``x > 700``; use :func:`bessel_i_scaled` there.
    """
    _check_order_arg(nu, x)
    if x > I_OVERFLOW_X:
        raise Overflow(f"I_nu({x!r}) overflows double precision; use bessel_i_scaled")
    return kernels.bessel_i_scaled(float(nu), float(x)) * math.exp(x)


def bessel_j_prime(nu: float, x: float) -> float:
    """Derivative J_nu'(x) = (nu/x) J_nu(x) - J_{nu+1}(x)."""
    _check_order_arg(nu, x)
    if x == 0.0:
        if nu == 1.0:
            return 0.5
        return math.inf if 0.0 < nu < 1.0 else 0.0
    return (nu / x) * kernels.bessel_j(nu, x) - kernels.bessel_j(nu + 1.0, x)


def bessel_i_prime(nu: float, x: float) -> float:
    """Derivative I_nu'(x) = (nu/x) I_nu(x) + I_{nu+1}(x)."""
    _check_order_arg(nu, x)
    if x == 0.0:
        if nu == 1.0:
            return 0.5
        return math.inf if 0.0 < nu < 1.0 else 0.0
    if x > I_OVERFLOW_X:
        raise Overflow(f"I_nu'({x!r}) overflows double precision")
    e = math.exp(x)
    return ((nu / x) * kernels.bessel_i_scaled(nu, x) + kernels.bessel_i_scaled(nu + 1.0, x)) * e


@dataclass(frozen=True)
class RootBracket:
    """Interval ``[lo, hi]`` across which ``f`` changes sign."""

    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")
        if not self.f_lo * self.f_hi < 0:
            raise ValueError("bracket endpoints do not change sign")


def bisect(f: Callable[[float], float], br: RootBracket, tol: float = 1e-11, max_iter: int = 200) -> float:
    """Plain bisection inside a sign-change bracket to absolute ``tol``."""
    lo, hi, flo = br.lo, br.hi, br.f_lo
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol or mid == lo or mid == hi:
            return mid
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    raise ConvergenceFailure(f"bisection did not reach tol {tol} in {max_iter} steps")


def _scan(f, lo, hi, intervals):
    """Sign-change brackets and exact zeros on a uniform grid."""
    xs = [lo + (hi - lo) * i / intervals for i in range(intervals + 1)]
    fs = [f(x) for x in xs]
    brackets = []
    exact = []
    for i in range(intervals):
        if fs[i] == 0.0:
            exact.append(xs[i])
        elif fs[i] * fs[i + 1] < 0:
            brackets.append(RootBracket(xs[i], xs[i + 1], fs[i], fs[i + 1]))
    if fs[-1] == 0.0:
        exact.append(xs[-1])
    return brackets, exact


def find_roots(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    max_roots: int = 1000,
    tol: float = 1e-11,
    initial_intervals: int = 64,
    max_intervals: int = 1 << 16,
) -> List[float]:
    """All sign-change roots of ``f`` on ``[lo, hi]``, ascending.

    The interval is scanned uniformly; the grid is doubled until two
    consecutive scans report the same number of roots, then every bracket is
    bisected to absolute tolerance ``tol``.  Roots of even multiplicity are
    only found if the grid lands on them exactly.

    Raises
    ------
    BracketExhausted
        If more than ``max_roots`` roots are present.
    """
    if not hi > lo:
        return []
    intervals = initial_intervals
    brackets, exact = _scan(f, lo, hi, intervals)
    count = len(brackets) + len(exact)
    while intervals < max_intervals:
        intervals *= 2
        brackets, exact = _scan(f, lo, hi, intervals)
        new = len(brackets) + len(exact)
        if new == count:
            break
        count = new
    if count > max_roots:
        raise BracketExhausted(f"{count} roots found on [{lo}, {hi}], more than max_roots={max_roots}")
    roots = exact + [bisect(f, br, tol) for br in brackets]
    return sorted(roots)


def _mcmahon(nu: float, k: int) -> float:
    """Large-k asymptotic guess for the k-th zero of J_nu."""
    mu = 4.0 * nu * nu
    b = (k + 0.5 * nu - 0.25) * math.pi
    return b - (mu - 1.0) / (8.0 * b) - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * (8.0 * b) ** 3)


def _refine(f, df, br: RootBracket, x0: float, tol: float, max_iter: int = 100) -> float:
    # Newton steps kept inside the shrinking bracket, bisection otherwise.
    lo, hi, flo = br.lo, br.hi, br.f_lo
    x = x0 if lo < x0 < hi else 0.5 * (lo + hi)
    for _ in range(max_iter):
        fx = f(x)
        if fx == 0.0:
            return x
        if (fx < 0) == (flo < 0):
            lo, flo = x, fx
        else:
            hi = x
        d = df(x)
        step_ok = False
        if d != 0.0 and math.isfinite(d):
            xn = x - fx / d
            if lo < xn < hi:
                step_ok = True
                if abs(xn - x) <= tol:
                    return xn
                x = xn
        if not step_ok:
            x = 0.5 * (lo + hi)
        if hi - lo <= tol:
            return 0.5 * (lo + hi)
    raise ConvergenceFailure("safeguarded Newton iteration did not converge")


def bessel_j_zero(nu: float, k: int, tol: float = 1e-13) -> float:
    """The k-th positive zero j_{nu,k} of J_nu.

    Zeros are isolated by counting sign changes on a grid starting at ``nu``
    (J_nu has no zeros in ``(0, nu]``), then polished with safeguarded Newton
    iterations seeded by McMahon's expansion.

    Raises
    ------
    ConvergenceFailure
        If the scan or the refinement does not terminate.
    """
    if not (nu >= 0 and math.isfinite(nu)):
        raise DomainError(f"order must be nonnegative, got {nu!r}")
    if int(k) != k or k < 1:
        raise DomainError(f"zero index must be a positive integer, got {k!r}")
    k = int(k)
    f = lambda x: kernels.bessel_j(nu, x)  # noqa: E731
    df = lambda x: (nu / x) * kernels.bessel_j(nu, x) - kernels.bessel_j(nu + 1.0, x)  # noqa: E731
    step = 0.4
    x = max(nu, 1e-3)
    fx = f(x)
    found = 0
    for _ in range(1_000_000):
        xn = x + step
        fn = f(xn)
        if fn == 0.0:
            # advance past an exact grid hit; treat it as a root
            found += 1
            if found == k:
                return xn
            xn += 1e-9
            fn = f(xn)
        elif fx * fn < 0:
            found += 1
            if found == k:
                return _refine(f, df, RootBracket(x, xn, fx, fn), _mcmahon(nu, k), tol)
        x, fx = xn, fn
    raise ConvergenceFailure(f"zero {k} of J_{nu} not isolated")


def bessel_j_zeros_upto(nu: float, xmax: float, tol: float = 1e-13) -> List[float]:
    """All positive zeros of J_nu not exceeding ``xmax``, ascending."""
    if not (nu >= 0 and math.isfinite(nu)):
        raise DomainError(f"order must be nonnegative, got {nu!r}")
    f = lambda x: kernels.bessel_j(nu, x)  # noqa: E731
    df = lambda x: (nu / x) * kernels.bessel_j(nu, x) - kernels.bessel_j(nu + 1.0, x)  # noqa: E731
    out: List[float] = []
    step = 0.4
    x = max(nu, 1e-3)
    fx = f(x)
    # one extra step past xmax so a zero sitting just below it is bracketed
    while x <= xmax:
        xn = x + step
        fn = f(xn)
        if fn == 0.0:
            if xn <= xmax:
                out.append(xn)
            xn += 1e-9
            fn = f(xn)
        elif fx * fn < 0:
            z = _refine(f, df, RootBracket(x, xn, fx, fn), _mcmahon(nu, len(out) + 1), tol)
            if z <= xmax:
                out.append(z)
        x, fx = xn, fn
    return out
