"""Exact and semi-analytic spectrum generators.

Boxes use the separable lattice formula, Euclidean balls use Bessel zeros
(Dirichlet) or roots of the clamped-plate determinant, and geodesic balls of
round spheres use radial shooting.  Every generator returns a
multiplicity-expanded :class:`~eigenbound.types.Spectrum`; if ``count`` would
split a degenerate cluster, the cluster is completed and the extension is
noted in ``source``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from math import comb
from typing import Callable, List, Sequence, Tuple

from . import kernels
from .errors import ConvergenceFailure, DomainError, IllConditioned, InvalidGeometry
from .special import bessel_j_zeros_upto, find_roots
from .types import Operator, Spectrum, validate_spectrum

#: Relative gap below which consecutive eigenvalues count as one cluster.
CLUSTER_RTOL = 1e-9


@dataclass(frozen=True)
class RadialMode:
    """One separated mode family on a ball or cap.

    ``eigenvalue`` is repeated ``multiplicity`` times in the expanded spectrum.
    """

    l: int
    multiplicity: int
    radial_root_index: int
    eigenvalue: float


def multiplicity(n: int, l: int) -> int:
    """Dimension of degree-``l`` spherical harmonics on S^{n-1}."""
    if n < 1 or l < 0:
        raise DomainError(f"need n >= 1 and l >= 0, got n={n}, l={l}")
    if n == 1:
        return 1 if l <= 1 else 0
    second = comb(n + l - 3, l - 2) if l >= 2 else 0
    return comb(n + l - 1, l) - second


def _expand(modes: Sequence[RadialMode], count: int) -> Tuple[List[float], List[RadialMode], int]:
    """Sorted, expanded values; the last cluster is completed."""
    modes = sorted(modes, key=lambda m: (m.eigenvalue, m.l, m.radial_root_index))
    values: List[float] = []
    used: List[RadialMode] = []
    for m in modes:
        if len(values) >= count and m.eigenvalue > values[-1] * (1.0 + CLUSTER_RTOL):
            break
        values.extend([m.eigenvalue] * m.multiplicity)
        used.append(m)
    if len(values) < count:
        raise ConvergenceFailure(f"only {len(values)} modes available, {count} requested")
    return values, used, len(values)


def _finish(op: Operator, n: int, m: int, values: List[float], count: int, source: str) -> Spectrum:
    if len(values) > count:
        source += f"|extended:{count}->{len(values)}"
    # simplicity of the ground state is not required: a count-1 request
    # on a box with equal sides is still valid input
    return validate_spectrum(Spectrum(op, n, m, tuple(values), source))


def _check_count(count: int) -> int:
    if int(count) != count or count < 1:
        raise DomainError(f"count must be a positive integer, got {count!r}")
    return int(count)


# ---------------------------------------------------------------------------
# Boxes


def _box_values_upto(lengths: Sequence[float], cap: float) -> List[Tuple[float, tuple]]:
    # math.fsum rounds the exact sum, so permuting the lengths permutes the
    # terms but leaves every value bit-identical.
    pi2 = math.pi * math.pi
    ranges = []
    for L in lengths:
        pmax = int(math.floor(L * math.sqrt(cap / pi2))) + 1
        ranges.append(range(1, pmax + 1))
    out = []
    for ps in itertools.product(*ranges):
        v = math.fsum(pi2 * (p / L) ** 2 for p, L in zip(ps, lengths))
        if v <= cap:
            out.append((v, ps))
    return out


def box_dirichlet_spectrum(lengths: Sequence[float], count: int) -> Spectrum:
    """Dirichlet Laplacian eigenvalues of the box ``prod [0, L_j]``.

    Lattice points are enumerated below a value cap that doubles until at
    least ``count`` values are present.
    """
    count = _check_count(count)
    lengths = tuple(float(L) for L in lengths)
    if not lengths or any(not L > 0 for L in lengths):
        raise InvalidGeometry(f"box lengths must be positive, got {lengths!r}")
    pi2 = math.pi * math.pi
    cap = pi2 * sum(1.0 / L**2 for L in lengths) * 2.0
    while True:
        pts = _box_values_upto(lengths, cap)
        if len(pts) >= count:
            pts.sort()
            last = pts[count - 1][0]
            if last * (1.0 + CLUSTER_RTOL) < cap:
                break
        cap *= 2.0
    values = [v for v, _ in pts[:count]]
    for v, _ in pts[count:]:
        if v > last * (1.0 + CLUSTER_RTOL):
            break
        values.append(v)
    n = len(lengths)
    return _finish(Operator.LAPLACIAN, n, n, values, count, f"box{list(lengths)!r}")


# ---------------------------------------------------------------------------
# Euclidean balls


def _ball_modes(n: int, xcap: float, roots_for_l: Callable[[float, float], List[float]]) -> List[RadialMode]:
    modes = []
    l = 0
    while True:
        nu = l + 0.5 * n - 1.0
        if nu > xcap:
            break
        xs = roots_for_l(nu, xcap)
        if not xs and l > 0:
            # roots move right with l, so no higher l can contribute
            break
        mult = multiplicity(n, l)
        for k, x in enumerate(xs, start=1):
            modes.append(RadialMode(l, mult, k, x))
        l += 1
    return modes


def _ball_spectrum(n, radius, count, roots_for_l, power, op, tag):
    count = _check_count(count)
    if int(n) != n or n < 2:
        raise DomainError(f"ball dimension must be an integer >= 2, got {n!r}")
    n = int(n)
    if not radius > 0:
        raise InvalidGeometry(f"radius must be positive, got {radius!r}")
    # roots are computed in x = kR, independent of the radius, so the
    # dilation law holds to rounding
    xcap = 8.0 + n
    while True:
        xmodes = _ball_modes(n, xcap, roots_for_l)
        total = sum(m.multiplicity for m in xmodes)
        if total >= count:
            xs_sorted = sorted(xmodes, key=lambda m: m.eigenvalue)
            acc = 0
            for m in xs_sorted:
                acc += m.multiplicity
                if acc >= count:
                    xlast = m.eigenvalue
                    break
            if xlast * (1.0 + CLUSTER_RTOL) < xcap:
                break
        xcap *= 2.0
    modes = [
        RadialMode(m.l, m.multiplicity, m.radial_root_index, (m.eigenvalue / radius) ** power)
        for m in xmodes
    ]
    values, _, _ = _expand(modes, count)
    return _finish(op, n, n, values, count, f"{tag}(n={n},R={radius!r})")


def ball_dirichlet_modes(n: int, radius: float, xcap: float) -> List[RadialMode]:
    """Dirichlet modes of the n-ball with j_{nu,k} <= ``xcap``."""
    return [
        RadialMode(m.l, m.multiplicity, m.radial_root_index, (m.eigenvalue / radius) ** 2)
        for m in _ball_modes(n, xcap, bessel_j_zeros_upto)
    ]


def ball_dirichlet_spectrum(n: int, radius: float, count: int) -> Spectrum:
    """Dirichlet Laplacian spectrum of the n-ball: lambda = (j_{nu,k}/R)^2."""
    return _ball_spectrum(n, radius, count, bessel_j_zeros_upto, 2, Operator.LAPLACIAN, "ball_dirichlet")


def plate_determinant(nu: float, x: float) -> float:
    """Scaled clamped-plate determinant for angular order ``nu``.

    Equals exp(-x) (J_nu I_nu' - I_nu J_nu') at ``x``; the recurrences for the
    derivatives cancel the (nu/x) terms, leaving
    J_nu(x) I~_{nu+1}(x) + I~_nu(x) J_{nu+1}(x) with I~ = exp(-x) I.
    """
    return kernels.bessel_j(nu, x) * kernels.bessel_i_scaled(nu + 1.0, x) + kernels.bessel_i_scaled(
        nu, x
    ) * kernels.bessel_j(nu + 1.0, x)


def plate_roots_upto(nu: float, xmax: float, tol: float = 1e-13) -> List[float]:
    """Positive roots of :func:`plate_determinant` not exceeding ``xmax``."""
    # the first root exceeds j_{nu,1} > nu, so the scan starts past nu
    lo = nu + 0.5
    if lo >= xmax:
        return []
    intervals = max(64, int(4 * (xmax - lo)))
    return find_roots(lambda x: plate_determinant(nu, x), lo, xmax, tol=tol, initial_intervals=intervals)


def ball_plate_spectrum(n: int, radius: float, count: int) -> Spectrum:
    """Clamped-plate spectrum of the n-ball: Gamma = (x/R)^4 at determinant roots."""
    return _ball_spectrum(n, radius, count, plate_roots_upto, 4, Operator.BILAPLACIAN, "ball_plate")


# ---------------------------------------------------------------------------
# Geodesic balls in round spheres


def _cap_count(n, l, mu, theta0):
    return kernels.cap_shoot(float(n), float(l), float(mu), theta0)


def _cap_eigen(n, l, theta0, lo, hi, k, tol):
    """k-th radial eigenvalue mu for angular index l inside (lo, hi)."""
    # Sturm: the zero count of w on (0, theta0) equals the number of
    # eigenvalues below mu.  Bisect on the count until exactly one
    # eigenvalue is bracketed, then solve w(theta0; mu) = 0 by the Illinois
    # variant of regula falsi.
    flo, zlo = _cap_count(n, l, lo, theta0)
    fhi, zhi = _cap_count(n, l, hi, theta0)
    for _ in range(200):
        if zlo == k - 1 and zhi == k:
            break
        mid = 0.5 * (lo + hi)
        fm, zm = _cap_count(n, l, mid, theta0)
        if zm >= k:
            hi, fhi, zhi = mid, fm, zm
        else:
            lo, flo, zlo = mid, fm, zm
    else:
        raise ConvergenceFailure(f"cap eigenvalue bracket for l={l}, k={k} not isolated")
    if flo == 0.0:
        return lo
    side = 0
    x = lo
    for _ in range(200):
        x = hi - fhi * (hi - lo) / (fhi - flo)
        if not lo < x < hi:
            x = 0.5 * (lo + hi)
        fx, _ = _cap_count(n, l, x, theta0)
        if fx == 0.0:
            return x
        if (fx < 0) == (fhi < 0):
            hi, fhi = x, fx
            if side == 1:
                flo *= 0.5
            side = 1
        else:
            lo, flo = x, fx
            if side == -1:
                fhi *= 0.5
            side = -1
        if hi - lo <= tol * max(1.0, abs(x)):
            return 0.5 * (lo + hi)
    raise ConvergenceFailure(f"cap eigenvalue for l={l}, k={k} did not converge")


def cap_modes(n: int, theta0: float, mu_cap: float, tol: float = 1e-13) -> List[RadialMode]:
    """Radial modes of the unit-sphere cap with mu = lambda R^2 below ``mu_cap``."""
    modes = []
    l = 0
    while True:
        base = l * (l + n - 1.0)
        if base >= mu_cap:
            break
        _, z = _cap_count(n, l, mu_cap, theta0)
        if z == 0:
            break
        mult = multiplicity(n, l)
        lo = base
        for k in range(1, z + 1):
            mu = _cap_eigen(n, l, theta0, lo, mu_cap, k, tol)
            modes.append(RadialMode(l, mult, k, mu))
            lo = mu
        l += 1
    return modes


def cap_dirichlet_spectrum(n: int, sphere_radius: float, cap_angle: float, count: int) -> Spectrum:
    """Dirichlet spectrum of the geodesic ball of angle ``cap_angle`` in S^n(R).

    Raises
    ------
    IllConditioned
        If ``cap_angle`` is within 1e-3 of pi, where the shooting endpoint
        approaches the antipodal singular point.
    """
    count = _check_count(count)
    if int(n) != n or n < 2:
        raise DomainError(f"sphere dimension must be an integer >= 2, got {n!r}")
    n = int(n)
    if not sphere_radius > 0:
        raise InvalidGeometry(f"sphere radius must be positive, got {sphere_radius!r}")
    if not 0 < cap_angle < math.pi:
        raise InvalidGeometry(f"cap angle must lie in (0, pi), got {cap_angle!r}")
    if cap_angle > math.pi - 1e-3:
        raise IllConditioned(f"cap angle {cap_angle!r} too close to pi for shooting")
    theta0 = float(cap_angle)
    mu_cap = 4.0 * (math.pi / theta0) ** 2 + 2.0 * n
    while True:
        umodes = cap_modes(n, theta0, mu_cap)
        srt = sorted(umodes, key=lambda m: m.eigenvalue)
        acc = 0
        last = None
        for m in srt:
            acc += m.multiplicity
            if acc >= count:
                last = m.eigenvalue
                break
        if last is not None and last * (1.0 + 1e-6) < mu_cap:
            break
        mu_cap *= 2.0
    r2 = sphere_radius * sphere_radius
    modes = [RadialMode(m.l, m.multiplicity, m.radial_root_index, m.eigenvalue / r2) for m in umodes]
    values, _, _ = _expand(modes, count)
    return _finish(
        Operator.LAPLACIAN,
        n,
        n + 1,
        values,
        count,
        f"cap_dirichlet(n={n},R={sphere_radius!r},theta={theta0!r})",
    )


def spectrum_for_geometry(geom, operator: Operator, count: int) -> Spectrum:
    """Analytic spectrum for a box, ball or cap description."""
    from .types import Box, EuclideanBall, SphericalCap

    operator = Operator(operator)
    if isinstance(geom, Box):
        if operator is Operator.LAPLACIAN:
            return box_dirichlet_spectrum(geom.lengths, count)
    elif isinstance(geom, EuclideanBall):
        if operator is Operator.LAPLACIAN:
            return ball_dirichlet_spectrum(geom.n, geom.radius, count)
        return ball_plate_spectrum(geom.n, geom.radius, count)
    elif isinstance(geom, SphericalCap):
        if operator is Operator.LAPLACIAN:
            return cap_dirichlet_spectrum(geom.sphere_dim, geom.sphere_radius, geom.cap_angle, count)
    from .errors import UnsupportedGeometry

    raise UnsupportedGeometry(
        f"no analytic {operator.value} spectrum for {getattr(geom, 'variant', type(geom).__name__)}"
    )
