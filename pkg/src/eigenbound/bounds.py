"""Universal eigenvalue inequalities: check mode and bound mode.

Every inequality is written as ``lhs(t) <= rhs(t)`` where ``t`` stands for the
next eigenvalue (lambda_{k+1} or Gamma_{k+1}) and the remaining terms use the
first ``k`` values.  ``check`` evaluates both sides at the true next value;
``bound`` returns the largest admissible ``t``.

Dirichlet family (Laplacian spectra, values lambda_i):

``ppw_gap``                lambda_{k+1} - lambda_k <= 4/(kn) sum lambda_i
``hile_protter``           kn/4 <= sum lambda_i / (t - lambda_i)
``yang1``                  n sum (t - lambda_i)^2 <= 4 sum (t - lambda_i) lambda_i
``yang2``                  t <= (1 + 4/n) (1/k) sum lambda_i
``chen_cheng``             sum (t - lambda_i)^2 <= (4/n) sum (t - lambda_i)(lambda_i + n^2 H0^2 / 4)
``thm_dirichlet_sobolev``  yang1 with 4 replaced by c = 4 + n^2 C1 ||H||^2
``thm_dirichlet_ms``       yang1 with 4 replaced by c = 4 + n^2 Cs ||H||^2

Plate family (bilaplacian spectra, values Gamma_i, g_i = Gamma_i^{1/2}):

``ppw_plate``          t - Gamma_k <= 8(n+2)/(n^2 k) sum Gamma_i
``hile_yeh``           n^2 k^{3/2} / (8(n+2)) (sum Gamma_i)^{-1/2} <= sum g_i / (t - Gamma_i)
``chen_qian_hook``     n^2 k^2 / (8(n+2)) <= (sum g_i)(sum g_i / (t - Gamma_i))
``cheng_yang_plate``   t - (1/k) sum Gamma_i <= (8(n+2)/n^2)^{1/2} (1/k) sum (Gamma_i (t - Gamma_i))^{1/2}
``cim_plate``          sum (t - Gamma_i)^2 <= n^{-2} sum (t - Gamma_i)(n^2 H0^2 + (2n+4) g_i)(n^2 H0^2 + 4 g_i)
``wang_xia_plate``     sum (t - Gamma_i)^2 <= n^{-1} [sum (t - Gamma_i)^2 (n^2 H0^2 + (2n+4) g_i)]^{1/2}
                                                  [sum (t - Gamma_i)(n^2 H0^2 + 4 g_i)]^{1/2}
``thm_plate_sobolev``  sum (t - Gamma_i)^2 <= n^{-1} [sum (t - Gamma_i)^2 (a + 2n + 4) g_i]^{1/2}
                                                     [sum (t - Gamma_i)(a + 4) g_i]^{1/2},
                       a = n^2 C1 ||H||^2
``thm_plate_ms``       as thm_plate_sobolev with a = n^2 Cs ||H||^2

Here H0 = sup |H| and ||H|| is the L^n norm of |H| over the domain.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import (
    DimensionTooLow,
    InsufficientSpectrum,
    MissingCurvature,
    MissingSobolev,
    MultiRootWarning,
    NegativeDiscriminant,
    NoAdmissibleValue,
    NoViolationFound,
    OperatorMismatch,
)
from .sobolev import DerivedConstants
from .types import BoundReport, CurvatureSummary, Operator, Spectrum, holds_within, tightness_of

#: Number of uniform samples used to look for extra sign changes of lhs - rhs.
SCAN_POINTS = 64
#: Doubling stops at this multiple of the last known value.
CEILING_FACTOR = 2.0**60


class InequalityId(str, Enum):
    PPW_GAP = "ppw_gap"
    HILE_PROTTER = "hile_protter"
    YANG1 = "yang1"
    YANG2 = "yang2"
    CHEN_CHENG = "chen_cheng"
    THM_DIRICHLET_SOBOLEV = "thm_dirichlet_sobolev"
    THM_DIRICHLET_MS = "thm_dirichlet_ms"
    PPW_PLATE = "ppw_plate"
    HILE_YEH = "hile_yeh"
    CHEN_QIAN_HOOK = "chen_qian_hook"
    CHENG_YANG_PLATE = "cheng_yang_plate"
    CIM_PLATE = "cim_plate"
    WANG_XIA_PLATE = "wang_xia_plate"
    THM_PLATE_SOBOLEV = "thm_plate_sobolev"
    THM_PLATE_MS = "thm_plate_ms"


@dataclass(frozen=True)
class IneqInfo:
    """Static requirements of one inequality.

    ``curvature`` names the curvature quantity used (``"h_sup"``, ``"h_ln"``
    or None); ``constant`` the Sobolev constant (``"c1"``, ``"cs"`` or None).
    ``euclidean`` marks results proved for domains of Euclidean space only.
    """

    operator: Operator
    mode: str
    curvature: Optional[str] = None
    constant: Optional[str] = None
    euclidean: bool = False


_L, _B = Operator.LAPLACIAN, Operator.BILAPLACIAN
I = InequalityId  # noqa: E741
REGISTRY: Dict[InequalityId, IneqInfo] = {
    I.PPW_GAP: IneqInfo(_L, "quadratic", euclidean=True),
    I.HILE_PROTTER: IneqInfo(_L, "bisection", euclidean=True),
    I.YANG1: IneqInfo(_L, "quadratic", euclidean=True),
    I.YANG2: IneqInfo(_L, "quadratic", euclidean=True),
    I.CHEN_CHENG: IneqInfo(_L, "bisection", curvature="h_sup"),
    I.THM_DIRICHLET_SOBOLEV: IneqInfo(_L, "quadratic", curvature="h_ln", constant="c1"),
    I.THM_DIRICHLET_MS: IneqInfo(_L, "quadratic", curvature="h_ln", constant="cs"),
    I.PPW_PLATE: IneqInfo(_B, "quadratic", euclidean=True),
    I.HILE_YEH: IneqInfo(_B, "bisection", euclidean=True),
    I.CHEN_QIAN_HOOK: IneqInfo(_B, "bisection", euclidean=True),
    I.CHENG_YANG_PLATE: IneqInfo(_B, "bisection", euclidean=True),
    I.CIM_PLATE: IneqInfo(_B, "bisection", curvature="h_sup"),
    I.WANG_XIA_PLATE: IneqInfo(_B, "bisection", curvature="h_sup"),
    I.THM_PLATE_SOBOLEV: IneqInfo(_B, "bisection", curvature="h_ln", constant="c1"),
    I.THM_PLATE_MS: IneqInfo(_B, "bisection", curvature="h_ln", constant="cs"),
}
del I


# ---------------------------------------------------------------------------
# Formulas.  Each returns (lhs, rhs) for candidate next value t.


def _yang_type(c: float, n: int, vals: Sequence[float], t: float) -> Tuple[float, float]:
    lhs = n * math.fsum((t - v) ** 2 for v in vals)
    rhs = c * math.fsum((t - v) * v for v in vals)
    return lhs, rhs


def _ppw_gap(n, vals, t, p):
    return t - vals[-1], 4.0 * math.fsum(vals) / (len(vals) * n)


def _hile_protter(n, vals, t, p):
    lhs = len(vals) * n / 4.0
    if any(t == v for v in vals):
        return lhs, math.inf
    return lhs, math.fsum(v / (t - v) for v in vals)


def _yang1(n, vals, t, p):
    return _yang_type(4.0, n, vals, t)


def _yang2(n, vals, t, p):
    return t, (1.0 + 4.0 / n) * math.fsum(vals) / len(vals)


def _chen_cheng(n, vals, t, p):
    shift = n * n * p["h_sup"] ** 2 / 4.0
    lhs = math.fsum((t - v) ** 2 for v in vals)
    rhs = (4.0 / n) * math.fsum((t - v) * (v + shift) for v in vals)
    return lhs, rhs


def dirichlet_constant(n: int, const: float, h_ln: float) -> float:
    """Effective coefficient c = 4 + n^2 * const * h_ln^2 of the Yang-type family."""
    return 4.0 + n * n * const * h_ln * h_ln


def _thm_dirichlet_sobolev(n, vals, t, p):
    return _yang_type(dirichlet_constant(n, p["c1"], p["h_ln"]), n, vals, t)


def _thm_dirichlet_ms(n, vals, t, p):
    return _yang_type(dirichlet_constant(n, p["cs"], p["h_ln"]), n, vals, t)


def _ppw_plate(n, vals, t, p):
    return t - vals[-1], 8.0 * (n + 2) / (n * n * len(vals)) * math.fsum(vals)


def _hile_yeh(n, vals, t, p):
    k = len(vals)
    lhs = n * n * k**1.5 / (8.0 * (n + 2)) * math.fsum(vals) ** -0.5
    if any(t == v for v in vals):
        return lhs, math.inf
    return lhs, math.fsum(math.sqrt(v) / (t - v) for v in vals)


def _chen_qian_hook(n, vals, t, p):
    k = len(vals)
    lhs = n * n * k * k / (8.0 * (n + 2))
    if any(t == v for v in vals):
        return lhs, math.inf
    return lhs, math.fsum(math.sqrt(v) for v in vals) * math.fsum(math.sqrt(v) / (t - v) for v in vals)


def _cheng_yang_plate(n, vals, t, p):
    k = len(vals)
    lhs = t - math.fsum(vals) / k
    rhs = math.sqrt(8.0 * (n + 2) / (n * n)) / k * math.fsum(math.sqrt(v * (t - v)) for v in vals)
    return lhs, rhs


def _cim_plate(n, vals, t, p):
    a = n * n * p["h_sup"] ** 2
    lhs = math.fsum((t - v) ** 2 for v in vals)
    rhs = math.fsum(
        (t - v) * (a + (2 * n + 4) * math.sqrt(v)) * (a + 4 * math.sqrt(v)) for v in vals
    ) / (n * n)
    return lhs, rhs


def _sqrt_product_form(n, vals, t, first: Callable[[float], float], second: Callable[[float], float]):
    # shared by the Wang-Xia form and the new plate bounds so that the two
    # agree bit for bit when the curvature terms vanish
    lhs = math.fsum((t - v) ** 2 for v in vals)
    s1 = math.fsum((t - v) ** 2 * first(v) for v in vals)
    s2 = math.fsum((t - v) * second(v) for v in vals)
    return lhs, math.sqrt(s1) * math.sqrt(s2) / n


def _wang_xia_plate(n, vals, t, p):
    a = n * n * p["h_sup"] ** 2
    return _sqrt_product_form(
        n, vals, t, lambda v: a + (2 * n + 4) * math.sqrt(v), lambda v: a + 4 * math.sqrt(v)
    )


def _plate_curvature_form(n, vals, t, const, h_ln):
    # with a = 0 both factors round exactly as in the flat Wang-Xia form
    a = n * n * const * h_ln * h_ln
    return _sqrt_product_form(
        n, vals, t, lambda v: (a + 2 * n + 4) * math.sqrt(v), lambda v: (a + 4) * math.sqrt(v)
    )


def _thm_plate_sobolev(n, vals, t, p):
    return _plate_curvature_form(n, vals, t, p["c1"], p["h_ln"])


def _thm_plate_ms(n, vals, t, p):
    return _plate_curvature_form(n, vals, t, p["cs"], p["h_ln"])


_FORMULAS = {
    InequalityId.PPW_GAP: _ppw_gap,
    InequalityId.HILE_PROTTER: _hile_protter,
    InequalityId.YANG1: _yang1,
    InequalityId.YANG2: _yang2,
    InequalityId.CHEN_CHENG: _chen_cheng,
    InequalityId.THM_DIRICHLET_SOBOLEV: _thm_dirichlet_sobolev,
    InequalityId.THM_DIRICHLET_MS: _thm_dirichlet_ms,
    InequalityId.PPW_PLATE: _ppw_plate,
    InequalityId.HILE_YEH: _hile_yeh,
    InequalityId.CHEN_QIAN_HOOK: _chen_qian_hook,
    InequalityId.CHENG_YANG_PLATE: _cheng_yang_plate,
    InequalityId.CIM_PLATE: _cim_plate,
    InequalityId.WANG_XIA_PLATE: _wang_xia_plate,
    InequalityId.THM_PLATE_SOBOLEV: _thm_plate_sobolev,
    InequalityId.THM_PLATE_MS: _thm_plate_ms,
}


# ---------------------------------------------------------------------------
# Input resolution


def _params(
    iid: InequalityId,
    s: Spectrum,
    curv: Optional[CurvatureSummary],
    sob: Optional[DerivedConstants],
) -> Dict[str, float]:
    info = REGISTRY[iid]
    if s.operator is not info.operator:
        raise OperatorMismatch(f"{iid.value} applies to {info.operator.value} spectra, got {s.operator.value}")
    p: Dict[str, float] = {}
    if info.constant is not None and s.dim_n < 3:
        raise DimensionTooLow(f"{iid.value} needs n >= 3, got n={s.dim_n}")
    if info.curvature is not None:
        if curv is None:
            raise MissingCurvature(f"{iid.value} needs a curvature summary")
        p[info.curvature] = curv.h_sup if info.curvature == "h_sup" else curv.h_ln
    if info.constant == "c1":
        if sob is None or sob.c1_effective is None:
            raise MissingSobolev(f"{iid.value} needs the Sobolev constant c1")
        p["c1"] = sob.c1_effective
    elif info.constant == "cs":
        if sob is None or sob.cs is None:
            raise MissingSobolev(f"{iid.value} needs the derived constant cs (configure c2)")
        p["cs"] = sob.cs
    return p


def _as_id(iid) -> InequalityId:
    return iid if isinstance(iid, InequalityId) else InequalityId(iid)


def _check_k(k: int, available: int, need: int) -> None:
    if int(k) != k or k < 1:
        raise InsufficientSpectrum(f"k must be a positive integer, got {k!r}")
    if available < need:
        raise InsufficientSpectrum(f"need {need} values for k={k}, spectrum has {available}")


def evaluate(iid, s: Spectrum, k: int, t: float, curv=None, sob=None) -> Tuple[float, float]:
    """(lhs, rhs) of inequality ``iid`` with the next value replaced by ``t``."""
    iid = _as_id(iid)
    p = _params(iid, s, curv, sob)
    _check_k(k, len(s.values), k)
    return _FORMULAS[iid](s.dim_n, s.values[:k], t, p)


# ---------------------------------------------------------------------------
# Bound mode


def _quadratic_bound(c: float, n: int, vals: Sequence[float]) -> float:
    k = len(vals)
    A = math.fsum(vals)
    B = math.fsum(v * v for v in vals)
    b = (2 * n + c) * A
    D = b * b - 4.0 * n * k * (n + c) * B
    if D < 0:
        raise NegativeDiscriminant(f"discriminant {D!r} < 0; no admissible next eigenvalue")
    return (b + math.sqrt(D)) / (2.0 * n * k)


def bound_quadratic(iid, s: Spectrum, k: int, curv=None, sob=None) -> float:
    """Closed-form implied bound on the next eigenvalue.

    For the Yang-type family with coefficient c this is the largest root of
    n k t^2 - (2n + c) A t + (n + c) B with A, B the sums of the first k
    values and their squares.
    """
    iid = _as_id(iid)
    p = _params(iid, s, curv, sob)
    _check_k(k, len(s.values), k)
    n = s.dim_n
    vals = s.values[:k]
    if iid is InequalityId.YANG1:
        return _quadratic_bound(4.0, n, vals)
    if iid is InequalityId.THM_DIRICHLET_SOBOLEV:
        return _quadratic_bound(dirichlet_constant(n, p["c1"], p["h_ln"]), n, vals)
    if iid is InequalityId.THM_DIRICHLET_MS:
        return _quadratic_bound(dirichlet_constant(n, p["cs"], p["h_ln"]), n, vals)
    if iid is InequalityId.YANG2:
        return _yang2(n, vals, 0.0, p)[1]
    if iid is InequalityId.PPW_GAP:
        return vals[-1] + _ppw_gap(n, vals, 0.0, p)[1]
    if iid is InequalityId.PPW_PLATE:
        return vals[-1] + _ppw_plate(n, vals, 0.0, p)[1]
    raise ValueError(f"{iid.value} has no closed-form bound; use bound_bisection")


def _violation(f, n, vals, p):
    def G(t: float) -> float:
        lhs, rhs = f(n, vals, t, p)
        return lhs - rhs

    return G


def bound_bisection(
    iid, s: Spectrum, k: int, curv=None, sob=None, warn: Optional[List[str]] = None
) -> float:
    """Largest t > values[k-1] satisfying the inequality, by bracketing and bisection.

    The bracket is found by doubling from values[k-1] (1 + 1e-9) until the
    inequality fails.  A 64-point scan of the bracket looks for further sign
    changes; if there are several, the largest crossing is used and a
    :class:`MultiRootWarning` is issued (and its text appended to ``warn``).
    Bisection then runs to the resolution of double precision and the
    admissible end of the final bracket is returned.

    Raises
    ------
    NoViolationFound
        If the inequality still holds at 2**60 * values[k-1].
    NoAdmissibleValue
        If no admissible point is found in the bracket.
    """
    iid = _as_id(iid)
    p = _params(iid, s, curv, sob)
    _check_k(k, len(s.values), k)
    vals = s.values[:k]
    G = _violation(_FORMULAS[iid], s.dim_n, vals, p)
    base = vals[-1]
    t0 = base * (1.0 + 1e-9)
    hi = t0
    g_hi = G(hi)
    while g_hi <= 0.0:
        if hi > CEILING_FACTOR * base:
            raise NoViolationFound(f"{iid.value} holds for every t up to 2^60 * {base!r}")
        hi *= 2.0
        g_hi = G(hi)
    # scan [t0, hi] for the largest admissible-to-violated crossing
    xs = [t0 + (hi - t0) * i / SCAN_POINTS for i in range(SCAN_POINTS + 1)]
    xs[-1] = hi
    gs = [G(x) for x in xs]
    gs[-1] = g_hi
    crossings = [i for i in range(SCAN_POINTS) if gs[i] <= 0.0 < gs[i + 1]]
    changes = sum(1 for i in range(SCAN_POINTS) if (gs[i] <= 0.0) != (gs[i + 1] <= 0.0))
    if not crossings:
        raise NoAdmissibleValue(f"{iid.value} is violated on the whole bracket above {base!r}")
    if changes > 1:
        msg = f"{iid.value}: {changes} sign changes on the bracket; using the largest crossing"
        warnings.warn(msg, MultiRootWarning, stacklevel=2)
        if warn is not None:
            warn.append(msg)
    i = crossings[-1]
    lo, hi = xs[i], xs[i + 1]
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if G(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return lo


def bound(iid, s: Spectrum, k: int, curv=None, sob=None, warn: Optional[List[str]] = None) -> float:
    """Implied bound on the next eigenvalue by the method registered for ``iid``."""
    iid = _as_id(iid)
    if REGISTRY[iid].mode == "quadratic":
        return bound_quadratic(iid, s, k, curv, sob)
    return bound_bisection(iid, s, k, curv, sob, warn)


# ---------------------------------------------------------------------------
# Check mode


def _constants_used(iid: InequalityId, p: Dict[str, float], n: int) -> Dict[str, float]:
    out = dict(p)
    if iid in (InequalityId.THM_DIRICHLET_SOBOLEV, InequalityId.THM_DIRICHLET_MS):
        out["c"] = dirichlet_constant(n, p["c1" if "c1" in p else "cs"], p["h_ln"])
    elif iid is InequalityId.YANG1:
        out["c"] = 4.0
    return out


def check(
    iid,
    s: Spectrum,
    k: int,
    curv: Optional[CurvatureSummary] = None,
    sob: Optional[DerivedConstants] = None,
    with_bound: bool = True,
) -> BoundReport:
    """Evaluate inequality ``iid`` on the first k + 1 values of ``s``.

    Raises
    ------
    MissingCurvature, MissingSobolev, OperatorMismatch, InsufficientSpectrum,
    DimensionTooLow
    """
    iid = _as_id(iid)
    p = _params(iid, s, curv, sob)
    _check_k(k, len(s.values), k + 1)
    lhs, rhs = _FORMULAS[iid](s.dim_n, s.values[:k], s.values[k], p)
    warn: List[str] = []
    implied = None
    if with_bound:
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", MultiRootWarning)
                implied = bound(iid, s, k, curv, sob, warn)
        except (NoViolationFound, NoAdmissibleValue, NegativeDiscriminant) as exc:
            warn.append(f"{exc.code}: {exc}")
    return BoundReport(
        iid.value,
        int(k),
        lhs,
        rhs,
        holds_within(lhs, rhs),
        tightness_of(lhs, rhs),
        implied,
        _constants_used(iid, p, s.dim_n),
        tuple(warn),
    )


def compare(
    ids: Sequence, s: Spectrum, k: int, curv=None, sob=None
) -> List[BoundReport]:
    """One report per id, sorted by implied bound (missing bounds last)."""
    reports = [check(i, s, k, curv, sob) for i in ids]
    return sorted(
        reports,
        key=lambda r: (r.implied_bound is None, r.implied_bound if r.implied_bound is not None else 0.0, r.inequality_id),
    )


def applicable_ids(
    s: Spectrum,
    curv: Optional[CurvatureSummary] = None,
    sob: Optional[DerivedConstants] = None,
) -> List[InequalityId]:
    """Inequalities whose hypotheses are met by the given inputs.

    Euclidean-only results require a flat immersion (``curv.h_sup == 0``);
    curvature and Sobolev ids require the corresponding inputs, and the
    Sobolev ids require n >= 3.
    """
    flat = curv is not None and curv.h_sup == 0.0
    out = []
    for iid, info in REGISTRY.items():
        if info.operator is not s.operator:
            continue
        if info.euclidean and not flat:
            continue
        if info.curvature is not None and curv is None:
            continue
        if info.constant is not None:
            if s.dim_n < 3 or sob is None:
                continue
            if info.constant == "c1" and sob.c1_effective is None:
                continue
            if info.constant == "cs" and sob.cs is None:
                continue
        out.append(iid)
    return out
