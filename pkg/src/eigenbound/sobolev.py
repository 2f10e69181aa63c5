"""Sobolev and Michael-Simon constants, and the Faber-Krahn type check.

C1 is the constant of the L^2 Sobolev inequality on M,
    ||u||_{2n/(n-2)}^2 <= C1 ||grad u||_2^2,
with the sharp Euclidean value available as the ``"talenti"`` preset.  C2 is
the Michael-Simon constant; it has no default.  From C2 and the curvature
norm ||H||_{L^n} the derived constant
    Cs = (C2 / (1 - ||H|| C2) * 2(n-1)/(n-2))^2
is available when ||H|| C2 < 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import DimensionTooLow, GateViolation, MissingSobolev, OperatorMismatch
from .special import sphere_area
from .types import BoundReport, CurvatureSummary, Operator, SobolevConfig, Spectrum, holds_within, tightness_of


@dataclass(frozen=True)
class DerivedConstants:
    """Constants resolved for one curvature summary and dimension.

    ``cs`` is present only when ``c2`` is and the gate ``h_ln * c2 < 1``
    passes; ``provenance`` is ``"talenti"`` or ``"user"`` for ``c1_effective``.
    """

    c1_effective: Optional[float] = None
    c2: Optional[float] = None
    cs: Optional[float] = None
    gate_ok: bool = False
    provenance: str = "user"

    def to_dict(self) -> dict:
        return {
            "c1_effective": self.c1_effective,
            "c2": self.c2,
            "cs": self.cs,
            "gate_ok": self.gate_ok,
            "provenance": self.provenance,
        }


def _check_dim(n: int) -> int:
    if int(n) != n or n < 3:
        raise DimensionTooLow(f"Sobolev constants need n >= 3, got n={n}")
    return int(n)


def derive_cs(c2: float, curv: CurvatureSummary, n: int) -> DerivedConstants:
    """Derived Sobolev constant from the Michael-Simon constant.

    Raises
    ------
    DimensionTooLow
        For n < 3, where 2(n-1)/(n-2) is undefined.
    GateViolation
        When ``curv.h_ln * c2 >= 1``.
    """
    n = _check_dim(n)
    if not c2 > 0:
        raise ValueError(f"c2 must be positive, got {c2!r}")
    prod = curv.h_ln * c2
    if prod >= 1.0:
        raise GateViolation(f"||H||_Ln * C2 = {prod!r} >= 1; the Michael-Simon bounds do not apply")
    cs = (c2 / (1.0 - prod) * (2.0 * (n - 1) / (n - 2))) ** 2
    return DerivedConstants(None, c2, cs, True, "user")


def talenti_c1(n: int) -> float:
    """Sharp constant of the Euclidean L^2 Sobolev inequality in R^n.

    Equals 4 / (n (n-2) |S^n|^{2/n}); extremals are the bubbles
    (1 + |x|^2)^{-(n-2)/2}.
    """
    n = _check_dim(n)
    return 4.0 / (n * (n - 2) * sphere_area(n) ** (2.0 / n))


def sobolev_ratio(u: Callable[[float], float], du: Callable[[float], float], n: int) -> float:
    """||u||_{2n/(n-2)}^2 / ||grad u||_2^2 for a radial function on R^n.

    Both integrals are evaluated by adaptive quadrature in r on (0, inf).
    """
    from scipy.integrate import quad

    n = _check_dim(n)
    p = 2.0 * n / (n - 2)
    area = sphere_area(n - 1)
    kw = dict(epsabs=0.0, epsrel=1e-13, limit=500)
    num, _ = quad(lambda r: abs(u(r)) ** p * r ** (n - 1), 0.0, math.inf, **kw)
    den, _ = quad(lambda r: du(r) ** 2 * r ** (n - 1), 0.0, math.inf, **kw)
    return (area * num) ** (2.0 / p) / (area * den)


def bubble_ratio(n: int) -> float:
    """Sobolev ratio of the extremal bubble; equals the sharp constant."""
    a = (n - 2) / 2.0
    return sobolev_ratio(
        lambda r: (1.0 + r * r) ** (-a),
        lambda r: -2.0 * a * r * (1.0 + r * r) ** (-a - 1.0),
        n,
    )


def resolve_sobolev(
    config: Optional[SobolevConfig],
    curv: Optional[CurvatureSummary],
    n: int,
) -> DerivedConstants:
    """Resolve a user configuration into numeric constants.

    The ``"talenti"`` preset is only accepted for flat immersions
    (``curv.h_sup == 0``).  ``cs`` is derived when ``c2`` is configured.

    Raises
    ------
    DimensionTooLow, GateViolation, MissingSobolev
    """
    n = _check_dim(n)
    if config is None:
        return DerivedConstants()
    c1 = config.c1
    prov = "user"
    if c1 == "talenti":
        if curv is not None and curv.h_sup > 0:
            raise MissingSobolev("the talenti preset is only valid for flat immersions; supply c1")
        c1 = talenti_c1(n)
        prov = "talenti"
    c2 = config.c2
    cs = None
    gate = False
    if c2 is not None:
        if curv is None:
            raise MissingSobolev("deriving Cs needs a curvature summary")
        d = derive_cs(c2, curv, n)
        cs, gate = d.cs, d.gate_ok
    return DerivedConstants(c1, c2, cs, gate, prov)


def faber_krahn_check(spectrum: Spectrum, volume: float, Lambda: float) -> BoundReport:
    """Check lambda_1 >= Lambda * volume^{-2/n}.

    The report has ``lhs = Lambda * volume^{-2/n}`` and ``rhs = lambda_1``.
    """
    if spectrum.operator is not Operator.LAPLACIAN:
        raise OperatorMismatch("the Faber-Krahn check applies to Laplacian spectra")
    if not volume > 0 or not Lambda > 0:
        raise ValueError("volume and Lambda must be positive")
    lhs = Lambda * volume ** (-2.0 / spectrum.dim_n)
    rhs = spectrum.values[0]
    return BoundReport(
        "faber_krahn",
        1,
        lhs,
        rhs,
        holds_within(lhs, rhs),
        tightness_of(lhs, rhs),
        None,
        {"Lambda": Lambda, "volume": volume},
    )
