"""Shared value types, validation and JSON round-tripping."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Optional, Sequence, Union

from .errors import (
    EmptySpectrum,
    InvalidGeometry,
    NonPositiveEigenvalue,
    NonPositiveFactor,
    NonSimpleGroundState,
    SpectrumError,
    UnsortedValues,
)

#: Relative tolerance used when deciding whether an inequality holds.
REPORT_RTOL = 1e-12


class Operator(str, Enum):
    LAPLACIAN = "laplacian"
    BILAPLACIAN = "bilaplacian"

    @property
    def scaling_power(self) -> int:
        """Exponent p with eigenvalues scaling as factor**(-p) under dilation."""
        return 2 if self is Operator.LAPLACIAN else 4


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _encode_float(x: Optional[float]) -> Union[float, str, None]:
    # JSON has no infinities; they appear as "inf"/"-inf" strings.
    if x is None:
        return None
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return float(x)


def _decode_float(x: Union[float, str, None]) -> Optional[float]:
    if x is None:
        return None
    return float(x)


@dataclass(frozen=True)
class Spectrum:
    operator: Operator
    dim_n: int
    ambient_m: int
    values: tuple
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "operator", Operator(self.operator))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)

    def prefix(self, count: int) -> "Spectrum":
        return replace(self, values=self.values[:count])

    def to_dict(self) -> dict:
        return {
            "operator": self.operator.value,
            "dim_n": self.dim_n,
            "ambient_m": self.ambient_m,
            "values": list(self.values),
            "source": self.source,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Spectrum":
        return cls(
            operator=Operator(d["operator"]),
            dim_n=int(d["dim_n"]),
            ambient_m=int(d.get("ambient_m", 0)),
            values=tuple(float(v) for v in d["values"]),
            source=str(d.get("source", "")),
        )


def validate_spectrum(s: Spectrum, require_simple_ground: bool = False) -> Spectrum:
    """Return ``s`` unchanged if it is a well-formed spectrum.

    ``require_simple_ground`` additionally enforces ``values[0] < values[1]``
    for Laplacian spectra; analytic generators on connected domains set it.
    """
    if len(s.values) == 0:
        raise EmptySpectrum("spectrum has no values")
    if s.dim_n < 1:
        raise SpectrumError(f"dim_n must be >= 1, got {s.dim_n}")
    for i, v in enumerate(s.values):
        if not (v > 0) or not math.isfinite(v):
            raise NonPositiveEigenvalue(f"values[{i}] = {v!r} is not a positive finite number")
    for i in range(len(s.values) - 1):
        if s.values[i] > s.values[i + 1]:
            raise UnsortedValues(
                f"values[{i}] = {s.values[i]!r} > values[{i + 1}] = {s.values[i + 1]!r}"
            )
    if (
        require_simple_ground
        and s.operator is Operator.LAPLACIAN
        and len(s.values) > 1
        and not s.values[0] < s.values[1]
    ):
        raise NonSimpleGroundState("first Laplacian eigenvalue is not simple")
    return s


def scale_spectrum(s: Spectrum, factor: float) -> Spectrum:
    """Spectrum of the domain dilated by ``factor``."""
    if not factor > 0:
        raise NonPositiveFactor(f"dilation factor must be positive, got {factor!r}")
    if factor == 1:
        return s
    mult = factor ** (-s.operator.scaling_power)
    return replace(
        s,
        values=tuple(v * mult for v in s.values),
        source=f"{s.source}|scaled({factor!r})" if s.source else f"scaled({factor!r})",
    )


# ---------------------------------------------------------------------------
# Geometry descriptions


def _positive(name: str, x: float) -> float:
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise InvalidGeometry(f"{name} must be a positive finite number, got {x!r}")
    return x


@dataclass(frozen=True)
class Box:
    lengths: tuple
    variant = "box"

    def __post_init__(self):
        if len(self.lengths) < 1:
            raise InvalidGeometry("box needs at least one length")
        object.__setattr__(
            self, "lengths", tuple(_positive("length", v) for v in self.lengths)
        )

    @property
    def dim(self) -> int:
        return len(self.lengths)

    @property
    def ambient_dim(self) -> int:
        return len(self.lengths)

    def dilate(self, s: float) -> "Box":
        return Box(tuple(v * s for v in self.lengths))

    def to_dict(self) -> dict:
        return {"variant": self.variant, "lengths": list(self.lengths)}


@dataclass(frozen=True)
class EuclideanBall:
    n: int
    radius: float = 1.0
    variant = "euclidean_ball"

    def __post_init__(self):
        if int(self.n) < 2:
            raise InvalidGeometry(f"ball dimension must be >= 2, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "radius", _positive("radius", self.radius))

    @property
    def dim(self) -> int:
        return self.n

    @property
    def ambient_dim(self) -> int:
        return self.n

    def dilate(self, s: float) -> "EuclideanBall":
        return EuclideanBall(self.n, self.radius * s)

    def to_dict(self) -> dict:
        return {"variant": self.variant, "n": self.n, "radius": self.radius}


@dataclass(frozen=True)
class SphericalCap:
    """Geodesic ball of angular radius ``cap_angle`` in the round sphere S^n(R)."""

    sphere_dim: int
    sphere_radius: float = 1.0
    cap_angle: float = math.pi / 2
    variant = "spherical_cap"

    def __post_init__(self):
        if int(self.sphere_dim) < 2:
            raise InvalidGeometry(f"sphere dimension must be >= 2, got {self.sphere_dim}")
        object.__setattr__(self, "sphere_dim", int(self.sphere_dim))
        object.__setattr__(self, "sphere_radius", _positive("sphere_radius", self.sphere_radius))
        theta = _positive("cap_angle", self.cap_angle)
        if not theta < math.pi:
            raise InvalidGeometry(f"cap_angle must be < pi, got {theta!r}")
        object.__setattr__(self, "cap_angle", theta)

    @property
    def dim(self) -> int:
        return self.sphere_dim

    @property
    def ambient_dim(self) -> int:
        return self.sphere_dim + 1

    def dilate(self, s: float) -> "SphericalCap":
        return SphericalCap(self.sphere_dim, self.sphere_radius * s, self.cap_angle)

    def to_dict(self) -> dict:
        return {
            "variant": self.variant,
            "sphere_dim": self.sphere_dim,
            "sphere_radius": self.sphere_radius,
            "cap_angle": self.cap_angle,
        }


@dataclass(frozen=True)
class MeshGeometry:
    path: str
    intrinsic_dim: int = 2
    variant = "mesh"

    def __post_init__(self):
        object.__setattr__(self, "intrinsic_dim", int(self.intrinsic_dim))
        if self.intrinsic_dim < 1:
            raise InvalidGeometry("intrinsic_dim must be >= 1")

    @property
    def dim(self) -> int:
        return self.intrinsic_dim

    def to_dict(self) -> dict:
        return {"variant": self.variant, "path": self.path, "intrinsic_dim": self.intrinsic_dim}


GeometrySpec = Union[Box, EuclideanBall, SphericalCap, MeshGeometry]


def geometry_from_dict(d: dict) -> GeometrySpec:
    variant = d.get("variant")
    try:
        if variant == "box":
            return Box(tuple(d["lengths"]))
        if variant == "euclidean_ball":
            return EuclideanBall(d["n"], d.get("radius", 1.0))
        if variant == "spherical_cap":
            return SphericalCap(d["sphere_dim"], d.get("sphere_radius", 1.0), d["cap_angle"])
        if variant == "mesh":
            return MeshGeometry(d["path"], d.get("intrinsic_dim", 2))
    except KeyError as exc:
        raise InvalidGeometry(f"geometry {variant!r} is missing field {exc}") from None
    raise InvalidGeometry(f"unknown geometry variant {variant!r}")


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurvatureSummary:
    """Curvature data of an immersed domain.

    ``h_sup`` is sup |H|, ``h_ln`` the L^n norm of |H| over the domain (invariant
    under dilation), ``volume`` the Riemannian volume of the domain.
    """

    h_sup: float
    h_ln: float
    volume: float

    def __post_init__(self):
        for name in ("h_sup", "h_ln"):
            v = float(getattr(self, name))
            if not v >= 0:
                raise ValueError(f"{name} must be nonnegative, got {v!r}")
            object.__setattr__(self, name, v)
        vol = float(self.volume)
        if not vol > 0:
            raise ValueError(f"volume must be positive, got {vol!r}")
        object.__setattr__(self, "volume", vol)

    def to_dict(self) -> dict:
        return {"h_sup": self.h_sup, "h_ln": self.h_ln, "volume": self.volume}

    @classmethod
    def from_dict(cls, d: dict) -> "CurvatureSummary":
        return cls(d["h_sup"], d["h_ln"], d["volume"])


@dataclass(frozen=True)
class SobolevConfig:
    """User-side Sobolev constants.

    ``c1`` is either a number or the preset name ``"talenti"``; ``c2`` (the
    Michael-Simon constant) has no default and must be supplied to use the
    Michael-Simon evaluators.
    """

    c1: Union[float, str, None] = None
    c2: Optional[float] = None

    def __post_init__(self):
        if isinstance(self.c1, str):
            if self.c1 != "talenti":
                raise ValueError(f"unknown c1 preset {self.c1!r}")
        elif self.c1 is not None:
            object.__setattr__(self, "c1", _positive("c1", self.c1))
        if self.c2 is not None:
            object.__setattr__(self, "c2", _positive("c2", self.c2))

    def to_dict(self) -> dict:
        d: dict = {}
        if isinstance(self.c1, str):
            d["c1"] = {"preset": self.c1}
        elif self.c1 is not None:
            d["c1"] = {"value": self.c1}
        if self.c2 is not None:
            d["c2"] = {"value": self.c2}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SobolevConfig":
        c1 = d.get("c1")
        if isinstance(c1, dict):
            c1 = c1["preset"] if "preset" in c1 else c1["value"]
        c2 = d.get("c2")
        if isinstance(c2, dict):
            c2 = c2["value"]
        return cls(c1, c2)


@dataclass(frozen=True)
class BoundReport:
    inequality_id: str
    k: int
    lhs: Optional[float]
    rhs: Optional[float]
    holds: Optional[bool]
    tightness: Optional[float]
    implied_bound: Optional[float]
    constants_used: dict = field(default_factory=dict)
    warnings: tuple = ()

    def to_dict(self) -> dict:
        return {
            "inequality_id": self.inequality_id,
            "k": self.k,
            "lhs": _encode_float(self.lhs),
            "rhs": _encode_float(self.rhs),
            "holds": self.holds,
            "tightness": _encode_float(self.tightness),
            "implied_bound": _encode_float(self.implied_bound),
            "constants_used": {k: _encode_float(v) for k, v in sorted(self.constants_used.items())},
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BoundReport":
        return cls(
            inequality_id=d["inequality_id"],
            k=int(d["k"]),
            lhs=_decode_float(d["lhs"]),
            rhs=_decode_float(d["rhs"]),
            holds=d["holds"],
            tightness=_decode_float(d["tightness"]),
            implied_bound=_decode_float(d["implied_bound"]),
            constants_used={k: _decode_float(v) for k, v in d.get("constants_used", {}).items()},
            warnings=tuple(d.get("warnings", ())),
        )


def holds_within(lhs: float, rhs: float, rtol: float = REPORT_RTOL) -> bool:
    """``lhs <= rhs`` up to a relative reporting tolerance."""
    if math.isinf(rhs) and rhs > 0:
        return True
    return lhs <= rhs + rtol * max(abs(lhs), abs(rhs))


def tightness_of(lhs: float, rhs: float) -> Optional[float]:
    if math.isinf(rhs):
        return 0.0 if rhs > 0 else None
    if rhs > 0:
        return lhs / rhs
    return None


def spectra_from_values(operator, n: int, values: Sequence[float], m: int = 0, source: str = "") -> Spectrum:
    return validate_spectrum(Spectrum(Operator(operator), n, m, tuple(values), source))
