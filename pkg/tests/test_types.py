import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eigenbound.errors import (
    EmptySpectrum,
    InvalidGeometry,
    NonPositiveEigenvalue,
    NonPositiveFactor,
    NonSimpleGroundState,
    UnsortedValues,
)
from eigenbound.types import (
    BoundReport,
    Box,
    CurvatureSummary,
    EuclideanBall,
    MeshGeometry,
    Operator,
    SobolevConfig,
    SphericalCap,
    Spectrum,
    dumps,
    geometry_from_dict,
    holds_within,
    scale_spectrum,
    spectra_from_values,
    tightness_of,
    validate_spectrum,
)

positive = st.floats(min_value=1e-3, max_value=1e6, allow_nan=False, allow_infinity=False)
sorted_values = st.lists(positive, min_size=1, max_size=30).map(sorted)


def test_validate_rejects_bad_spectra():
    with pytest.raises(EmptySpectrum):
        spectra_from_values("laplacian", 2, [])
    with pytest.raises(NonPositiveEigenvalue):
        spectra_from_values("laplacian", 2, [0.0, 1.0])
    with pytest.raises(NonPositiveEigenvalue):
        spectra_from_values("laplacian", 2, [1.0, math.inf])
    with pytest.raises(UnsortedValues):
        spectra_from_values("laplacian", 2, [2.0, 1.0])
    with pytest.raises(NonSimpleGroundState):
        validate_spectrum(Spectrum("laplacian", 2, 2, (1.0, 1.0)), require_simple_ground=True)


def test_error_codes_are_stable():
    assert UnsortedValues.code == "unsorted_values"
    assert NonPositiveEigenvalue.code == "non_positive_eigenvalue"


@given(sorted_values, st.sampled_from(list(Operator)), st.integers(1, 6))
def test_spectrum_json_round_trip(values, op, n):
    s = spectra_from_values(op, n, values, n, "test")
    back = Spectrum.from_dict(json.loads(dumps(s.to_dict())))
    assert back == s


@given(sorted_values, st.sampled_from(list(Operator)), positive)
def test_scaling_inverts(values, op, factor):
    s = spectra_from_values(op, 2, values)
    t = scale_spectrum(scale_spectrum(s, factor), 1.0 / factor)
    for a, b in zip(s.values, t.values):
        assert math.isclose(a, b, rel_tol=1e-12)


def test_scaling_power_and_factor():
    s = spectra_from_values("bilaplacian", 2, [16.0])
    assert scale_spectrum(s, 2.0).values == (1.0,)
    assert scale_spectrum(s, 1.0) is s
    with pytest.raises(NonPositiveFactor):
        scale_spectrum(s, 0.0)


def test_geometry_round_trip():
    for g in (Box((1.0, 2.0)), EuclideanBall(3, 0.5), SphericalCap(2, 1.0, 1.0), MeshGeometry("m.obj", 2)):
        assert geometry_from_dict(g.to_dict()) == g


def test_geometry_validation():
    with pytest.raises(InvalidGeometry):
        geometry_from_dict({"variant": "torus"})
    with pytest.raises(InvalidGeometry):
        geometry_from_dict({"variant": "euclidean_ball"})
    with pytest.raises(InvalidGeometry):
        Box((1.0, -1.0))
    with pytest.raises(InvalidGeometry):
        SphericalCap(2, 1.0, 4.0)


def test_dilate():
    assert Box((1.0, 2.0)).dilate(2.0) == Box((2.0, 4.0))
    assert EuclideanBall(2, 1.0).dilate(3.0).radius == 3.0
    cap = SphericalCap(3, 1.0, 1.0).dilate(2.0)
    assert cap.sphere_radius == 2.0 and cap.cap_angle == 1.0


def test_curvature_summary_validation():
    with pytest.raises(ValueError):
        CurvatureSummary(-1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        CurvatureSummary(0.0, 0.0, 0.0)
    c = CurvatureSummary(1.0, 2.0, 3.0)
    assert CurvatureSummary.from_dict(c.to_dict()) == c


def test_sobolev_config_parsing():
    assert SobolevConfig.from_dict({"c1": {"preset": "talenti"}}).c1 == "talenti"
    cfg = SobolevConfig.from_dict({"c1": {"value": 0.2}, "c2": {"value": 0.3}})
    assert (cfg.c1, cfg.c2) == (0.2, 0.3)
    assert SobolevConfig.from_dict(cfg.to_dict()) == cfg
    with pytest.raises(ValueError):
        SobolevConfig("other")
    with pytest.raises(ValueError):
        SobolevConfig(None, -1.0)


def test_bound_report_round_trip_with_infinity():
    r = BoundReport("hile_protter", 1, 0.75, math.inf, True, 0.0, None, {"c": 4.0}, ("w",))
    d = json.loads(dumps(r.to_dict()))
    assert d["rhs"] == "inf"
    assert BoundReport.from_dict(d) == r


def test_holds_and_tightness():
    assert holds_within(1.0, 1.0)
    assert holds_within(1.0 + 1e-13, 1.0)
    assert not holds_within(1.0 + 1e-9, 1.0)
    assert holds_within(5.0, math.inf)
    assert tightness_of(1.0, 4.0) == 0.25
    assert tightness_of(1.0, math.inf) == 0.0
    assert tightness_of(1.0, 0.0) is None


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": 2}) == '{\n  "a": 2,\n  "b": 1\n}\n'
    with pytest.raises(ValueError):
        dumps({"x": math.nan})
