import math

import pytest
import scipy.special as ss
from hypothesis import given
from hypothesis import strategies as st

from eigenbound.errors import BracketExhausted, DomainError, Overflow
from eigenbound.special import (
    RootBracket,
    bessel_i,
    bessel_i_prime,
    bessel_i_scaled,
    bessel_j,
    bessel_j_prime,
    bessel_j_zero,
    bessel_j_zeros_upto,
    bisect,
    find_roots,
    gamma_fn,
    sphere_area,
)

orders = st.floats(min_value=0.0, max_value=30.0).map(lambda v: round(v * 2) / 2)
args = st.floats(min_value=0.0, max_value=60.0)


@given(st.floats(min_value=1e-3, max_value=170.0))
def test_gamma_matches_math(x):
    assert gamma_fn(x) == pytest.approx(math.gamma(x), rel=1e-12)


def test_gamma_exact_values():
    assert gamma_fn(5.0) == 24.0
    assert gamma_fn(1.0) == 1.0
    assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)


def test_gamma_domain_and_overflow():
    with pytest.raises(DomainError):
        gamma_fn(0.0)
    with pytest.raises(DomainError):
        gamma_fn(-1.5)
    with pytest.raises(Overflow):
        gamma_fn(200.0)


def test_sphere_areas():
    assert sphere_area(1) == pytest.approx(2 * math.pi, rel=1e-15)
    assert sphere_area(2) == pytest.approx(4 * math.pi, rel=1e-15)
    assert sphere_area(3) == pytest.approx(2 * math.pi**2, rel=1e-15)


@given(orders, args)
def test_bessel_j_matches_scipy(nu, x):
    ref = ss.jv(nu, x)
    assert bessel_j(nu, x) == pytest.approx(ref, rel=1e-10, abs=1e-13)


@given(orders, st.floats(min_value=0.0, max_value=1000.0))
def test_bessel_i_scaled_matches_scipy(nu, x):
    assert bessel_i_scaled(nu, x) == pytest.approx(ss.ive(nu, x), rel=1e-11, abs=1e-300)


def test_bessel_i_unscaled_and_overflow():
    assert bessel_i(0.5, 3.0) == pytest.approx(ss.iv(0.5, 3.0), rel=1e-12)
    with pytest.raises(Overflow):
        bessel_i(0.0, 701.0)
    assert math.isfinite(bessel_i_scaled(0.0, 5000.0))


def test_bessel_argument_checks():
    with pytest.raises(DomainError):
        bessel_j(-1.0, 1.0)
    with pytest.raises(DomainError):
        bessel_j(0.0, -1.0)
    with pytest.raises(DomainError):
        bessel_i_scaled(0.0, math.nan)


@given(orders, st.floats(min_value=0.1, max_value=40.0))
def test_derivatives_match_scipy(nu, x):
    assert bessel_j_prime(nu, x) == pytest.approx(ss.jvp(nu, x), rel=1e-9, abs=1e-12)
    assert bessel_i_prime(nu, x) == pytest.approx(ss.ivp(nu, x), rel=1e-9, abs=1e-12)


def test_derivatives_at_zero():
    assert bessel_j_prime(1.0, 0.0) == 0.5
    assert bessel_j_prime(0.0, 0.0) == 0.0
    assert bessel_i_prime(1.0, 0.0) == 0.5


@pytest.mark.parametrize("nu", [0, 1, 2, 5, 10])
def test_integer_order_zeros_match_scipy(nu):
    ref = ss.jn_zeros(nu, 20)
    for k in range(1, 21):
        assert bessel_j_zero(nu, k) == pytest.approx(ref[k - 1], rel=1e-13)


@pytest.mark.parametrize("nu", [0.5, 1.5, 2.5])
def test_half_integer_order_zeros(nu):
    # J_{1/2} zeros are k pi; the others are checked by sign change with scipy
    if nu == 0.5:
        for k in range(1, 10):
            assert bessel_j_zero(nu, k) == pytest.approx(k * math.pi, rel=1e-13)
    for k in range(1, 10):
        z = bessel_j_zero(nu, k)
        assert abs(ss.jv(nu, z)) < 1e-12


def test_first_zero_of_j0():
    assert bessel_j_zero(0.0, 1) == pytest.approx(2.404825557695773, abs=1e-12)
    assert bessel_j_zero(0.5, 3) == pytest.approx(3 * math.pi, abs=1e-12)


def test_zero_rejects_bad_index():
    with pytest.raises(DomainError):
        bessel_j_zero(0.0, 0)


def test_zeros_upto_is_complete():
    zs = bessel_j_zeros_upto(3.0, 50.0)
    ref = [z for z in ss.jn_zeros(3, 30) if z <= 50.0]
    assert len(zs) == len(ref)
    for a, b in zip(zs, ref):
        assert a == pytest.approx(b, rel=1e-13)


@given(st.lists(st.floats(min_value=-10.0, max_value=10.0), min_size=1, max_size=6, unique=True))
def test_find_roots_on_polynomials(roots):
    # the refinement stops once two grids agree, so only roots further apart
    # than two cells of the initial 64-cell scan are guaranteed to separate
    roots = sorted(roots)
    if min((b - a for a, b in zip(roots, roots[1:])), default=1.0) < 0.75:
        return

    def f(x):
        return math.prod(x - r for r in roots)

    got = find_roots(f, -11.0, 11.0, tol=1e-12)
    assert len(got) == len(roots)
    for a, b in zip(got, roots):
        assert a == pytest.approx(b, abs=1e-9)


def test_find_roots_examples():
    got = find_roots(math.sin, 1.0, 10.0)
    assert got == pytest.approx([math.pi, 2 * math.pi, 3 * math.pi], abs=1e-11)
    assert find_roots(lambda x: x * x + 1.0, 0.0, 5.0) == []
    j0 = find_roots(lambda x: bessel_j(0.0, x), 0.0, 10.0)
    assert j0 == pytest.approx([2.40483, 5.52008, 8.65373], abs=1e-5)
    assert j0 == pytest.approx(list(ss.jn_zeros(0, 3)), abs=1e-10)


def test_find_roots_limit():
    with pytest.raises(BracketExhausted):
        find_roots(math.sin, 0.5, 100.0, max_roots=5)
    assert find_roots(math.sin, 1.0, 0.0) == []


def test_bisect_and_bracket_validation():
    br = RootBracket(1.0, 2.0, math.cos(1.0), math.cos(2.0))
    assert bisect(math.cos, br, tol=1e-14) == pytest.approx(math.pi / 2, abs=1e-13)
    with pytest.raises(ValueError):
        RootBracket(1.0, 2.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        RootBracket(2.0, 1.0, -1.0, 1.0)


@pytest.mark.parametrize("nu", range(1, 11))
def test_recurrence_residual(nu):
    for i in range(1, 501):
        x = i * 0.1
        r = bessel_j(nu - 1, x) + bessel_j(nu + 1, x) - (2 * nu / x) * bessel_j(nu, x)
        assert abs(r) <= 1e-9 * max(1.0, abs(bessel_j(nu, x)))


@given(st.floats(min_value=1e-3, max_value=50.0))
def test_half_integer_closed_forms(x):
    c = math.sqrt(2.0 / (math.pi * x))
    assert bessel_j(0.5, x) == pytest.approx(c * math.sin(x), abs=1e-10)
    assert bessel_j(1.5, x) == pytest.approx(c * (math.sin(x) / x - math.cos(x)), abs=1e-10)
    assert bessel_i_scaled(0.5, x) == pytest.approx(c * math.sinh(x) * math.exp(-x), abs=1e-10)
    assert bessel_i_scaled(1.5, x) == pytest.approx(
        c * (math.cosh(x) - math.sinh(x) / x) * math.exp(-x), abs=1e-10
    )


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 2.5, 7.0, 20.0])
def test_function_vanishes_at_zeros(nu):
    for z in bessel_j_zeros_upto(nu, 80.0):
        assert abs(bessel_j(nu, z)) <= 1e-9


def test_trivial_values():
    assert bessel_j(0.0, 0.0) == 1.0
    assert bessel_j(2.0, 0.0) == 0.0
