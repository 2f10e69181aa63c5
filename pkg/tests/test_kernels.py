"""Cross-backend agreement of the scalar kernels."""

import importlib
import math
import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eigenbound import kernels

BACKENDS = kernels.available_backends()
needs_cython = pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernels not built")


def test_python_backend_always_available():
    assert BACKENDS["python"].BACKEND == "python"
    assert kernels.BACKEND in BACKENDS


@needs_cython
@given(st.floats(min_value=0.0, max_value=40.0), st.floats(min_value=0.0, max_value=80.0))
def test_bessel_bit_identical(nu, x):
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    assert py.bessel_j(nu, x) == cy.bessel_j(nu, x)
    assert py.bessel_i_scaled(nu, x) == cy.bessel_i_scaled(nu, x)


@needs_cython
@given(st.floats(min_value=0.01, max_value=170.0))
def test_gamma_bit_identical(x):
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    assert py.gamma(x) == cy.gamma(x)
    assert py.lgamma(x) == cy.lgamma(x)


@needs_cython
@pytest.mark.parametrize("n,l,mu,theta0", [(2, 0, 2.0, math.pi / 2), (3, 1, 8.0, 1.0), (2, 3, 40.0, 2.5)])
def test_cap_shoot_bit_identical(n, l, mu, theta0):
    assert BACKENDS["python"].cap_shoot(n, l, mu, theta0) == BACKENDS["cython"].cap_shoot(n, l, mu, theta0)


def test_env_forces_pure_python():
    env = dict(os.environ, EIGENBOUND_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from eigenbound import kernels; print(kernels.BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"


def test_reload_keeps_api():
    mod = importlib.reload(kernels)
    for name in ("lgamma", "gamma", "bessel_j", "bessel_i_scaled", "cap_shoot"):
        assert callable(getattr(mod, name))
