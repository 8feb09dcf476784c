"""Complex gamma / reciprocal gamma against recurrence, reflection,
known values, scipy, and conjugate symmetry."""

import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import gamma as scipy_gamma

from fraczeta.errors import DomainError
from fraczeta.gammafn import gamma, rgamma, sinpi


def test_known_real_values():
    assert gamma(1.0) == pytest.approx(1.0, rel=1e-14)
    assert gamma(2.0) == pytest.approx(1.0, rel=1e-14)
    assert gamma(5.0) == pytest.approx(24.0, rel=1e-14)
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert gamma(-0.5) == pytest.approx(-2.0 * math.sqrt(math.pi), rel=1e-13)


def test_complex_value_vs_scipy_grid():
    for re in (-2.3, -0.7, 0.3, 1.5, 4.2):
        for im in (-6.0, -1.1, 0.0, 2.7, 9.0):
            z = complex(re, im)
            ours = gamma(z)
            ref = complex(scipy_gamma(z))
            assert ours == pytest.approx(ref, rel=5e-13), z


def test_poles_raise():
    for k in (0, -1, -2, -7):
        with pytest.raises(DomainError):
            gamma(complex(k, 0.0))


def test_rgamma_is_zero_at_poles_and_entire():
    for k in (0, -1, -2, -9):
        assert rgamma(complex(k, 0.0)) == 0.0
    z = complex(-3.0, 1e-8)
    assert abs(rgamma(z)) < 1e-6


def test_rgamma_matches_reciprocal():
    for z in (0.25 + 0j, 1.3 - 2.2j, -1.7 + 0.4j, 3.9 + 8j):
        assert rgamma(z) == pytest.approx(1.0 / gamma(z), rel=1e-12)


def test_sinpi_exact_zeros():
    for k in range(-5, 6):
        assert sinpi(complex(k, 0.0)) == 0.0
    assert sinpi(0.5 + 0j) == pytest.approx(1.0, rel=1e-15)


@given(
    st.floats(min_value=0.2, max_value=6.0),
    st.floats(min_value=-8.0, max_value=8.0),
)
@settings(max_examples=60, deadline=None)
def test_recurrence_property(re, im):
    z = complex(re, im)
    assert gamma(z + 1) == pytest.approx(z * gamma(z), rel=1e-11)


@given(
    st.floats(min_value=-3.0, max_value=3.0),
    st.floats(min_value=0.1, max_value=6.0),
)
@settings(max_examples=60, deadline=None)
def test_conjugate_symmetry(re, im):
    z = complex(re, im)
    assert gamma(z.conjugate()) == pytest.approx(gamma(z).conjugate(), rel=1e-11)


def test_reflection_identity():
    for z in (0.3 + 1.2j, -0.8 + 2.0j, 0.1 - 4.0j):
        lhs = gamma(z) * gamma(1.0 - z)
        rhs = cmath.pi / sinpi(z)
        assert lhs == pytest.approx(rhs, rel=1e-11)
