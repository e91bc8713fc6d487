import math

from hypothesis import given, settings
from hypothesis import strategies as st

from polycell.field import (
    RealCyclotomicField,
    cos2_minpoly,
    cyclotomic_poly,
    dickson_poly,
)


def test_cyclotomic_small():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(2) == (1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_minpoly_values():
    assert cos2_minpoly(2) == (0, 1)        # theta = 0
    assert cos2_minpoly(3) == (-1, 1)       # theta = 1
    assert cos2_minpoly(4) == (-2, 0, 1)    # theta = sqrt(2)
    assert cos2_minpoly(6) == (-3, 0, 1)    # theta = sqrt(3)
    assert cos2_minpoly(7) == (1, -2, -1, 1)
    assert len(cos2_minpoly(42)) == 13      # degree 12


def test_minpoly_kills_theta():
    for N in (2, 3, 4, 5, 6, 7, 12, 42):
        theta = 2 * math.cos(math.pi / N)
        val = sum(c * theta**i for i, c in enumerate(cos2_minpoly(N)))
        assert abs(val) < 1e-9


def test_dickson_is_doubled_cosine():
    for k in range(8):
        for x in (0.3, 1.1, 1.9):
            t = math.acos(x / 2)
            val = sum(c * x**i for i, c in enumerate(dickson_poly(k)))
            assert abs(val - 2 * math.cos(k * t)) < 1e-9


def test_two_cos_matches_float():
    f = RealCyclotomicField(42)
    for m in (2, 3, 7):
        scalar = f.two_cos(42 // m)
        assert abs(f.to_float(scalar) - 2 * math.cos(math.pi / m)) < 1e-9


def test_sign_decisions():
    f = RealCyclotomicField(42)
    theta = f.theta
    assert f.sign(theta) == 1
    assert f.sign(f.neg(theta)) == -1
    assert f.sign(f.zero) == 0
    # theta - 2 < 0 < theta - 1 for N = 42
    assert f.sign(f.sub(theta, f.from_int(2))) == -1
    assert f.sign(f.sub(theta, f.from_int(1))) == 1
    # tiny but nonzero: theta^2 - (theta^2 reduced twice) stays zero
    assert f.is_zero(f.sub(f.mul(theta, theta), f.mul(theta, theta)))


def test_degenerate_rational_fields():
    f2 = RealCyclotomicField(2)  # theta = 0
    assert f2.sign(f2.theta) == 0
    f1 = RealCyclotomicField(1)  # theta = -2
    assert f1.sign(f1.theta) == -1


scalars = st.lists(st.integers(min_value=-9, max_value=9), min_size=12, max_size=12).map(tuple)


@settings(max_examples=60, deadline=None)
@given(a=scalars, b=scalars, c=scalars)
def test_ring_axioms_n42(a, b, c):
    f = RealCyclotomicField(42)
    assert f.mul(a, b) == f.mul(b, a)
    assert f.add(a, b) == f.add(b, a)
    left = f.mul(a, f.add(b, c))
    right = f.add(f.mul(a, b), f.mul(a, c))
    assert left == right
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))


@settings(max_examples=40, deadline=None)
@given(a=scalars)
def test_sign_matches_float_when_clear(a):
    f = RealCyclotomicField(42)
    approx = f.to_float(a)
    if abs(approx) > 1e-6:
        assert f.sign(a) == (1 if approx > 0 else -1)
