from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sepidem.errors import BackendMismatch
from sepidem.scalars import (
    EXACT,
    FLOAT64,
    Float64Field,
    GaussianRational,
    common_field,
    gauss,
    rational,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=9)


def scalars():
    return st.tuples(rationals, rationals).map(lambda t: gauss(t[0], t[1]))


def test_rational_rejects_floats():
    with pytest.raises(TypeError):
        rational(0.5)


def test_gauss_normalizes_real():
    x = gauss("3/4", 0)
    assert not isinstance(x, GaussianRational)
    assert x == rational("3/4")


def test_complex_arithmetic_collapses():
    i = gauss(0, 1)
    assert isinstance(i, GaussianRational)
    assert i * i == rational(-1)
    assert not isinstance(i * i, GaussianRational)
    assert (i + 1) * (1 - i) == rational(2)


def test_division():
    z = gauss(1, 1)
    assert z / z == 1
    assert 1 / z == gauss("1/2", "-1/2")
    assert gauss(2, 0) / 2 == 1


def test_conjugate_and_str():
    z = gauss("1/2", "-1/3")
    assert z.conjugate() == gauss("1/2", "1/3")
    assert str(z) == "(1/2-1/3i)"


@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(scalars())
def test_multiplicative_inverse(a):
    if a:
        assert a * (1 / a) == 1


@given(scalars())
def test_conjugation_is_involutive(a):
    f = EXACT
    assert f.conj(f.conj(a)) == a


def test_exact_field_coercions():
    f = EXACT
    assert f.coerce("7/5") == rational(7) / 5
    assert f.coerce(Fraction(2, 3)) == rational("2/3")
    assert f.coerce(("1/2", "1/3")) == gauss("1/2", "1/3")
    with pytest.raises(TypeError):
        f.coerce(1.5)


def test_float_field_tolerance():
    f = Float64Field(1e-9)
    assert f.eq(1.0 + 0j, 1.0 + 1e-12 + 0j)
    assert not f.eq(1.0 + 0j, 1.0 + 1e-6 + 0j)
    assert f.is_zero(1e-12 + 0j)
    assert f.is_real(1 + 1e-12j)


def test_common_field():
    assert common_field(EXACT, EXACT) == EXACT
    with pytest.raises(BackendMismatch):
        common_field(EXACT, FLOAT64)
