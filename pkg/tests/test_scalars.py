from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ruled_equiv.algebra.scalars import (FieldError, Surd, field_d, format_scalar, mpq,
                                         parse_scalar, sign, surd)

rationals = st.fractions(max_denominator=50).map(lambda f: mpq(f.numerator, f.denominator))


def test_surd_collapses_to_rational():
    r3 = Surd(0, 1, 3)
    assert r3 * r3 == 3
    assert isinstance(r3 * r3, type(mpq(3)))
    assert (r3 - r3) == 0


def test_surd_inverse_and_division():
    x = Surd(1, 2, 5)
    assert x * x.inverse() == 1
    assert (mpq(3) / x) * x == 3


def test_mixing_radicands_raises():
    with pytest.raises(FieldError):
        Surd(0, 1, 2) + Surd(0, 1, 3)
    with pytest.raises(FieldError):
        field_d(Surd(0, 1, 2), Surd(1, 1, 3))


@pytest.mark.parametrize("a,b,expected", [(1, 1, 1), (-1, 1, 1), (2, -1, 1), (1, -1, -1), (0, -1, -1)])
def test_surd_sign(a, b, expected):
    # a + b sqrt(2)
    assert sign(surd(a, b, 2)) == expected


@pytest.mark.parametrize("text,value", [
    ("3/4", mpq(3, 4)),
    ("-2", mpq(-2)),
    ("sqrt(3)", Surd(0, 1, 3)),
    ("1/2*sqrt(3)", Surd(0, mpq(1, 2), 3)),
    ("-1/2+sqrt(3)/2", Surd(mpq(-1, 2), mpq(1, 2), 3)),
    ("2-sqrt(3)", Surd(2, -1, 3)),
])
def test_parse_scalar(text, value):
    assert parse_scalar(text, 3) == value


def test_parse_rejects_wrong_field():
    with pytest.raises(FieldError):
        parse_scalar("sqrt(5)", 3)
    with pytest.raises(FieldError):
        parse_scalar("sqrt(5)")
    with pytest.raises(ValueError):
        parse_scalar("1.5")


@given(rationals, rationals)
def test_format_parse_round_trip(a, b):
    x = surd(a, b, 7)
    assert parse_scalar(format_scalar(x), 7) == x


@given(rationals, rationals, rationals, rationals)
def test_surd_field_laws(a, b, c, e):
    x, y = surd(a, b, 2), surd(c, e, 2)
    assert x * y == y * x
    assert (x + y) * x == x * x + y * x
    if y:
        assert (x / y) * y == x


def test_fraction_interop():
    assert Surd(Fraction(1, 2), 0, 3) == mpq(1, 2)
