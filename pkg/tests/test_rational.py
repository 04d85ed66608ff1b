from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lplab.errors import RationalParseError
from lplab.rational import format_rational, parse_rational, to_rational


@pytest.mark.parametrize(
    "text, expected",
    [("3/4", F(3, 4)), ("-7", F(-7)), ("0.5", F(1, 2)), ("-0.125", F(-1, 8)), (" 2/6 ", F(1, 3)), ("0", F(0))],
)
def test_parse(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", ["", "abc", "1/0", "nan", "inf", "1//2"])
def test_parse_rejects(text):
    with pytest.raises(RationalParseError):
        parse_rational(text)


def test_format_lowest_terms():
    assert format_rational(F(4, 6)) == "2/3"
    assert format_rational(F(-10, 5)) == "-2"


def test_to_rational_refuses_floats_and_bools():
    with pytest.raises(RationalParseError):
        to_rational(0.5)
    with pytest.raises(RationalParseError):
        to_rational(True)
    assert to_rational(3) == 3 and to_rational("1/3") == F(1, 3)


@given(st.fractions())
def test_round_trip(q):
    assert parse_rational(format_rational(q)) == q


@given(st.fractions())
def test_lowest_terms_invariant(q):
    r = parse_rational(format_rational(q))
    assert r.denominator > 0
    assert F(r.numerator, r.denominator) == r
