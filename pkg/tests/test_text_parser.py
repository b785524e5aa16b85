from fractions import Fraction

import pytest

from app.core.exceptions import InvalidInputError, KnotParseError, UnsupportedFamilyError
from app.schemas.knot import KnotFamily
from app.utils.text_parser import parse_knot, parse_slope


@pytest.mark.parametrize('text,family,m,n', [
    ('C(2,-2)', KnotFamily.EVEN_MINUS, 1, 1),
    ('C(4,-6)', KnotFamily.EVEN_MINUS, 2, 3),
    ('c( 3 , 4 )', KnotFamily.ODD_PLUS, 1, 2),
    ('C(3,2)', KnotFamily.ODD_PLUS, 1, 1),
    ('C(5,-6)', KnotFamily.ODD_MINUS, 2, 3),
])
def test_parse_supported_knots(text, family, m, n):
    spec = parse_knot(text)
    assert (spec.family, spec.m, spec.n) == (family, m, n)


def test_label_round_trip():
    for text in ('C(2,-2)', 'C(3,4)', 'C(7,-2)'):
        assert parse_knot(text).label == text


@pytest.mark.parametrize('text', ['C(1,2)', 'C(3,5)', 'C(2,3,4)', 'knot', '', 'C(2,-2'])
def test_parse_errors(text):
    with pytest.raises(KnotParseError):
        parse_knot(text)


def test_positive_even_family_is_unsupported():
    with pytest.raises(UnsupportedFamilyError):
        parse_knot('C(4,6)')


def test_mirror_form_is_reported_not_applied():
    with pytest.raises(UnsupportedFamilyError) as err:
        parse_knot('C(-2,2)')
    assert 'C(2,-2)' in str(err.value)
    assert 'mirror' in str(err.value)


def test_equivalent_form_is_reported():
    with pytest.raises(UnsupportedFamilyError) as err:
        parse_knot('C(4,-3)')
    assert 'C(3,-4)' in str(err.value)


@pytest.mark.parametrize('text,expected', [
    ('-14/4', Fraction(-7, 2)),
    ('3', Fraction(3)),
    (' 5 / -10 ', Fraction(-1, 2)),
    ('+7/9', Fraction(7, 9)),
    ('0', Fraction(0)),
    (str(2 ** 31), Fraction(2 ** 31)),
])
def test_parse_slope(text, expected):
    r = parse_slope(text)
    assert r == expected
    assert r.denominator > 0


@pytest.mark.parametrize('text', ['1/0', 'abc', '1.5', '', str(2 ** 31 + 1), '1/' + str(2 ** 32)])
def test_parse_slope_errors(text):
    with pytest.raises(InvalidInputError):
        parse_slope(text)
