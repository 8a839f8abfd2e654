from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from curvespec import (
    InvalidPairsError,
    PuiseuxPairs,
    characteristic_data,
    characteristic_exponents,
    continued_fraction,
    invert_pairs,
    pairs_from_exponents,
    parse_pairs,
)
from curvespec.puiseux import characteristic_identities, format_pairs

from oracles import euclid_quotients, weights


def test_parse_single_and_double():
    assert parse_pairs("3,2").pairs == ((3, 2),)
    assert parse_pairs("3,2;1,2").pairs == ((3, 2), (1, 2))
    assert parse_pairs(" 3 , 2 ; 1 , 2 ").pairs == ((3, 2), (1, 2))


@pytest.mark.parametrize(
    "text, needle",
    [
        ("4,2", "gcd"),
        ("1,2", "1"),
        ("3,1", "n"),
        ("3,2;2,2", "gcd"),
        ("3,2;", "pair 2"),
        ("a,b", "pair 1"),
        ("", "empty"),
    ],
)
def test_parse_rejects(text, needle):
    with pytest.raises(InvalidPairsError) as info:
        parse_pairs(text)
    assert needle in str(info.value)


def test_error_names_pair_index():
    with pytest.raises(InvalidPairsError, match="pair 2"):
        parse_pairs("3,2;2,4")


def test_format_round_trip():
    assert format_pairs(parse_pairs("7,3;5,2")) == "7,3;5,2"


def test_cusp_data():
    cd = characteristic_data([(3, 2)])
    assert list(cd.w) == [3]
    assert list(cd.nprime) == [2, 1]
    assert cd.mu == 2
    assert cd.alpha1 == Fraction(5, 6)


def test_two_pair_data():
    cd = characteristic_data([(3, 2), (1, 2)])
    assert list(cd.w) == [3, 13]
    assert list(cd.nprime) == [4, 2, 1]
    assert list(cd.mu_stage) == [4, 12]
    assert cd.mu == 16
    assert cd.alpha1 == Fraction(5, 12)


def test_five_two_data():
    cd = characteristic_data([(5, 2)])
    assert list(cd.w) == [5]
    assert cd.mu == 4
    assert cd.alpha1 == Fraction(7, 10)


def test_continued_fraction_seven_two():
    cf = continued_fraction(7, 2)
    assert list(cf.a) == [3, 2]
    assert list(cf.r) == [7, 2, 1, 0]
    assert cf.convergent(2) == (7, 2)


def test_continued_fraction_k_one():
    cf = continued_fraction(1, 3)
    assert cf.h == 2
    assert list(cf.a) == [0, 3]
    assert list(cf.r) == [1, 3, 1, 0]


def test_continued_fraction_cusp():
    cf = continued_fraction(3, 2)
    assert list(cf.a) == [1, 2]
    assert list(cf.r) == [3, 2, 1, 0]
    assert [cf.convergent(1), cf.convergent(2)] == [(1, 1), (3, 2)]
    assert cf.convergent(0) == (1, 0) and cf.convergent(-1) == (0, 1)


def test_continued_fraction_rejects():
    with pytest.raises(ValueError):
        continued_fraction(4, 2)
    with pytest.raises(ValueError):
        continued_fraction(3, 1)


def test_inversion():
    assert invert_pairs([(3, 2)]).pairs == ((2, 3),)
    assert invert_pairs([(3, 2), (1, 2)]).pairs == ((2, 3), (1, 2))


def test_exponents():
    assert characteristic_exponents([(3, 2)]) == [Fraction(3, 2)]
    assert characteristic_exponents([(3, 2), (1, 2)]) == [Fraction(3, 2), Fraction(7, 4)]
    assert pairs_from_exponents([Fraction(3, 2), Fraction(7, 4)]).pairs == ((3, 2), (1, 2))


@st.composite
def pair_tuples(draw, g_max=3):
    g = draw(st.integers(1, g_max))
    pairs = []
    for nu in range(g):
        n = draw(st.integers(2, 5))
        lo = n + 1 if nu == 0 else 1
        k = draw(st.integers(lo, 25).filter(lambda k, n=n: gcd(k, n) == 1))
        pairs.append((k, n))
    return pairs


@given(pair_tuples())
def test_weights_match_oracle(pairs):
    cd = characteristic_data(pairs)
    assert list(cd.w) == weights(pairs)
    assert all(ok for _, ok, _ in characteristic_identities(cd))


@given(pair_tuples())
def test_exponent_round_trip(pairs):
    p = PuiseuxPairs(tuple(pairs))
    assert pairs_from_exponents(characteristic_exponents(p)) == p


@given(pair_tuples())
def test_inversion_is_involution(pairs):
    assert invert_pairs(invert_pairs(pairs)).pairs == tuple(pairs)


@given(st.integers(1, 400), st.integers(2, 60))
def test_continued_fraction_properties(k, n):
    if gcd(k, n) != 1:
        with pytest.raises(ValueError):
            continued_fraction(k, n)
        return
    cf = continued_fraction(k, n)
    assert list(cf.a) == euclid_quotients(k, n)
    assert cf.value() == Fraction(k, n)
    assert cf.convergent(cf.h) == (k, n)
    for i in range(1, cf.h + 1):
        assert cf.P(i) * cf.Q(i - 1) - cf.P(i - 1) * cf.Q(i) == (-1) ** i
