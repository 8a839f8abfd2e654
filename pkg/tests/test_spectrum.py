import random
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, strategies as st

from curvespec import (
    InvariantError,
    Spectrum,
    characteristic_data,
    check_symmetry,
    decorate,
    fractional_parts_sum_to_two,
    phi_recursive,
    quasihomogeneous_spectrum,
    spectrum_enumeration,
    spectrum_steenbrink,
)
from curvespec.spectrum import (
    first_difference,
    fractional_parts_criterion,
    steenbrink_classes,
    sub_unit_by_stage,
)
from curvespec.verify import SweepSpec, sweep_cases

from oracles import brute_spectrum

TWO = [(3, 2), (1, 2)]
TWO_SPECTRUM = sorted([F(13 + 2 * i, 26) for i in range(1, 13)] + [F(5, 12), F(11, 12), F(13, 12), F(19, 12)])
RANDOM = sweep_cases(SweepSpec(g_min=1, g_max=3, k_max=15, n_max=4, w_max=400, count=30, seed=3))


def test_cusp():
    assert list(spectrum_enumeration([(3, 2)])) == [F(5, 6), F(7, 6)]


def test_five_two():
    assert list(spectrum_enumeration([(5, 2)])) == [F(7, 10), F(9, 10), F(11, 10), F(13, 10)]


def test_two_pair_sub_unit():
    stages = sub_unit_by_stage(characteristic_data(TWO))
    low = sorted(x for st_ in stages for x in st_.elements())
    assert low == sorted([F(15, 26), F(17, 26), F(19, 26), F(21, 26), F(23, 26), F(25, 26), F(5, 12), F(11, 12)])
    assert list(spectrum_enumeration(TWO)) == TWO_SPECTRUM


def test_phi():
    assert list(phi_recursive([(3, 2)])) == [F(5, 6), F(7, 6)]
    assert list(phi_recursive(TWO)) == TWO_SPECTRUM


@pytest.mark.parametrize(
    "weights, expected",
    [
        ((F(1, 3), F(1, 2)), [F(5, 6), F(7, 6)]),
        ((F(1, 2), F(1, 2)), [F(1)]),
        ((F(1, 3), F(1, 3)), [F(2, 3), F(1), F(1), F(4, 3)]),
    ],
)
def test_quasihomogeneous(weights, expected):
    assert list(quasihomogeneous_spectrum(weights)) == expected


def test_quasihomogeneous_rejects():
    with pytest.raises(ValueError):
        quasihomogeneous_spectrum([F(2, 5), F(1, 2)])


@pytest.mark.parametrize(
    "triple, expected",
    [((F(2, 3), F(1, 2), F(5, 6)), True), ((F(1, 3), F(1, 2), F(7, 6)), False), ((0, 1, 1), False)],
)
def test_fractional_parts_examples(triple, expected):
    assert fractional_parts_sum_to_two(*triple) is expected
    assert fractional_parts_criterion(*triple) is expected


def test_fractional_parts_rejects_non_integral_sum():
    with pytest.raises(ValueError):
        fractional_parts_sum_to_two(F(1, 3), 0, 0)


@given(st.fractions(), st.fractions(), st.integers(-5, 5))
def test_fractional_parts_equivalence(a1, a2, n):
    a3 = n - a1 - a2
    assert fractional_parts_sum_to_two(a1, a2, a3) == fractional_parts_criterion(a1, a2, a3)


def test_steenbrink_classes():
    assert steenbrink_classes(6, [2, 3, 1]) == [5]
    assert steenbrink_classes(12, [4, 6, 26]) == [5, 11]
    assert steenbrink_classes(26, [12, 13, 1]) == [15, 17, 19, 21, 23, 25]
    assert steenbrink_classes(6, [2, 3]) == []


def test_steenbrink_spectrum():
    assert list(spectrum_steenbrink(decorate([(3, 2)]))) == [F(5, 6), F(7, 6)]
    assert list(spectrum_steenbrink(decorate(TWO))) == TWO_SPECTRUM


def test_steenbrink_count_mismatch_raises():
    from curvespec.verify import perturb_multiplicity

    with pytest.raises(InvariantError):
        spectrum_steenbrink(perturb_multiplicity(decorate(TWO), 5))


def test_symmetry():
    assert check_symmetry(Spectrum.from_exponents([F(5, 6), F(7, 6)]))
    assert not check_symmetry(Spectrum.from_exponents([F(5, 6), F(5, 6)]))


@pytest.mark.parametrize("pairs", RANDOM + [[(3, 2)], TWO, [(7, 3), (2, 3)]], ids=str)
def test_routes_match_brute_force(pairs):
    ref = spectrum_enumeration(pairs)
    assert ref.counts() == brute_spectrum(pairs)
    assert phi_recursive(pairs) == ref
    assert spectrum_steenbrink(decorate(pairs)) == ref
    assert check_symmetry(ref)
    assert ref.mu == characteristic_data(pairs).mu


def test_geometric_sums_symbolically():
    t = sympy.symbols("t", positive=True)
    for d in range(2, 7):
        u = t ** sympy.Rational(1, d)
        assert sympy.simplify((u - t) / (1 - u) - sum(u**i for i in range(1, d))) == 0
        assert sympy.simplify((1 - t) / (1 - u) - sum(u**r for r in range(d))) == 0


@pytest.mark.parametrize("k, n", [(3, 2), (5, 2), (7, 3), (5, 4)])
def test_g1_rational_function_symbolically(k, n):
    # expand the product of the two rational factors with t = s^(kn)
    s = sympy.symbols("s")
    t = s ** (k * n)
    expr = sympy.cancel((s**n - t) / (1 - s**n) * (s**k - t) / (1 - s**k))
    poly = sympy.Poly(expr, s)
    got = Spectrum.from_counts({F(e[0], k * n): int(c) for e, c in zip(poly.monoms(), poly.coeffs())})
    assert got == spectrum_enumeration([(k, n)])


def test_spectrum_rejects_bad_entries():
    with pytest.raises(ValueError):
        Spectrum(((F(1), 1), (F(1, 2), 1)))
    with pytest.raises(InvariantError):
        Spectrum.from_counts({F(1, 2): -1})


def test_first_difference():
    a = Spectrum.from_exponents([F(1, 2), F(3, 2)])
    b = Spectrum.from_exponents([F(1, 2), F(3, 2), F(3, 2)])
    assert first_difference(a, a) is None
    assert first_difference(a, b) == (F(3, 2), 1, 2)


def test_union_and_reflect():
    rng = random.Random(1)
    xs = [F(rng.randint(1, 20), 21) for _ in range(10)]
    s = Spectrum.from_exponents(xs)
    assert check_symmetry(s.union(s.reflect()))
    assert s.below(1).mu + s.above(1).mu == s.mu
