from fractions import Fraction

import pytest
import sympy
from hypothesis import given

from germforge.errors import MixedRings, NonInvertibleLeadingCoefficient, OrderTooHigh, OrderZero
from germforge.representations import explicit_free_pair
from germforge.rings import QQ, PAdicRing
from germforge.series import (
    Germ,
    commutator,
    compose,
    invert,
    invert_formula,
    invert_substitution,
    jet,
    jet_morphism_check,
)

from strategies import Z5, germs

z = sympy.symbols("z")


def taylor(expr, N):
    """Coefficients A_1..A_N of a sympy expression, used as an independent oracle."""
    s = sympy.series(expr, z, 0, N + 1).removeO()
    return [Fraction(str(s.coeff(z, n))) for n in range(1, N + 1)]


def f0(N=8):
    return explicit_free_pair(QQ, N).f0


def test_f0_matches_series():
    assert list(f0(12).coeffs) == taylor(z / (1 + 3 * z), 12)


def test_f0_squared_is_moebius():
    assert list(compose(f0(8), f0(8)).coeffs) == taylor(z / (1 + 6 * z), 8)


def test_identity_and_homotheties():
    f = Germ(QQ, [2, 1, -1, 5])
    e = Germ.identity(QQ, 4)
    assert compose(e, f) == f and compose(f, e) == f
    m = compose(Germ.homothety(QQ, 2, 5), Germ.homothety(QQ, Fraction(1, 3), 5))
    assert m == Germ.homothety(QQ, Fraction(2, 3), 5)


def test_inverse_catalan():
    g = invert(Germ(QQ, [1, 1, 0, 0]))
    assert list(g.coeffs) == [1, -1, 2, -5]
    # oracle: branch of the quadratic formula
    assert list(invert(Germ(QQ, [1, 1] + [0] * 8)).coeffs) == taylor((sympy.sqrt(1 + 4 * z) - 1) / 2, 10)


def test_inverse_of_f0():
    assert list(invert(f0(10)).coeffs) == [3 ** (n - 1) for n in range(1, 11)]
    assert invert(Germ.identity(QQ, 6)).is_identity()


def test_jets():
    assert jet(Germ(QQ, [1, 0, 5]), 2).is_identity()
    assert list(jet(f0(), 3).coeffs) == [1, -3, 9]


def test_coefficients():
    assert f0().coefficient(3) == 9
    g0 = explicit_free_pair(QQ, 8).g0
    assert g0.coefficient(4) == -9
    assert list(g0.coeffs) == taylor(z * (1 + 27 * z**3) ** sympy.Rational(-1, 3), 8)
    f = Germ(QQ, [Fraction(3, 2), 6])
    assert f.normalized_coefficient(1) == 1 and f.normalized_coefficient(2) == 4
    with pytest.raises(OrderTooHigh):
        f.coefficient(3)


def test_truncation_rule():
    f, g = Germ(QQ, [1, 2, 3, 4]), Germ(QQ, [2, 1])
    assert compose(f, g).order == 2
    assert compose(f, g) == Germ(QQ, [2, 9])  # g + 2 g^2


def test_constructor_errors():
    with pytest.raises(NonInvertibleLeadingCoefficient):
        Germ(QQ, [0, 1])
    with pytest.raises(OrderZero):
        Germ(QQ, [])
    with pytest.raises(MixedRings):
        compose(Germ(QQ, [1, 1]), Germ(Z5, [1, 1]))
    with pytest.raises(ValueError):
        invert(Germ(QQ, [1]), "newton")


def test_json_round_trip():
    for f in (f0(), Germ(Z5, [2, 7, Fraction(1, 5)]), explicit_free_pair(PAdicRing(3, 8), 6).g0):
        obj = f.to_json()
        back = Germ.from_json(obj)
        assert back == f and back.order == f.order


def test_commutator_multiplier_is_one():
    f, g = Germ(QQ, [2, 1, 1]), Germ(QQ, [3, -1, 2])
    assert commutator(f, g).a1 == 1


def test_padic_inverse_algorithms_agree():
    f = Germ(Z5, [2, 5, 7, Fraction(1, 3), 11, 13])
    assert invert_formula(f) == invert_substitution(f)


@given(germs(8), germs(8), germs(8))
def test_associativity(f, g, h):
    assert compose(f, compose(g, h)) == compose(compose(f, g), h)


@given(germs(8))
def test_two_sided_inverse(f):
    fi = invert(f)
    assert compose(f, fi).is_identity() and compose(fi, f).is_identity()


@given(germs(7))
def test_inverse_algorithms_agree(f):
    assert invert_formula(f) == invert_substitution(f)


@given(germs(8), germs(8))
def test_a1_multiplicative(f, g):
    assert compose(f, g).a1 == f.a1 * g.a1


@given(germs(6), germs(6))
def test_jet_is_a_morphism(f, g):
    assert jet_morphism_check(f, g, 4)


@given(germs(6, ring=Z5), germs(6, ring=Z5), germs(6, ring=Z5))
def test_padic_associativity(f, g, h):
    assert compose(f, compose(g, h)) == compose(compose(f, g), h)


@given(germs(6))
def test_powers(f):
    assert f**3 == compose(f, compose(f, f))
    assert (f**-2) == invert(compose(f, f))
