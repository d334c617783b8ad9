from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from germforge.errors import NotTangentToIdentity, RootOfUnityObstruction
from germforge.koenigs import (
    Flow,
    express_as_commutator,
    flow,
    is_contraction,
    is_hyperbolic,
    linearize,
    solve_twisted_conjugacy,
    symbolic_flow,
)
from germforge.rings import QQ, PAdicRing, RationalFunctionField
from germforge.series import Germ, commutator, compose, invert

from strategies import germs, nonzero

hyperbolic = st.sampled_from([Fraction(1, 2), Fraction(2), Fraction(3, 5), Fraction(-1, 3)])


def test_linearize_homothety_is_identity():
    assert linearize(Germ.homothety(QQ, Fraction(2, 3), 10)).h.is_identity()


def test_linearize_quadratic():
    f = Germ(QQ, [Fraction(1, 2), 1, 0, 0])
    lin = linearize(f)
    lam = Fraction(1, 2)
    assert lin.h.coefficient(2) == 1 / (lam * (1 - lam)) == 4
    assert lin.verify(f) and lin.mode == "hyperbolic"


def test_modes_and_classification():
    assert linearize(Germ(QQ, [Fraction(-1, 1) * 2, 1])).mode == "hyperbolic"
    Z5 = PAdicRing(5, 20)
    # |2|_5 = 1: formal linearization only
    assert linearize(Germ(Z5, [2, 1, 1])).mode == "formal"
    assert is_contraction(Germ(QQ, [Fraction(1, 3)]))
    assert not is_hyperbolic(Germ(QQ, [-1, 1]))
    K = RationalFunctionField(["c"])
    assert is_hyperbolic(Germ(K, [K.gen("c")])) is None


def test_root_of_unity_obstruction():
    with pytest.raises(RootOfUnityObstruction):
        linearize(Germ(QQ, [-1, 1, 1]))
    with pytest.raises(RootOfUnityObstruction):
        linearize(Germ(QQ, [1, 1]))


def test_flow_examples():
    f = Germ(QQ, [Fraction(1, 2), 1] + [0] * 10)
    assert flow(f, 1).is_identity()
    assert flow(f, Fraction(1, 2)) == f
    m = Germ.homothety(QQ, 3, 8)
    assert flow(m, 5) == Germ.homothety(QQ, 5, 8)


def test_symbolic_flow_specializes():
    f = Germ(QQ, [Fraction(1, 2), 1, -1, 0, 2, 0])
    S = symbolic_flow(f)
    K = S.ring
    for s in (Fraction(3), Fraction(-2, 7)):
        numeric = flow(f, s)
        assert [K.specialize(c, {"s": s}) for c in S.coeffs] == list(numeric.coeffs)


def test_twisted_conjugacy_examples():
    N = 16
    g = Germ.homothety(QQ, Fraction(1, 2), N)
    fb = Germ(QQ, [1, 1] + [0] * (N - 2))
    gb = Germ.homothety(QQ, Fraction(1, 3), N)
    f = solve_twisted_conjugacy(g, fb, gb)
    assert f.a1 == 1 and commutator(f, g) == commutator(fb, gb)
    ident = Germ.identity(QQ, N)
    assert solve_twisted_conjugacy(g, ident, ident).is_identity()
    assert solve_twisted_conjugacy(g, fb, ident).is_identity()


def test_commutator_split_examples():
    N = 16
    f = Germ(QQ, [1, 1] + [0] * (N - 2))
    h, m = express_as_commutator(f, 2)
    assert m == Germ.homothety(QQ, 2, N)
    assert commutator(h, m) == f
    h, _ = express_as_commutator(Germ.identity(QQ, N), 2)
    assert h.is_identity()
    with pytest.raises(NotTangentToIdentity):
        express_as_commutator(Germ(QQ, [2, 1]), 3)


def test_padic_linearization():
    R = PAdicRing(5, 30)
    f = Germ(R, [5, 1, 2, 3, 4, 1])
    lin = linearize(f)
    assert lin.verify(f) and lin.mode == "hyperbolic"


@given(hyperbolic.flatmap(lambda lam: germs(12, a1=lam)))
def test_linearization_conjugates(f):
    lin = linearize(f)
    assert compose(lin.h, f) == compose(Germ.homothety(QQ, f.a1, 12), lin.h)


@given(hyperbolic.flatmap(lambda lam: germs(10, a1=lam)), nonzero, nonzero)
def test_flow_is_a_homomorphism(f, s, t):
    F = Flow(f)
    assert compose(F(s), F(t)) == F(s * t)
    assert F(f.a1) == f
    assert compose(F(s), f) == compose(f, F(s))


@given(germs(10, a1=Fraction(1, 2)), germs(10), germs(10))
def test_twisted_conjugacy_property(g, fb, gb):
    f = solve_twisted_conjugacy(g, fb, gb)
    assert f.a1 == 1
    assert commutator(f, g) == commutator(fb, gb)


@given(germs(10, a1=1), st.sampled_from([2, 3, Fraction(1, 2)]))
def test_commutator_split_property(f, lam):
    h, m = express_as_commutator(f, lam)
    assert commutator(h, m) == f
    assert invert(h).a1 == 1
