from fractions import Fraction

import pytest
from hypothesis import given

from germforge.errors import NotAUnit, OrderTooHigh, WrongRing
from germforge.group import radius_estimate
from germforge.padic import (
    derived_free_generators,
    gp_closure_check,
    gp_membership,
    jet_kernel_membership,
    parameter_family_sample,
)
from germforge.representations import explicit_free_pair
from germforge.rings import QQ, PAdicRing
from germforge.series import Germ, compose, invert
from germforge.words import FreeWord

from strategies import Z5, germs

Z3 = PAdicRing(3, 16)
A, B = FreeWord.gen(1), FreeWord.gen(2)
COMM = A * B * A.inverse() * B.inverse()


def test_membership_examples():
    assert gp_membership(Germ(Z5, [2, 3, Fraction(1, 2)]))
    assert gp_membership(Germ(Z3, [-1, 9, 27]))
    bad = gp_membership(Germ(Z5, [Fraction(1, 5), 1, 1]))
    assert not bad and bad.failing_index == 1
    bad = gp_membership(Germ(Z5, [5, 1, 1]))
    assert bad.failing_index == 1
    bad = gp_membership(Germ(Z3, [1, 0, Fraction(1, 3), 1]))
    assert bad.failing_index == 3


def test_membership_rejects_rationals():
    with pytest.raises(WrongRing):
        gp_membership(Germ(QQ, [1, 1]))


@given(germs(order=6, ring=Z5), germs(order=6, ring=Z5))
def test_closure(f, g):
    assert gp_membership(f) and gp_membership(g)
    assert gp_closure_check(f, g)


def test_closure_with_identity_and_non_member():
    ident = Germ.identity(Z5, 6)
    assert gp_closure_check(ident, ident)
    outsider = Germ(Z5, [1, Fraction(1, 5), 0, 0, 0, 0])
    chk = gp_closure_check(ident, outsider)
    assert not chk.composition and chk.inverse
    assert not chk


def test_jet_kernel_examples():
    pair = explicit_free_pair(Z5, 12)
    assert jet_kernel_membership(pair.g0, 3)
    assert not jet_kernel_membership(pair.g0, 4)
    assert jet_kernel_membership(pair.f0, 1)
    assert not jet_kernel_membership(pair.f0, 2)
    assert jet_kernel_membership(Germ.identity(Z5, 12), 12)
    with pytest.raises(OrderTooHigh):
        jet_kernel_membership(pair.f0, 13)
    with pytest.raises(ValueError):
        jet_kernel_membership(pair.f0, 0)


@given(germs(order=8, a1=1, ring=Z5), germs(order=8, a1=1, ring=Z5))
def test_jet_kernel_is_a_subgroup(f, g):
    # j_ell is a homomorphism, so its kernel is closed under composition and inverse
    lf = f.first_deviation() or 9
    lg = g.first_deviation() or 9
    ell = min(lf, lg, 9) - 1
    if ell < 1:
        return
    assert jet_kernel_membership(compose(f, g), ell)
    assert jet_kernel_membership(invert(f), ell)


@given(germs(order=8, ring=Z5))
def test_members_have_radius_at_least_one(f):
    est = radius_estimate(f)
    if est.low is not None:
        assert est.low >= 1


def test_derived_generators():
    one = derived_free_generators(1)
    assert one.words == (A, B) and one.commutator_n_star == 5
    three = derived_free_generators(3)
    assert all(c > 3 for c in three.contact)
    assert all(jet_kernel_membership(g, 3) for g in three.germs)
    assert three.words == (B, COMM)
    assert three.to_json()["ell"] == "3"
    with pytest.raises(ValueError):
        derived_free_generators(0)


def test_parameter_family():
    pair = explicit_free_pair(Z5, 24)
    rep, _ = parameter_family_sample(1)
    assert rep.generators["a"] == pair.f0
    _, (c,) = parameter_family_sample(6, words=[A])
    assert c.n_star == 1
    rep, (c,) = parameter_family_sample(2, words=[COMM])
    assert rep.verify() and not c.undecided
    with pytest.raises(NotAUnit):
        parameter_family_sample(5)
