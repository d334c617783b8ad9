import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from germforge.errors import RelatorFailure
from germforge.group import word_eval
from germforge.koenigs import solve_twisted_conjugacy
from germforge.representations import (
    Representation,
    build_rep_genus2_flows,
    build_rep_genus2_koenigs,
    build_rep_n4,
    build_rep_nodd,
    certify_nontrivial,
    explicit_free_pair,
    free_pair_representation,
    generic_generators,
    generic_representation_certify,
    nodd_generators,
    nodd_twist_germs,
    rescaled_free_pair,
    rho0_p_tau,
    separation_seed,
)
from germforge.rings import QQ
from germforge.sampling import random_word
from germforge.series import Germ, commutator, compose, invert
from germforge.surface import get_presentation

from strategies import words

ORDER = 16
G2 = get_presentation("genus2-3bdy")
STD = get_presentation("genus2-std")


@pytest.fixture(scope="module")
def pair():
    return rescaled_free_pair(QQ, ORDER)


def sample_words(pres, count=8, seed=5):
    rng = random.Random(seed)
    return [random_word(rng, len(pres.names), 6) for _ in range(count)]


def test_explicit_pair_coefficients():
    p = explicit_free_pair(QQ, 12)
    assert p.f0.coefficient(2) == -3
    assert p.g0.coefficient(4) == -9
    assert p.g0.coefficient(7) == 162
    assert p.f0.a1 == 1 and p.g0.a1 == 1


@settings(max_examples=30)
@given(words(max_len=8))
def test_explicit_pair_words_are_integral(w):
    rep = free_pair_representation(QQ, 16)
    assert all(Fraction(c).denominator == 1 for c in rep.evaluate(w).coeffs)


def test_genus2_flows_at_unit_parameters(pair):
    f1, f2 = pair
    rep = build_rep_genus2_flows(f1, f2, (1, 1, 1))
    assert rep.generators["t1"].is_identity() and rep.generators["t2"].is_identity()
    assert rep.verify()
    for w in sample_words(G2):
        assert rep.evaluate(w) == rho0_p_tau(G2, [f1, f2], w, 0)


def test_genus2_flows_twist_needs_inverted_s0(pair):
    f1, f2 = pair
    f0 = compose(invert(f2), invert(f1))
    lams = (f0.a1, f1.a1, f2.a1)
    t1 = G2.word("t1")
    stated = build_rep_genus2_flows(f1, f2, tuple(x**1 for x in lams))
    assert stated.evaluate(t1) != rho0_p_tau(G2, [f1, f2], t1, 1)
    for N in range(3):
        rep = build_rep_genus2_flows(f1, f2, (lams[0] ** -N, lams[1] ** N, lams[2] ** N))
        for w in sample_words(G2):
            assert rep.evaluate(w) == rho0_p_tau(G2, [f1, f2], w, N)


def test_n4_matches_twist(pair):
    f1, f2 = pair
    P = get_presentation("n4")
    lam = invert(compose(f1**2, f2**2)).a1
    for N in range(3):
        rep = build_rep_n4(f1, f2, lam**N)
        assert rep.verify()
        for w in sample_words(P):
            assert rep.evaluate(w) == rho0_p_tau(P, [f1, f2], w, N)


def test_nodd_unit_parameters_and_twist(pair):
    g1, g2 = pair
    P = get_presentation("n-odd:2")
    fs = nodd_generators(g1, g2, 2)
    rep = build_rep_nodd(fs, (1, 1))
    assert rep.generators["b1"] == invert(fs[0])
    assert rep.generators["b2"] == fs[1]
    gam, dlt = nodd_twist_germs(fs)
    for N in (1, 2):
        rep = build_rep_nodd(fs, (gam.a1**N, dlt.a1**N))
        for w in sample_words(P, 5):
            assert rep.evaluate(w) == rho0_p_tau(P, fs, w, N)


def test_koenigs_rep_examples():
    N = ORDER
    ident = Germ.identity(QQ, N)
    g = Germ.homothety(QQ, Fraction(1, 2), N)
    rep = build_rep_genus2_koenigs(g, ident, ident)
    assert rep.generators["a"].is_identity()
    fb = Germ(QQ, [1, 1] + [0] * (N - 2))
    gb = Germ.homothety(QQ, Fraction(1, 3), N)
    rep = build_rep_genus2_koenigs(g, fb, gb)
    assert rep.verify() and rep.certificate[0][1] == N


@pytest.mark.parametrize("twist", [0, 1])
def test_separation_seed_recovers_commutator(twist):
    rep, expected = separation_seed(ORDER, twist)
    assert rep.verify()
    if twist == 0:
        assert rep.generators["a"] == expected
    else:
        gens = [expected, rep.generators["b"]]
        assert rep.generators["a"] == word_eval(STD.word("a"), gens)


def test_certificates():
    rep = free_pair_representation(QQ, 24)
    comm = STD.word("a b a^-1 b^-1")  # same letters in the free group of rank two
    certs = certify_nontrivial(rep, [comm, FreeWordTrivial()])
    assert certs[0].n_star is not None and certs[0].n_star <= 24
    assert Fraction(certs[0].value).denominator == 1
    assert certs[1].undecided and certs[1].to_json()["status"] == "Undecided-at-order-24"


def FreeWordTrivial():
    from germforge.words import FreeWord

    return FreeWord()


def test_flow_rep_generator_certificate(pair):
    f1, f2 = pair
    rep = build_rep_genus2_flows(f1, f2, (2, 3, 5))
    (c,) = certify_nontrivial(rep, [G2.word("a1")])
    assert c.n_star == 1
    (r,) = certify_nontrivial(rep, [G2.relators[1]])
    assert r.undecided


def test_json_round_trip_and_tamper(pair):
    f1, f2 = pair
    rep = build_rep_n4(f1, f2, Fraction(1, 3))
    back = Representation.from_json(rep.to_json())
    assert back.verify() and back.generators == rep.generators
    obj = rep.to_json()
    obj["generators"]["b1"]["coeffs"][3] = "7"
    bad = Representation.from_json(obj)
    assert not bad.verify()
    with pytest.raises(RelatorFailure):
        bad.certify()


def test_generic_relator_and_generator():
    rel, b = generic_representation_certify([STD.relators[0], STD.word("b")], 4, 4)
    assert not rel.nonzero
    assert b.n_star == 1  # A1(b) = a1 - 1
    assert str(b.deviations[1].as_expr()) == "a4"


def _specialize(K, g, vals):
    return Germ(QQ, [K.specialize(c, vals) for c in g.coeffs])


def test_generic_commutator_matches_specializations():
    m, N = 8, 8
    (cert,) = generic_representation_certify([STD.word("a b a^-1 b^-1")], m, N)
    assert cert.nonzero
    K, g, fb, gb = generic_generators(m, N)
    rng = random.Random(11)
    for _ in range(2):
        vals = {f"a{i}": Fraction(rng.randint(1, 9), rng.randint(10, 19)) for i in range(1, m + 1)}
        gs, fbs, gbs = (_specialize(K, x, vals) for x in (g, fb, gb))
        f = solve_twisted_conjugacy(gs, fbs, gbs)
        img = commutator(f, gs)
        numeric = [c - (1 if n == 1 else 0) for n, c in enumerate(img.coeffs, start=1)]
        assert numeric == [K.specialize(d, vals) for d in cert.deviations]
