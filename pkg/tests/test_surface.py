import random

import pytest
from hypothesis import given, settings

from germforge.errors import TrivialCi, VariantMismatch
from germforge.sampling import random_word
from germforge.surface import (
    amalgam_normal_form,
    baumslag_check,
    baumslag_word,
    dehn_twist,
    genus2_alternating_form,
    get_presentation,
    projection_p,
    twist_injectivity_scan,
)
from germforge.words import FreeWord

from strategies import words

G2 = get_presentation("genus2-3bdy")
N4 = get_presentation("n4")
N5 = get_presentation("n-odd:2")
ALL = [G2, N4, N5, get_presentation("genus2-std"), get_presentation("n-odd:3")]
x, y = FreeWord.gen(1), FreeWord.gen(2)


def tgt(pres, text):
    return FreeWord([(pres.target_names.index(n.split("^")[0]) + 1, int(n.split("^")[1]) if "^" in n else 1) for n in text.split()])


def test_projection_examples():
    assert projection_p(G2, G2.word("t1")).is_trivial()
    assert projection_p(N4, N4.word("b1")) == tgt(N4, "a1^-1")
    assert projection_p(N5, N5.word("b2")) == tgt(N5, "a2")


def test_twist_examples():
    assert dehn_twist(G2, G2.word("t1")) == G2.word("a1 t1 a0^-1")
    w = G2.word("a1 t2^-1 a0")
    assert dehn_twist(G2, w, 0) == w
    a0 = projection_p(G2, G2.word("a0"))
    assert projection_p(G2, dehn_twist(G2, G2.word("t1"), 2)) == tgt(G2, "a1^2") * a0 ** -2
    with pytest.raises(ValueError):
        dehn_twist(G2, w, -1)


@pytest.mark.parametrize("N", range(11))
def test_t1_twist_formula(N):
    a0 = projection_p(G2, G2.word("a0"))
    assert projection_p(G2, dehn_twist(G2, G2.word("t1"), N)) == tgt(G2, "a1") ** N * a0 ** (-N)


def test_baumslag_examples():
    e = FreeWord()
    assert baumslag_check([e, y, e], [x, x])
    assert not baumslag_check([e, x**5, e], [x, x])
    assert baumslag_check([e, e, e], [x * y, y * x])
    with pytest.raises(TrivialCi):
        baumslag_check([e, e], [e])
    with pytest.raises(ValueError):
        baumslag_check([e], [x])
    assert baumslag_word([e, y, e], [x, x], 2) == x**2 * y * x**2


def test_baumslag_words_grow_nontrivial():
    gs, cs = [x, y, x.inverse()], [x * y, y]
    assert baumslag_check(gs, cs)
    assert all(not baumslag_word(gs, cs, N).is_trivial() for N in range(1, 30))


def test_scan_examples():
    s = twist_injectivity_scan(G2, G2.word("t1"), 5)
    assert s.nontrivial == (1, 2, 3, 4, 5) and s.stable_from == 1 and s.first_N_nontrivial == 1
    rel = twist_injectivity_scan(G2, G2.relators[0], 6)
    assert rel.nontrivial == () and rel.stable_from is None
    s = twist_injectivity_scan(N4, N4.word("b1 a1"), 20)
    assert s.stable_from == 1
    assert s.to_json(N4)["empirical"] is True


@pytest.mark.parametrize("pres", ALL, ids=lambda p: p.variant)
def test_relators_project_trivially(pres):
    for r in pres.relators:
        for N in range(4):
            assert projection_p(pres, dehn_twist(pres, r, N)).is_trivial()


def test_variant_mismatch():
    with pytest.raises(VariantMismatch):
        projection_p(N4, FreeWord.gen(7))
    with pytest.raises(VariantMismatch):
        amalgam_normal_form(N4, N4.word("a1"))
    with pytest.raises(VariantMismatch):
        genus2_alternating_form(N4, N4.word("a1"))


def test_amalgam_examples():
    nf = amalgam_normal_form(N5, N5.word("a1"))
    assert nf.labels == (1,)
    gamma = N5.word("a1^2 a2^2").inverse()
    nf = amalgam_normal_form(N5, gamma)
    assert nf.labels == (1,) and nf.syllables[0][1] == nf.edge(1, 2)
    nf = amalgam_normal_form(N5, N5.word("c b1 c^-1"))
    assert nf.labels == (1, 2, 3, 2, 1) and nf.is_minimal()


def test_amalgam_pinches_edge_elements():
    # c^2 = gamma delta^-1 sits in A_2, so b-side edge words collapse
    nf = amalgam_normal_form(N5, N5.word("c b2^2 b1^2 c^-1"))
    assert nf.labels == (1, 2, 1)
    assert nf.syllables[1][1] == FreeWord([(2, -1), (1, 1), (2, -1)])  # c^-1 gamma c^-1
    assert nf.is_minimal()


def _cross_check(pres, form_of, twisted, count, seed):
    rng = random.Random(seed)
    for _ in range(count):
        w = random_word(rng, len(pres.names), 7)
        form = form_of(w)
        assert form.is_minimal()
        for N in range(4):
            assert twisted(form, N) == projection_p(pres, dehn_twist(pres, w, N))


def test_amalgam_twisted_projection_matches():
    _cross_check(N5, lambda w: amalgam_normal_form(N5, w), lambda f, N: f.twisted_projection(N5, N), 60, 1)
    N7 = get_presentation("n-odd:3")
    _cross_check(N7, lambda w: amalgam_normal_form(N7, w), lambda f, N: f.twisted_projection(N7, N), 30, 2)


def test_alternating_twisted_projection_matches():
    _cross_check(G2, lambda w: genus2_alternating_form(G2, w), lambda f, N: f.twisted_projection(N), 60, 3)


def test_alternating_length_bound():
    with pytest.raises(ValueError):
        genus2_alternating_form(G2, G2.word("t1") ** 50, max_length=10)


@settings(max_examples=25)
@given(words(rank=5, max_len=8))
def test_twist_is_compatible_with_products(w):
    u = G2.word("t1 a2")
    for N in (1, 2):
        assert dehn_twist(G2, w * u, N) == dehn_twist(G2, w, N) * dehn_twist(G2, u, N)
