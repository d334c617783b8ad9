"""Representations of surface groups into germ groups, with relator certificates.

A representation assigns a germ to each generator of a presentation.  It is
only ever built together with a certificate that every relator evaluates to
the identity to the stated order, and :meth:`Representation.verify` redoes
that check through the series layer alone.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import RelatorFailure, SymbolicBlowup
from .group import word_eval
from .koenigs import Flow, solve_twisted_conjugacy
from .parallel import pmap
from .rings import QQ, RationalFunctionField, Ring, ring_from_descriptor
from .series import Germ, commutator, compose, invert
from .surface import Presentation, dehn_twist, get_presentation, projection_p
from .words import FreeWord

__all__ = [
    "Representation",
    "NontrivialityCertificate",
    "ExplicitFreePair",
    "explicit_free_pair",
    "rescaled_free_pair",
    "free_pair_representation",
    "build_rep_genus2_flows",
    "build_rep_n4",
    "nodd_generators",
    "nodd_twist_germs",
    "build_rep_nodd",
    "build_rep_genus2_koenigs",
    "separation_seed",
    "rho0_p_tau",
    "certify_nontrivial",
    "generic_representation_certify",
    "SymbolicCertificate",
]


# ---------------------------------------------------------------------------
# representation objects


@dataclass
class Representation:
    presentation: Presentation
    ring: Ring
    order: int
    generators: dict[str, Germ]
    certificate: list[tuple[str, int]] = field(default_factory=list)

    def germs(self) -> list[Germ]:
        return [self.generators[n] for n in self.presentation.names]

    def evaluate(self, w: FreeWord) -> Germ:
        self.presentation.check(w)
        return word_eval(w, self.germs())

    def relator_failures(self) -> list[tuple[str, int]]:
        """``(relator, first deviating index)`` for every relator that fails."""
        out = []
        for r in self.presentation.relators:
            n = self.evaluate(r).first_deviation()
            if n is not None:
                out.append((self.presentation.format(r), n))
        return out

    def certify(self) -> "Representation":
        bad = self.relator_failures()
        if bad:
            text, n = bad[0]
            raise RelatorFailure(f"relator {text} deviates from the identity at coefficient {n}")
        self.certificate = [(self.presentation.format(r), self.order) for r in self.presentation.relators]
        return self

    def verify(self) -> bool:
        return not self.relator_failures()

    def to_json(self) -> dict:
        return {
            "presentation": self.presentation.variant,
            "ring": self.ring.descriptor(),
            "order": str(self.order),
            "generators": {n: g.to_json() for n, g in self.generators.items()},
            "certificate": [{"relator": r, "verified_to_order": str(n)} for r, n in self.certificate],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "Representation":
        pres = get_presentation(obj["presentation"])
        ring = ring_from_descriptor(obj["ring"])
        gens = {n: Germ.from_json(g, ring) for n, g in obj["generators"].items()}
        missing = set(pres.names) - set(gens)
        if missing:
            raise ValueError(f"missing generator images: {sorted(missing)}")
        cert = [(c["relator"], int(c["verified_to_order"])) for c in obj.get("certificate", [])]
        return cls(pres, ring, int(obj["order"]), gens, cert)


def _make_rep(pres: Presentation, images: Mapping[str, Germ]) -> Representation:
    germs = list(images.values())
    ring = germs[0].ring
    order = min(g.order for g in germs)
    return Representation(pres, ring, order, dict(images)).certify()


@dataclass(frozen=True)
class NontrivialityCertificate:
    """First coefficient where the image of a word leaves the identity.

    ``n_star`` is None when the image agrees with the identity to ``order``;
    that outcome is "undecided", never a claim of triviality.
    """

    word: str
    order: int
    n_star: int | None
    value: object = None
    ring: Ring | None = None

    @property
    def undecided(self) -> bool:
        return self.n_star is None

    def to_json(self) -> dict:
        if self.n_star is None:
            return {"word": self.word, "status": f"Undecided-at-order-{self.order}"}
        return {
            "word": self.word,
            "status": "nontrivial",
            "n_star": str(self.n_star),
            "deviation": self.ring.to_json(self.value),
        }


def _certificate(text: str, g: Germ) -> NontrivialityCertificate:
    n = g.first_deviation()
    if n is None:
        return NontrivialityCertificate(text, g.order, None)
    value = g.coefficient(n) - (1 if n == 1 else 0)
    # everything below n* must match the identity
    assert all(g.ring.is_zero(g.coefficient(j) - (1 if j == 1 else 0)) for j in range(1, n))
    return NontrivialityCertificate(text, g.order, n, value, g.ring)


def certify_nontrivial(rep: Representation, words: Sequence[FreeWord]) -> list[NontrivialityCertificate]:
    pres = rep.presentation
    return pmap(lambda w: _certificate(pres.format(w), rep.evaluate(w)), words)


# ---------------------------------------------------------------------------
# the explicit free pair


@dataclass(frozen=True)
class ExplicitFreePair:
    f0: Germ
    g0: Germ


def _binom(x: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for j in range(n):
        out = out * (x - j) / (j + 1)
    return out


def explicit_free_pair(ring: Ring = QQ, N: int = 24) -> ExplicitFreePair:
    """``f0 = z/(1+3z)`` and ``g0 = z (1 + 27 z^3)^(-1/3)`` to order N, both with integer coefficients."""
    f0 = [(-3) ** (n - 1) for n in range(1, N + 1)]
    g0 = [0] * N
    for n in range((N - 1) // 3 + 1):
        c = _binom(Fraction(-1, 3), n) * 27**n
        if c.denominator != 1:
            raise AssertionError(f"non-integral coefficient {c} in g0")
        g0[3 * n] = int(c)
    return ExplicitFreePair(Germ(ring, f0), Germ(ring, g0))


def rescaled_free_pair(ring: Ring = QQ, N: int = 24, lams=(2, 3)) -> tuple[Germ, Germ]:
    """``(m_2 o f0, m_3 o g0)``: the explicit pair with multipliers 2 and 3."""
    pair = explicit_free_pair(ring, N)
    return pair.f0.scale(lams[0]), pair.g0.scale(lams[1])


def free_pair_representation(ring: Ring = QQ, N: int = 24) -> Representation:
    pair = explicit_free_pair(ring, N)
    return _make_rep(get_presentation("free:2"), {"a": pair.f0, "b": pair.g0})


# ---------------------------------------------------------------------------
# genus two, three-boundary presentation, via flows


def build_rep_genus2_flows(f1: Germ, f2: Germ, s: Sequence) -> Representation:
    """``a_i -> f_i`` (``f0 = f2^-1 f1^-1``) and ``t_i -> flow(f_i, s_i) o flow(f0, s0)``."""
    pres = get_presentation("genus2-3bdy")
    f0 = compose(invert(f2), invert(f1))
    s0, s1, s2 = s
    phi0, phi1, phi2 = Flow(f0), Flow(f1), Flow(f2)
    p0 = phi0(s0)
    images = {
        "a0": f0,
        "a1": f1,
        "a2": f2,
        "t1": compose(phi1(s1), p0),
        "t2": compose(phi2(s2), p0),
    }
    return _make_rep(pres, images)


def rho0_p_tau(pres: Presentation, target_germs: Sequence[Germ], w: FreeWord, N: int) -> Germ:
    """``rho0 o p o tau^N (w)`` where rho0 sends the target free generators to ``target_germs``."""
    return word_eval(projection_p(pres, dehn_twist(pres, w, N)), list(target_germs))


# ---------------------------------------------------------------------------
# non-orientable surfaces


def build_rep_n4(f1: Germ, f2: Germ, s) -> Representation:
    """``b_i -> phi^s f_i^-1 phi^-s`` with phi the flow of ``(f1^2 f2^2)^-1``."""
    pres = get_presentation("n4")
    gamma = invert(compose(f1**2, f2**2))
    phi = Flow(gamma)
    ps = phi(s)
    ps_inv = invert(ps)
    images = {
        "a1": f1,
        "a2": f2,
        "b1": compose(compose(ps, invert(f1)), ps_inv),
        "b2": compose(compose(ps, invert(f2)), ps_inv),
    }
    return _make_rep(pres, images)


def nodd_generators(g1: Germ, g2: Germ, k: int) -> list[Germ]:
    """``f_i = g1^i g2^2 g1^-i`` for ``i < k`` and ``f_k = g1^k g2 g1^-k``."""
    out = []
    g2sq = g2**2
    for i in range(1, k + 1):
        gi = g1**i
        mid = g2sq if i < k else g2
        out.append(compose(compose(gi, mid), invert(gi)))
    return out


def nodd_twist_germs(fs: Sequence[Germ]) -> tuple[Germ, Germ]:
    """``(rho0(gamma), rho0(p(delta)))`` for the generators ``f_1..f_k``."""
    k = len(fs)
    sq = Germ.identity(fs[0].ring, min(f.order for f in fs))
    for f in fs:
        sq = compose(sq, f**2)
    gamma = invert(sq)
    delta = fs[-1] ** 2
    for f in reversed(fs[:-1]):
        delta = compose(delta, f**-2)
    return gamma, delta


def build_rep_nodd(fs: Sequence[Germ], s) -> Representation:
    """N_{2k+1} with ``c -> phi^s f_k^-2 phi^-s`` and ``b_i`` conjugated by ``phi^s psi^s'``."""
    k = len(fs)
    if k < 2:
        raise ValueError("n-odd needs k >= 2")
    pres = get_presentation(f"n-odd:{k}")
    s1, s2 = s
    gamma, delta = nodd_twist_germs(fs)
    ps = Flow(gamma)(s1)
    conj = compose(ps, Flow(delta)(s2))
    conj_inv = invert(conj)
    images = {f"a{i}": f for i, f in enumerate(fs, start=1)}
    images["c"] = compose(compose(ps, fs[-1] ** -2), invert(ps))
    for i, f in enumerate(fs, start=1):
        mid = invert(f) if i < k else f
        images[f"b{i}"] = compose(compose(conj, mid), conj_inv)
    ordered = {n: images[n] for n in pres.names}
    return _make_rep(pres, ordered)


# ---------------------------------------------------------------------------
# genus two, standard presentation, via the twisted-conjugacy solver


def build_rep_genus2_koenigs(g: Germ, fbar: Germ, gbar: Germ) -> Representation:
    """``a -> f, b -> g, abar -> fbar, bbar -> gbar`` with ``[f, g] = [fbar, gbar]``."""
    pres = get_presentation("genus2-std")
    f = solve_twisted_conjugacy(g, fbar, gbar)
    return _make_rep(pres, {"a": f, "b": g, "abar": fbar, "bbar": gbar})


def separation_seed(N: int = 16, twist: int = 0, ring: Ring = QQ) -> tuple[Representation, Germ]:
    """The seed ``rho(a) = [f1, f2], rho(b) = f2^-1`` pushed through ``p o tau^twist``.

    f1, f2 are the explicit pair rescaled to multipliers 2 and 3.  Returns the
    representation built by the solver together with the expected ``rho(a)``;
    uniqueness of the tangent-to-identity solution forces them to agree.
    """
    f1, f2 = rescaled_free_pair(ring, N)
    rho_a = commutator(f1, f2)
    rho_b = invert(f2)
    pres = get_presentation("genus2-std")
    gens = [rho_a, rho_b]
    fbar = word_eval(projection_p(pres, dehn_twist(pres, pres.word("abar"), twist)), gens)
    gbar = word_eval(projection_p(pres, dehn_twist(pres, pres.word("bbar"), twist)), gens)
    return build_rep_genus2_koenigs(rho_b, fbar, gbar), rho_a


# ---------------------------------------------------------------------------
# generic coefficients


@dataclass(frozen=True)
class SymbolicCertificate:
    """Deviations ``A_n(image) - A_n(id)`` as rational functions of the indeterminates."""

    word: str
    order: int
    deviations: tuple
    ring: RationalFunctionField

    @property
    def n_star(self) -> int | None:
        for n, d in enumerate(self.deviations, start=1):
            if not self.ring.is_zero(d):
                return n
        return None

    @property
    def nonzero(self) -> bool:
        return self.n_star is not None

    def to_json(self) -> dict:
        n = self.n_star
        out = {"word": self.word, "order": str(self.order), "n_star": None if n is None else str(n)}
        if n is not None:
            out["deviation"] = self.ring.to_json(self.deviations[n - 1])
        return out


def generic_generators(m: int, N: int, ell: int = 1) -> tuple[RationalFunctionField, Germ, Germ, Germ]:
    """g, fbar, gbar with indeterminate coefficients ``a_1..a_m`` (higher ones set to 0).

    ``g = a1 z + sum a_{3i+1} z^{i+1}``, ``fbar = z + sum_{i>=ell} a_{3i+2} z^{i+1}``,
    ``gbar = z + sum_{i>=ell} a_{3i+3} z^{i+1}``.
    """
    if m < 1:
        raise ValueError("need at least one indeterminate")
    K = RationalFunctionField([f"a{i}" for i in range(1, m + 1)])

    def a(j: int):
        return K.gen(f"a{j}") if j <= m else K.zero

    g = [a(1)] + [a(3 * i + 1) for i in range(1, N)]
    fb = [K.one] + [a(3 * i + 2) if i >= ell else K.zero for i in range(1, N)]
    gb = [K.one] + [a(3 * i + 3) if i >= ell else K.zero for i in range(1, N)]
    return K, Germ(K, g), Germ(K, fb), Germ(K, gb)


def _budget_check(g: Germ, budget: int) -> None:
    K = g.ring
    worst = max(K.term_count(c) for c in g.coeffs)
    if worst > budget:
        raise SymbolicBlowup(f"coefficient with {worst} terms exceeds the budget of {budget}")


def generic_representation_certify(
    words: Sequence[FreeWord], m: int, N: int, *, ell: int = 1, term_budget: int = 20000
) -> list[SymbolicCertificate]:
    """Symbolic deviations of each word under the generic genus-two representation.

    A nonzero rational function certifies nontriviality for every
    specialization where it does not vanish, in particular for algebraically
    free coefficients.
    """
    K, g, fb, gb = generic_generators(m, N, ell)
    f = solve_twisted_conjugacy(g, fb, gb)
    _budget_check(f, term_budget)
    pres = get_presentation("genus2-std")
    germs = [f, g, fb, gb]
    out = []
    for w in words:
        pres.check(w)
        img = Germ.identity(K, N)
        for gen, e in w.letters:
            base = germs[gen - 1] if e > 0 else invert(germs[gen - 1])
            for _ in range(abs(e)):
                img = compose(img, base)
                _budget_check(img, term_budget)
        devs = tuple(c - (1 if n == 1 else 0) for n, c in enumerate(img.coeffs, start=1))
        out.append(SymbolicCertificate(pres.format(w), N, devs, K))
    return out
