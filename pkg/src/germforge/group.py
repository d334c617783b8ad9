"""Word maps, homothety conjugation, filtration predicates and closure constants.

All filtration statements are about the truncation: only the available
coefficients are checked, so "member" means "member to order N".
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy import integer_nthroot

from .errors import DegenerateCombination, NonInvertibleScalar, OrderTooHigh
from .parallel import pmap
from .rings import QQ, Ring
from .series import Germ, compose, invert
from .words import FreeWord

__all__ = [
    "word_eval",
    "word_eval_many",
    "homothety_conjugate",
    "Membership",
    "in_filtration",
    "in_cc_class",
    "c_membership",
    "root_bracket",
    "RadiusEstimate",
    "radius_estimate",
    "little_schroeder",
    "closure_constants",
    "convex_combine",
    "convex_bound_check",
]


# ---------------------------------------------------------------------------
# word maps


def word_eval(w: FreeWord, germs: Sequence[Germ]) -> Germ:
    """``w(g_1, ..., g_m)`` by composition; inverses are computed once per generator."""
    if not germs:
        raise ValueError("need at least one germ")
    if w.rank > len(germs):
        raise ValueError(f"word uses generator {w.rank} but only {len(germs)} germs given")
    ring = germs[0].ring
    N = min(g.order for g in germs)
    for g in germs[1:]:
        germs[0]._check_ring(g)
    inverses: dict[int, Germ] = {}
    result = Germ.identity(ring, N)
    for gen, e in w.letters:
        if e > 0:
            base = germs[gen - 1]
        else:
            base = inverses.get(gen)
            if base is None:
                base = inverses[gen] = invert(germs[gen - 1])
        result = compose(result, base ** abs(e)) if abs(e) > 1 else compose(result, base)
    return result


def word_eval_many(words: Sequence[FreeWord], germs: Sequence[Germ]) -> list[Germ]:
    return pmap(lambda w: word_eval(w, germs), words)


# ---------------------------------------------------------------------------
# homotheties


def homothety_conjugate(f: Germ, alpha) -> Germ:
    """``m_alpha o f o m_alpha^-1``, i.e. ``A_n -> alpha^(1-n) A_n``."""
    ring = f.ring
    alpha = ring(alpha)
    if not ring.is_unit(alpha):
        raise NonInvertibleScalar(f"{alpha} is not invertible")
    inv = ring.one / alpha
    out = []
    scale = ring.one
    for c in f.coeffs:
        out.append(c * scale)
        scale = scale * inv
    return Germ(ring, out)


# ---------------------------------------------------------------------------
# filtrations


@dataclass(frozen=True)
class Membership:
    """Outcome of a truncation-level membership test."""

    member: bool
    order: int
    failing_index: int | None = None

    def __bool__(self):
        return self.member


def _abs_list(f: Germ) -> list[Fraction]:
    return [f.ring.abs_value(c) for c in f.coeffs]


def in_filtration(f: Germ, c, lam0=None) -> Membership:
    """``|A~_n(f)| <= c^(n-1)`` for ``2 <= n <= N``; with ``lam0`` also ``1/lam0 <= |A1| <= lam0``."""
    c = Fraction(c)
    if c <= 0:
        raise ValueError("c must be positive")
    absc = _abs_list(f)
    a1 = absc[0]
    if lam0 is not None:
        lam0 = Fraction(lam0)
        if lam0 <= 1:
            raise ValueError("lambda0 must exceed 1")
        if not (1 / lam0 <= a1 <= lam0):
            return Membership(False, f.order, 1)
    bound = Fraction(1)
    for n in range(2, f.order + 1):
        bound *= c
        if absc[n - 1] > bound * a1:
            return Membership(False, f.order, n)
    return Membership(True, f.order)


def in_cc_class(f: Germ, c) -> Membership:
    """``|A_n(f)| <= c^(n+1)`` for ``1 <= n <= N``."""
    c = Fraction(c)
    if c <= 0:
        raise ValueError("c must be positive")
    bound = c
    for n, a in enumerate(_abs_list(f), start=1):
        bound *= c
        if a > bound:
            return Membership(False, f.order, n)
    return Membership(True, f.order)


def root_bracket(r: Fraction, k: int, prec: int = 32) -> tuple[Fraction, Fraction]:
    """Rationals ``lo <= r^(1/k) <= hi`` with denominator ``2**prec``."""
    r = Fraction(r)
    if r < 0:
        raise ValueError("root of a negative number")
    if k == 1:
        return r, r
    D = 1 << prec
    # floor/ceil of (r * D^k)^(1/k)
    num, den = r.numerator * D**k, r.denominator
    q, rem = divmod(num, den)
    lo, exact = integer_nthroot(q, k)
    hi = lo if exact and rem == 0 else lo + 1
    return Fraction(lo, D), Fraction(hi, D)


def c_membership(f: Germ, prec: int = 32) -> Fraction:
    """Upper rational bracket of ``max_n |A~_n(f)|^(1/(n-1))`` (0 if all vanish).

    Any c at or above the returned value satisfies ``in_filtration(f, c)``.
    """
    absc = _abs_list(f)
    best = Fraction(0)
    for n in range(2, f.order + 1):
        r = absc[n - 1] / absc[0]
        if r:
            best = max(best, root_bracket(r, n - 1, prec)[1])
    return best


@dataclass(frozen=True)
class RadiusEstimate:
    """Heuristic bracket for the radius of convergence from a truncation.

    ``low``/``high`` are None when every higher coefficient vanishes (estimate "inf").
    """

    low: Fraction | None
    high: Fraction | None
    heuristic: bool = True

    @property
    def infinite(self) -> bool:
        return self.low is None

    def brackets(self, x) -> bool:
        return self.infinite or self.low <= Fraction(x) <= self.high

    def to_json(self) -> dict:
        if self.infinite:
            return {"estimate": "inf", "heuristic": True}
        return {"low": str(self.low), "high": str(self.high), "heuristic": True}


def radius_estimate(f: Germ, prec: int = 32) -> RadiusEstimate:
    """Bracket between the reciprocals of ``max |a_n|^(1/(n-1))`` and ``max |a_n|^(1/n)``."""
    if f.order < 4:
        raise OrderTooHigh("radius_estimate needs order >= 4")
    absc = _abs_list(f)
    m1_lo = m1_hi = m2_lo = m2_hi = Fraction(0)
    for n in range(2, f.order + 1):
        a = absc[n - 1]
        if not a:
            continue
        lo, hi = root_bracket(a, n - 1, prec)
        m1_lo, m1_hi = max(m1_lo, lo), max(m1_hi, hi)
        lo, hi = root_bracket(a, n, prec)
        m2_lo, m2_hi = max(m2_lo, lo), max(m2_hi, hi)
    if not m1_hi:
        return RadiusEstimate(None, None)
    ests_lo = [1 / m1_hi, 1 / m2_hi]
    ests_hi = [1 / m for m in (m1_lo, m2_lo) if m] or ests_lo
    return RadiusEstimate(min(ests_lo), max(ests_hi + ests_lo))


# ---------------------------------------------------------------------------
# closure constants


def little_schroeder(N: int) -> list[Fraction]:
    """``K_1..K_N``: coefficients of the reversion of ``(z - 2z^2)/(1 - z)``."""
    g = Germ(QQ, [1] + [-1] * (N - 1))
    return list(invert(g).coeffs)


def closure_constants(c, N: int, prec: int = 32) -> Fraction:
    """A constant c' >= c^2 with ``f, g in Diff_{c,c} => f o g, f^-1 in Diff_{c',c'}`` to order N.

    Majorants: ``|A_n(f)| <= c^n`` so f o g is dominated by F o F with
    ``F = cz/(1-cz)``, and ``|A1(f o g)| >= c^-2``.  The normalized inverse is
    dominated by ``c^(n-1) K_n`` before undoing the derivative, which costs
    another ``c^(n-1)``.
    """
    c = Fraction(c)
    if c <= 1:
        raise ValueError("closure_constants needs c > 1")
    if N < 1:
        raise ValueError("N must be >= 1")
    F = Germ(QQ, [c**n for n in range(1, N + 1)])
    FF = compose(F, F)
    K = little_schroeder(N)
    best = c * c
    for n in range(2, N + 1):
        bound = max(c * c * FF.coeffs[n - 1], c ** (2 * n - 2) * K[n - 1])
        best = max(best, root_bracket(bound, n - 1, prec)[1])
    return best


# ---------------------------------------------------------------------------
# convex combinations


def convex_combine(f0: Germ, f1: Germ, t) -> Germ:
    """``(1 - t) f0 + t f1`` coefficientwise."""
    f0._check_ring(f1)
    ring = f0.ring
    t = ring(t)
    s = ring.one - t
    N = min(f0.order, f1.order)
    coeffs = [s * a + t * b for a, b in zip(f0.coeffs[:N], f1.coeffs[:N])]
    if ring.is_zero(coeffs[0]):
        raise DegenerateCombination(f"A1 of the combination vanishes at t = {t}")
    return Germ(ring, coeffs)


def convex_bound_check(f0: Germ, f1: Germ, t, c0, c1) -> Membership:
    """Check ``|A_n(f_t)| <= |A1(f1)| c1^(n-1)`` for ``n >= 2``.

    This is the coefficient bound that follows from ``f0 in Diff_c0``,
    ``f1 in Diff_c1``, ``c0 <= c1`` and ``c0 |A1(f0)| <= c1 |A1(f1)|``
    with t in [0, 1] (archimedean) or ``|t| <= 1`` (p-adic).  The hypotheses
    are verified first and a ValueError is raised when they fail.
    """
    ring: Ring = f0.ring
    c0, c1 = Fraction(c0), Fraction(c1)
    lam0, lam1 = ring.abs_value(f0.a1), ring.abs_value(f1.a1)
    if not (c0 <= c1 and c0 * lam0 <= c1 * lam1):
        raise ValueError("ordering hypotheses c0 <= c1 and c0|A1(f0)| <= c1|A1(f1)| fail")
    if not (in_filtration(f0, c0) and in_filtration(f1, c1)):
        raise ValueError("inputs are not in the stated classes")
    if ring is QQ:
        if not 0 <= Fraction(t) <= 1:
            raise ValueError("t must lie in [0, 1]")
    elif ring.abs_value(t) > 1:
        raise ValueError("t must satisfy |t| <= 1")
    ft = convex_combine(f0, f1, t)
    bound = lam1
    for n in range(2, ft.order + 1):
        bound *= c1
        if ring.abs_value(ft.coeffs[n - 1]) > bound:
            return Membership(False, ft.order, n)
    return Membership(True, ft.order)
