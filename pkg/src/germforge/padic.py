"""The p-adic group G_p (integral coefficients, unit multiplier) and its jet filtration."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NotAUnit, OrderTooHigh, SearchBudgetExceeded, WrongRing
from .group import Membership
from .representations import (
    NontrivialityCertificate,
    Representation,
    _make_rep,
    certify_nontrivial,
    explicit_free_pair,
)
from .rings import PAdicRing
from .series import Germ, commutator, compose, invert, jet
from .surface import get_presentation
from .words import FreeWord

__all__ = [
    "gp_membership",
    "ClosureCheck",
    "gp_closure_check",
    "jet_kernel_membership",
    "DerivedPair",
    "derived_free_generators",
    "parameter_family_sample",
]


def _padic_ring(f: Germ) -> PAdicRing:
    if not isinstance(f.ring, PAdicRing):
        raise WrongRing(f"expected a p-adic germ, got {f.ring}")
    return f.ring


def gp_membership(f: Germ) -> Membership:
    """All ``A_n`` in Z_p and ``|A_1| = 1``; reports the first violating index."""
    _padic_ring(f)
    for n, a in enumerate(f.coeffs, start=1):
        if n == 1 and (a.is_zero() or a.val != 0):
            return Membership(False, f.order, 1)
        if not a.is_zero() and a.val < 0:
            return Membership(False, f.order, n)
    return Membership(True, f.order)


@dataclass(frozen=True)
class ClosureCheck:
    composition: Membership
    inverse: Membership

    def __bool__(self):
        return bool(self.composition) and bool(self.inverse)


def gp_closure_check(f: Germ, g: Germ) -> ClosureCheck:
    """Membership of ``f o g`` and ``f^-1``; no assumption is made about the inputs."""
    _padic_ring(f)
    _padic_ring(g)
    return ClosureCheck(gp_membership(compose(f, g)), gp_membership(invert(f)))


def jet_kernel_membership(f: Germ, ell: int) -> bool:
    """``j_ell(f) = j_ell(id)``: ``A_1 = 1`` and ``A_n = 0`` for ``2 <= n <= ell``."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if ell > f.order:
        raise OrderTooHigh(f"ell = {ell} exceeds the truncation order {f.order}")
    return jet(f, ell).is_identity()


@dataclass(frozen=True)
class DerivedPair:
    """Two elements of ``G_{p,ell}`` given as words in (f0, g0), with their commutator's deviation."""

    ell: int
    words: tuple[FreeWord, FreeWord]
    germs: tuple[Germ, Germ]
    contact: tuple[int, int]
    commutator_n_star: int

    def to_json(self) -> dict:
        return {
            "ell": str(self.ell),
            "words": [w.to_text(("a", "b")) for w in self.words],
            "contact_orders": [str(c) for c in self.contact],
            "commutator_n_star": str(self.commutator_n_star),
            "germs": [g.to_json() for g in self.germs],
        }


def derived_free_generators(ell: int, N: int = 24, ring: PAdicRing | None = None, budget: int = 64) -> DerivedPair:
    """Search nested commutators of the explicit pair for two elements of the jet kernel.

    Candidates are (f0, g0) followed by successive commutators of earlier
    candidates; the first pair in ``G_{p,ell}`` whose commutator deviates from
    the identity below order N is returned.  Only nontriviality is certified.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    ring = ring or PAdicRing(5, 20)
    pair = explicit_free_pair(ring, N)
    a, b = FreeWord.gen(1), FreeWord.gen(2)
    pool: list[tuple[FreeWord, Germ]] = [(a, pair.f0), (b, pair.g0)]
    seen = {a, b}
    tried = 0
    lo = 0
    while tried < budget:
        hi = len(pool)
        kernel = [(w, g) for w, g in pool if (g.first_deviation() or N + 1) > ell]
        for i, (w1, g1) in enumerate(kernel):
            for w2, g2 in kernel[i + 1 :]:
                tried += 1
                n = commutator(g1, g2).first_deviation()
                if n is not None:
                    return DerivedPair(
                        ell, (w1, w2), (g1, g2), (g1.first_deviation(), g2.first_deviation()), n
                    )
                if tried >= budget:
                    break
            if tried >= budget:
                break
        # next layer: commutators of new candidates with everything so far
        new = []
        for i in range(lo, hi):
            for j in range(i):
                w = pool[j][0] * pool[i][0] * pool[j][0].inverse() * pool[i][0].inverse()
                if w in seen or w.is_trivial():
                    continue
                g = commutator(pool[j][1], pool[i][1])
                if g.first_deviation() is None:
                    continue
                seen.add(w)
                new.append((w, g))
        if not new:
            break
        pool.extend(new)
        lo = hi
    raise SearchBudgetExceeded(f"no pair in G_(p,{ell}) with nontrivial commutator below order {N}")


def parameter_family_sample(
    t, N: int = 24, words: Sequence[FreeWord] = (), ring: PAdicRing | None = None
) -> tuple[Representation, list[NontrivialityCertificate]]:
    """``rho_t(a) = m_t o f0``, ``rho_t(b) = g0`` with certificates for ``words``."""
    ring = ring or PAdicRing(5, 20)
    t = ring(t)
    if not ring.is_unit(t):
        raise NotAUnit(f"|t| must be 1, got valuation {t.val}")
    pair = explicit_free_pair(ring, N)
    rep = _make_rep(get_presentation("free:2"), {"a": pair.f0.scale(t), "b": pair.g0})
    return rep, certify_nontrivial(rep, list(words))
