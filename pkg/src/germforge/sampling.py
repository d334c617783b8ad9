"""Seeded random germs, scalars and words for property suites."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .rings import PAdicRing, Ring
from .series import Germ
from .words import FreeWord

__all__ = [
    "random_rational",
    "random_scalar",
    "random_germ",
    "random_diff_class_germ",
    "random_word",
]


def random_rational(rng: random.Random, bound: int = 9, *, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if x or not nonzero:
            return x


def random_scalar(ring: Ring, rng: random.Random, *, unit: bool = False):
    if isinstance(ring, PAdicRing):
        mod = ring.p**ring.prec
        while True:
            x = ring(rng.randrange(mod))
            if not unit or ring.is_unit(x):
                return x
    return ring(random_rational(rng, nonzero=unit))


def random_germ(ring: Ring, order: int, rng: random.Random, *, a1=None, tangent: bool = False) -> Germ:
    """A germ with random coefficients; ``a1`` fixes the multiplier, ``tangent`` forces ``A1 = 1``."""
    if tangent:
        a1 = 1
    first = ring(a1) if a1 is not None else random_scalar(ring, rng, unit=True)
    return Germ(ring, [first] + [random_scalar(ring, rng) for _ in range(order - 1)])


def random_diff_class_germ(order: int, rng: random.Random, c, lam0=None, denom: int = 16) -> Germ:
    """A rational germ in ``Diff_c`` (and ``Diff_{lam0,c}`` when lam0 is given), to the given order."""
    from .rings import QQ

    c = Fraction(c)
    if lam0 is None:
        a1 = random_rational(rng, nonzero=True)
    else:
        lam0 = Fraction(lam0)
        while True:
            a1 = Fraction(rng.randint(1, denom), denom) * lam0
            if 1 / lam0 <= a1 <= lam0:
                break
        if rng.random() < 0.5:
            a1 = -a1
    coeffs = [a1]
    for n in range(2, order + 1):
        t = Fraction(rng.randint(-denom, denom), denom)
        coeffs.append(a1 * t * c ** (n - 1))
    return Germ(QQ, coeffs)


def random_word(rng: random.Random, rank: int, max_len: int, *, min_len: int = 1) -> FreeWord:
    """A nontrivial freely reduced word of length in ``[min_len, max_len]``."""
    while True:
        L = rng.randint(min_len, max_len)
        letters: list[tuple[int, int]] = []
        while len(letters) < L:
            g = rng.randint(1, rank)
            e = rng.choice((-1, 1))
            if letters and letters[-1] == (g, -e):
                continue
            letters.append((g, e))
        w = FreeWord(letters)
        if not w.is_trivial() and len(w) >= min_len:
            return w


def shortlex_words(rank: int, max_len: int) -> Sequence[FreeWord]:
    """All reduced words up to ``max_len`` in shortlex order (letters g1, g1^-1, g2, ...)."""
    alphabet = [(g, e) for g in range(1, rank + 1) for e in (1, -1)]
    out: list[FreeWord] = []
    layer: list[list[tuple[int, int]]] = [[]]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for a in alphabet:
                if w and w[-1] == (a[0], -a[1]):
                    continue
                nxt.append(w + [a])
        out.extend(FreeWord(w) for w in nxt)
        layer = nxt
    return out
