"""Orbit-separation search: a polynomial h with ``w(h f h^-1, g) != id``.

The search follows one orbit ``z_0, z_1 = g^{n_1}(z_0), z_2 = F^{n_2}(z_1), ...``
with ``F = h f h^-1`` and keeps every point distinct.  An F-step starting at
``z`` picks a fresh preimage y and appends to h a factor
``P(x) = x + eta x^2 prod (x - z_j)`` that fixes every orbit point so far and
sends ``h(y)`` to z; the step then exits at ``h(f^n(y))``.  All arithmetic is
exact over the rationals.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import NonRationalInput, NotFound
from .group import word_eval
from .rings import QQ
from .series import Germ, compose, invert
from .words import FreeWord

__all__ = ["RationalMap", "PolyFactor", "OrbitWitness", "orbit_separation_search", "verify_witness"]


def _poly_eval(cs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(cs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class RationalMap:
    """``z -> num(z) / den(z)`` with ``num(0) = 0`` and nonzero derivative at 0.

    Coefficient lists are in increasing degree.  Negative powers are
    supported only for Moebius maps ``a z / (c z + d)``.
    """

    num: tuple[Fraction, ...]
    den: tuple[Fraction, ...]

    def __post_init__(self):
        num = tuple(Fraction(c) for c in self.num)
        den = tuple(Fraction(c) for c in self.den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        if not den or den[0] == 0:
            raise NonRationalInput("denominator must not vanish at 0")
        if not num or num[0] != 0:
            raise NonRationalInput("the map must fix 0")
        if len(num) < 2 or num[1] == 0:
            raise NonRationalInput("derivative at 0 must be nonzero")

    @classmethod
    def homothety(cls, lam) -> "RationalMap":
        return cls((0, Fraction(lam)), (1,))

    @classmethod
    def moebius(cls, a, c, d) -> "RationalMap":
        """``a z / (c z + d)``."""
        return cls((0, Fraction(a)), (Fraction(d), Fraction(c)))

    @classmethod
    def parse(cls, obj) -> "RationalMap":
        return cls(tuple(Fraction(x) for x in obj["num"]), tuple(Fraction(x) for x in obj["den"]))

    def to_json(self) -> dict:
        return {"num": [str(c) for c in self.num], "den": [str(c) for c in self.den]}

    @property
    def is_moebius(self) -> bool:
        return len(self.num) <= 2 and len(self.den) <= 2

    def derivative_at_zero(self) -> Fraction:
        return self.num[1] / self.den[0]

    def __call__(self, x: Fraction) -> Fraction:
        d = _poly_eval(self.den, x)
        if d == 0:
            raise ZeroDivisionError("pole")
        return _poly_eval(self.num, x) / d

    def inverse(self) -> "RationalMap":
        if not self.is_moebius:
            raise NonRationalInput("negative powers need a Moebius map")
        a = self.num[1]
        d = self.den[0]
        c = self.den[1] if len(self.den) > 1 else Fraction(0)
        # w = a z/(c z + d)  <=>  z = d w / (a - c w)
        return RationalMap((0, d), (a, -c))

    def iterate(self, x: Fraction, n: int) -> Fraction:
        m = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            x = m(x)
        return x

    def taylor(self, N: int) -> Germ:
        """Power series to order N."""
        den = list(self.den) + [Fraction(0)] * N
        inv = [Fraction(0)] * (N + 1)
        inv[0] = 1 / den[0]
        for n in range(1, N + 1):
            inv[n] = -sum(den[k] * inv[n - k] for k in range(1, n + 1)) / den[0]
        num = list(self.num) + [Fraction(0)] * N
        cs = [sum(num[k] * inv[n - k] for k in range(n + 1)) for n in range(1, N + 1)]
        return Germ(QQ, cs)

    def has_finite_order(self, bound: int = 12, N: int = 16) -> bool:
        """Detects ``f^k = id`` for small k from the series; rational multipliers are +-1 roots only."""
        lam = self.derivative_at_zero()
        if lam not in (1, -1):
            return False
        t = self.taylor(N)
        p = t
        for _ in range(bound):
            if p.is_identity():
                return True
            p = compose(p, t)
        return False


@dataclass(frozen=True)
class PolyFactor:
    """``x + eta x^2 prod (x - r)`` over the roots r."""

    eta: Fraction
    roots: tuple[Fraction, ...]

    def __call__(self, x: Fraction) -> Fraction:
        p = x * x
        for r in self.roots:
            p *= x - r
        return x + self.eta * p

    def coeffs(self) -> list[Fraction]:
        poly = [Fraction(0), Fraction(0), Fraction(1)]
        for r in self.roots:
            nxt = [Fraction(0)] * (len(poly) + 1)
            for i, c in enumerate(poly):
                nxt[i + 1] += c
                nxt[i] -= r * c
            poly = nxt
        out = [self.eta * c for c in poly]
        out[1] += 1
        return out


def _compose_polys(outer: list[Fraction], inner: list[Fraction]) -> list[Fraction]:
    result = [Fraction(0)]
    power = [Fraction(1)]
    for c in outer:
        if c:
            if len(result) < len(power):
                result += [Fraction(0)] * (len(power) - len(result))
            for i, x in enumerate(power):
                result[i] += c * x
        nxt = [Fraction(0)] * (len(power) + len(inner) - 1)
        for i, a in enumerate(power):
            if a:
                for j, b in enumerate(inner):
                    if b:
                        nxt[i + j] += a * b
        power = nxt
    while len(result) > 1 and result[-1] == 0:
        result.pop()
    return result


@dataclass
class OrbitWitness:
    """Result of a successful search.

    ``factors`` compose to ``h = P_m o ... o P_1``; ``steps`` records each
    syllable as ``(letter, exponent, entry, preimage or None, exit)``.
    """

    word: FreeWord
    factors: list[PolyFactor]
    points: list[Fraction]
    steps: list[tuple]
    germ_order: int = 0
    germ_n_star: int | None = None
    germ_value: Fraction | None = None
    meta: dict = field(default_factory=dict)

    @property
    def witness(self) -> Fraction:
        return self.points[0]

    @property
    def image(self) -> Fraction:
        return self.points[-1]

    def h(self, x: Fraction) -> Fraction:
        for P in self.factors:
            x = P(x)
        return x

    def h_coeffs(self) -> list[Fraction]:
        poly = [Fraction(0), Fraction(1)]
        for P in self.factors:
            poly = _compose_polys(P.coeffs(), poly)
        return poly

    @property
    def degree(self) -> int:
        return len(self.h_coeffs()) - 1

    @property
    def perturbation_degree(self) -> int:
        """deg P in ``h = z + eps z^2 P(z)``."""
        return max(self.degree - 2, 0)

    @property
    def ell(self) -> int:
        return len(self.word.letters)

    def degree_bound_ok(self) -> bool:
        return self.perturbation_degree <= factorial(2 * self.ell)

    def h_germ(self, N: int) -> Germ:
        cs = self.h_coeffs()[1 : N + 1]
        cs += [Fraction(0)] * (N - len(cs))
        return Germ(QQ, cs)

    def to_json(self) -> dict:
        return {
            "word": str(self.word),
            "witness": str(self.witness),
            "image": str(self.image),
            "points": [str(p) for p in self.points],
            "h_coeffs": [str(c) for c in self.h_coeffs()],
            "perturbation_degree": str(self.perturbation_degree),
            "degree_bound": str(factorial(2 * self.ell)),
            "germ_certificate": {
                "order": str(self.germ_order),
                "n_star": None if self.germ_n_star is None else str(self.germ_n_star),
                "deviation": None if self.germ_value is None else str(self.germ_value),
            },
        }


def verify_witness(wit: OrbitWitness, f: RationalMap, g: RationalMap) -> bool:
    """Replay the orbit exactly and check the points are pairwise distinct."""
    x = wit.points[0]
    for letter, n, entry, pre, exit_ in wit.steps:
        if entry != x:
            return False
        if letter == 2:
            x = g.iterate(x, n)
        else:
            if wit.h(pre) != entry:
                return False
            x = wit.h(f.iterate(pre, n))
        if x != exit_:
            return False
    return x == wit.points[-1] and len(set(wit.points)) == len(wit.points) and x != wit.points[0]


def orbit_separation_search(
    f: RationalMap,
    g: RationalMap,
    w: FreeWord,
    *,
    budget: int = 200,
    max_bits: int = 4096,
    germ_order: int = 12,
    seed: int = 0,
) -> OrbitWitness:
    """Search for h and a rational witness following the orbit recursion.

    ``w`` is a word in a (generator 1, acting by ``h f h^-1``) and b
    (generator 2, acting by g); letters act right to left.  ``budget`` caps the
    number of candidate points tried per step.
    """
    if w.is_trivial():
        raise ValueError("the word must be nontrivial")
    if w.rank > 2:
        raise ValueError("words must use generators 1 and 2 only")
    for name, m in (("f", f), ("g", g)):
        if m.has_finite_order():
            raise ValueError(f"{name} must have infinite order")
        if not m.is_moebius and any(e < 0 for gen, e in w.letters if gen == (1 if name == "f" else 2)):
            raise NonRationalInput(f"{name} is not Moebius, so its negative powers are not rational")
    rng = random.Random(seed)
    syllables = list(reversed(w.letters))

    def candidates():
        # small rationals first, then random ones
        for k in range(2, 40):
            yield Fraction(1, k)
            yield Fraction(-1, k)
        while True:
            yield Fraction(rng.randint(-999, 999) or 1, rng.randint(1000, 20000))

    def apply(m: RationalMap, x: Fraction, n: int) -> Fraction | None:
        try:
            return m.iterate(x, n)
        except ZeroDivisionError:
            return None

    def too_big(x: Fraction) -> bool:
        return x.numerator.bit_length() + x.denominator.bit_length() > max_bits

    # z_0: any point whose first step moves it and whose lookahead is fresh
    factors: list[PolyFactor] = []
    steps: list[tuple] = []
    points: list[Fraction] = []
    h = lambda x, fs=factors: _apply_factors(fs, x)  # noqa: E731

    def step(z: Fraction, letter: int, n: int, pts: list[Fraction]):
        """Try candidates until the exit is fresh; returns (new factor or None, preimage, exit)."""
        if letter == 1 and not any(st[0] == 1 for st in steps):
            # first F-syllable: h is still the identity, so y = z needs no new factor
            out = apply(f, z, n)
            if out is not None and out not in pts and out != z:
                return None, z, out
        tried = 0
        for y in candidates():
            if tried >= budget:
                return None
            tried += 1
            if letter == 2:
                out = apply(g, z, n)
                if out is None or out in pts or out == z:
                    return None
                return None, None, out
            if y in (0,):
                continue
            x = h(y)
            if x == 0 or x in pts or x == z:
                continue
            prod = x * x
            for r in pts + [z]:
                prod *= x - r
            if prod == 0:
                continue
            P = PolyFactor((z - x) / prod, tuple(pts + [z]))
            fy = apply(f, y, n)
            if fy is None:
                continue
            out = P(h(fy))
            if out in pts or out == z or too_big(out):
                continue
            return P, y, out
        return None

    for attempt in range(budget):
        factors.clear()
        steps.clear()
        points[:] = []
        if attempt < 2 * 38:
            z0 = Fraction(1, attempt // 2 + 2) * (1 if attempt % 2 == 0 else -1)
        else:
            z0 = Fraction(rng.randint(-999, 999) or 1, rng.randint(1000, 20000))
        points.append(z0)
        ok = True
        for letter, n in syllables:
            z = points[-1]
            res = step(z, letter, n, points[:-1])
            if res is None:
                ok = False
                break
            P, y, out = res
            if P is not None:
                factors.append(P)
            steps.append((letter, n, z, y, out))
            points.append(out)
        if ok and len(set(points)) == len(points):
            wit = OrbitWitness(w, list(factors), list(points), list(steps))
            if not verify_witness(wit, f, g):
                continue
            _germ_certificate(wit, f, g, germ_order)
            wit.meta["attempts"] = attempt + 1
            return wit
    raise NotFound(f"no separating orbit found within budget {budget}")


def _apply_factors(factors: Sequence[PolyFactor], x: Fraction) -> Fraction:
    for P in factors:
        x = P(x)
    return x


def _germ_certificate(wit: OrbitWitness, f: RationalMap, g: RationalMap, N: int) -> None:
    """Series-level check: first deviation of ``w(h f h^-1, g)`` from the identity."""
    if N < 2:
        return
    H = wit.h_germ(N)
    F = compose(compose(H, f.taylor(N)), invert(H))
    img = word_eval(wit.word, [F, g.taylor(N)])
    wit.germ_order = N
    n = img.first_deviation()
    wit.germ_n_star = n
    if n is not None:
        wit.germ_value = img.coefficient(n) - (1 if n == 1 else 0)
