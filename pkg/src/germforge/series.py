"""Truncated formal diffeomorphisms ``f = a1 z + ... + aN z^N``.

Every operation returns the minimum order of its inputs; nothing silently
extends precision.  Internally coefficient lists are 1-indexed through a
leading placeholder at index 0 (the constant term, always zero).
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterator, Sequence

from .errors import (
    MixedRings,
    NonInvertibleLeadingCoefficient,
    OrderTooHigh,
    OrderZero,
)
from .rings import QQ, PAdicRing, Ring, ring_from_descriptor

__all__ = [
    "Germ",
    "commutator",
    "compose",
    "invert",
    "invert_formula",
    "invert_substitution",
    "jet",
    "jet_morphism_check",
    "series_mul",
]


def _skips_zeros(ring: Ring) -> bool:
    # p-adic zeros still carry precision, so they must take part in sums
    return not isinstance(ring, PAdicRing)


def series_mul(ring: Ring, a: Sequence, b: Sequence, N: int, va: int = 0, vb: int = 0) -> list:
    """Product of two series given as index lists, truncated at ``z^N``.

    ``va``/``vb`` are known lower bounds on the orders of ``a`` and ``b``.
    """
    zero = ring.zero
    out = [zero] * (N + 1)
    skip = _skips_zeros(ring)
    for i in range(va, min(len(a) - 1, N - vb) + 1):
        ai = a[i]
        if skip and not ai:
            continue
        for j in range(vb, min(len(b) - 1, N - i) + 1):
            bj = b[j]
            if skip and not bj:
                continue
            out[i + j] = out[i + j] + ai * bj
    return out


class Germ:
    """A truncated formal diffeomorphism over an exact ring.

    >>> from germforge.rings import QQ
    >>> f = Germ(QQ, [1, 1])
    >>> f.inverse().coeffs
    (Fraction(1, 1), Fraction(-1, 1))
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: Ring, coeffs: Sequence, *, check: bool = True):
        if len(coeffs) < 1:
            raise OrderZero("a germ needs order >= 1")
        cs = tuple(ring(c) for c in coeffs)
        if check and ring.is_zero(cs[0]):
            raise NonInvertibleLeadingCoefficient("A1 must be invertible")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("Germ is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def identity(cls, ring: Ring, order: int) -> "Germ":
        return cls.homothety(ring, 1, order)

    @classmethod
    def homothety(cls, ring: Ring, lam, order: int) -> "Germ":
        if order < 1:
            raise OrderZero("a germ needs order >= 1")
        return cls(ring, [lam] + [0] * (order - 1))

    @classmethod
    def _from_list(cls, ring: Ring, lst: Sequence) -> "Germ":
        return cls(ring, lst[1:])

    # -- access -----------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def a1(self):
        return self.coeffs[0]

    def _list(self) -> list:
        return [self.ring.zero, *self.coeffs]

    def coefficient(self, n: int):
        """``A_n(f)``."""
        if not 1 <= n <= self.order:
            raise OrderTooHigh(f"coefficient {n} outside 1..{self.order}")
        return self.coeffs[n - 1]

    def normalized_coefficient(self, n: int):
        """``A_n(f) / A_1(f)``."""
        return self.coefficient(n) / self.a1

    def truncate(self, order: int) -> "Germ":
        if order > self.order:
            raise OrderTooHigh(f"cannot extend order {self.order} to {order}")
        if order < 1:
            raise OrderZero("a germ needs order >= 1")
        return Germ(self.ring, self.coeffs[:order], check=False)

    def first_deviation(self) -> int | None:
        """Least n with ``A_n(f) != A_n(id)``, or None if none up to the order."""
        ring = self.ring
        if not ring.is_zero(self.a1 - 1):
            return 1
        for n, c in enumerate(self.coeffs[1:], start=2):
            if not ring.is_zero(c):
                return n
        return None

    def is_identity(self) -> bool:
        return self.first_deviation() is None

    # -- group operations -------------------------------------------------
    def _check_ring(self, other: "Germ") -> None:
        if self.ring is not other.ring and self.ring != other.ring:
            raise MixedRings(f"germs over {self.ring} and {other.ring}")

    def compose(self, other: "Germ") -> "Germ":
        """``self o other``."""
        return compose(self, other)

    def __call__(self, other: "Germ") -> "Germ":
        return compose(self, other)

    def inverse(self) -> "Germ":
        return invert(self)

    def __pow__(self, n: int) -> "Germ":
        if n < 0:
            return self.inverse() ** (-n)
        result = Germ.identity(self.ring, self.order)
        base = self
        while n:
            if n & 1:
                result = compose(result, base)
            n >>= 1
            if n:
                base = compose(base, base)
        return result

    def scale(self, lam) -> "Germ":
        """``m_lam o self``."""
        return Germ(self.ring, [lam * c for c in self.coeffs])

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Germ):
            return NotImplemented
        if self.ring is not other.ring and self.ring != other.ring:
            return False
        n = min(self.order, other.order)
        is_zero = self.ring.is_zero
        return all(is_zero(x - y) for x, y in zip(self.coeffs[:n], other.coeffs[:n]))

    __hash__ = None

    def __repr__(self):
        terms = []
        for n, c in enumerate(self.coeffs, start=1):
            if self.ring.is_zero(c):
                continue
            terms.append(f"({c})*z" if n == 1 else f"({c})*z^{n}")
        return f"Germ[{' + '.join(terms) or '0'} + O(z^{self.order + 1})]"

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "ring": self.ring.descriptor(),
            "order": str(self.order),
            "coeffs": [self.ring.to_json(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict, ring: Ring | None = None) -> "Germ":
        ring = ring or ring_from_descriptor(obj["ring"])
        coeffs = [ring.from_json(c) for c in obj["coeffs"]]
        if "order" in obj and int(obj["order"]) != len(coeffs):
            raise ValueError("order does not match coefficient count")
        return cls(ring, coeffs)


def compose(f: Germ, g: Germ) -> Germ:
    """``f o g`` by accumulating powers of g, O(N^3)."""
    f._check_ring(g)
    ring = f.ring
    N = min(f.order, g.order)
    gl = g._list()[: N + 1]
    out = [ring.zero] * (N + 1)
    power = gl
    skip = _skips_zeros(ring)
    for k in range(1, N + 1):
        a = f.coeffs[k - 1]
        if not (skip and not a):
            for n in range(k, N + 1):
                out[n] = out[n] + a * power[n]
        if k < N:
            power = series_mul(ring, power, gl, N, k, 1)
    return Germ._from_list(ring, out)


def invert_substitution(f: Germ) -> Germ:
    """Solve ``f(g(z)) = z`` for g one coefficient at a time.

    ``pw[k][n]`` holds ``[z^n] g^k``; column n of the table only needs
    ``b_1..b_{n-1}`` for ``k >= 2``, which determines ``b_n``.
    """
    ring = f.ring
    a1 = f.a1
    if not ring.is_unit(a1):
        raise NonInvertibleLeadingCoefficient(f"A1 = {a1} is not invertible")
    N = f.order
    a = f._list()
    b = [ring.zero] * (N + 1)
    b[1] = ring.one / a1
    pw = [[ring.zero] * (N + 1) for _ in range(N + 1)]
    pw[0][0] = ring.one
    pw[1][1] = b[1]
    for n in range(2, N + 1):
        for k in range(n, 1, -1):
            s = ring.zero
            for j in range(1, n - k + 2):
                s = s + b[j] * pw[k - 1][n - j]
            pw[k][n] = s
        acc = ring.zero
        for k in range(2, n + 1):
            acc = acc + a[k] * pw[k][n]
        b[n] = -acc / a1
        pw[1][n] = b[n]
    return Germ._from_list(ring, b)


def _partitions(total: int, largest: int | None = None) -> Iterator[dict]:
    """Partitions of ``total`` as {part: multiplicity}."""
    if largest is None:
        largest = total
    if total == 0:
        yield {}
        return
    for part in range(min(total, largest), 0, -1):
        for rest in _partitions(total - part, part):
            out = dict(rest)
            out[part] = out.get(part, 0) + 1
            yield out


def _formula_weight(n: int, ks: dict) -> int:
    K = sum(ks.values())
    num = factorial(n + K - 1)
    den = factorial(n)
    for k in ks.values():
        den *= factorial(k)
    w = Fraction(num, den)
    sign = -1 if K % 2 else 1
    return sign * (w.numerator if w.denominator == 1 else w)


def invert_formula(f: Germ) -> Germ:
    """The explicit multinomial inversion formula.

    ``b_n = a1^{-n} sum (-1)^K (n+K-1)!/(n! prod k_i!) prod (a_{i+1}/a1)^{k_i}``
    over ``k_1 + 2k_2 + 3k_3 + ... = n - 1`` with ``K = sum k_i``.
    """
    ring = f.ring
    a1 = f.a1
    if not ring.is_unit(a1):
        raise NonInvertibleLeadingCoefficient(f"A1 = {a1} is not invertible")
    inv_a1 = ring.one / a1
    N = f.order
    at = [None, ring.one] + [c * inv_a1 for c in f.coeffs[1:]]
    b = [ring.zero]
    for n in range(1, N + 1):
        s = ring.zero
        for ks in _partitions(n - 1):
            term = ring(_formula_weight(n, ks))
            for i, k in ks.items():
                term = term * at[i + 1] ** k
            s = s + term
        b.append(s * inv_a1**n)
    return Germ._from_list(ring, b)


def invert(f: Germ, method: str = "substitution") -> Germ:
    if method == "substitution":
        return invert_substitution(f)
    if method == "formula":
        return invert_formula(f)
    raise ValueError(f"unknown inversion method {method!r}")


def jet(f: Germ, ell: int) -> Germ:
    """The ell-jet ``j_ell(f)``, itself a germ of order ell."""
    return f.truncate(ell)


def jet_morphism_check(f: Germ, g: Germ, ell: int) -> bool:
    """``j_ell(f o g) == j_ell(f) o j_ell(g)``."""
    return jet(compose(f, g), ell) == compose(jet(f, ell), jet(g, ell))


def identity(order: int, ring: Ring = QQ) -> Germ:
    return Germ.identity(ring, order)


def commutator(f: Germ, g: Germ) -> Germ:
    """``[f, g] = f o g o f^-1 o g^-1``."""
    return compose(compose(f, g), compose(invert(f), invert(g)))
