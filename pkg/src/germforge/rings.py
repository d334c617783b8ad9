"""Exact coefficient rings.

Three backends share one small interface (:class:`Ring`):

* :data:`QQ` -- rationals, elements are :class:`fractions.Fraction`;
* :class:`PAdicRing` -- p-adic numbers at fixed absolute precision, elements
  are :class:`PAdic`;
* :class:`RationalFunctionField` -- Q(c1, ..., cm), elements are sympy
  ``FracElement`` objects.

Elements are plain Python numbers/objects supporting ``+ - * /`` so the
series code never needs to know which backend it runs on.
"""
from __future__ import annotations

import string
from fractions import Fraction
from typing import Any, Iterable, Mapping

from .errors import DivisionByZero, MixedRings, PrecisionExhausted, UnsupportedRing

__all__ = [
    "Ring",
    "RationalField",
    "QQ",
    "PAdic",
    "PAdicRing",
    "RationalFunctionField",
    "ring_from_descriptor",
    "parse_ring",
    "valuation",
]

_DIGITS = string.digits + string.ascii_lowercase


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


class Ring:
    """Interface shared by the coefficient rings."""

    kind = "abstract"
    has_abs = False

    def __call__(self, x: Any) -> Any:
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def is_zero(self, x) -> bool:
        return x == 0

    def is_unit(self, x) -> bool:
        return not self.is_zero(x)

    def abs_value(self, x) -> Fraction:
        raise UnsupportedRing(f"{self} has no absolute value")

    def descriptor(self) -> dict:
        raise NotImplementedError

    def to_json(self, x) -> Any:
        raise NotImplementedError

    def from_json(self, obj: Any):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Ring) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(repr(sorted(self.descriptor().items())))


# ---------------------------------------------------------------------------
# rationals


class RationalField(Ring):
    kind = "rational"
    has_abs = True

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, str)):
            return Fraction(x)
        if isinstance(x, PAdic):
            raise MixedRings("cannot coerce a p-adic number into QQ")
        try:
            return Fraction(int(x.numerator), int(x.denominator))
        except AttributeError:
            raise MixedRings(f"cannot coerce {x!r} into QQ") from None

    def abs_value(self, x) -> Fraction:
        return abs(Fraction(x))

    def descriptor(self) -> dict:
        return {"kind": "rational"}

    def to_json(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def from_json(self, obj) -> Fraction:
        return Fraction(obj)

    def __repr__(self):
        return "QQ"


QQ = RationalField()


# ---------------------------------------------------------------------------
# p-adics


class PAdic:
    """A p-adic number known modulo ``p**prec``.

    Stored as ``p**val * unit`` with ``unit`` a residue mod ``p**(prec - val)``
    coprime to p.  A value that is zero to the available precision has
    ``unit == 0`` and ``val == prec`` (so ``val`` is always a valuation lower
    bound).  Instances are immutable.
    """

    __slots__ = ("p", "prec", "val", "unit")

    def __init__(self, p: int, prec: int, val: int, unit: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "val", val)
        object.__setattr__(self, "unit", unit)

    def __setattr__(self, name, value):
        raise AttributeError("PAdic is immutable")

    # -- construction -----------------------------------------------------
    @classmethod
    def _make(cls, p: int, n: int, s: int, prec: int) -> "PAdic":
        """The number ``n * p**s`` reduced modulo ``p**prec``."""
        if n != 0:
            while n % p == 0:
                n //= p
                s += 1
            if s < prec:
                return cls(p, prec, s, n % p ** (prec - s))
        if prec <= 0:
            raise PrecisionExhausted("p-adic result has no certified digits")
        return cls(p, prec, prec, 0)

    @classmethod
    def from_rational(cls, p: int, x, prec: int) -> "PAdic":
        x = Fraction(x)
        num, den = x.numerator, x.denominator
        if num == 0:
            return cls._make(p, 0, 0, prec)
        k = 0
        while den % p == 0:
            den //= p
            k += 1
        mod = p ** max(prec + k, 1)
        return cls._make(p, num * pow(den, -1, mod) % mod, -k, prec)

    def _coerce(self, other) -> "PAdic":
        if isinstance(other, PAdic):
            if other.p != self.p:
                raise MixedRings(f"p-adic primes differ: {self.p} vs {other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            return PAdic.from_rational(self.p, other, self.prec)
        return NotImplemented

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.unit == 0

    def __bool__(self):
        return self.unit != 0

    @property
    def relative_precision(self) -> int:
        return self.prec - self.val

    def residue(self) -> int:
        """Integer representative in ``[0, p**prec)``; requires ``val >= 0``."""
        if self.val < 0:
            raise ValueError("element is not a p-adic integer")
        return self.unit * self.p ** self.val % self.p ** self.prec

    def to_fraction(self) -> Fraction:
        """A rational representative (denominator a power of p)."""
        return Fraction(self.unit) * Fraction(self.p) ** self.val

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        if self.unit == 0:
            return self
        return PAdic(self.p, self.prec, self.val, -self.unit % self.p ** (self.prec - self.val))

    def __pos__(self):
        return self

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self.prec, other.prec)
        s = min(self.val, other.val)
        n = self.unit * self.p ** (self.val - s) + other.unit * self.p ** (other.val - s)
        return PAdic._make(self.p, n, s, prec)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        # pessimistic: min of operand precisions, lowered by negative valuations
        prec = min(self.prec + min(other.val, 0), other.prec + min(self.val, 0))
        return PAdic._make(self.p, self.unit * other.unit, self.val + other.val, prec)

    __rmul__ = __mul__

    def inverse(self) -> "PAdic":
        if self.unit == 0:
            raise PrecisionExhausted("cannot invert a p-adic number that is zero to precision")
        rel = self.prec - self.val
        mod = self.p ** rel
        return PAdic(self.p, rel - self.val, -self.val, pow(self.unit, -1, mod))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = PAdic._make(self.p, 1, 0, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, PAdic) or other.p == self.p else None
        if other is None or other is NotImplemented:
            return False
        return (self - other).unit == 0

    __hash__ = None

    def __repr__(self):
        if self.unit == 0:
            return f"O({self.p}^{self.prec})"
        return f"{self.to_fraction()} + O({self.p}^{self.prec})"


class PAdicRing(Ring):
    """Q_p at a default absolute precision ``prec`` used when coercing."""

    kind = "padic"
    has_abs = True

    def __init__(self, p: int, prec: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        if prec < 1:
            raise ValueError("precision must be >= 1")
        self.p = p
        self.prec = prec

    def __call__(self, x) -> PAdic:
        if isinstance(x, PAdic):
            if x.p != self.p:
                raise MixedRings(f"p-adic primes differ: {self.p} vs {x.p}")
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, (int, Fraction)):
            return PAdic.from_rational(self.p, x, self.prec)
        raise MixedRings(f"cannot coerce {x!r} into {self}")

    def is_zero(self, x) -> bool:
        return self(x).unit == 0

    def is_unit(self, x) -> bool:
        x = self(x)
        return x.unit != 0 and x.val == 0

    def abs_value(self, x) -> Fraction:
        """``p**-v``; for a value zero to precision this is the upper bound ``p**-prec``."""
        v = self(x).val
        return Fraction(1, self.p**v) if v >= 0 else Fraction(self.p ** (-v))

    def descriptor(self) -> dict:
        return {"kind": "padic", "p": self.p, "precision": self.prec}

    def _digits(self, n: int, length: int) -> str:
        out = []
        for _ in range(length):
            n, d = divmod(n, self.p)
            out.append(d)
        if self.p <= len(_DIGITS):
            return "".join(_DIGITS[d] for d in out)
        return ",".join(str(d) for d in out)

    def _undigits(self, s: str) -> int:
        ds = [int(t) for t in s.split(",")] if "," in s or self.p > len(_DIGITS) else [_DIGITS.index(c) for c in s]
        return sum(d * self.p**i for i, d in enumerate(ds))

    def to_json(self, x) -> dict:
        x = self(x)
        if x.val >= 0:
            return {"p": x.p, "precision": x.prec, "digits": self._digits(x.residue(), x.prec)}
        return {
            "p": x.p,
            "precision": x.prec,
            "valuation": x.val,
            "digits": self._digits(x.unit, x.prec - x.val),
        }

    def from_json(self, obj) -> PAdic:
        if isinstance(obj, (str, int)):
            return self(obj)
        if obj["p"] != self.p:
            raise MixedRings(f"p-adic primes differ: {self.p} vs {obj['p']}")
        prec = obj["precision"]
        n = self._undigits(obj["digits"]) if obj["digits"] else 0
        return PAdic._make(self.p, n, obj.get("valuation", 0), prec)

    def __repr__(self):
        return f"Q_{self.p}(prec={self.prec})"


# ---------------------------------------------------------------------------
# rational functions


class RationalFunctionField(Ring):
    """Q(c1, ..., cm) backed by sympy's sparse rational function field."""

    kind = "ratfunc"

    def __init__(self, names: Iterable[str]):
        from sympy import QQ as _SQQ
        from sympy.polys.fields import FracField
        from sympy.polys.orderings import lex

        self.names = tuple(names)
        if not self.names:
            raise ValueError("need at least one indeterminate")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate indeterminate names")
        self._sqq = _SQQ
        self.field = FracField(self.names, _SQQ, lex)
        self.gens = self.field.gens

    def gen(self, name: str):
        return self.gens[self.names.index(name)]

    def __call__(self, x):
        if isinstance(x, str):
            if x in self.names:
                return self.gen(x)
            x = Fraction(x)
        if isinstance(x, Fraction):
            return self.field(self._sqq(x.numerator, x.denominator))
        if isinstance(x, int):
            return self.field(x)
        if isinstance(x, PAdic):
            raise MixedRings("cannot coerce a p-adic number into a rational function field")
        if getattr(x, "field", None) is self.field:
            return x
        if getattr(x, "field", None) is not None:
            # element of another rational function field: re-embed by names
            return self.field.from_expr(x.as_expr())
        raise MixedRings(f"cannot coerce {x!r} into {self}")

    def is_zero(self, x) -> bool:
        return not x.numer

    def abs_value(self, x):
        raise UnsupportedRing("rational functions have no absolute value")

    def descriptor(self) -> dict:
        return {"kind": "ratfunc", "vars": list(self.names)}

    @staticmethod
    def _key(monom) -> str:
        return ",".join(str(e) for e in monom)

    def to_json(self, x) -> dict:
        x = self(x)
        lc = Fraction(int(x.denom.LC.numerator), int(x.denom.LC.denominator))

        def encode(poly):
            return {
                self._key(m): QQ.to_json(Fraction(int(c.numerator), int(c.denominator)) / lc)
                for m, c in poly.terms()
            }

        return {"numer": encode(x.numer), "denom": encode(x.denom)}

    def _poly(self, terms: Mapping[str, str]):
        ring = self.field.ring
        data = {}
        for key, val in terms.items():
            monom = tuple(int(e) for e in key.split(",")) if key else (0,) * len(self.names)
            q = Fraction(val)
            data[monom] = self._sqq(q.numerator, q.denominator)
        return ring(data)

    def from_json(self, obj):
        if isinstance(obj, (str, int)):
            return self(obj)
        return self.field.new(self._poly(obj["numer"]), self._poly(obj["denom"]))

    def specialize(self, x, values: Mapping[str, Fraction]) -> Fraction:
        """Evaluate at a rational point; raises DivisionByZero on a pole."""
        x = self(x)

        def ev(poly):
            total = Fraction(0)
            for monom, c in poly.terms():
                term = Fraction(int(c.numerator), int(c.denominator))
                for name, e in zip(self.names, monom):
                    if e:
                        term *= Fraction(values[name]) ** e
                total += term
            return total

        den = ev(x.denom)
        if den == 0:
            raise DivisionByZero("specialization hits a pole")
        return ev(x.numer) / den

    def term_count(self, x) -> int:
        return len(x.numer.terms()) + len(x.denom.terms())

    def __repr__(self):
        return f"QQ({', '.join(self.names)})"


# ---------------------------------------------------------------------------
# descriptors


def ring_from_descriptor(desc: Mapping) -> Ring:
    kind = desc.get("kind")
    if kind == "rational":
        return QQ
    if kind == "padic":
        return PAdicRing(int(desc["p"]), int(desc["precision"]))
    if kind == "ratfunc":
        return RationalFunctionField(desc["vars"])
    raise ValueError(f"unknown ring descriptor {desc!r}")


def parse_ring(text: str) -> Ring:
    """Parse a command-line ring spec: ``QQ``, ``padic:5:20`` or ``ratfunc:c1,c2``."""
    text = text.strip()
    if text.lower() in ("qq", "q", "rational", "rationals"):
        return QQ
    head, _, rest = text.partition(":")
    if head == "padic":
        p, _, prec = rest.partition(":")
        return PAdicRing(int(p), int(prec or 20))
    if head == "ratfunc":
        return RationalFunctionField([n.strip() for n in rest.split(",") if n.strip()])
    raise ValueError(f"unknown ring spec {text!r}")
