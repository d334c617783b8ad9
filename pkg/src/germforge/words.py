"""Reduced words in a free group on generators numbered 1..m.

Commutation is decided exactly: two nontrivial elements of a free group
commute iff their primitive roots agree up to inversion.
"""
from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

__all__ = ["FreeWord", "parse_word", "commutator", "commutes"]

_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z_]*)(\d*)(?:\^\(?(-?\d+)\)?)?$")


def _reduce(letters: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    stack: list[list[int]] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if gen < 1:
            raise ValueError(f"generator index must be >= 1, got {gen}")
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return tuple((g, e) for g, e in stack)


class FreeWord:
    """A freely reduced word, stored as ``((gen, exp), ...)``.

    >>> str(FreeWord([(1, 2), (1, -1), (2, 1)]))
    'g1 g2'
    """

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Sequence[int]] = ()):
        object.__setattr__(self, "letters", _reduce((int(g), int(e)) for g, e in letters))

    def __setattr__(self, name, value):
        raise AttributeError("FreeWord is immutable")

    @classmethod
    def gen(cls, i: int, exp: int = 1) -> "FreeWord":
        return cls([(i, exp)])

    @classmethod
    def identity(cls) -> "FreeWord":
        return cls()

    # -- basic structure --------------------------------------------------
    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def is_trivial(self) -> bool:
        return not self.letters

    def __bool__(self):
        return bool(self.letters)

    @property
    def rank(self) -> int:
        """Largest generator index that occurs."""
        return max((g for g, _ in self.letters), default=0)

    def __eq__(self, other):
        return isinstance(other, FreeWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord((g, -e) for g, e in reversed(self.letters))

    def __invert__(self):
        return self.inverse()

    def __pow__(self, n: int) -> "FreeWord":
        if n < 0:
            return self.inverse() ** (-n)
        # conjugate-reduce first so powers stay linear in size
        u, core = self.cyclic_reduce()
        return FreeWord(u.letters + core.letters * n + u.inverse().letters)

    def unit_letters(self) -> list[tuple[int, int]]:
        """Letters expanded to exponents +-1."""
        out = []
        for g, e in self.letters:
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return out

    # -- substitution -----------------------------------------------------
    def substitute(self, images: Mapping[int, "FreeWord"] | Sequence["FreeWord"]) -> "FreeWord":
        """Apply the endomorphism ``g_i -> images[i]`` (1-based mapping or 0-based list)."""
        get = images.__getitem__ if isinstance(images, Mapping) else (lambda i: images[i - 1])
        out: list[tuple[int, int]] = []
        cache: dict[int, FreeWord] = {}
        for g, e in self.letters:
            img = cache.get(g)
            if img is None:
                img = cache[g] = get(g)
            out.extend((img ** e).letters)
        return FreeWord(out)

    # -- roots and commutation -------------------------------------------
    def cyclic_reduce(self) -> tuple["FreeWord", "FreeWord"]:
        """Return ``(u, c)`` with ``self = u c u^-1`` and c cyclically reduced."""
        ls = list(self.letters)
        prefix: list[tuple[int, int]] = []
        while len(ls) >= 2 and ls[0][0] == ls[-1][0]:
            g, e0 = ls[0]
            e1 = ls[-1][1]
            if (e0 > 0) == (e1 > 0):
                break
            # peel x^s off the front and x^-s off the back
            s = min(abs(e0), abs(e1)) * (1 if e0 > 0 else -1)
            prefix.append((g, s))
            ls[0] = (g, e0 - s)
            ls[-1] = (g, e1 + s)
            ls = [x for x in ls if x[1] != 0]
        return FreeWord(prefix), FreeWord(ls)

    def is_cyclically_reduced(self) -> bool:
        return self.cyclic_reduce()[0].is_trivial()

    def primitive_root(self) -> tuple["FreeWord", int]:
        """``(r, k)`` with ``self = r^k``, k >= 1 and r not a proper power."""
        if self.is_trivial():
            raise ValueError("the trivial word has no primitive root")
        u, core = self.cyclic_reduce()
        s = core.unit_letters()
        L = len(s)
        for d in range(1, L + 1):
            if L % d == 0 and s[:d] * (L // d) == s:
                root = FreeWord(u.letters + FreeWord(s[:d]).letters + u.inverse().letters)
                return root, L // d
        raise AssertionError("unreachable")

    def commutes_with(self, other: "FreeWord") -> bool:
        return commutes(self, other)

    # -- text -------------------------------------------------------------
    def to_text(self, names: Sequence[str] | None = None) -> str:
        if not self.letters:
            return "1"
        parts = []
        for g, e in self.letters:
            name = names[g - 1] if names else f"g{g}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return " ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"FreeWord({self.to_text()!r})"


def parse_word(text: str, names: Sequence[str] | None = None, *, canonical: bool = False) -> FreeWord:
    """Parse ``"g1 g3^-2"`` (or named generators when ``names`` is given).

    With ``canonical=True`` unreduced input is rejected instead of reduced.
    """
    text = text.strip()
    letters = []
    if text not in ("", "1", "e", "id"):
        for tok in text.replace("*", " ").split():
            m = _TOKEN.match(tok)
            if not m:
                raise ValueError(f"bad word token {tok!r}")
            stem, digits, exp = m.groups()
            exp = int(exp) if exp is not None else 1
            if names is not None:
                name = stem + digits
                if name not in names:
                    raise ValueError(f"unknown generator {name!r}; expected one of {list(names)}")
                idx = list(names).index(name) + 1
            else:
                if stem != "g" or not digits:
                    raise ValueError(f"bad generator {tok!r}; expected g<index>")
                idx = int(digits)
                if idx < 1:
                    raise ValueError("generator indices are 1-based")
            letters.append((idx, exp))
    w = FreeWord(letters)
    if canonical and (len(w.letters) != len(letters) or any(e == 0 for _, e in letters)):
        raise ValueError(f"word {text!r} is not freely reduced")
    return w


def commutator(x: FreeWord, y: FreeWord) -> FreeWord:
    """``[x, y] = x y x^-1 y^-1``."""
    return x * y * x.inverse() * y.inverse()


def commutes(x: FreeWord, y: FreeWord) -> bool:
    if x.is_trivial() or y.is_trivial():
        return True
    rx, _ = x.primitive_root()
    ry, _ = y.primitive_root()
    return rx == ry or rx == ry.inverse()
