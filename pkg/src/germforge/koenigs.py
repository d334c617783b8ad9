"""Koenigs linearization, multiplicative flows and the conjugacy solvers built on them.

Convention throughout: ``h o f = m_lam o h`` with ``A1(h) = 1``, and
``flow(f, s) = h^-1 o m_s o h``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import NotTangentToIdentity, RootOfUnityObstruction
from .rings import QQ, RationalFunctionField, Ring
from .series import Germ, commutator, compose, invert, series_mul

__all__ = [
    "LinearizationResult",
    "linearize",
    "is_hyperbolic",
    "is_contraction",
    "root_of_unity_check",
    "flow",
    "Flow",
    "symbolic_flow",
    "solve_twisted_conjugacy",
    "express_as_commutator",
]


def root_of_unity_check(ring: Ring, lam, N: int) -> None:
    """Raise unless ``lam^j != 1`` for ``1 <= j <= N``."""
    p = ring.one
    for j in range(1, N + 1):
        p = p * lam
        if ring.is_zero(p - 1):
            raise RootOfUnityObstruction(f"lambda^{j} = 1 (lambda = {lam})")


def is_hyperbolic(f: Germ) -> bool | None:
    """``|A1(f)| != 1``, or None when the ring has no absolute value."""
    if not f.ring.has_abs:
        return None
    return f.ring.abs_value(f.a1) != 1


def is_contraction(f: Germ) -> bool | None:
    """``|A1(f)| < 1``, or None when the ring has no absolute value."""
    if not f.ring.has_abs:
        return None
    return f.ring.abs_value(f.a1) < 1


@dataclass(frozen=True)
class LinearizationResult:
    h: Germ
    lam: object
    mode: str  # "hyperbolic" or "formal"

    def verify(self, f: Germ) -> bool:
        lhs = compose(self.h, f)
        rhs = compose(Germ.homothety(f.ring, self.lam, f.order), self.h)
        return lhs == rhs


def linearize(f: Germ) -> LinearizationResult:
    """The unique h with ``A1(h) = 1`` and ``h o f = m_lam o h`` to order N.

    Comparing ``z^n`` coefficients gives
    ``h_n (lam - lam^n) = sum_{k<n} h_k [z^n] f^k``.
    """
    ring = f.ring
    lam = f.a1
    N = f.order
    root_of_unity_check(ring, lam, N)
    fl = f._list()
    # powers[k] = f^k as an index list
    powers = [None, fl]
    for k in range(2, N):
        powers.append(series_mul(ring, powers[-1], fl, N, k - 1, 1))
    h = [ring.zero, ring.one]
    lam_n = lam
    for n in range(2, N + 1):
        lam_n = lam_n * lam
        s = ring.zero
        for k in range(1, n):
            hk = h[k]
            if ring.is_zero(hk):
                continue
            s = s + hk * powers[k][n]
        h.append(s / (lam - lam_n))
    mode = "hyperbolic" if is_hyperbolic(f) else "formal"
    return LinearizationResult(Germ._from_list(ring, h), lam, mode)


def flow(f: Germ, s, lin: LinearizationResult | None = None) -> Germ:
    """``h^-1 o m_s o h``; equals f at ``s = A1(f)`` and commutes with f."""
    lin = lin or linearize(f)
    h = lin.h
    return compose(invert(h), h.scale(f.ring(s)))


class Flow:
    """The one-parameter family ``s -> flow(f, s)`` with the normalizer cached."""

    def __init__(self, f: Germ):
        self.f = f
        self.lin = linearize(f)
        self._hinv = invert(self.lin.h)

    def __call__(self, s) -> Germ:
        return compose(self._hinv, self.lin.h.scale(self.f.ring(s)))


def symbolic_flow(f: Germ, var: str = "s") -> Germ:
    """``flow(f, s)`` over ``K(s)``, with K the rationals or f's function field.

    Each coefficient is a Laurent polynomial in s.
    """
    ring = f.ring
    if ring is QQ or ring == QQ:
        names = (var,)
    elif isinstance(ring, RationalFunctionField):
        if var in ring.names:
            raise ValueError(f"{var!r} already names an indeterminate")
        names = ring.names + (var,)
    else:
        raise ValueError("symbolic flows need rational or rational-function coefficients")
    K = RationalFunctionField(names)
    lin = linearize(f)
    h = Germ(K, [K(c) for c in lin.h.coeffs])
    s = K.gen(var)
    return compose(invert(h), h.scale(s))


def solve_twisted_conjugacy(g: Germ, fbar: Germ, gbar: Germ) -> Germ:
    """The tangent-to-identity f with ``[f, g] = [fbar, gbar]``.

    With h1 linearizing g and h2 linearizing ``[fbar, gbar] o g`` (same
    multiplier), ``f = h2^-1 o h1`` conjugates g to ``[fbar, gbar] o g``.
    """
    c = commutator(fbar, gbar)
    h1 = linearize(g).h
    h2 = linearize(compose(c, g)).h
    return compose(invert(h2), h1)


def express_as_commutator(f: Germ, lam) -> tuple[Germ, Germ]:
    """``(h, m_lam)`` with ``f = [h, m_lam]`` to order N.

    If H linearizes ``f o m_lam`` then ``f o m_lam = H^-1 o m_lam o H``,
    so ``h = H^-1`` works.
    """
    ring = f.ring
    if not ring.is_zero(f.a1 - 1):
        raise NotTangentToIdentity(f"A1(f) = {f.a1}, a commutator needs A1 = 1")
    m = Germ.homothety(ring, lam, f.order)
    H = linearize(compose(f, m)).h
    return invert(H), m
