"""Surface-group presentations with their projection p and Dehn twist tau.

Words over a presentation are plain :class:`FreeWord` objects in the
presentation's generators; nothing here solves the word problem modulo the
relators.  The projection p lands in a free group with its own generator
names, and everything that needs to decide triviality does so there.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import TrivialCi, VariantMismatch
from .parallel import pmap
from .words import FreeWord, commutator, commutes, parse_word

__all__ = [
    "Presentation",
    "genus2_std",
    "genus2_3bdy",
    "n4",
    "n_odd",
    "free_group",
    "get_presentation",
    "projection_p",
    "dehn_twist",
    "baumslag_check",
    "baumslag_word",
    "TwistScan",
    "twist_injectivity_scan",
    "AmalgamNormalForm",
    "amalgam_normal_form",
    "AlternatingForm",
    "genus2_alternating_form",
]


def _w(text: str, names: Sequence[str]) -> FreeWord:
    return parse_word(text, names)


@dataclass
class Presentation:
    """Generators, relators, the projection p and the twist tau of one variant."""

    variant: str
    names: tuple[str, ...]
    relators: tuple[FreeWord, ...]
    target_names: tuple[str, ...]
    p_images: tuple[FreeWord, ...]
    tau_images: tuple[FreeWord, ...]
    k: int | None = None
    _tau_powers: list = field(default_factory=list, repr=False)

    def parse(self, text: str) -> FreeWord:
        return parse_word(text, self.names)

    def word(self, text: str) -> FreeWord:
        return self.parse(text)

    def format(self, w: FreeWord) -> str:
        return w.to_text(self.names)

    def format_target(self, w: FreeWord) -> str:
        return w.to_text(self.target_names)

    def gen(self, name: str) -> FreeWord:
        return FreeWord.gen(self.names.index(name) + 1)

    def check(self, w: FreeWord) -> None:
        if w.rank > len(self.names):
            raise VariantMismatch(f"word uses generator {w.rank} but {self.variant} has {len(self.names)}")

    def tau_power_images(self, N: int) -> tuple[FreeWord, ...]:
        """Images of the generators under tau^N, built by iterated substitution."""
        if N < 0:
            raise ValueError("twist exponent must be >= 0")
        if not self._tau_powers:
            self._tau_powers.append(tuple(FreeWord.gen(i + 1) for i in range(len(self.names))))
        while len(self._tau_powers) <= N:
            prev = self._tau_powers[-1]
            self._tau_powers.append(tuple(x.substitute(self.tau_images) for x in prev))
        return self._tau_powers[N]

    def __hash__(self):
        return hash((self.variant, self.names))

    def __eq__(self, other):
        return isinstance(other, Presentation) and (self.variant, self.names) == (other.variant, other.names)


def genus2_3bdy() -> Presentation:
    names = ("a0", "a1", "a2", "t1", "t2")
    tgt = ("a1", "a2")
    return Presentation(
        variant="genus2-3bdy",
        names=names,
        relators=(_w("a0 a1 a2", names), _w("a0 t1^-1 a1 t1 t2^-1 a2 t2", names)),
        target_names=tgt,
        p_images=(_w("a2^-1 a1^-1", tgt), _w("a1", tgt), _w("a2", tgt), FreeWord(), FreeWord()),
        tau_images=(
            _w("a0", names),
            _w("a1", names),
            _w("a2", names),
            _w("a1 t1 a0^-1", names),
            _w("a2 t2 a0^-1", names),
        ),
    )


def genus2_std() -> Presentation:
    names = ("a", "b", "abar", "bbar")
    tgt = ("a", "b")
    c = commutator(_w("a", names), _w("b", names))
    return Presentation(
        variant="genus2-std",
        names=names,
        relators=(commutator(_w("a", names), _w("b", names)) * commutator(_w("abar", names), _w("bbar", names)).inverse(),),
        target_names=tgt,
        p_images=(_w("a", tgt), _w("b", tgt), _w("a", tgt), _w("b", tgt)),
        tau_images=(
            _w("a", names),
            _w("b", names),
            c * _w("abar", names) * c.inverse(),
            c * _w("bbar", names) * c.inverse(),
        ),
    )


def n4() -> Presentation:
    names = ("a1", "a2", "b1", "b2")
    tgt = ("a1", "a2")
    gamma = _w("a1^2 a2^2", names).inverse()
    return Presentation(
        variant="n4",
        names=names,
        relators=(_w("a1^2 a2^2 b2^2 b1^2", names),),
        target_names=tgt,
        p_images=(_w("a1", tgt), _w("a2", tgt), _w("a1^-1", tgt), _w("a2^-1", tgt)),
        tau_images=(
            _w("a1", names),
            _w("a2", names),
            gamma * _w("b1", names) * gamma.inverse(),
            gamma * _w("b2", names) * gamma.inverse(),
        ),
    )


def n_odd(k: int) -> Presentation:
    """The non-orientable surface group N_{2k+1}, k >= 2."""
    if k < 2:
        raise ValueError("n-odd needs k >= 2")
    a = [f"a{i}" for i in range(1, k + 1)]
    b = [f"b{i}" for i in range(1, k + 1)]
    names = tuple(a + ["c"] + b)
    tgt = tuple(a)
    A = [_w(x, names) for x in a]
    B = [_w(x, names) for x in b]
    c = _w("c", names)
    gamma = FreeWord([(i, 2) for i in range(1, k + 1)]).inverse()
    delta = FreeWord([(k + 1 + i, 2) for i in range(k, 0, -1)])
    gd = gamma * delta
    rel = gamma.inverse() * c**2 * delta
    T = [FreeWord.gen(i, 1) for i in range(1, k + 1)]
    p_imgs = list(T) + [FreeWord.gen(k, -2)] + [FreeWord.gen(i, -1) for i in range(1, k)] + [FreeWord.gen(k)]
    tau = list(A) + [gamma * c * gamma.inverse()] + [gd * x * gd.inverse() for x in B]
    return Presentation(
        variant=f"n-odd:{k}",
        names=names,
        relators=(rel,),
        target_names=tgt,
        p_images=tuple(p_imgs),
        tau_images=tuple(tau),
        k=k,
    )


def free_group(m: int = 2) -> Presentation:
    """The free group of rank m; p and tau are the identity."""
    if m < 1:
        raise ValueError("rank must be >= 1")
    names = ("a", "b") if m == 2 else tuple(f"g{i}" for i in range(1, m + 1))
    gens = tuple(FreeWord.gen(i) for i in range(1, m + 1))
    return Presentation(f"free:{m}", names, (), names, gens, gens)


def get_presentation(spec: str) -> Presentation:
    spec = spec.strip().lower()
    if spec.startswith("free"):
        _, _, m = spec.partition(":")
        return free_group(int(m or 2))
    if spec == "genus2-std":
        return genus2_std()
    if spec == "genus2-3bdy":
        return genus2_3bdy()
    if spec == "n4":
        return n4()
    if spec.startswith("n-odd"):
        _, _, k = spec.partition(":")
        return n_odd(int(k or 2))
    raise ValueError(f"unknown group {spec!r}; expected genus2-std, genus2-3bdy, n4 or n-odd:k")


# ---------------------------------------------------------------------------
# morphisms


def projection_p(pres: Presentation, w: FreeWord) -> FreeWord:
    pres.check(w)
    return w.substitute(pres.p_images)


def dehn_twist(pres: Presentation, w: FreeWord, N: int = 1) -> FreeWord:
    pres.check(w)
    if N < 0:
        raise ValueError("twist exponent must be >= 0")
    if N == 0:
        return w
    return w.substitute(pres.tau_power_images(N))


# ---------------------------------------------------------------------------
# Baumslag's lemma


def baumslag_check(gs: Sequence[FreeWord], cs: Sequence[FreeWord]) -> bool:
    """True iff ``g_i^-1 c_i g_i`` fails to commute with ``c_{i+1}`` for ``1 <= i <= n-1``.

    ``gs = (g_0, ..., g_n)`` and ``cs = (c_1, ..., c_n)``.
    """
    n = len(cs)
    if len(gs) != n + 1:
        raise ValueError("need n+1 elements g_0..g_n for n elements c_1..c_n")
    for i, c in enumerate(cs, start=1):
        if c.is_trivial():
            raise TrivialCi(f"c_{i} is trivial")
    for i in range(1, n):
        g, c, c_next = gs[i], cs[i - 1], cs[i]
        if commutes(g.inverse() * c * g, c_next):
            return False
    return True


def baumslag_word(gs: Sequence[FreeWord], cs: Sequence[FreeWord], N: int) -> FreeWord:
    """``g_0 c_1^N g_1 c_2^N ... c_n^N g_n``."""
    out = gs[0]
    for c, g in zip(cs, gs[1:]):
        out = out * c**N * g
    return out


# ---------------------------------------------------------------------------
# twist scans


@dataclass(frozen=True)
class TwistScan:
    """Empirical witness: images of ``p o tau^N(w)`` for ``N = 0..N_max``.

    ``stable_from`` is the least n with nontrivial images for every N in
    ``[n, N_max]`` (None if the last image is trivial).  This does not prove
    anything about N beyond ``N_max``.
    """

    word: FreeWord
    N_max: int
    nontrivial: tuple[int, ...]
    images: tuple[FreeWord, ...]

    @property
    def first_N_nontrivial(self) -> int | None:
        return self.nontrivial[0] if self.nontrivial else None

    @property
    def stable_from(self) -> int | None:
        if not self.images or self.images[-1].is_trivial():
            return None
        n = self.N_max
        while n > 0 and not self.images[n - 1].is_trivial():
            n -= 1
        return n

    def to_json(self, pres: Presentation) -> dict:
        return {
            "word": pres.format(self.word),
            "N_max": str(self.N_max),
            "first_N_nontrivial": None if self.first_N_nontrivial is None else str(self.first_N_nontrivial),
            "stable_from": None if self.stable_from is None else str(self.stable_from),
            "nontrivial_N": [str(n) for n in self.nontrivial],
            "free_images": [pres.format_target(x) for x in self.images],
            "empirical": True,
        }


def twist_injectivity_scan(pres: Presentation, w: FreeWord, N_max: int) -> TwistScan:
    pres.check(w)
    if N_max < 1:
        raise ValueError("N_max must be >= 1")
    pres.tau_power_images(N_max)
    images = tuple(pmap(lambda N: projection_p(pres, dehn_twist(pres, w, N)), range(N_max + 1)))
    nontrivial = tuple(N for N, x in enumerate(images) if not x.is_trivial())
    return TwistScan(w, N_max, nontrivial, images)


# ---------------------------------------------------------------------------
# edge-subgroup helpers


def _edge_exponent(s: FreeWord, e: FreeWord) -> int | None:
    """m with ``s = e^m`` when e is not a proper power, else None."""
    if s.is_trivial():
        return 0
    root, k = s.primitive_root()
    if root == e:
        return k
    if root == e.inverse():
        return -k
    return None


# ---------------------------------------------------------------------------
# N_{2k+1} as a double amalgam A1 *_<gamma> A2 *_<delta> A3


@dataclass(frozen=True)
class AmalgamNormalForm:
    """Alternating syllables ``(label, element)`` with labels in {1, 2, 3}.

    Elements of A1 are words in a_1..a_k, of A3 words in b_1..b_k, and of A2
    words in the free basis (gamma, c).  The first and last labels are 1 and
    adjacent labels differ by one.
    """

    k: int
    syllables: tuple[tuple[int, FreeWord], ...]

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(r for r, _ in self.syllables)

    def edge(self, i: int, j: int) -> FreeWord:
        """The edge element ``e_{i,j}`` inside ``A_i``."""
        return _amalgam_edges(self.k)[(i, j)]

    def is_minimal(self) -> bool:
        syl = self.syllables
        for t in range(1, len(syl) - 1):
            if syl[t - 1][0] == syl[t + 1][0]:
                if _edge_exponent(syl[t][1], self.edge(syl[t][0], syl[t + 1][0])) is not None:
                    return False
        return True

    def _to_gens(self, pres: Presentation, label: int, s: FreeWord) -> FreeWord:
        k = self.k
        if label == 1:
            return s
        if label == 3:
            return FreeWord((g + k + 1, e) for g, e in s.letters)
        gamma = FreeWord([(i, 2) for i in range(1, k + 1)]).inverse()
        return s.substitute([gamma, FreeWord.gen(k + 1)])

    def to_word(self, pres: Presentation) -> FreeWord:
        out = FreeWord()
        for label, s in self.syllables:
            out = out * self._to_gens(pres, label, s)
        return out

    def _project(self, pres: Presentation, label: int, s: FreeWord) -> FreeWord:
        return projection_p(pres, self._to_gens(pres, label, s))

    def baumslag_data(self, pres: Presentation) -> tuple[list[FreeWord], list[FreeWord]]:
        """``(g_0..g_n, c_1..c_n)`` with ``p o tau^N(g) = g_0 c_1^N g_1 ... c_n^N g_n``.

        The edge crossed between syllables k-1 and k is twisted by ``d_k^(eps_k N)``,
        d_k being gamma on 1-2 edges and delta on 2-3 edges, ``eps_k = r_k - r_{k-1}``.
        """
        k = self.k
        gamma = FreeWord([(i, 2) for i in range(1, k + 1)]).inverse()
        delta = FreeWord([(k + 1 + i, 2) for i in range(k, 0, -1)])
        gs = [self._project(pres, r, s) for r, s in self.syllables]
        cs = []
        for (r0, _), (r1, _) in zip(self.syllables, self.syllables[1:]):
            d = gamma if {r0, r1} == {1, 2} else delta
            cs.append(projection_p(pres, d) ** (r1 - r0))
        return gs, cs

    def twisted_projection(self, pres: Presentation, N: int) -> FreeWord:
        gs, cs = self.baumslag_data(pres)
        return baumslag_word(gs, cs, N)

    def to_json(self) -> dict:
        return {
            "labels": [str(r) for r in self.labels],
            "syllables": [
                s.to_text(
                    [f"a{i}" for i in range(1, self.k + 1)]
                    if r == 1
                    else ["gamma", "c"]
                    if r == 2
                    else [f"b{i}" for i in range(1, self.k + 1)]
                )
                for r, s in self.syllables
            ],
            "minimal": self.is_minimal(),
        }


def _amalgam_edges(k: int) -> dict[tuple[int, int], FreeWord]:
    return {
        (1, 2): FreeWord([(i, 2) for i in range(1, k + 1)]).inverse(),  # in A1
        (2, 1): FreeWord.gen(1),  # gamma
        (2, 3): FreeWord([(2, -2), (1, 1)]),  # delta = c^-2 gamma
        (3, 2): FreeWord([(i, 2) for i in range(k, 0, -1)]),  # b_k^2 ... b_1^2
    }


def amalgam_normal_form(pres: Presentation, w: FreeWord) -> AmalgamNormalForm:
    """Reduced alternating form of w in the double amalgam, by greedy pinching.

    Reduced words in a tree of groups have minimal length, so no search
    beyond the pinch moves is needed.
    """
    if pres.k is None or not pres.variant.startswith("n-odd"):
        raise VariantMismatch("amalgam normal forms exist for n-odd presentations only")
    pres.check(w)
    k = pres.k
    edges = _amalgam_edges(k)

    def label_of(g: int) -> tuple[int, tuple[int, int]]:
        if g <= k:
            return 1, (g, 0)
        if g == k + 1:
            return 2, (2, 0)
        return 3, (g - k - 1, 0)

    # maximal runs per factor
    runs: list[list] = []
    for g, e in w.letters:
        label, (idx, _) = label_of(g)
        if runs and runs[-1][0] == label:
            runs[-1][1].append((idx, e))
        else:
            runs.append([label, [(idx, e)]])
    syl: list[tuple[int, FreeWord]] = [(r, FreeWord(ls)) for r, ls in runs]

    # pad so the labels walk 1 -> ... -> 1 in unit steps
    padded: list[tuple[int, FreeWord]] = []
    cur = 1
    padded.append((1, FreeWord()))
    for r, s in syl:
        while cur != r:
            cur += 1 if r > cur else -1
            padded.append((cur, FreeWord()))
        if padded[-1][0] == r:
            padded[-1] = (r, padded[-1][1] * s)
        else:
            padded.append((r, s))
    while cur != 1:
        cur -= 1
        padded.append((cur, FreeWord()))

    # pinch: s_t in <e_{r_t, r_{t+1}}> with r_{t-1} = r_{t+1}
    changed = True
    while changed:
        changed = False
        for t in range(1, len(padded) - 1):
            (r0, s0), (r, s), (r1, s1) = padded[t - 1], padded[t], padded[t + 1]
            if r0 != r1:
                continue
            m = _edge_exponent(s, edges[(r, r1)])
            if m is None:
                continue
            merged = s0 * edges[(r1, r)] ** m * s1
            padded[t - 1 : t + 2] = [(r0, merged)]
            changed = True
            break
    return AmalgamNormalForm(k, tuple(padded))


# ---------------------------------------------------------------------------
# genus two: alternating form g_0 t_{i1} g_1 t_{i2}^-1 g_2 ...


@dataclass(frozen=True)
class AlternatingForm:
    """``g_0 t_{i_1} g_1 t_{i_2}^-1 g_2 ... t_{i_n}^-1 g_n`` with ``t_0 = 1``.

    Even-indexed ``g`` live in ``A = <a1, a2>`` (``a0 = (a1 a2)^-1``), odd ones in
    ``Abar = <abar1, abar2>`` (``abar_i = t_i^-1 a_i t_i``); both are stored as
    words in a rank-two basis.
    """

    pieces: tuple[FreeWord, ...]
    indices: tuple[int, ...]

    def is_minimal(self) -> bool:
        for j in range(1, len(self.pieces) - 1):
            if self.indices[j - 1] == self.indices[j]:
                if _edge_exponent(self.pieces[j], _g2_edge(self.indices[j])) is not None:
                    return False
        return True

    def baumslag_data(self) -> tuple[list[FreeWord], list[FreeWord]]:
        """``p o tau^N(g) = g_0 a_{i1}^N g_1' a_{i2}^-N g_2 ...`` with ``p(abar_i) = a_i``."""
        cs = [_g2_edge(i) ** (1 if j % 2 == 0 else -1) for j, i in enumerate(self.indices)]
        return list(self.pieces), cs

    def twisted_projection(self, N: int) -> FreeWord:
        gs, cs = self.baumslag_data()
        return baumslag_word(gs, cs, N)


def _g2_edge(i: int) -> FreeWord:
    return FreeWord([(2, -1), (1, -1)]) if i == 0 else FreeWord.gen(i)


def genus2_alternating_form(pres: Presentation, w: FreeWord, max_length: int = 4096) -> AlternatingForm:
    """Reduce w to the alternating form by pinching ``t_i abar_i^m t_i^-1`` and ``t_i^-1 a_i^m t_i``.

    Words longer than ``max_length`` are rejected rather than processed.
    """
    if pres.variant != "genus2-3bdy":
        raise VariantMismatch("alternating forms are defined for genus2-3bdy")
    pres.check(w)
    if len(w) > max_length:
        raise ValueError(f"word length {len(w)} exceeds the bound {max_length}")
    a_img = {1: _g2_edge(0), 2: FreeWord.gen(1), 3: FreeWord.gen(2)}
    pieces: list[FreeWord] = [FreeWord()]
    idx: list[int] = []
    for g, e in w.unit_letters():
        in_bar = len(pieces) % 2 == 0
        if g <= 3:
            if in_bar:
                idx.append(0)
                pieces.append(FreeWord())
            pieces[-1] = pieces[-1] * a_img[g] ** e
            continue
        i = g - 3
        if e > 0:
            if in_bar:
                idx.append(0)
                pieces.append(FreeWord())
            idx.append(i)
            pieces.append(FreeWord())
        else:
            if not in_bar:
                idx.append(0)
                pieces.append(FreeWord())
            idx.append(i)
            pieces.append(FreeWord())
    if len(pieces) % 2 == 0:
        idx.append(0)
        pieces.append(FreeWord())
    changed = True
    while changed:
        changed = False
        for j in range(1, len(pieces) - 1):
            if idx[j - 1] != idx[j]:
                continue
            m = _edge_exponent(pieces[j], _g2_edge(idx[j]))
            if m is None:
                continue
            merged = pieces[j - 1] * _g2_edge(idx[j]) ** m * pieces[j + 1]
            pieces[j - 1 : j + 2] = [merged]
            del idx[j - 1 : j + 1]
            changed = True
            break
    return AlternatingForm(tuple(pieces), tuple(idx))
