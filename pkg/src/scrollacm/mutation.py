"""Braid-group mutation of the exceptional collection (L[-1], O(-F), O_X) and rigid ACM bundles.

A word k = (k_1, ..., k_s) acts as sigma_1^k_1 sigma_2^k_2 sigma_1^k_3 ...
applied left to right.  The collection is tracked by signed Chern characters:
a shifted object E[-1] carries -ch(E), so the Euler pairings of the signed
characters are exactly the entries of the TriVector

    v = (chi(s2, s3), chi(s1, s3), chi(s1, s2)).

Mutating an exceptional pair (e_0, e_1) with c = chi(e_0, e_1) produces the
sequence e_(j+1) = c e_j - e_(j-1), which in closed form is

    e_j = phi_(c,j) e_1 - phi_(c,j-1) e_0          (j >= 1)
    e_j = phi_(c,1-j) e_0 - phi_(c,-j) e_1         (j <= 0).

With e_0 = |P|[-1] and e_1 = |N| this is the sequence g_j of extensions
0 -> |N|^phi_j -> g_j -> |P|^phi_(j-1) -> 0 (degree 0 for j >= 1, degree 1
for j <= 0).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from . import linalg as la
from .chern import (
    ChernCharacter,
    ch_dual,
    ch_line,
    ch_scale,
    ch_shift,
    ch_sum,
    ch_twist,
    euler_pairing,
)
from .descriptors import BundleDescriptor, describe
from .errors import DomainError, InconsistentState, NotInKfrak, NotIrregular, WrongDegree, ZeroRank
from .kronrep import DimensionVector, fibonacci_signed, ulrich_character, ulrich_exponents
from .surface import F, H, L_class, Scroll, canonical_class


# ---------------------------------------------------------------------------
# words and the Z^3 action


@dataclass(frozen=True)
class BraidWord:
    k: tuple[int, ...]

    def __init__(self, k: Iterable[int] = ()):
        object.__setattr__(self, "k", normalize_word(k))

    def __len__(self) -> int:
        return len(self.k)

    def __iter__(self):
        return iter(self.k)

    def __neg__(self) -> "BraidWord":
        return BraidWord(-x for x in self.k)

    def truncate(self, t: int) -> "BraidWord":
        """k(t) = (k_1, ..., k_(t-1))."""
        return BraidWord(self.k[: t - 1])

    def to_json(self) -> dict:
        return {"k": list(self.k)}

    @classmethod
    def from_json(cls, data: dict) -> "BraidWord":
        return cls(int(x) for x in data["k"])

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.k) + ")"


def normalize_word(k: Iterable[int]) -> tuple[int, ...]:
    """Merge zero entries past the first: sigma_1^a sigma_2^0 sigma_1^b = sigma_1^(a+b)."""
    out = [int(x) for x in k]
    i = 1
    while i < len(out):
        if out[i] != 0:
            i += 1
            continue
        if i + 1 < len(out):
            out[i - 1] += out[i + 1]
            del out[i:i + 2]
        else:
            del out[i]
        i = max(i - 1, 1)
    return tuple(out)


def _as_word(k: Union[BraidWord, Sequence[int]]) -> BraidWord:
    return k if isinstance(k, BraidWord) else BraidWord(k)


@dataclass(frozen=True)
class TriVector:
    v1: int
    v2: int
    v3: int

    def __iter__(self):
        return iter((self.v1, self.v2, self.v3))

    def __getitem__(self, i: int) -> int:
        """1-based component access."""
        return (self.v1, self.v2, self.v3)[i - 1]

    def __str__(self) -> str:
        return f"({self.v1}, {self.v2}, {self.v3})"


def act(gen: int, v: TriVector) -> TriVector:
    """gen is 1, 2 for sigma_1, sigma_2 and -1, -2 for their inverses."""
    v1, v2, v3 = v
    if gen == 1:
        return TriVector(v1 * v3 - v2, v1, v3)
    if gen == -1:
        return TriVector(v2, v2 * v3 - v1, v3)
    if gen == 2:
        return TriVector(v1, v1 * v2 - v3, v2)
    if gen == -2:
        return TriVector(v1, v3, v1 * v3 - v2)
    raise ValueError(f"unknown generator {gen}")


def act_power(gen: int, k: int, v: TriVector) -> TriVector:
    g = gen if k > 0 else -gen
    for _ in range(abs(k)):
        v = act(g, v)
    return v


def act_word(k: Union[BraidWord, Sequence[int]], v: TriVector) -> TriVector:
    for t, kt in enumerate(_as_word(k), 1):
        v = act_power(1 if t % 2 else 2, kt, v)
    return v


def base_vector(s: Scroll) -> TriVector:
    return TriVector(2, s.dX - 4, s.dX - 2)


def kfrak_member(s: Scroll, k: Union[BraidWord, Sequence[int]]) -> tuple[bool, Optional[int]]:
    """Check (-1)^t k_(t-1) (v^k(t))_(2 tbar + 1) <= 0 for t = 2..s, tbar = t mod 2."""
    word = _as_word(k).k
    v = base_vector(s)
    for t in range(2, len(word) + 1):
        # v^k(t) extends v^k(t-1) by the (t-1)-th factor
        v = act_power(1 if (t - 1) % 2 else 2, word[t - 2], v)
        comp = v[2 * (t % 2) + 1]
        if (-1) ** t * word[t - 2] * comp > 0:
            return False, t
    return True, None


# ---------------------------------------------------------------------------
# the collection


def base_collection(s: Scroll) -> tuple[ChernCharacter, ChernCharacter, ChernCharacter]:
    """B_empty = (L[-1], O(-F), O_X) as signed characters."""
    return ch_shift(ch_line(s, L_class(s))), ch_line(s, -1 * F), ch_line(s, F - F)


def pairing_vector(s: Scroll, chars: Sequence[ChernCharacter]) -> TriVector:
    s1, s2, s3 = chars
    return TriVector(euler_pairing(s, s2, s3), euler_pairing(s, s1, s3), euler_pairing(s, s1, s2))


def _abs(ch: ChernCharacter) -> ChernCharacter:
    if ch.rank == 0:
        raise ZeroRank(f"object {ch} has rank zero")
    return ch if ch.rank > 0 else ch_shift(ch)


def _orbit(e0: ChernCharacter, e1: ChernCharacter, c: int, j: int) -> ChernCharacter:
    if j >= 1:
        return ch_sum(ch_scale(e1, fibonacci_signed(c, j)), ch_scale(e0, -fibonacci_signed(c, j - 1)))
    return ch_sum(ch_scale(e0, fibonacci_signed(c, 1 - j)), ch_scale(e1, -fibonacci_signed(c, -j)))


def mutate_pair(s: Scroll, e0: ChernCharacter, e1: ChernCharacter, k: int) -> tuple[ChernCharacter, ChernCharacter]:
    """sigma^k on an exceptional pair, in closed form."""
    c = euler_pairing(s, e0, e1)
    return _orbit(e0, e1, c, k), _orbit(e0, e1, c, k + 1)


@dataclass(frozen=True)
class CollectionState:
    scroll: Scroll
    chars: tuple[ChernCharacter, ChernCharacter, ChernCharacter]  # signed
    word: tuple[int, ...] = ()
    vector: TriVector = field(default=None)  # type: ignore[assignment]

    @classmethod
    def initial(cls, s: Scroll) -> "CollectionState":
        return cls(s, base_collection(s), (), base_vector(s))

    @property
    def objects(self) -> tuple[tuple[ChernCharacter, int], ...]:
        """(|s_i|, shift flag) with flag 0 for a sheaf and -1 for a sheaf placed in degree 1."""
        return tuple((_abs(ch), 0 if ch.rank > 0 else -1) for ch in self.chars)

    @property
    def flags(self) -> tuple[int, ...]:
        return tuple(f for _, f in self.objects)

    def recomputed_vector(self) -> TriVector:
        return pairing_vector(self.scroll, self.chars)

    @property
    def middle(self) -> ChernCharacter:
        return _abs(self.chars[1])

    def lemma_flags(self) -> Optional[tuple[int, int, int]]:
        """Shift pattern predicted by the four sign cases for this word (None for the empty word)."""
        if not self.word:
            return None
        ks = self.word[-1]
        if len(self.word) % 2 == 0:
            return (-1, -1, -1) if ks < 0 else (-1, 0, 0)
        return (-1, -1, 0) if ks < 0 else (0, 0, 0)


def _position_gen(position) -> int:
    if position in (1, "odd", "odd-step"):
        return 1
    if position in (2, "even", "even-step"):
        return 2
    raise ValueError(f"unknown position {position!r}")


def mutate_collection(state: CollectionState, next_k: int, position) -> CollectionState:
    """Apply sigma_1^next_k (odd position) or sigma_2^next_k (even position).

    A step at the same position as the last entry of the word merges into it.
    A step that opens a new entry needs the mutated pair to be irregular
    (chi(|a|, |b|) < 0), and the resulting word must lie in the set K.
    """
    gen = _position_gen(position)
    s = state.scroll
    word = list(state.word)
    if not word and gen == 2:
        word = [0]
    last_gen = 1 if len(word) % 2 else 2
    i = gen - 1  # the pair (s_gen, s_(gen+1)), 0-based start
    if word and last_gen == gen:
        word[-1] += next_k
    else:
        a, b = state.chars[i], state.chars[i + 1]
        try:
            chi_abs = euler_pairing(s, _abs(a), _abs(b))
        except ZeroRank as exc:
            raise NotIrregular(f"pair ({a}, {b}) has a rank-zero member") from exc
        if chi_abs >= 0:
            raise NotIrregular(f"pair ({_abs(a)}, {_abs(b)}) has chi = {chi_abs} >= 0 and is not irregular")
        word.append(next_k)
    new_word = normalize_word(word)
    ok, t = kfrak_member(s, new_word)
    if not ok:
        raise NotIrregular(f"word {new_word} leaves K (condition fails at t={t})")
    e0, e1 = mutate_pair(s, state.chars[i], state.chars[i + 1], next_k)
    chars = list(state.chars)
    chars[i], chars[i + 1] = e0, e1
    v = act_power(gen, next_k, state.vector)
    new = CollectionState(s, tuple(chars), new_word, v)
    if new.recomputed_vector() != v:
        raise InconsistentState(f"tracked {v} != recomputed {new.recomputed_vector()} after {new_word}")
    return new


def collection(s: Scroll, k: Union[BraidWord, Sequence[int]]) -> CollectionState:
    """B_k, built one entry at a time from B_empty."""
    state = CollectionState.initial(s)
    for t, kt in enumerate(_as_word(k), 1):
        if kt == 0 and t == 1:
            continue
        state = mutate_collection(state, kt, 1 if t % 2 else 2)
    return state


# ---------------------------------------------------------------------------
# descriptors


def _require_wild(s: Scroll) -> None:
    if s.dX < 5:
        raise WrongDegree(f"{s.name} has degree {s.dX} < 5; rigid bundles here come from pencils")


def _word_name(word: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in word) + ")"


def ulrich_exceptional(s: Scroll, k: int) -> BundleDescriptor:
    if s.dX < 4:
        raise DomainError(f"{s.name} has degree {s.dX} < 4")
    a, b = ulrich_exponents(s.w, k)
    ch = ulrich_character(s, DimensionVector(b, a))
    return describe(s, "ulrich", f"U_{k}", ch, a=a, b=b, rigid=True, exceptional=True)


def rigid_bundle(s: Scroll, k: Union[BraidWord, Sequence[int]]) -> BundleDescriptor:
    """The middle object F_k of B_k."""
    _require_wild(s)
    word = _as_word(k)
    ok, t = kfrak_member(s, word)
    if not ok:
        raise NotInKfrak(word.k, t)
    state = collection(s, word)
    ch = state.middle
    a = b = None
    if len(word) <= 1:
        k1 = word.k[0] if word.k else 0
        a, b = ulrich_exponents(s.w, k1 + 1)
    return describe(s, "F", f"F_{_word_name(word.k)}", ch, a=a, b=b, rigid=True, exceptional=True, word=word.k)


def h_bundle(s: Scroll, k: Union[BraidWord, Sequence[int]]) -> BundleDescriptor:
    """H_k with H_k(-H) = F_(-k)^* (x) omega_X."""
    word = _as_word(k)
    neg = -word
    ok, t = kfrak_member(s, neg)
    if not ok:
        raise NotInKfrak(neg.k, t)
    f = rigid_bundle(s, neg)
    ch = ch_twist(s, ch_twist(s, ch_dual(f.ch), canonical_class(s)), H)
    return describe(s, "H", f"H_{_word_name(word.k)}", ch, rigid=True, exceptional=True, word=word.k)


def duality_check(s: Scroll, k: int) -> bool:
    """ch(U_k(-H)) == ch(U_(1-k)^* (x) omega_X)."""
    lhs = ch_twist(s, ulrich_exceptional(s, k).ch, -1 * H)
    rhs = ch_twist(s, ch_dual(ulrich_exceptional(s, 1 - k).ch), canonical_class(s))
    return lhs == rhs


def split_rigid_extension(c: int, d: int, eta: Sequence[Sequence]) -> dict[str, int]:
    """Multiplicities of G, A, B in the extension of B^d by A^c classified by eta (c x d)."""
    m = la.to_matrix(eta)
    if len(m) != c or any(len(row) != d for row in m):
        raise DomainError(f"eta must be {c} x {d}")
    r = la.rank(m, d) if c else 0
    return {"G": r, "A": max(c - r, 0), "B": max(d - r, 0)}


@dataclass
class Enumeration:
    descriptors: list[BundleDescriptor]
    skipped: list[tuple[tuple[int, ...], str]]
    visited: int


def enumerate_rigid(
    s: Scroll,
    max_len: int,
    max_abs_k: int,
    max_rank: Optional[int] = None,
) -> Enumeration:
    """Depth-first walk through K-words; one descriptor per (rank, c1), the shortest word wins.

    Words whose construction meets a pair that is not irregular, or whose
    middle object has rank zero, are reported in `skipped` and not extended.
    """
    _require_wild(s)
    best: dict[tuple, BundleDescriptor] = {}
    skipped: list[tuple[tuple[int, ...], str]] = []
    visited = 0

    def emit(state: CollectionState):
        ch = state.middle
        if max_rank is not None and ch.rank > max_rank:
            return
        key = (ch.rank, ch.c1)
        word = state.word
        old = best.get(key)
        if old is not None and (len(old.word), old.word) <= (len(word), word):
            return
        a = b = None
        if len(word) <= 1:
            a, b = ulrich_exponents(s.w, (word[0] if word else 0) + 1)
        best[key] = describe(s, "F", f"F_{_word_name(word)}", ch, a=a, b=b, rigid=True, exceptional=True, word=word)

    def walk(state: CollectionState, depth: int):
        nonlocal visited
        if depth == max_len:
            return
        gen = 1 if depth % 2 == 0 else 2
        for kt in range(-max_abs_k, max_abs_k + 1):
            if kt == 0 and depth > 0:
                continue
            word = state.word + (kt,)
            if not kfrak_member(s, word)[0]:
                continue
            visited += 1
            try:
                if kt == 0:
                    nxt = CollectionState(s, state.chars, (0,), state.vector)
                else:
                    nxt = mutate_collection(state, kt, gen)
                emit(nxt)
            except (NotIrregular, ZeroRank) as exc:
                skipped.append((word, str(exc)))
                continue
            walk(nxt, depth + 1)

    walk(CollectionState.initial(s), 0)
    out = sorted(best.values(), key=lambda d: (d.rank, d.slope, d.c1, d.word))
    return Enumeration(out, skipped, visited)
