"""Chern characters, the Euler pairing, canonical slopes and monad profiles."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import NonIntegralPairing, NotACM, ZeroRank
from .surface import (
    DivisorClass,
    F,
    H,
    Scroll,
    ZERO,
    canonical_class,
    cohomology,
    intersect,
    is_acm_line_bundle,
)


@dataclass(frozen=True)
class ChernCharacter:
    """(rank, c1, ch2) of an object; shifted objects carry the negated character.

    ch2 is stored doubled so that it stays an integer.
    """

    rank: int
    c1: DivisorClass = ZERO
    ch2_times2: int = 0

    @property
    def ch2(self) -> Fraction:
        return Fraction(self.ch2_times2, 2)

    def __add__(self, other: "ChernCharacter") -> "ChernCharacter":
        return ch_sum(self, other)

    def __neg__(self) -> "ChernCharacter":
        return ch_shift(self)

    def __sub__(self, other: "ChernCharacter") -> "ChernCharacter":
        return ch_sum(self, ch_shift(other))

    def __rmul__(self, n: int) -> "ChernCharacter":
        return ch_scale(self, n)

    def to_json(self) -> dict:
        return {"rank": self.rank, "c1": self.c1.to_json(), "ch2_times2": self.ch2_times2}

    @classmethod
    def from_json(cls, data: dict) -> "ChernCharacter":
        return cls(int(data["rank"]), DivisorClass.from_json(data["c1"]), int(data["ch2_times2"]))

    def __str__(self) -> str:
        return f"(rk {self.rank}, c1 {self.c1}, ch2 {self.ch2})"


def ch_line(s: Scroll, d: DivisorClass) -> ChernCharacter:
    return ChernCharacter(1, d, intersect(s, d, d))


def ch_sum(*chs: ChernCharacter) -> ChernCharacter:
    r = sum(c.rank for c in chs)
    c1 = ZERO
    for c in chs:
        c1 = c1 + c.c1
    return ChernCharacter(r, c1, sum(c.ch2_times2 for c in chs))


def ch_scale(ch: ChernCharacter, n: int) -> ChernCharacter:
    return ChernCharacter(n * ch.rank, n * ch.c1, n * ch.ch2_times2)


def ch_shift(ch: ChernCharacter) -> ChernCharacter:
    return ch_scale(ch, -1)


def ch_dual(ch: ChernCharacter) -> ChernCharacter:
    return ChernCharacter(ch.rank, -ch.c1, ch.ch2_times2)


def ch_twist(s: Scroll, ch: ChernCharacter, d: DivisorClass) -> ChernCharacter:
    """Character of E(d): multiply by exp(d)."""
    r = ch.rank
    return ChernCharacter(
        r,
        ch.c1 + r * d,
        ch.ch2_times2 + 2 * intersect(s, ch.c1, d) + r * intersect(s, d, d),
    )


def euler_pairing(s: Scroll, e: ChernCharacter, f: ChernCharacter) -> int:
    """chi(E, F) = sum (-1)^i ext^i(E, F) by Riemann-Roch, with chi(O_X) = 1."""
    K = canonical_class(s)
    mixed = f.c1 * e.rank - e.c1 * f.rank
    twice = (
        2 * e.rank * f.rank
        + e.rank * f.ch2_times2
        + f.rank * e.ch2_times2
        - 2 * intersect(s, e.c1, f.c1)
        - intersect(s, mixed, K)
    )
    if twice % 2:
        raise NonIntegralPairing(f"chi({e}, {f}) = {twice}/2 is not an integer")
    return twice // 2


def canonical_slope(s: Scroll, ch: ChernCharacter) -> Fraction:
    if ch.rank == 0:
        raise ZeroRank("canonical slope of a rank-zero character")
    return Fraction(intersect(s, ch.c1, canonical_class(s)), ch.rank)


def monad_profile(s: Scroll, summands: Iterable[DivisorClass]) -> tuple[int, int, int, int]:
    """(a, b, c, d) = (h^1(E(-F)), h^1(E(F-H)), h^0(E), h^2(E(-H))) for E a sum of line bundles."""
    a = b = c = d = 0
    for dc in summands:
        if not is_acm_line_bundle(s, dc):
            raise NotACM(f"O_X({dc}) is not ACM on {s.name}")
        a += cohomology(s, dc - F)[1]
        b += cohomology(s, dc + F - H)[1]
        c += cohomology(s, dc)[0]
        d += cohomology(s, dc - H)[2]
    return a, b, c, d
