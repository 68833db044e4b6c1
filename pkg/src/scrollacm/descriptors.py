"""The output record shared by the pencil and mutation modules."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .chern import ChernCharacter, canonical_slope
from .surface import DivisorClass, Scroll

TAGS = ("ulrich", "F", "H", "line-bundle", "sporadic-V", "sporadic-W", "family")


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_fraction(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, float):
        raise ValueError(f"floating point value {text!r} is not an exact rational")
    return Fraction(str(text).strip())


@dataclass(frozen=True)
class BundleDescriptor:
    tag: str
    name: str
    rank: int
    c1: DivisorClass
    ch2_times2: int
    slope: Fraction
    a: Optional[int] = None  # copies of O(-F) in the Ulrich extension
    b: Optional[int] = None  # copies of L
    rigid: bool = True
    exceptional: bool = True
    word: tuple[int, ...] = ()
    point: Optional[str] = None
    extension: Optional[dict] = field(default=None, compare=False)

    @property
    def ch(self) -> ChernCharacter:
        return ChernCharacter(self.rank, self.c1, self.ch2_times2)

    def to_json(self) -> dict:
        out = {
            "tag": self.tag,
            "name": self.name,
            "rank": self.rank,
            "c1": self.c1.to_json(),
            "ch2_times2": self.ch2_times2,
            "slope": format_fraction(self.slope),
            "a": self.a,
            "b": self.b,
            "rigid": self.rigid,
            "exceptional": self.exceptional,
            "word": list(self.word),
        }
        if self.point is not None:
            out["point"] = self.point
        if self.extension is not None:
            out["extension"] = self.extension
        return out

    @classmethod
    def from_json(cls, data: dict) -> "BundleDescriptor":
        return cls(
            tag=data["tag"],
            name=data["name"],
            rank=int(data["rank"]),
            c1=DivisorClass.from_json(data["c1"]),
            ch2_times2=int(data["ch2_times2"]),
            slope=parse_fraction(data["slope"]),
            a=data.get("a"),
            b=data.get("b"),
            rigid=bool(data["rigid"]),
            exceptional=bool(data["exceptional"]),
            word=tuple(data.get("word", ())),
            point=data.get("point"),
            extension=data.get("extension"),
        )


def describe(
    s: Scroll,
    tag: str,
    name: str,
    ch: ChernCharacter,
    **kw,
) -> BundleDescriptor:
    """Build a descriptor from a character; the slope is always recomputed."""
    if tag not in TAGS:
        raise ValueError(f"unknown descriptor tag {tag!r}")
    return BundleDescriptor(
        tag=tag,
        name=name,
        rank=ch.rank,
        c1=ch.c1,
        ch2_times2=ch.ch2_times2,
        slope=canonical_slope(s, ch),
        **kw,
    )
