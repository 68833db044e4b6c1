"""Numerics of the w-Kronecker quiver: Fibonacci numbers, the form psi, Schur roots."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .chern import ChernCharacter, ch_line, ch_scale, ch_sum
from .errors import DomainError, ShapeMismatch
from .surface import F, Scroll, L_class


@lru_cache(maxsize=None)
def _phi(w: int, k: int) -> int:
    a, b = 0, 1
    for _ in range(k):
        a, b = b, w * b - a
    return a


def fibonacci(w: int, k: int) -> int:
    """phi_{w,k}: phi_0 = 0, phi_1 = 1, phi_{k+1} = w*phi_k - phi_{k-1}; phi_{-1} := 0."""
    if w < 2:
        raise DomainError(f"w must be >= 2 (got {w})")
    if k < -1:
        raise DomainError(f"phi_(w,k) is undefined for k < -1 (got {k})")
    if k == -1:
        return 0
    return _phi(w, k)


def fibonacci_signed(w: int, k: int) -> int:
    """The bare recurrence for any integer w and k >= 0.

    Used where the Fibonacci sequences are only needed at the level of
    K-theory classes, so w in {0, 1} is allowed and values may be negative.
    """
    if k < 0:
        raise DomainError(f"k must be >= 0 (got {k})")
    return _phi(w, k)


def psi(w: int, a: int, b: int) -> int:
    return w * a * b - a * a - b * b + 1


def rigid_dimension_test(w: int, a: int, b: int) -> Optional[int]:
    """Return k with {a, b} = {phi_k, phi_(k+1)}, or None.

    Descends by replacing the larger entry with w*min - max; a real Schur root
    of the w-Kronecker quiver reaches (0, 1) this way.
    """
    if w < 2:
        raise DomainError(f"w must be >= 2 (got {w})")
    if a < 0 or b < 0 or (a == 0 and b == 0):
        raise DomainError(f"dimension vector must be nonnegative and nonzero, got ({a}, {b})")
    if psi(w, a, b) != 0:
        return None
    lo, hi = sorted((a, b))
    k = 0
    while (lo, hi) != (0, 1):
        nxt = w * lo - hi
        if nxt < 0 or nxt >= lo:
            return None
        lo, hi = nxt, lo
        k += 1
    return k


@dataclass(frozen=True)
class DimensionVector:
    b: int  # source: copies of L
    a: int  # target: copies of O(-F)

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise DomainError(f"dimension vector must be nonnegative, got (b={self.b}, a={self.a})")

    def to_json(self) -> dict:
        return {"b": self.b, "a": self.a}

    @classmethod
    def from_json(cls, data: dict) -> "DimensionVector":
        return cls(int(data["b"]), int(data["a"]))


@dataclass(frozen=True)
class QuiverRep:
    """w linear maps B* -> A given as a-by-b matrices."""

    matrices: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def __init__(self, matrices: Sequence[Sequence[Sequence]]):
        mats = tuple(tuple(tuple(Fraction(x) for x in row) for row in m) for m in matrices)
        shapes = {(len(m), len(m[0]) if m else 0) for m in mats}
        if len(shapes) > 1:
            raise ShapeMismatch(f"arrow matrices have different shapes: {sorted(shapes)}")
        object.__setattr__(self, "matrices", mats)

    @property
    def w(self) -> int:
        return len(self.matrices)

    @property
    def dims(self) -> DimensionVector:
        m = self.matrices[0] if self.matrices else ()
        return DimensionVector(len(m[0]) if m else 0, len(m))


def ulrich_character(s: Scroll, dims: DimensionVector) -> ChernCharacter:
    """Character of an extension 0 -> O(-F)^a -> E -> L^b -> 0."""
    if s.w < 2:
        raise DomainError(f"{s.name} has w = {s.w} < 2")
    return ch_sum(ch_scale(ch_line(s, -F), dims.a), ch_scale(ch_line(s, L_class(s)), dims.b))


def ulrich_exponents(w: int, k: int) -> tuple[int, int]:
    """(a, b) for the exceptional Ulrich bundle U_k."""
    if k >= 1:
        return fibonacci(w, k), fibonacci(w, k - 1)
    return fibonacci(w, -k), fibonacci(w, 1 - k)
