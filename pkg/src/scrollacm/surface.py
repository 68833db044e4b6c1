"""Intersection theory and line-bundle cohomology on the scroll S(theta, theta+epsilon).

The underlying surface is the Hirzebruch surface F_epsilon, polarized by
H = O_pi(1) + theta*F.  Its Picard lattice is ZH + ZF with

    H.H = d_X = 2*theta + epsilon,   H.F = 1,   F.F = 0.

Divisor classes are written alpha*H + beta*F throughout.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, NoInitializedTwist


@dataclass(frozen=True)
class Scroll:
    theta: int
    epsilon: int

    def __post_init__(self):
        if self.theta < 1:
            # theta = 0 is a cone over a rational normal curve
            raise DomainError(f"theta must be >= 1 (got {self.theta}); cones are not supported")
        if self.epsilon < 0:
            raise DomainError(f"epsilon must be >= 0 (got {self.epsilon})")

    @classmethod
    def from_ab(cls, a: int, b: int) -> "Scroll":
        """Build S(a, b) with a <= b."""
        if a > b:
            a, b = b, a
        return cls(a, b - a)

    @property
    def dX(self) -> int:
        return 2 * self.theta + self.epsilon

    @property
    def w(self) -> int:
        """Number of Kronecker arrows, ext^1(L, O(-F)) = d_X - 2."""
        return self.dX - 2

    @property
    def name(self) -> str:
        return f"S({self.theta},{self.theta + self.epsilon})"

    def to_json(self) -> dict:
        return {"theta": self.theta, "epsilon": self.epsilon}

    @classmethod
    def from_json(cls, data: dict) -> "Scroll":
        return cls(int(data["theta"]), int(data["epsilon"]))


@dataclass(frozen=True, order=True)
class DivisorClass:
    alpha: int = 0  # coefficient of H
    beta: int = 0  # coefficient of F

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.alpha + other.alpha, self.beta + other.beta)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.alpha - other.alpha, self.beta - other.beta)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.alpha, -self.beta)

    def __mul__(self, n: int) -> "DivisorClass":
        return DivisorClass(n * self.alpha, n * self.beta)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if self.alpha == 0 and self.beta == 0:
            return "0"
        parts = []
        for coef, sym in ((self.alpha, "H"), (self.beta, "F")):
            if coef == 0:
                continue
            mag = "" if abs(coef) == 1 else str(abs(coef))
            sign = "-" if coef < 0 else "+"
            parts.append((sign, f"{mag}{sym}"))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out

    def to_json(self) -> dict:
        return {"H": self.alpha, "F": self.beta}

    @classmethod
    def from_json(cls, data: dict) -> "DivisorClass":
        return cls(int(data["H"]), int(data["F"]))


H = DivisorClass(1, 0)
F = DivisorClass(0, 1)
ZERO = DivisorClass(0, 0)


def intersect(s: Scroll, d1: DivisorClass, d2: DivisorClass) -> int:
    return d1.alpha * d2.alpha * s.dX + d1.alpha * d2.beta + d2.alpha * d1.beta


def canonical_class(s: Scroll) -> DivisorClass:
    return DivisorClass(-2, s.dX - 2)


def L_class(s: Scroll) -> DivisorClass:
    """The class of L = O_X((d_X - 1)F - H)."""
    return DivisorClass(-1, s.dX - 1)


def negative_section(s: Scroll) -> DivisorClass:
    """Class of the negative section Delta = H - (theta+epsilon)F; only for epsilon > 0."""
    if s.epsilon == 0:
        raise DomainError("the negative section is only defined for epsilon > 0")
    return DivisorClass(1, -(s.theta + s.epsilon))


def _h_p1(n: int) -> tuple[int, int]:
    return max(n + 1, 0), max(-n - 1, 0)


def cohomology(s: Scroll, d: DivisorClass) -> tuple[int, int, int]:
    """Return (h^0, h^1, h^2) of O_X(d).

    For alpha >= 0 the line bundle pushes forward to a sum of alpha+1 line
    bundles on P^1; alpha = -1 is acyclic; alpha <= -2 goes through Serre duality.
    """
    a, b = d.alpha, d.beta
    if a >= 0:
        h0 = h1 = 0
        for i in range(a + 1):
            x0, x1 = _h_p1(a * s.theta + i * s.epsilon + b)
            h0 += x0
            h1 += x1
        return h0, h1, 0
    if a == -1:
        return 0, 0, 0
    d0, d1, d2 = cohomology(s, canonical_class(s) - d)
    return d2, d1, d0


def euler_characteristic(s: Scroll, d: DivisorClass) -> int:
    h0, h1, h2 = cohomology(s, d)
    return h0 - h1 + h2


def riemann_roch(s: Scroll, d: DivisorClass) -> int:
    """chi(O_X(d)) = 1 + d.(d - K)/2, independent of the cohomology formula."""
    twice = intersect(s, d, d - canonical_class(s))
    assert twice % 2 == 0
    return 1 + twice // 2


def initialized_twist(s: Scroll, d: DivisorClass) -> int:
    """The unique t0 with h^0(d + t0*H) > 0 and h^0(d + (t0-1)*H) = 0."""
    # h^0 vanishes for alpha < 0 and is monotone in t, so t0 >= -alpha.
    t = -d.alpha
    limit = t + abs(d.beta) + 2
    while t <= limit:
        if cohomology(s, d + t * H)[0] > 0:
            if cohomology(s, d + (t - 1) * H)[0] != 0:
                raise NoInitializedTwist(f"{d} has sections in every twist")
            return t
        t += 1
    raise NoInitializedTwist(f"no twist of {d} acquires sections")


def acm_twist_window(s: Scroll, d: DivisorClass) -> range:
    """Twists t outside this range have h^1(d + tH) = 0.

    Write a = alpha + t.  For a >= 0 the smallest P^1 degree is a*theta + beta,
    so h^1 = 0 once a > |beta|.  For a <= -2 Serre duality gives
    (-2-a)H + (d_X - 2 - beta)F, which vanishes once -2-a > |d_X - 2 - beta|.
    """
    lo = -2 - abs(s.dX - 2 - d.beta) - d.alpha
    hi = abs(d.beta) - d.alpha
    return range(lo, hi + 1)


def is_acm_line_bundle(s: Scroll, d: DivisorClass) -> bool:
    return all(cohomology(s, d + t * H)[1] == 0 for t in acm_twist_window(s, d))


def is_ulrich_line_bundle(s: Scroll, d: DivisorClass) -> bool:
    """Initialized ACM with h^0 = d_X (the maximal value for rank one)."""
    if not is_acm_line_bundle(s, d):
        return False
    t0 = initialized_twist(s, d)
    return cohomology(s, d + t0 * H)[0] == s.dX


def classify_acm_line_bundles(s: Scroll) -> list[tuple[DivisorClass, bool]]:
    """Initialized ACM line bundles: lF for 0 <= l <= d_X - 1, and H - F.

    The Ulrich ones are H - F and (d_X - 1)F.
    """
    out = [(l * F, l == s.dX - 1) for l in range(s.dX)]
    out.append((H - F, True))
    return out
