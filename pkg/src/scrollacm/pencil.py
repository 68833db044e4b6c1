"""Kronecker-Weierstrass normal form of matrix pencils over Q, and the quartic catalogs.

A pencil x*M1 + y*M2 of size a x b is the quiver representation of an
extension 0 -> O(-F)^a -> E -> L^b -> 0 on a quartic scroll (w = 2).

Canonical blocks (x*M1 + y*M2):

    C(u)   (u+1) x u      M1 = [I; 0], M2 = [0; I]
    B(v)   v x (v+1)      M1 = [I | 0], M2 = [0 | I]
    J(u,n) n x n          x*I + y*(u*I + N), N the upper shift; root (x:y) = (-u:1)
    J(oo,n) n x n         y*I + x*N; root (1:0)
    Companion(p,n)        x*I + y*C(p^n), C the companion matrix (ones below the
                          diagonal, last column -coefficients)
    Zero(1,0), Zero(0,1)  a single zero row, a single zero column

The reduction peels off B blocks in increasing order of minimal index using a
polynomial kernel vector of least degree, then C blocks on the transpose, then
splits the regular part into a finite and an infinite part and brings both to
primary rational canonical form.  Every step is an exact change of basis, and
the accumulated P, Q are returned as a witness.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import linalg as la
from .chern import ch_line, ch_sum
from .descriptors import BundleDescriptor, describe, format_fraction, parse_fraction
from .errors import InconsistentState, ShapeMismatch, WrongDegree
from .kronrep import DimensionVector, ulrich_character
from .surface import F, H, L_class, Scroll, classify_acm_line_bundles, cohomology

Matrix = la.Matrix


# ---------------------------------------------------------------------------
# pencils and blocks


@dataclass(frozen=True)
class MatrixPencil:
    rows: int
    cols: int
    M1: tuple[tuple[Fraction, ...], ...]
    M2: tuple[tuple[Fraction, ...], ...]

    def __init__(self, M1: Sequence[Sequence], M2: Sequence[Sequence], rows: Optional[int] = None, cols: Optional[int] = None):
        m1 = tuple(tuple(parse_fraction(x) for x in row) for row in M1)
        m2 = tuple(tuple(parse_fraction(x) for x in row) for row in M2)
        r = len(m1) if rows is None else rows
        c = (len(m1[0]) if m1 else 0) if cols is None else cols
        for name, m in (("M1", m1), ("M2", m2)):
            if len(m) != r or any(len(row) != c for row in m):
                raise ShapeMismatch(f"{name} is not {r} x {c}")
        object.__setattr__(self, "rows", r)
        object.__setattr__(self, "cols", c)
        object.__setattr__(self, "M1", m1)
        object.__setattr__(self, "M2", m2)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "MatrixPencil":
        z = la.zeros(rows, cols)
        return cls(z, z, rows, cols)

    def mats(self) -> tuple[Matrix, Matrix]:
        return [list(r) for r in self.M1], [list(r) for r in self.M2]

    def transform(self, P: Matrix, Q: Matrix) -> "MatrixPencil":
        m1, m2 = self.mats()
        return MatrixPencil(_mm(_mm(P, m1, self.rows, self.cols), Q, self.cols, self.cols),
                            _mm(_mm(P, m2, self.rows, self.cols), Q, self.cols, self.cols),
                            len(P), self.cols)

    def to_json(self) -> dict:
        enc = lambda m: [[format_fraction(x) for x in row] for row in m]
        return {"rows": self.rows, "cols": self.cols, "M1": enc(self.M1), "M2": enc(self.M2)}

    @classmethod
    def from_json(cls, data: dict) -> "MatrixPencil":
        return cls(data["M1"], data["M2"], int(data["rows"]), int(data["cols"]))

    def __str__(self) -> str:
        def entry(p, q):
            terms = []
            for coef, var in ((p, "x"), (q, "y")):
                if coef == 0:
                    continue
                mag = "" if abs(coef) == 1 else format_fraction(abs(coef))
                terms.append(("-" if coef < 0 else "+", mag + var))
            if not terms:
                return "0"
            out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
            for sign, t in terms[1:]:
                out += f" {sign} {t}"
            return out

        lines = ["[" + ", ".join(entry(p, q) for p, q in zip(r1, r2)) + "]" for r1, r2 in zip(self.M1, self.M2)]
        return "\n".join(lines) if lines else f"<{self.rows} x {self.cols} pencil>"


_KIND_ORDER = {"C": 0, "B": 1, "J": 2, "Companion": 3, "Zero": 4}


@dataclass(frozen=True)
class KWBlock:
    kind: str  # "C", "B", "J", "Companion" or "Zero"
    n: int = 0  # u for C, v for B, the size of the elementary divisor for J and Companion
    point: Optional[Fraction] = None  # J only: the parameter u, None meaning the point at infinity
    poly: tuple[Fraction, ...] = ()  # Companion only: monic irreducible, leading coefficient first
    zero: tuple[int, int] = (0, 0)  # Zero only: (1, 0) is a zero row, (0, 1) a zero column

    @classmethod
    def C(cls, u: int) -> "KWBlock":
        if u < 1:
            raise ValueError("C(u) needs u >= 1; use Zero(1, 0) for u = 0")
        return cls("C", u)

    @classmethod
    def B(cls, v: int) -> "KWBlock":
        if v < 1:
            raise ValueError("B(v) needs v >= 1; use Zero(0, 1) for v = 0")
        return cls("B", v)

    @classmethod
    def J(cls, u, n: int) -> "KWBlock":
        """Jordan block x*I + y*(u*I + N); pass u = None for the point at infinity."""
        if n < 1:
            raise ValueError("J blocks need n >= 1")
        return cls("J", n, None if u is None else Fraction(u))

    @classmethod
    def companion(cls, poly: Sequence, n: int) -> "KWBlock":
        p = tuple(Fraction(c) for c in poly)
        if len(p) < 3 or p[0] != 1:
            raise ValueError("companion blocks need a monic polynomial of degree >= 2")
        if n < 1:
            raise ValueError("companion blocks need n >= 1")
        return cls("Companion", n, None, p)

    @classmethod
    def zero_row(cls) -> "KWBlock":
        return cls("Zero", 0, None, (), (1, 0))

    @classmethod
    def zero_col(cls) -> "KWBlock":
        return cls("Zero", 0, None, (), (0, 1))

    @property
    def degree(self) -> int:
        return len(self.poly) - 1 if self.kind == "Companion" else 1

    @property
    def shape(self) -> tuple[int, int]:
        if self.kind == "C":
            return self.n + 1, self.n
        if self.kind == "B":
            return self.n, self.n + 1
        if self.kind == "Zero":
            return self.zero
        m = self.n * self.degree
        return m, m

    @property
    def root(self) -> Optional[tuple[Fraction, Fraction]]:
        """The point (x:y) of P^1 where a J block degenerates."""
        if self.kind != "J":
            return None
        return (Fraction(1), Fraction(0)) if self.point is None else (-self.point, Fraction(1))

    def sort_key(self) -> tuple:
        k = _KIND_ORDER[self.kind]
        if self.kind == "J":
            return (k, self.point is None, self.point or 0, self.n)
        if self.kind == "Companion":
            return (k, len(self.poly), self.poly, self.n)
        if self.kind == "Zero":
            return (k, -self.zero[0])
        return (k, self.n)

    def matrices(self) -> tuple[Matrix, Matrix]:
        r, c = self.shape
        m1, m2 = la.zeros(r, c), la.zeros(r, c)
        one = Fraction(1)
        if self.kind == "B":
            for i in range(self.n):
                m1[i][i] = one
                m2[i][i + 1] = one
        elif self.kind == "C":
            for i in range(self.n):
                m1[i][i] = one
                m2[i + 1][i] = one
        elif self.kind == "J":
            for i in range(self.n):
                if self.point is None:
                    m2[i][i] = one
                    if i + 1 < self.n:
                        m1[i][i + 1] = one
                else:
                    m1[i][i] = one
                    m2[i][i] = self.point
                    if i + 1 < self.n:
                        m2[i][i + 1] = one
        elif self.kind == "Companion":
            m1 = la.identity(r)
            m2 = _companion(_poly_power(self.poly, self.n))
        return m1, m2

    def to_json(self) -> dict:
        if self.kind == "C":
            return {"kind": "C", "u": self.n}
        if self.kind == "B":
            return {"kind": "B", "v": self.n}
        if self.kind == "J":
            return {"kind": "J", "point": "inf" if self.point is None else format_fraction(self.point), "n": self.n}
        if self.kind == "Companion":
            return {"kind": "Companion", "poly": [format_fraction(c) for c in self.poly], "n": self.n}
        return {"kind": "Zero", "a0": self.zero[0], "b0": self.zero[1]}

    @classmethod
    def from_json(cls, data: dict) -> "KWBlock":
        kind = data["kind"]
        if kind == "C":
            return cls.C(int(data["u"]))
        if kind == "B":
            return cls.B(int(data["v"]))
        if kind == "J":
            pt = data["point"]
            return cls.J(None if pt == "inf" else parse_fraction(pt), int(data["n"]))
        if kind == "Companion":
            return cls.companion([parse_fraction(c) for c in data["poly"]], int(data["n"]))
        if kind == "Zero":
            return cls("Zero", 0, None, (), (int(data["a0"]), int(data["b0"])))
        raise ValueError(f"unknown block kind {kind!r}")

    def __str__(self) -> str:
        if self.kind in ("C", "B"):
            return f"{self.kind}({self.n})"
        if self.kind == "J":
            return f"J({'inf' if self.point is None else format_fraction(self.point)}, {self.n})"
        if self.kind == "Companion":
            return f"Companion({poly_str(self.poly)}, {self.n})"
        return f"Z{self.zero}"


def poly_str(poly: Sequence[Fraction], var: str = "t") -> str:
    deg = len(poly) - 1
    out = ""
    for i, c in enumerate(poly):
        e = deg - i
        if c == 0:
            continue
        mag = format_fraction(abs(c))
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        term = mag if e == 0 else (mono if abs(c) == 1 else f"{mag}*{mono}")
        if not out:
            out = ("-" if c < 0 else "") + term
        else:
            out += (" - " if c < 0 else " + ") + term
    return out or "0"


@dataclass(frozen=True)
class KWDecomposition:
    """Blocks in canonical order with P * (x*M1 + y*M2) * Q = kw_assemble(blocks)."""

    blocks: tuple[KWBlock, ...]
    P: tuple[tuple[Fraction, ...], ...]
    Q: tuple[tuple[Fraction, ...], ...]

    def multiset(self) -> Counter:
        return Counter(self.blocks)

    def grouped(self) -> list[tuple[KWBlock, int]]:
        """Distinct blocks with multiplicities, in canonical order."""
        out: list[tuple[KWBlock, int]] = []
        for b in self.blocks:
            if out and out[-1][0] == b:
                out[-1] = (b, out[-1][1] + 1)
            else:
                out.append((b, 1))
        return out

    @property
    def zero_part(self) -> tuple[int, int]:
        return (sum(b.zero[0] for b in self.blocks), sum(b.zero[1] for b in self.blocks))

    def to_json(self, witnesses: bool = True) -> dict:
        out = {
            "blocks": [dict(b.to_json(), multiplicity=m) for b, m in self.grouped()],
            "zero_part": list(self.zero_part),
        }
        if witnesses:
            out["P"] = [[format_fraction(x) for x in row] for row in self.P]
            out["Q"] = [[format_fraction(x) for x in row] for row in self.Q]
        return out


# ---------------------------------------------------------------------------
# small helpers


def _mm(a: Matrix, b: Matrix, n: int, p: int) -> Matrix:
    """a (r x n) times b (n x p), safe for empty dimensions."""
    return la.matmul(a, b, n, p)


def _sub(m: Matrix, r0: int, r1: int, c0: int, c1: int) -> Matrix:
    return [row[c0:c1] for row in m[r0:r1]]


def _poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _poly_power(p: Sequence[Fraction], n: int) -> list[Fraction]:
    out = [Fraction(1)]
    for _ in range(n):
        out = _poly_mul(out, p)
    return out


def _companion(f: Sequence[Fraction]) -> Matrix:
    m = len(f) - 1
    c = la.zeros(m, m)
    for i in range(m - 1):
        c[i + 1][i] = Fraction(1)
    for i in range(m):
        c[i][m - 1] = -f[m - i]
    return c


def _poly_at(p: Sequence[Fraction], A: Matrix) -> Matrix:
    n = len(A)
    R = la.zeros(n, n)
    for c in p:
        R = _mm(R, A, n, n)
        for i in range(n):
            R[i][i] += c
    return R


def _pencil_at(M1: Matrix, M2: Matrix, x, y) -> Matrix:
    return [[x * a + y * b for a, b in zip(r1, r2)] for r1, r2 in zip(M1, M2)]


def _sylvester_T(M1: Matrix, M2: Matrix, r: int, c: int, v: int) -> Matrix:
    """Coefficient matrix of x*M1 + y*M2 acting on vectors of forms of degree v.

    A kernel vector (z_0, ..., z_v) is sum z_j x^(v-j) y^j with
    M1 z_j + M2 z_(j-1) = 0 for j = 0..v+1.
    """
    T = la.zeros((v + 2) * r, (v + 1) * c)
    for j in range(v + 1):
        for i in range(r):
            for k in range(c):
                T[j * r + i][j * c + k] = M1[i][k]
                T[(j + 1) * r + i][j * c + k] = M2[i][k]
    return T


# ---------------------------------------------------------------------------
# minimal indices as an independent rank computation


def normal_rank(m: MatrixPencil) -> int:
    """Rank of x*M1 + y*M2 over Q(x, y).

    The rank drops at no more than min(a, b) points of P^1, so the maximum
    over min(a, b) + 1 distinct points is the generic rank.
    """
    n = min(m.rows, m.cols)
    if n == 0:
        return 0
    return la.max_rank_on_line(*m.mats(), m.cols, range(n + 1))


def _index_counts(M1: Matrix, M2: Matrix, r: int, c: int, total: int, limit: int) -> list[int]:
    """Minimal indices read off from dim ker T_k, the second difference counts indices equal to k."""
    if total == 0:
        return []
    out: list[int] = []
    prev, prev2 = 0, 0  # dim ker T_(k-1), dim ker T_(k-2)
    for k in range(limit + 1):
        dk = (k + 1) * c - la.rank(_sylvester_T(M1, M2, r, c, k), (k + 1) * c)
        at_most_k = dk - prev
        exactly = at_most_k - (prev - prev2)
        out.extend([k] * exactly)
        if at_most_k == total:
            return out
        prev2, prev = prev, dk
    raise InconsistentState("minimal indices did not close up")


def minimal_indices(m: MatrixPencil) -> tuple[list[int], list[int]]:
    """(right, left) minimal indices, i.e. the v of B(v) and the u of C(u) blocks (0 for zero atoms)."""
    nr = normal_rank(m)
    M1, M2 = m.mats()
    right = _index_counts(M1, M2, m.rows, m.cols, m.cols - nr, nr)
    T1, T2 = la.transpose(M1, m.cols), la.transpose(M2, m.cols)
    left = _index_counts(T1, T2, m.cols, m.rows, m.rows - nr, nr)
    return right, left


# ---------------------------------------------------------------------------
# the reduction


def _extract_B(W1: Matrix, W2: Matrix, r: int, c: int, v: int, z: list[list[Fraction]]):
    """Split off B(v) from a pencil with a least-degree kernel vector z.

    Returns (P0, Q0, W1', W2') with P0 W Q0 = diag(B(v), W').
    """
    q = [[(-1) ** i * x for x in z[v - i]] for i in range(v + 1)]
    p = [la.apply(W1, q[i]) for i in range(v)]
    Qcols = la.complete_basis(q, c)
    Pinvcols = la.complete_basis(p, r)
    Q0 = la.columns_to_matrix(Qcols, c)
    P0 = la.inverse(la.columns_to_matrix(Pinvcols, r)) if r else []
    N1 = _mm(_mm(P0, W1, r, c), Q0, c, c)
    N2 = _mm(_mm(P0, W2, r, c), Q0, c, c)
    r2, c2 = r - v, c - v - 1
    B1, B2 = KWBlock("B", v).matrices() if v else ([], [])
    if _sub(N1, 0, v, 0, v + 1) != B1 or _sub(N2, 0, v, 0, v + 1) != B2:
        raise InconsistentState("kernel chain did not produce a B block")
    if not la.is_zero(_sub(N1, v, r, 0, v + 1)) or not la.is_zero(_sub(N2, v, r, 0, v + 1)):
        raise InconsistentState("kernel chain is not invariant")
    D1, D2 = _sub(N1, 0, v, v + 1, c), _sub(N2, 0, v, v + 1, c)
    R1, R2 = _sub(N1, v, r, v + 1, c), _sub(N2, v, r, v + 1, c)
    if v and not (la.is_zero(D1) and la.is_zero(D2)):
        Y, X = _decouple(D1, D2, R1, R2, v, r2, c2)
        # P0 <- [[I, Y], [0, I]] P0 and Q0 <- Q0 [[I, X], [0, I]]
        YP = _mm(Y, P0[v:], r2, r)
        for i in range(v):
            P0[i] = [a + b for a, b in zip(P0[i], YP[i])]
        QX = _mm([row[: v + 1] for row in Q0], X, v + 1, c2)
        for i in range(c):
            for j in range(c2):
                Q0[i][v + 1 + j] += QX[i][j]
    return P0, Q0, R1, R2


def _decouple(D1, D2, R1, R2, v, r2, c2):
    """Solve B(v) X + Y R = -D for constant X ((v+1) x c2) and Y (v x r2).

    Row i of the two equations reads X[i] + y_i R1 = -D1[i] and
    X[i+1] + y_i R2 = -D2[i], so the unknowns reduce to the rows y_i subject to
    y_i R1 - y_(i-1) R2 = D2[i-1] - D1[i] for i = 1..v-1.
    """
    nunk = v * r2
    rows = []
    rhs = []
    for i in range(1, v):
        for col in range(c2):
            eq = [Fraction(0)] * nunk
            for k in range(r2):
                eq[i * r2 + k] = R1[k][col]
                eq[(i - 1) * r2 + k] = -R2[k][col]
            rows.append(eq)
            rhs.append(D2[i - 1][col] - D1[i][col])
    if rows:
        sol = la.solve(rows, rhs, nunk)
        if sol is None:
            raise InconsistentState("could not decouple a B block")
    else:
        sol = [Fraction(0)] * nunk
    Y = [sol[i * r2:(i + 1) * r2] for i in range(v)]
    X = []
    for i in range(v):
        yr = _mm([Y[i]], R1, r2, c2)[0]
        X.append([-d - t for d, t in zip(D1[i], yr)])
    yr = _mm([Y[v - 1]], R2, r2, c2)[0]
    X.append([-d - t for d, t in zip(D2[v - 1], yr)])
    return Y, X


def _split_right(W1, W2, r, c, count, on_block):
    """Peel off `count` B blocks (zero columns included) in increasing order."""
    v = 0
    while count:
        n = (v + 1) * c
        ker = la.nullspace(_sylvester_T(W1, W2, r, c, v), n)
        if not ker:
            v += 1
            if v > r + 1:
                raise InconsistentState("missing right minimal index")
            continue
        z = [ker[0][j * c:(j + 1) * c] for j in range(v + 1)]
        P0, Q0, W1, W2 = _extract_B(W1, W2, r, c, v, z)
        on_block(v, P0, Q0)
        r, c = r - v, c - v - 1
        count -= 1
    return W1, W2, r, c


def _cyclic_chains(A: Matrix, p: Sequence[Fraction], mult: int) -> list[list[list[Fraction]]]:
    """Bases of the cyclic pieces of the p-primary part of A.

    For p = t - u each basis is a Jordan chain (B^(n-1) g, ..., B g, g) with
    B = A - u; otherwise it is (g, A g, ..., A^(nd-1) g).
    """
    n = len(A)
    d = len(p) - 1
    pA = _poly_at(p, A)
    kernels: list[list[list[Fraction]]] = [[]]
    power = la.identity(n)
    while len(kernels[-1]) < mult * d:
        power = _mm(power, pA, n, n)
        kernels.append(la.nullspace(power, n))
    chosen: list[tuple[list[Fraction], int]] = []
    for j in range(len(kernels) - 1, 0, -1):
        span = [list(x) for x in kernels[j - 1]]
        for g, length in chosen:
            h = g
            for _ in range(length - j):
                h = la.apply(pA, h)
            for _ in range(d):
                span.append(h)
                h = la.apply(A, h)
        rk = la.rank(span, n) if span else 0
        for cand in kernels[j]:
            if la.rank(span + [cand], n) > rk:
                h = cand
                for _ in range(d):
                    span.append(h)
                    h = la.apply(A, h)
                rk += d
                chosen.append((cand, j))
    chains = []
    for g, length in chosen:
        if d == 1:
            Bm = pA
            vecs = [g]
            for _ in range(length - 1):
                vecs.append(la.apply(Bm, vecs[-1]))
            chains.append((length, vecs[::-1]))
        else:
            vecs = [g]
            for _ in range(length * d - 1):
                vecs.append(la.apply(A, vecs[-1]))
            chains.append((length, vecs))
    return chains


def _rational_form(A: Matrix, infinite: bool):
    """(blocks, S) with S^-1 A S block diagonal in Jordan / companion form."""
    n = len(A)
    if n == 0:
        return [], []
    factors = [((Fraction(1), Fraction(0)), n)] if infinite else la.factor_over_q(la.charpoly(A))
    blocks, cols = [], []
    for p, mult in factors:
        for length, vecs in _cyclic_chains(A, p, mult):
            if infinite:
                blocks.append(KWBlock.J(None, length))
            elif len(p) == 2:
                blocks.append(KWBlock.J(-p[1], length))
            else:
                blocks.append(KWBlock.companion(p, length))
            cols.extend(vecs)
    if len(cols) != n:
        raise InconsistentState("primary decomposition is incomplete")
    return blocks, la.columns_to_matrix(cols, n)


def _split_regular(W1: Matrix, W2: Matrix, n: int):
    """(blocks, P0, Q0) with P0 (x W1 + y W2) Q0 block diagonal and canonical."""
    if n == 0:
        return [], [], []
    c = 0
    while True:
        T = _pencil_at(W1, W2, c, 1)
        if la.rank(T, n) == n:
            break
        c = -c if c > 0 else 1 - c
    Tinv = la.inverse(T)
    K = _mm(Tinv, W1, n, n)
    Kn = la.identity(n)
    for _ in range(n):
        Kn = _mm(Kn, K, n, n)
    # column space of K^n: the nonzero rows of the reduced transpose
    red, piv = la.rref(la.transpose(Kn, n), n)
    image = [red[i] for i in range(len(piv))]
    kernel = la.nullspace(Kn, n)
    S1 = la.columns_to_matrix(image + kernel, n)
    S1inv = la.inverse(S1)
    Kb = _mm(_mm(S1inv, K, n, n), S1, n, n)
    m = len(image)
    K1 = _sub(Kb, 0, m, 0, m)
    K0 = _sub(Kb, m, n, m, n)
    if not la.is_zero(_sub(Kb, 0, m, m, n)) or not la.is_zero(_sub(Kb, m, n, 0, m)):
        raise InconsistentState("Fitting decomposition is not block diagonal")
    K1inv = la.inverse(K1) if m else []
    A = [[x - (c if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(K1inv)]
    k = n - m
    I_cK0inv = la.inverse([[(1 if i == j else 0) - c * x for j, x in enumerate(row)] for i, row in enumerate(K0)]) if k else []
    Nil = _mm(I_cK0inv, K0, k, k)
    fblocks, SA = _rational_form(A, infinite=False)
    iblocks, SN = _rational_form(Nil, infinite=True)
    left_f = _mm(la.inverse(SA), K1inv, m, m) if m else []
    left_i = _mm(la.inverse(SN), I_cK0inv, k, k) if k else []
    left = la.block_diag([(left_f, m, m), (left_i, k, k)])
    P0 = _mm(_mm(left, S1inv, n, n), Tinv, n, n)
    Q0 = _mm(S1, la.block_diag([(SA, m, m), (SN, k, k)]), n, n)
    return fblocks + iblocks, P0, Q0


def kw_decompose(m: MatrixPencil) -> KWDecomposition:
    a, b = m.rows, m.cols
    P = la.identity(a)
    Q = la.identity(b)
    placed: list[tuple[KWBlock, int, int]] = []  # block, first row, first column
    state = {"r0": 0, "c0": 0}

    def push(block: KWBlock):
        placed.append((block, state["r0"], state["c0"]))
        br, bc = block.shape
        state["r0"] += br
        state["c0"] += bc

    def apply_rows(P0, k):
        r0 = state["r0"]
        P[r0:] = _mm(P0, P[r0:], k, a)

    def apply_cols(Q0, k):
        c0 = state["c0"]
        prod = _mm([row[c0:] for row in Q], Q0, k, k)
        for i in range(b):
            Q[i][c0:] = prod[i]

    nr = normal_rank(m)
    W1, W2 = m.mats()
    r, c = a, b

    def on_B(v, P0, Q0):
        apply_rows(P0, len(P0))
        apply_cols(Q0, len(Q0))
        push(KWBlock.B(v) if v else KWBlock.zero_col())

    W1, W2, r, c = _split_right(W1, W2, r, c, b - nr, on_B)

    def on_C(u, P0, Q0):
        # P0, Q0 act on the transpose
        apply_rows(la.transpose(Q0, len(Q0)), len(Q0))
        apply_cols(la.transpose(P0, len(P0)), len(P0))
        push(KWBlock.C(u) if u else KWBlock.zero_row())

    T1, T2 = la.transpose(W1, c), la.transpose(W2, c)
    T1, T2, c, r = _split_right(T1, T2, c, r, a - nr, on_C)
    W1, W2 = la.transpose(T1, r), la.transpose(T2, r)
    if r != c:
        raise InconsistentState("regular part is not square")

    blocks, P0, Q0 = _split_regular(W1, W2, r)
    apply_rows(P0, r)
    apply_cols(Q0, r)
    for blk in blocks:
        push(blk)

    order = sorted(range(len(placed)), key=lambda i: placed[i][0].sort_key())
    row_perm, col_perm = [], []
    for i in order:
        blk, r0, c0 = placed[i]
        br, bc = blk.shape
        row_perm.extend(range(r0, r0 + br))
        col_perm.extend(range(c0, c0 + bc))
    P = [P[i] for i in row_perm]
    Q = [[row[j] for j in col_perm] for row in Q]
    return KWDecomposition(
        tuple(placed[i][0] for i in order),
        tuple(tuple(row) for row in P),
        tuple(tuple(row) for row in Q),
    )


def kw_assemble(blocks: Iterable[KWBlock]) -> MatrixPencil:
    ordered = sorted(blocks, key=KWBlock.sort_key)
    parts1, parts2 = [], []
    for blk in ordered:
        r, c = blk.shape
        m1, m2 = blk.matrices()
        parts1.append((m1, r, c))
        parts2.append((m2, r, c))
    rows = sum(p[1] for p in parts1)
    cols = sum(p[2] for p in parts1)
    return MatrixPencil(la.block_diag(parts1), la.block_diag(parts2), rows, cols)


def verify_equivalence(dec: KWDecomposition, m: MatrixPencil) -> bool:
    if len(dec.P) != m.rows or len(dec.Q) != m.cols or any(len(row) != m.rows for row in dec.P) or any(
        len(row) != m.cols for row in dec.Q
    ):
        raise ShapeMismatch("witness matrices do not match the pencil")
    target = kw_assemble(dec.blocks)
    if (target.rows, target.cols) != (m.rows, m.cols):
        return False
    P = [list(r) for r in dec.P]
    Q = [list(r) for r in dec.Q]
    if la.rank(P, m.rows) != m.rows or la.rank(Q, m.cols) != m.cols:
        return False
    got = m.transform(P, Q)
    return got.M1 == target.M1 and got.M2 == target.M2


def is_indecomposable(m: MatrixPencil) -> bool:
    return len(kw_decompose(m).blocks) == 1


# ---------------------------------------------------------------------------
# quartic scrolls


def _require_quartic(s: Scroll) -> None:
    if s.dX != 4:
        raise WrongDegree(f"{s.name} has degree {s.dX}; this needs a quartic scroll")


def _point_label(block: KWBlock) -> str:
    if block.kind == "Companion":
        return poly_str(block.poly)
    x, y = block.root
    return f"({format_fraction(x)}:{format_fraction(y)})"


def block_descriptor(s: Scroll, block: KWBlock) -> BundleDescriptor:
    """The Ulrich bundle attached to a single block on a quartic scroll.

    Rows of the pencil are copies of O(-F) and columns copies of L, so a block
    of shape r x c gives (b, a) = (c, r).  With w = 2, phi_k = k and the
    exceptional U_k has a = k, b = k - 1 (k >= 1) or a = -k, b = 1 - k (k <= 0):
    C(u) and the zero row are U_(u+1), B(v) and the zero column are U_(-v).
    """
    a, b = block.shape
    ch = ulrich_character(s, DimensionVector(b, a))
    if block.kind in ("C", "B", "Zero"):
        if a == b + 1:
            k = a
        else:
            k = -a
        return describe(s, "ulrich", f"U_{k}", ch, a=a, b=b, rigid=True, exceptional=True)
    label = _point_label(block)
    return describe(
        s, "family", f"E_{block.n}[{label}]", ch, a=a, b=b, rigid=False, exceptional=False, point=label
    )


def classify_quartic_ulrich(s: Scroll, m: MatrixPencil) -> list[BundleDescriptor]:
    _require_quartic(s)
    return [block_descriptor(s, blk) for blk in kw_decompose(m).blocks]


def quartic_acm_catalog(s: Scroll) -> list[BundleDescriptor]:
    """Indecomposable initialized ACM types on a quartic scroll, up to twist."""
    _require_quartic(s)
    out = []
    for d, ulrich in classify_acm_line_bundles(s):
        out.append(describe(s, "line-bundle", f"O({d})", ch_line(s, d), rigid=True, exceptional=True,
                            extension={"ulrich": ulrich}))
    if s.epsilon == 0:
        return out
    L = L_class(s)
    O = F - F
    # V = nontrivial extension of L by O, W = nontrivial extension of L by O(H - F)
    for tag, name, sub, twist in (
        ("sporadic-V", "V", O, O),
        ("sporadic-V", "V(-F)", O, -1 * F),
        ("sporadic-W", "W", H - F, O),
    ):
        ch = ch_sum(ch_line(s, sub + twist), ch_line(s, L + twist))
        ext1 = cohomology(s, sub - L)[1]
        out.append(describe(
            s, tag, name, ch, rigid=True, exceptional=False,
            extension={"sub": sub.to_json(), "quotient": L.to_json(), "twist": twist.to_json(), "ext1": ext1},
        ))
    return out
