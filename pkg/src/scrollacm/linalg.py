"""Exact dense linear algebra over Q.

Matrices are lists of rows of Fractions.  The heavy lifting (row reduction,
products, characteristic polynomials, factoring over Q) is done by FLINT
through python-flint; results come back as Fractions.  Pivots are taken at
the first nonzero entry, so reduced forms and kernel bases are deterministic.

`bareiss_rank` is a pure-Python fraction-free elimination kept as an
independent check on the FLINT ranks.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

import flint

Matrix = list[list[Fraction]]


def to_matrix(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Matrix:
    m = [[Fraction(x) for x in row] for row in rows]
    if ncols is not None and any(len(r) != ncols for r in m):
        raise ValueError("ragged matrix")
    return m


def zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def shape(m: Matrix, ncols: int = 0) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else ncols)


def _to_flint(m: Matrix, ncols: int = 0) -> "flint.fmpq_mat":
    r, c = shape(m, ncols)
    flat = []
    for row in m:
        for x in row:
            flat.append(flint.fmpq(x.numerator, x.denominator) if isinstance(x, Fraction) else flint.fmpq(x))
    return flint.fmpq_mat(r, c, flat)


def _q(x) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def _from_flint(f: "flint.fmpq_mat") -> Matrix:
    c = f.ncols()
    return [[_q(f[i, j]) for j in range(c)] for i in range(f.nrows())]


def transpose(m: Matrix, ncols: int = 0) -> Matrix:
    r, c = shape(m, ncols)
    return [[m[i][j] for i in range(r)] for j in range(c)]


def matmul(a: Matrix, b: Matrix, inner: Optional[int] = None, bcols: int = 0) -> Matrix:
    """Product a @ b.  `inner` and `bcols` give the dimensions when a matrix has no rows."""
    n = len(b) if inner is None else inner
    p = len(b[0]) if b else bcols
    if not a:
        return []
    if p == 0:
        return [[] for _ in a]
    if n == 0:
        return zeros(len(a), p)
    return _from_flint(_to_flint(a, n) * _to_flint(b, p))


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(a: Matrix, c) -> Matrix:
    return [[c * x for x in row] for row in a]


def block_diag(blocks: Sequence[tuple[Matrix, int, int]]) -> Matrix:
    """Block-diagonal matrix from (matrix, rows, cols) triples; blocks may be empty."""
    R = sum(r for _, r, _ in blocks)
    C = sum(c for _, _, c in blocks)
    out = zeros(R, C)
    i0 = j0 = 0
    for m, r, c in blocks:
        for i in range(r):
            for j in range(c):
                out[i0 + i][j0 + j] = m[i][j]
        i0 += r
        j0 += c
    return out


def rref(m: Matrix, ncols: int = 0) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    r, c = shape(m, ncols)
    if r == 0 or c == 0:
        return [list(row) for row in m], []
    red, rk = _to_flint(m, c).rref()
    out = _from_flint(red)
    pivots = []
    for i in range(rk):
        pivots.append(next(j for j in range(c) if out[i][j] != 0))
    return out, pivots


def rank(m: Matrix, ncols: int = 0) -> int:
    r, c = shape(m, ncols)
    if r == 0 or c == 0:
        return 0
    return _to_flint(m, c).rank()


def max_rank_on_line(m1: Matrix, m2: Matrix, ncols: int, ts) -> int:
    """max over t in ts of rank(m1 + t*m2), stopping early at full rank."""
    f1, f2 = _to_flint(m1, ncols), _to_flint(m2, ncols)
    full = min(len(m1), ncols)
    best = 0
    for t in ts:
        best = max(best, (f1 + f2 * t).rank())
        if best == full:
            break
    return best


def _integer_rows(m: Matrix) -> list[list[int]]:
    out = []
    for row in m:
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def bareiss_rank(m: Matrix, ncols: int = 0) -> int:
    """Rank by fraction-free (Bareiss) elimination on an integer copy."""
    a = _integer_rows(m)
    rows, cols = shape(a, ncols)
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, rows):
            f = a[i][c]
            ai, ar = a[i], a[r]
            for j in range(c + 1, cols):
                ai[j] = (piv * ai[j] - f * ar[j]) // prev
            ai[c] = 0
        prev = piv
        r += 1
    return r


def nullspace(m: Matrix, ncols: int = 0) -> list[list[Fraction]]:
    """Basis of {x : m x = 0}, one vector per free column."""
    _, cols = shape(m, ncols)
    red, pivots = rref(m, cols)
    pivset = set(pivots)
    basis = []
    for f in range(cols):
        if f in pivset:
            continue
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Sequence, ncols: int = 0) -> Optional[list[Fraction]]:
    """One solution of a x = b (free variables set to 0), or None."""
    rows, cols = shape(a, ncols)
    aug = [list(a[i]) + [Fraction(b[i])] for i in range(rows)]
    red, pivots = rref(aug, cols + 1)
    if pivots and pivots[-1] == cols:
        return None
    x = [Fraction(0)] * cols
    for i, p in enumerate(pivots):
        x[p] = red[i][cols]
    return x


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    if n == 0:
        return []
    f = _to_flint(m, n)
    if f.rank() < n:
        raise ZeroDivisionError("matrix is singular")
    return _from_flint(f.inv())


def complete_basis(vectors: Sequence[Sequence[Fraction]], n: int) -> list[list[Fraction]]:
    """Append standard unit vectors, lowest index first, until the span is Q^n."""
    basis = [list(v) for v in vectors]
    if rank(basis, n) != len(basis):
        raise ValueError("input vectors are linearly dependent")
    if len(basis) == n:
        return basis
    # the non-pivot columns of the reduced basis index a complementary set of unit vectors
    _, pivots = rref(basis, n) if basis else ([], [])
    pivset = set(pivots)
    for i in range(n):
        if i not in pivset:
            e = [Fraction(0)] * n
            e[i] = Fraction(1)
            basis.append(e)
    return basis


def columns_to_matrix(cols: Sequence[Sequence[Fraction]], n: int) -> Matrix:
    return [[c[i] for c in cols] for i in range(n)]


def apply(m: Matrix, v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in m]


def is_zero(m: Matrix) -> bool:
    return all(x == 0 for row in m for x in row)


def charpoly(m: Matrix) -> list[Fraction]:
    """det(tI - m), leading coefficient first."""
    n = len(m)
    if n == 0:
        return [Fraction(1)]
    coeffs = _to_flint(m, n).charpoly().coeffs()  # constant term first
    return [_q(c) for c in reversed(coeffs)]


def factor_over_q(poly: Sequence[Fraction]) -> list[tuple[tuple[Fraction, ...], int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree, coefficients)."""
    f = flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in reversed(list(poly))])
    out = []
    for fac, mult in f.factor()[1]:
        cs = [_q(flint.fmpq(c)) for c in reversed(fac.coeffs())]
        lead = cs[0]
        out.append((tuple(c / lead for c in cs), int(mult)))
    out.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return out
