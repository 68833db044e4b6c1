"""Seeded generators for randomized pencil tests.

The seed comes from SCROLL_ACM_SEED when set, so failing property runs can be
replayed exactly.
"""
from __future__ import annotations

import os
import random
from fractions import Fraction
from typing import Optional

from . import linalg as la
from .pencil import KWBlock, MatrixPencil, kw_assemble

DEFAULT_SEED = 20240917
POINTS = (Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2), Fraction(-3, 2))
QUADRATICS = ((1, 0, -2), (1, 1, 1), (1, 0, 1), (1, -1, -1))


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    raw = os.environ.get("SCROLL_ACM_SEED")
    return int(raw) if raw not in (None, "") else default


def rng(offset: int = 0, seed: Optional[int] = None) -> random.Random:
    return random.Random((seed_from_env() if seed is None else seed) * 1000003 + offset)


def random_unimodular(n: int, r: random.Random, steps: Optional[int] = None) -> la.Matrix:
    """Product of elementary row operations with small integer multipliers."""
    m = la.identity(n)
    if n < 2:
        return m
    for _ in range(steps if steps is not None else 3 * n):
        i, j = r.sample(range(n), 2)
        c = r.choice((-2, -1, 1, 2))
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    if r.random() < 0.5:
        i, j = r.sample(range(n), 2)
        m[i], m[j] = m[j], m[i]
    return m


def random_blocks(r: random.Random, max_blocks: int = 4, max_size: int = 6, companion: Optional[bool] = None) -> list[KWBlock]:
    """A random block multiset; at most one quadratic companion block."""
    out = []
    for _ in range(r.randint(1, max_blocks)):
        kind = r.choice("CBJJIZz")
        if kind == "C":
            out.append(KWBlock.C(r.randint(1, max_size)))
        elif kind == "B":
            out.append(KWBlock.B(r.randint(1, max_size)))
        elif kind == "J":
            out.append(KWBlock.J(r.choice(POINTS), r.randint(1, max_size)))
        elif kind == "I":
            out.append(KWBlock.J(None, r.randint(1, max_size)))
        elif kind == "Z":
            out.append(KWBlock.zero_row())
        else:
            out.append(KWBlock.zero_col())
    if companion if companion is not None else r.random() < 0.5:
        out.append(KWBlock.companion(r.choice(QUADRATICS), r.randint(1, 2)))
    return out


def conjugated(blocks: list[KWBlock], r: random.Random) -> MatrixPencil:
    canon = kw_assemble(blocks)
    return canon.transform(random_unimodular(canon.rows, r), random_unimodular(canon.cols, r))


def random_pencil(r: random.Random, rows: int, cols: int, lo: int = -2, hi: int = 2) -> MatrixPencil:
    """Dense pencil with small integer entries, biased toward zeros."""
    def entry():
        return 0 if r.random() < 0.3 else r.randint(lo, hi)

    return MatrixPencil([[entry() for _ in range(cols)] for _ in range(rows)],
                        [[entry() for _ in range(cols)] for _ in range(rows)], rows, cols)
