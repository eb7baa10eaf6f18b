"""Exact linear algebra over Q(i): row reduction and nullspaces."""

from __future__ import annotations

from typing import Sequence

from .scalar import ONE, ZERO, ExactScalar

__all__ = ["rref", "nullspace", "solve_linear"]


def rref(rows: Sequence[Sequence[ExactScalar]], ncols: int) -> tuple[list[list[ExactScalar]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence[ExactScalar]], ncols: int) -> list[list[ExactScalar]]:
    """A basis of {x : rows @ x = 0}, one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve_linear(rows: Sequence[Sequence[ExactScalar]], rhs: Sequence[ExactScalar]) -> list[ExactScalar] | None:
    """One solution of rows @ x = rhs (free variables set to zero), or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x
