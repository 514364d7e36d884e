"""Exact dense linear algebra over Q(i).

Row reduction is plain Gaussian elimination on GaussianRational entries with a
deterministic pivot rule: columns are scanned left to right and the first row
with a nonzero entry is the pivot.  Together with the graded-lex column order
chosen by callers this makes every kernel basis reproducible bit for bit.
Matrices here are small (a few hundred columns), so dense rows are fine.
"""

from __future__ import annotations

from .gaussian import ONE, ZERO, GaussianRational

Vector = list[GaussianRational]
Matrix = list[Vector]


def rref(rows: Matrix, ncols: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(m)):
            if not m[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = ONE / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Matrix, ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Matrix, ncols: int) -> list[Vector]:
    """Basis of {v : M v = 0}, one vector per free column, in column order."""
    red, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for row, pc in zip(red, pivots):
            v[pc] = -row[free]
        basis.append(v)
    return basis


def echelon_basis(vectors: list[Vector], ncols: int) -> list[Vector]:
    """Canonical (RREF) basis of the span, rows ordered by pivot column."""
    red, _ = rref(vectors, ncols)
    return red


def in_span(vectors: list[Vector], v: Vector, ncols: int) -> bool:
    if all(x.is_zero() for x in v):
        return True
    base = rank(vectors, ncols) if vectors else 0
    return rank(vectors + [v], ncols) == base


def span_equal(a: list[Vector], b: list[Vector], ncols: int) -> bool:
    return echelon_basis(a, ncols) == echelon_basis(b, ncols)


def solve(rows: Matrix, rhs: Vector, ncols: int) -> tuple[Vector | None, Vector]:
    """Solve M v = rhs exactly, free variables pinned to zero.

    Returns (solution, residual).  When the system is inconsistent the
    solution is None and the residual is M v* - rhs for the deterministic
    pseudo-solution v* read off the consistent rows.
    """
    aug = [list(r) + [t] for r, t in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    consistent = ncols not in pivots
    v = [ZERO] * ncols
    for row, pc in zip(red, pivots):
        if pc < ncols:
            v[pc] = row[ncols]
    residual = []
    for r, t in zip(rows, rhs):
        acc = ZERO
        for a, x in zip(r, v):
            if not a.is_zero() and not x.is_zero():
                acc = acc + a * x
        residual.append(acc - t)
    return (v if consistent else None), residual
