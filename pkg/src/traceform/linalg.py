"""Exact linear algebra over the rationals.

Everything in this package that needs a rank, kernel, or solve goes through
these helpers.  Matrices are small (a few hundred rows, worst case ~1600
columns for the deepest vacuum singular vector search), so the dense routines
are plain Gauss-Jordan over fractions.Fraction.  The sparse nullspace keeps
integer rows normalized by their gcd, which is what makes the deeper Virasoro
computations affordable: action matrices of single modes are very sparse.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Hashable, Iterable, Mapping, Sequence

Vector = list[Fraction]
Matrix = list[list[Fraction]]


def _as_fraction_matrix(rows: Iterable[Sequence[Fraction | int]]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref_dense(rows: Iterable[Sequence[Fraction | int]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot column indices)."""
    mat = _as_fraction_matrix(rows)
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank_dense(rows: Iterable[Sequence[Fraction | int]]) -> int:
    return len(rref_dense(rows)[1])


def nullspace_dense(rows: Iterable[Sequence[Fraction | int]], ncols: int | None = None) -> list[Vector]:
    """Basis of the right kernel {x : A x = 0}, one vector per free column."""
    mat = _as_fraction_matrix(rows)
    if ncols is None:
        if not mat:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(mat[0])
    red, pivots = rref_dense(mat)
    free = [c for c in range(ncols) if c not in pivots]
    basis: list[Vector] = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, p in zip(red, pivots):
            vec[p] = -row[f]
        basis.append(vec)
    return basis


def solve_dense(rows: Iterable[Sequence[Fraction | int]],
                rhs: Sequence[Fraction | int]) -> Vector | None:
    """One solution of A x = b, or None if inconsistent. Free variables are set to 0."""
    mat = _as_fraction_matrix(rows)
    b = [Fraction(x) for x in rhs]
    if len(mat) != len(b):
        raise ValueError("dimension mismatch")
    if not mat:
        return []
    ncols = len(mat[0])
    aug = [row + [bb] for row, bb in zip(mat, b)]
    red, pivots = rref_dense(aug)
    for row, p in zip(red, pivots):
        if p == ncols:
            return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def _normalize_int_row(row: dict[int, int]) -> dict[int, int]:
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def sparse_nullspace(rows: Iterable[Mapping[int, Fraction | int]],
                     ncols: int) -> list[dict[int, Fraction]]:
    """Right kernel basis of a sparse matrix given as {column: entry} rows.

    Gauss-Jordan with a minimum-degree pivot heuristic on integer-cleared rows.
    Returns kernel vectors as sparse {column: Fraction} dicts, one per free
    column, with the free coordinate set to 1.
    """
    work: list[dict[int, int]] = []
    for row in rows:
        cleared: dict[int, int] = {}
        denom = 1
        for v in row.values():
            f = Fraction(v)
            denom = denom * f.denominator // gcd(denom, f.denominator)
        for c, v in row.items():
            f = Fraction(v) * denom
            if f != 0:
                cleared[c] = int(f)
        if cleared:
            work.append(_normalize_int_row(cleared))

    col_rows: dict[int, set[int]] = {}
    active: set[int] = set(range(len(work)))
    for i in active:
        for c in work[i]:
            col_rows.setdefault(c, set()).add(i)

    def _discard(i: int, row: dict[int, int]) -> None:
        for c in row:
            s = col_rows.get(c)
            if s is not None:
                s.discard(i)

    def _register(i: int, row: dict[int, int]) -> None:
        for c in row:
            col_rows.setdefault(c, set()).add(i)

    pivot_of: dict[int, int] = {}  # column -> row index (done rows)
    done: set[int] = set()
    while True:
        best: tuple[int, int, int] | None = None  # (count, col, row)
        for c, rows_here in col_rows.items():
            live = rows_here & active
            if not live:
                continue
            cnt = len(live)
            row_idx = min(live, key=lambda i: (len(work[i]), i))
            if best is None or (cnt, len(work[row_idx])) < (best[0], len(work[best[2]])):
                best = (cnt, c, row_idx)
        if best is None:
            break
        _, col, pr = best
        active.discard(pr)
        prow = work[pr]
        pval = prow[col]
        targets = [i for i in (col_rows.get(col, set()) - {pr}) if i in active or i in done]
        for i in targets:
            row = work[i]
            f = row[col]
            _discard(i, row)
            new: dict[int, int] = {}
            for c2, v in row.items():
                new[c2] = pval * v
            for c2, v in prow.items():
                new[c2] = new.get(c2, 0) - f * v
            new = {c2: v for c2, v in new.items() if v != 0}
            new = _normalize_int_row(new)
            work[i] = new
            _register(i, new)
            if i in active and not new:
                active.discard(i)
        pivot_of[col] = pr
        done.add(pr)

    free_cols = [c for c in range(ncols) if c not in pivot_of]
    basis: list[dict[int, Fraction]] = []
    for f in free_cols:
        vec: dict[int, Fraction] = {f: Fraction(1)}
        for col, ri in pivot_of.items():
            row = work[ri]
            if f in row:
                val = -Fraction(row[f], row[col])
                if val != 0:
                    vec[col] = val
        basis.append(vec)
    return basis


class RowSpan:
    """Incrementally built row space over Q with sparse Gauss-Jordan pivots.

    Vectors are {key: Fraction} dicts over any totally ordered hashable keys.
    reduce() eliminates every known pivot from a vector; add() returns True if
    the vector enlarged the span.
    """

    def __init__(self) -> None:
        self._pivots: dict[Hashable, dict[Hashable, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def pivot_keys(self) -> set[Hashable]:
        return set(self._pivots)

    def pivot_row(self, key: Hashable) -> dict[Hashable, Fraction]:
        """The stored row whose pivot is key (leading coefficient 1)."""
        return dict(self._pivots[key])

    def reduce(self, vec: Mapping[Hashable, Fraction]) -> dict[Hashable, Fraction]:
        out = {k: Fraction(v) for k, v in vec.items() if v != 0}
        while True:
            hit = next((k for k in out if k in self._pivots), None)
            if hit is None:
                return out
            f = out[hit]
            row = self._pivots[hit]
            for k, v in row.items():
                new = out.get(k, Fraction(0)) - f * v
                if new == 0:
                    out.pop(k, None)
                else:
                    out[k] = new

    def add(self, vec: Mapping[Hashable, Fraction]) -> bool:
        red = self.reduce(vec)
        if not red:
            return False
        pivot = max(red)
        inv = 1 / red[pivot]
        row = {k: v * inv for k, v in red.items()}
        for other in self._pivots.values():
            if pivot in other:
                f = other.pop(pivot)
                for k, v in row.items():
                    if k == pivot:
                        continue
                    new = other.get(k, Fraction(0)) - f * v
                    if new == 0:
                        other.pop(k, None)
                    else:
                        other[k] = new
        self._pivots[pivot] = row
        return True

    def contains(self, vec: Mapping[Hashable, Fraction]) -> bool:
        return not self.reduce(vec)
