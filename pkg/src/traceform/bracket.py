"""Coefficient tables relating round-bracket and square-bracket modes.

For a vector of conformal weight w the square-bracket modes expand in round
ones through the exponential change of coordinates, with

    v[m] = sum_{i>=0} a_i v(m+i),   a_i = [z^(m+i)] (log(1+z))^m (1+z)^(w-1).

The table is unitriangular (a_0 = 1), the m = 0 row of the plain binomial
expansion (1+z)^(w-1) gives the binomial coefficients C(w-1, i), and m may be
any integer: negative rows use the inverse powers of log(1+z)/z, still with
rational entries. The Virasoro shift is L[n] = omega~[n+1], so the L[0] row
is bracket_coeffs(2, 1) = (1, 1/2, -1/6, 1/12, ...).

square_bracket_l_action is the L[n] action on the abstract square-bracket
highest-weight module. The square-bracket Virasoro (with the shifted
conformal vector) generates a vertex algebra isomorphic to the round one with
the same central charge, so on identically labeled PBW bases the structure
constants coincide and the action delegates to the one engine in virasoro.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import virasoro
from .virasoro import VermaVector


def _mul_trunc(a: list[Fraction], b: list[Fraction], n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for i, x in enumerate(a[:n]):
        if x == 0:
            continue
        for j, y in enumerate(b[: n - i]):
            if y != 0:
                out[i + j] += x * y
    return out


def _unit_pow(u: list[Fraction], r: Fraction, n: int) -> list[Fraction]:
    """u^r for a unit series u (u[0] = 1) via the power recurrence."""
    out = [Fraction(0)] * n
    out[0] = Fraction(1)
    for m in range(1, n):
        acc = Fraction(0)
        for k in range(1, m + 1):
            if k < len(u) and u[k] != 0:
                acc += ((r + 1) * k - m) * u[k] * out[m - k]
        out[m] = acc / m
    return out


@lru_cache(maxsize=None)
def _log1p_over_z(n: int) -> tuple[Fraction, ...]:
    """Coefficients of log(1+z)/z = 1 - z/2 + z^2/3 - ..."""
    return tuple(Fraction((-1) ** k, k + 1) for k in range(n))


@lru_cache(maxsize=None)
def _binom_row(w_minus_1: int, n: int) -> tuple[Fraction, ...]:
    """Coefficients of (1+z)^(w-1), valid for any integer exponent."""
    out = [Fraction(1)]
    for i in range(1, n):
        out.append(out[-1] * Fraction(w_minus_1 - i + 1, i))
    return tuple(out)


@dataclass(frozen=True)
class BracketCoeffTable:
    """One row of the mode change of variables: v[m] = sum a_i v(m+i)."""

    weight: int
    m: int
    coeffs: tuple[Fraction, ...]

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def __len__(self) -> int:
        return len(self.coeffs)


@lru_cache(maxsize=None)
def bracket_coeffs(w: int, m: int, depth: int = 12) -> BracketCoeffTable:
    """Row a_i = [z^(m+i)] (log(1+z))^m (1+z)^(w-1) for i = 0..depth-1.

    Factoring (log(1+z))^m = z^m (log(1+z)/z)^m shifts the extraction to
    [z^i] of a unit series, which is what makes a_0 = 1 and negative m legal.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    u = list(_log1p_over_z(depth))
    upow = _unit_pow(u, Fraction(m), depth)
    row = _mul_trunc(upow, list(_binom_row(w - 1, depth)), depth)
    return BracketCoeffTable(w, m, tuple(row))


@lru_cache(maxsize=None)
def inverse_bracket_coeffs(w: int, n: int, depth: int = 12) -> BracketCoeffTable:
    """Row b_i of the inverse change: v(n) = sum_{i>=0} b_i v[n+i].

    Solved by unitriangular back-substitution against the forward rows, so
    composing the two tables gives the identity to any depth.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    rows = [bracket_coeffs(w, n + j, depth).coeffs for j in range(depth)]
    b = [Fraction(1)]
    for t in range(1, depth):
        acc = Fraction(0)
        for j in range(t):
            acc += b[j] * rows[j][t - j]
        b.append(-acc)
    return BracketCoeffTable(w, n, tuple(b))


def square_bracket_l_action(n: int, vec: VermaVector) -> VermaVector:
    """L[n] acting on a square-bracket PBW vector.

    The square-bracket module is an abstract copy of the round-bracket
    highest-weight module with the same central charge and highest weight, so
    the structure constants agree monomial by monomial and the round-bracket
    engine does the work.
    """
    return virasoro.l_action(n, vec)


def square_mode_action(v: VermaVector, m: int, u: VermaVector) -> VermaVector:
    """v[m]u expanded in round modes, v[m] = sum_i a_i v(m+i).

    v must live in the vacuum vertex algebra; each homogeneous piece of
    weight w uses the (w, m) coefficient row. The sum is finite because
    v(j)u vanishes once j exceeds level(u) + w - 1.
    """
    if not v.vacuum or v.h != 0:
        raise ValueError("square modes need a vacuum vertex algebra vector")
    out = VermaVector(u.c, u.h, {}, u.vacuum)
    lev_u = max(u.level_components(), default=0)
    for w, piece in v.level_components().items():
        top = lev_u + w - 1 - m
        if top < 0:
            continue
        row = bracket_coeffs(w, m, top + 1)
        for i in range(top + 1):
            if row[i] != 0:
                out = out + row[i] * virasoro.mode_action(piece, m + i, u)
    return out


def square_virasoro_action(n: int, u: VermaVector) -> VermaVector:
    """L[n]u for the square-bracket Virasoro modes, expanded in round modes.

    L[n] is the (n+1) mode of the shifted conformal vector omega - c/24, so
    L[n] = sum_i a_i L(n+i) with the (2, n+1) coefficient row, plus -c/24
    times the identity when n = -2.
    """
    out = VermaVector(u.c, u.h, {}, u.vacuum)
    lev_u = max(u.level_components(), default=0)
    top = lev_u - n
    if top >= 0:
        row = bracket_coeffs(2, n + 1, top + 1)
        for i in range(top + 1):
            if row[i] != 0:
                out = out + row[i] * virasoro.l_action(n + i, u)
    if n == -2:
        out = out + (-u.c / 24) * u
    return out
