"""Zhu algebra of the universal Virasoro vertex algebra.

For homogeneous a of weight w the bilinear operations on V are

    a . u   = sum_{i=0}^{w}   C(w, i)   a(i-1) u      (the Zhu product)
    u * a   = sum_{i=0}^{w-1} C(w-1, i) a(i-1) u      (the opposite side)
    o(a, u) = sum_{i=0}^{w}   C(w, i)   a(i-2) u      (spans O(V))

and A(V) = V / O(V). For the vacuum Virasoro algebra A(V) is the polynomial
ring Q[x] with x the class of the conformal vector. Membership of
L(-3-n)b + 2L(-2-n)b + L(-1-n)b in O(V) for every n >= 0 (the weight-shifted
residue elements built from the conformal vector) collapses any PBW monomial
class to the closed form

    [L(-M) b] = (-1)^M ((M-1) x + wt b) [b],    M >= 1,

which class_polynomial implements. In particular [L(-1)b] = -wt(b) [b] and
[L(-2)b] = (x + wt b)[b]; o_space exposes the direct truncated span so those
reduction relations can be checked against it rather than assumed.

zhu_poly(m) finds the first vacuum singular vector of the (m+2, m+3) minimal
model central charge by kernel search level by level, reduces its class to a
monic polynomial g, and reports the minimal monic polynomial of the truncated
ideal span of its descendant classes at two truncations; the roots of g
recover the Kac weight table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from . import virasoro
from .linalg import RowSpan
from .virasoro import VermaVector, l_action, mode_action, minimal_model

_RationalLike = Fraction | int


def _frac(x: _RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _require_vacuum(a: VermaVector) -> None:
    if not a.vacuum or a.h != 0:
        raise ValueError("the left factor must live in the vacuum vertex algebra")


def a_dot_u(a: VermaVector, u: VermaVector) -> VermaVector:
    """Zhu product a . u, linear in both arguments."""
    _require_vacuum(a)
    out = VermaVector(u.c, u.h, {}, u.vacuum)
    for w, piece in a.level_components().items():
        for i in range(w + 1):
            out = out + comb(w, i) * mode_action(piece, i - 1, u)
    return out


def u_star_a(u: VermaVector, a: VermaVector) -> VermaVector:
    """Opposite-side product u * a; a . u - u * a = a(0)u modulo nothing."""
    _require_vacuum(a)
    out = VermaVector(u.c, u.h, {}, u.vacuum)
    for w, piece in a.level_components().items():
        for i in range(max(w, 1)):
            out = out + comb(w - 1, i) * mode_action(piece, i - 1, u)
    return out


def o_elem(a: VermaVector, u: VermaVector) -> VermaVector:
    """A single spanning element of O(V): sum_i C(w,i) a(i-2)u."""
    _require_vacuum(a)
    out = VermaVector(u.c, u.h, {}, u.vacuum)
    for w, piece in a.level_components().items():
        for i in range(w + 1):
            out = out + comb(w, i) * mode_action(piece, i - 2, u)
    return out


# ---------------------------------------------------------------------------
# classes in A(V) as polynomials in x = [omega]
# ---------------------------------------------------------------------------

def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y != 0:
                out[i + j] += x * y
    return out


def _poly_trim(a: list[Fraction]) -> list[Fraction]:
    while len(a) > 1 and a[-1] == 0:
        a = a[:-1]
    return a


def class_polynomial(vec: VermaVector) -> list[Fraction]:
    """[vec] in A(V) = Q[x], coefficients ascending in x.

    Applies [L(-M) b] = (-1)^M ((M-1)x + wt b)[b] factor by factor from the
    left of each PBW monomial.
    """
    _require_vacuum(vec)
    acc = [Fraction(0)]
    for mu, co in vec.entries.items():
        poly = [co]
        for idx, m_part in enumerate(mu):
            wt_b = sum(mu[idx + 1:])
            sign = -1 if m_part % 2 else 1
            poly = _poly_mul(poly, [sign * Fraction(wt_b), sign * Fraction(m_part - 1)])
        width = max(len(acc), len(poly))
        acc = [(acc[i] if i < len(acc) else Fraction(0)) + (poly[i] if i < len(poly) else Fraction(0))
               for i in range(width)]
    return _poly_trim(acc)


# ---------------------------------------------------------------------------
# direct truncated picture of O(V)
# ---------------------------------------------------------------------------

class OSpace:
    """Truncated span of O(V) inside the irreducible vacuum algebra L(c,0).

    Generators o(a, u) are included once their top level l(a)+l(u)+1 fits
    under the truncation; quotient_dims[T] is dim L(c,0)_{<=T} modulo the
    generators available by level T, so a stabilizing tail is visible and a
    too-small truncation shows up honestly as a larger dimension.
    """

    def __init__(self, c: _RationalLike, trunc: int):
        self.c = _frac(c)
        self.trunc = trunc
        self._coords = [virasoro.level_coordinates(self.c, 0, l, vacuum=True)
                        for l in range(trunc + 1)]
        self.module_dims = [lc.dim for lc in self._coords]
        basis = [lc.basis for lc in self._coords]
        gens_by_top: dict[int, list[VermaVector]] = {}
        for la in range(2, trunc + 1):
            for mu in basis[la]:
                a = virasoro.verma_monomial(self.c, 0, mu, vacuum=True)
                for lu in range(0, trunc - la):
                    for nu in basis[lu]:
                        u = virasoro.verma_monomial(self.c, 0, nu, vacuum=True)
                        gens_by_top.setdefault(la + lu + 1, []).append(o_elem(a, u))
        self._span = RowSpan()
        self.quotient_dims: list[int] = []
        total = 0
        for top in range(trunc + 1):
            total += self.module_dims[top]
            for w in gens_by_top.get(top, []):
                self._span.add(self.coords(w))
            self.quotient_dims.append(total - self._span.rank)

    @property
    def rank(self) -> int:
        return self._span.rank

    def coords(self, vec: VermaVector) -> dict[tuple[int, int], Fraction]:
        """Concatenated irreducible coordinates keyed by (level, index)."""
        out: dict[tuple[int, int], Fraction] = {}
        for lvl, piece in vec.level_components().items():
            if lvl > self.trunc:
                raise ValueError(f"vector reaches level {lvl}, truncation is {self.trunc}")
            for i, co in enumerate(self._coords[lvl].coords(piece)):
                if co != 0:
                    out[(lvl, i)] = co
        return out

    def reduce(self, vec: VermaVector) -> dict[tuple[int, int], Fraction]:
        return self._span.reduce(self.coords(vec))

    def contains(self, vec: VermaVector) -> bool:
        return not self.reduce(vec)

    def quotient_basis(self, level_cap: int | None = None) -> list[tuple[int, int]]:
        """Non-pivot coordinate keys: a basis of the truncated quotient."""
        cap = self.trunc if level_cap is None else level_cap
        pivots = self._span.pivot_keys
        keys = []
        for lvl in range(cap + 1):
            for i in range(self.module_dims[lvl]):
                if (lvl, i) not in pivots:
                    keys.append((lvl, i))
        return keys

    def x_matrix(self, level_cap: int) -> tuple[list[tuple[int, int]], list[list[Fraction]]]:
        """Matrix of multiplication by [omega] on the truncated quotient.

        Needs every quotient basis key at level <= level_cap and the images
        to stay inside the same key set; raises if the truncation is too
        tight for that closure.
        """
        keys = self.quotient_basis()
        if any(lvl > level_cap for lvl, _ in keys):
            raise ValueError("quotient basis reaches above level_cap; raise the truncation")
        omega = virasoro.verma_monomial(self.c, 0, (2,), vacuum=True)
        index = {k: t for t, k in enumerate(keys)}
        cols: list[list[Fraction]] = []
        for lvl, i in keys:
            rep = virasoro.verma_monomial(self.c, 0, self._coords[lvl].basis[i], vacuum=True)
            red = self._span.reduce(self.coords(a_dot_u(omega, rep)))
            col = [Fraction(0)] * len(keys)
            for key, co in red.items():
                if key not in index:
                    raise ValueError("omega action leaves the truncated quotient; raise the truncation")
                col[index[key]] = co
            cols.append(col)
        matrix = [[cols[j][i] for j in range(len(keys))] for i in range(len(keys))]
        return keys, matrix


def o_space(c: _RationalLike, trunc: int) -> OSpace:
    """Truncated O(V) span for central charge c; see OSpace."""
    return OSpace(c, trunc)


# ---------------------------------------------------------------------------
# the Zhu polynomial of a minimal model
# ---------------------------------------------------------------------------

def _monic(poly: list[Fraction]) -> tuple[Fraction, ...]:
    poly = _poly_trim(list(poly))
    lead = poly[-1]
    if lead == 0:
        return (Fraction(0),)
    return tuple(co / lead for co in poly)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def _poly_eval(poly: tuple[Fraction, ...], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for co in reversed(poly):
        acc = acc * x + co
    return acc


def _deflate(poly: list[Fraction], root: Fraction) -> list[Fraction]:
    """Divide by (x - root); assumes root is exact."""
    out = [Fraction(0)] * (len(poly) - 1)
    carry = poly[-1]
    for i in range(len(poly) - 2, -1, -1):
        out[i] = carry
        carry = poly[i] + carry * root
    if carry != 0:
        raise ValueError("not a root")
    return out


def rational_roots(poly: tuple[Fraction, ...]) -> tuple[list[tuple[Fraction, int]], int]:
    """All rational roots with multiplicity, plus the degree of the rootless rest."""
    work = _poly_trim(list(poly))
    roots: dict[Fraction, int] = {}
    while len(work) > 1:
        while work[0] == 0:
            roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
            work = work[1:]
            if len(work) == 1:
                return sorted(roots.items()), 0
        denom = 1
        for co in work:
            denom = denom * co.denominator // gcd(denom, co.denominator)
        ints = [int(co * denom) for co in work]
        found = None
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if _poly_eval(tuple(work), cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots[found] = roots.get(found, 0) + 1
        work = _deflate(work, found)
    return sorted(roots.items()), len(work) - 1


@dataclass(frozen=True)
class ZhuPoly:
    """Monic image of the first vacuum singular vector in A(V) = Q[x]."""

    m: int
    c: Fraction
    singular_level: int
    trunc: int
    coeffs: tuple[Fraction, ...]                 # ascending, monic
    stabilization: dict[int, tuple[Fraction, ...]]
    roots: tuple[tuple[Fraction, int], ...]
    complete: bool                               # True if the polynomial split over Q

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def stabilized(self) -> bool:
        vals = list(self.stabilization.values())
        return all(v == vals[0] for v in vals)

    def root_set(self) -> tuple[Fraction, ...]:
        return tuple(r for r, _ in self.roots)


def _find_vacuum_singular(c: Fraction, max_level: int = 40) -> tuple[int, VermaVector]:
    """First level >= 2 carrying a highest-weight vector in L(c,0)-to-be."""
    for level in range(2, max_level + 1):
        found = virasoro.singular_vectors(c, 0, level, vacuum=True)
        if found:
            if len(found) != 1:
                raise AssertionError(f"expected one singular vector at level {level}")
            return level, found[0]
    raise ValueError(f"no vacuum singular vector up to level {max_level}")


def _ideal_min_poly(alpha: VermaVector, level: int, trunc: int) -> tuple[Fraction, ...]:
    """Minimal monic polynomial in the span of descendant classes of alpha.

    Spans [L(-mu) alpha] over all partitions mu with level + |mu| <= trunc;
    every such class is a polynomial multiple of [alpha], so the minimum
    degree element of the span is the stabilized generator.
    """
    span = RowSpan()
    for extra in range(0, trunc - level + 1):
        for mu in virasoro.partitions_of(extra):
            vec = alpha
            for part in reversed(mu):
                vec = l_action(-part, vec)
            poly = class_polynomial(vec)
            span.add({i: co for i, co in enumerate(poly) if co != 0})
    if span.rank == 0:
        raise AssertionError("descendant classes span nothing")
    best_pivot = min(span.pivot_keys)
    row = span.pivot_row(best_pivot)
    out = [Fraction(0)] * (best_pivot + 1)
    for i, co in row.items():
        out[i] = co
    return tuple(out)


def zhu_poly(m: int, trunc: int | None = None) -> ZhuPoly:
    """Zhu polynomial of the (m+2, m+3) minimal model central charge.

    Finds the first vacuum singular vector by exact kernel search, reduces
    its class to a monic polynomial, and reports the minimal polynomial of
    the truncated ideal span at trunc and trunc+2 so stabilization is
    checkable. The sorted distinct roots reproduce the Kac weight table.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    c = minimal_model(m).c
    level, alpha = _find_vacuum_singular(c)
    if trunc is None:
        trunc = level + 4
    if trunc < level:
        raise ValueError(f"truncation {trunc} is below the singular level {level}")
    g = _monic(class_polynomial(alpha))
    stab = {t: _ideal_min_poly(alpha, level, t) for t in (trunc, trunc + 2)}
    roots, rest = rational_roots(g)
    return ZhuPoly(m, c, level, trunc, g, stab, tuple(roots), rest == 0)
