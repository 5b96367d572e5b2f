"""Highest-weight Virasoro modules in exact rational arithmetic.

Conventions:

* [L(m), L(n)] = (m-n) L(m+n) + (c/12)(m^3 - m) delta_{m+n,0}.
* A Verma vector is a finite Q-linear combination of PBW monomials
  L(-n_1)...L(-n_k) v_h with n_1 >= ... >= n_k >= 1, stored as a map from
  the partition (n_1, ..., n_k) to its coefficient.
* Partitions are ordered reverse-lexicographically, largest parts first:
  at level 4 the order is (4), (3,1), (2,2), (2,1,1), (1,1,1,1).
* vacuum=True means the module is M(c,0)/<L(-1)1>, the universal vacuum
  module: partitions containing a part 1 are zero there, so its PBW basis
  uses partitions with all parts >= 2.

The contravariant (Shapovalov) form has <v_h, v_h> = 1 and adjoint
L(n)^+ = L(-n). Gram matrix ranks give the graded dimensions of the
irreducible quotient, kernels at the right levels expose singular vectors,
and the induced coordinates on the irreducible quotient are what the Zhu
algebra, cofiniteness, and modular ODE layers compute in.

mode_action implements the modes a(n) of a vacuum vector a = L(-m_1)... 1 on
any module in the same central charge, through the associativity formula

    (a(m)b)(r) = sum_i (-1)^i C(m,i) [a(m-i) b(r+i) - (-1)^m b(m+r-i) a(i)],

peeled one L(-M) at a time with omega(n) = L(n-1). On bounded-below modules
every sum is finite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import linalg

Partition = tuple[int, ...]

_RationalLike = Fraction | int


def _frac(x: _RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@lru_cache(maxsize=None)
def partitions_of(n: int, min_part: int = 1, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of n with parts in [min_part, max_part], reverse-lex order."""
    if n < 0:
        return ()
    if n == 0:
        return ((),)
    top = n if max_part is None else min(max_part, n)
    out: list[Partition] = []
    for head in range(top, min_part - 1, -1):
        for rest in partitions_of(n - head, min_part, head):
            out.append((head,) + rest)
    return tuple(out)


# ---------------------------------------------------------------------------
# minimal model data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MinimalModelData:
    """Central charge and conformal weight table of the (m+2, m+3) minimal model."""

    m: int
    c: Fraction
    weights: dict[tuple[int, int], Fraction] = field(compare=False)

    def weight(self, r: int, s: int) -> Fraction:
        return self.weights[(r, s)]

    def distinct_weights(self) -> tuple[Fraction, ...]:
        return tuple(sorted(set(self.weights.values())))


def minimal_model(m: int) -> MinimalModelData:
    """Unitary series member with c = 1 - 6/((m+2)(m+3)), m >= 1.

    Weights h_{r,s} = (((m+3)r - (m+2)s)^2 - 1) / (4(m+2)(m+3)) over the
    fundamental domain 1 <= s <= r <= m+1.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    p, q = m + 2, m + 3
    c = 1 - Fraction(6, p * q)
    weights: dict[tuple[int, int], Fraction] = {}
    for r in range(1, m + 2):
        for s in range(1, r + 1):
            weights[(r, s)] = Fraction((q * r - p * s) ** 2 - 1, 4 * p * q)
    return MinimalModelData(m, c, weights)


# ---------------------------------------------------------------------------
# Verma vectors
# ---------------------------------------------------------------------------

@dataclass
class VermaVector:
    """Element of a highest-weight module, keyed by PBW partitions."""

    c: Fraction
    h: Fraction
    entries: dict[Partition, Fraction]
    vacuum: bool = False

    def __post_init__(self):
        self.c = _frac(self.c)
        self.h = _frac(self.h)
        self.entries = {mu: _frac(co) for mu, co in self.entries.items() if co != 0}

    def _check(self, other: "VermaVector") -> None:
        if (self.c, self.h, self.vacuum) != (other.c, other.h, other.vacuum):
            raise ValueError("vectors live in different modules")

    def __add__(self, other):
        if not isinstance(other, VermaVector):
            return NotImplemented
        self._check(other)
        out = dict(self.entries)
        for mu, co in other.entries.items():
            new = out.get(mu, Fraction(0)) + co
            if new == 0:
                out.pop(mu, None)
            else:
                out[mu] = new
        return VermaVector(self.c, self.h, out, self.vacuum)

    def __neg__(self):
        return VermaVector(self.c, self.h, {mu: -co for mu, co in self.entries.items()}, self.vacuum)

    def __sub__(self, other):
        if not isinstance(other, VermaVector):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        s = _frac(scalar)
        if s == 0:
            return VermaVector(self.c, self.h, {}, self.vacuum)
        return VermaVector(self.c, self.h, {mu: co * s for mu, co in self.entries.items()}, self.vacuum)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, VermaVector):
            return NotImplemented
        return (self.c, self.h, self.vacuum, self.entries) == (other.c, other.h, other.vacuum, other.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def coefficient(self, mu: Partition) -> Fraction:
        return self.entries.get(tuple(mu), Fraction(0))

    def level_components(self) -> dict[int, "VermaVector"]:
        """Split into homogeneous pieces keyed by level = |partition|."""
        split: dict[int, dict[Partition, Fraction]] = {}
        for mu, co in self.entries.items():
            split.setdefault(sum(mu), {})[mu] = co
        return {lvl: VermaVector(self.c, self.h, part, self.vacuum)
                for lvl, part in sorted(split.items())}

    def level(self) -> int:
        """Level of a homogeneous vector (the zero vector has level 0)."""
        comps = self.level_components()
        if len(comps) > 1:
            raise ValueError(f"vector is not homogeneous: levels {sorted(comps)}")
        return next(iter(comps), 0)

    def __repr__(self):
        terms = ", ".join(f"{mu}: {co}" for mu, co in sorted(self.entries.items(), reverse=True))
        tag = " vacuum" if self.vacuum else ""
        return f"VermaVector(c={self.c}, h={self.h}{tag}, {{{terms}}})"


def highest_weight_vector(c: _RationalLike, h: _RationalLike, vacuum: bool = False) -> VermaVector:
    return VermaVector(_frac(c), _frac(h), {(): Fraction(1)}, vacuum)


def verma_monomial(c: _RationalLike, h: _RationalLike, mu: Partition, vacuum: bool = False) -> VermaVector:
    mu = tuple(mu)
    if any(mu[i] < mu[i + 1] for i in range(len(mu) - 1)) or any(p < 1 for p in mu):
        raise ValueError(f"{mu} is not a weakly decreasing positive partition")
    if vacuum and 1 in mu:
        raise ValueError("part 1 is zero in the vacuum module")
    return VermaVector(_frac(c), _frac(h), {mu: Fraction(1)}, vacuum)


# ---------------------------------------------------------------------------
# the L(n) action
# ---------------------------------------------------------------------------

_Terms = tuple[tuple[Partition, Fraction], ...]


def _acc(out: dict[Partition, Fraction], mu: Partition, co: Fraction) -> None:
    new = out.get(mu, Fraction(0)) + co
    if new == 0:
        out.pop(mu, None)
    else:
        out[mu] = new


@lru_cache(maxsize=None)
def _lower(m: int, mu: Partition) -> _Terms:
    """Normal ordering of L(-m) L(-mu) v as a PBW combination; pure combinatorics."""
    if not mu or m >= mu[0]:
        return (((m,) + mu, Fraction(1)),)
    head, rest = mu[0], mu[1:]
    out: dict[Partition, Fraction] = {}
    for nu, co in _lower(m, rest):
        for nu2, co2 in _lower(head, nu):
            _acc(out, nu2, co * co2)
    for nu, co in _lower(m + head, rest):
        _acc(out, nu, (head - m) * co)
    return tuple(out.items())


@lru_cache(maxsize=None)
def _act(c: Fraction, h: Fraction, n: int, mu: Partition) -> _Terms:
    """L(n) L(-mu) v_h in the Verma module, for n >= 0."""
    if not mu:
        if n == 0 and h != 0:
            return (((), h),)
        return ()
    head, rest = mu[0], mu[1:]
    out: dict[Partition, Fraction] = {}
    for nu, co in _act(c, h, n, rest):
        for nu2, co2 in _lower(head, nu):
            _acc(out, nu2, co * co2)
    k = n - head
    sub = _act(c, h, k, rest) if k >= 0 else _lower(-k, rest)
    for nu, co in sub:
        _acc(out, nu, (n + head) * co)
    if n == head:
        central = Fraction(n ** 3 - n, 12) * c
        if central != 0:
            _acc(out, rest, central)
    return tuple(out.items())


def _strip_ones(entries: dict[Partition, Fraction]) -> dict[Partition, Fraction]:
    return {mu: co for mu, co in entries.items() if not mu or mu[-1] != 1}


def l_action(n: int, vec: VermaVector) -> VermaVector:
    """L(n) applied to a Verma vector (any sign of n)."""
    out: dict[Partition, Fraction] = {}
    for mu, co in vec.entries.items():
        terms = _lower(-n, mu) if n < 0 else _act(vec.c, vec.h, n, mu)
        for nu, co2 in terms:
            _acc(out, nu, co * co2)
    if vec.vacuum:
        out = _strip_ones(out)
    return VermaVector(vec.c, vec.h, out, vec.vacuum)


# ---------------------------------------------------------------------------
# modes of vacuum vectors on arbitrary modules
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _gbinom(m: int, i: int) -> Fraction:
    """Generalized binomial C(m, i) for integer m of any sign."""
    num = 1
    for t in range(i):
        num *= m - t
    return Fraction(num, factorial(i))


@lru_cache(maxsize=None)
def _mode(c: Fraction, h: Fraction, uvac: bool, mu: Partition, r: int, nu: Partition) -> _Terms:
    """Coefficients of a(r) u for a = L(-mu) 1 and u = L(-nu) v_h."""
    if not mu:
        return ((nu, Fraction(1)),) if r == -1 else ()
    M, b = mu[0], mu[1:]
    m_ = 1 - M
    sign_m = Fraction(-1 if m_ % 2 else 1)
    out: dict[Partition, Fraction] = {}
    imax = max(sum(nu) + sum(b) - 1 - r, sum(nu) + 1, 0)
    for i in range(imax + 1):
        coeff = _gbinom(m_, i)
        if i % 2:
            coeff = -coeff
        if coeff == 0:
            continue
        # first piece: L(-M-i) applied to b(r+i) u
        for nu1, co1 in _mode(c, h, uvac, b, r + i, nu):
            for nu2, co2 in _lower(M + i, nu1):
                _acc(out, nu2, coeff * co1 * co2)
        # second piece: -(-1)^(1-M) b(1-M+r-i) applied to L(i-1) u
        k = i - 1
        lu = _lower(1, nu) if k < 0 else _act(c, h, k, nu)
        for nu1, co1 in lu:
            if uvac and nu1 and nu1[-1] == 1:
                continue
            for nu2, co2 in _mode(c, h, uvac, b, 1 - M + r - i, nu1):
                _acc(out, nu2, -sign_m * coeff * co1 * co2)
    if uvac:
        out = _strip_ones(out)
    return tuple(out.items())


def mode_action(a: VermaVector, n: int, u: VermaVector) -> VermaVector:
    """a(n) u for a vacuum-module vector a and a module vector u, same c.

    In the square-bracket picture the same routine computes a[n] u, since the
    square-bracket structure constants on identically labeled PBW monomials
    agree with the round-bracket ones.
    """
    if not a.vacuum or a.h != 0:
        raise ValueError("modes are defined for vectors of the vacuum vertex algebra")
    if a.c != u.c:
        raise ValueError("central charges differ")
    out: dict[Partition, Fraction] = {}
    for mu, ca in a.entries.items():
        for nu, cu in u.entries.items():
            for rho, co in _mode(u.c, u.h, u.vacuum, mu, n, nu):
                _acc(out, rho, ca * cu * co)
    return VermaVector(u.c, u.h, out, u.vacuum)


# ---------------------------------------------------------------------------
# Gram matrices, singular vectors, graded dimensions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GramMatrix:
    """Contravariant form on one level, over the reverse-lex PBW basis."""

    c: Fraction
    h: Fraction
    level: int
    vacuum: bool
    basis: tuple[Partition, ...]
    entries: tuple[tuple[Fraction, ...], ...]

    def rank(self) -> int:
        return linalg.rank_dense(self.entries) if self.basis else 0

    def kernel(self) -> list[list[Fraction]]:
        if not self.basis:
            return []
        return linalg.nullspace_dense(self.entries, len(self.basis))


def _basis_at(level: int, vacuum: bool) -> tuple[Partition, ...]:
    return partitions_of(level, min_part=2 if vacuum else 1)


@lru_cache(maxsize=None)
def _raise_to_scalar(c: Fraction, h: Fraction, mu: Partition, nu: Partition) -> Fraction:
    """<L(-mu) v, L(-nu) v> by peeling raising operators off the left of mu."""
    vec: _Terms = ((nu, Fraction(1)),)
    for m in mu:
        out: dict[Partition, Fraction] = {}
        for rho, co in vec:
            for rho2, co2 in _act(c, h, m, rho):
                _acc(out, rho2, co * co2)
        vec = tuple(out.items())
    return dict(vec).get((), Fraction(0))


@lru_cache(maxsize=None)
def gram_matrix(c: _RationalLike, h: _RationalLike, level: int, vacuum: bool = False) -> GramMatrix:
    c, h = _frac(c), _frac(h)
    basis = _basis_at(level, vacuum)
    n = len(basis)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            val = _raise_to_scalar(c, h, basis[i], basis[j])
            rows[i][j] = val
            rows[j][i] = val
    return GramMatrix(c, h, level, vacuum, basis, tuple(tuple(r) for r in rows))


def graded_dims(c: _RationalLike, h: _RationalLike, max_level: int, vacuum: bool = False) -> list[int]:
    """Dimensions of the irreducible quotient L(c,h) at levels 0..max_level.

    Computed as Gram ranks, which quotient by the full radical whether or not
    the vacuum shortcut basis is in use.
    """
    return [gram_matrix(c, h, lvl, vacuum).rank() for lvl in range(max_level + 1)]


def _action_rows(c: Fraction, h: Fraction, level: int, vacuum: bool,
                 basis: tuple[Partition, ...]) -> tuple[list[dict[int, Fraction]], int]:
    """Stacked matrices of L(1) and L(2) off one level, rows indexed by targets."""
    rows: list[dict[int, Fraction]] = []
    for n in (1, 2):
        targets = {mu: i for i, mu in enumerate(_basis_at(level - n, vacuum))}
        block: list[dict[int, Fraction]] = [dict() for _ in targets]
        for j, mu in enumerate(basis):
            for nu, co in _act(c, h, n, mu):
                if vacuum and nu and nu[-1] == 1:
                    continue
                block[targets[nu]][j] = co
        rows.extend(block)
    return rows, len(basis)


def singular_vectors(c: _RationalLike, h: _RationalLike, level: int,
                     vacuum: bool = False) -> list[VermaVector]:
    """Highest-weight vectors at the given level: joint kernel of L(1) and L(2).

    These span the fresh singular directions and lie inside the kernel of the
    level Gram matrix; each is normalized so its first nonzero coefficient in
    reverse-lex order (the pure L(-level) monomial when present) is 1. The
    returned vectors are checked to be annihilated by L(1) and L(2).
    """
    c, h = _frac(c), _frac(h)
    if level < 1:
        return []
    basis = _basis_at(level, vacuum)
    if not basis:
        return []
    rows, ncols = _action_rows(c, h, level, vacuum, basis)
    kernel = linalg.sparse_nullspace(rows, ncols)
    out: list[VermaVector] = []
    for ker in kernel:
        first = min(ker)  # reverse-lex order is the basis order
        inv = 1 / ker[first]
        vec = VermaVector(c, h, {basis[j]: co * inv for j, co in ker.items()}, vacuum)
        for n in (1, 2):
            if not l_action(n, vec).is_zero():
                raise AssertionError("kernel vector not annihilated by a raising mode")
        out.append(vec)
    return out


# ---------------------------------------------------------------------------
# coordinates on the irreducible quotient
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LevelCoordinates:
    """Coordinates of one graded piece of L(c,h).

    The class of a vector v is determined by the list of pairings
    <L(-mu) v_h, v> over the full PBW basis, i.e. by G v. basis holds the
    partitions whose classes were kept as a basis (greedy reverse-lex choice,
    Gram columns of increasing rank); coords solves G v = sum beta_j G b_j.
    """

    c: Fraction
    h: Fraction
    level: int
    vacuum: bool
    full_basis: tuple[Partition, ...]
    basis: tuple[Partition, ...]
    _rows: tuple[int, ...]
    _inverse: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, vec: VermaVector) -> list[Fraction]:
        """Coordinates of [vec] in the chosen basis; vec must be homogeneous here."""
        if vec.entries and vec.level() != self.level:
            raise ValueError(f"vector has level {vec.level()}, coordinates are for level {self.level}")
        gram = gram_matrix(vec.c, vec.h, self.level, self.vacuum)
        idx = {mu: i for i, mu in enumerate(self.full_basis)}
        gv = [Fraction(0)] * len(self.full_basis)
        for mu, co in vec.entries.items():
            col = idx[mu]
            for i in range(len(self.full_basis)):
                gv[i] += gram.entries[i][col] * co
        return [sum((row[t] * gv[self._rows[t]] for t in range(self.dim)), Fraction(0))
                for row in self._inverse]


@lru_cache(maxsize=None)
def level_coordinates(c: _RationalLike, h: _RationalLike, level: int,
                      vacuum: bool = False) -> LevelCoordinates:
    c, h = _frac(c), _frac(h)
    gram = gram_matrix(c, h, level, vacuum)
    full = gram.basis
    span = linalg.RowSpan()
    kept: list[int] = []
    for j, mu in enumerate(full):
        col = {i: gram.entries[i][j] for i in range(len(full)) if gram.entries[i][j] != 0}
        if span.add(col):
            kept.append(j)
    if not kept:
        return LevelCoordinates(c, h, level, vacuum, full, (), (), ())
    m_cols = [[gram.entries[i][j] for j in kept] for i in range(len(full))]
    transpose = [[m_cols[i][t] for i in range(len(full))] for t in range(len(kept))]
    _, pivot_rows = linalg.rref_dense(transpose)
    square = [m_cols[i] for i in pivot_rows]
    k = len(kept)
    aug = [row + [Fraction(1 if i == j else 0) for j in range(k)] for i, row in enumerate(square)]
    red, pivots = linalg.rref_dense(aug)
    if pivots[:k] != list(range(k)):
        raise AssertionError("selected square minor is singular")
    inverse = tuple(tuple(red[i][k:]) for i in range(k))
    return LevelCoordinates(c, h, level, vacuum, full,
                            tuple(full[j] for j in kept), tuple(pivot_rows), inverse)


def irreducible_basis(c: _RationalLike, h: _RationalLike, max_level: int,
                      vacuum: bool = False) -> list[list[Partition]]:
    """Per level, partitions whose classes form a basis of L(c,h)_level."""
    return [list(level_coordinates(c, h, lvl, vacuum).basis) for lvl in range(max_level + 1)]


# ---------------------------------------------------------------------------
# cofiniteness quotients
# ---------------------------------------------------------------------------

def _module_flags(h: Fraction) -> bool:
    """The h = 0 module is the vacuum vertex algebra, where L(-1)1 = 0."""
    return h == 0


def _quotient_dims_from_images(c: Fraction, h: Fraction, max_level: int, uvac: bool,
                               images: list[VermaVector]) -> list[int]:
    by_level: dict[int, list[VermaVector]] = {}
    for w in images:
        if not w.is_zero():
            by_level.setdefault(w.level(), []).append(w)
    span = linalg.RowSpan()
    dims: list[int] = []
    total = 0
    for lvl in range(max_level + 1):
        coords = level_coordinates(c, h, lvl, uvac)
        total += coords.dim
        for w in by_level.get(lvl, []):
            vec = {(lvl, t): co for t, co in enumerate(coords.coords(w)) if co != 0}
            span.add(vec)
        dims.append(total - span.rank)
    return dims


def _cofiniteness_images(c: Fraction, h: Fraction, max_level: int, uvac: bool,
                         zero_modes: bool) -> list[VermaVector]:
    a_basis = irreducible_basis(c, 0, max_level, vacuum=True)
    u_basis = irreducible_basis(c, h, max_level, vacuum=uvac)
    images: list[VermaVector] = []
    for la in range(2, max_level + 1):
        for mu in a_basis[la]:
            a = verma_monomial(c, 0, mu, vacuum=True)
            for lu in range(0, max_level + 1):
                for nu in u_basis[lu]:
                    u = verma_monomial(c, h, nu, vacuum=uvac)
                    if la + lu + 1 <= max_level:
                        images.append(mode_action(a, -2, u))
                    if zero_modes and 0 <= la + lu - 1 <= max_level:
                        images.append(mode_action(a, 0, u))
    return images


def c2_quotient_dim(c: _RationalLike, h: _RationalLike, max_level: int) -> list[int]:
    """dim of L(c,h) / span{a(-2)u} truncated at levels 0..max_level.

    Entry N is the dimension of U_{<=N} modulo every a(-2)u whose level fits
    below N, with a running over a basis of L(c,0) and u over a basis of
    L(c,h); watching the list stabilize (or not) is the point.
    """
    c, h = _frac(c), _frac(h)
    uvac = _module_flags(h)
    images = _cofiniteness_images(c, h, max_level, uvac, zero_modes=False)
    return _quotient_dims_from_images(c, h, max_level, uvac, images)


def c20_quotient_dim(c: _RationalLike, h: _RationalLike, max_level: int) -> list[int]:
    """Square-bracket analogue of c2_quotient_dim with zero modes included.

    Quotients by both a[-2]u and a[0]u. On identically labeled PBW bases the
    square-bracket modes have the same structure constants as the round ones,
    so the a[-2] images coincide with the a(-2) ones; the a[0] images are the
    genuinely new directions.
    """
    c, h = _frac(c), _frac(h)
    uvac = _module_flags(h)
    images = _cofiniteness_images(c, h, max_level, uvac, zero_modes=True)
    return _quotient_dims_from_images(c, h, max_level, uvac, images)
