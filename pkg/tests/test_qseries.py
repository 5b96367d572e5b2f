"""Exact q-series arithmetic against classical number-theoretic facts.

The oracles here are independent of the implementation: pentagonal number
signs for eta, partition counts for 1/eta, divisor sums and Bernoulli
numbers for the Eisenstein series, the Gamma(1/4) evaluation of eta(i),
and the vanishing of the classical E_6 at the square lattice point.
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from traceform.qseries import (
    PuiseuxSeries,
    bernoulli,
    classical_eisenstein,
    eisenstein,
    eta,
    eta_power,
    read_series,
    serre_derivative,
    serre_derivative_iterated,
    sigma,
    write_series,
)


def q_poly(*coeffs):
    return PuiseuxSeries(0, [Fraction(c) for c in coeffs])


# ---------------------------------------------------------------------------
# arithmetic basics
# ---------------------------------------------------------------------------

def test_addition_aligns_different_leading_exponents():
    f = PuiseuxSeries(Fraction(1, 2), [1, 2, 3])
    g = PuiseuxSeries(Fraction(3, 2), [5, 7])
    total = f + g
    assert total.lam == Fraction(1, 2)
    assert total.coefficient(Fraction(1, 2)) == 1
    assert total.coefficient(Fraction(3, 2)) == 7
    assert total.coefficient(Fraction(5, 2)) == 10


def test_multiplication_is_exact_cauchy_product():
    f = q_poly(1, 1)          # 1 + q
    g = q_poly(1, -1, 1)      # 1 - q + q^2
    assert (f * g).coeffs[:2] == (Fraction(1), Fraction(0))
    # 1 + q^3 in a window of length 2: only the first two slots are retained
    assert (f * g).terms == 2


def test_truncation_window_is_min_of_the_operands():
    f = q_poly(1, 2, 3, 4, 5)
    g = q_poly(1, 1)
    assert (f + g).terms == 2
    assert (f * g).terms == 2


def test_structural_equality_ignores_the_weight_tag():
    bare = q_poly(1, 5)
    tagged = PuiseuxSeries(0, [1, 5], weight=4)
    assert bare == tagged
    assert hash(bare) == hash(tagged)


def test_weight_tag_survives_addition_only_when_it_matches():
    e4 = eisenstein(4, 6)
    assert (e4 + e4).weight == 4
    assert (e4 * e4).weight == 8
    assert (e4 + q_poly(1, 2, 3, 4, 5, 6)).weight is None
    assert (e4 + eisenstein(6, 6)).weight is None


def test_shifted_moves_the_leading_exponent():
    f = PuiseuxSeries(Fraction(1, 3), [1, 2])
    g = f.shifted(Fraction(1, 6))
    assert g.lam == Fraction(1, 2)
    assert g.coeffs == f.coeffs


def test_theta_multiplies_by_the_exponent():
    f = PuiseuxSeries(Fraction(1, 8), [1, 4, 0, 2])
    tf = f.theta()
    assert tf.coefficient(Fraction(1, 8)) == Fraction(1, 8)
    assert tf.coefficient(Fraction(9, 8)) == 4 * Fraction(9, 8)
    assert tf.coefficient(Fraction(25, 8)) == 2 * Fraction(25, 8)


@given(st.lists(st.fractions(max_denominator=6), min_size=1, max_size=6),
       st.lists(st.fractions(max_denominator=6), min_size=1, max_size=6))
@settings(max_examples=50, deadline=None)
def test_theta_satisfies_the_leibniz_rule(a, b):
    f = PuiseuxSeries(0, a)
    g = PuiseuxSeries(0, b)
    assert (f * g).theta() == f.theta() * g + f * g.theta()


def test_integer_power_matches_repeated_multiplication():
    f = q_poly(2, 1, -3, 5)
    assert f ** 3 == f * f * f
    assert f.pow_rational(3) == f * f * f


@given(st.integers(min_value=-4, max_value=4), st.integers(min_value=1, max_value=4),
       st.lists(st.fractions(max_denominator=4), min_size=0, max_size=4))
@settings(max_examples=40, deadline=None)
def test_rational_powers_add_exponents(num, den, tail):
    f = PuiseuxSeries(0, [Fraction(1)] + tail)
    r = Fraction(num, den)
    lhs = f.pow_rational(r) * f.pow_rational(1 - r)
    assert lhs == f.truncate(lhs.terms)


def test_pow_rational_rejects_bad_leading_coefficients():
    with pytest.raises(ValueError):
        PuiseuxSeries(0, [0, 1]).pow_rational(Fraction(1, 2))
    with pytest.raises(ValueError):
        q_poly(2, 1).pow_rational(Fraction(1, 2))


# ---------------------------------------------------------------------------
# number-theoretic building blocks
# ---------------------------------------------------------------------------

def test_bernoulli_numbers_match_the_classical_table():
    table = {0: Fraction(1), 1: Fraction(-1, 2), 2: Fraction(1, 6),
             4: Fraction(-1, 30), 6: Fraction(1, 42), 8: Fraction(-1, 30),
             10: Fraction(5, 66), 12: Fraction(-691, 2730)}
    for n, want in table.items():
        assert bernoulli(n) == want
    for n in (3, 5, 7, 9, 11):
        assert bernoulli(n) == 0


def test_divisor_sums_match_direct_enumeration():
    for k in (1, 3, 5):
        for n in range(1, 30):
            want = sum(d ** k for d in range(1, n + 1) if n % d == 0)
            assert sigma(k, n) == want


# ---------------------------------------------------------------------------
# Eisenstein series
# ---------------------------------------------------------------------------

def test_eisenstein_constant_terms():
    assert eisenstein(2, 3).coefficient(0) == Fraction(-1, 12)
    assert eisenstein(4, 3).coefficient(0) == Fraction(1, 720)
    assert eisenstein(6, 3).coefficient(0) == Fraction(-1, 30240)


def test_classical_eisenstein_low_order_coefficients():
    e2 = classical_eisenstein(2, 5)
    assert [e2.coefficient(n) for n in range(5)] == [1, -24, -72, -96, -168]
    e4 = classical_eisenstein(4, 4)
    assert [e4.coefficient(n) for n in range(4)] == [1, 240, 2160, 6720]
    e6 = classical_eisenstein(6, 3)
    assert [e6.coefficient(n) for n in range(3)] == [1, -504, -16632]


def test_two_eisenstein_normalizations_differ_by_a_bernoulli_factor():
    for k in (2, 4, 6, 8, 10):
        scale = -bernoulli(k) / math.factorial(k)
        assert eisenstein(k, 12) == classical_eisenstein(k, 12) * scale


def test_ramanujan_derivative_identities():
    n = 14
    e2, e4, e6 = eisenstein(2, n), eisenstein(4, n), eisenstein(6, n)
    assert e2.theta() == e4 * 5 - e2 * e2
    assert e4.theta() == e6 * 14 - (e2 * e4) * 4
    assert e6.theta() == e4 * e4 * Fraction(60, 7) - (e2 * e6) * 6


def test_higher_eisenstein_series_are_polynomials_in_e4_and_e6():
    n = 12
    e4, e6 = eisenstein(4, n), eisenstein(6, n)
    assert eisenstein(8, n) == e4 * e4 * Fraction(3, 7)
    assert eisenstein(10, n) == e4 * e6 * Fraction(5, 11)
    assert eisenstein(12, n) == e6 * e6 * Fraction(25, 143) + (e4 ** 3) * Fraction(18, 143)


def test_serre_derivative_sends_e4_and_e6_to_modular_forms():
    n = 12
    e4, e6 = eisenstein(4, n), eisenstein(6, n)
    assert serre_derivative(e4, 4) == eisenstein(6, n) * 14
    assert serre_derivative(e6, 6) == e4 * e4 * Fraction(60, 7)
    # twice-iterated derivative of E4 lands in weight 8
    twice = serre_derivative_iterated(e4, 4, 2)
    assert twice == serre_derivative(serre_derivative(e4, 4), 6)


# ---------------------------------------------------------------------------
# eta and its rational powers
# ---------------------------------------------------------------------------

def test_eta_expansion_follows_the_pentagonal_pattern():
    f = eta(60)
    signs = {}
    for k in range(-6, 7):
        signs[k * (3 * k - 1) // 2] = (-1) ** k
    for n in range(60):
        want = Fraction(signs.get(n, 0))
        got = f.coefficient(Fraction(1, 24) + n)
        assert got == want, f"eta coefficient at offset {n}"


def test_inverse_eta_counts_partitions():
    p = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135]
    f = eta_power(-1, len(p))
    assert f.lam == Fraction(-1, 24)
    assert list(f.coeffs) == [Fraction(x) for x in p]


def test_eta_powers_multiply_like_exponents():
    n = 12
    fifth = eta_power(Fraction(1, 5), n)
    rest = eta_power(Fraction(4, 5), n)
    assert fifth * rest == eta(n)
    assert fifth.lam == Fraction(1, 120)
    assert rest.lam == Fraction(1, 30)


def test_eta_power_agrees_with_pow_rational_of_eta():
    n = 10
    assert eta_power(Fraction(2, 7), n) == eta(n).pow_rational(Fraction(2, 7))


def test_eta_at_the_square_lattice_point_hits_gamma_quarter():
    # eta(i) = Gamma(1/4) / (2 pi^(3/4))
    got, err = eta(12).eval_numeric(1j)
    want = math.gamma(0.25) / (2 * math.pi ** 0.75)
    assert abs(got - want) < 1e-12
    assert err < 1e-12
    assert abs(got.imag) < 1e-15


def test_classical_e6_vanishes_at_the_square_lattice_point():
    got, _ = classical_eisenstein(6, 40).eval_numeric(1j)
    assert abs(got) < 1e-10


# ---------------------------------------------------------------------------
# cache files
# ---------------------------------------------------------------------------

def test_series_cache_round_trip(tmp_path):
    f = eta_power(Fraction(3, 11), 9)
    path = tmp_path / "probe.series"
    write_series(path, f)
    g = read_series(path)
    assert g == f
    assert g.weight == f.weight
    assert g.lam == f.lam


def test_cache_rejects_tampered_payload(tmp_path):
    path = tmp_path / "probe.series"
    write_series(path, q_poly(1, 2, 3))
    body = path.read_text().replace("3", "x", 1)
    path.write_text(body)
    with pytest.raises(ValueError):
        read_series(path)
