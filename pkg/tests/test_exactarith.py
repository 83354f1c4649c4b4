"""Exact arithmetic: Bernoulli numbers, characters, class numbers."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klingenfj.exactarith import (
    bernoulli,
    cohen_H,
    dirichlet_L_neg,
    divisors,
    factorize,
    fundamental_decomposition,
    gen_bernoulli,
    kronecker,
    moebius,
    sigma,
    zeta_neg,
)
from klingenfj.oracle import hurwitz_bruteforce


# -- Bernoulli numbers and zeta at negative integers ------------------------


def test_bernoulli_known_values():
    known = {
        0: Fraction(1),
        1: Fraction(-1, 2),
        2: Fraction(1, 6),
        4: Fraction(-1, 30),
        6: Fraction(1, 42),
        8: Fraction(-1, 30),
        10: Fraction(5, 66),
        12: Fraction(-691, 2730),
        3: Fraction(0),
        5: Fraction(0),
        11: Fraction(0),
    }
    for n, value in known.items():
        assert bernoulli(n) == value


def test_zeta_neg_from_bernoulli():
    # zeta_neg(k) = zeta(1 - k) = -B_k / k for even k >= 2
    assert zeta_neg(2) == Fraction(-1, 12)
    assert zeta_neg(4) == Fraction(1, 120)
    assert zeta_neg(12) == Fraction(691, 32760)
    for k in range(2, 30, 2):
        assert zeta_neg(k) == -bernoulli(k) / k


def test_zeta_neg_rejects_odd_and_small_arguments():
    for k in (0, 1, 3, -2):
        with pytest.raises(ValueError):
            zeta_neg(k)


# -- multiplicative machinery ------------------------------------------------


@given(st.integers(min_value=2, max_value=10**6))
def test_factorize_reconstructs(n):
    fac = factorize(n)
    assert math.prod(p**e for p, e in fac) == n
    assert all(e >= 1 for _, e in fac)
    primes = [p for p, _ in fac]
    assert primes == sorted(primes)
    for p in primes:
        assert all(p % q for q in range(2, math.isqrt(p) + 1))


@given(st.integers(min_value=1, max_value=5000))
def test_divisors_and_sigma(n):
    divs = divisors(n)
    assert divs == sorted(d for d in range(1, n + 1) if n % d == 0)
    for e in (0, 1, 3):
        assert sigma(e, n) == sum(d**e for d in divs)


@given(
    st.integers(min_value=1, max_value=3000),
    st.integers(min_value=1, max_value=3000),
)
def test_moebius_multiplicative(m, n):
    if math.gcd(m, n) == 1:
        assert moebius(m * n) == moebius(m) * moebius(n)


def test_moebius_square_vanishing():
    assert moebius(4) == 0 and moebius(12) == 0 and moebius(49 * 3) == 0
    assert moebius(1) == 1 and moebius(2) == -1 and moebius(6) == 1


# -- Kronecker symbol --------------------------------------------------------


@given(
    st.integers(min_value=-60, max_value=60),
    st.integers(min_value=1, max_value=400),
    st.integers(min_value=1, max_value=400),
)
def test_kronecker_completely_multiplicative(D, m, n):
    assert kronecker(D, m * n) == kronecker(D, m) * kronecker(D, n)


@given(st.integers(min_value=1, max_value=300))
def test_kronecker_minus_four_pattern(n):
    # the character mod 4: 0, +1, 0, -1 repeating
    expected = {0: 0, 1: 1, 2: 0, 3: -1}[n % 4]
    assert kronecker(-4, n) == expected


@given(st.integers(min_value=1, max_value=300))
def test_kronecker_five_is_legendre(n):
    # for prime 5, this is the quadratic-residue pattern mod 5
    expected = {0: 0, 1: 1, 2: -1, 3: -1, 4: 1}[n % 5]
    assert kronecker(5, n) == expected


# -- fundamental discriminants ----------------------------------------------


@given(st.integers(min_value=1, max_value=4000))
def test_fundamental_decomposition(N):
    D = -N
    if D % 4 not in (0, 1):
        with pytest.raises(ValueError):
            fundamental_decomposition(D)
        return
    D0, f = fundamental_decomposition(D)
    assert D0 * f * f == D
    assert f >= 1
    # D0 is itself a discriminant and square-free apart from the 4-part
    assert D0 % 4 in (0, 1)
    if D0 % 4 == 1:
        assert all(D0 % (p * p) for p in range(2, 64))
    else:
        quarter = D0 // 4
        assert quarter % 4 in (2, 3)
        assert all(quarter % (p * p) for p in range(3, 64, 2))


# -- class numbers -----------------------------------------------------------


def test_cohen_H_small_values():
    assert cohen_H(1, 0) == Fraction(-1, 12)
    assert cohen_H(1, 3) == Fraction(1, 3)
    assert cohen_H(1, 4) == Fraction(1, 2)
    assert cohen_H(1, 7) == 1
    assert cohen_H(1, 8) == 1
    assert cohen_H(1, 11) == 1
    assert cohen_H(1, 12) == Fraction(4, 3)
    assert cohen_H(1, 23) == 3


def test_cohen_H_vanishes_off_discriminants():
    for N in (1, 2, 5, 6, 9, 10, 13):
        assert cohen_H(1, N) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=120))
def test_cohen_H_matches_bruteforce(N):
    assert cohen_H(1, N) == hurwitz_bruteforce(N)


# -- L-values at non-positive integers ---------------------------------------


def test_dirichlet_L_known_values():
    # dirichlet_L_neg(n, D0) = L(1 - n, chi_{D0})
    assert dirichlet_L_neg(1, -4) == Fraction(1, 2)
    assert dirichlet_L_neg(1, -3) == Fraction(1, 3)
    # the trivial character gives the zeta values
    assert dirichlet_L_neg(1, 1) == Fraction(-1, 2)
    assert dirichlet_L_neg(12, 1) == zeta_neg(12)
    assert dirichlet_L_neg(3, 1) == 0  # zeta(-2) = 0


@given(st.sampled_from([-3, -4, -7, -8, -11, -15, -19, -20, -23, -24]))
def test_dirichlet_L_at_zero_counts_classes(D0):
    # L(0, chi_D) = 2 h(D) / w(D) for fundamental D < 0, which is the
    # Hurwitz class number of |D|; the oracle counts it directly
    assert dirichlet_L_neg(1, D0) == hurwitz_bruteforce(-D0)


def test_gen_bernoulli_parity():
    # chi_{-4} is odd, so B_{n,chi} vanishes for even n >= 2; chi_5 is
    # even, so it vanishes for odd n
    assert gen_bernoulli(2, -4) == 0 and gen_bernoulli(4, -4) == 0
    assert gen_bernoulli(3, 5) == 0 and gen_bernoulli(5, 5) == 0
    assert gen_bernoulli(1, -4) != 0 and gen_bernoulli(2, 5) != 0


def test_cohen_H_composite_formula_spot():
    # H(1, N) assembles L(0, chi_{D0}) with divisor corrections; pin one
    # composite case against a hand count: N = 27, D = -27 = -3 * 3^2
    assert fundamental_decomposition(-27) == (-3, 3)
    assert cohen_H(1, 27) == hurwitz_bruteforce(27)
