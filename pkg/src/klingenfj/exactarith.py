"""Exact rational arithmetic: Bernoulli numbers, zeta special values,
divisor sums, Kronecker symbols, generalized Bernoulli numbers and
Cohen's H function.

Conventions fixed here once and for all:

* ``Rational`` is :class:`fractions.Fraction` (always lowest terms,
  denominator > 0).
* Bernoulli numbers use B_1 = -1/2.  Only even indices are consumed
  downstream, so the choice is inert, but it is asserted in the tests.
* ``cohen_H(r, N)`` follows Cohen's normalization: H(r, 0) = zeta(1-2r),
  H(r, N) = 0 unless (-1)^r N = 0 or 1 mod 4, and for N > 0 the value is
  L(1-r, chi_D0) * sum_{d | f} mu(d) chi_D0(d) d^{r-1} sigma_{2r-1}(f/d)
  where (-1)^r N = D0 f^2 with D0 a fundamental discriminant.

Everything in this module is a pure function of its arguments; caches are
keyed by the full argument tuple and never observable to callers.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, isqrt

import mpmath

Rational = Fraction

__all__ = [
    "Rational",
    "bernoulli",
    "zeta_neg",
    "sigma",
    "kronecker",
    "cohen_H",
    "divisors",
    "factorize",
    "moebius",
    "gen_bernoulli",
    "dirichlet_L_neg",
    "fundamental_decomposition",
]


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n as an exact Fraction, convention B_1 = -1/2."""
    if n < 0:
        raise ValueError("Bernoulli index must be >= 0")
    p, q = mpmath.bernfrac(n)  # mpmath uses B_1 = -1/2 as well
    return Fraction(int(p), int(q))


def zeta_neg(k: int) -> Fraction:
    """zeta(1-k) = -B_k / k for even k >= 2, exactly."""
    if k < 2 or k % 2:
        raise ValueError("zeta_neg expects even k >= 2, got %r" % (k,))
    return -bernoulli(k) / k


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as a sorted tuple of (p, e) pairs."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out = []
    m = n
    for p in (2, 3):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            out.append((p, e))
    p = 5
    step = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            out.append((p, e))
        p += step
        step = 6 - step  # 5, 7, 11, 13, ... wheel
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    """All positive divisors of n >= 1, sorted."""
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**j for d in ds for j in range(e + 1)]
    return sorted(ds)


def moebius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def sigma(e: int, n: int) -> int:
    """Divisor power sum sigma_e(n) = sum_{d | n} d^e."""
    if n < 1:
        raise ValueError("sigma expects n >= 1")
    out = 1
    for p, a in factorize(n):
        if e == 0:
            out *= a + 1
        else:
            out *= (p ** (e * (a + 1)) - 1) // (p**e - 1)
    return out


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D/n), standard conventions.

    Completely multiplicative in n; (D/2) is 0 for even D and
    (-1)^((D^2-1)/8) for odd D; (D/-1) is -1 iff D < 0; (D/0) is 1 iff
    D = +-1.
    """
    if n == 0:
        return 1 if D in (1, -1) else 0
    out = 1
    if n < 0:
        n = -n
        if D < 0:
            out = -out
    # factor out twos
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            out = -out
    # now n odd positive: Jacobi symbol (D/n) by reciprocity
    a = D % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                out = -out
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            out = -out
        a %= n
    return out if n == 1 else 0


def _bernoulli_poly(n: int, x: Fraction) -> Fraction:
    """Bernoulli polynomial B_n(x) = sum_j C(n,j) B_j x^(n-j)."""
    return sum(
        (comb(n, j) * bernoulli(j) * x ** (n - j) for j in range(n + 1)),
        Fraction(0),
    )


def fundamental_decomposition(D: int) -> tuple[int, int]:
    """Write the discriminant D (= 0 or 1 mod 4, D != 0) as D0 * f^2 with
    D0 a fundamental discriminant (possibly D0 = 1) and f >= 1."""
    if D == 0 or D % 4 in (2, 3):
        raise ValueError("not a discriminant: %r" % (D,))
    sign = 1 if D > 0 else -1
    f = 1
    for p, e in factorize(abs(D)):
        f *= p ** (e // 2)
    d = D // (f * f)
    # d is the squarefree-ish core; fix up so D0 = 0 or 1 mod 4
    if d % 4 in (2, 3):
        d *= 4
        f //= 2
    assert d * f * f == D and (d % 4 in (0, 1))
    assert sign == (1 if d > 0 else -1)
    return d, f


@lru_cache(maxsize=None)
def gen_bernoulli(n: int, D0: int) -> Fraction:
    """Generalized Bernoulli number B_{n, chi} for the quadratic character
    chi = kronecker(D0, .) of conductor F = |D0| (D0 fundamental or 1):
    B_{n,chi} = F^{n-1} * sum_{a=1..F} chi(a) B_n(a/F).
    """
    F = abs(D0) if D0 != 1 else 1
    total = Fraction(0)
    for a in range(1, F + 1):
        chi = kronecker(D0, a)
        if chi:
            total += chi * _bernoulli_poly(n, Fraction(a, F))
    return Fraction(F) ** (n - 1) * total


def dirichlet_L_neg(n: int, D0: int) -> Fraction:
    """L(1-n, chi_{D0}) = -B_{n,chi}/n exactly, n >= 1.

    For D0 = 1 this is zeta(1-n) (for n = 1, the value -B_1(1) = -1/2 =
    zeta(0), consistent with the polynomial convention).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    return -gen_bernoulli(n, D0) / n


@lru_cache(maxsize=None)
def cohen_H(r: int, N: int) -> Fraction:
    """Cohen's H(r, N) for r >= 1, N >= 0, exactly.

    H(r, 0) = zeta(1-2r).  For N > 0, zero unless (-1)^r N = 0, 1 mod 4;
    otherwise L(1-r, chi_{D0}) corrected by the mu/divisor sum over the
    conductor part f, where (-1)^r N = D0 f^2.

    H(1, N) is the Hurwitz class number; the brute-force reduced-form
    counter in the oracle module is its independent test oracle.
    """
    if r < 1:
        raise ValueError("cohen_H requires r >= 1")
    if N < 0:
        raise ValueError("cohen_H requires N >= 0")
    if N == 0:
        return zeta_neg(2 * r)
    D = N if r % 2 == 0 else -N
    if D % 4 in (2, 3):
        return Fraction(0)
    D0, f = fundamental_decomposition(D)
    total = Fraction(0)
    for d in divisors(f):
        mu = moebius(d)
        if mu:
            total += mu * kronecker(D0, d) * d ** (r - 1) * sigma(2 * r - 1, f // d)
    return dirichlet_L_neg(r, D0) * total
