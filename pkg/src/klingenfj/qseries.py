"""Truncated q-expansions with exact rational coefficients.

Supplies the degree-1 building blocks: Eisenstein series E_k, the
discriminant cusp form Delta (via the Euler product, expanded with the
pentagonal number theorem), and the normalized Hecke eigenforms for the
weights where the cusp space is one-dimensional, i.e. Delta * E_{k-12}.

Coefficients are exact Fractions (integers for the eigenforms); nothing
here is numerical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .exactarith import bernoulli, factorize, sigma

EIGENFORM_WEIGHTS = (12, 16, 18, 20, 22, 26)

__all__ = [
    "QSeries",
    "EIGENFORM_WEIGHTS",
    "eisenstein_qexp",
    "delta_qexp",
    "eigenform",
    "check_hecke_multiplicativity",
    "HeckeReport",
    "eigen_coefficient_fn",
]


@dataclass(frozen=True)
class QSeries:
    """A power series sum c_n q^n known exactly for 0 <= n <= trunc."""

    coeffs: tuple[Fraction, ...]
    trunc: int

    def __post_init__(self):
        assert len(self.coeffs) == self.trunc + 1

    def __getitem__(self, n: int) -> Fraction:
        if not 0 <= n <= self.trunc:
            raise IndexError("coefficient %d beyond truncation %d" % (n, self.trunc))
        return self.coeffs[n]

    def __add__(self, other: "QSeries") -> "QSeries":
        N = min(self.trunc, other.trunc)
        return QSeries(tuple(self.coeffs[n] + other.coeffs[n] for n in range(N + 1)), N)

    def __sub__(self, other: "QSeries") -> "QSeries":
        N = min(self.trunc, other.trunc)
        return QSeries(tuple(self.coeffs[n] - other.coeffs[n] for n in range(N + 1)), N)

    def scale(self, c: Fraction) -> "QSeries":
        c = Fraction(c)
        return QSeries(tuple(c * a for a in self.coeffs), self.trunc)

    def __mul__(self, other: "QSeries") -> "QSeries":
        N = min(self.trunc, other.trunc)
        out = [Fraction(0)] * (N + 1)
        a, b = self.coeffs, other.coeffs
        for i in range(N + 1):
            ai = a[i]
            if ai:
                for j in range(N + 1 - i):
                    bj = b[j]
                    if bj:
                        out[i + j] += ai * bj
        return QSeries(tuple(out), N)

    def to_json(self, k=None) -> dict:
        d = {"coeffs": ["%d/%d" % (c.numerator, c.denominator) for c in self.coeffs]}
        if k is not None:
            d = {"k": k, **d}
        return d


def _int_mul(a: list[int], b: list[int], N: int) -> list[int]:
    """Integer series product to order N (inclusive)."""
    out = [0] * (N + 1)
    for i in range(min(len(a) - 1, N) + 1):
        ai = a[i]
        if ai:
            bi = b[: N + 1 - i]
            for j, bj in enumerate(bi):
                if bj:
                    out[i + j] += ai * bj
    return out


@lru_cache(maxsize=8)
def eisenstein_qexp(k: int, N: int) -> QSeries:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n to order N, exact."""
    if k < 4 or k % 2:
        raise ValueError("Eisenstein weight must be even and >= 4, got %r" % (k,))
    # sieve sigma_{k-1} up to N
    s = [0] * (N + 1)
    for d in range(1, N + 1):
        dk = d ** (k - 1)
        for n in range(d, N + 1, d):
            s[n] += dk
    c = -2 * k / bernoulli(k)
    coeffs = [Fraction(1)] + [c * s[n] for n in range(1, N + 1)]
    return QSeries(tuple(coeffs), N)


@lru_cache(maxsize=4)
def delta_qexp(N: int) -> QSeries:
    """Delta = q * prod (1-q^n)^24 to order N; coefficients tau(n)."""
    if N < 1:
        raise ValueError("need N >= 1")
    # Euler function prod(1-q^n) via the pentagonal number theorem
    eul = [0] * N
    eul[0] = 1
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        if g1 >= N:
            break
        sign = -1 if j % 2 else 1
        eul[g1] += sign
        g2 = j * (3 * j + 1) // 2
        if g2 < N:
            eul[g2] += sign
        j += 1
    e2 = _int_mul(eul, eul, N - 1)
    e4 = _int_mul(e2, e2, N - 1)
    e8 = _int_mul(e4, e4, N - 1)
    e16 = _int_mul(e8, e8, N - 1)
    e24 = _int_mul(e16, e8, N - 1)
    coeffs = [Fraction(0)] + [Fraction(c) for c in e24]
    return QSeries(tuple(coeffs), N)


@lru_cache(maxsize=8)
def eigenform(k: int, N: int) -> QSeries:
    """The normalized (b(1) = 1) Hecke eigenform of weight k, level 1,
    for the one-dimensional cusp spaces: Delta * E_{k-12} with E_0 = 1."""
    if k not in EIGENFORM_WEIGHTS:
        raise ValueError(
            "unsupported weight %r: the cusp space is one-dimensional only "
            "for k in %r" % (k, EIGENFORM_WEIGHTS)
        )
    delta = delta_qexp(N)
    if k == 12:
        return delta
    ek = eisenstein_qexp(k - 12, N)
    # E_4 .. E_14 have integer coefficients; multiply in plain ints for speed
    assert all(c.denominator == 1 for c in ek.coeffs)
    prod = _int_mul(
        [int(c) for c in delta.coeffs], [int(c) for c in ek.coeffs], N
    )
    return QSeries(tuple(Fraction(c) for c in prod), N)


@dataclass(frozen=True)
class HeckeReport:
    passed: bool
    checked: int
    witness: tuple | None

    def __bool__(self):
        return self.passed


def check_hecke_multiplicativity(f: QSeries, k: int) -> HeckeReport:
    """Verify b(mn) = b(m) b(n) for coprime m, n and
    b(p^2) = b(p)^2 - p^(k-1) up to f's truncation."""
    from math import gcd

    N = f.trunc
    if f[0] != 0 or f[1] != 1:
        return HeckeReport(False, 0, ("normalization", f[0], f[1]))
    checked = 0
    root = isqrt(N)
    for m in range(2, root + 1):
        for n in range(m, N // m + 1):
            if gcd(m, n) == 1:
                checked += 1
                if f[m * n] != f[m] * f[n]:
                    return HeckeReport(False, checked, (m, n, f[m * n], f[m] * f[n]))
    p = 2
    while p * p <= N:
        if len(factorize(p)) == 1 and factorize(p)[0][1] == 1:
            checked += 1
            if f[p * p] != f[p] ** 2 - p ** (k - 1):
                return HeckeReport(False, checked, ("p^2", p))
        p += 1
    return HeckeReport(True, checked, None)


def eigen_coefficient_fn(k: int, N: int):
    """Return b: n -> b(n) for the weight-k eigenform, valid for all n whose
    prime factors are <= N, using the Hecke recursion at prime powers:
    b(p^(j+1)) = b(p) b(p^j) - p^(k-1) b(p^(j-1)).

    This evaluates b at arguments far beyond N (e.g. b(n^2) for n <= N)
    without expanding the q-series that far.
    """
    f = eigenform(k, N)
    bp = {1: Fraction(1)}

    def b(n: int) -> Fraction:
        if n < 1:
            raise ValueError("need n >= 1")
        if n in bp:
            return bp[n]
        out = Fraction(1)
        for p, e in factorize(n):
            key = p**e
            if key not in bp:
                if p > N:
                    raise ValueError(
                        "prime %d exceeds the expansion range %d" % (p, N)
                    )
                prev, cur = Fraction(1), f[p]
                j = 1
                pk = p ** (k - 1)
                while j < e:
                    prev, cur = cur, f[p] * cur - pk * prev
                    j += 1
                bp[key] = cur
            out *= bp[key]
        bp[n] = out
        return out

    return b
