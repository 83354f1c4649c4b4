"""Exact Fourier coefficients of degree-l Siegel Eisenstein series,
l in {0, 1, 2}.

Degree 1 is the classical -(2k/B_k) sigma_{k-1}(n).  Degree 2 uses the
classical closed form in terms of Cohen's H function:

    a2(T, k) = 2 / (zeta(1-k) zeta(3-2k))
               * sum_{d | content(T)} d^(k-1) H(k-1, det(2T)/d^2)

for positive definite T, where content(T) = gcd of the form coefficients
(t1, t2, t4) with 2T = (2 t1, t2; t2, 2 t4).  Rank <= 1 reduces to a1 by
Phi-operator compatibility.  The numerical Fourier-inversion oracle (and,
at k = 4, self-computed E8 lattice counts) is the acceptance authority
for this formula, so a mis-transcription cannot silently pass.

Degree >= 3 is rejected: the verified configuration never needs it.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .exactarith import bernoulli, cohen_H, divisors, zeta_neg
from .matrices import HalfIntSym

__all__ = ["a1", "a2", "a_coeff"]


def _check_weight(k: int, degree: int) -> None:
    if k % 2 or k < 4:
        raise ValueError("weight must be even and >= 4, got %r" % (k,))
    if k <= degree + 1:
        raise ValueError("weight %d not above the degree-%d convergence line" % (k, degree))


def a1(n: int, k: int) -> Fraction:
    """Degree-1 Eisenstein coefficient: a1(0) = 1, a1(n) = -(2k/B_k) sigma_{k-1}(n)."""
    _check_weight(k, 1)
    if n < 0:
        raise ValueError("need n >= 0")
    if n == 0:
        return Fraction(1)
    from .exactarith import sigma

    return -2 * k / bernoulli(k) * sigma(k - 1, n)


@lru_cache(maxsize=None)
def _a2_posdef(t1: int, t2: int, t4: int, k: int) -> Fraction:
    det = 4 * t1 * t4 - t2 * t2
    content = gcd(gcd(t1, t2), t4)
    total = Fraction(0)
    for d in divisors(content):
        total += d ** (k - 1) * cohen_H(k - 1, det // (d * d))
    return 2 / (zeta_neg(k) * zeta_neg(2 * k - 2)) * total


def a2(T: HalfIntSym, k: int) -> Fraction:
    """Degree-2 Siegel Eisenstein coefficient at the positive semidefinite
    half-integral T, exact.  GL_2(Z)-invariant by construction."""
    _check_weight(k, 2)
    if T.n != 2:
        raise ValueError("a2 expects a 2x2 half-integral matrix")
    if not T.is_psd():
        raise ValueError("a2 expects positive semidefinite T")
    r = T.rank()
    if r == 0:
        return Fraction(1)
    if r == 1:
        # T is GL_2(Z)-equivalent to diag(n, 0); n is the form content
        d = T.doubled
        n = gcd(gcd(d[0][0] // 2, d[0][1]), d[1][1] // 2)
        return a1(n, k)
    d = T.doubled
    return _a2_posdef(d[0][0] // 2, d[0][1], d[1][1] // 2, k)


def a_coeff(T: HalfIntSym, k: int) -> Fraction:
    """Dispatch a_l(T) for l = T.n in {0, 1, 2}."""
    if T.n == 0:
        return Fraction(1)
    if T.n == 1:
        if T.doubled[0][0] < 0:
            raise ValueError("need T positive semidefinite")
        return a1(T.doubled[0][0] // 2, k)
    if T.n == 2:
        return a2(T, k)
    raise ValueError(
        "degree %d Siegel Eisenstein coefficients are unsupported; "
        "the verified configuration needs l <= 2 only" % (T.n,)
    )
