"""Independent brute-force and numerical verifiers.

Nothing in this module is allowed to reuse the combinatorial machinery it
exists to check: class numbers are counted by enumerating reduced binary
quadratic forms, the degree-2 Eisenstein series is evaluated directly from
its defining coset series, and Fourier coefficients are recovered from
that evaluation by numerical integration over the period torus.  Exact
coefficient formulas enter only as *radius bookkeeping* (alias and tail
bounds at matrices other than the one under test), never as the value.

Evaluation strategy for the defining series, degree 2, weight k:

    E(Z) = sum over inequivalent coprime symmetric pairs (C, D)
           of det(CZ + D)^(-k)

split by rank(C).  The single rank-0 orbit contributes 1.  Rank-1 orbits
are parametrised exactly by (w, g, d) with w a primitive row vector
modulo sign, g >= 1, gcd(g, d) = 1, the term depending only on
tau_w = w Z tw; their (g, d)-sum collapses through the Lipschitz formula

    sum_{g >= 1, d, gcd(g,d)=1} (g tau + d)^(-k)
        = ((-2 pi i)^k / ((k-1)! zeta(k))) sum_{N >= 1} sigma_{k-1}(N) q^N,
    q = e(tau),

so the rank-1 part is summed *completely* (all g, d) for each retained w,
with certified cut-off bounds.  Rank-2 orbits carry a unique canonical
representative whose C is in row Hermite normal form; those are summed
over a finite entry box, and the box truncation is the one genuinely
heuristic tail in this module (reported separately, never silently).

Fourier inversion integrates the evaluated series against e(-tr(TX)) over
the compact torus of real symmetric X modulo 1; on an equispaced grid the
quadrature is an exact character sum, so its error is pure aliasing,
which is bounded rigorously through the positive semidefinite support of
the expansion plus an explicit polynomial coefficient-growth lemma.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import exp, factorial, gcd, isqrt, pi

import numpy as np

from .eisenstein import a2
from .exactarith import sigma, zeta_neg
from .lvalues import ErrReal, PrecisionBudgetError
from .matrices import HalfIntSym, Mat, as_mat, transpose

__all__ = [
    "SiegelPoint",
    "ResourceCapError",
    "hurwitz_bruteforce",
    "siegel_eval",
    "siegel_tail_estimate",
    "fourier_side_eval",
    "fourier_invert",
    "bounded_matrix_search",
]


class ResourceCapError(RuntimeError):
    """An exhaustive search would exceed its declared resource cap."""


# Rational constants for the certified bounds.  _TWO_PI_LO <= 2 pi and
# _EXP_NEG1_UB >= exp(-1), so that exp(-y) <= _EXP_NEG1_UB ** floor(y_lo)
# whenever y >= y_lo >= 0.
_TWO_PI_LO = Fraction(62831853, 10**7)
_EXP_NEG1_UB = Fraction(36788, 10**5)

DEFAULT_HEIGHT = 8
DEFAULT_GRID = (18, 18, 12)
DEFAULT_Y0 = (Fraction(18, 25), Fraction(13, 20))
SEARCH_CAP = 10**8


def _exp_neg_ub(y: Fraction) -> Fraction:
    """Rational upper bound for exp(-y), y >= 0 a Fraction.

    Drops the fractional part of y and bounds each whole unit by
    _EXP_NEG1_UB; monotone, and exact enough for tail bookkeeping.
    """
    if y < 0:
        raise ValueError("need y >= 0")
    return _EXP_NEG1_UB ** int(y)


def _zeta_ub(s: int) -> Fraction:
    """Rational upper bound for zeta(s), s >= 2: the first two terms plus
    the integral comparison sum_{n >= 3} n^-s <= int_2^inf t^-s dt."""
    if s < 2:
        raise ValueError("need s >= 2")
    return 1 + Fraction(1, 2**s) + Fraction(2, 2 ** (s - 1) * (s - 1))


@lru_cache(maxsize=None)
def _a2_growth_const(k: int) -> Fraction:
    """Exact rational K with |a2(T, k)| <= K * det(2T)^(k-1) for all
    positive semidefinite half-integral 2x2 T of rank 2.

    Chain (r = k - 1): the Fourier series of the Bernoulli polynomial
    gives |B_r(x)| <= 2 r! zeta(r) / (2 pi)^r on [0, 1], hence
    |B_{r,chi}| <= F^r * 2 r! zeta(r) / (2 pi)^r for the quadratic
    character of conductor F, hence |L(1-r, chi)| <= that / r.  The
    conductor-part divisor sum is at most zeta(r) zeta(2r-1) f^(2r-1),
    so |H(r, N)| <= C_H N^r with
    C_H = 2 r! zeta(r)^2 zeta(2r-1) / (r (2 pi)^r), and the content
    divisor sum in the degree-2 closed form contributes one more
    zeta(r) factor.
    """
    r = k - 1
    c_h = Fraction(2 * factorial(r)) * _zeta_ub(r) ** 2 * _zeta_ub(2 * r - 1) / (r * _TWO_PI_LO**r)
    front = abs(Fraction(2) / (zeta_neg(k) * zeta_neg(2 * k - 2)))
    return front * c_h * _zeta_ub(r)


@lru_cache(maxsize=None)
def _a1_growth_const(k: int) -> Fraction:
    """Exact rational K1 with |a1(n, k)| <= K1 * n^(k-1) for n >= 1."""
    return abs(Fraction(2 * k) / _bernoulli(k)) * _zeta_ub(k - 1)


def _bernoulli(k: int) -> Fraction:
    from .exactarith import bernoulli

    return bernoulli(k)


def _sqrt_ub(q: Fraction) -> Fraction:
    """Rational upper bound for sqrt(q), q >= 0."""
    if q < 0:
        raise ValueError("need q >= 0")
    n, d = q.numerator, q.denominator
    return Fraction(isqrt(n * d) + 1, d)


# ---------------------------------------------------------------------------
# Siegel upper half-space points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SiegelPoint:
    """A degree-2 point Z = X + iY, X real symmetric, Y positive definite.

    Entries are stored as exact Fractions (floats are dyadic and convert
    exactly), so positivity checks and the tail bookkeeping that depends
    on Y are rigorous.
    """

    x: tuple
    y: tuple

    def __post_init__(self):
        x = tuple(tuple(Fraction(v) for v in row) for row in self.x)
        y = tuple(tuple(Fraction(v) for v in row) for row in self.y)
        for name, m in (("x", x), ("y", y)):
            if len(m) != 2 or any(len(row) != 2 for row in m):
                raise ValueError("%s must be 2x2" % name)
            if m[0][1] != m[1][0]:
                raise ValueError("%s must be symmetric" % name)
        if not (y[0][0] > 0 and y[0][0] * y[1][1] - y[0][1] ** 2 > 0):
            raise ValueError("imaginary part must be positive definite")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def pure_imag(cls, y1, y2, y12=0) -> "SiegelPoint":
        """The point i * (y1, y12; y12, y2)."""
        return cls(((0, 0), (0, 0)), ((y1, y12), (y12, y2)))

    def shifted(self, s: Mat) -> "SiegelPoint":
        """Z + S for integral symmetric S."""
        s = as_mat(s)
        if s != transpose(s):
            raise ValueError("shift must be symmetric")
        x = tuple(
            tuple(self.x[i][j] + s[i][j] for j in range(2)) for i in range(2)
        )
        return SiegelPoint(x, self.y)

    def y_min_lb(self) -> Fraction:
        """Exact rational lower bound for the least eigenvalue of Y."""
        tr = self.y[0][0] + self.y[1][1]
        det = self.y[0][0] * self.y[1][1] - self.y[0][1] ** 2
        disc = tr * tr - 4 * det
        lb = (tr - _sqrt_ub(disc)) / 2
        return max(lb, det / tr)


# ---------------------------------------------------------------------------
# Hurwitz class numbers by reduced-form counting
# ---------------------------------------------------------------------------


def hurwitz_bruteforce(N: int) -> Fraction:
    """Hurwitz class number H(N) by brute-force enumeration of reduced
    positive binary quadratic forms of discriminant -N.

    A form (a, b, c) is reduced when -a < b <= a <= c with b >= 0 if
    a == c.  Forms proportional to x^2 + y^2 (i.e. (a, 0, a)) count 1/2,
    forms proportional to x^2 + xy + y^2 (i.e. (a, a, a)) count 1/3.
    H(0) = -1/12 by convention; N = 1, 2 mod 4 gives 0.

    >>> hurwitz_bruteforce(3)
    Fraction(1, 3)
    >>> hurwitz_bruteforce(23)
    Fraction(3, 1)
    """
    if N < 0:
        raise ValueError("need N >= 0")
    if N == 0:
        return Fraction(-1, 12)
    if N % 4 in (1, 2):
        return Fraction(0)
    total = Fraction(0)
    for a in range(1, isqrt(N // 3) + 1):
        for b in range(-a + 1, a + 1):
            num = b * b + N
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if a == c and b < 0:
                continue
            if a == b == c:
                total += Fraction(1, 3)
            elif a == c and b == 0:
                total += Fraction(1, 2)
            else:
                total += 1
    return total


# ---------------------------------------------------------------------------
# Coset enumeration for the defining series
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _primitive_rows(bound: int) -> tuple[tuple[int, int], ...]:
    """Primitive integer rows w, one per pair {w, -w}, sup-norm <= bound,
    taken with the first nonzero entry positive."""
    out = []
    for w1 in range(0, bound + 1):
        for w2 in range(-bound, bound + 1):
            if w1 == 0 and w2 <= 0:
                continue
            if w1 == 0 and w2 != 1:
                continue
            if w1 > 0 and gcd(w1, abs(w2)) != 1:
                continue
            out.append((w1, w2))
    return tuple(out)


@lru_cache(maxsize=8)
def _rank2_pairs(height: int):
    """Canonical rank-2 coprime symmetric pairs with entries in
    [-height, height].

    Every left-GL_2(Z) orbit with invertible C contains exactly one pair
    whose C is in row Hermite normal form (a, b; 0, c), a, c >= 1,
    0 <= b < c, and that normal form has trivial stabiliser, so distinct
    enumerated pairs are inequivalent.  D then runs over the box subject
    to the symmetry constraint a d21 + b d22 = c d12 and coprimality of
    the 2x2 minors of [C D].

    Returns numpy arrays (det_c, alpha, beta, gamma, det_d, hgt) where
    det(CZ + D) = det_c det(Z) + alpha z11 + beta z22 + gamma z12 + det_d
    and hgt is the sup-norm of the representative's entries.
    """
    rng = np.arange(-height, height + 1, dtype=np.int64)
    d21g, d22g = np.meshgrid(rng, rng, indexing="ij")
    d21g, d22g = d21g.ravel(), d22g.ravel()
    cols = []
    for a in range(1, height + 1):
        for c in range(1, height + 1):
            for b in range(0, c):
                num = a * d21g + b * d22g
                ok = num % c == 0
                d21, d22 = d21g[ok], d22g[ok]
                d12 = num[ok] // c
                ok = np.abs(d12) <= height
                d21, d22, d12 = d21[ok], d22[ok], d12[ok]
                n1 = d21.shape[0]
                if not n1:
                    continue
                d11 = np.repeat(rng, n1)
                d21 = np.tile(d21, 2 * height + 1)
                d22 = np.tile(d22, 2 * height + 1)
                d12 = np.tile(d12, 2 * height + 1)
                # gcd of the six 2x2 minors of [C D]
                g = np.full_like(d11, a * c)
                for minor in (
                    a * d21,
                    a * d22,
                    b * d21 - c * d11,
                    b * d22 - c * d12,
                    d11 * d22 - d12 * d21,
                ):
                    g = np.gcd(g, minor)
                keep = g == 1
                if not keep.any():
                    continue
                d11, d12, d21, d22 = (v[keep] for v in (d11, d12, d21, d22))
                det_c = np.full_like(d11, a * c)
                alpha = a * d22
                beta = c * d11 - b * d21
                gamma = b * d22 - a * d21 - c * d12
                det_d = d11 * d22 - d12 * d21
                hgt = np.maximum(
                    max(a, b, c),
                    np.maximum.reduce(
                        [np.abs(d11), np.abs(d12), np.abs(d21), np.abs(d22)]
                    ),
                )
                cols.append((det_c, alpha, beta, gamma, det_d, hgt))
    out = tuple(
        np.ascontiguousarray(np.concatenate([col[i] for col in cols]))
        for i in range(6)
    )
    for arr in out:
        arr.flags.writeable = False
    return out


def _lipschitz_front(k: int) -> complex:
    """(-2 pi i)^k / ((k - 1)! zeta(k)) for the collapsed rank-1 sum."""
    import mpmath

    zk = float(mpmath.zeta(k))
    return complex((-2j * pi) ** k) / (factorial(k - 1) * zk)


def _sigma_cut(k: int, x: float, target: float) -> int:
    """Smallest N-cut with certified remainder of sum sigma_{k-1}(N) x^N
    below target (x = |q| < 1/2); the remainder bound itself is
    _sigma_tail_bound."""
    n = max(6, k // 2)
    while _sigma_tail_bound(k, x, n) > target and n < 400:
        n += 2
    return n


def _sigma_tail_bound(k: int, x: float, ncut: int) -> float:
    """Upper bound for |sum_{N > ncut} sigma_{k-1}(N) x^N|, requiring the
    geometric ratio at ncut to be at most 1/2."""
    if x <= 0:
        return 0.0
    zu = float(_zeta_ub(k - 1))
    ratio = x * ((ncut + 1) / ncut) ** (k - 1)
    if ratio > 0.5:
        return float("inf")
    first = zu * (ncut + 1) ** (k - 1) * x ** (ncut + 1)
    return first / (1.0 - ratio) * 1.0000001


def _check_weight_direct(k: int) -> None:
    if k % 2 or k < 6:
        raise ValueError(
            "direct series evaluation needs even weight k >= 6, got %r" % (k,)
        )


def _rank1_eval(k: int, z11, z22, z12, y: tuple, wmax: int, target: float):
    """Complete rank <= 1 part of the series on arrays of torus points.

    Returns (values, abs_bound, certified_tail) where certified_tail
    covers both the sigma-series cut and the discarded w beyond wmax.
    """
    y1, y2, y12 = float(y[0][0]), float(y[1][1]), float(y[0][1])
    front = _lipschitz_front(k)
    total = np.ones_like(z11, dtype=np.complex128)
    absb = np.ones_like(z11, dtype=np.float64)
    tail = 0.0
    for w1, w2 in _primitive_rows(wmax):
        y_w = w1 * w1 * y1 + 2 * w1 * w2 * y12 + w2 * w2 * y2
        x_mag = exp(-2 * pi * y_w)
        if x_mag >= 0.5:
            raise ValueError("imaginary part too small for the rank-1 collapse")
        tau = w1 * w1 * z11 + 2 * w1 * w2 * z12 + w2 * w2 * z22
        q = np.exp(2j * pi * tau)
        ncut = _sigma_cut(k, x_mag, target)
        tail += abs(front) * _sigma_tail_bound(k, x_mag, ncut)
        acc = np.zeros_like(q)
        accabs = np.zeros_like(absb)
        qa = np.abs(q)
        for n in range(ncut, 0, -1):
            s = sigma(k - 1, n)
            acc = acc * q
            acc += s
            accabs = accabs * qa
            accabs += s
        acc *= q
        accabs *= qa
        total += front * acc
        absb += abs(front) * accabs
    # discarded w: ||w||_inf > wmax, at most 4r representatives per shell
    lam = float(SiegelPoint(((0, 0), (0, 0)), y).y_min_lb())
    r = wmax + 1
    x0 = exp(-2 * pi * lam * r * r)
    if x0 >= 0.25:
        raise ValueError("imaginary part too small for the w cut")
    zu = float(_zeta_ub(k - 1))
    first = 4 * r * abs(front) * zu * 2 * x0
    ratio = exp(-2 * pi * lam * (2 * r + 1)) * (r + 1) / r
    tail += first / (1.0 - max(ratio, 0.5)) if ratio <= 0.5 else float("inf")
    return total, absb, tail


def _rank2_eval(k: int, z11, z22, z12, height: int, shift=None):
    """Boxed rank-2 part on arrays of torus points.

    Returns (values, abs_sums, shell_values) where shell_values holds the
    partial sums at heights height-4 and height-2 for the empirical tail
    extrapolation.

    ``shift``, an integral symmetric matrix S, transports every
    representative (C, D) to (C, D + C S) before evaluation: the term of
    the transported pair at Z equals the term of the original pair at
    Z + S, which is what makes fixed-height translation checks exact.
    """
    det_c, alpha, beta, gamma, det_d, hgt = _rank2_pairs(height)
    if shift is not None:
        s1, s12, s2 = shift[0][0], shift[0][1], shift[1][1]
        det_s = s1 * s2 - s12 * s12
        det_d = (
            det_d
            + alpha * s1
            + beta * s2
            + gamma * s12
            + det_c * det_s
        )
        alpha = alpha + det_c * s2
        beta = beta + det_c * s1
        gamma = gamma - 2 * det_c * s12
    detz = z11 * z22 - z12 * z12
    npts = z11.shape[0]
    total = np.zeros(npts, dtype=np.complex128)
    absacc = np.zeros(npts, dtype=np.float64)
    shells = {height - 4: np.zeros(npts, dtype=np.complex128),
              height - 2: np.zeros(npts, dtype=np.complex128)}
    chunk = max(1, 2_000_000 // max(npts, 1))
    for lo in range(0, det_c.shape[0], chunk):
        sl = slice(lo, lo + chunk)
        dc = det_c[sl].astype(np.float64)[:, None]
        al = alpha[sl].astype(np.float64)[:, None]
        be = beta[sl].astype(np.float64)[:, None]
        ga = gamma[sl].astype(np.float64)[:, None]
        dd = det_d[sl].astype(np.float64)[:, None]
        vals = dc * detz[None, :]
        vals += al * z11[None, :]
        vals += be * z22[None, :]
        vals += ga * z12[None, :]
        vals += dd
        # vals ** -k by squaring (k even, k >= 6)
        acc = None
        sq = vals
        e = k
        while e:
            if e & 1:
                acc = sq if acc is None else acc * sq
            e >>= 1
            if e:
                sq = sq * sq
        vals = 1.0 / acc
        total += vals.sum(axis=0)
        absacc += np.abs(vals).sum(axis=0)
        h = hgt[sl]
        for cut, arr in shells.items():
            mask = h <= cut
            if mask.any():
                arr += vals[mask].sum(axis=0)
    return total, absacc, shells


def _eval_points(
    k: int, x11, x22, x12, y: tuple, height: int, target: float, shift=None
):
    """Evaluate the partial series at torus points X + iY (arrays).

    Returns a dict with the complex values, a per-point bound on the sum
    of term magnitudes (for roundoff radii), the certified rank <= 1 cut
    bound, and the empirical rank-2 shell data.
    """
    y1, y2, y12 = (float(y[0][0]), float(y[1][1]), float(y[0][1]))
    z11 = x11 + 1j * y1
    z22 = x22 + 1j * y2
    z12 = x12 + 1j * y12
    wmax = 6
    r1, r1abs, r1tail = _rank1_eval(k, z11, z22, z12, y, wmax, target)
    r2, r2abs, shells = _rank2_eval(k, z11, z22, z12, height, shift)
    values = r1 + r2
    inner = {cut: r1 + arr for cut, arr in shells.items()}
    d_prev = float(np.max(np.abs(inner[height - 2] - inner[height - 4])))
    d_last = float(np.max(np.abs(values - inner[height - 2])))
    if d_prev > 0 and d_last > 0:
        rho = min(d_last / d_prev, 0.8)
    else:
        rho = 0.5
    heuristic = d_last * rho / (1.0 - rho) + d_last * 1e-6
    return {
        "values": values,
        "abs_bound": r1abs + r2abs,
        "cert_tail": r1tail,
        "heur_tail": heuristic,
        "shell_diff": d_last,
    }


# ---------------------------------------------------------------------------
# Direct evaluation and its Fourier-side counterpart
# ---------------------------------------------------------------------------


def _as_siegel_point(z) -> SiegelPoint:
    if isinstance(z, SiegelPoint):
        return z
    raise TypeError("expected a SiegelPoint")


def _wellconditioned(z: SiegelPoint) -> None:
    if z.y_min_lb() < Fraction(1, 8):
        raise ValueError(
            "ill-conditioned imaginary part: least eigenvalue below 1/8"
        )


def siegel_eval(
    k: int,
    z: SiegelPoint,
    height: int = DEFAULT_HEIGHT,
    *,
    rep_shift=None,
) -> ErrReal:
    """Partial sum of the defining degree-2 series at Z, weight k >= 6.

    The rank <= 1 orbit families are summed completely in collapsed form
    with certified cut bounds; the rank-2 orbits are summed over
    canonical representatives with entries bounded by ``height``.  The
    returned enclosure covers the evaluated partial sum: its radius
    accounts for roundoff, the certified rank <= 1 cuts, and any
    imaginary leakage (the series value is real at the points of
    interest; a genuinely complex partial sum widens the radius by its
    imaginary magnitude).  The rank-2 box truncation is *not* inside the
    radius -- it is the heuristic tail, reported separately by
    :func:`siegel_tail_estimate`.

    ``rep_shift``, an integral symmetric matrix S, transports the rank-2
    representative box by (C, D) -> (C, D + C S).  The complete rank <= 1
    families are permuted by any such transport, so only the box moves:
    evaluating at Z + S with ``rep_shift=-S`` reproduces, term by term,
    the plain evaluation at Z.  This realises translation invariance at
    fixed height with matched representative sets.

    >>> val = siegel_eval(12, SiegelPoint.pure_imag(10, 10), 4)
    >>> abs(val.mid - 1) < 1e-20
    True
    """
    z = _as_siegel_point(z)
    _check_weight_direct(k)
    _wellconditioned(z)
    if rep_shift is not None:
        rep_shift = as_mat(rep_shift)
        if rep_shift != transpose(rep_shift):
            raise ValueError("representative shift must be symmetric")
        if any(v != int(v) for row in rep_shift for v in row):
            raise ValueError("representative shift must be integral")
        rep_shift = tuple(tuple(int(v) for v in row) for row in rep_shift)
    x11 = np.array([float(z.x[0][0])])
    x22 = np.array([float(z.x[1][1])])
    x12 = np.array([float(z.x[0][1])])
    out = _eval_points(k, x11, x22, x12, z.y, height, 1e-18, rep_shift)
    val = complex(out["values"][0])
    rad = (
        float(out["abs_bound"][0]) * 2.0 ** -48
        + out["cert_tail"]
        + abs(val.imag)
    )
    return ErrReal(val.real, rad)


def siegel_tail_estimate(k: int, z: SiegelPoint, height: int = DEFAULT_HEIGHT) -> float:
    """Heuristic (non-certified) estimate of the rank-2 box truncation
    error of :func:`siegel_eval`, by geometric extrapolation of the last
    two height shells."""
    z = _as_siegel_point(z)
    _check_weight_direct(k)
    _wellconditioned(z)
    x11 = np.array([float(z.x[0][0])])
    x22 = np.array([float(z.x[1][1])])
    x12 = np.array([float(z.x[0][1])])
    out = _eval_points(k, x11, x22, x12, z.y, height, 1e-18)
    return out["heur_tail"]


def fourier_side_eval(k: int, z: SiegelPoint, cutoff: int = 30) -> ErrReal:
    """Evaluation of the series from its exact coefficient side:
    sum over psd half-integral T of a(T) e(tr(TZ)), windowed by diagonal
    entries up to cutoff/(2 pi lambda_min(Y)), with a *certified*
    remainder from the polynomial coefficient growth lemma.  Complements
    :func:`siegel_eval` for the two-sided consistency check; the two
    must overlap within combined radii.
    """
    z = _as_siegel_point(z)
    _check_weight_direct(k)
    _wellconditioned(z)
    y = z.y
    lam = z.y_min_lb()
    smax = int(Fraction(cutoff) / (_TWO_PI_LO * lam)) + 1
    total = 0j
    absacc = 0.0
    x11, x22, x12 = (float(z.x[0][0]), float(z.x[1][1]), float(z.x[0][1]))
    y1, y2, y12 = (float(y[0][0]), float(y[1][1]), float(y[0][1]))
    for t1 in range(smax + 1):
        for t4 in range(smax + 1):
            lim = isqrt(4 * t1 * t4)
            for t2 in range(-lim, lim + 1):
                T = HalfIntSym.from_triple(t1, t2, t4)
                coeff = float(a2(T, k))
                phase = (
                    t1 * (x11 + 1j * y1)
                    + t4 * (x22 + 1j * y2)
                    + t2 * (x12 + 1j * y12)
                )
                term = coeff * np.exp(2j * pi * phase)
                total += term
                absacc += abs(term)
    # Certified remainder: any unsummed psd T has some diagonal entry
    # beyond smax, hence s = t1 + t4 >= smax + 1; there are at most
    # 3 s^2 psd triples per diagonal sum s, |a(T)| <= K det(2T)^(k-1)
    # <= K s^(2k-2), and |e(tr(TZ))| = e^{-2 pi tr(TY)} <= e^{-2 pi lam s}.
    K = max(_a2_growth_const(k), _a1_growth_const(k), Fraction(1))
    s0 = smax + 1
    first = 3 * K * Fraction(s0) ** (2 * k) * _exp_neg_ub(_TWO_PI_LO * lam * s0)
    ratio = float(_exp_neg_ub(_TWO_PI_LO * lam)) * ((s0 + 1) / s0) ** (2 * k)
    if ratio > 0.5:
        raise ValueError("cutoff too small for a certified remainder")
    rem = float(first) / (1.0 - ratio)
    rad = rem + absacc * 2.0 ** -48 + abs(complex(total).imag)
    return ErrReal(complex(total).real, rad)


# ---------------------------------------------------------------------------
# Numerical Fourier inversion
# ---------------------------------------------------------------------------


def _triple_of(T: HalfIntSym) -> tuple[int, int, int]:
    d = T.doubled
    return d[0][0] // 2, d[0][1], d[1][1] // 2


@lru_cache(maxsize=4)
def _torus_sweep(k: int, y_key: tuple, grid: tuple, height: int):
    """Evaluate the partial series on the full quadrature grid, once per
    configuration; every coefficient extraction at this configuration
    reuses it."""
    g1, g2, g12 = grid
    y = ((Fraction(y_key[0]), Fraction(y_key[2])), (Fraction(y_key[2]), Fraction(y_key[1])))
    j1 = np.arange(g1) / g1
    j2 = np.arange(g2) / g2
    j3 = np.arange(g12) / g12
    x11 = np.repeat(j1, g2 * g12)
    x22 = np.tile(np.repeat(j2, g12), g1)
    x12 = np.tile(j3, g1 * g2)
    out = _eval_points(k, x11, x22, x12, y, height, 1e-14)
    out["values"] = out["values"].reshape(g1, g2, g12)
    out["abs_max"] = float(np.max(out["abs_bound"]))
    return out


def _alias_radius(k: int, triple: tuple, y: tuple, grid: tuple) -> Fraction:
    """Certified aliasing error of the grid quadrature at T.

    The quadrature recovers sum over T' congruent to T on the grid
    lattice of a(T') e^{-2 pi tr((T'-T) Y)}.  Pure off-diagonal aliases
    must be excluded by positive semidefiniteness (checked here); the
    rest is summed exactly over a window with rational upper bounds on
    the exponentials, plus a growth-lemma geometric remainder.
    """
    t1, t2, t4 = triple
    g1, g2, g12 = grid
    y1, y2 = y[0][0], y[1][1]
    if y[0][1] != 0:
        raise ValueError("aliasing control assumes a diagonal base point")
    if t1 < 0 or t4 < 0 or t1 >= g1 or t4 >= g2 or abs(t2) >= g12:
        raise ValueError("target index lies outside the fundamental grid window")
    lim = isqrt(4 * t1 * t4)
    if g12 - abs(t2) <= lim:
        raise ValueError(
            "off-diagonal grid too coarse for T: undamped aliases would be psd"
        )
    K = max(_a2_growth_const(k), _a1_growth_const(k), Fraction(1))
    total = Fraction(0)
    for m1 in range(0, 2):
        for m2 in range(0, 2):
            t1p = t1 + m1 * g1
            t4p = t4 + m2 * g2
            delta = m1 * g1 * y1 + m2 * g2 * y2
            w_ub = _exp_neg_ub(_TWO_PI_LO * delta)
            limp = isqrt(4 * t1p * t4p)
            m3lo = -((limp + t2) // g12)
            m3hi = (limp - t2) // g12
            for m3 in range(m3lo, m3hi + 1):
                if m1 == m2 == 0 and m3 == 0:
                    continue
                t2p = t2 + m3 * g12
                if t2p * t2p > 4 * t1p * t4p:
                    continue
                Tp = HalfIntSym.from_triple(t1p, t2p, t4p)
                total += abs(a2(Tp, k)) * w_ub
    # geometric remainders beyond the m1, m2 < 2 window; per (m1, m2) the
    # m3 count is at most s' and |a(T')| <= K s'^(2k-2), s' = t1' + t4'.
    def axis_tail(step: int, yy: Fraction, m_from: int, s_base: int) -> Fraction:
        s = s_base + m_from * step
        first = K * Fraction(s) ** (2 * k - 1) * _exp_neg_ub(
            _TWO_PI_LO * yy * step * m_from
        )
        ratio = _exp_neg_ub(_TWO_PI_LO * yy * step) * Fraction(s + step, s) ** (
            2 * k - 1
        )
        if ratio > Fraction(1, 2):
            raise ValueError("grid too coarse for a certified alias remainder")
        return first / (1 - ratio)

    s_base = t1 + t4
    rem = axis_tail(g1, y1, 2, s_base) * 2
    rem += axis_tail(g2, y2, 2, s_base) * 2
    return total + rem


def _default_grid(triple: tuple) -> tuple:
    t1, t2, t4 = triple
    g12 = max(DEFAULT_GRID[2], isqrt(4 * t1 * t4) + abs(t2) + 2)
    return (DEFAULT_GRID[0], DEFAULT_GRID[1], g12)


def fourier_invert(
    k: int,
    T: HalfIntSym,
    grid: tuple | int | None = None,
    Y0: SiegelPoint | tuple | None = None,
    *,
    height: int = DEFAULT_HEIGHT,
    budget: float | None = None,
) -> ErrReal:
    """Fourier coefficient of the degree-2 series at psd T by numerical
    integration of the directly evaluated series against e(-tr(TX)) over
    the torus of symmetric X mod 1, times e^{2 pi tr(T Y0)}.

    The quadrature on an equispaced grid is an exact character sum, so
    the radius decomposes into certified aliasing (via psd support and
    the coefficient growth lemma), certified rank <= 1 series cuts,
    roundoff, and the one heuristic component inherited from the direct
    series: the rank-2 box truncation, extrapolated from measured height
    shells.  Raises :class:`PrecisionBudgetError` when a requested
    ``budget`` cannot be met.
    """
    _check_weight_direct(k)
    if T.n != 2:
        raise ValueError("fourier_invert expects a 2x2 half-integral matrix")
    if not T.is_psd():
        raise ValueError("fourier_invert expects positive semidefinite T")
    triple = _triple_of(T)
    if grid is None:
        grid = _default_grid(triple)
    elif isinstance(grid, int):
        grid = (grid, grid, grid)
    else:
        grid = tuple(int(g) for g in grid)
        if len(grid) != 3 or min(grid) < 1:
            raise ValueError("grid must be a positive int or three positive ints")
    g1, g2, g12 = grid
    if Y0 is None:
        y = ((DEFAULT_Y0[0], Fraction(0)), (Fraction(0), DEFAULT_Y0[1]))
    else:
        y = Y0.y if isinstance(Y0, SiegelPoint) else tuple(
            tuple(Fraction(v) for v in row) for row in Y0
        )
    y_key = (y[0][0], y[1][1], y[0][1])
    sweep = _torus_sweep(k, y_key, (g1, g2, g12), height)
    t1, t2, t4 = triple
    e1 = np.exp(-2j * pi * t1 * np.arange(g1) / g1)
    e2 = np.exp(-2j * pi * t4 * np.arange(g2) / g2)
    e3 = np.exp(-2j * pi * t2 * np.arange(g12) / g12)
    npts = g1 * g2 * g12
    raw = complex(np.einsum("abc,a,b,c->", sweep["values"], e1, e2, e3)) / npts
    tr = t1 * y[0][0] + t4 * y[1][1] + t2 * y[0][1]
    scale = exp(2 * pi * float(tr))
    alias = float(_alias_radius(k, triple, y, (g1, g2, g12)))
    torus_rad = (
        alias
        + sweep["cert_tail"]
        + sweep["heur_tail"]
        + sweep["abs_max"] * 2.0 ** -46
    )
    value = ErrReal(raw.real * scale, torus_rad * scale * (1 + 1e-9))
    if budget is not None and value.rad > budget:
        raise PrecisionBudgetError(
            "fourier inversion radius %s exceeds the requested budget %s"
            % (value.rad, budget)
        )
    return value


# ---------------------------------------------------------------------------
# Bounded exhaustive matrix search
# ---------------------------------------------------------------------------


def bounded_matrix_search(
    predicate,
    shape: tuple | int,
    bound: int,
    *,
    cap: int = SEARCH_CAP,
    prefix_filter=None,
) -> list[Mat]:
    """All integer matrices of the given shape with entries in
    [-bound, bound] satisfying the predicate.

    Refuses outright (:class:`ResourceCapError`) when the raw search
    space (2 bound + 1)^(rows * cols) exceeds ``cap``.  The optional
    ``prefix_filter`` receives the partially built matrix (a tuple of
    complete rows) after each row and may return False to prune; it must
    be implied by the predicate, which is checked on full matrices only.
    """
    if isinstance(shape, int):
        shape = (shape, shape)
    rows, cols = shape
    if rows < 1 or cols < 1 or bound < 0:
        raise ValueError("need a nonempty shape and bound >= 0")
    space = (2 * bound + 1) ** (rows * cols)
    if space > cap:
        raise ResourceCapError(
            "search space %d exceeds the resource cap %d" % (space, cap)
        )
    row_values = list(itertools.product(range(-bound, bound + 1), repeat=cols))
    out: list[Mat] = []

    def extend(prefix: tuple):
        if len(prefix) == rows:
            if predicate(prefix):
                out.append(prefix)
            return
        for row in row_values:
            cand = prefix + (row,)
            if prefix_filter is not None and not prefix_filter(cand):
                continue
            extend(cand)

    extend(())
    return out
