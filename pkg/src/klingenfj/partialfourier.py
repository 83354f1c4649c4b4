"""Fourier coefficients of the partial series behind the Klingen-type
Eisenstein decomposition.

The degree-n series attached to a degree-m cusp eigenform f splits over
strata labelled by an integer t, and the Fourier coefficient of the
t-stratum partial series at a positive semidefinite half-integral R of
rank l is

    kappa * sum_{(T, W, w3)} a_l(T) * b(T[tw3]) * det(T[tw3])^((m+1)/2 - k)

where the sum runs over the classes enumerated by
:func:`klingenfj.matrices.enumerate_reps` (stacks ``(W; w3)`` with
``R = T[tW]``, rank and primitivity side conditions, modulo the right
``GL_l(Z)`` action), ``a_l`` is the degree-l Siegel Eisenstein
coefficient, ``b`` the eigenform coefficient, and
``kappa = beta(m,k)^(-1) D_f(k-m)^(-1)`` the normalization of
:mod:`klingenfj.lvalues`.

Everything rational is computed exactly: the structured part S is an
exact Fraction, the w3-direction truncation carries an exact rational
certified tail radius (Deligne bound plus a lattice-count bound), and
kappa enters as an exact rational interval.  The public results are
:class:`StrataCoeff` records exposing S, kappa and the product with
sound enclosures.

The degree-2, index-1, t = 1 stratum also has a closed form as a double
sum over (a, b, d) and (u, v); :func:`fc_H1_deg2` implements it as a
structurally independent cross-check of the general path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Callable

from .eisenstein import a_coeff, a2
from .lvalues import (
    ErrReal,
    PrecisionBudgetError,
    kappa_exact_interval,
    working_prec,
    _eigen_b_fn,
)
from .matrices import (
    HalfIntSym,
    StrataParams,
    _congruence_quotient,
    _w3_candidates,
    enumerate_reps,
    outer_classes,
    parabolic_reduce,
)
from .qseries import QSeries

__all__ = [
    "StrataCoeff",
    "KappaRef",
    "FJComponentKey",
    "BudgetNotMetError",
    "fc_H",
    "fc_H1_deg2",
    "fc_E",
    "fj_component_coeff",
]


DEFAULT_BUDGET = Fraction(1, 10**8)
DEFAULT_BOUND0 = 32
DEFAULT_MAX_BOUND = 4096
KAPPA_TAIL_N = 500

# successful evaluations keyed by reduced class and full configuration
_FC_H_CACHE: dict = {}
_FC_H1_CACHE: dict = {}


class BudgetNotMetError(PrecisionBudgetError):
    """The certified radius still exceeds the budget at the bound ceiling.

    Carries the best achieved :class:`StrataCoeff` in ``result`` so the
    caller can inspect (or emit) the payload with its honest radius.
    """

    def __init__(self, message: str, result: "StrataCoeff"):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True)
class KappaRef:
    """Descriptor of the normalization kappa = beta(m,k)^(-1) D_f(k-m)^(-1).

    For m = 0 the series is the Siegel Eisenstein series itself and
    kappa degenerates to exactly 1; for m = 1 the composite closed form
    yields an exact rational interval (see
    :func:`klingenfj.lvalues.kappa_exact_interval`).
    """

    m: int
    k: int
    f: QSeries | None
    tail_n: int = KAPPA_TAIL_N

    def exact_interval(self) -> tuple[Fraction, Fraction]:
        if self.m == 0:
            return Fraction(1), Fraction(1)
        if self.m != 1:
            raise ValueError("kappa descriptor supports m in {0, 1} only")
        if self.f is None:
            raise ValueError("m = 1 needs the eigenform f")
        return kappa_exact_interval(self.k, self.f, self.tail_n)

    def as_errreal(self, *, prec: int | None = None) -> ErrReal:
        lo, hi = self.exact_interval()
        return ErrReal.from_fraction_interval(lo, hi, prec=prec)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "f": None if self.f is None else "weight-%d eigenform, b(1)=1" % (self.k,),
            "tail_n": self.tail_n,
        }


def _interval_mul(
    a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]
) -> tuple[Fraction, Fraction]:
    """Exact product of two rational intervals."""
    prods = [x * y for x in a for y in b]
    return min(prods), max(prods)


@dataclass(frozen=True)
class StrataCoeff:
    """One computed Fourier coefficient, split as kappa times S.

    ``structured_interval`` encloses the exact structured part S
    (midpoint = truncated double sum, radius = certified w3 tail), and
    ``kappa_interval`` encloses kappa; both are exact rational
    intervals, so ``value_interval`` (their product) is too.  The
    ``structured`` / ``value`` ErrReal views round those intervals
    soundly.  ``budget_met`` records whether the requested relative
    budget was reached; ``trunc_meta`` holds every knob needed to
    reproduce the run.
    """

    structured_interval: tuple[Fraction, Fraction]
    kappa_ref: KappaRef
    kappa_interval: tuple[Fraction, Fraction]
    trunc_meta: dict
    budget_met: bool

    @property
    def structured(self) -> ErrReal:
        lo, hi = self.structured_interval
        return ErrReal.from_fraction_interval(lo, hi)

    @property
    def value_interval(self) -> tuple[Fraction, Fraction]:
        return _interval_mul(self.kappa_interval, self.structured_interval)

    @property
    def value(self) -> ErrReal:
        lo, hi = self.value_interval
        return ErrReal.from_fraction_interval(lo, hi)

    @property
    def structured_mid(self) -> Fraction:
        lo, hi = self.structured_interval
        return (lo + hi) / 2

    def to_json(self) -> dict:
        smid = self.structured_mid
        return {
            "structured": {
                "mid": "%d/%d" % (smid.numerator, smid.denominator),
                "errreal": self.structured.to_json(),
            },
            "kappa": {**self.kappa_ref.to_json(), "errreal": self.kappa_ref.as_errreal().to_json()},
            "value": self.value.to_json(),
            "trunc_meta": {**self.trunc_meta, "budget_met": self.budget_met},
        }


@dataclass(frozen=True)
class FJComponentKey:
    """Address of one component of a Fourier-Jacobi coefficient.

    The degree splits as n = r1 + r2; the coefficient of the
    Fourier-Jacobi expansion along the r2-block at index R4 decomposes
    into components labelled by s, and the component (r1, r2, s) at the
    block data (R1, R2) is the coefficient of the t-stratum partial
    series at the assembled matrix R = (R1, R2; tR2, R4) with
    t = s - m + rank(R4).

    ``r2_doubled`` holds 2*R2 as an integer matrix (off-diagonal blocks
    of a half-integral matrix are half-integral entrywise).
    """

    r1: int
    r2: int
    s: int
    r4: HalfIntSym
    r1_block: HalfIntSym
    r2_doubled: tuple[tuple[int, ...], ...]

    def admissible_range(self, m: int) -> tuple[int, int]:
        rk = self.r4.rank()
        return max(m - rk, 0), min(self.r1 + self.r2 - rk, m + self.r2 - rk)

    def assembled(self) -> HalfIntSym:
        if self.r1_block.n != self.r1 or self.r4.n != self.r2:
            raise ValueError("block sizes disagree with (r1, r2)")
        if len(self.r2_doubled) != self.r1 or any(
            len(row) != self.r2 for row in self.r2_doubled
        ):
            raise ValueError("off-diagonal block must be r1 x r2")
        top = [
            tuple(self.r1_block.doubled[i]) + tuple(self.r2_doubled[i])
            for i in range(self.r1)
        ]
        bot = [
            tuple(self.r2_doubled[i][j] for i in range(self.r1))
            + tuple(self.r4.doubled[j])
            for j in range(self.r2)
        ]
        return HalfIntSym(tuple(top + bot))


# ---------------------------------------------------------------------------
# certified tails
# ---------------------------------------------------------------------------


def _tail_sum_l1(t1: int, k: int, bound: int) -> Fraction:
    """Bound sum over u >= 1 with t1 u^2 > bound of 2 (t1 u^2)^(1 - k/2).

    Each dropped term obeys |b(q)| q^(1-k) <= 2 q^(1-k/2) (Deligne bound
    |b(q)| <= sigma_0(q) q^((k-1)/2) and sigma_0(q) <= 2 sqrt(q)); the
    integral estimate sum_{u > U} u^(2-k) <= U^(3-k)/(k-3) finishes it.
    """
    e = 1 - k // 2  # integer since k is even
    u0 = isqrt(bound // t1)
    base = 2 * Fraction(t1) ** e
    if u0 >= 1:
        return base * Fraction(1, u0 ** (k - 3)) / (k - 3)
    return base * (1 + Fraction(1, k - 3))


def _tail_sum_l2(dt, k: int, bound: int) -> Fraction:
    """Bound sum over (u,v) != 0 with Q_T(u,v) > bound of 2 Q_T^(1 - k/2).

    Uses the eigenvalue bound Q_T(u,v) >= mu (u^2 + v^2) with mu a
    rational lower bound for the smallest eigenvalue of T (exact
    closed form (tr - sqrt(tr^2 - 4 det))/2 rounded down through isqrt,
    with det/tr as a fallback), the circle count r_2(j) <= 8 sqrt(j),
    and the integral estimate
    sum_{j > S} j^((3-k)/2) <= (2/(k-5)) j0^(2-k/2) sqrt(j0)
    with sqrt(j0) <= isqrt(j0) + 1.  Everything is an exact Fraction.
    """
    e = 1 - k // 2
    if k < 8:
        raise ValueError("tail bound needs k >= 8")
    d00, d01, d11 = dt[0][0], dt[0][1], dt[1][1]
    det2t = d00 * d11 - d01 * d01
    tr2t = d00 + d11
    disc = tr2t * tr2t - 4 * det2t
    mu = Fraction(tr2t - (isqrt(disc) + 1), 4)  # lower bound for lambda_min(T)
    mu = max(mu, Fraction(det2t, 2 * tr2t))
    s_cut = Fraction(bound) / mu  # Q_T > bound implies u^2 + v^2 > s_cut
    j0 = int(s_cut)  # floor
    if j0 >= 1:
        root = isqrt(j0) + 1  # upper bound for sqrt(j0)
        inner = Fraction(16, k - 5) * root * Fraction(1, j0 ** (k // 2 - 2))
    else:
        # sum over all j >= 1 of 8 j^((3-k)/2) <= 8 (1 + 2/(k-5))
        inner = 8 * (1 + Fraction(2, k - 5))
    return 2 * mu ** e * inner


def _class_tail(t_form: HalfIntSym, k: int, bound: int) -> Fraction:
    """Certified tail of the w3-series of one outer class beyond ``bound``."""
    if t_form.n == 1:
        return _tail_sum_l1(t_form.doubled[0][0] // 2, k, bound)
    if t_form.n == 2:
        return _tail_sum_l2(t_form.doubled, k, bound)
    raise ValueError("unsupported rank; the verified pipeline needs l <= 2 only")


# ---------------------------------------------------------------------------
# the main formula
# ---------------------------------------------------------------------------


def _form_value(t_form: HalfIntSym, w3) -> int:
    """The 1x1 value T[t w3] for a single-row w3."""
    (row,) = w3
    dt = t_form.doubled
    l = t_form.n
    total = sum(row[i] * dt[i][j] * row[j] for i in range(l) for j in range(l))
    assert total % 2 == 0
    return total // 2


def _structured_once(
    b_fn: Callable[[int], Fraction] | None,
    k: int,
    n: int,
    m: int,
    r: int,
    t: int,
    R: HalfIntSym,
    bound: int,
) -> tuple[Fraction, Fraction, dict]:
    """One pass of the double sum at a fixed w3 bound.

    Returns (S_partial, tail_radius, counters).  S_partial is exact; the
    tail radius covers every class whose w3 form value exceeds ``bound``
    (for m = 1; m = 0 has no w3 direction and a zero tail).
    """
    l = R.rank()
    reps = enumerate_reps(R, l, m, r, t, bound)
    s_partial = Fraction(0)
    for rep in reps:
        term = a_coeff(rep.t, k)
        if m == 1:
            q = _form_value(rep.t, rep.w3)
            term *= b_fn(q) * Fraction(1, q ** (k - 1))
        s_partial += term
    if m == 0:
        tail = Fraction(0)
        n_outer = None
    else:
        tail = Fraction(0)
        outer = outer_classes(R, l)
        n_outer = len(outer)
        for t_form, _w in outer:
            tail += abs(a_coeff(t_form, k)) * _class_tail(t_form, k, bound)
    return s_partial, tail, {"n_classes": len(reps), "n_outer": n_outer}


def _budget_met(
    value_iv: tuple[Fraction, Fraction], budget: Fraction
) -> bool:
    """Relative test: radius <= budget * |midpoint| (absolute when mid = 0)."""
    lo, hi = value_iv
    mid = (lo + hi) / 2
    rad = (hi - lo) / 2
    if mid == 0:
        return rad <= budget
    return rad <= budget * abs(mid)


def fc_H(
    f: QSeries | None,
    k: int,
    n: int,
    m: int,
    r: int,
    t: int,
    R: HalfIntSym,
    budget=DEFAULT_BUDGET,
    *,
    bound0: int = DEFAULT_BOUND0,
    max_bound: int = DEFAULT_MAX_BOUND,
) -> StrataCoeff:
    """Fourier coefficient of the t-stratum partial series at R.

    Exact structured part plus certified w3 tail, normalized by the
    exact kappa interval.  The w3 bound starts at ``bound0`` and doubles
    until the budget (relative radius of kappa*S) is met; hitting
    ``max_bound`` first raises :class:`BudgetNotMetError` carrying the
    best result.

    m = 0 degenerates to the Siegel Eisenstein normalization: kappa = 1,
    the b-factor is empty, and the class sum is finite and exact.
    Infeasible rank constraints (t + m > rank R) give an exact zero with
    zero radius, detected symbolically.

    For m = 1 the bound is additionally capped at ``f.trunc`` so that
    every eigenform coefficient the sum requests is resolvable (form
    values <= bound never need b at a prime beyond the truncation).

    Binary R is replaced by its translation-reduced representative
    before evaluation: stratum coefficients are invariant under the
    stratum-compatible parabolic subgroup (the substitution W -> tU W
    bijects the class data, preserving every rank and primitivity side
    condition), and the reduced form keeps the certified tail bounds
    sharp where a skew representative would inflate them.  Full GL2
    reduction would be wrong here -- only the total over all strata is
    GL2-invariant.  Successful results are cached per reduced class and
    configuration.
    """
    if k % 2 or k <= n + 1:
        raise ValueError("need even weight k > n + 1, got k=%r, n=%r" % (k, n))
    if m not in (0, 1):
        raise ValueError("unsupported index; the verified pipeline needs m <= 1 only")
    params = StrataParams(n=n, m=m, r=r, t=t)  # validates ranges
    if R.n != n:
        raise ValueError("R must be %d x %d" % (n, n))
    if not R.is_psd():
        raise ValueError("R must be positive semidefinite")
    if m == 1 and f is None:
        raise ValueError("m = 1 needs the eigenform f")
    budget = Fraction(budget)
    l = R.rank()
    if n == 2:
        R = parabolic_reduce(R)
    cache_key = (f, k, n, m, r, t, R, budget, bound0, max_bound, working_prec(None))
    cached = _FC_H_CACHE.get(cache_key)
    if cached is not None:
        return cached
    kref = KappaRef(m=m, k=k, f=f if m else None)
    meta_base = {"n": n, "m": m, "r": r, "t": t, "l": l, "budget": str(budget)}

    if t + m > l:
        # rank condition rk(w2; w3) = t + m is unsatisfiable on l columns
        result = StrataCoeff(
            structured_interval=(Fraction(0), Fraction(0)),
            kappa_ref=kref,
            kappa_interval=kref.exact_interval(),
            trunc_meta={**meta_base, "bound": None, "symbolic_zero": True},
            budget_met=True,
        )
        _FC_H_CACHE[cache_key] = result
        return result

    b_fn = _eigen_b_fn(f, k) if m == 1 else None
    kappa_iv = kref.exact_interval()
    eff_max = min(max_bound, f.trunc) if m == 1 else max_bound
    bound = min(bound0, eff_max)
    best = None
    while True:
        s_partial, tail, counters = _structured_once(b_fn, k, n, m, r, t, R, bound)
        s_iv = (s_partial - tail, s_partial + tail)
        value_iv = _interval_mul(kappa_iv, s_iv)
        met = _budget_met(value_iv, budget)
        best = StrataCoeff(
            structured_interval=s_iv,
            kappa_ref=kref,
            kappa_interval=kappa_iv,
            trunc_meta={
                **meta_base,
                "bound": None if m == 0 else bound,
                "kappa_tail_n": kref.tail_n if m else None,
                **counters,
            },
            budget_met=met,
        )
        if met or m == 0:
            if not met:  # m == 0 is exact; unmet budget means kappa==1, tail==0
                raise AssertionError("m = 0 coefficients are exact")
            _FC_H_CACHE[cache_key] = best
            return best
        nxt = min(2 * bound, eff_max)
        if nxt <= bound:
            raise BudgetNotMetError(
                "certified radius still above budget at w3 bound %d "
                "(achieved interval width %s)" % (bound, float(s_iv[1] - s_iv[0])),
                best,
            )
        bound = nxt


def fc_E(
    f: QSeries | None,
    k: int,
    n: int,
    m: int,
    r: int,
    R: HalfIntSym,
    budget=DEFAULT_BUDGET,
    *,
    bound0: int = DEFAULT_BOUND0,
    max_bound: int = DEFAULT_MAX_BOUND,
) -> StrataCoeff:
    """Fourier coefficient of the full series: sum of fc_H over all strata.

    The stratum label ranges over 0 <= t <= min(n-m, n-r); structured
    parts add exactly and radii add.  Each stratum is computed at budget
    / (number of strata) so the combined result meets the requested
    budget.
    """
    budget = Fraction(budget)
    tmax = min(n - m, n - r)
    per = budget / (tmax + 1)
    parts = [
        fc_H(f, k, n, m, r, t, R, per, bound0=bound0, max_bound=max_bound)
        for t in range(tmax + 1)
    ]
    lo = sum(p.structured_interval[0] for p in parts)
    hi = sum(p.structured_interval[1] for p in parts)
    kref = parts[0].kappa_ref
    kappa_iv = parts[0].kappa_interval
    value_iv = _interval_mul(kappa_iv, (lo, hi))
    return StrataCoeff(
        structured_interval=(lo, hi),
        kappa_ref=kref,
        kappa_interval=kappa_iv,
        trunc_meta={
            "n": n,
            "m": m,
            "r": r,
            "t": "sum over 0..%d" % tmax,
            "budget": str(budget),
            "parts": [p.trunc_meta for p in parts],
        },
        budget_met=_budget_met(value_iv, budget),
    )


# ---------------------------------------------------------------------------
# the degree-2 closed form (cross-check path)
# ---------------------------------------------------------------------------


def _similarity_quotient(dr, a: int, b: int, d: int):
    """Doubled U R U^(-1) for U = (a b; 0 d) when half-integral, else None.

    The similarity reading of the outer transformation.  Generically the
    result is not symmetric (it is a similarity, not a congruence), in
    which case the class is skipped; kept behind a flag so the
    reconciliation test can exhibit the failure.
    """
    # U (2R) U^{-1} with U = (a b; 0 d): exact rational arithmetic
    r00, r01, r11 = Fraction(dr[0][0]), Fraction(dr[0][1]), Fraction(dr[1][1])
    # rows of U (2R): (a r00 + b r01, a r01 + b r11), (d r01, d r11)
    m00, m01 = a * r00 + b * r01, a * r01 + b * r11
    m10, m11 = d * r01, d * r11
    # times U^{-1} = (1/a, -b/(ad); 0, 1/d)
    t00 = m00 / a
    t01 = -m00 * b / (a * d) + m01 / d
    t10 = m10 / a
    t11 = -m10 * b / (a * d) + m11 / d
    if t01 != t10:
        return None
    ints = [t00, t01, t11]
    if any(x.denominator != 1 for x in ints):
        return None
    out = ((int(t00), int(t01)), (int(t01), int(t11)))
    if out[0][0] % 2 or out[1][1] % 2:
        return None
    return out


def fc_H1_deg2(
    f: QSeries,
    k: int,
    R: HalfIntSym,
    budget=DEFAULT_BUDGET,
    *,
    reading: str = "congruence",
    bound0: int = DEFAULT_BOUND0,
    max_bound: int = DEFAULT_MAX_BOUND,
) -> StrataCoeff:
    """The degree-2, index-1, t = 1 stratum coefficient, closed form.

    Direct double sum: outer over integer triples (a, b, d) with
    a, d > 0 and 0 <= b < a such that the transformed T stays
    half-integral, inner over (u, v) with u != 0, gcd(u, a) = 1 and
    gcd(a v - u b, d) = 1, of a_2(T) b(Q_T(u,v)) Q_T(u,v)^(1-k), times
    kappa.  The inner sum is quotiented by (u,v) ~ (-u,-v) via u > 0,
    consistent with the general path's sign normalization.

    ``reading`` selects the outer transformation: "congruence" (default;
    T determined by R = T[tU]) or "similarity" (T = U R U^(-1) kept for
    the reconciliation test; generically drops classes).  Must agree
    with fc_H(f, k, 2, 1, 1, 1, R) within combined radii for the
    congruence reading.

    In the congruence reading R is translation-reduced first (stratum
    values are invariant under the stratum-compatible parabolic, and
    reduction keeps the tail certificates sharp) and successful results
    are cached; the similarity probe evaluates the given representative
    verbatim.
    """
    if R.n != 2 or not R.is_posdef():
        raise ValueError("need a 2 x 2 positive definite R")
    if reading not in ("congruence", "similarity"):
        raise ValueError("reading must be 'congruence' or 'similarity'")
    budget = Fraction(budget)
    if reading == "congruence":
        R = parabolic_reduce(R)
    cache_key = (f, k, R, budget, reading, bound0, max_bound, working_prec(None))
    cached = _FC_H1_CACHE.get(cache_key)
    if cached is not None:
        return cached
    b_fn = _eigen_b_fn(f, k)
    kref = KappaRef(m=1, k=k, f=f)
    kappa_iv = kref.exact_interval()
    eff_max = min(max_bound, f.trunc)

    dr = R.doubled
    det0 = dr[0][0] * dr[1][1] - dr[0][1] ** 2

    classes: list[tuple[tuple[int, int, int], HalfIntSym]] = []
    for a in range(1, isqrt(det0 // 3) + 1):
        for d in range(1, det0 + 1):
            if 3 * (a * d) ** 2 > det0:
                break
            for b in range(a):
                dt = (
                    _congruence_quotient(dr, a, b, d)
                    if reading == "congruence"
                    else _similarity_quotient(dr, a, b, d)
                )
                if dt is None:
                    continue
                t_form = HalfIntSym(dt)
                if t_form.is_posdef():
                    classes.append(((a, b, d), t_form))
    classes.sort(key=lambda it: it[0])

    bound = min(bound0, eff_max)
    while True:
        s_partial = Fraction(0)
        tail = Fraction(0)
        n_inner = 0
        for (a, b, d), t_form in classes:
            a2t = a2(t_form, k)
            dt = t_form.doubled
            for u, v in _w3_candidates(dt, bound):
                if u == 0:
                    continue  # the t = 1 rank condition
                if gcd(u, a) != 1 or gcd(a * v - u * b, d) != 1:
                    continue
                q = (dt[0][0] * u * u + 2 * dt[0][1] * u * v + dt[1][1] * v * v) // 2
                s_partial += a2t * b_fn(q) * Fraction(1, q ** (k - 1))
                n_inner += 1
            tail += abs(a2t) * _tail_sum_l2(dt, k, bound)
        s_iv = (s_partial - tail, s_partial + tail)
        value_iv = _interval_mul(kappa_iv, s_iv)
        met = _budget_met(value_iv, budget)
        meta = {
            "path": "deg2 closed form",
            "reading": reading,
            "bound": bound,
            "n_outer": len(classes),
            "n_inner": n_inner,
            "kappa_tail_n": kref.tail_n,
            "budget": str(budget),
        }
        result = StrataCoeff(
            structured_interval=s_iv,
            kappa_ref=kref,
            kappa_interval=kappa_iv,
            trunc_meta=meta,
            budget_met=met,
        )
        if met:
            _FC_H1_CACHE[cache_key] = result
            return result
        nxt = min(2 * bound, eff_max)
        if nxt <= bound:
            raise BudgetNotMetError(
                "certified radius still above budget at (u,v) bound %d" % bound,
                result,
            )
        bound = nxt


# ---------------------------------------------------------------------------
# Fourier-Jacobi component extraction
# ---------------------------------------------------------------------------


def fj_component_coeff(
    f: QSeries | None,
    k: int,
    key: FJComponentKey,
    budget=DEFAULT_BUDGET,
    *,
    m: int = 1,
    bound0: int = DEFAULT_BOUND0,
    max_bound: int = DEFAULT_MAX_BOUND,
) -> StrataCoeff:
    """Coefficient of one component of a Fourier-Jacobi coefficient.

    The component with label s of the Fourier-Jacobi coefficient at R4,
    evaluated at block data (R1, R2), is the t-stratum coefficient at
    the assembled R = (R1, R2; tR2, R4) with t = s - m + rank(R4).
    Inadmissible s raises with the admissible bounds spelled out.
    """
    s_lo, s_hi = key.admissible_range(m)
    if not s_lo <= key.s <= s_hi:
        raise ValueError(
            "component label s=%d outside the admissible range [%d, %d] "
            "for index rank %d (m=%d, r2=%d)"
            % (key.s, s_lo, s_hi, key.r4.rank(), m, key.r2)
        )
    t = key.s - m + key.r4.rank()
    n = key.r1 + key.r2
    tmax = min(n - m, n - key.r1)
    if not 0 <= t <= tmax:
        raise ValueError("derived stratum t=%d outside [0, %d]" % (t, tmax))
    return fc_H(
        f, k, n, m, key.r1, t, key.assembled(), budget,
        bound0=bound0, max_bound=max_bound,
    )
