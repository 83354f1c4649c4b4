"""Jacobi form expansions extracted from degree-2 coefficient functions.

A degree-2 Fourier expansion indexed by half-integral ``T = (n, r/2;
r/2, m)`` can be re-read, for fixed scalar index ``m``, as the Fourier
expansion ``c(n, r)`` of a Jacobi form of weight ``k`` and index ``m``.
This module provides that extraction over a discriminant window
``0 <= 4 m n - r^2 <= D_max``, the index-1 Jacobi Eisenstein expansion
obtained from the degree-2 Eisenstein coefficients, a cuspidality test
(singular coefficients vanish), a proportionality report for comparing
two expansions, and an internally constructed basis vector for the
one-dimensional weight-12 index-1 cusp space.

Coefficient values are exact ``Fraction``s or certified ``ErrReal``
enclosures; the arithmetic below keeps rational inputs exact and only
widens to enclosures when an operand already carries a radius.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from types import MappingProxyType
from typing import Callable, Mapping

from .eisenstein import a2
from .lvalues import ErrReal
from .matrices import HalfIntSym
from .qseries import QSeries, eisenstein_qexp

__all__ = [
    "JacobiExpansion",
    "ProportionalityReport",
    "fj_support",
    "extract_fj",
    "jacobi_eisenstein_index1",
    "is_cuspidal",
    "proportionality_check",
    "cusp_reference_weight12",
]


# ---------------------------------------------------------------------------
# value helpers: Fraction stays exact, ErrReal carries its radius
# ---------------------------------------------------------------------------


def _bounds(value) -> tuple[Fraction, Fraction]:
    """Exact lower/upper rational bounds of a coefficient value."""

    if isinstance(value, ErrReal):
        return value.lo, value.hi
    fr = Fraction(value)
    return fr, fr


def _magnitude_upper(value) -> Fraction:
    lo, hi = _bounds(value)
    return max(abs(lo), abs(hi))


def _magnitude_lower(value) -> Fraction:
    """Largest rational certainly below |value| (0 if the sign is unknown)."""

    lo, hi = _bounds(value)
    if lo <= 0 <= hi:
        return Fraction(0)
    return min(abs(lo), abs(hi))


def _is_rational(value) -> bool:
    return isinstance(value, (int, Fraction))


def _v_add(a, b):
    if _is_rational(a) and _is_rational(b):
        return Fraction(a) + Fraction(b)
    return a + b


def _v_sub(a, b):
    if _is_rational(a) and _is_rational(b):
        return Fraction(a) - Fraction(b)
    return a - b


def _v_mul(a, b):
    if _is_rational(a) and _is_rational(b):
        return Fraction(a) * Fraction(b)
    return a * b


def _v_div(a, b):
    if _is_rational(a) and _is_rational(b):
        return Fraction(a) / Fraction(b)
    if _is_rational(a):
        return Fraction(a) / b
    return a / b


def _value_json(value) -> tuple[str, str]:
    if isinstance(value, ErrReal):
        payload = value.to_json()
        return payload["mid"], payload["rad"]
    fr = Fraction(value)
    return "%d/%d" % (fr.numerator, fr.denominator), "0/1"


# ---------------------------------------------------------------------------
# the expansion container
# ---------------------------------------------------------------------------


def fj_support(index_m: int, d_max: int) -> tuple[tuple[int, int], ...]:
    """Index pairs ``(n, r)`` covered by an extraction window.

    For positive index the window is ``0 <= 4 m n - r^2 <= d_max`` with
    ``|r| <= 2 m + isqrt(d_max)``; the bound on ``r`` keeps the window
    finite while still containing, for every discriminant class
    ``(4 m n - r^2, r mod 2m)``, both a representative and at least one
    translate, so the class-invariance of extracted data is testable.
    Index 0 forces ``r = 0`` (positive semidefiniteness) and the window
    degenerates to ``0 <= n <= d_max``.
    """

    if index_m < 0:
        raise ValueError("index must be nonnegative")
    if d_max < 0:
        raise ValueError("d_max must be nonnegative")
    if index_m == 0:
        return tuple((n, 0) for n in range(d_max + 1))
    keys = []
    r_max = 2 * index_m + isqrt(d_max)
    for r in range(-r_max, r_max + 1):
        n_lo = -((-r * r) // (4 * index_m))  # ceil(r^2 / 4m)
        n_hi = (d_max + r * r) // (4 * index_m)
        for n in range(n_lo, n_hi + 1):
            if 0 <= 4 * index_m * n - r * r <= d_max:
                keys.append((n, r))
    return tuple(sorted(keys))


@dataclass(frozen=True)
class JacobiExpansion:
    """Fourier coefficients ``c(n, r)`` of one Jacobi form.

    ``coeffs`` maps every ``(n, r)`` of ``fj_support(index, d_max)`` to
    an exact ``Fraction`` or a certified ``ErrReal``.  For a genuine
    Jacobi form of index ``m`` the value depends only on the pair
    ``(4 m n - r^2, r mod 2m)``; that is a theorem about the source of
    the data, so it is exposed as :meth:`check_disc_invariance` and
    asserted in tests rather than assumed by the container.
    """

    k: int
    index: int
    d_max: int
    coeffs: Mapping[tuple[int, int], object]

    def __post_init__(self):
        expected = fj_support(self.index, self.d_max)
        if set(self.coeffs) != set(expected):
            raise ValueError(
                "coefficient support disagrees with the (index, d_max) window"
            )
        object.__setattr__(self, "coeffs", MappingProxyType(dict(self.coeffs)))

    def __getitem__(self, key: tuple[int, int]):
        return self.coeffs[key]

    def keys(self):
        return sorted(self.coeffs)

    def items(self):
        return [(key, self.coeffs[key]) for key in self.keys()]

    def disc(self, key: tuple[int, int]) -> int:
        n, r = key
        return 4 * self.index * n - r * r

    def singular_items(self):
        """Entries on the discriminant-zero boundary ``4 m n = r^2``."""

        return [(key, value) for key, value in self.items() if self.disc(key) == 0]

    def magnitude_scale(self) -> Fraction:
        """Largest certain coefficient magnitude (upper bounds)."""

        return max(
            (_magnitude_upper(v) for v in self.coeffs.values()), default=Fraction(0)
        )

    # -- linear structure ----------------------------------------------

    def _merge(self, other: "JacobiExpansion", fn) -> "JacobiExpansion":
        if (self.k, self.index, self.d_max) != (other.k, other.index, other.d_max):
            raise ValueError("expansions live in different spaces")
        merged = {key: fn(self.coeffs[key], other.coeffs[key]) for key in self.coeffs}
        return JacobiExpansion(self.k, self.index, self.d_max, merged)

    def __add__(self, other: "JacobiExpansion") -> "JacobiExpansion":
        return self._merge(other, _v_add)

    def __sub__(self, other: "JacobiExpansion") -> "JacobiExpansion":
        return self._merge(other, _v_sub)

    def scaled(self, c) -> "JacobiExpansion":
        scaled = {key: _v_mul(value, c) for key, value in self.coeffs.items()}
        return JacobiExpansion(self.k, self.index, self.d_max, scaled)

    def mul_qseries(self, g: QSeries, g_weight: int) -> "JacobiExpansion":
        """Multiply by a degree-1 expansion of weight ``g_weight``.

        The product of a Jacobi form of weight ``k`` and index ``m``
        with a modular form in the variable of the ``q``-expansion has
        weight ``k + g_weight`` and the same index; coefficientwise
        ``c'(n, r) = sum_j c(n - j, r) g_j``, where ``c`` vanishes below
        the positive-semidefinite boundary.
        """

        need = max((n for n, _ in self.coeffs), default=0)
        if g.trunc < need:
            raise ValueError(
                "q-series truncated at %d; the window needs %d" % (g.trunc, need)
            )
        out = {}
        for (n, r), _ in self.coeffs.items():
            total = Fraction(0)
            for j in range(n + 1):
                src = (n - j, r)
                if src in self.coeffs:
                    gj = g[j]
                    if gj:
                        total = _v_add(total, _v_mul(self.coeffs[src], gj))
            out[(n, r)] = total
        return JacobiExpansion(self.k + g_weight, self.index, self.d_max, out)

    # -- structural checks ----------------------------------------------

    def check_disc_invariance(self, tol: Fraction = Fraction(0)) -> bool:
        """Do coefficients depend only on ``(4 m n - r^2, r mod 2m)``?

        Exact data is compared exactly (``tol = 0``); enclosures compare
        within ``tol`` times the expansion scale plus their radii.
        """

        groups: dict[tuple[int, int], list] = {}
        for key, value in self.coeffs.items():
            n, r = key
            cls = (self.disc(key), r % (2 * self.index) if self.index else 0)
            groups.setdefault(cls, []).append(value)
        allowance = Fraction(tol) * self.magnitude_scale()
        for values in groups.values():
            first = values[0]
            for other in values[1:]:
                if _magnitude_lower(_v_sub(first, other)) > allowance:
                    return False
        return True

    def to_json(self) -> dict:
        entries = []
        for (n, r), value in self.items():
            mid, rad = _value_json(value)
            entries.append({"n": n, "r": r, "value": mid, "radius": rad})
        return {"k": self.k, "m": self.index, "coeffs": entries}


# ---------------------------------------------------------------------------
# extraction
# ---------------------------------------------------------------------------


def extract_fj(
    coeff_fn: Callable[[HalfIntSym], object], k: int, index_m: int, d_max: int
) -> JacobiExpansion:
    """Read a Jacobi expansion off a degree-2 coefficient function.

    ``c(n, r) = coeff_fn(T)`` for ``T = (n, r/2; r/2, index_m)`` over
    the window of :func:`fj_support`.  Index 0 collapses the elliptic
    variable entirely: the extraction degenerates to the rank-reduced
    degree-1 data ``c(n, 0) = coeff_fn(diag(n, 0))``, the only
    degenerate-index case this package needs.
    """

    out = {}
    for n, r in fj_support(index_m, d_max):
        t_form = HalfIntSym(((2 * n, r), (r, 2 * index_m)))
        out[(n, r)] = coeff_fn(t_form)
    return JacobiExpansion(k, index_m, d_max, out)


def jacobi_eisenstein_index1(k: int, d_max: int) -> JacobiExpansion:
    """Index-1 Jacobi Eisenstein expansion of Siegel type, exactly.

    These are the index-1 Fourier-Jacobi coefficients of the degree-2
    Eisenstein series, so the extraction runs over the exact rational
    ``a2`` coefficients.
    """

    if k < 4 or k % 2:
        raise ValueError("weight must be even and at least 4")
    return extract_fj(lambda t_form: a2(t_form, k), k, 1, d_max)


# ---------------------------------------------------------------------------
# cuspidality and proportionality
# ---------------------------------------------------------------------------


def is_cuspidal(phi: JacobiExpansion, tol=Fraction(1, 10**6)) -> bool:
    """Do all singular coefficients (``4 m n = r^2``) vanish?

    The test is relative: every singular entry must satisfy
    ``|c(n, r)| <= tol * scale``, using certified upper bounds.  The
    yardstick ``scale`` is the magnitude of the leading (first in
    ``(n, r)`` order) certainly-nonzero coefficient; coefficients of
    these expansions grow rapidly with the discriminant, so the largest
    entry of a wide window would dwarf any constant term and make the
    test vacuous, whereas the leading term is window-independent.  With
    no certainly-nonzero entry the scale is 0 and only exactly-zero
    singular coefficients pass; in particular the identically-zero
    expansion counts as cuspidal.
    """

    if phi.d_max < 16:
        raise ValueError("cuspidality needs the window to reach d_max >= 16")
    scale = Fraction(0)
    for _, value in phi.items():
        if _magnitude_lower(value) > 0:
            scale = _magnitude_upper(value)
            break
    allowance = Fraction(tol) * scale
    return all(
        _magnitude_upper(value) <= allowance for _, value in phi.singular_items()
    )


@dataclass(frozen=True)
class ProportionalityReport:
    """Outcome of comparing ``phi`` against ``ratio * psi``."""

    ok: bool
    ratio: object
    anchor: tuple[int, int]
    max_deviation: Fraction
    scale: Fraction

    def to_json(self) -> dict:
        mid, rad = _value_json(self.ratio)
        return {
            "ok": self.ok,
            "ratio": mid,
            "ratio_radius": rad,
            "anchor": list(self.anchor),
            "max_deviation": float(self.max_deviation),
            "scale": float(self.scale),
        }


def proportionality_check(
    phi: JacobiExpansion, psi: JacobiExpansion, tol=Fraction(1, 10**6)
) -> ProportionalityReport:
    """Is ``phi`` a scalar multiple of ``psi`` across the whole window?

    The ratio is pinned at the first (in ``(n, r)`` order) coefficient
    of ``psi`` that is certainly nonzero relative to ``psi``'s scale;
    every other entry must then satisfy
    ``|phi(n,r) - ratio * psi(n,r)| <= tol * scale`` with ``scale`` the
    larger of ``phi``'s coefficient scale and ``|ratio|`` times
    ``psi``'s.  Exact inputs yield an exact ratio and exact deviations.
    """

    if (phi.k, phi.index, phi.d_max) != (psi.k, psi.index, psi.d_max):
        raise ValueError("expansions live in different spaces")
    tol = Fraction(tol)
    psi_scale = psi.magnitude_scale()
    anchor = None
    for key, value in psi.items():
        if _magnitude_lower(value) > tol * psi_scale:
            anchor = key
            break
    if anchor is None:
        raise ValueError("reference expansion vanishes below the tolerance")
    ratio = _v_div(phi[anchor], psi[anchor])
    scale = max(phi.magnitude_scale(), _magnitude_upper(ratio) * psi_scale)
    allowance = tol * scale
    max_dev = Fraction(0)
    for key, value in phi.items():
        dev = _magnitude_upper(_v_sub(value, _v_mul(ratio, psi[key])))
        if dev > max_dev:
            max_dev = dev
    return ProportionalityReport(
        ok=max_dev <= allowance,
        ratio=ratio,
        anchor=anchor,
        max_deviation=max_dev,
        scale=scale,
    )


# ---------------------------------------------------------------------------
# the weight-12 index-1 cusp reference
# ---------------------------------------------------------------------------


def cusp_reference_weight12(d_max: int) -> JacobiExpansion:
    """A nonzero expansion spanning the weight-12 index-1 cusp space.

    Built with zero external data: the index-1 Eisenstein expansions of
    weights 4 and 6 are multiplied up to weight 12 by the degree-1
    Eisenstein series of weights 8 and 6 respectively, normalized to
    share the constant coefficient, and subtracted.  The difference has
    exactly vanishing singular coefficients (verified, not assumed) and
    is normalized so its first nonzero coefficient equals 1.  Since the
    weight-12 index-1 cusp space is one-dimensional, the result is a
    valid comparison reference for any cusp expansion in that space.
    """

    if d_max < 16:
        raise ValueError("reference needs the window to reach d_max >= 16")
    r_max = 2 + isqrt(d_max)
    n_max = (d_max + r_max * r_max) // 4
    e41 = jacobi_eisenstein_index1(4, d_max)
    e61 = jacobi_eisenstein_index1(6, d_max)
    lift_a = e41.mul_qseries(eisenstein_qexp(8, n_max), 8)
    lift_b = e61.mul_qseries(eisenstein_qexp(6, n_max), 6)
    ref = lift_a.scaled(1 / lift_a[(0, 0)]) - lift_b.scaled(1 / lift_b[(0, 0)])
    for key, value in ref.singular_items():
        if value != 0:
            raise ArithmeticError(
                "singular coefficient %s failed to cancel in the cusp reference"
                % (key,)
            )
    for _, value in ref.items():
        if value != 0:
            return ref.scaled(1 / value)
    raise ArithmeticError("cusp reference collapsed to zero")
