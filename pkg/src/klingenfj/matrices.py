"""Exact integer matrix algebra: symplectic matrices, half-integral forms,
rank strata, and the class enumeration behind the coefficient formula.

Everything in this module is exact.  Matrices are tuples of tuples of
Python ints; half-integral symmetric forms ``T`` are stored through their
doubled matrix ``2T`` (integral, even diagonal) so that no denominators
ever appear.  Ranks and determinants use fraction-free (Bareiss)
elimination.

Conventions
-----------
* ``Sp_n(Z)`` consists of the ``2n x 2n`` integer matrices ``g`` with
  ``tg J g = J`` where ``J = (0, I_n; -I_n, 0)``; blocks ``A, B, C, D``
  are the four ``n x n`` corners.
* ``C(n, r)`` denotes the standard maximal parabolic: ``g[i][j] = 0``
  for ``i > n + r``, ``j <= n + r`` (1-based), i.e. the bottom-left
  ``(n-r) x (n+r)`` corner vanishes.  The Jacobi subgroup ``Jac(n, r)``
  additionally has an ``(n-r) x (n-r)`` identity in the lower-right
  corner.
* The quadratic-form pullback is written ``T[U] = tU T U``; on doubled
  matrices this is ``tU (2T) U``.
* Stacked class representatives ``(W; w3)`` are taken modulo the right
  ``GL_l(Z)`` column action *and* modulo a global sign on the ``w3``
  block.  With the verbatim leading constant of the coefficient formula
  this sign convention is the normalization under which the rank-one
  coefficients of the assembled series reproduce the coefficients of the
  input eigenform (see the package tests).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from random import Random

import numpy as np

Mat = tuple[tuple[int, ...], ...]

# Largest entry magnitude for which a product of two matrices is safely
# computed in int64: 2n * |a| * |b| < 2^63 comfortably holds below this.
_NUMPY_SAFE = 1 << 30


# ---------------------------------------------------------------------------
# plain matrix helpers
# ---------------------------------------------------------------------------


def as_mat(rows) -> Mat:
    """Normalize an iterable of iterables of ints to the tuple form."""

    out = tuple(tuple(int(x) for x in row) for row in rows)
    if out and any(len(row) != len(out[0]) for row in out):
        raise ValueError("ragged matrix")
    return out


def mat_shape(m: Mat, ncols: int | None = None) -> tuple[int, int]:
    if len(m) == 0:
        if ncols is None:
            raise ValueError("column count of an empty matrix is ambiguous")
        return (0, ncols)
    return (len(m), len(m[0]))


def identity_mat(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_mat(rows: int, cols: int) -> Mat:
    return tuple((0,) * cols for _ in range(rows))


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m)) if m else ()


def mat_neg(m: Mat) -> Mat:
    return tuple(tuple(-x for x in row) for row in m)


def _max_abs(m: Mat) -> int:
    return max((abs(x) for row in m for x in row), default=0)


def mat_mul(a: Mat, b: Mat) -> Mat:
    """Exact matrix product, with a fast int64 path for small entries."""

    if len(a) == 0 or len(b) == 0:
        inner = len(a[0]) if a else 0
        if a and inner != len(b):
            raise ValueError("dimension mismatch")
        return zero_mat(len(a), len(b[0]) if b else 0)
    if len(a[0]) != len(b):
        raise ValueError("dimension mismatch")
    if len(b[0]) == 0:
        return tuple(() for _ in a)
    ma, mb = _max_abs(a), _max_abs(b)
    if ma and mb and ma < _NUMPY_SAFE and mb < _NUMPY_SAFE and ma * mb * len(b) < (1 << 62):
        prod = np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)
        return tuple(tuple(int(x) for x in row) for row in prod.tolist())
    cols = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a
    )


def hstack(*mats: Mat) -> Mat:
    rows = len(mats[0])
    if any(len(m) != rows for m in mats):
        raise ValueError("row count mismatch")
    return tuple(tuple(itertools.chain.from_iterable(m[i] for m in mats)) for i in range(rows))


def vstack(*mats: Mat) -> Mat:
    return tuple(itertools.chain.from_iterable(mats))


def submatrix(m: Mat, rows, cols) -> Mat:
    return tuple(tuple(m[i][j] for j in cols) for i in rows)


def rank_int(m: Mat) -> int:
    """Rank over Q of an integer matrix by fraction-free elimination."""

    a = [list(row) for row in m]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    rank = 0
    prev = 1
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        p = a[row][col]
        for i in range(row + 1, nrows):
            q = a[i][col]
            for j in range(col + 1, ncols):
                a[i][j] = (p * a[i][j] - q * a[row][j]) // prev
            a[i][col] = 0
        prev = p
        row += 1
        rank += 1
        if row == nrows:
            break
    return rank


def det_int(m: Mat) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""

    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def mat_inv_unimodular(m: Mat) -> Mat:
    """Inverse of a matrix with determinant +-1 (stays integral)."""

    n = len(m)
    d = det_int(m)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col])
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                q = a[i][col]
                a[i] = [x - q * y for x, y in zip(a[i], a[col])]
    inv = tuple(tuple(int(a[i][n + j]) for j in range(n)) for i in range(n))
    return inv


def row_hnf(m: Mat, ncols: int | None = None) -> tuple[Mat, Mat]:
    """Canonical row Hermite normal form.

    Returns ``(H, U)`` with ``H = U m``, ``U`` unimodular, pivots positive,
    entries above each pivot reduced into ``[0, pivot)`` and zero rows at
    the bottom.  ``H`` is the unique canonical representative of the left
    ``GL(Z)`` orbit of ``m``.
    """

    nrows, nc = mat_shape(m, ncols)
    a = [list(row) for row in m]
    u = [list(row) for row in identity_mat(nrows)]
    row = 0
    for col in range(nc):
        while True:
            nz = [i for i in range(row, nrows) if a[i][col]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(a[i][col]))
            a[row], a[i0] = a[i0], a[row]
            u[row], u[i0] = u[i0], u[row]
            if a[row][col] < 0:
                a[row] = [-x for x in a[row]]
                u[row] = [-x for x in u[row]]
            done = True
            for i in range(row + 1, nrows):
                q = a[i][col] // a[row][col]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[row])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[row])]
                if a[i][col]:
                    done = False
            if done:
                break
        if row < nrows and a[row][col] > 0 and all(
            a[i][col] == 0 for i in range(row + 1, nrows)
        ):
            for i in range(row):
                q = a[i][col] // a[row][col]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[row])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[row])]
            row += 1
            if row == nrows:
                break
    return as_mat(a) if a else (), as_mat(u) if u else ()


def col_hnf(m: Mat, nrows_hint: int | None = None) -> tuple[Mat, Mat]:
    """Canonical column Hermite form: ``(H, g)`` with ``H = m g``."""

    if len(m) == 0:
        raise ValueError("column HNF needs at least one row")
    ht, ut = row_hnf(transpose(m), ncols=len(m))
    return transpose(ht), transpose(ut)


def integer_kernel(m: Mat, ncols: int | None = None) -> Mat:
    """Saturated basis of ``{x in Z^cols : m x = 0}`` as matrix columns."""

    nrows, nc = mat_shape(m, ncols)
    if nrows == 0:
        return identity_mat(nc)
    h, u = row_hnf(transpose(m), ncols=nrows)
    r = sum(1 for row in h if any(row))
    basis_rows = u[r:]
    return transpose(basis_rows) if basis_rows else tuple(() for _ in range(nc))


def saturation(m: Mat, ncols: int | None = None) -> Mat:
    """Saturated column span: basis of ``Q-span(cols m) ∩ Z^rows``."""

    nrows, _ = mat_shape(m, ncols)
    k = integer_kernel(transpose(m), ncols=nrows)
    kt = transpose(k)
    return integer_kernel(kt, ncols=nrows)


def primitivity_gcd(stack: Mat, ncols: int | None = None) -> int:
    """gcd of all maximal (ncols x ncols) minors of a full-column-rank stack."""

    nrows, nc = mat_shape(stack, ncols)
    if nc == 0:
        return 1
    g = 0
    for rows in itertools.combinations(range(nrows), nc):
        g = gcd(g, det_int(submatrix(stack, rows, range(nc))))
        if g == 1:
            return 1
    return g


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HalfIntSym:
    """Half-integral symmetric matrix ``T``, stored as ``doubled = 2T``.

    ``doubled`` must be a symmetric integer matrix with even diagonal; the
    actual form is ``T = doubled / 2`` and the associated integral values
    are ``Q(x) = (x . doubled . x) / 2``.
    """

    doubled: Mat

    def __post_init__(self):
        d = as_mat(self.doubled)
        object.__setattr__(self, "doubled", d)
        n = len(d)
        if any(len(row) != n for row in d):
            raise ValueError("doubled matrix must be square")
        if d != transpose(d):
            raise ValueError("doubled matrix must be symmetric")
        if any(d[i][i] % 2 for i in range(n)):
            raise ValueError("doubled matrix must have even diagonal")

    @property
    def n(self) -> int:
        return len(self.doubled)

    @classmethod
    def from_triple(cls, t1: int, t2: int, t4: int) -> "HalfIntSym":
        """The binary form ``(t1, t2/2; t2/2, t4)`` from its integer triple."""

        return cls(((2 * t1, t2), (t2, 2 * t4)))

    @classmethod
    def zero(cls, n: int) -> "HalfIntSym":
        return cls(zero_mat(n, n))

    def rank(self) -> int:
        return rank_int(self.doubled)

    def det2(self) -> int:
        """Determinant of the doubled matrix ``2T``."""

        return det_int(self.doubled)

    def is_posdef(self) -> bool:
        d = self.doubled
        return all(
            det_int(submatrix(d, range(k), range(k))) > 0
            for k in range(1, self.n + 1)
        )

    def is_psd(self) -> bool:
        d = self.doubled
        for size in range(1, self.n + 1):
            for rows in itertools.combinations(range(self.n), size):
                if det_int(submatrix(d, rows, rows)) < 0:
                    return False
        return True

    def value(self, x: tuple[int, ...]) -> int:
        """The integral form value ``Q(x) = txTx``."""

        row = mat_mul((tuple(x),), self.doubled)
        return sum(a * b for a, b in zip(row[0], x)) // 2

    def to_json(self) -> dict:
        return {"n": self.n, "doubled": [list(row) for row in self.doubled]}

    @classmethod
    def from_json(cls, data: dict) -> "HalfIntSym":
        m = as_mat(data["doubled"])
        if len(m) != int(data.get("n", len(m))):
            raise ValueError("inconsistent size field")
        return cls(m)


def gram_transform(t: HalfIntSym, u: Mat) -> HalfIntSym:
    """The pullback ``T[U] = tU T U`` (doubled: ``tU (2T) U``)."""

    u = as_mat(u)
    nrows, _ = mat_shape(u, t.n)
    if nrows != t.n:
        raise ValueError("dimension mismatch in gram_transform")
    return HalfIntSym(mat_mul(transpose(u), mat_mul(t.doubled, u)))


def gl2_reduce(r_form: HalfIntSym) -> HalfIntSym:
    """Gauss-reduced representative of a positive definite binary class.

    Returns the unique form ``(t1, t2/2; t2/2, t4)`` in the GL2(Z)-orbit
    of ``r_form`` with ``0 <= t2 <= t1 <= t4``.  Reduction keeps the
    smallest eigenvalue comparable to ``t1``, which is what the
    certified tail bounds of the series evaluation want; the
    transforming matrix is tracked so the result can be re-checked
    against :func:`gram_transform` before returning.
    """

    if r_form.n != 2 or not r_form.is_posdef():
        raise ValueError("reduction expects a positive definite binary form")
    d = r_form.doubled
    t1, t2, t4 = d[0][0] // 2, d[0][1], d[1][1] // 2
    u = ((1, 0), (0, 1))
    while True:
        if t4 < t1:
            t1, t2, t4 = t4, -t2, t1
            u = mat_mul(u, ((0, -1), (1, 0)))
            continue
        if abs(t2) > t1:
            shift = (t1 - t2) // (2 * t1)  # nearest integer to -t2/(2 t1)
            t2, t4 = t2 + 2 * shift * t1, t4 + shift * t2 + shift * shift * t1
            u = mat_mul(u, ((1, shift), (0, 1)))
            continue
        if t2 < 0:
            t2 = -t2
            u = mat_mul(u, ((1, 0), (0, -1)))
            continue
        break
    reduced = HalfIntSym.from_triple(t1, t2, t4)
    if gram_transform(r_form, u) != reduced:
        raise AssertionError("reduction lost track of its transform")
    return reduced


def parabolic_reduce(r_form: HalfIntSym) -> HalfIntSym:
    """Translation-reduced representative within the parabolic orbit.

    Binary forms ``(t1, t2/2; t2/2, t4)`` transform under the
    lower-triangular unimodular group (the stratum-compatible subgroup:
    it fixes the lower-right corner and preserves the row-block rank
    conditions of the stack enumeration) as ``t2 -> +-(t2 + 2 l t4)``.
    The canonical representative has ``0 <= t2 <= t4``; unlike full
    Gauss reduction this is safe for stratum-level coefficients, which
    are invariant only under the parabolic, not all of GL2(Z).
    """

    if r_form.n != 2:
        raise ValueError("parabolic reduction expects a binary form")
    d = r_form.doubled
    t1, t2, t4 = d[0][0] // 2, d[0][1], d[1][1] // 2
    if t4 == 0:
        return HalfIntSym.from_triple(t1, abs(t2), t4)
    shifted = (t2 + t4) % (2 * t4) - t4  # representative in [-t4, t4)
    lam = (shifted - t2) // (2 * t4)
    t1 = t1 + lam * t2 + lam * lam * t4
    reduced = HalfIntSym.from_triple(t1, abs(shifted), t4)
    check = gram_transform(r_form, ((1, 0), (lam, 1)))
    if shifted < 0:
        check = gram_transform(check, ((1, 0), (0, -1)))
    if check != reduced:
        raise AssertionError("reduction lost track of its transform")
    return reduced


@dataclass(frozen=True)
class SymplecticInt:
    """Integer symplectic matrix of size ``2n x 2n``."""

    entries: Mat

    def __post_init__(self):
        e = as_mat(self.entries)
        object.__setattr__(self, "entries", e)
        size = len(e)
        if size == 0 or size % 2 or any(len(row) != size for row in e):
            raise ValueError("entries must form a square matrix of even size")
        n = size // 2
        j = _j_mat(n)
        if mat_mul(transpose(e), mat_mul(j, e)) != j:
            raise ValueError("matrix is not symplectic")

    @property
    def n(self) -> int:
        return len(self.entries) // 2

    def _block(self, i: int, k: int) -> Mat:
        n = self.n
        return submatrix(self.entries, range(i * n, (i + 1) * n), range(k * n, (k + 1) * n))

    @property
    def a(self) -> Mat:
        return self._block(0, 0)

    @property
    def b(self) -> Mat:
        return self._block(0, 1)

    @property
    def c(self) -> Mat:
        return self._block(1, 0)

    @property
    def d(self) -> Mat:
        return self._block(1, 1)

    def __matmul__(self, other: "SymplecticInt") -> "SymplecticInt":
        if self.n != other.n:
            raise ValueError("size mismatch")
        return SymplecticInt(mat_mul(self.entries, other.entries))

    def inv(self) -> "SymplecticInt":
        at, bt, ct, dt = map(transpose, (self.a, self.b, self.c, self.d))
        top = hstack(dt, mat_neg(bt))
        bot = hstack(mat_neg(ct), at)
        return SymplecticInt(vstack(top, bot))

    @classmethod
    def identity(cls, n: int) -> "SymplecticInt":
        return cls(identity_mat(2 * n))

    @classmethod
    def j(cls, n: int) -> "SymplecticInt":
        return cls(_j_mat(n))

    @classmethod
    def translation(cls, s: Mat) -> "SymplecticInt":
        s = as_mat(s)
        n = len(s)
        top = hstack(identity_mat(n), s)
        bot = hstack(zero_mat(n, n), identity_mat(n))
        return cls(vstack(top, bot))

    @classmethod
    def from_gl(cls, u: Mat) -> "SymplecticInt":
        """``L(U) = diag(tU^{-1}, U)`` for unimodular ``U``."""

        u = as_mat(u)
        n = len(u)
        uinvt = transpose(mat_inv_unimodular(u))
        top = hstack(uinvt, zero_mat(n, n))
        bot = hstack(zero_mat(n, n), u)
        return cls(vstack(top, bot))

    def embed_up(self, n: int) -> "SymplecticInt":
        """Embedding into ``Sp_n(Z)`` acting on the first coordinates."""

        r = self.n
        if n < r:
            raise ValueError("target degree too small")
        pad = n - r

        def grow(block: Mat, corner: int) -> Mat:
            top = hstack(block, zero_mat(r, pad))
            bot = hstack(zero_mat(pad, r), identity_mat(pad) if corner else zero_mat(pad, pad))
            return vstack(top, bot)

        top = hstack(grow(self.a, 1), grow(self.b, 0))
        bot = hstack(grow(self.c, 0), grow(self.d, 1))
        return SymplecticInt(vstack(top, bot))

    def embed_down(self, n: int) -> "SymplecticInt":
        """Embedding into ``Sp_n(Z)`` acting on the last coordinates."""

        r = self.n
        if n < r:
            raise ValueError("target degree too small")
        pad = n - r

        def grow(block: Mat, corner: int) -> Mat:
            top = hstack(identity_mat(pad) if corner else zero_mat(pad, pad), zero_mat(pad, r))
            bot = hstack(zero_mat(r, pad), block)
            return vstack(top, bot)

        top = hstack(grow(self.a, 1), grow(self.b, 0))
        bot = hstack(grow(self.c, 0), grow(self.d, 1))
        return SymplecticInt(vstack(top, bot))

    def to_json(self) -> list:
        return [list(row) for row in self.entries]

    @classmethod
    def from_json(cls, rows) -> "SymplecticInt":
        return cls(as_mat(rows))


def _j_mat(n: int) -> Mat:
    top = hstack(zero_mat(n, n), identity_mat(n))
    bot = hstack(mat_neg(identity_mat(n)), zero_mat(n, n))
    return vstack(top, bot)


@dataclass(frozen=True)
class StrataParams:
    """Degree data ``(n, m, r)`` with optional stratum labels ``t`` / ``v``."""

    n: int
    m: int
    r: int
    t: int | None = None
    v: int | None = None

    def __post_init__(self):
        if not (0 <= self.m < self.n):
            raise ValueError("need 0 <= m < n")
        if not (0 <= self.r < self.n):
            raise ValueError("need 0 <= r < n")
        if self.t is not None and not (0 <= self.t <= min(self.n - self.m, self.n - self.r)):
            raise ValueError("t outside [0, min(n-m, n-r)]")
        if self.v is not None and not (
            self.m + self.r <= self.v <= min(self.n + self.m, self.n + self.r)
        ):
            raise ValueError("v outside [m+r, min(n+m, n+r)]")


@dataclass(frozen=True)
class RepTriple:
    """One enumerated class ``(T, W, w3)`` with ``R = T[tW]``.

    The stacked ``(n+m) x l`` matrix ``(W; w3)`` is primitive, ``W`` has
    full column rank, and the stack is canonicalized modulo the right
    ``GL_l(Z)`` action (column Hermite form) and the global sign of the
    ``w3`` block.
    """

    t: HalfIntSym
    w: Mat
    w3: Mat

    @property
    def stack(self) -> Mat:
        return vstack(self.w, self.w3)


# ---------------------------------------------------------------------------
# strata invariants and subgroup membership
# ---------------------------------------------------------------------------


def strata_t(gamma: SymplecticInt, p: StrataParams) -> int:
    """Stratum label: rank of the lower-right ``(n-m) x (n-r)`` block of C."""

    if gamma.n != p.n:
        raise ValueError("degree mismatch")
    c = gamma.c
    return rank_int(submatrix(c, range(p.m, p.n), range(p.r, p.n)))


def gamma_prime_rank(gamma: SymplecticInt, p: StrataParams) -> int:
    """Rank of the reduced matrix obtained by the row/column deletion rule.

    Keeps the first ``m`` rows together with the entire lower half, and
    the first ``n + r`` columns; on the strata this equals ``m + r + t``.
    """

    if gamma.n != p.n:
        raise ValueError("degree mismatch")
    if p.m == 0 or p.r == 0:
        raise ValueError("the reduced-matrix rank needs 0 < m and 0 < r")
    n = p.n
    rows = list(range(p.m)) + list(range(n, 2 * n))
    cols = range(n + p.r)
    return rank_int(submatrix(gamma.entries, rows, cols))


def strata_v(gamma: SymplecticInt, p: StrataParams) -> int:
    """Column-selection stratum label for ``Sp_{n+m}(Z)``.

    Collects the full ``C`` block together with the first ``r`` and the
    last ``m`` columns of ``D``, and returns the rank of that selection,
    capped at ``n + r``.  The result always lies in
    ``[m + r, min(n + m, n + r)]``, is invariant under the parabolic
    ``C(n+m, 0)`` from the left and under down-embedded ``Sp_m(Z)``
    factors from the right.  (The naive selection that drops the paired
    ``C`` columns fails the lower bound already for the identity; see the
    literal variant below.)
    """

    big = p.n + p.m
    if gamma.n != big:
        raise ValueError("gamma must have degree n + m")
    c, d = gamma.c, gamma.d
    sel = hstack(
        c,
        submatrix(d, range(big), range(p.r)),
        submatrix(d, range(big), range(p.n, big)),
    )
    return min(rank_int(sel), p.n + p.r)


def strata_v_literal(gamma: SymplecticInt, p: StrataParams) -> int:
    """Rank of the bare ``[C(:, :n) | D(:, :r)]`` selection (uncapped)."""

    big = p.n + p.m
    if gamma.n != big:
        raise ValueError("gamma must have degree n + m")
    sel = hstack(
        submatrix(gamma.c, range(big), range(p.n)),
        submatrix(gamma.d, range(big), range(p.r)),
    )
    return rank_int(sel)


def is_in_parabolic(gamma: SymplecticInt, n: int, r: int) -> bool:
    """Membership in ``C(n, r)``: bottom-left ``(n-r) x (n+r)`` corner zero."""

    if gamma.n != n or not (0 <= r <= n):
        raise ValueError("bad degree data")
    e = gamma.entries
    return all(
        e[i][j] == 0 for i in range(n + r, 2 * n) for j in range(n + r)
    )


def is_in_jacobi(gamma: SymplecticInt, n: int, r: int) -> bool:
    """Membership in ``Jac(n, r)``: parabolic with identity lower corner."""

    if not is_in_parabolic(gamma, n, r):
        return False
    e = gamma.entries
    return all(
        e[i][j] == (1 if i == j else 0)
        for i in range(n + r, 2 * n)
        for j in range(n + r, 2 * n)
    )


def _zero_outside(block: Mat, row_edges, col_edges, allowed) -> bool:
    """Check a block matrix vanishes outside the allowed block positions."""

    def band(idx, edges):
        s = 0
        for k, e in enumerate(edges):
            if idx < s + e:
                return k
            s += e
        raise IndexError

    for i, row in enumerate(block):
        for j, x in enumerate(row):
            if x and (band(i, row_edges), band(j, col_edges)) not in allowed:
                return False
    return True


def is_in_q(gamma: SymplecticInt, n: int, r: int, s: int) -> bool:
    """Membership in the subgroup ``Q_s`` (block sizes ``s, r-s, n-r``)."""

    if gamma.n != n or not (0 <= s <= r <= n):
        raise ValueError("bad degree data")
    edges = (s, r - s, n - r)
    c, d = gamma.c, gamma.d
    if not _zero_outside(c, edges, edges, {(0, 0)}):
        return False
    if not _zero_outside(d, edges, edges, {(0, 0), (0, 1), (0, 2), (1, 1), (2, 1), (2, 2)}):
        return False
    corner = submatrix(d, range(r, n), range(r, n))
    return corner == identity_mat(n - r)


def is_in_qtilde(gamma: SymplecticInt, n: int, r: int, s: int) -> bool:
    """Membership in the twisted variant (block sizes ``s, n-r, r-s``).

    The identity block sits in the middle ``(n-r) x (n-r)`` position of
    ``D`` (its size is forced by the block scheme).
    """

    if gamma.n != n or not (0 <= s <= r <= n):
        raise ValueError("bad degree data")
    edges = (s, n - r, r - s)
    c, d = gamma.c, gamma.d
    if not _zero_outside(c, edges, edges, {(0, 0)}):
        return False
    if not _zero_outside(d, edges, edges, {(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)}):
        return False
    mid = submatrix(d, range(s, s + n - r), range(s, s + n - r))
    return mid == identity_mat(n - r)


# ---------------------------------------------------------------------------
# class enumeration for the coefficient formula
# ---------------------------------------------------------------------------


def outer_classes(r_form: HalfIntSym, l: int) -> tuple[tuple[HalfIntSym, Mat], ...]:
    """All classes ``(T, W)`` with ``R = T[tW]``, ``W`` of full column rank.

    ``W`` runs over ``n x l`` integer matrices of rank ``l`` modulo the
    right ``GL_l(Z)`` action; each class determines ``T`` uniquely.  The
    enumeration factors ``W = V H`` through the saturation ``V`` of the
    column span of ``R`` and a triangular Hermite matrix ``H`` whose
    determinant is constrained by ``det`` divisibility, so the list is
    finite and complete.  Only ``l <= 2`` is supported; the verified
    pipeline never needs more.
    """

    n = r_form.n
    if not r_form.is_psd():
        raise ValueError("R must be positive semidefinite")
    if r_form.rank() != l:
        raise ValueError("l must equal rank(R)")
    if l == 0:
        return ((HalfIntSym(()), tuple(() for _ in range(n))),)
    if l > 2:
        raise ValueError("unsupported rank; the verified pipeline needs l <= 2 only")

    v = saturation(r_form.doubled, ncols=n)
    h, u = row_hnf(v, ncols=l)
    if h[:l] != identity_mat(l) or any(any(row) for row in h[l:]):
        raise AssertionError("saturation basis failed to reduce to identity")
    p = u[:l]
    d0 = mat_mul(p, mat_mul(r_form.doubled, transpose(p)))

    classes = []
    if l == 1:
        val = d0[0][0] // 2
        for a in range(1, isqrt(val) + 1):
            if val % (a * a) == 0:
                t = HalfIntSym(((2 * (val // (a * a)),),))
                w = mat_mul(v, ((a,),))
                classes.append((t, w))
    else:
        det0 = det_int(d0)
        for a in range(1, isqrt(det0 // 3) + 1):
            for d in range(1, det0 + 1):
                if 3 * (a * d) ** 2 > det0:
                    break
                for b in range(a):
                    dt = _congruence_quotient(d0, a, b, d)
                    if dt is None:
                        continue
                    t = HalfIntSym(dt)
                    if not t.is_posdef():
                        continue
                    classes.append((t, mat_mul(v, ((a, b), (0, d)))))
    classes.sort(key=lambda cls: (cls[0].doubled, cls[1]))
    return tuple(classes)


def _congruence_quotient(d0: Mat, a: int, b: int, d: int) -> Mat | None:
    """``H^{-1} d0 tH^{-1}`` for ``H = (a b; 0 d)`` if integral/even, else None."""

    # H^{-1} = (1/(ad)) (d -b; 0 a); conjugate with the integer numerator.
    num = ((d, -b), (0, a))
    m = mat_mul(num, mat_mul(d0, transpose(num)))
    q = (a * d) ** 2
    if any(x % q for row in m for x in row):
        return None
    out = tuple(tuple(x // q for x in row) for row in m)
    if out[0][0] % 2 or out[1][1] % 2:
        return None
    return out


def _w3_candidates(dt: Mat, bound: int) -> list[tuple[int, ...]]:
    """Sign-canonical nonzero rows ``w`` with form value ``Q(w) <= bound``.

    Sign-canonical means the first nonzero entry is positive; exactly one
    of ``{w, -w}`` appears.
    """

    l = len(dt)
    out: list[tuple[int, ...]] = []
    if l == 1:
        d00 = dt[0][0]
        u = 1
        while d00 * u * u <= 2 * bound:
            out.append((u,))
            u += 1
        return out
    if l == 2:
        d00, d01, d11 = dt[0][0], dt[0][1], dt[1][1]
        det = d00 * d11 - d01 * d01
        umax = isqrt(2 * bound * d11 // det) + 1
        for u in range(umax + 1):
            disc = 2 * bound * d11 - u * u * det
            if disc < 0:
                continue
            s = isqrt(disc)
            vlo = -(d01 * u + s)
            vhi = -d01 * u + s
            vlo = -((-vlo) // d11) if vlo < 0 else (vlo + d11 - 1) // d11
            vhi = vhi // d11 if vhi >= 0 else -((-vhi + d11 - 1) // d11)
            for v in range(vlo, vhi + 1):
                if u == 0 and v <= 0:
                    continue
                if d00 * u * u + 2 * d01 * u * v + d11 * v * v <= 2 * bound:
                    out.append((u, v))
        return out
    raise ValueError("unsupported rank; the verified pipeline needs l <= 2 only")


def _canonical_triple(t: HalfIntSym, w: Mat, w3: Mat) -> RepTriple:
    """Canonicalize ``(T, W, w3)`` modulo column action and the w3 sign."""

    if t.n == 0:
        return RepTriple(t=t, w=w, w3=w3)
    n = len(w)
    m = len(w3)
    hc, g = col_hnf(vstack(w, w3))
    if m:
        # The column transform is pinned by the full-rank W part, so the
        # two sign variants of w3 stay exact negatives: pick the one whose
        # first nonzero w3 entry is positive.
        flat = [x for row in hc[n:] for x in row]
        lead = next((x for x in flat if x), 0)
        if lead < 0:
            hc = vstack(hc[:n], mat_neg(hc[n:]))
    ginv = mat_inv_unimodular(g)
    dt = mat_mul(ginv, mat_mul(t.doubled, transpose(ginv)))
    return RepTriple(t=HalfIntSym(dt), w=hc[:n], w3=hc[n:])


def enumerate_reps(
    r_form: HalfIntSym,
    l: int,
    m: int,
    r: int,
    t: int,
    bound: int,
) -> tuple[RepTriple, ...]:
    """Enumerate the classes entering the coefficient formula at ``R``.

    Returns the canonicalized triples ``(T, W, w3)`` with ``R = T[tW]``,
    ``rk(w3) = m``, the stack of the lower ``n - r`` rows of ``W`` with
    ``w3`` of rank ``t + m``, the full stack primitive, and every diagonal
    entry of ``T[t w3]`` at most ``bound``.  The ``(T, W)`` part is
    exhaustive; only the ``w3`` direction is truncated by ``bound``.
    """

    n = r_form.n
    if m not in (0, 1):
        raise ValueError("unsupported index; the verified pipeline needs m <= 1 only")
    if not (0 <= r < n):
        raise ValueError("need 0 <= r < n")
    if not (0 <= t <= min(n - m, n - r)):
        raise ValueError("t outside [0, min(n-m, n-r)]")

    reps: dict[tuple, RepTriple] = {}
    for t_form, w in outer_classes(r_form, l):
        w2 = w[r:]
        if m == 0:
            if rank_int(w2) != t:
                continue
            if primitivity_gcd(w, ncols=l) != 1:
                continue
            trip = _canonical_triple(t_form, w, tuple())
            reps[tuple(itertools.chain.from_iterable(trip.stack))] = trip
            continue
        if l == 0:
            continue  # rk(w3) = m >= 1 is impossible for empty stacks
        for w3row in _w3_candidates(t_form.doubled, bound):
            w3 = (w3row,)
            if rank_int(vstack(w2, w3)) != t + m:
                continue
            if primitivity_gcd(vstack(w, w3), ncols=l) != 1:
                continue
            trip = _canonical_triple(t_form, w, w3)
            reps[tuple(itertools.chain.from_iterable(trip.stack))] = trip
    return tuple(reps[k] for k in sorted(reps))


# ---------------------------------------------------------------------------
# brute-force coset search and representative verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CosetSearch:
    """Result of a box search: one representative per left coset found."""

    reps: tuple[SymplecticInt, ...]
    truncated: bool
    subgroup: tuple
    height: int
    elements_seen: int

    def __iter__(self):
        return iter(self.reps)

    def __len__(self):
        return len(self.reps)

    def __getitem__(self, i):
        return self.reps[i]


def _subgroup_predicate(n: int, subgroup: tuple):
    kind = subgroup[0]
    if kind == "C":
        return lambda g: is_in_parabolic(g, n, subgroup[1])
    if kind == "J":
        return lambda g: is_in_jacobi(g, n, subgroup[1])
    if kind == "Q":
        return lambda g: is_in_q(g, n, subgroup[1], subgroup[2])
    if kind == "Qt":
        return lambda g: is_in_qtilde(g, n, subgroup[1], subgroup[2])
    raise ValueError(f"unknown subgroup spec {subgroup!r}")


def _band_key_rows(n: int, subgroup: tuple) -> range | None:
    """Rows of gamma that determine the left coset, when a key exists."""

    if subgroup[0] in ("C", "J"):
        return range(n + subgroup[1], 2 * n)
    return None


def _coset_key(band: Mat, subgroup: tuple, ncols: int) -> tuple:
    if subgroup[0] == "C":
        h, _ = row_hnf(band, ncols=ncols)
        return tuple(itertools.chain.from_iterable(h))
    return tuple(itertools.chain.from_iterable(band))


def bruteforce_cosets(
    n: int,
    subgroup: tuple,
    height: int,
    *,
    max_nodes: int = 5_000_000,
    max_elements: int = 200_000,
) -> CosetSearch:
    """Exhaustive box search for left-coset representatives.

    Enumerates every ``g`` in ``Sp_n(Z)`` with ``max |entry| <= height``
    (row-by-row, pruned through the exact symplectic row pairings) and
    keeps one representative per left coset of the subgroup.  Subgroup
    specs are tuples: ``("C", r)``, ``("J", r)``, ``("Q", r, s)``,
    ``("Qt", r, s)``.  For the parabolic and Jacobi subgroups the coset
    is read off the bottom row band, so whole search branches collapse;
    the other subgroups fall back to pairwise membership tests.  If a
    resource cap is hit the result carries ``truncated=True``.
    """

    if n > 3:
        raise ValueError("box search supports n <= 3")
    size = 2 * n
    ranges = [range(-height, height + 1)] * size
    rows = np.array(list(itertools.product(*ranges)), dtype=np.int64)
    jm = np.asarray(_j_mat(n), dtype=np.int64)
    if rows.shape[0] ** 2 > 80_000_000:
        return CosetSearch((), True, subgroup, height, 0)
    pairing = rows @ jm @ rows.T
    target = np.asarray(_j_mat(n), dtype=np.int64)

    key_rows = _band_key_rows(n, subgroup)
    if key_rows is not None:
        order = [i for i in range(size - 1, -1, -1)]
        key_depth = len(key_rows)  # key rows are chosen first in this order
    else:
        order = list(range(size))
        key_depth = None

    nrows = rows.shape[0]
    state = {
        "nodes": 0,
        "elements": 0,
        "truncated": False,
        "snapshot": None,
    }
    seen_keys: set[tuple] = set()
    reps: list[SymplecticInt] = []
    elements: list[tuple[int, ...]] = []

    chosen: list[int] = []

    def dfs(depth: int, mask: np.ndarray, stop_first: bool) -> bool:
        if state["truncated"]:
            return False
        if depth == size:
            return True
        pos = order[depth]
        for idx in np.nonzero(mask)[0]:
            state["nodes"] += 1
            if state["nodes"] > max_nodes:
                state["truncated"] = True
                return False
            new_mask = np.ones(nrows, dtype=bool) if depth + 1 < size else None
            ok = True
            if depth + 1 < size:
                nxt = order[depth + 1]
                for lvl, ci in enumerate(chosen + [int(idx)]):
                    want = int(target[order[lvl], nxt])
                    new_mask &= pairing[ci] == want
                    if not new_mask.any():
                        ok = False
                        break
            chosen.append(int(idx))
            if depth + 1 == size or ok:
                if key_depth is not None and depth + 1 == key_depth:
                    band = tuple(
                        tuple(int(x) for x in rows[chosen[key_depth - 1 - i]])
                        for i in range(key_depth)
                    )
                    key = _coset_key(band, subgroup, size)
                    if key in seen_keys:
                        chosen.pop()
                        continue
                    if dfs(depth + 1, new_mask, True):
                        seen_keys.add(key)
                        ent = [None] * size
                        for lvl, ci in enumerate(state["snapshot"]):
                            ent[order[lvl]] = tuple(int(x) for x in rows[ci])
                        reps.append(SymplecticInt(as_mat(ent)))
                    chosen.pop()
                    continue
                if depth + 1 == size:
                    state["elements"] += 1
                    if stop_first:
                        state["snapshot"] = list(chosen)
                        chosen.pop()
                        return True
                    if key_depth is None:
                        if len(elements) >= max_elements:
                            state["truncated"] = True
                            chosen.pop()
                            return False
                        ent = [None] * size
                        for lvl, ci in enumerate(chosen):
                            ent[order[lvl]] = tuple(int(x) for x in rows[ci])
                        elements.append(as_mat(ent))
                else:
                    if dfs(depth + 1, new_mask, stop_first) and stop_first:
                        chosen.pop()
                        return True
            chosen.pop()
        return False

    dfs(0, np.ones(nrows, dtype=bool), False)

    if key_rows is None:
        member = _subgroup_predicate(n, subgroup)
        for ent in elements:
            g = SymplecticInt(ent)
            if not any(member(g @ rep.inv()) for rep in reps):
                reps.append(g)

    reps.sort(key=lambda g: g.entries)
    return CosetSearch(
        tuple(reps), state["truncated"], subgroup, height, state["elements"]
    )


@dataclass(frozen=True)
class RepSystemReport:
    """Outcome of checking a candidate left-coset representative system."""

    stratum_ok: bool
    stratum_witness: int | None
    pairwise_ok: bool
    pairwise_witness: tuple[int, int] | None
    completeness_ok: bool | None
    completeness_witness: SymplecticInt | None
    search_truncated: bool

    @property
    def passed(self) -> bool:
        return (
            self.stratum_ok
            and self.pairwise_ok
            and self.completeness_ok is not False
            and not self.search_truncated
        )


def verify_rep_system(
    candidates: list[SymplecticInt] | tuple[SymplecticInt, ...],
    p: StrataParams,
    *,
    height: int | None = None,
) -> RepSystemReport:
    """Check a candidate representative system for a stratum.

    Verifies (a) every candidate lies in the stratum labeled ``p.t``,
    (b) no two candidates lie in the same left coset of ``C(n, m)``
    (decided by explicit membership of ``g_i g_j^{-1}``), and, when
    ``height`` is given, (c) completeness: every coset met by the
    exhaustive box search at that height that lies in the stratum is
    also met by some candidate.
    """

    if p.t is None:
        raise ValueError("p.t must be set")
    stratum_witness = None
    for i, g in enumerate(candidates):
        if strata_t(g, p) != p.t:
            stratum_witness = i
            break
    pairwise_witness = None
    for i in range(len(candidates)):
        for j in range(i + 1, len(candidates)):
            if is_in_parabolic(candidates[i] @ candidates[j].inv(), p.n, p.m):
                pairwise_witness = (i, j)
                break
        if pairwise_witness is not None:
            break

    completeness_ok: bool | None = None
    completeness_witness = None
    truncated = False
    if height is not None:
        search = bruteforce_cosets(p.n, ("C", p.m), height)
        truncated = search.truncated
        completeness_ok = True
        for rep in search:
            if strata_t(rep, p) != p.t:
                continue
            if not any(
                is_in_parabolic(rep @ cand.inv(), p.n, p.m) for cand in candidates
            ):
                completeness_ok = False
                completeness_witness = rep
                break

    return RepSystemReport(
        stratum_ok=stratum_witness is None,
        stratum_witness=stratum_witness,
        pairwise_ok=pairwise_witness is None,
        pairwise_witness=pairwise_witness,
        completeness_ok=completeness_ok,
        completeness_witness=completeness_witness,
        search_truncated=truncated,
    )


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """``(s, t, g)`` with ``s a + t b = g = gcd(a, b) >= 0``."""

    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_s, old_t, old_r


def _bezout_row(w: tuple[int, ...]) -> tuple[int, ...]:
    """A row ``x`` with ``x . w = 1``; requires ``w`` primitive."""

    x = [0] * len(w)
    g = 0
    for i, wi in enumerate(w):
        if wi == 0:
            continue
        if g == 0:
            g = abs(wi)
            x[i] = 1 if wi > 0 else -1
        else:
            s, t, gg = _egcd(g, wi)
            for j in range(len(x)):
                x[j] *= s
            x[i] = t
            g = gg
        if g == 1:
            break
    if g != 1:
        raise ValueError("vector is not primitive")
    return tuple(x)


def symplectic_from_last_row(v) -> SymplecticInt:
    """Deterministic completion of a primitive row to a symplectic matrix.

    ``Sp_n(Z)`` acts transitively on primitive vectors, so every
    primitive ``v`` in ``Z^(2n)`` is the last row of some element; this
    builds one explicitly.  Because the parabolic ``C(n, n-1)``
    constrains exactly the last row, the left coset ``C(n, n-1) g`` is
    determined by the last row of ``g`` up to sign, and this function
    turns row-level coset labels into concrete matrices when assembling
    representative systems for :func:`verify_rep_system`.

    The construction pairs ``v`` with a Bezout partner ``u`` satisfying
    ``u J tv = 1`` and then splits the ``J``-orthocomplement of their
    span into hyperbolic planes.
    """

    v = tuple(int(c) for c in v)
    if not v or len(v) % 2:
        raise ValueError("need a vector of even positive length")
    n = len(v) // 2
    g = 0
    for c in v:
        g = gcd(g, c)
    if g != 1:
        raise ValueError("last row must be primitive")

    def jpair(x, y):
        return sum(x[i] * y[i + n] - x[i + n] * y[i] for i in range(n))

    def jrow(y):
        # coefficient row of x -> jpair(x, y)
        return tuple(y[n:]) + tuple(-c for c in y[:n])

    u = _bezout_row(jrow(v))

    def combine(coeffs, rows):
        return tuple(
            sum(c * row[j] for c, row in zip(coeffs, rows))
            for j in range(2 * n)
        )

    def split(rows):
        # symplectic basis (a_i), (b_i) of the span of ``rows``, on which
        # the pairing is assumed unimodular
        if not rows:
            return [], []
        e = rows[0]
        pairings = tuple(jpair(e, r) for r in rows)
        f = combine(_bezout_row(pairings), rows)
        rest = []
        for r in rows[1:]:
            cf, ce = jpair(r, f), jpair(e, r)
            rest.append(
                tuple(r[j] - cf * e[j] - ce * f[j] for j in range(2 * n))
            )
        h, _ = row_hnf(as_mat(rest) if rest else zero_mat(0, 2 * n), ncols=2 * n)
        basis = [row for row in h if any(row)]
        a_rows, b_rows = split(basis)
        return [e] + a_rows, [f] + b_rows

    wu, wv = jrow(u), jrow(v)
    kernel_cols = integer_kernel((wu, wv), ncols=2 * n)
    a_rows, b_rows = split(list(transpose(kernel_cols)))
    rows = tuple(a_rows) + (u,) + tuple(b_rows) + (v,)
    return SymplecticInt(rows)


# ---------------------------------------------------------------------------
# seeded random sampling
# ---------------------------------------------------------------------------


def _as_rng(rng: Random | int) -> Random:
    return rng if isinstance(rng, Random) else Random(rng)


def _random_symmetric(n: int, rng: Random) -> Mat:
    s = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            s[i][j] = s[j][i] = rng.randint(-2, 2)
    return as_mat(s)


def _random_elementary_gl(n: int, rng: Random) -> Mat:
    kind = rng.randrange(3)
    u = [list(row) for row in identity_mat(n)]
    if n == 1 or kind == 0:
        i = rng.randrange(n)
        u[i][i] = rng.choice((1, -1))
    elif kind == 1:
        i, j = rng.sample(range(n), 2)
        u[i][j] = rng.choice((-2, -1, 1, 2))
    else:
        i, j = rng.sample(range(n), 2)
        u[i], u[j] = u[j], u[i]
    return as_mat(u)


def random_symplectic(n: int, rng: Random | int, *, length: int | None = None) -> SymplecticInt:
    """Seeded random element of ``Sp_n(Z)``: a bounded word in generators.

    Generators are the symplectic inversion, translations by small
    symmetric matrices, and ``L(U)`` for elementary unimodular ``U``; the
    word length defaults to a random value in ``[8, 12]``.
    """

    rng = _as_rng(rng)
    if length is None:
        length = rng.randint(8, 12)
    g = SymplecticInt.identity(n)
    for _ in range(length):
        kind = rng.randrange(3)
        if kind == 0:
            g = g @ SymplecticInt.j(n)
        elif kind == 1:
            g = g @ SymplecticInt.translation(_random_symmetric(n, rng))
        else:
            g = g @ SymplecticInt.from_gl(_random_elementary_gl(n, rng))
    return g


def random_parabolic(
    n: int,
    r: int,
    rng: Random | int,
    *,
    jacobi: bool = False,
    length: int = 6,
) -> SymplecticInt:
    """Seeded random element of ``C(n, r)`` (or ``Jac(n, r)``).

    Products of translations, ``L(U)`` for block-upper-triangular
    unimodular ``U``, and up-embedded degree-``r`` symplectic factors all
    stay in the parabolic; for the Jacobi subgroup the lower-right block
    of ``U`` is pinned to the identity.
    """

    rng = _as_rng(rng)
    g = SymplecticInt.identity(n)
    for _ in range(length):
        kind = rng.randrange(3)
        if kind == 0:
            g = g @ SymplecticInt.translation(_random_symmetric(n, rng))
        elif kind == 1:
            u1 = _random_elementary_gl(r, rng) if r else ()
            u2 = identity_mat(n - r) if jacobi else _random_elementary_gl(n - r, rng)
            x = tuple(
                tuple(rng.randint(-2, 2) for _ in range(n - r)) for _ in range(r)
            )
            top = hstack(u1, x) if r else x
            bot = hstack(zero_mat(n - r, r), u2) if r else u2
            u = vstack(top, bot) if r else u2
            g = g @ SymplecticInt.from_gl(u)
        else:
            if r == 0:
                continue
            g = g @ random_symplectic(r, rng, length=3).embed_up(n)
    return g
