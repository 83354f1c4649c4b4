"""Integer matrices: half-integral forms, HNF, symplectic machinery."""

import itertools
import math
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klingenfj.matrices import (
    HalfIntSym,
    StrataParams,
    SymplecticInt,
    det_int,
    gamma_prime_rank,
    gl2_reduce,
    gram_transform,
    integer_kernel,
    mat_mul,
    parabolic_reduce,
    primitivity_gcd,
    random_parabolic,
    random_symplectic,
    rank_int,
    row_hnf,
    saturation,
    strata_t,
    strata_v,
    symplectic_from_last_row,
    transpose,
)

# -- strategies ---------------------------------------------------------------

doubled_2x2 = st.tuples(
    st.integers(min_value=-6, max_value=6),
    st.integers(min_value=-6, max_value=6),
    st.integers(min_value=-6, max_value=6),
).map(lambda t: ((2 * t[0], t[1]), (t[1], 2 * t[2])))

unimodular_2x2 = st.tuples(
    st.integers(min_value=-4, max_value=4),
    st.integers(min_value=-4, max_value=4),
    st.integers(min_value=-4, max_value=4),
    st.integers(min_value=-4, max_value=4),
).filter(lambda t: t[0] * t[3] - t[1] * t[2] in (1, -1)).map(
    lambda t: ((t[0], t[1]), (t[2], t[3]))
)

small_mat = st.integers(min_value=1, max_value=4).flatmap(
    lambda rows: st.integers(min_value=1, max_value=4).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(min_value=-9, max_value=9), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        ).map(lambda m: tuple(tuple(r) for r in m))
    )
)


# -- half-integral symmetric matrices -----------------------------------------


def test_halfintsym_validation():
    with pytest.raises(ValueError):
        HalfIntSym(((1, 0), (0, 2)))  # odd diagonal
    with pytest.raises(ValueError):
        HalfIntSym(((2, 1), (0, 2)))  # not symmetric
    t = HalfIntSym.from_triple(1, 1, 1)
    assert t.doubled == ((2, 1), (1, 2))
    assert t.det2() == 3
    assert t.is_posdef() and t.is_psd()
    assert t.value((1, 0)) == 1 and t.value((1, -1)) == 1


def test_halfintsym_psd_vs_posdef():
    assert HalfIntSym.from_triple(1, 2, 1).is_psd()  # det 0
    assert not HalfIntSym.from_triple(1, 2, 1).is_posdef()
    assert not HalfIntSym.from_triple(1, 3, 1).is_psd()  # det < 0
    assert HalfIntSym.zero(2).is_psd()
    assert HalfIntSym.zero(2).rank() == 0


@given(doubled_2x2)
def test_halfintsym_json_roundtrip(doubled):
    t = HalfIntSym(doubled)
    assert HalfIntSym.from_json(t.to_json()) == t


@given(doubled_2x2, unimodular_2x2, unimodular_2x2)
def test_gram_transform_composes(doubled, u, v):
    t = HalfIntSym(doubled)
    assert gram_transform(gram_transform(t, u), v) == gram_transform(
        t, mat_mul(u, v)
    )


@given(doubled_2x2, unimodular_2x2)
def test_gram_transform_preserves_det_and_values(doubled, u):
    t = HalfIntSym(doubled)
    s = gram_transform(t, u)
    assert s.det2() == t.det2()
    for x in ((1, 0), (0, 1), (1, 1), (2, -1)):
        ux = tuple(mat_mul(u, ((x[0],), (x[1],)))[i][0] for i in range(2))
        assert t.value(ux) == s.value(x)


@given(doubled_2x2)
def test_gl2_reduce_is_canonical_form(doubled):
    t = HalfIntSym(doubled)
    if not t.is_psd():
        return
    red = gl2_reduce(t)
    (a2, b), (_, c2) = red.doubled
    assert red.det2() == t.det2()
    assert 0 <= b <= a2 // 2 <= c2 // 2 or (a2 == 0 and b == 0)


@given(doubled_2x2, st.integers(min_value=-5, max_value=5))
def test_parabolic_reduce_idempotent_and_invariant(doubled, x):
    t = HalfIntSym(doubled)
    if not t.is_psd():
        return
    red = parabolic_reduce(t)
    assert parabolic_reduce(red) == red
    assert red.det2() == t.det2()
    # invariance under the stratum-compatible substitutions (1, x; 0, 1)
    shifted = gram_transform(t, ((1, x), (0, 1)))
    assert parabolic_reduce(shifted) == red


# -- HNF, kernels, saturation --------------------------------------------------


@given(small_mat)
def test_row_hnf_unimodular_equivalence(m):
    h, u = row_hnf(m)
    assert mat_mul(u, m) == h
    assert det_int(u) in (1, -1)
    assert rank_int(h) == rank_int(m)
    # echelon shape: pivot columns strictly increase, zero rows trail
    pivots = []
    for row in h:
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            continue
        pivots.append(nz[0])
    assert pivots == sorted(set(pivots))
    assert all(h[i] != tuple([0] * len(h[0])) for i in range(len(pivots)))


@given(small_mat)
def test_integer_kernel_annihilates(m):
    ker = integer_kernel(m)
    ncols = len(m[0])
    for row in ker:
        prod = mat_mul((row,), transpose(m))
        assert all(x == 0 for x in prod[0])
    assert len(ker) == ncols - rank_int(m)
    if ker:
        assert primitivity_gcd(ker) == 1


@given(small_mat)
def test_saturation_divides_out_content(m):
    if rank_int(m) == 0:
        return
    sat = saturation(m)
    assert rank_int(sat) == rank_int(m)
    assert primitivity_gcd(sat) == 1


# -- symplectic completion ------------------------------------------------------


def _jpair(x, y):
    n = len(x) // 2
    return sum(x[i] * y[i + n] - x[i + n] * y[i] for i in range(n))


@pytest.mark.parametrize("n", [1, 2])
def test_symplectic_from_last_row_exhaustive(n):
    span = range(-2, 3)
    for v in itertools.product(span, repeat=2 * n):
        g = math.gcd(*v)
        if g != 1:
            if any(v):
                with pytest.raises(ValueError):
                    symplectic_from_last_row(v)
            continue
        gamma = symplectic_from_last_row(v)
        assert gamma.entries[-1] == v
        assert gamma.n == n  # constructor already verified symplecticity


def test_symplectic_from_last_row_spot_n3():
    rng = Random(7)
    for _ in range(50):
        v = tuple(rng.randrange(-9, 10) for _ in range(6))
        if math.gcd(*v) != 1:
            continue
        gamma = symplectic_from_last_row(v)
        assert gamma.entries[-1] == v


def test_symplectic_from_last_row_rejects_imprimitive():
    with pytest.raises(ValueError):
        symplectic_from_last_row((2, 0, 0, 2))
    with pytest.raises(ValueError):
        symplectic_from_last_row((0, 0, 0, 0))


# -- random sampling and strata -------------------------------------------------


def test_random_symplectic_is_deterministic():
    a = random_symplectic(2, 123)
    b = random_symplectic(2, 123)
    c = random_symplectic(2, 124)
    assert a.entries == b.entries
    assert a.entries != c.entries


def test_random_parabolic_lands_in_subgroup():
    from klingenfj.matrices import is_in_jacobi, is_in_parabolic

    for i in range(20):
        p = StrataParams(n=3, m=1, r=1)
        gamma = random_parabolic(3, 1, 1000 + i)
        assert is_in_parabolic(gamma, 1)
        jac = random_parabolic(3, 1, 2000 + i, jacobi=True)
        assert is_in_jacobi(jac, 1)


def test_strata_labels_in_range_and_rank_formula():
    rng = Random(5)
    for _ in range(200):
        gamma = random_symplectic(2, rng)
        p = StrataParams(n=2, m=1, r=1)
        t = strata_t(gamma, p)
        assert 0 <= t <= 1
        assert gamma_prime_rank(gamma, p) == 1 + 1 + t
        v = strata_v(gamma, StrataParams(n=2, m=1, r=None))
        assert 0 <= v <= 1


def test_symplectic_blocks_and_inverse():
    gamma = random_symplectic(3, 42)
    inv = gamma.inv()
    prod = gamma @ inv
    assert prod.entries == SymplecticInt.identity(3).entries
    n = gamma.n
    for x, y in (((1,) + (0,) * (2 * n - 1), (0, 1) + (0,) * (2 * n - 2)),):
        gx = tuple(mat_mul((x,), transpose(gamma.entries))[0])
        gy = tuple(mat_mul((y,), transpose(gamma.entries))[0])
        assert _jpair(gx, gy) == _jpair(x, y)
