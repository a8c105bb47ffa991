import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from monocat.fp import (
    Mat,
    hstack,
    image_basis,
    in_span,
    inverse,
    is_invertible,
    kernel_basis,
    rank,
    rref,
    solve_linear,
)


def M(p, rows):
    return Mat(p, rows)


def test_rref_identity_f2():
    m = Mat.eye(2, 2)
    red, pivots, rk = rref(m)
    assert red == m
    assert rk == 2
    assert pivots == (0, 1)


def test_rref_zero():
    m = Mat.zeros(5, 3, 4)
    red, pivots, rk = rref(m)
    assert red == m
    assert rk == 0
    assert pivots == ()


def test_rref_rank_one_f2():
    # hand row-reduction: second row is eliminated by the first
    m = M(2, [[1, 1], [1, 1]])
    red, _, rk = rref(m)
    assert red == M(2, [[1, 1], [0, 0]])
    assert rk == 1


def test_solve_identity():
    b = M(2, [[1], [0]])
    sol, ker = solve_linear(Mat.eye(2, 2), b)
    assert sol == b
    assert ker == []


def test_solve_zero_matrix():
    a = Mat.zeros(3, 2, 3)
    sol, ker = solve_linear(a, Mat.zeros(3, 2, 1))
    assert sol == Mat.zeros(3, 3, 1)
    assert len(ker) == 3


def test_solve_f3_partial_rank():
    a = M(3, [[1, 0], [0, 0]])
    b = M(3, [[1], [0]])
    sol, ker = solve_linear(a, b)
    assert sol == M(3, [[1], [0]])
    assert len(ker) == 1
    assert (a @ ker[0]).is_zero()


def test_solve_inconsistent():
    a = M(2, [[1, 0], [1, 0]])
    b = M(2, [[1], [0]])
    sol, ker = solve_linear(a, b)
    assert sol is None
    assert len(ker) == 1


def test_kernel_identity_and_zero():
    assert kernel_basis(Mat.eye(3, 4)) == []
    ker = kernel_basis(Mat.zeros(2, 3, 3))
    assert len(ker) == 3
    assert hstack(ker) == Mat.eye(2, 3)


def test_kernel_row_f2():
    ker = kernel_basis(M(2, [[1, 1]]))
    assert len(ker) == 1
    assert ker[0] == M(2, [[1], [1]])


def test_image_basis():
    assert hstack(image_basis(Mat.eye(2, 3))) == Mat.eye(2, 3)
    assert image_basis(Mat.zeros(2, 3, 3)) == []
    im = image_basis(M(2, [[1, 1], [1, 1]]))
    assert len(im) == 1
    assert im[0] == M(2, [[1], [1]])


def test_inverse():
    m = M(5, [[2, 1], [1, 1]])
    mi = inverse(m)
    assert mi is not None
    assert m @ mi == Mat.eye(5, 2)
    assert inverse(M(2, [[1, 1], [1, 1]])) is None
    assert not is_invertible(M(2, [[1, 1], [1, 1]]))


def test_in_span():
    v1 = M(2, [[1], [0], [1]])
    v2 = M(2, [[0], [1], [1]])
    assert in_span([v1, v2], M(2, [[1], [1], [0]]))
    assert not in_span([v1, v2], M(2, [[1], [0], [0]]))
    assert in_span([], Mat.zeros(2, 3, 1))


small_prime = st.sampled_from([2, 3, 5])


@st.composite
def fp_matrix(draw, max_dim=6):
    p = draw(small_prime)
    rows = draw(st.integers(min_value=0, max_value=max_dim))
    cols = draw(st.integers(min_value=0, max_value=max_dim))
    entries = draw(
        st.lists(
            st.lists(st.integers(min_value=0, max_value=p - 1), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
    return Mat(p, np.array(entries, dtype=np.int64).reshape(rows, cols))


@settings(max_examples=150, deadline=None)
@given(fp_matrix())
def test_rank_nullity(m):
    assert rank(m) == rref(m)[2]
    assert rank(m) + len(kernel_basis(m)) == m.cols
    assert len(image_basis(m)) == rank(m)


@settings(max_examples=150, deadline=None)
@given(fp_matrix())
def test_rref_idempotent_and_kernel_exact(m):
    red, _, _ = rref(m)
    assert rref(red)[0] == red
    for v in kernel_basis(m):
        assert (m @ v).is_zero()


@settings(max_examples=100, deadline=None)
@given(fp_matrix(), st.integers(min_value=0, max_value=3))
def test_solve_roundtrip(a, seed_cols):
    # build a guaranteed-consistent rhs, then check the solution solves exactly
    rng = np.random.default_rng(0)
    x = Mat(a.p, rng.integers(0, a.p, size=(a.cols, seed_cols + 1)))
    b = a @ x
    sol, ker = solve_linear(a, b)
    assert sol is not None
    assert a @ sol == b
    for v in ker:
        assert (a @ v).is_zero()


def test_bad_shapes_rejected():
    with pytest.raises(ValueError):
        solve_linear(Mat.zeros(2, 2, 2), Mat.zeros(2, 3, 1))
    with pytest.raises(ValueError):
        Mat(2, [1, 2, 3])
