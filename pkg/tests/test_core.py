import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from cases import SWAP, THREE_CYCLE, THREE_PATH, TWO_CYCLE_SPLIT, slices
from tubalpf.cone import classify_matrix
from tubalpf.core import (
    PermutationTensor,
    TubalMatrix,
    TubalScalar,
    TubalVector,
    bcirc,
    circ,
    fold,
    fold_vector,
    identity,
    inner,
    permute,
    tprod,
    tprod_fft,
    tprod_scalar,
    tprod_vec,
    transpose,
    unfold,
    unity,
)
from tubalpf.errors import DimensionError


def int_tensor(n, p, lo=-4, hi=4):
    return arrays(np.int64, (n, n, p), elements=st.integers(lo, hi))


@st.composite
def int_triples(draw):
    n = draw(st.integers(1, 3))
    p = draw(st.integers(1, 4))
    return tuple(TubalMatrix(draw(int_tensor(n, p))) for _ in range(3))


# ------------------------------------------------------------ tubes


def test_circ_first_column_is_the_tube():
    a = TubalScalar([1, 2, 3])
    assert circ(a).tolist() == [[1, 3, 2], [2, 1, 3], [3, 2, 1]]


def test_scalar_product_is_circular_convolution(rng):
    for _ in range(50):
        p = int(rng.integers(1, 7))
        a, b = rng.integers(-5, 6, p), rng.integers(-5, 6, p)
        got = tprod_scalar(TubalScalar(a), TubalScalar(b))
        assert got.data.tolist() == oracles.conv(a, b).tolist()


def test_unity_is_neutral():
    a = TubalScalar([3, -1, 4, 1])
    assert tprod_scalar(unity(4), a) == a
    assert tprod_scalar(a, unity(4)) == a


def test_scalar_matmul_operator():
    a, b = TubalScalar([1, 2]), TubalScalar([0, 1])
    assert (a @ b).data.tolist() == [2, 1]


def test_scalar_length_mismatch():
    with pytest.raises(DimensionError):
        tprod_scalar(TubalScalar([1, 2]), TubalScalar([1, 2, 3]))


# ------------------------------------------------------------ bcirc / unfold


def test_bcirc_matches_block_definition(rng):
    for _ in range(20):
        a = rng.integers(-3, 4, (3, 3, 4))
        assert np.array_equal(bcirc(TubalMatrix(a)), oracles.bcirc(a))


def test_bcirc_swap_example_is_anti_identity():
    expected = np.fliplr(np.eye(4, dtype=int))
    assert np.array_equal(bcirc(TubalMatrix(SWAP)), expected)


def test_bcirc_p1_is_the_matrix():
    a = np.arange(9).reshape(3, 3, 1)
    assert np.array_equal(bcirc(TubalMatrix(a)), a[:, :, 0])


def test_unfold_fold_roundtrip_matrix(rng):
    A = TubalMatrix(rng.standard_normal((3, 3, 5)))
    assert fold(unfold(A), 3) == A
    assert unfold(A).shape == (15, 3)


def test_unfold_vector_is_slice_major():
    X = TubalVector([[1, 2, 3], [4, 5, 6]])
    assert unfold(X).tolist() == oracles.unfold_vec(X.data).tolist() == [1, 4, 2, 5, 3, 6]
    assert fold_vector(unfold(X), 2) == X


def test_fold_rejects_bad_shapes():
    with pytest.raises(DimensionError):
        fold(np.zeros((7, 3)), 3)
    with pytest.raises(DimensionError):
        fold_vector(np.zeros(7), 3)


# ------------------------------------------------------------ products


def test_tprod_matches_tubewise_oracle(rng):
    for _ in range(40):
        n, p = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        a, b = rng.integers(-5, 6, (n, n, p)), rng.integers(-5, 6, (n, n, p))
        assert np.array_equal(tprod(TubalMatrix(a), TubalMatrix(b)).data, oracles.tprod(a, b))


def test_tprod_vec_matches_oracle(rng):
    a = rng.integers(-5, 6, (4, 4, 3))
    x = rng.integers(-5, 6, (4, 3))
    got = tprod_vec(TubalMatrix(a), TubalVector(x))
    assert np.array_equal(got.data, oracles.tprod(a, x[:, None, :])[:, 0, :])


def test_tprod_is_bcirc_times_unfold(rng):
    A = TubalMatrix(rng.standard_normal((3, 3, 4)))
    X = TubalVector(rng.standard_normal((3, 4)))
    assert np.allclose(unfold(tprod_vec(A, X)), bcirc(A) @ unfold(X))


def test_fft_product_agrees(rng):
    for _ in range(20):
        a = rng.standard_normal((3, 3, 5))
        b = rng.standard_normal((3, 3, 5))
        got = tprod_fft(TubalMatrix(a), TubalMatrix(b))
        assert not got.is_complex
        assert np.allclose(got.data, oracles.tprod(a, b), atol=1e-12)


def test_fft_product_on_cycle_square():
    B = TubalMatrix(THREE_CYCLE) + identity(3, 3)
    assert np.allclose(tprod_fft(B, B).data, tprod(B, B).data, atol=1e-12)


def test_fft_product_complex_and_vector(rng):
    a = rng.standard_normal((2, 2, 3)) + 1j * rng.standard_normal((2, 2, 3))
    x = rng.standard_normal((2, 3))
    got = tprod_fft(TubalMatrix(a), TubalVector(x))
    assert np.allclose(got.data, oracles.tprod(a, x[:, None, :].astype(complex))[:, 0, :])


def test_product_shape_mismatch():
    with pytest.raises(DimensionError):
        tprod(identity(2, 2), identity(3, 2))
    with pytest.raises(DimensionError):
        tprod_vec(identity(2, 2), TubalVector.zeros(2, 3))
    with pytest.raises(DimensionError):
        tprod_fft(identity(2, 2), identity(2, 3))


def test_matmul_dispatch():
    A = TubalMatrix(THREE_CYCLE)
    X = TubalVector(np.ones((3, 3), dtype=np.int64))
    assert A @ A == tprod(A, A)
    assert A @ X == tprod_vec(A, X)


def test_cycle_plus_identity_squared():
    # by hand: c32 = b31*b12 = b31 since b12 is the unity; c23 = 2 b23
    B = TubalMatrix(THREE_CYCLE) + identity(3, 3)
    C = tprod(B, B)
    assert C.data.dtype == np.int64
    assert C == TubalMatrix(slices([[1, 2, 0], [1, 1, 0], [0, 0, 1]],
                                   [[0, 0, 1], [0, 0, 2], [0, 0, 0]],
                                   [[0, 0, 0], [0, 0, 0], [2, 1, 0]]))
    assert C.tube(2, 1) == TubalMatrix(THREE_CYCLE).tube(2, 0)
    assert classify_matrix(C).is_strongly_positive is False
    assert classify_matrix(C).is_positive


def test_path_plus_identity_squared():
    B = TubalMatrix(THREE_PATH) + identity(3, 3)
    C = tprod(B, B)
    # c23 = b22*b23 + b23*b33 = 2 b23
    assert C == TubalMatrix(slices([[1, 2, 0], [0, 1, 0], [0, 0, 1]],
                                   [[0, 0, 1], [0, 0, 2], [0, 0, 0]],
                                   [[0, 0, 0], [0, 0, 0], [0, 0, 0]]))
    for i, j in [(1, 0), (2, 0), (2, 1)]:
        assert not C.tube(i, j).data.any()


def test_identity_is_neutral(rng):
    A = TubalMatrix(rng.integers(-3, 4, (3, 3, 4)))
    assert tprod(identity(3, 4), A) == A
    assert tprod(A, identity(3, 4)) == A


# ------------------------------------------------------------ algebra laws


@settings(max_examples=100, deadline=None)
@given(int_triples())
def test_associativity(t):
    A, B, C = t
    assert tprod(tprod(A, B), C) == tprod(A, tprod(B, C))


@settings(max_examples=100, deadline=None)
@given(int_triples())
def test_distributivity(t):
    A, B, C = t
    assert tprod(A, B + C) == tprod(A, B) + tprod(A, C)
    assert tprod(A + B, C) == tprod(A, C) + tprod(B, C)


@settings(max_examples=100, deadline=None)
@given(int_triples())
def test_bcirc_is_multiplicative(t):
    A, B, _ = t
    assert np.array_equal(bcirc(tprod(A, B)), bcirc(A) @ bcirc(B))


@settings(max_examples=100, deadline=None)
@given(int_triples())
def test_transpose_reverses_products(t):
    A, B, _ = t
    assert transpose(tprod(A, B)) == tprod(transpose(B), transpose(A))
    assert np.array_equal(bcirc(transpose(A)), bcirc(A).T)
    assert transpose(transpose(A)) == A


def test_scalar_ring_is_commutative(rng):
    for _ in range(30):
        a, b = TubalScalar(rng.integers(-5, 6, 4)), TubalScalar(rng.integers(-5, 6, 4))
        assert tprod_scalar(a, b) == tprod_scalar(b, a)


def test_transpose_of_tube_and_vector():
    assert transpose(TubalScalar([1, 2, 3, 4])).data.tolist() == [1, 4, 3, 2]
    X = TubalVector([[1, 2, 3], [4, 5, 6]])
    assert transpose(X).data.tolist() == [[1, 3, 2], [4, 6, 5]]


def test_inner_is_transpose_times_vector(rng):
    Y = TubalVector(rng.integers(-3, 4, (3, 4)))
    X = TubalVector(rng.integers(-3, 4, (3, 4)))
    expected = sum(oracles.conv(transpose(Y).data[i], X.data[i]) for i in range(3))
    assert inner(Y, X).data.tolist() == expected.tolist()


# ------------------------------------------------------------ permutations


def test_swap_exchanges_off_diagonal_tubes():
    A = TubalMatrix(TWO_CYCLE_SPLIT)
    B = permute(PermutationTensor([1, 0], 2), A)
    assert B.tube(0, 1) == A.tube(1, 0)
    assert B.tube(1, 0) == A.tube(0, 1)


def test_permute_equals_tensor_conjugation(rng):
    A = TubalMatrix(rng.integers(-3, 4, (4, 4, 3)))
    P = PermutationTensor([2, 0, 3, 1], 3)
    Pt = P.to_tubal()
    assert permute(P, A) == tprod(tprod(Pt, A), transpose(Pt))
    assert transpose(Pt) == P.T.to_tubal()
    X = TubalVector(rng.integers(-3, 4, (4, 3)))
    assert permute(P, X) == tprod_vec(Pt, X)


def test_permutation_validation():
    with pytest.raises(ValueError):
        PermutationTensor([0, 0], 2)
    with pytest.raises(DimensionError):
        permute(PermutationTensor([1, 0], 2), identity(3, 2))


# ------------------------------------------------------------ value semantics


def test_values_are_immutable():
    A = identity(2, 2)
    with pytest.raises(ValueError):
        A.data[0, 0, 0] = 5
    with pytest.raises(AttributeError):
        A.data = None


def test_constructors_validate_shape():
    with pytest.raises(DimensionError):
        TubalMatrix(np.zeros((2, 3, 2)))
    with pytest.raises(DimensionError):
        TubalVector(np.zeros(3))
    with pytest.raises(DimensionError):
        TubalScalar(np.zeros(0))


def test_from_slices_layout():
    A = TubalMatrix.from_slices([[[1, 2], [3, 4]], [[5, 6], [7, 8]]])
    assert A.tube(0, 1).data.tolist() == [2, 6]
    assert A.slice(1).tolist() == [[5, 6], [7, 8]]


def test_arithmetic_and_equality():
    A = identity(2, 3)
    assert (A + A) == A * 2 == 2 * A
    assert (A - A) == TubalMatrix.zeros(2, 3)
    assert (-A).data.min() == -1
    assert (A / 2).allclose(A * 0.5)
    assert A != identity(2, 2)
