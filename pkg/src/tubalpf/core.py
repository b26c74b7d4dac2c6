"""Tubal scalars, vectors and matrices under the t-product.

Storage is tube-major: a tubal matrix is an ``(n, n, p)`` C-contiguous array,
so every tube ``A[i, j, :]`` is unit-stride.  Frontal slices ``A[:, :, k]``
are views computed on demand.  Slice indices are 0-based throughout the API.

Integer data stays integer through the naive products (``tprod``,
``tprod_scalar``, ``bcirc``); only ``tprod_fft`` promotes to floating point.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import DimensionError

__all__ = [
    "TubalScalar",
    "TubalVector",
    "TubalMatrix",
    "PermutationTensor",
    "circ",
    "tprod_scalar",
    "bcirc",
    "unfold",
    "fold",
    "fold_vector",
    "tprod",
    "tprod_vec",
    "tprod_fft",
    "transpose",
    "inner",
    "permute",
    "identity",
    "unity",
]


def _normalize(data) -> np.ndarray:
    arr = np.asarray(data)
    kind = arr.dtype.kind
    if kind in "biu":
        arr = arr.astype(np.int64)
    elif kind == "f":
        arr = arr.astype(np.float64)
    elif kind == "c":
        arr = arr.astype(np.complex128)
    elif kind != "O":
        raise TypeError(f"unsupported dtype {arr.dtype}")
    arr = np.array(arr, copy=True, order="C")
    arr.flags.writeable = False
    return arr


class _TubalArray:
    """Shared value semantics: immutable array, elementwise +/-, scaling."""

    __slots__ = ("data",)
    _ndim = 0

    def __init__(self, data):
        arr = _normalize(data)
        if arr.ndim != self._ndim:
            raise DimensionError(
                f"{type(self).__name__} needs a {self._ndim}-d array, got shape {arr.shape}"
            )
        if arr.shape[-1] < 1:
            raise DimensionError("tube length p must be >= 1")
        object.__setattr__(self, "data", arr)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def p(self) -> int:
        return self.data.shape[-1]

    @property
    def dtype(self):
        return self.data.dtype

    @property
    def is_complex(self) -> bool:
        return self.data.dtype.kind == "c"

    @property
    def is_integer(self) -> bool:
        return self.data.dtype.kind in "iuO"

    def _check_same(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if other.data.shape != self.data.shape:
            raise DimensionError(f"shape mismatch {self.data.shape} vs {other.data.shape}")
        return None

    def __add__(self, other):
        bad = self._check_same(other)
        if bad is NotImplemented:
            return bad
        return type(self)(self.data + other.data)

    def __sub__(self, other):
        bad = self._check_same(other)
        if bad is NotImplemented:
            return bad
        return type(self)(self.data - other.data)

    def __neg__(self):
        return type(self)(-self.data)

    def __mul__(self, c):
        if isinstance(c, _TubalArray):
            return NotImplemented
        return type(self)(self.data * c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return type(self)(self.data / c)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(np.all(self.data == other.data))

    __hash__ = None

    def allclose(self, other, atol: float = 1e-12, rtol: float = 0.0) -> bool:
        if other.data.shape != self.data.shape:
            return False
        return bool(np.allclose(self.data, other.data, atol=atol, rtol=rtol))

    def astype(self, dtype):
        return type(self)(self.data.astype(dtype))

    @property
    def real(self):
        return type(self)(np.real(self.data))

    @property
    def imag(self):
        return type(self)(np.imag(self.data))

    def to_array(self) -> np.ndarray:
        """Return a writable copy of the underlying array."""
        return np.array(self.data)


class TubalScalar(_TubalArray):
    """Element of the ring K_p: a length-p tube."""

    __slots__ = ()
    _ndim = 1

    @classmethod
    def zeros(cls, p: int, dtype=np.int64) -> "TubalScalar":
        return cls(np.zeros(p, dtype=dtype))

    @property
    def entries(self) -> np.ndarray:
        return self.data

    def __matmul__(self, other):
        if isinstance(other, TubalScalar):
            return tprod_scalar(self, other)
        return NotImplemented

    def __repr__(self):
        return f"TubalScalar({self.data.tolist()})"


class TubalVector(_TubalArray):
    """n tubes of common length p, stored as an ``(n, p)`` array."""

    __slots__ = ()
    _ndim = 2

    @classmethod
    def from_tubes(cls, tubes: Sequence[Sequence]) -> "TubalVector":
        return cls(np.asarray(tubes))

    @classmethod
    def zeros(cls, n: int, p: int, dtype=np.int64) -> "TubalVector":
        return cls(np.zeros((n, p), dtype=dtype))

    @property
    def n(self) -> int:
        return self.data.shape[0]

    def tube(self, i: int) -> TubalScalar:
        return TubalScalar(self.data[i])

    @property
    def tubes(self) -> list[TubalScalar]:
        return [TubalScalar(t) for t in self.data]

    def slice(self, k: int) -> np.ndarray:
        return self.data[:, k]

    def __repr__(self):
        return f"TubalVector(n={self.n}, p={self.p}, tubes={self.data.tolist()})"


class TubalMatrix(_TubalArray):
    """Square tubal matrix, i.e. an ``(n, n, p)`` third-order tensor."""

    __slots__ = ()
    _ndim = 3

    def __init__(self, data):
        super().__init__(data)
        if self.data.shape[0] != self.data.shape[1]:
            raise DimensionError(f"tubal matrices are square, got shape {self.data.shape}")

    @classmethod
    def from_slices(cls, slices: Sequence) -> "TubalMatrix":
        """Build from a list of p frontal slices, each an n x n array."""
        arr = np.asarray(slices)
        if arr.ndim != 3 or arr.shape[0] < 1:
            raise DimensionError("expected a non-empty list of n x n slices")
        return cls(np.moveaxis(arr, 0, -1))

    @classmethod
    def zeros(cls, n: int, p: int, dtype=np.int64) -> "TubalMatrix":
        return cls(np.zeros((n, n, p), dtype=dtype))

    @property
    def n(self) -> int:
        return self.data.shape[0]

    def slice(self, k: int) -> np.ndarray:
        """Frontal slice ``k`` (0-based) as an n x n view."""
        return self.data[:, :, k]

    @property
    def slices(self) -> np.ndarray:
        """All frontal slices as a ``(p, n, n)`` array."""
        return np.moveaxis(self.data, -1, 0)

    def tube(self, i: int, j: int) -> TubalScalar:
        return TubalScalar(self.data[i, j])

    def __matmul__(self, other):
        if isinstance(other, TubalMatrix):
            return tprod(self, other)
        if isinstance(other, TubalVector):
            return tprod_vec(self, other)
        return NotImplemented

    @property
    def T(self) -> "TubalMatrix":
        return transpose(self)

    def __repr__(self):
        return f"TubalMatrix(n={self.n}, p={self.p}, slices={self.slices.tolist()})"


class PermutationTensor:
    """Tubal matrix whose first frontal slice is a permutation matrix.

    ``perm[i] = s`` means row ``i`` of the first slice has its 1 in column
    ``s``; conjugating by it sends tube ``(i, j)`` to ``(perm[i], perm[j])``
    of the original.
    """

    __slots__ = ("perm", "p")

    def __init__(self, perm: Sequence[int], p: int):
        perm = tuple(int(s) for s in perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"not a permutation of range({len(perm)}): {perm}")
        if p < 1:
            raise DimensionError("tube length p must be >= 1")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "p", int(p))

    def __setattr__(self, name, value):
        raise AttributeError("PermutationTensor is immutable")

    @property
    def n(self) -> int:
        return len(self.perm)

    def matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=np.int64)
        m[np.arange(self.n), self.perm] = 1
        return m

    def to_tubal(self) -> TubalMatrix:
        data = np.zeros((self.n, self.n, self.p), dtype=np.int64)
        data[:, :, 0] = self.matrix()
        return TubalMatrix(data)

    @property
    def T(self) -> "PermutationTensor":
        return PermutationTensor(np.argsort(self.perm), self.p)

    def __eq__(self, other):
        if not isinstance(other, PermutationTensor):
            return NotImplemented
        return self.perm == other.perm and self.p == other.p

    def __hash__(self):
        return hash((self.perm, self.p))

    def __repr__(self):
        return f"PermutationTensor(perm={list(self.perm)}, p={self.p})"


# ---------------------------------------------------------------- raw arrays


def _bcirc_array(a: np.ndarray) -> np.ndarray:
    m, k, p = a.shape
    idx = (np.arange(p)[:, None] - np.arange(p)[None, :]) % p
    blocks = np.moveaxis(a, -1, 0)[idx]  # (p, p, m, k)
    return blocks.transpose(0, 2, 1, 3).reshape(p * m, p * k)


def _unfold_array(b: np.ndarray) -> np.ndarray:
    k, l, p = b.shape
    return np.moveaxis(b, -1, 0).reshape(p * k, l)


def _fold_array(mat: np.ndarray, rows: int) -> np.ndarray:
    total, cols = mat.shape
    if rows < 1 or total % rows:
        raise DimensionError(f"row count {total} is not a multiple of {rows}")
    return np.moveaxis(mat.reshape(total // rows, rows, cols), 0, -1)


def _tprod_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """t-product of rectangular ``(m, k, p)`` and ``(k, l, p)`` arrays."""
    if a.shape[1] != b.shape[0] or a.shape[2] != b.shape[2]:
        raise DimensionError(f"cannot t-multiply shapes {a.shape} and {b.shape}")
    return _fold_array(_bcirc_array(a) @ _unfold_array(b), a.shape[0])


# ---------------------------------------------------------------- operations


def unity(p: int, dtype=np.int64) -> TubalScalar:
    """The ring unity ``e = [1, 0, ..., 0]``."""
    e = np.zeros(p, dtype=dtype)
    e[0] = 1
    return TubalScalar(e)


def identity(n: int, p: int, dtype=np.int64) -> TubalMatrix:
    data = np.zeros((n, n, p), dtype=dtype)
    data[np.arange(n), np.arange(n), 0] = 1
    return TubalMatrix(data)


def circ(a: TubalScalar) -> np.ndarray:
    """p x p circulant whose first column is ``a``; column j is ``a`` shifted down by j."""
    x = a.data
    p = x.shape[0]
    return x[(np.arange(p)[:, None] - np.arange(p)[None, :]) % p]


def tprod_scalar(a: TubalScalar, b: TubalScalar) -> TubalScalar:
    """Circular convolution ``circ(a) @ b``."""
    if a.p != b.p:
        raise DimensionError(f"tube lengths differ: {a.p} vs {b.p}")
    return TubalScalar(circ(a) @ b.data)


def bcirc(A: TubalMatrix) -> np.ndarray:
    """Block-circulant np x np matrix; block (i, j) is frontal slice ``(i - j) mod p``."""
    return _bcirc_array(A.data)


def unfold(X: TubalMatrix | TubalVector) -> np.ndarray:
    """Stack frontal slices vertically.

    A matrix unfolds to ``(n*p, n)``; a vector to a flat length ``n*p`` array
    ordered slice by slice.
    """
    if isinstance(X, TubalVector):
        return X.data.T.reshape(-1)
    return _unfold_array(X.data)


def fold(mat: np.ndarray, n: int) -> TubalMatrix:
    """Inverse of :func:`unfold` for an ``(n*p, n)`` matrix."""
    mat = np.asarray(mat)
    if mat.ndim != 2 or mat.shape[1] != n:
        raise DimensionError(f"fold expects an (n*p, {n}) matrix, got {mat.shape}")
    return TubalMatrix(_fold_array(mat, n))


def fold_vector(vec: np.ndarray, n: int) -> TubalVector:
    vec = np.asarray(vec).reshape(-1)
    if n < 1 or vec.size % n or vec.size == 0:
        raise DimensionError(f"length {vec.size} is not a positive multiple of {n}")
    return TubalVector(vec.reshape(-1, n).T)


def tprod(A: TubalMatrix, B: TubalMatrix) -> TubalMatrix:
    """t-product ``fold(bcirc(A) @ unfold(B))``."""
    if A.data.shape != B.data.shape:
        raise DimensionError(f"cannot t-multiply {A.data.shape} by {B.data.shape}")
    return TubalMatrix(_tprod_array(A.data, B.data))


def tprod_vec(A: TubalMatrix, X: TubalVector) -> TubalVector:
    if (A.n, A.p) != (X.n, X.p):
        raise DimensionError(f"cannot t-multiply {A.data.shape} by vector {X.data.shape}")
    return TubalVector(_tprod_array(A.data, X.data[:, None, :])[:, 0, :])


def tprod_fft(A: TubalMatrix, B: TubalMatrix | TubalVector):
    """t-product through the DFT along tubes.

    The p transformed slice products are independent; nothing is summed
    across slices, so the result does not depend on evaluation order.
    The result is real whenever both inputs are real.
    """
    vector = isinstance(B, TubalVector)
    b = B.data[:, None, :] if vector else B.data
    if A.data.shape[1] != b.shape[0] or A.p != B.p or (not vector and A.data.shape != b.shape):
        raise DimensionError(f"cannot t-multiply {A.data.shape} by {B.data.shape}")
    fa = np.fft.fft(A.data, axis=-1)
    fb = np.fft.fft(b, axis=-1)
    fc = np.einsum("ijk,jlk->ilk", fa, fb)
    c = np.fft.ifft(fc, axis=-1)
    if not (A.is_complex or B.is_complex):
        c = c.real
    if vector:
        return TubalVector(c[:, 0, :])
    return TubalMatrix(c)


def _reverse_index(p: int) -> np.ndarray:
    return (-np.arange(p)) % p


def transpose(X):
    """t-transpose: transpose each slice, keep slice 0, reverse slices 1..p-1.

    For a :class:`TubalVector` the tubes are transposed in place and the
    result is returned as a vector again; the row orientation is implicit
    (it is what :func:`inner` consumes).
    """
    idx = _reverse_index(X.p)
    if isinstance(X, TubalScalar):
        return TubalScalar(X.data[idx])
    if isinstance(X, TubalVector):
        return TubalVector(X.data[:, idx])
    if isinstance(X, TubalMatrix):
        return TubalMatrix(X.data.transpose(1, 0, 2)[:, :, idx])
    if isinstance(X, PermutationTensor):
        return X.T
    raise TypeError(f"cannot transpose {type(X).__name__}")


def inner(Y: TubalVector, X: TubalVector) -> TubalScalar:
    """``Y^T * X``, the sum of ``y_i^T * x_i``."""
    if Y.data.shape != X.data.shape:
        raise DimensionError(f"shape mismatch {Y.data.shape} vs {X.data.shape}")
    yt = transpose(Y).data
    total = sum(circ(TubalScalar(yt[i])) @ X.data[i] for i in range(Y.n))
    return TubalScalar(total)


def permute(P: PermutationTensor, X):
    """``P * A * P^T`` for a matrix, ``P * X`` for a vector.

    Every frontal slice is conjugated by the same permutation matrix, so
    tube ``(i, j)`` of the result is tube ``(perm[i], perm[j])`` of ``A``.
    """
    if P.n != X.n or P.p != X.p:
        raise DimensionError(f"permutation of size ({P.n}, p={P.p}) vs operand ({X.n}, p={X.p})")
    s = np.asarray(P.perm)
    if isinstance(X, TubalVector):
        return TubalVector(X.data[s])
    return TubalMatrix(X.data[np.ix_(s, s)])
