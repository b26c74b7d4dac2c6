"""Nonnegative / positive / strongly positive classification of tubal objects.

A tube is *positive* when it is nonnegative with nonzero modulus, and
*strongly positive* when every entry is positive.  Vectors and matrices take
the weakest class over their tubes.  All tests use an explicit tolerance
``tol``: an entry counts as zero when ``|x| <= tol``, as negative when
``x < -tol`` and as positive when ``x > tol``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .core import TubalMatrix, TubalScalar, TubalVector, tprod_scalar

__all__ = [
    "ConeClass",
    "default_tol",
    "classify",
    "classify_scalar",
    "classify_vector",
    "classify_matrix",
    "classify_tubes",
    "modulus",
    "magnitude",
    "support_counts",
    "ClosureReport",
    "check_product_closure",
]


class ConeClass(enum.Enum):
    ZERO = "zero"
    NONNEGATIVE = "nonnegative"
    POSITIVE = "positive"
    STRONGLY_POSITIVE = "strongly_positive"
    MIXED = "mixed"

    @property
    def is_nonnegative(self) -> bool:
        return self is not ConeClass.MIXED

    @property
    def is_positive(self) -> bool:
        return self in (ConeClass.POSITIVE, ConeClass.STRONGLY_POSITIVE)

    @property
    def is_strongly_positive(self) -> bool:
        return self is ConeClass.STRONGLY_POSITIVE


def default_tol(x) -> float:
    """0 for integer data, ``1e-12 * max|entry|`` otherwise."""
    data = x.data if hasattr(x, "data") else np.asarray(x)
    if data.dtype.kind in "iuO" or data.size == 0:
        return 0.0
    return 1e-12 * float(np.max(np.abs(data)))


def _resolve(x, tol):
    if tol is None:
        return default_tol(x)
    if tol < 0:
        raise ValueError("tolerance must be >= 0")
    return float(tol)


def _tube_codes(data: np.ndarray, tol: float) -> np.ndarray:
    """Per-tube class codes: 0 zero, 1 positive, 2 strongly positive, -1 mixed."""
    if data.dtype.kind == "c":
        raise TypeError("cone classification needs real data; take .real or magnitude() first")
    neg = np.any(data < -tol, axis=-1)
    nonzero = np.any(np.abs(data) > tol, axis=-1)
    strong = np.all(data > tol, axis=-1)
    codes = np.where(nonzero, 1, 0)
    codes = np.where(strong, 2, codes)
    return np.where(neg, -1, codes)


def _meet(codes: np.ndarray) -> ConeClass:
    if np.any(codes < 0):
        return ConeClass.MIXED
    if np.all(codes == 2):
        return ConeClass.STRONGLY_POSITIVE
    if np.all(codes >= 1):
        return ConeClass.POSITIVE
    if np.all(codes == 0):
        return ConeClass.ZERO
    return ConeClass.NONNEGATIVE


_SCALAR = {0: ConeClass.ZERO, 1: ConeClass.POSITIVE, 2: ConeClass.STRONGLY_POSITIVE, -1: ConeClass.MIXED}


def classify_scalar(a: TubalScalar, tol: float | None = None) -> ConeClass:
    """Class of a single tube; never ``NONNEGATIVE`` since a nonzero nonnegative tube is positive."""
    return _SCALAR[int(_tube_codes(a.data, _resolve(a, tol)))]


def classify_vector(X: TubalVector, tol: float | None = None) -> ConeClass:
    return _meet(_tube_codes(X.data, _resolve(X, tol)))


def classify_matrix(A: TubalMatrix, tol: float | None = None) -> ConeClass:
    return _meet(_tube_codes(A.data, _resolve(A, tol)))


def classify(x, tol: float | None = None) -> ConeClass:
    if isinstance(x, TubalScalar):
        return classify_scalar(x, tol)
    if isinstance(x, TubalVector):
        return classify_vector(x, tol)
    if isinstance(x, TubalMatrix):
        return classify_matrix(x, tol)
    raise TypeError(f"cannot classify {type(x).__name__}")


def classify_tubes(x, tol: float | None = None) -> np.ndarray:
    """Array of per-tube :class:`ConeClass` values, shaped like ``x`` minus the tube axis."""
    codes = _tube_codes(x.data, _resolve(x, tol))
    return np.vectorize(_SCALAR.__getitem__, otypes=[object])(codes)


def support_counts(x, tol: float | None = None) -> np.ndarray:
    """Number of entries with ``|entry| > tol`` in each tube (diagnostic only)."""
    return np.sum(np.abs(x.data) > _resolve(x, tol), axis=-1)


def modulus(a: TubalScalar) -> float:
    return float(np.sqrt(np.sum(np.abs(a.data) ** 2)))


def magnitude(x):
    """Entrywise modulus, returned as the real counterpart of ``x``."""
    return type(x)(np.abs(x.data))


@dataclass
class ClosureReport:
    product: TubalScalar
    product_class: ConeClass
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_product_closure(a: TubalScalar, b: TubalScalar, tol: float | None = None) -> ClosureReport:
    """Check the closure rules of the t-product on the cone hierarchy for one pair.

    Rules checked, each only when its hypothesis holds:

    * nonnegative * nonnegative is nonnegative
    * positive * positive is positive
    * strongly positive * positive (either order) is strongly positive
    * with ``b`` positive and ``a`` nonnegative, ``a * b == 0`` only if ``a == 0``
    """
    c = tprod_scalar(a, b)
    if tol is None:
        tol = max(default_tol(a), default_tol(b), default_tol(c))
    ca, cb, cc = classify_scalar(a, tol), classify_scalar(b, tol), classify_scalar(c, tol)
    violations = []
    if ca.is_nonnegative and cb.is_nonnegative and not cc.is_nonnegative:
        violations.append(f"nonnegative*nonnegative gave {cc.value}")
    if ca.is_positive and cb.is_positive and not cc.is_positive:
        violations.append(f"positive*positive gave {cc.value}")
    if ((ca.is_strongly_positive and cb.is_positive) or (cb.is_strongly_positive and ca.is_positive)) \
            and not cc.is_strongly_positive:
        violations.append(f"strongly positive*positive gave {cc.value}")
    if ca.is_nonnegative and cb.is_positive and cc is ConeClass.ZERO and ca is not ConeClass.ZERO:
        violations.append("a*b == 0 with b positive but a != 0")
    return ClosureReport(c, cc, violations)
