"""t-eigenvalues and t-eigenvectors.

``A * X = lam * X`` holds iff ``bcirc(A) @ unfold(X) = lam * unfold(X)``, and
the DFT along tubes block-diagonalises ``bcirc(A)`` into the p slices
``sum_j w^(k*j) A[:, :, j]`` with ``w = exp(-2*pi*i/p)``.  Everything here
works slice by slice and lifts results back through the inverse DFT.
"""
from __future__ import annotations

import enum
import warnings
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .core import TubalMatrix, TubalVector, bcirc, fold_vector, transpose, unfold
from .eigen import hessenberg_qr_eigvals
from .errors import DomainError

__all__ = [
    "Side",
    "Eigenpair",
    "Spectrum",
    "PowerIterationResult",
    "scale",
    "block_dft_slices",
    "t_spectrum",
    "t_eigenspace",
    "t_eigenvector",
    "left_t_eigenvector",
    "residual",
    "perron_power_iteration",
]


def scale(A: TubalMatrix) -> float:
    """``max(1, ||bcirc(A)||_inf)``; the reference size for relative tolerances."""
    rows = np.sum(np.abs(A.data), axis=(1, 2))
    return max(1.0, float(np.max(rows)) if rows.size else 0.0)


def block_dft_slices(A: TubalMatrix) -> np.ndarray:
    """The p complex n x n slices of the DFT along tubes, shaped ``(p, n, n)``."""
    return np.moveaxis(np.fft.fft(A.data, axis=-1), -1, 0)


class Side(enum.Enum):
    RIGHT = "right"
    LEFT = "left"


@dataclass
class Eigenpair:
    lam: complex
    vector: TubalVector
    side: Side
    residual: float


@dataclass
class Spectrum:
    """Eigenvalues of ``bcirc(A)`` with algebraic multiplicity.

    ``eigenvalues`` is the full multiset (length n*p) sorted by (real, imag);
    ``distinct`` pairs each cluster representative with its multiplicity.
    """

    eigenvalues: np.ndarray
    distinct: list[tuple[complex, int]]
    rho: float
    rho_attaining: list[complex]
    slice_eigenvalues: list[np.ndarray] = field(repr=False)
    cluster_tol: float = 0.0

    def multiplicity(self, lam: complex) -> int:
        return sum(m for v, m in self.distinct if abs(v - lam) <= self.cluster_tol)

    def contains(self, lam: complex, tol: float | None = None) -> bool:
        tol = self.cluster_tol if tol is None else tol
        return any(abs(v - lam) <= tol for v, _ in self.distinct)

    def real_eigenvalues(self) -> list[float]:
        return [float(v.real) for v, _ in self.distinct if v.imag == 0.0]


def _cluster(values: np.ndarray, tol: float) -> list[tuple[complex, int]]:
    clusters: list[list[complex]] = []
    for v in values:
        for c in clusters:
            if abs(np.mean(c) - v) <= tol:
                c.append(v)
                break
        else:
            clusters.append([v])
    return [(complex(np.mean(c)), len(c)) for c in clusters]


def t_spectrum(A: TubalMatrix) -> Spectrum:
    """Eigenvalues of every DFT slice, merged into the spectrum of ``bcirc(A)``.

    Values within ``1e-8 * (1 + rho)`` of each other are one cluster; for real
    ``A``, imaginary parts below that tolerance are set to zero.
    """
    per_slice = [hessenberg_qr_eigvals(S) for S in block_dft_slices(A)]
    values = np.concatenate(per_slice)
    rho = float(np.max(np.abs(values)))
    tol = 1e-8 * (1.0 + rho)
    if not A.is_complex:
        values = np.where(np.abs(values.imag) <= tol, values.real + 0j, values)
    values = values[np.lexsort((values.imag, values.real))]
    distinct = _cluster(values, tol)
    if not A.is_complex:
        distinct = [(complex(v.real, 0.0) if abs(v.imag) <= tol else v, m) for v, m in distinct]
    rho = max(abs(v) for v, _ in distinct)
    attaining = [v for v, _ in distinct if abs(abs(v) - rho) <= tol]
    return Spectrum(values, distinct, float(rho), attaining, per_slice, tol)


def _null_space(M: np.ndarray, tol: float) -> np.ndarray:
    _, s, vh = np.linalg.svd(M)
    return vh[s <= tol].conj().T


def _lift(y: np.ndarray, k: int, p: int) -> np.ndarray:
    """Unfolded vector whose DFT is ``y`` in slice ``k`` and zero elsewhere."""
    hat = np.zeros((y.shape[0], p), dtype=np.complex128)
    hat[:, k] = y
    return np.fft.ifft(hat, axis=-1).T.reshape(-1)


def t_eigenspace(
    A: TubalMatrix, lam: complex, tol: float | None = None, real: bool = False
) -> np.ndarray:
    """Orthonormal basis (columns, unfolded coordinates) of ``ker(bcirc(A) - lam I)``.

    Built as the union of the slice null spaces lifted through the inverse
    DFT.  With ``real=True`` (real ``A`` and real ``lam`` only) a real basis of
    the same space is returned.  ``tol`` is the singular-value cutoff,
    default ``1e-8 * scale(A)``.
    """
    tol = 1e-8 * scale(A) if tol is None else tol
    if real and (A.is_complex or abs(complex(lam).imag) > tol):
        raise DomainError("a real eigenspace basis needs real data and a real eigenvalue")
    n, p = A.n, A.p
    cols = []
    for k, S in enumerate(block_dft_slices(A)):
        ns = _null_space(S - lam * np.eye(n), tol)
        for y in ns.T:
            cols.append(_lift(y, k, p))
    if not cols:
        return np.zeros((n * p, 0), dtype=np.float64 if real else np.complex128)
    V = np.array(cols).T
    V /= np.linalg.norm(V, axis=0)
    if not real:
        return V
    d = V.shape[1]
    u, s, _ = np.linalg.svd(np.hstack([V.real, V.imag]), full_matrices=False)
    return u[:, :d]


def _normalize_phase(x: np.ndarray) -> np.ndarray:
    x = x / np.linalg.norm(x)
    mags = np.abs(x)
    top = int(np.flatnonzero(mags >= mags.max() * (1 - 1e-12))[0])
    return x * (abs(x[top]) / x[top])


def residual(A: TubalMatrix, lam: complex, X: TubalVector) -> float:
    """``max |bcirc(A) unfold(X) - lam unfold(X)|``."""
    x = unfold(X)
    return float(np.max(np.abs(bcirc(A) @ x - lam * x)))


def _owning_slice(A: TubalMatrix, lam: complex, tol: float):
    slices = block_dft_slices(A)
    best = None
    for k, S in enumerate(slices):
        vals = hessenberg_qr_eigvals(S)
        gap = float(np.min(np.abs(vals - lam)))
        if gap <= tol and (best is None or gap < best[1] - tol):
            best = (k, gap)
    if best is None:
        raise DomainError(f"{lam} is not a t-eigenvalue (no DFT slice has it within {tol:g})")
    return best[0], slices[best[0]]


def t_eigenvector(A: TubalMatrix, lam: complex, tol: float | None = None) -> Eigenpair:
    """Right t-eigenvector for ``lam`` by inverse iteration on the owning DFT slice.

    The slice vector is lifted back to a tubal vector, scaled to unit norm and
    rotated so its largest-modulus unfolded entry (lowest index on ties) is
    real and positive.  For real ``A`` and real ``lam`` a numerically real
    result is returned with a real dtype.  Warns when ``lam`` looks defective
    (algebraic multiplicity above the eigenspace dimension).
    """
    sc = scale(A)
    tol = 1e-8 * sc if tol is None else tol
    lam = complex(lam)
    k, S = _owning_slice(A, lam, max(tol, 1e-8 * (1 + abs(lam))))
    n = A.n
    rng = np.random.default_rng(0x7EA5)
    y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    shift = lam + 1e-13 * sc * (1 + 1j)
    M = S - shift * np.eye(n)
    x = None
    for it in range(30):
        try:
            y = np.linalg.solve(M, y)
        except np.linalg.LinAlgError:
            M = S - (shift + 1e-11 * sc) * np.eye(n)
            continue
        y /= np.linalg.norm(y)
        x = _lift(y, k, A.p)
        if it >= 2 and np.max(np.abs(S @ y - lam * y)) <= 1e-3 * tol:
            break
    x = _normalize_phase(x)
    if not A.is_complex and lam.imag == 0.0 and np.max(np.abs(x.imag)) <= 1e-12:
        x = x.real
    X = fold_vector(x, n)
    res = residual(A, lam, X)
    algebraic = t_spectrum(A).multiplicity(lam)
    if algebraic > 1:
        geometric = t_eigenspace(A, lam).shape[1]
        if geometric < algebraic:
            warnings.warn(
                f"t-eigenvalue {lam} has algebraic multiplicity {algebraic} but only "
                f"{geometric} independent eigenvectors; returned one of them",
                RuntimeWarning,
                stacklevel=2,
            )
    return Eigenpair(lam, X, Side.RIGHT, res)


def left_t_eigenvector(A: TubalMatrix, lam: complex, tol: float | None = None) -> Eigenpair:
    """``Y`` with ``A^T * Y = lam * Y``."""
    pair = t_eigenvector(transpose(A), lam, tol)
    return Eigenpair(pair.lam, pair.vector, Side.LEFT, pair.residual)


@dataclass
class PowerIterationResult:
    rho: float
    vector: TubalVector
    converged: bool
    iterations: int
    diagnosis: str


def perron_power_iteration(
    A: TubalMatrix,
    x0: TubalVector | None = None,
    tol: float = 1e-12,
    max_iter: int = 10_000,
) -> PowerIterationResult:
    """Power iteration ``X <- A*X / max(A*X)`` on nonnegative data.

    Converged means the iterate changed by less than ``tol`` in one step, and
    so did the estimate ``max(A*X)`` (relative) after the first step.  Otherwise the
    diagnosis is ``"oscillation"`` when the iterate is periodic (several
    eigenvalues on the spectral circle) or ``"max_iter"``; ``"annihilated"``
    means some power of ``A`` killed the start vector (spectral radius 0).
    The default start vector is a fixed non-constant positive ramp.
    """
    if A.is_complex or np.any(A.data < 0):
        raise DomainError("power iteration needs a nonnegative tubal matrix")
    if not np.any(A.data):
        raise DomainError("power iteration needs A != 0")
    M = bcirc(A).astype(float)
    m = M.shape[0]
    x = np.linspace(1.0, 2.0, m) if x0 is None else unfold(x0).astype(float)
    if np.any(x <= 0):
        raise DomainError("start vector must have all unfolded entries > 0")
    x = x / x.max()
    history: deque[np.ndarray] = deque([x], maxlen=_MAX_PERIOD + 1)
    est = 0.0
    for it in range(1, max_iter + 1):
        y = M @ x
        top = y.max()
        if top <= 0.0:
            return PowerIterationResult(0.0, fold_vector(x, A.n), False, it, "annihilated")
        x_new = y / top
        est_change = abs(top - est) / top
        vec_change = np.max(np.abs(x_new - x))
        est, x = top, x_new
        history.append(x)
        if vec_change < tol and (it == 1 or est_change < tol):
            return PowerIterationResult(float(est), fold_vector(x, A.n), True, it, "converged")
        if est_change < tol and _periodic(history, tol):
            return PowerIterationResult(float(est), fold_vector(x, A.n), False, it, "oscillation")
    diagnosis = "oscillation" if _periodic(history, tol) else "max_iter"
    return PowerIterationResult(float(est), fold_vector(x, A.n), False, max_iter, diagnosis)


_MAX_PERIOD = 64


def _periodic(history, tol: float) -> bool:
    last = history[-1]
    for period in range(2, len(history)):
        if np.max(np.abs(last - history[-1 - period])) < tol:
            return True
    return False
