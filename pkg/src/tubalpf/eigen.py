"""Dense nonsymmetric eigenvalues: Householder Hessenberg reduction followed by
single-shift QR iteration in complex arithmetic.

Sized for small matrices (a few hundred rows at most).  Only eigenvalues are
computed here; eigenvectors come from inverse iteration in :mod:`spectra`.
"""
from __future__ import annotations

import numpy as np

from .errors import SolverError

__all__ = ["hessenberg", "hessenberg_qr_eigvals"]

_EPS = np.finfo(float).eps


def hessenberg(M: np.ndarray, calc_q: bool = False):
    """Reduce ``M`` to upper Hessenberg form ``H = Q^H M Q``.

    Returns ``H`` or ``(H, Q)`` when ``calc_q`` is set.
    """
    H = np.array(M, dtype=np.complex128)
    m = H.shape[0]
    Q = np.eye(m, dtype=np.complex128) if calc_q else None
    for k in range(m - 2):
        x = H[k + 1 :, k]
        norm_x = np.linalg.norm(x)
        if norm_x == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * norm_x
        v /= np.linalg.norm(v)
        H[k + 1 :, :] -= 2.0 * np.outer(v, v.conj() @ H[k + 1 :, :])
        H[:, k + 1 :] -= 2.0 * np.outer(H[:, k + 1 :] @ v, v.conj())
        H[k + 2 :, k] = 0.0
        if calc_q:
            Q[:, k + 1 :] -= 2.0 * np.outer(Q[:, k + 1 :] @ v, v.conj())
    return (H, Q) if calc_q else H


def _givens(x: complex, y: complex):
    r = np.hypot(abs(x), abs(y))
    if r == 0.0:
        return 1.0 + 0j, 0j
    return x / r, y / r


def _wilkinson(a, b, c, d):
    """Eigenvalue of [[a, b], [c, d]] closer to d."""
    half = (a - d) / 2.0
    disc = np.sqrt(half * half + b * c)
    mu1 = (a + d) / 2.0 + disc
    mu2 = (a + d) / 2.0 - disc
    return mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2


def hessenberg_qr_eigvals(M: np.ndarray, max_iter_factor: int = 100) -> np.ndarray:
    """All eigenvalues of a square matrix.

    Shifted QR sweeps with Givens rotations act on the active unreduced
    window; a subdiagonal entry is deflated once it falls below
    ``eps * (|h[k-1,k-1]| + |h[k,k]|)``.  Every tenth sweep without a
    deflation uses an exceptional shift.  More than ``max_iter_factor * m``
    sweeps for one eigenvalue raises :class:`SolverError` carrying the
    eigenvalues found so far.
    """
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"square matrix required, got shape {M.shape}")
    m = M.shape[0]
    if m == 0:
        return np.zeros(0, dtype=np.complex128)
    H = hessenberg(M)
    norm = np.max(np.abs(H)) or 1.0
    eig = np.zeros(m, dtype=np.complex128)
    found = np.zeros(m, dtype=bool)
    cap = max_iter_factor * m
    hi = m - 1
    sweeps = 0
    exceptional = 0
    while hi >= 0:
        if hi == 0:
            eig[0] = H[0, 0]
            found[0] = True
            break
        lo = hi
        while lo > 0:
            scale = abs(H[lo - 1, lo - 1]) + abs(H[lo, lo])
            if scale == 0.0:
                scale = norm
            if abs(H[lo, lo - 1]) <= _EPS * scale:
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eig[hi] = H[hi, hi]
            found[hi] = True
            hi -= 1
            sweeps = 0
            continue
        sweeps += 1
        if sweeps > cap:
            raise SolverError(
                f"QR iteration did not converge after {cap} sweeps", partial=eig[found]
            )
        if sweeps % 10 == 0:
            exceptional += 1
            mu = H[hi, hi] + 0.75 * abs(H[hi, hi - 1]) * np.exp(0.7j * exceptional)
        else:
            mu = _wilkinson(H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi])
        _qr_sweep(H, lo, hi, mu)
    return eig


def _qr_sweep(H: np.ndarray, lo: int, hi: int, mu: complex) -> None:
    """One explicit shifted QR step ``H - mu I = QR, H <- RQ + mu I`` on ``H[lo:hi+1, lo:hi+1]``."""
    idx = np.arange(lo, hi + 1)
    H[idx, idx] -= mu
    rots = []
    for k in range(lo, hi):
        c, s = _givens(H[k, k], H[k + 1, k])
        rows = H[k : k + 2, k : hi + 1].copy()
        H[k, k : hi + 1] = np.conj(c) * rows[0] + np.conj(s) * rows[1]
        H[k + 1, k : hi + 1] = -s * rows[0] + c * rows[1]
        H[k + 1, k] = 0.0
        rots.append((c, s))
    for k, (c, s) in zip(range(lo, hi), rots):
        top = min(k + 2, hi)
        cols = H[lo : top + 1, k : k + 2].copy()
        H[lo : top + 1, k] = cols[:, 0] * c + cols[:, 1] * s
        H[lo : top + 1, k + 1] = -cols[:, 0] * np.conj(s) + cols[:, 1] * np.conj(c)
    H[idx, idx] += mu
