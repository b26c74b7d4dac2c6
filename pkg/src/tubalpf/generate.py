"""Seeded random tubal matrices.

The generator is numpy's PCG64 (``numpy.random.default_rng(seed)``), so a
seed reproduces the same tensor on every platform and numpy release that
keeps PCG64's stream stable.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import TubalMatrix
from .errors import GenerationError
from .irreducibility import is_reducible_scc

__all__ = ["InstanceSpec", "ENSURE_MODES", "generate", "MAX_REJECTIONS", "STRONG_TUBE_FLOOR"]

ENSURE_MODES = ("none", "irreducible", "irreducible_with_strong_tube")
MAX_REJECTIONS = 1000
# smallest entry of a planted strongly positive tube (float mode)
STRONG_TUBE_FLOOR = 1e-3


@dataclass(frozen=True)
class InstanceSpec:
    """Recipe for one random tensor.

    Each of the ``n*n*p`` slice entries is nonzero with probability
    ``density`` and then uniform on ``value_range`` (uniform integers on the
    closed range when ``integer`` is set).
    """

    n: int
    p: int
    density: float = 1.0
    value_range: tuple[float, float] = (0.0, 1.0)
    seed: int = 0
    ensure: str = "none"
    integer: bool = False

    def validate(self) -> None:
        if self.n < 1 or self.p < 1:
            raise GenerationError(f"need n, p >= 1, got n={self.n}, p={self.p}")
        if not 0.0 <= self.density <= 1.0:
            raise GenerationError(f"density must lie in [0, 1], got {self.density}")
        lo, hi = self.value_range
        if lo > hi:
            raise GenerationError(f"empty value range [{lo}, {hi}]")
        if self.ensure not in ENSURE_MODES:
            raise GenerationError(f"ensure must be one of {ENSURE_MODES}, got {self.ensure!r}")
        if not 0 <= self.seed < 2**64:
            raise GenerationError("seed must be a 64-bit unsigned integer")


def _positive_range(spec: InstanceSpec) -> tuple[float, float]:
    lo, hi = spec.value_range
    floor = 1 if spec.integer else STRONG_TUBE_FLOOR
    lo = max(lo, floor)
    if hi < lo:
        raise GenerationError(f"value range {spec.value_range} has no values >= {floor}")
    return lo, hi


def _values(rng, spec: InstanceSpec, size, lo=None, hi=None):
    lo = spec.value_range[0] if lo is None else lo
    hi = spec.value_range[1] if hi is None else hi
    if spec.integer:
        return rng.integers(int(np.ceil(lo)), int(np.floor(hi)), size=size, endpoint=True)
    return rng.uniform(lo, hi, size=size)


def _draw(rng, spec: InstanceSpec) -> np.ndarray:
    shape = (spec.n, spec.n, spec.p)
    mask = rng.random(shape) < spec.density
    vals = _values(rng, spec, shape)
    return np.where(mask, vals, 0)


def _plant_strong_tube(rng, spec: InstanceSpec, data: np.ndarray) -> None:
    lo, hi = _positive_range(spec)
    i, j = rng.integers(0, spec.n, size=2)
    data[i, j] = _values(rng, spec, spec.p, lo, hi)


def _inject_cycle(rng, spec: InstanceSpec, data: np.ndarray) -> None:
    """Give every tube ``(i, i+1 mod n)`` one positive entry."""
    lo, hi = _positive_range(spec)
    for i in range(spec.n):
        j = (i + 1) % spec.n
        if not np.any(data[i, j] > 0):
            data[i, j, rng.integers(0, spec.p)] = _values(rng, spec, 1, lo, hi)[0]


def _accept(spec: InstanceSpec, A: TubalMatrix) -> bool:
    if spec.ensure == "none":
        return True
    if spec.n == 1 and not np.any(A.data):
        return False
    return is_reducible_scc(A).irreducible


def generate(spec: InstanceSpec) -> TubalMatrix:
    """Draw a tensor satisfying ``spec.ensure``.

    Up to ``MAX_REJECTIONS`` fresh draws are tried; after that the last draw
    gets a cycle through all indices planted in its support.  Density 0 with
    an ``ensure`` constraint cannot be met and raises :class:`GenerationError`.
    """
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    if spec.ensure != "none":
        _positive_range(spec)
        if spec.density == 0.0:
            raise GenerationError("density 0 cannot produce an irreducible tensor")
    data = None
    for _ in range(MAX_REJECTIONS):
        data = _draw(rng, spec)
        if spec.ensure == "irreducible_with_strong_tube":
            _plant_strong_tube(rng, spec, data)
        A = TubalMatrix(data)
        if _accept(spec, A):
            return A
    _inject_cycle(rng, spec, data)
    A = TubalMatrix(data)
    if not _accept(spec, A):
        raise GenerationError(f"could not satisfy ensure={spec.ensure!r}")
    return A
