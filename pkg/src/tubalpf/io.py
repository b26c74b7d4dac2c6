"""JSON tensor files.

Matrices are ``{"n": n, "p": p, "slices": [S1, ..., Sp]}`` with each ``Sk`` an
n x n row-major list of frontal slice ``k``.  Vectors are
``{"n": n, "p": p, "tubes": [t1, ..., tn]}`` with each tube a list of p
numbers.  Files whose numbers are all integers load as int64, anything else
as float64.  Floats are written with ``repr`` (shortest round-trip text), so
``load(save(x))`` is bit-exact and re-saving produces identical bytes.
"""
from __future__ import annotations

import json
import math
import re
from pathlib import Path

import numpy as np

from .core import TubalMatrix, TubalVector
from .errors import ParseError

__all__ = ["load", "loads", "save", "dumps", "load_matrix", "load_vector"]

_INT64 = (-(2**63), 2**63 - 1)


def _line_of(text: str, token: str) -> int:
    m = re.search(r"(?<![\w.])" + re.escape(token), text)
    return text.count("\n", 0, m.start()) + 1 if m else 0


def _reject_constant(name: str):
    raise ValueError(name)


def _number_array(value, shape: tuple[int, ...], where: str, source: str) -> np.ndarray:
    flat: list = []

    def walk(v, depth: int, path: str):
        if depth == len(shape):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ParseError(f"{source}: {path} must be a number, got {json.dumps(v)}")
            if isinstance(v, float) and not math.isfinite(v):
                raise ParseError(f"{source}: {path} is not finite")
            if isinstance(v, int) and not _INT64[0] <= v <= _INT64[1]:
                raise ParseError(f"{source}: {path} does not fit in int64")
            flat.append(v)
            return
        if not isinstance(v, list) or len(v) != shape[depth]:
            got = f"length {len(v)}" if isinstance(v, list) else type(v).__name__
            raise ParseError(f"{source}: {path} must be a list of length {shape[depth]}, got {got}")
        for i, item in enumerate(v):
            walk(item, depth + 1, f"{path}[{i}]")

    walk(value, 0, where)
    if all(isinstance(v, int) for v in flat):
        return np.array(flat, dtype=np.int64).reshape(shape)
    return np.array(flat, dtype=np.float64).reshape(shape)


def loads(text: str, source: str = "<string>"):
    """Parse a tensor document; returns a TubalMatrix or TubalVector."""
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    except ValueError as exc:
        token = str(exc)
        raise ParseError(f"{source}: line {_line_of(text, token)}: non-finite value {token}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{source}: top level must be an object")
    for key in ("n", "p"):
        v = doc.get(key)
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise ParseError(f"{source}: '{key}' must be a positive integer, got {json.dumps(v)}")
    n, p = doc["n"], doc["p"]
    has_slices, has_tubes = "slices" in doc, "tubes" in doc
    if has_slices == has_tubes:
        raise ParseError(f"{source}: exactly one of 'slices' or 'tubes' is required")
    if has_slices:
        data = _number_array(doc["slices"], (p, n, n), "slices", source)
        return TubalMatrix(np.ascontiguousarray(np.moveaxis(data, 0, -1)))
    return TubalVector(_number_array(doc["tubes"], (n, p), "tubes", source))


def load(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    return loads(text, str(path))


def load_matrix(path) -> TubalMatrix:
    value = load(path)
    if not isinstance(value, TubalMatrix):
        raise ParseError(f"{path}: expected a tubal matrix ('slices'), got a vector")
    return value


def load_vector(path) -> TubalVector:
    value = load(path)
    if not isinstance(value, TubalVector):
        raise ParseError(f"{path}: expected a tubal vector ('tubes'), got a matrix")
    return value


def _num(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    f = float(v)
    if not math.isfinite(f):
        raise ValueError("cannot serialize a non-finite value")
    return repr(f)


def _row(values) -> str:
    return "[" + ", ".join(_num(v) for v in values) + "]"


def dumps(value) -> str:
    """Canonical text: one slice row (or tube) per line, trailing newline."""
    if value.is_complex:
        raise ValueError("tensor files hold real data only")
    data = value.data
    if isinstance(value, TubalMatrix):
        blocks = []
        for k in range(value.p):
            rows = ",\n    ".join(_row(r) for r in data[:, :, k])
            blocks.append("  [\n    " + rows + "\n  ]")
        body = '"slices": [\n' + ",\n".join(blocks) + "\n]"
    elif isinstance(value, TubalVector):
        body = '"tubes": [\n' + ",\n".join("  " + _row(t) for t in data) + "\n]"
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")
    return f'{{"n": {value.n}, "p": {value.p},\n{body}}}\n'


def save(value, path) -> None:
    Path(path).write_text(dumps(value), encoding="utf-8")
