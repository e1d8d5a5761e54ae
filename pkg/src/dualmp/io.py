"""JSON serialization of dual matrices.

File layout::

    {"rows": 1, "cols": 2,
     "standard": [[[1, 0], [0, 0]]],
     "dual": [[[0, 0], [1, 0]]]}

Each entry is a ``[re, im]`` pair. Floats are written with ``repr`` so a
parse/emit round trip is bit-exact.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import DimensionError, ParseError
from .matrix import DualMatrix


def _number(v, where):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"{where}: expected a number, got {v!r}")
    v = float(v)
    if not math.isfinite(v):
        raise ParseError(f"{where}: non-finite value {v!r}")
    return v


def _grid(obj, key, rows, cols) -> np.ndarray:
    if key not in obj:
        raise ParseError(f"missing field {key!r}")
    grid = obj[key]
    if not isinstance(grid, list) or len(grid) != rows:
        got = len(grid) if isinstance(grid, list) else type(grid).__name__
        raise DimensionError(f"{key}: expected {rows} rows, got {got}")
    out = np.zeros((rows, cols), complex)
    for i, row in enumerate(grid):
        if not isinstance(row, list) or len(row) != cols:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise DimensionError(f"{key}[{i}]: expected {cols} entries, got {got}")
        for j, pair in enumerate(row):
            where = f"{key}[{i}][{j}]"
            if not isinstance(pair, list) or len(pair) != 2:
                raise ParseError(f"{where}: expected a [re, im] pair, got {pair!r}")
            out[i, j] = complex(_number(pair[0], where + "[0]"), _number(pair[1], where + "[1]"))
    return out


def from_obj(obj) -> DualMatrix:
    if not isinstance(obj, dict):
        raise ParseError(f"top level must be an object, got {type(obj).__name__}")
    try:
        rows, cols = obj["rows"], obj["cols"]
    except KeyError as exc:
        raise ParseError(f"missing field {exc.args[0]!r}") from None
    for name, v in (("rows", rows), ("cols", cols)):
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise DimensionError(f"{name}: expected a nonnegative integer, got {v!r}")
    return DualMatrix(_grid(obj, "standard", rows, cols), _grid(obj, "dual", rows, cols))


def parse(source) -> DualMatrix:
    """Read a dual matrix from a path or from JSON text."""
    if isinstance(source, Path) or (isinstance(source, str) and source.lstrip()[:1] not in ("{", "[")):
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"{path}: {exc.strerror}") from None
    else:
        text = source
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_obj(obj)


def _num_out(x: float):
    # integral values print as ints; -0.0 keeps its sign
    if x.is_integer() and abs(x) < 2**53 and not (x == 0 and math.copysign(1, x) < 0):
        return int(x)
    return x


def _grid_out(M: np.ndarray):
    return [[[_num_out(float(z.real)), _num_out(float(z.imag))] for z in row] for row in M]


def to_obj(M: DualMatrix) -> dict:
    rows, cols = M.shape
    return {"rows": rows, "cols": cols, "standard": _grid_out(M.std), "dual": _grid_out(M.dual)}


def emit(M: DualMatrix) -> str:
    return json.dumps(to_obj(M)) + "\n"


def format_entry(z: complex) -> str:
    if z.imag == 0:
        return f"{z.real:.6g}"
    if z.real == 0:
        return f"{z.imag:.6g}i"
    return f"{z.real:.6g}{z.imag:+.6g}i"


def format_dual(s: complex, d: complex) -> str:
    """``s + dε`` with real negative d written as ``s - |d|ε``."""
    if d.imag == 0:
        sign = "-" if d.real < 0 or (d.real == 0 and math.copysign(1, d.real) < 0) else "+"
        return f"{format_entry(s)} {sign} {format_entry(complex(abs(d.real)))}ε"
    return f"{format_entry(s)} + ({format_entry(d)})ε"


def _clean(A: np.ndarray, floor: float) -> np.ndarray:
    A = A.copy()
    A.real[np.abs(A.real) < floor] = 0.0
    A.imag[np.abs(A.imag) < floor] = 0.0
    return A + 0.0  # drops negative zeros


def pretty(M: DualMatrix, noise: float = 1e-13) -> str:
    """Aligned text, one row per line, entries as ``s + dε``.

    Parts below ``noise * max(1, max|M|)`` print as 0; use JSON output for the
    exact floating values.
    """
    floor = noise * max(1.0, M.max_abs()) if M.std.size else 0.0
    S, D = _clean(M.std, floor), _clean(M.dual, floor)
    cells = [[format_dual(S[i, j], D[i, j]) for j in range(M.shape[1])] for i in range(M.shape[0])]
    if not cells or not cells[0]:
        return f"[] ({M.shape[0]}x{M.shape[1]})\n"
    width = max(len(c) for row in cells for c in row)
    return "".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]\n" for row in cells)
