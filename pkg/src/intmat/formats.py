"""Text file formats for matrices and vectors.

Matrix files: first line "rows cols", then one line per row of
space-separated decimal integers, newline-terminated.

Vector files: first line "n", then n decimal reals (whitespace
separated; written one per line).
"""

from __future__ import annotations

import os
from typing import TextIO

from .errors import DimensionError
from .geometry import RealVector
from .linalg import IntMatrix


def parse_matrix(text: str) -> IntMatrix:
    tokens = text.split()
    if len(tokens) < 2:
        raise DimensionError("matrix file must start with 'rows cols'")
    try:
        rows, cols = int(tokens[0]), int(tokens[1])
        values = [int(t) for t in tokens[2:]]
    except ValueError as exc:
        raise DimensionError(f"malformed matrix file: {exc}") from exc
    if len(values) != rows * cols:
        raise DimensionError(
            f"matrix file declares {rows}x{cols} but carries {len(values)} entries"
        )
    return IntMatrix(rows, cols, tuple(values))


def format_matrix(m: IntMatrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    lines.extend(" ".join(str(v) for v in m.row(i)) for i in range(m.rows))
    return "\n".join(lines) + "\n"


def read_matrix(path: str | os.PathLike) -> IntMatrix:
    with open(path, "r", encoding="ascii") as fh:
        return parse_matrix(fh.read())


def write_matrix(m: IntMatrix, path: str | os.PathLike | TextIO) -> None:
    if hasattr(path, "write"):
        path.write(format_matrix(m))
        return
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_matrix(m))


def parse_vector(text: str, precision: int = 128) -> RealVector:
    tokens = text.split()
    if not tokens:
        raise DimensionError("vector file must start with its length")
    try:
        n = int(tokens[0])
    except ValueError as exc:
        raise DimensionError(f"malformed vector length: {exc}") from exc
    values = tokens[1:]
    if len(values) != n:
        raise DimensionError(f"vector file declares {n} entries but carries {len(values)}")
    return RealVector.from_values(values, precision)


def format_vector(v: RealVector, digits: int = 36) -> str:
    import mpmath

    lines = [str(len(v))]
    with mpmath.workprec(v.precision):
        lines.extend(mpmath.nstr(e, digits) for e in v.entries)
    return "\n".join(lines) + "\n"


def read_vector(path: str | os.PathLike, precision: int = 128) -> RealVector:
    with open(path, "r", encoding="ascii") as fh:
        return parse_vector(fh.read(), precision)


def write_vector(v: RealVector, path: str | os.PathLike | TextIO, digits: int = 36) -> None:
    text = format_vector(v, digits)
    if hasattr(path, "write"):
        path.write(text)
        return
    with open(path, "w", encoding="ascii") as fh:
        fh.write(text)
