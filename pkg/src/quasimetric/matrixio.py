"""Plain-text matrix files: n lines of n comma-separated values, no header."""

from __future__ import annotations

import os
import tempfile

from .qcore import QuasiMetricSpace
from .scalar import format_scalar, parse_scalar


class MatrixParseError(ValueError):
    pass


def parse_matrix(text: str) -> list:
    """Parse to nested lists of Fraction (exact) or float.

    A single decimal token anywhere switches the whole grid to floats.
    """
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            rows.append([parse_scalar(tok) for tok in line.split(",")])
        except ValueError as exc:
            raise MatrixParseError(f"line {lineno}: {exc}") from None
    if not rows:
        raise MatrixParseError("empty matrix file")
    if any(isinstance(x, float) for r in rows for x in r):
        rows = [[float(x) for x in r] for r in rows]
    return rows


def read_matrix(path: str) -> list:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def format_matrix(space: QuasiMetricSpace) -> str:
    return "".join(",".join(format_scalar(x) for x in row) + "\n" for row in space.matrix())


def write_atomic(path: str, text: str) -> None:
    """Write via a temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_matrix(path: str, space: QuasiMetricSpace) -> None:
    write_atomic(path, format_matrix(space))
