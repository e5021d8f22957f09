"""Plain-text interchange format for complex matrices and vectors.

Matrix files: the first significant line is ``rows cols``; each following
significant line holds one matrix row as whitespace-separated ``re im``
pairs. Vectors are single-column matrices. Blank lines and lines starting
with ``#`` are skipped on input, which lets writers prepend configuration
comments without breaking readers.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import NonFinite

_FLOAT = "{:.17g}"


def format_float(x) -> str:
    return _FLOAT.format(float(x))


def format_entry(z) -> str:
    z = complex(z)
    return f"{format_float(z.real)} {format_float(z.imag)}"


def significant_lines(text: str) -> list[str]:
    """Input lines that carry data: non-blank and not ``#`` comments."""
    out = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            out.append(stripped)
    return out


def comment_block(comments) -> str:
    return "".join(f"# {line}\n" for line in comments)


def write_matrix(path, a, comments=()) -> None:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    rows, cols = a.shape
    lines = [f"{rows} {cols}"]
    for i in range(rows):
        lines.append(" ".join(format_entry(z) for z in a[i]))
    Path(path).write_text(comment_block(comments) + "\n".join(lines) + "\n")


def read_matrix(path) -> np.ndarray:
    lines = significant_lines(Path(path).read_text())
    if not lines:
        raise ValueError(f"{path}: empty matrix file")
    head = lines[0].split()
    try:
        rows, cols = (int(part) for part in head)
    except ValueError:
        raise ValueError(f"{path}: malformed header {lines[0]!r}") from None
    if rows < 1 or cols < 1:
        raise ValueError(f"{path}: dimensions must be positive")
    if len(lines) - 1 != rows:
        raise ValueError(f"{path}: expected {rows} data lines, found {len(lines) - 1}")
    out = np.empty((rows, cols), dtype=complex)
    for i, line in enumerate(lines[1:]):
        parts = line.split()
        if len(parts) != 2 * cols:
            raise ValueError(f"{path}: row {i} has {len(parts)} fields, expected {2 * cols}")
        try:
            values = [float(part) for part in parts]
        except ValueError:
            raise ValueError(f"{path}: row {i} contains a non-numeric field") from None
        out[i] = [complex(values[2 * j], values[2 * j + 1]) for j in range(cols)]
    if not np.isfinite(out).all():
        raise NonFinite(f"{path}: non-finite entries")
    return out


def write_vector(path, v, comments=()) -> None:
    v = np.asarray(v, dtype=complex).reshape(-1, 1)
    write_matrix(path, v, comments)


def read_vector(path) -> np.ndarray:
    a = read_matrix(path)
    if a.shape[1] != 1:
        raise ValueError(f"{path}: expected a single-column vector file")
    return a[:, 0]
