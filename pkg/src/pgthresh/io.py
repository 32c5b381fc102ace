"""Plain-text matrix/vector file formats.

Matrix file: first line ``m n``, then m lines of n whitespace-separated
numbers.  Vector file: first line ``n``, then n numbers (free whitespace
layout).  UTF-8, '.' decimal separator, scientific notation accepted.
"""

from __future__ import annotations

import numpy as np


class ParseError(ValueError):
    def __init__(self, path, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")


def read_matrix(path) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError(path, 1, "empty file, expected header 'm n'")
    header = lines[0].split()
    if len(header) != 2:
        raise ParseError(path, 1, f"expected header 'm n', got {lines[0]!r}")
    try:
        m, n = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError(path, 1, f"non-integer dimensions in {lines[0]!r}") from None
    if m < 1 or n < 1:
        raise ParseError(path, 1, f"dimensions must be positive, got {m}x{n}")
    if len(lines) < m + 1:
        raise ParseError(path, len(lines), f"expected {m} data rows, found {len(lines) - 1}")
    rows = []
    for i in range(m):
        parts = lines[i + 1].split()
        if len(parts) != n:
            raise ParseError(path, i + 2, f"expected {n} entries, found {len(parts)}")
        try:
            rows.append([float(p) for p in parts])
        except ValueError:
            raise ParseError(path, i + 2, f"non-numeric entry in row {i + 1}") from None
    a = np.asarray(rows, dtype=float)
    if not np.all(np.isfinite(a)):
        raise ParseError(path, 1, "matrix entries must be finite")
    return a


def read_vector(path) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        tokens = fh.read().split()
    if not tokens:
        raise ParseError(path, 1, "empty file, expected header 'n'")
    try:
        n = int(tokens[0])
    except ValueError:
        raise ParseError(path, 1, f"expected integer length, got {tokens[0]!r}") from None
    if len(tokens) - 1 != n:
        raise ParseError(path, 1, f"expected {n} entries, found {len(tokens) - 1}")
    try:
        v = np.asarray([float(t) for t in tokens[1:]], dtype=float)
    except ValueError:
        raise ParseError(path, 1, "non-numeric vector entry") from None
    if not np.all(np.isfinite(v)):
        raise ParseError(path, 1, "vector entries must be finite")
    return v


def write_vector(path, v) -> None:
    v = np.asarray(v, dtype=float)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{v.size}\n")
        for x in v:
            fh.write(f"{x:.17g}\n")


def write_matrix(path, a) -> None:
    a = np.asarray(a, dtype=float)
    m, n = a.shape
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{m} {n}\n")
        for row in a:
            fh.write(" ".join(f"{x:.17g}" for x in row) + "\n")
