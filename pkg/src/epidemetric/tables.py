"""CSV reading and writing for pairwise tables (1-based headers)."""
from __future__ import annotations

import numpy as np


def format_value(x, digits: int = 17) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.{digits}g}"


def pair_matrix_csv(values, digits: int = 17) -> str:
    values = np.asarray(values)
    n = values.shape[0]
    lines = ["," + ",".join(str(i + 1) for i in range(n))]
    for i in range(n):
        lines.append(f"{i + 1}," + ",".join(format_value(v, digits) for v in values[i]))
    return "\n".join(lines) + "\n"


def parse_pair_matrix_csv(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header = lines[0].split(",")[1:]
    n = len(header)
    out = np.empty((n, n))
    for i, line in enumerate(lines[1:]):
        cells = line.split(",")
        if len(cells) != n + 1:
            raise ValueError(f"row {i + 1} has {len(cells) - 1} values, expected {n}")
        out[i] = [float(c) for c in cells[1:]]
    if len(lines) - 1 != n:
        raise ValueError(f"expected {n} rows, found {len(lines) - 1}")
    return out


def write_pair_matrix(path, values, digits: int = 17) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(pair_matrix_csv(values, digits))


def read_pair_matrix(path) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        return parse_pair_matrix_csv(fh.read())
