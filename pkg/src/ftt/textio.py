"""Reading and writing the ``.sten`` sparse tensor text format.

Line 1 is ``shape k0 k1 ...``; each following line is one entry,
``i0 i1 ... value``, with the value in decimal scientific notation.
Input rows may come in any order; writers emit canonical order.
"""

from __future__ import annotations

import numpy as np

from ftt.canonical import canonicalize
from ftt.errors import FttError, ShapeError
from ftt.tensor import SparseTensor, new_sparse


def format_sparse(t: SparseTensor) -> str:
    t = canonicalize(t)
    lines = [" ".join(["shape", *map(str, t.shape)])]
    for row, value in zip(t.indices.tolist(), t.data.tolist()):
        lines.append(" ".join([*map(str, row), f"{value:.17e}"]))
    return "\n".join(lines) + "\n"


def parse_sparse(text: str) -> SparseTensor:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ShapeError("empty tensor file")
    head = lines[0].split()
    if head[0] != "shape":
        raise ShapeError("first line must start with 'shape'")
    try:
        shape = [int(s) for s in head[1:]]
        rows, data = [], []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != len(shape) + 1:
                raise ShapeError(f"expected {len(shape) + 1} fields, got {ln!r}")
            rows.append([int(p) for p in parts[:-1]])
            data.append(float(parts[-1]))
    except ValueError as exc:
        if isinstance(exc, FttError):
            raise
        raise ShapeError(f"malformed tensor file: {exc}") from exc
    idx = np.asarray(rows, dtype=np.int64).reshape(len(rows), len(shape))
    return new_sparse(shape, idx, data)


def read_sparse(path) -> SparseTensor:
    with open(path, encoding="utf-8") as fh:
        return parse_sparse(fh.read())


def write_sparse(t: SparseTensor, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_sparse(t))
