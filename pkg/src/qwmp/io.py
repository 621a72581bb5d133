"""JSON matrix files.

A file holds ``{"rows": m, "cols": n, "entries": [[[a0, a1, a2, a3], ...], ...]}``.
Components written as strings (``"3"``, ``"-2/7"``) select the rational
backend; plain JSON numbers select floats.  A path of ``-`` means stdin/stdout.
"""
from __future__ import annotations

import json
import sys
from fractions import Fraction

import numpy as np

from .errors import QuaternionLinalgError
from .qmatrix import QMatrix


class MatrixFileError(QuaternionLinalgError, ValueError):
    pass


def _component(x, where):
    if isinstance(x, bool):
        raise MatrixFileError(f"{where}: booleans are not numbers")
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MatrixFileError(f"{where}: bad rational {x!r}") from exc
    if isinstance(x, (int, float)):
        return x
    raise MatrixFileError(f"{where}: expected a number or rational string, got {type(x).__name__}")


def from_document(doc):
    """Build a :class:`QMatrix` from a parsed JSON document."""
    if not isinstance(doc, dict) or not {"rows", "cols", "entries"} <= doc.keys():
        raise MatrixFileError('matrix file needs "rows", "cols" and "entries"')
    m, n, entries = doc["rows"], doc["cols"], doc["entries"]
    if not isinstance(m, int) or not isinstance(n, int) or m < 0 or n < 0:
        raise MatrixFileError('"rows" and "cols" must be non-negative integers')
    if not isinstance(entries, list) or len(entries) != m:
        raise MatrixFileError(f'"entries" must hold {m} rows')
    comps = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n:
            raise MatrixFileError(f"row {i} must hold {n} entries")
        for j, q in enumerate(row):
            if not isinstance(q, list) or len(q) != 4:
                raise MatrixFileError(f"entry ({i}, {j}) must be a 4-array [a0, a1, a2, a3]")
            comps.append([_component(x, f"entry ({i}, {j})") for x in q])
    flat = [x for q in comps for x in q]
    rational = any(isinstance(x, Fraction) for x in flat)
    if rational:
        if any(isinstance(x, float) for x in flat):
            raise MatrixFileError("rational file mixes in binary floats; quote every component")
        data = np.empty((m, n, 4), dtype=object)
        for idx, x in enumerate(flat):
            data.ravel()[idx] = Fraction(x)
        return QMatrix._wrap(data)
    return QMatrix._wrap(np.array(flat, dtype=np.float64).reshape(m, n, 4))


def to_document(A):
    """JSON-ready dict; rational components become reduced ``"p/q"`` strings."""
    if A.is_exact:
        conv = str
    else:
        conv = float
    entries = [[[conv(c) for c in A.data[i, j]] for j in range(A.cols)] for i in range(A.rows)]
    return {"rows": A.rows, "cols": A.cols, "entries": entries}


def read_matrix(path):
    try:
        if path == "-":
            doc = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc
    try:
        return from_document(doc)
    except MatrixFileError as exc:
        raise MatrixFileError(f"{path}: {exc}") from None


def write_matrix(A, path):
    text = json.dumps(to_document(A))
    if path == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
