"""JSON file formats for matrices, instance pairs, and suite reports.

Matrix format (UTF-8 JSON)::

    {"n": <int>, "entries": [[[re, im], ...], ...]}   # row-major

Floats are emitted through Python's shortest round-trip representation
(at most 17 significant digits), so reading a file back reproduces the
matrix bit for bit. Pair files embed two matrices plus the generator
metadata; reports carry the config echo, per-check results, and a
summary block.
"""

from __future__ import annotations

import json

import numpy as np

from ..linalg import as_square_matrix

__all__ = [
    "matrix_from_obj",
    "matrix_to_obj",
    "read_pair",
    "write_pair",
    "write_report",
]


def matrix_to_obj(m) -> dict:
    m = as_square_matrix(m)
    return {
        "n": int(m.shape[0]),
        "entries": [[[float(v.real), float(v.imag)] for v in row]
                    for row in m],
    }


def matrix_from_obj(obj: dict) -> np.ndarray:
    n = int(obj["n"])
    entries = obj["entries"]
    if len(entries) != n or any(len(row) != n for row in entries):
        raise ValueError("entries shape does not match n")
    m = np.array([[complex(re, im) for re, im in row] for row in entries])
    return as_square_matrix(m)


def write_pair(path: str, x, y, metadata: dict) -> None:
    doc = dict(metadata)
    doc["x"] = matrix_to_obj(x)
    doc["y"] = matrix_to_obj(y)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def read_pair(path: str):
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    x = matrix_from_obj(doc.pop("x"))
    y = matrix_from_obj(doc.pop("y"))
    return x, y, doc


def write_report(path: str, report: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
