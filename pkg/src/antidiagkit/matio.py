"""JSON serialization for matrices and decomposition bundles.

Matrix files:  {"rows": n, "cols": n, "data": [[entry, ...], ...]} where an
entry is a bare real number or an [re, im] pair.  Bundles carry named
factor matrices in the same encoding plus kind/residual/tolerance/anchor.
"""

from __future__ import annotations

import json
import math

import numpy as np


class ParseError(ValueError):
    """Malformed matrix or bundle file."""


def _entry_to_complex(entry):
    if isinstance(entry, (int, float)):
        value = complex(entry, 0.0)
    elif isinstance(entry, (list, tuple)) and len(entry) == 2 \
            and all(isinstance(x, (int, float)) for x in entry):
        value = complex(entry[0], entry[1])
    else:
        raise ParseError(f"matrix entry must be a number or [re, im] pair, got {entry!r}")
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ParseError(f"matrix entry {entry!r} is not finite")
    return value


def matrix_from_obj(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object with rows/cols/data")
    try:
        rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    except KeyError as exc:
        raise ParseError(f"missing matrix field {exc}") from exc
    if not (isinstance(rows, int) and isinstance(cols, int) and rows > 0 and cols > 0):
        raise ParseError("rows and cols must be positive integers")
    if not isinstance(data, list) or len(data) != rows:
        raise ParseError(f"data must be a list of {rows} rows")
    out = np.empty((rows, cols), dtype=np.complex128)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise ParseError(f"row {i} must be a list of {cols} entries")
        for j, entry in enumerate(row):
            out[i, j] = _entry_to_complex(entry)
    return out


def matrix_to_obj(m) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [[[float(z.real), float(z.imag)] for z in row] for row in m],
    }


def load_matrix(path) -> np.ndarray:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read matrix file {path}: {exc}") from exc
    return matrix_from_obj(obj)


def save_matrix(path, m) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_obj(m), fh)
        fh.write("\n")


def bundle_to_obj(kind, factors, residual, tolerance, anchor, seed=None) -> dict:
    return {
        "kind": kind,
        "factors": {name: matrix_to_obj(mat) for name, mat in factors.items()},
        "residual": float(residual),
        "tolerance": float(tolerance),
        "anchor": anchor,
        "seed": seed,
    }


def load_bundle(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read bundle file {path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError("bundle must be a JSON object")
    for key in ("kind", "factors", "residual", "tolerance"):
        if key not in obj:
            raise ParseError(f"bundle is missing the {key!r} field")
    if not isinstance(obj["factors"], dict) or not obj["factors"]:
        raise ParseError("bundle factors must be a non-empty object")
    factors = {name: matrix_from_obj(spec) for name, spec in obj["factors"].items()}
    return {
        "kind": obj["kind"],
        "factors": factors,
        "residual": float(obj["residual"]),
        "tolerance": float(obj["tolerance"]),
        "anchor": obj.get("anchor", ""),
        "seed": obj.get("seed"),
    }


def save_bundle(path, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh)
        fh.write("\n")
