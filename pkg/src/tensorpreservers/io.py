"""JSON wire formats shared by every module.

    matrix:  {"rows": r, "cols": c, "data": [[re, im], ...]}   row-major
    vector:  {"len": n, "data": [[re, im], ...]}

Floats are written with Python's shortest round-trip repr, so reading a
file back reproduces every value bit for bit.
"""

import json
import os
import tempfile

import numpy as np

__all__ = [
    "FormatError",
    "matrix_to_json",
    "matrix_from_json",
    "vector_to_json",
    "vector_from_json",
    "dumps",
    "write_atomic",
    "read_json",
]


class FormatError(ValueError):
    pass


def _pairs(values):
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=complex).ravel()]


def _complex_data(obj, expected, what):
    data = obj.get("data")
    if not isinstance(data, list):
        raise FormatError(f"{what}: field 'data' must be a list")
    if len(data) != expected:
        raise FormatError(f"{what}: field 'data' has {len(data)} entries, expected {expected}")
    try:
        arr = np.array([complex(float(re), float(im)) for re, im in data])
    except (TypeError, ValueError):
        raise FormatError(f"{what}: field 'data' must hold [re, im] number pairs") from None
    if not np.all(np.isfinite(arr)):
        raise FormatError(f"{what}: field 'data' has non-finite entries")
    return arr


def _positive_int(obj, key, what):
    val = obj.get(key)
    if not isinstance(val, int) or isinstance(val, bool) or val < 1:
        raise FormatError(f"{what}: field {key!r} must be a positive integer")
    return val


def matrix_to_json(A):
    A = np.atleast_2d(np.asarray(A))
    rows, cols = A.shape
    return {"rows": rows, "cols": cols, "data": _pairs(A)}


def matrix_from_json(obj):
    if not isinstance(obj, dict):
        raise FormatError("matrix: expected a JSON object")
    rows = _positive_int(obj, "rows", "matrix")
    cols = _positive_int(obj, "cols", "matrix")
    return _complex_data(obj, rows * cols, "matrix").reshape(rows, cols)


def vector_to_json(w):
    w = np.asarray(w).ravel()
    return {"len": int(w.size), "data": _pairs(w)}


def vector_from_json(obj):
    if not isinstance(obj, dict):
        raise FormatError("vector: expected a JSON object")
    n = _positive_int(obj, "len", "vector")
    return _complex_data(obj, n, "vector")


def dumps(obj):
    return json.dumps(obj, sort_keys=True, allow_nan=False) + "\n"


def write_atomic(path, text):
    """Write via a temp file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_json(path):
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON ({exc})") from None
