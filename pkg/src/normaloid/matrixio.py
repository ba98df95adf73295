"""Matrix exchange format.

A square complex matrix is stored as ``{"n": int, "data": [[re, im], ...]}``
with exactly n*n entries in row-major order.  Floats are written with
Python's shortest round-trip repr, so files are information-complete for
float64 and byte-stable for identical inputs.  Files are UTF-8 with LF
line endings.
"""
from __future__ import annotations

import json
import math
import os
from typing import IO, Union

import numpy as np

from .errors import MatrixFormatError


def matrix_to_obj(m: np.ndarray) -> dict:
    """Serialize a square complex matrix to the exchange dict."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise MatrixFormatError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise MatrixFormatError("matrix entries must be finite")
    n = a.shape[0]
    flat = a.reshape(-1)
    return {"n": n, "data": [[float(z.real), float(z.imag)] for z in flat]}


def matrix_from_obj(obj) -> np.ndarray:
    """Parse the exchange dict back into a complex128 array."""
    if not isinstance(obj, dict):
        raise MatrixFormatError(f"expected a JSON object, got {type(obj).__name__}")
    if "n" not in obj or "data" not in obj:
        raise MatrixFormatError('matrix object must have keys "n" and "data"')
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MatrixFormatError(f'"n" must be a positive integer, got {n!r}')
    data = obj["data"]
    if not isinstance(data, list) or len(data) != n * n:
        raise MatrixFormatError(f'"data" must list n*n = {n * n} entries')
    out = np.empty(n * n, dtype=np.complex128)
    for i, pair in enumerate(data):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
        ):
            raise MatrixFormatError(f"entry {i} is not a [re, im] pair: {pair!r}")
        re, im = float(pair[0]), float(pair[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise MatrixFormatError(f"entry {i} is not finite: {pair!r}")
        out[i] = complex(re, im)
    return out.reshape(n, n)


def vector_to_pairs(x: np.ndarray) -> list:
    """Serialize a complex vector as a list of [re, im] pairs."""
    v = np.asarray(x, dtype=np.complex128).reshape(-1)
    return [[float(z.real), float(z.imag)] for z in v]


def vector_from_pairs(pairs) -> np.ndarray:
    if not isinstance(pairs, list) or not pairs:
        raise MatrixFormatError("vector must be a nonempty list of [re, im] pairs")
    out = np.empty(len(pairs), dtype=np.complex128)
    for i, pair in enumerate(pairs):
        if not isinstance(pair, list) or len(pair) != 2:
            raise MatrixFormatError(f"vector entry {i} is not a [re, im] pair")
        out[i] = complex(float(pair[0]), float(pair[1]))
    return out


def dumps_matrix(m: np.ndarray) -> str:
    return json.dumps(matrix_to_obj(m), indent=2) + "\n"


def save_matrix(dest: Union[str, os.PathLike, IO[str]], m: np.ndarray) -> None:
    text = dumps_matrix(m)
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "w", encoding="utf-8", newline="\n") as fp:
            fp.write(text)
    else:
        dest.write(text)


def load_matrix(src: Union[str, os.PathLike, IO[str]]) -> np.ndarray:
    """Load a matrix file; any malformation raises MatrixFormatError."""
    try:
        if isinstance(src, (str, os.PathLike)):
            with open(src, "r", encoding="utf-8") as fp:
                obj = json.load(fp)
        else:
            obj = json.load(src)
    except OSError as exc:
        raise MatrixFormatError(f"cannot read matrix file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"matrix file is not valid JSON: {exc}") from exc
    return matrix_from_obj(obj)
