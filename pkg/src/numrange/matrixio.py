"""JSON matrix documents.

Schema: ``{"name": str, "dim": int, "entries": [[re, im], ...]}`` with
``dim**2`` row-major entries.  Floats are emitted with Python's shortest
round-trip representation, so parse(serialize(M)) reproduces M bit for
bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import SchemaError

__all__ = ["MatrixDocument", "parse_matrix", "serialize_matrix"]


@dataclass(frozen=True)
class MatrixDocument:
    """A named dense complex matrix as read from or written to JSON."""

    name: str
    dim: int
    matrix: np.ndarray


def _entry_number(value, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{field} must be a number, got {value!r}", field=field)
    v = float(value)
    if not np.isfinite(v):
        raise SchemaError(f"non-finite entry in {field}", field=field)
    return v


def parse_matrix(document: bytes | str) -> MatrixDocument:
    """Parse a matrix document, with field-level diagnostics on errors."""
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError("document must be a JSON object")
    name = data.get("name")
    if not isinstance(name, str) or not name:
        raise SchemaError("'name' must be a non-empty string", field="name")
    dim = data.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise SchemaError("'dim' must be a positive integer", field="dim")
    entries = data.get("entries")
    if not isinstance(entries, list):
        raise SchemaError("'entries' must be a list", field="entries")
    if len(entries) != dim * dim:
        raise SchemaError(
            f"entries length {len(entries)} != dim^2 = {dim * dim}",
            field="entries")
    values = np.empty(dim * dim, dtype=complex)
    for k, pair in enumerate(entries):
        field = f"entries[{k}]"
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaError(f"{field} must be a [re, im] pair", field=field)
        re = _entry_number(pair[0], f"{field}[0]")
        im = _entry_number(pair[1], f"{field}[1]")
        values[k] = complex(re, im)
    return MatrixDocument(name=name, dim=dim, matrix=values.reshape(dim, dim))


def serialize_matrix(name: str, matrix) -> str:
    """Serialize a matrix to the document schema (round-trip exact)."""
    arr = np.asarray(matrix, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise SchemaError(f"matrix must be square, got shape {arr.shape}")
    entries = [[float(v.real), float(v.imag)] for v in arr.ravel()]
    return json.dumps({"name": name, "dim": int(arr.shape[0]),
                       "entries": entries})
