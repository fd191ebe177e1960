"""JSON documents for states, vector lists and subspaces.

Indices are 1-based in documents and 0-based in memory. Complex numbers are
``{"re": float, "im": float}`` objects.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .exterior import AntiSymTensor
from .subspace import Subspace


class DocumentError(ValueError):
    """An input document is malformed."""


def complex_to_json(z) -> dict:
    z = complex(z)
    return {"re": float(z.real), "im": float(z.imag)}


def complex_from_json(obj) -> complex:
    if isinstance(obj, (int, float)):
        value = complex(obj)
    elif isinstance(obj, dict) and "re" in obj:
        value = complex(float(obj["re"]), float(obj.get("im", 0.0)))
    else:
        raise DocumentError(f"expected {{re, im}}, got {obj!r}")
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise DocumentError("non-finite scalar")
    return value


def vector_to_json(v) -> list[dict]:
    return [complex_to_json(z) for z in np.asarray(v).reshape(-1)]


def subspace_to_json(space: Subspace) -> dict:
    return {"dim": space.dim, "rank": space.rank, "vectors": [vector_to_json(g) for g in space.generators]}


def state_to_doc(a: AntiSymTensor) -> dict:
    """StateDocument with nonzero coefficients in lexicographic order."""
    coeffs = []
    for key, value in sorted(a.coeffs.items()):
        entry = {"indices": [i + 1 for i in key]}
        entry.update(complex_to_json(value))
        coeffs.append(entry)
    return {"dim": a.dim, "degree": a.degree, "coeffs": coeffs}


def state_from_doc(doc: dict) -> AntiSymTensor:
    try:
        dim = int(doc["dim"])
        degree = int(doc["degree"])
        entries = doc["coeffs"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"state document needs dim, degree, coeffs: {exc}") from None
    if dim < 1 or not 0 <= degree <= dim:
        raise DocumentError(f"invalid dim/degree ({dim}, {degree})")
    coeffs: dict[tuple[int, ...], complex] = {}
    for entry in entries:
        idx = tuple(int(i) - 1 for i in entry["indices"])
        if len(idx) != degree:
            raise DocumentError(f"indices {entry['indices']} do not have length {degree}")
        if any(b <= a for a, b in zip(idx, idx[1:])) or (idx and (idx[0] < 0 or idx[-1] >= dim)):
            raise DocumentError(f"indices {entry['indices']} must be strictly increasing in 1..{dim}")
        coeffs[idx] = coeffs.get(idx, 0) + complex_from_json(entry)
    return AntiSymTensor.from_dict(dim, degree, coeffs)


def vectors_from_doc(doc: dict) -> np.ndarray:
    """Rows of a vector-list document ``{dim, vectors: [[{re, im}, ...], ...]}``."""
    try:
        dim = int(doc["dim"])
        rows = [[complex_from_json(z) for z in vec] for vec in doc["vectors"]]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError(f"vector document needs dim and vectors: {exc}") from None
    if any(len(r) != dim for r in rows):
        raise DocumentError(f"every vector must have {dim} components")
    return np.array(rows, dtype=np.complex128).reshape(len(rows), dim)


def load_document(path) -> dict:
    try:
        with Path(path).open() as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise DocumentError(f"{path}: top-level JSON value must be an object")
    return doc


def document_kind(doc: dict) -> str:
    if "coeffs" in doc:
        return "state"
    if "vectors" in doc:
        return "vectors"
    raise DocumentError("document is neither a StateDocument nor a vector list")


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, fixed indentation."""
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"
