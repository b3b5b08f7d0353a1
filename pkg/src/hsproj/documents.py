"""Simplex input documents and machine-readable report serialization.

The input grammar is plain JSON (documented in the README):

    {
      "model": "hyperbolic" | "spherical",
      "vertices": [[x1, ..., x_{n+1}], ...],   # n+1 rows of length n+1
      "metadata": {"any": "strings"}           # optional
    }

Vertex rows are 1-based in all diagnostics, matching the rest of the
package.  Structural problems (bad JSON, wrong row lengths, unknown
model) raise DocumentError, which the CLI maps to exit code 2; geometric
problems surface later from build_simplex and map to exit code 1.

Reports are emitted through :func:`dumps`, a small JSON writer that
serializes every float with 17 significant digits so parsing a report
back reproduces the exact doubles that produced it.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DocumentError
from .forms import Model

__all__ = ["SimplexDocument", "parse_simplex_document", "dumps", "digest"]

_MODEL_NAMES = ("hyperbolic", "spherical")


@dataclass
class SimplexDocument:
    model: str
    vertices: list[list[float]]
    metadata: dict[str, str] = field(default_factory=dict)

    def to_model(self) -> Model:
        curvature = -1 if self.model == "hyperbolic" else +1
        return Model(curvature, len(self.vertices))

    def vertex_array(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=float)

    def as_dict(self) -> dict:
        out = {"model": self.model, "vertices": self.vertices}
        if self.metadata:
            out["metadata"] = self.metadata
        return out


def parse_simplex_document(text: str) -> SimplexDocument:
    """Parse and structurally validate a simplex document."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise DocumentError("document must be a JSON object")
    model = raw.get("model")
    if model not in _MODEL_NAMES:
        raise DocumentError(f"model must be one of {_MODEL_NAMES}, got {model!r}")
    vertices = raw.get("vertices")
    if not isinstance(vertices, list) or not vertices:
        raise DocumentError("vertices must be a nonempty list of coordinate rows")
    count = len(vertices)
    rows: list[list[float]] = []
    for i, row in enumerate(vertices, start=1):
        if not isinstance(row, list):
            raise DocumentError(f"vertex row {i} is not a list")
        if len(row) != count:
            raise DocumentError(
                f"vertex row {i} has length {len(row)}, expected {count} "
                "(vertex count must equal the coordinate length)"
            )
        try:
            rows.append([float(x) for x in row])
        except (TypeError, ValueError) as exc:
            raise DocumentError(f"vertex row {i} has a non-numeric entry") from exc
    if count < 2:
        raise DocumentError("a simplex needs at least 2 vertices")
    metadata = raw.get("metadata", {})
    if metadata and not isinstance(metadata, dict):
        raise DocumentError("metadata must be an object")
    meta = {str(k): str(v) for k, v in metadata.items()} if metadata else {}
    return SimplexDocument(model, rows, meta)


def _write(obj, parts: list[str], indent: int | None, level: int) -> None:
    pad = "" if indent is None else "\n" + " " * (indent * (level + 1))
    end = "" if indent is None else "\n" + " " * (indent * level)
    if isinstance(obj, bool):
        parts.append("true" if obj else "false")
    elif obj is None:
        parts.append("null")
    elif isinstance(obj, (int, np.integer)):
        parts.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise ValueError(f"cannot serialize non-finite float {x!r}")
        parts.append(format(x, ".17g"))
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            parts.append("{}")
            return
        parts.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                parts.append("," if indent is None else ",")
            parts.append(pad)
            parts.append(json.dumps(str(k)))
            parts.append(": ")
            _write(v, parts, indent, level + 1)
        parts.append(end + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            parts.append("[]")
            return
        parts.append("[")
        for i, v in enumerate(seq):
            if i:
                parts.append("," if indent is None else ",")
            parts.append(pad)
            _write(v, parts, indent, level + 1)
        parts.append(end + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} to JSON")


def dumps(obj, indent: int | None = None) -> str:
    """JSON text with every float at 17 significant digits (round-trip exact)."""
    parts: list[str] = []
    _write(obj, parts, indent, 0)
    return "".join(parts)


def digest(obj) -> str:
    """sha256 over the canonical (compact, full-precision) serialization."""
    return "sha256:" + hashlib.sha256(dumps(obj).encode()).hexdigest()
