"""JSON serialization of vector sets.

Files look like::

    {
      "format": "mubdesigns.vectorset",
      "version": 1,
      "dim": 2,
      "labels": ["B0", "B0"],
      "provenance": {"construction": "gr", "n": 1, "tool": "mubdesigns 0.1.0"},
      "vectors": [
        [[1.0, 0.0], [0.0, 0.0]],
        [[0.0, 0.0], [1.0, 0.0]]
      ]
    }

Keys always appear in this order, one vector per line, and numbers use
Python's shortest round-trip float repr. Writing, reading and writing again
therefore gives identical bytes.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from . import __version__
from .vectors import VectorSet

FORMAT = "mubdesigns.vectorset"
VERSION = 1


class FormatError(ValueError):
    pass


def _num(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise FormatError(f"non-finite amplitude {x!r}")
    return json.dumps(x)


def dumps(vs: VectorSet, provenance: dict | None = None) -> str:
    lines = [
        "{",
        f'  "format": {json.dumps(FORMAT)},',
        f'  "version": {VERSION},',
        f'  "dim": {vs.dim},',
        f'  "labels": {json.dumps(list(vs.labels) if vs.labels is not None else None, ensure_ascii=False)},',
    ]
    if provenance is not None:
        prov = {**provenance}
        prov.setdefault("tool", f"mubdesigns {__version__}")
        lines.append(f'  "provenance": {json.dumps(prov, sort_keys=True, ensure_ascii=False)},')
    rows = [
        "    [" + ", ".join(f"[{_num(a.real)}, {_num(a.imag)}]" for a in v) + "]"
        for v in vs.vectors
    ]
    lines.append('  "vectors": [')
    lines.append(",\n".join(rows))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> tuple[VectorSet, dict | None]:
    """Parse a vector-set file, returning the set and its provenance block."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict) or obj.get("format") != FORMAT:
        raise FormatError(f"not a {FORMAT} file")
    if obj.get("version") != VERSION:
        raise FormatError(f"unsupported version {obj.get('version')!r}")
    dim = obj.get("dim")
    raw = obj.get("vectors")
    if not isinstance(dim, int) or dim < 1 or not isinstance(raw, list) or not raw:
        raise FormatError("missing or invalid 'dim' / 'vectors'")
    try:
        arr = np.array(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"malformed amplitudes: {exc}") from exc
    if arr.ndim != 3 or arr.shape[1:] != (dim, 2):
        raise FormatError(f"vectors must be a list of {dim} [re, im] pairs each")
    try:
        vs = VectorSet(arr[..., 0] + 1j * arr[..., 1], obj.get("labels"))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    return vs, obj.get("provenance")


def write(path, vs: VectorSet, provenance: dict | None = None) -> None:
    Path(path).write_text(dumps(vs, provenance), encoding="utf-8")


def read(path) -> tuple[VectorSet, dict | None]:
    return loads(Path(path).read_text(encoding="utf-8"))
