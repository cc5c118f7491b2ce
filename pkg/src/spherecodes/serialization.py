"""JSON encoding of algebra elements, module vectors, codes and certificates.

Floats are written with Python's shortest round-trip repr, so decoding
reproduces them exactly.  Module inner products are linear in the first
slot: <x, y> = sum_i x_i y_i^*.  Encoders emit keys in a fixed order so
identical inputs give byte-identical documents.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .algebra import AlgebraDescriptor, AlgebraElement
from .angles import theta_from_pi_fraction
from .codes import ClassicalCode, ModularCode
from .errors import FormatError, SphereCodesError
from .hilbert_module import ModuleVector

INNER_PRODUCT_CONVENTION = "linear in the first slot: <x, y> = sum_i x_i y_i^*"


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


# -- encoding ----------------------------------------------------------------


def _num(x: float) -> float:
    x = float(x)
    return 0.0 if x == 0 else x  # no negative zero in output


def descriptor_to_dict(desc: AlgebraDescriptor) -> dict:
    return {"kind": desc.kind, "m": int(desc.m)}


def _entries(arr: np.ndarray) -> list:
    return [[[_num(z.real), _num(z.imag)] for z in row] for row in arr]


def element_to_dict(a: AlgebraElement) -> dict:
    return {"m": int(a.descriptor.m), "kind": a.descriptor.kind, "entries": _entries(a.entries)}


def vector_to_dict(x: ModuleVector) -> dict:
    return {
        "d": x.d,
        "algebra": descriptor_to_dict(x.descriptor),
        "components": [element_to_dict(c) for c in x.components],
    }


def code_to_dict(code) -> dict:
    if isinstance(code, ClassicalCode):
        return {
            "type": "classical",
            "d": code.d,
            "theta": code.theta,
            "points": [[_num(v) for v in row] for row in code.points],
        }
    if isinstance(code, ModularCode):
        return {
            "type": "modular",
            "d": code.d,
            "theta": code.theta,
            "algebra": descriptor_to_dict(code.algebra),
            "convention": INNER_PRODUCT_CONVENTION,
            "vectors": [vector_to_dict(v) for v in code.vectors],
        }
    raise TypeError(f"cannot encode {type(code).__name__}")


# -- decoding ----------------------------------------------------------------


def _field(data, key, path):
    if not isinstance(data, dict):
        raise FormatError("expected an object", path)
    if key not in data:
        raise FormatError("missing field", f"{path}.{key}" if path else key)
    return data[key]


def _int(v, path) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise FormatError(f"expected an integer, got {v!r}", path)
    return v


def _real(v, path) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise FormatError(f"expected a number, got {v!r}", path)
    if not math.isfinite(v):
        raise FormatError("non-finite number", path)
    return float(v)


def _list(v, path) -> list:
    if not isinstance(v, list):
        raise FormatError(f"expected an array, got {type(v).__name__}", path)
    return v


def parse_theta(v, path="theta") -> float:
    """A real number of radians, or a string "p/q" read as a fraction of pi."""
    if isinstance(v, str):
        try:
            return theta_from_pi_fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad pi fraction {v!r}", path) from exc
    return _real(v, path)


def _wrap(fn, path):
    try:
        return fn()
    except FormatError:
        raise
    except (SphereCodesError, ValueError, TypeError) as exc:
        raise FormatError(str(exc), path) from exc


def descriptor_from_dict(data, path="algebra") -> AlgebraDescriptor:
    kind = _field(data, "kind", path)
    m = _int(data.get("m", 1), f"{path}.m")
    return _wrap(lambda: AlgebraDescriptor(kind, m), path)


def _complex_entries(raw, m, path) -> np.ndarray:
    rows = _list(raw, path)
    if len(rows) != m:
        raise FormatError(f"expected {m} rows, got {len(rows)}", path)
    out = np.zeros((m, m), dtype=complex)
    for i, row in enumerate(rows):
        row = _list(row, f"{path}[{i}]")
        if len(row) != m:
            raise FormatError(f"expected {m} entries, got {len(row)}", f"{path}[{i}]")
        for j, z in enumerate(row):
            p = f"{path}[{i}][{j}]"
            if isinstance(z, list):
                if len(z) != 2:
                    raise FormatError("complex entries are [re, im] pairs", p)
                out[i, j] = complex(_real(z[0], p), _real(z[1], p))
            else:
                out[i, j] = _real(z, p)
    return out


def element_from_dict(data, path="element") -> AlgebraElement:
    kind = _field(data, "kind", path)
    m = _int(_field(data, "m", path), f"{path}.m")
    desc = _wrap(lambda: AlgebraDescriptor(kind, m), path)
    entries = _complex_entries(_field(data, "entries", path), m, f"{path}.entries")
    return _wrap(lambda: AlgebraElement(desc, entries), path)


def vector_from_dict(data, path="vector") -> ModuleVector:
    desc = descriptor_from_dict(_field(data, "algebra", path), f"{path}.algebra")
    d = _int(_field(data, "d", path), f"{path}.d")
    comps = _list(_field(data, "components", path), f"{path}.components")
    if len(comps) != d:
        raise FormatError(f"expected {d} components, got {len(comps)}", f"{path}.components")
    elems = []
    for i, c in enumerate(comps):
        e = element_from_dict(c, f"{path}.components[{i}]")
        if e.descriptor != desc:
            raise FormatError(f"component over {e.descriptor}, expected {desc}", f"{path}.components[{i}]")
        elems.append(e)
    return _wrap(lambda: ModuleVector(desc, elems), path)


def code_from_dict(data):
    """Decode a classical or modular code.

    The ``type`` field may be omitted: documents with ``points`` are
    classical, documents with ``vectors`` are modular.
    """
    if not isinstance(data, dict):
        raise FormatError("expected an object at the top level")
    kind = data.get("type") or ("modular" if "vectors" in data else "classical")
    d = _int(_field(data, "d", ""), "d")
    theta = parse_theta(_field(data, "theta", ""))
    if kind == "classical":
        rows = _list(_field(data, "points", ""), "points")
        pts = []
        for i, row in enumerate(rows):
            row = _list(row, f"points[{i}]")
            if len(row) != d:
                raise FormatError(f"expected {d} coordinates, got {len(row)}", f"points[{i}]")
            pts.append([_real(v, f"points[{i}][{j}]") for j, v in enumerate(row)])
        return _wrap(lambda: ClassicalCode(d, theta, np.array(pts, dtype=float).reshape(len(pts), d)), "points")
    if kind == "modular":
        desc = descriptor_from_dict(_field(data, "algebra", ""), "algebra")
        raw = _list(_field(data, "vectors", ""), "vectors")
        vecs = []
        for i, v in enumerate(raw):
            vec = vector_from_dict(v, f"vectors[{i}]")
            if vec.descriptor != desc or vec.d != d:
                raise FormatError(f"vector over {vec.descriptor}^{vec.d}, expected {desc}^{d}", f"vectors[{i}]")
            vecs.append(vec)
        return _wrap(lambda: ModularCode(desc, d, theta, tuple(vecs)), "vectors")
    raise FormatError(f"unknown code type {kind!r}", "type")


def load_json(path) -> object:
    """Read a JSON file; syntax errors become FormatError with line and column."""
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from exc


def load_code(path):
    return code_from_dict(load_json(path))


def save(obj: dict, path) -> None:
    Path(path).write_text(dumps(obj))
