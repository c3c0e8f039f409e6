"""JSON forms of fields, algebras, modules and exact sequences.

Matrices are row-major lists of strings: integers for prime fields and
``"num/den"`` for the rationals, so exactness survives the round trip.
"""
from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from .algebra import (Algebra, QuiverPresentation, algebra_from_table, build_bound_quiver_algebra,
                      builtin_algebra, canonical_builtin_name, validate_algebra)
from .errors import AlgebraError, ModuleError
from .linalg import Field
from .modules import ExactSeq, Mod, ModHom, ring_for, validate_module


class FormatError(ValueError):
    """Malformed input document."""


# -- fields and matrices -------------------------------------------------------

def field_from_json(spec) -> Field:
    if isinstance(spec, str):
        return Field.parse(spec)
    if isinstance(spec, dict):
        return Field.from_spec(spec)
    raise FormatError(f"bad field spec {spec!r}")


def matrix_to_json(f: Field, a: np.ndarray) -> list:
    return [[f.format(x) for x in row] for row in a]


def matrix_from_json(f: Field, rows, shape=None) -> np.ndarray:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise FormatError("a matrix must be a list of rows")
    if rows and len({len(r) for r in rows}) != 1:
        raise FormatError("matrix rows have different lengths")
    try:
        out = f.array(rows) if rows else f.zeros((0, 0 if shape is None else shape[1]))
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise FormatError(f"bad matrix entry: {exc}") from None
    if shape is not None:
        if out.size == 0 and shape[0] * shape[1] == 0:
            return f.zeros(shape)
        if out.shape != tuple(shape):
            raise FormatError(f"matrix has shape {out.shape}, expected {tuple(shape)}")
    return out


def _plain(x):
    """Recursively convert numpy scalars, tuples and fractions into JSON values."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, Fraction):
        return str(x)
    if hasattr(x, "to_json"):
        return _plain(x.to_json())
    return x


def dumps(obj) -> str:
    """Deterministic JSON text (sorted keys, fixed separators, trailing newline)."""
    return json.dumps(_plain(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- algebras ------------------------------------------------------------------

def algebra_to_json(a: Algebra) -> dict:
    a = a.base
    f = a.field
    if a.quiver is not None:
        q = a.quiver
        rels = []
        for rel in q.relations:
            rels.append([[str(c), "*".join(q.arrows[i][2] for i in reversed(arrs))] for c, arrs in rel])
        out = {"kind": "quiver", "field": f.spec(), "vertices": q.vertices,
               "arrows": [[s, t, lbl] for s, t, lbl in q.arrows], "relations": rels,
               "nilpotency": q.nilpotency}
        if a.name:
            out["name"] = a.name
        return out
    d = a.dim
    table = [[i, j, k, f.format(a.table[i, j, k])]
             for i in range(d) for j in range(d) for k in range(d) if a.table[i, j, k] != 0]
    out = {"kind": "structure_constants", "field": f.spec(), "dim": d,
           "unit": [f.format(x) for x in a.unit], "table": table}
    if a.radical is not None:
        out["radical"] = matrix_to_json(f, a.radical.basis)
    if a.idempotents is not None:
        out["idempotents"] = [[f.format(x) for x in e] for e in a.idempotents]
    if a.name:
        out["name"] = a.name
    return out


def algebra_from_json(doc: dict, default_field: Field | None = None) -> Algebra:
    if not isinstance(doc, dict):
        raise FormatError("algebra document must be a JSON object")
    kind = doc.get("kind")
    field = field_from_json(doc["field"]) if "field" in doc else (default_field or Field.gf(32003))
    try:
        if kind == "builtin":
            return builtin_algebra(str(doc["name"]), field)
        if kind == "quiver":
            q = QuiverPresentation.from_labels(doc["vertices"], doc.get("arrows", []),
                                               doc.get("relations", []), doc["nilpotency"])
            a = build_bound_quiver_algebra(q, field, name=str(doc.get("name", "")))
            validate_algebra(a).raise_if_failed()
            return a
        if kind == "structure_constants":
            d = int(doc["dim"])
            table = field.zeros((d, d, d))
            for entry in doc["table"]:
                i, j, k, v = entry
                if not all(0 <= int(x) < d for x in (i, j, k)):
                    raise FormatError(f"table index out of range in {entry!r}")
                table[int(i), int(j), int(k)] = field.scalar(v)
            unit = field.array(doc["unit"])
            if unit.shape != (d,):
                raise FormatError(f"unit must have {d} coordinates")
            rad = doc.get("radical")
            idem = doc.get("idempotents")
            return algebra_from_table(field, table, unit, radical_rows=rad, idempotents=idem,
                                      name=str(doc.get("name", "")))
    except KeyError as exc:
        raise FormatError(f"missing key {exc.args[0]!r} in algebra document") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"bad algebra document: {exc}") from None
    raise FormatError(f"unknown algebra kind {kind!r}")


def builtin_reference(a: Algebra) -> dict | None:
    """{"kind": "builtin", ...} when the algebra is a library algebra, else None."""
    base = a.base
    if base.quiver is None or not base.name:
        return None
    try:
        name = canonical_builtin_name(base.name)
        ref = builtin_algebra(name, base.field)
    except AlgebraError:
        return None
    if ref.dim != base.dim or not np.array_equal(ref.table, base.table):
        return None
    return {"kind": "builtin", "name": name, "field": base.field.spec()}


# -- modules and sequences -----------------------------------------------------

def module_to_json(m: Mod) -> dict:
    f = m.field
    out = {"side": m.side, "dim": m.dim, "action": [matrix_to_json(f, a) for a in m.action]}
    if m.name:
        out["name"] = m.name
    return out


def module_from_json(doc: dict, a: Algebra, validate: bool = True) -> Mod:
    if not isinstance(doc, dict):
        raise FormatError("module document must be a JSON object")
    try:
        side = doc.get("side", "left")
        n = int(doc["dim"])
        acts = doc["action"]
    except KeyError as exc:
        raise FormatError(f"missing key {exc.args[0]!r} in module document") from None
    if side not in ("left", "right"):
        raise FormatError(f"side must be 'left' or 'right', got {side!r}")
    ring = ring_for(a.base, side)
    if not isinstance(acts, list) or len(acts) != ring.dim:
        raise ModuleError(f"action list has {len(acts) if isinstance(acts, list) else '?'} matrices, "
                          f"expected one per basis element ({ring.dim})", witness=(ring.dim,))
    f = ring.field
    mats = [matrix_from_json(f, rows, (n, n)) for rows in acts]
    action = np.stack(mats) if mats else f.zeros((0, n, n))
    m = Mod(ring, action, name=str(doc.get("name", "")))
    if validate:
        validate_module(m).raise_if_failed(ModuleError)
    return m


def sequence_to_json(seq: ExactSeq) -> dict:
    f = seq.modules[0].field
    return {"modules": [module_to_json(m) for m in seq.modules],
            "maps": [matrix_to_json(f, h.matrix) for h in seq.maps],
            "certificate": seq.certificate(), "notes": _plain(seq.notes)}


def sequence_from_json(doc: dict, a: Algebra) -> ExactSeq:
    mods = [module_from_json(d, a) for d in doc["modules"]]
    f = a.field
    maps = []
    for i, rows in enumerate(doc["maps"]):
        src, tgt = mods[i], mods[i + 1]
        maps.append(ModHom(src, tgt, matrix_from_json(f, rows, (tgt.dim, src.dim))))
    return ExactSeq(mods, maps, dict(doc.get("notes", {})))
