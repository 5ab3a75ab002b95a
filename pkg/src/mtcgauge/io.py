"""The ``mtc-data/1`` theory file format (JSON)."""

import json

import jsonschema
import numpy as np

from .errors import InvariantError, MalformedDataError, SchemaError, TheorySyntaxError
from .modular_data import ModularData

__all__ = ["FORMAT", "SCHEMA", "parse", "serialize", "load", "dump"]

FORMAT = "mtc-data/1"

COMMENT = ("complex numbers are {re, im} pairs in shortest round-trip decimal; "
           "s_unnormalized row 0 holds the quantum dimensions; index 0 is the unit; "
           "invariants are checked to 1e-9")

_COMPLEX = {
    "type": "object",
    "properties": {"re": {"type": "number"}, "im": {"type": "number"}},
    "required": ["re", "im"],
    "additionalProperties": False,
}

SCHEMA = {
    "type": "object",
    "properties": {
        "format": {"const": FORMAT},
        "comment": {"type": "string"},
        "name": {"type": "string"},
        "rank": {"type": "integer", "minimum": 1},
        "labels": {"type": "array", "items": {"type": "string"}},
        "dual": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "s_unnormalized": {"type": "array", "items": {"type": "array", "items": _COMPLEX}},
        "twists": {"type": "array", "items": _COMPLEX},
        "sqrt_twists": {"anyOf": [{"type": "null"}, {"type": "array", "items": _COMPLEX}]},
    },
    "required": ["format", "name", "rank", "labels", "dual", "s_unnormalized", "twists"],
    "additionalProperties": False,
}


def _path(parts):
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out or "<document>"


def _complex(obj):
    return complex(obj["re"], obj["im"])


def _enc(z):
    z = complex(z)
    return {"re": float(z.real), "im": float(z.imag)}


def parse(text, tol=1e-9):
    """Parse a theory document into validated :class:`ModularData`.

    Raises
    ------
    TheorySyntaxError
        Not JSON; location is ``line:column``.
    SchemaError
        Wrong layout; location is the field path, e.g. ``s_unnormalized[1][0].re``.
    InvariantError
        Data violates a modular-data invariant; location names the field.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TheorySyntaxError(exc.msg, f"line {exc.lineno}:{exc.colno}") from None
    err = jsonschema.exceptions.best_match(jsonschema.Draft202012Validator(SCHEMA)
                                           .iter_errors(doc))
    if err is not None:
        raise SchemaError(err.message, _path(err.absolute_path))

    r = doc["rank"]
    for key in ("labels", "dual", "s_unnormalized", "twists"):
        if len(doc[key]) != r:
            raise SchemaError(f"expected {r} entries, got {len(doc[key])}", key)
    for i, row in enumerate(doc["s_unnormalized"]):
        if len(row) != r:
            raise SchemaError(f"expected {r} entries, got {len(row)}", f"s_unnormalized[{i}]")
    sq = doc.get("sqrt_twists")
    if sq is not None and len(sq) != r:
        raise SchemaError(f"expected {r} entries, got {len(sq)}", "sqrt_twists")

    try:
        md = ModularData(
            doc["name"], doc["labels"], doc["dual"],
            np.array([[_complex(z) for z in row] for row in doc["s_unnormalized"]]),
            np.array([_complex(z) for z in doc["twists"]]),
            None if sq is None else np.array([_complex(z) for z in sq]))
    except MalformedDataError as exc:
        field = {"s_unnorm": "s_unnormalized"}.get(exc.field, exc.field)
        raise InvariantError(str(exc), field) from None
    problems = md.invariant_violations(tol)
    if problems:
        field, msg = problems[0]
        raise InvariantError(msg, field)
    return md


def serialize(md):
    """Canonical ``mtc-data/1`` text: fixed key order, shortest round-trip floats."""
    doc = {
        "format": FORMAT,
        "comment": COMMENT,
        "name": md.name,
        "rank": md.rank,
        "labels": list(md.labels),
        "dual": list(md.dual),
        "s_unnormalized": [[_enc(z) for z in row] for row in md.s_unnorm],
        "twists": [_enc(z) for z in md.twists],
    }
    if md.sqrt_twists is not None:
        doc["sqrt_twists"] = [_enc(z) for z in md.sqrt_twists]
    return json.dumps(doc, indent=1, ensure_ascii=False, allow_nan=False) + "\n"


def load(path, tol=1e-9):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), tol)


def dump(md, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(md))
