"""JSON schemas, input parsing and deterministic report encoding."""
from __future__ import annotations

import json
from fractions import Fraction

import jsonschema

from .errors import ParseError

_RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$"},
    ]
}
_RVEC = {"type": "array", "items": _RATIONAL, "minItems": 1}
_IVEC = {"type": "array", "items": {"type": "integer"}, "minItems": 1}
_IPOINT = {"oneOf": [{"type": "integer"}, _IVEC]}

INPUT_SCHEMAS = {
    "cone": {
        "type": "object",
        "required": ["generators"],
        "properties": {
            "dim": {"type": "integer", "minimum": 1},
            "generators": {"type": "array", "items": _RVEC, "minItems": 1},
            "face": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2, "maxItems": 2},
            "y": _RVEC,
        },
    },
    "tile": {
        "type": "object",
        "required": ["cells"],
        "properties": {
            "dim": {"type": "integer", "minimum": 1},
            "cells": {"type": "array", "items": _IPOINT, "minItems": 1},
            "translations": {"type": "array", "items": _IPOINT},
            "box": {"oneOf": [{"type": "integer"}, _IVEC]},
        },
    },
    "region": {
        "type": "object",
        "required": ["kind"],
        "properties": {
            "kind": {"enum": ["Quadrant", "CornerCutStaircase", "Trapezoid"]},
            "vertices": {"type": "array", "items": {"type": "array", "items": {"type": "integer"},
                                                     "minItems": 2, "maxItems": 2}},
            "short_base": {"type": "integer"},
            "long_base": {"type": "integer"},
            "height": {"type": "integer"},
            "mode": {"enum": ["square", "half"]},
        },
    },
    "system": {
        "type": "object",
        "required": ["A", "D"],
        "properties": {
            "A": {"type": "array", "items": {"type": "array", "items": _RATIONAL}, "minItems": 1},
            "D": {"type": "array", "items": _IPOINT, "minItems": 1},
        },
    },
    "cells": {
        "type": "object",
        "required": ["cells"],
        "properties": {"cells": {"type": "array", "items": _IPOINT, "minItems": 1}},
    },
}

_POINTS = {"type": "array", "items": {"oneOf": [_RATIONAL, {"type": "array"}]}}

REPORT_SCHEMAS = {
    "cone analyze": {
        "type": "object",
        "required": ["frame_size", "dim", "regular", "regular_boundary", "facets", "frame"],
        "properties": {
            "frame_size": {"type": "integer"},
            "dim": {"type": "integer"},
            "regular": {"type": "boolean"},
            "regular_boundary": {"type": "boolean"},
            "facets": {"type": "array"},
        },
    },
    "cone slice": {
        "type": "object",
        "required": ["vertices", "rays", "corner_cut", "metrics"],
        "properties": {"vertices": _POINTS, "rays": {"type": "array"}, "corner_cut": {"type": "boolean"},
                       "metrics": {"type": "object"}},
    },
    "cone feasible2face": {
        "type": "object",
        "required": ["found"],
        "properties": {"found": {"type": "boolean"}, "case": {"enum": [1, 2]}},
    },
    "tile verify": {
        "type": "object",
        "required": ["box", "is_packing", "covered_box", "is_tiling"],
        "properties": {"is_packing": {"type": "boolean"}, "covered_box": {"type": "boolean"},
                       "is_tiling": {"type": "boolean"}},
    },
    "tile complete": {
        "type": "object",
        "required": ["status", "J", "box"],
        "properties": {"status": {"enum": ["Complete", "Fail"]}, "J": _POINTS},
    },
    "tile search": {
        "type": "object",
        "required": ["found", "tiles_tried", "statement"],
        "properties": {"found": {"type": "boolean"}, "tiles_tried": {"type": "integer"}},
    },
    "sat expand": {
        "type": "object",
        "required": ["k", "size", "distinct"],
        "properties": {"size": {"type": "integer"}, "distinct": {"type": "integer"}},
    },
    "sat approx": {
        "type": "object",
        "required": ["k", "count", "bounding_box", "points"],
        "properties": {"count": {"type": "integer"}, "points": _POINTS},
    },
    "sat cubecheck": {
        "type": "object",
        "required": ["verdict", "method", "certificate"],
        "properties": {"verdict": {"enum": ["True", "False", "Unknown"]}},
    },
    "sat corner": {
        "type": "object",
        "required": ["verdict", "estimated_generators", "resolution"],
        "properties": {"verdict": {"enum": ["ConsistentWithCone", "Inconsistent"]}},
    },
    "error": {
        "type": "object",
        "required": ["error", "message"],
        "properties": {"error": {"type": "string"}, "message": {"type": "string"}},
    },
}


def validate(data, schema: dict, what: str):
    """Raise :class:`ParseError` pointing at the first violation."""
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as err:
        where = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise ParseError(f"{what}: {err.message} at {where}", location=where) from None


def load(path: str, kind: str):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err.strerror}", location=path) from None
    except json.JSONDecodeError as err:
        raise ParseError(f"{path}: {err.msg}", location=f"line {err.lineno} column {err.colno}") from None
    validate(data, INPUT_SCHEMAS[kind], path)
    return data


def to_json(obj):
    """Plain JSON value: Fractions become ints or ``"p/q"`` strings; tuples become lists."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, float):
        raise TypeError("floats are never emitted")
    if isinstance(obj, dict):
        return {str(k): to_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [to_json(x) for x in obj]
        return sorted(items, key=json.dumps) if isinstance(obj, (set, frozenset)) else items
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(report: dict) -> str:
    return json.dumps(to_json(report), sort_keys=True, indent=2) + "\n"
