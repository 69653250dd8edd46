"""JSON Schemas (draft 2020-12) for the command-line outputs."""

from __future__ import annotations

LCNUMBER = {
    "type": "object",
    "required": ["terms", "horizon"],
    "additionalProperties": False,
    "properties": {
        "terms": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [{"type": "string"}, {"type": "number"}],
                "minItems": 2,
                "maxItems": 2,
            },
        },
        "horizon": {"type": "string"},
    },
}

_VALUE = {"oneOf": [{"$ref": "#/$defs/lcnumber"}, {"enum": ["+inf", "-inf"]}]}


def _schema(command: str, required: list[str], properties: dict) -> dict:
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "$defs": {"lcnumber": LCNUMBER},
        "type": "object",
        "required": ["command"] + required,
        "properties": {"command": {"const": command}, **properties},
    }


EVAL = _schema(
    "eval",
    ["expr", "value", "text"],
    {"expr": {"type": "string"}, "value": _VALUE, "text": {"type": "string"}},
)

DIFF = _schema(
    "diff",
    ["expr", "at", "order", "derivatives"],
    {
        "expr": {"type": "string"},
        "at": {"type": "number"},
        "order": {"type": "integer", "minimum": 0},
        "derivatives": {"type": "array", "items": {"type": "number"}},
    },
)

INTEGRATE = _schema(
    "integrate",
    ["expr", "from", "to", "value", "text"],
    {
        "expr": {"type": "string"},
        "from": {"type": "string"},
        "to": {"type": "string"},
        "value": {"$ref": "#/$defs/lcnumber"},
        "text": {"type": "string"},
    },
)

NORM = _schema(
    "norm",
    ["expr", "from", "to", "p", "value", "text"],
    {
        "expr": {"type": "string"},
        "from": {"type": "string"},
        "to": {"type": "string"},
        "p": {"type": "string"},
        "value": {"$ref": "#/$defs/lcnumber"},
        "text": {"type": "string"},
    },
)

SEQ = _schema(
    "seq",
    ["expr", "verdict", "evidence"],
    {
        "expr": {"type": "string"},
        "verdict": {"enum": ["limit", "no_limit", "divergent"]},
        "value": {"$ref": "#/$defs/lcnumber"},
        "evidence": {"type": "object"},
    },
)

DIRAC = _schema(
    "dirac",
    ["identity", "params", "expected", "computed", "defect", "ok"],
    {
        "identity": {"enum": ["product", "moments", "derivative"]},
        "params": {"type": "object"},
        "expected": {"type": "number"},
        "expected_rational": {"type": "string"},
        "computed": {"oneOf": [{"type": "number"}, {"$ref": "#/$defs/lcnumber"}]},
        "defect": {"type": "number", "minimum": 0},
        "ok": {"type": "boolean"},
        "pairing": {
            "type": "object",
            "required": ["degrees", "values", "limit", "stabilized"],
            "properties": {
                "degrees": {"type": "array", "items": {"type": "integer"}},
                "values": {"type": "array", "items": {"type": "number"}},
                "limit": {"type": "number"},
                "stabilized": {"type": "boolean"},
                "sandwich": {"type": "array", "items": {"type": "boolean"}},
            },
        },
    },
)

SCHEMAS = {
    "eval": EVAL,
    "diff": DIFF,
    "integrate": INTEGRATE,
    "norm": NORM,
    "seq": SEQ,
    "dirac": DIRAC,
}
