"""JSON schemas for every report the CLI writes (validated before each write)."""

from __future__ import annotations

import jsonschema

SCHEMA_ID = "jk-report/1"

EIGENVALUE_CONVENTION = (
    "an eigenvalue is a value l0 with rk(A - l0*B) < r; Jordan factors are forms in (lambda, mu) "
    "vanishing at (l0 : 1); the factor mu is the infinite eigenvalue"
)

_rational = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
_vector = {"type": "array", "items": _rational}
_indices = {"type": "array", "items": {"type": "integer", "minimum": 0}}
_sizes = {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1}
_poly = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["exponents", "coeff"],
        "properties": {"exponents": _indices, "coeff": _rational},
        "additionalProperties": False,
    },
}

_jordan_entry = {
    "type": "object",
    "required": ["factor", "sizes"],
    "properties": {
        "factor": {"type": "string"},
        "degree": {"type": "integer", "minimum": 1},
        "sizes": _sizes,
        "eigenvalue": {"type": "string"},
        "numeric_roots": {"type": "array", "items": {"type": "string"}},
    },
}

_pencil_invariants = {
    "type": "object",
    "required": ["shape", "rank", "eps", "eta", "jordan", "k_hor", "k_vert", "deg_D"],
    "properties": {
        "shape": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2, "maxItems": 2},
        "rank": {"type": "integer", "minimum": 0},
        "eps": _indices,
        "eta": _indices,
        "jordan": {"type": "array", "items": _jordan_entry},
        "k_hor": {"type": "integer", "minimum": 0},
        "k_vert": {"type": "integer", "minimum": 0},
        "deg_D": {"type": "integer", "minimum": 0},
    },
}

_witness = {
    "type": "object",
    "required": ["x", "a", "seed", "trials", "bound", "agreement"],
    "properties": {
        "x": _vector,
        "a": _vector,
        "seed": {"type": "integer", "minimum": 0},
        "trials": {"type": "integer", "minimum": 1},
        "bound": {"type": "integer", "minimum": 1},
        "agreement": {"type": "integer", "minimum": 0},
        "agreed": {"type": "boolean"},
        "escalated": {"type": "boolean"},
    },
}

_jk_report = {
    "type": "object",
    "required": ["rank", "eps", "eta", "jordan", "k_hor", "k_vert", "deg_D", "p", "q", "identities", "witness"],
    "properties": {
        "rank": {"type": "integer", "minimum": 0},
        "eps": _indices,
        "eta": _indices,
        "jordan": {"type": "array", "items": _jordan_entry},
        "k_hor": {"type": "integer", "minimum": 0},
        "k_vert": {"type": "integer", "minimum": 0},
        "deg_D": {"type": "integer", "minimum": 0},
        "p": {"type": "integer", "minimum": 0},
        "q": {"type": "integer", "minimum": 0},
        "identities": {
            "type": "object",
            "required": ["eq5"],
            "properties": {"eq5": {"type": "boolean"}, "size_identity": {"type": "boolean"}},
        },
        "witness": _witness,
    },
}

_envelope = {
    "type": "object",
    "required": ["schema", "kind", "convention", "result"],
    "properties": {
        "schema": {"const": SCHEMA_ID},
        "kind": {"enum": ["pencil", "rep-analyze", "rep-semiinvariant", "shifts", "zoo-list", "zoo-show", "check",
                          "error"]},
        "convention": {"type": "string"},
        "result": {"type": "object"},
    },
}

RESULT_SCHEMAS = {
    "pencil": _pencil_invariants,
    "rep-analyze": _jk_report,
    "rep-semiinvariant": {
        "type": "object",
        "required": ["poly", "degree", "degree_via_pencil", "degrees_agree"],
        "properties": {
            "poly": _poly,
            "degree": {"type": "integer", "minimum": 0},
            "degree_via_pencil": {"type": "integer", "minimum": 0},
            "degrees_agree": {"type": "boolean"},
        },
    },
    "shifts": {
        "type": "object",
        "required": ["a", "invariants", "trdeg", "vorontsov", "degree_sums", "formal_chains"],
        "properties": {"a": _vector},
    },
    "zoo-list": {
        "type": "object",
        "required": ["entries"],
        "properties": {"entries": {"type": "array", "items": {"type": "object", "required": ["name", "description"]}}},
    },
    "zoo-show": {"type": "object", "required": ["name", "algebra", "representation", "expected"]},
    "check": {
        "type": "object",
        "required": ["passed", "agreed", "entries"],
        "properties": {
            "passed": {"type": "boolean"},
            "agreed": {"type": "boolean"},
            "entries": {
                "type": "array",
                "items": {"type": "object", "required": ["name", "invariants", "checks", "witness"]},
            },
        },
    },
    "error": {"type": "object", "required": ["message"]},
}


def validate_report(doc: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if ``doc`` does not match its schema."""
    jsonschema.validate(doc, _envelope)
    jsonschema.validate(doc["result"], RESULT_SCHEMAS[doc["kind"]])
