"""
JSON Schema definitions for workbench input and output files.

Defines schemas for algebra presentations, modules, homological towers and
check reports.
"""

RATIONAL_SCHEMA = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]*[1-9][0-9]*)?$"},
    ],
    "description": "Exact rational, either an integer or a \"p/q\" string",
}

MATRIX_SCHEMA = {
    "type": "array",
    "items": {"type": "array", "items": RATIONAL_SCHEMA},
    "description": "Row-major matrix",
}

ALGEBRA_SCHEMA = {
    "type": "object",
    "properties": {
        "vertices": {
            "type": "array",
            "items": {"type": "string", "minLength": 1},
            "minItems": 1,
            "uniqueItems": True,
            "description": "Vertex labels, one per simple object",
        },
        "arrows": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "name": {"type": "string", "minLength": 1},
                    "source": {"type": "string"},
                    "target": {"type": "string"},
                },
                "required": ["name", "source", "target"],
                "additionalProperties": False,
            },
        },
        "relations": {
            "type": "array",
            "items": {
                "type": "array",
                "minItems": 1,
                "items": {
                    "type": "object",
                    "properties": {
                        "coeff": RATIONAL_SCHEMA,
                        "path": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                    },
                    "required": ["coeff", "path"],
                    "additionalProperties": False,
                },
            },
            "description": "Each relation is a linear combination of parallel paths",
        },
        "order": {
            "type": "array",
            "items": {"type": "string"},
            "uniqueItems": True,
            "description": "Vertices in ascending order",
        },
        "strata": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "string"}, "minItems": 1},
            "description": "Closed-most stratum first, open stratum last",
        },
        "closure": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "integer", "minimum": 0},
                "minItems": 2,
                "maxItems": 2,
            },
            "description": "Pairs [i, j]: stratum i lies in the boundary of stratum j",
        },
        "skew": {
            "type": "object",
            "additionalProperties": {"type": "integer"},
            "description": "Skew degree per vertex",
        },
        "nilpotency_bound": {"type": "integer", "minimum": 0},
        "description": {"type": "string"},
    },
    "required": ["vertices"],
    "additionalProperties": False,
}

MODULE_SCHEMA = {
    "type": "object",
    "properties": {
        "dims": {
            "type": "object",
            "additionalProperties": {"type": "integer", "minimum": 0},
        },
        "maps": {
            "type": "object",
            "additionalProperties": MATRIX_SCHEMA,
        },
        "description": {"type": "string"},
    },
    "required": ["dims"],
    "additionalProperties": False,
}

WEIGHT_SCHEMA = {
    "type": "array",
    "items": {"type": "integer"},
    "minItems": 2,
    "maxItems": 2,
}

TOWER_SCHEMA = {
    "type": "object",
    "properties": {
        "kind": {"type": "string", "enum": ["tor", "ext"]},
        "support": {"type": "string", "enum": ["X", "C+", "C-", "C0"]},
        "twist": WEIGHT_SCHEMA,
        "depth": {"type": "integer", "minimum": 0},
        "entries": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [{"type": "integer", "minimum": 0}, WEIGHT_SCHEMA],
                "minItems": 2,
                "maxItems": 2,
            },
        },
    },
    "required": ["kind", "support", "twist", "depth", "entries"],
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "command": {"type": "string"},
        "pass": {"type": "boolean"},
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "check": {"type": "string"},
                    "pass": {"type": "boolean"},
                    "tables": {"type": "object"},
                    "witnesses": {"type": "object"},
                },
                "required": ["check", "pass", "tables", "witnesses"],
            },
        },
    },
    "required": ["command", "pass", "results"],
}
