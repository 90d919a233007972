"""
Schema validation and loaders for workbench files.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, NamedTuple, Optional, Union

from jsonschema import Draft202012Validator

from .algebra import AlgebraSpec, PathAlgebra, path_algebra
from .errors import InputError, SchemaError
from .graded import Tower
from .modules import Module
from .qh import OrderedSimples, SkewLabeling
from .reports import canonical_json
from .schemas import ALGEBRA_SCHEMA, MODULE_SCHEMA, REPORT_SCHEMA, TOWER_SCHEMA

PathLike = Union[str, Path]


def schema_violations(data: Any, schema: Dict[str, Any]) -> List[str]:
    """Every violation of ``schema`` as a "path: message" line, sorted."""
    validator = Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(data), key=str)
    return [f"{list(e.absolute_path)}: {e.message}" for e in errors]


def validate_document(data: Any, schema: Dict[str, Any], what: str) -> Any:
    violations = schema_violations(data, schema)
    if violations:
        raise SchemaError(what, violations)
    return data


def read_json(path: PathLike) -> Any:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def write_json(path: PathLike, data: Any) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(canonical_json(data))


class AlgebraFile(NamedTuple):
    spec: AlgebraSpec
    algebra: PathAlgebra
    ordered: OrderedSimples
    skew: Optional[SkewLabeling]


def algebra_spec_from_json(data: Dict[str, Any]) -> AlgebraSpec:
    validate_document(data, ALGEBRA_SCHEMA, "Algebra file")
    arrows = [(a["name"], a["source"], a["target"]) for a in data.get("arrows", [])]
    relations = [[(term["coeff"], term["path"]) for term in rel] for rel in data.get("relations", [])]
    return AlgebraSpec.build(data["vertices"], arrows, relations, data.get("nilpotency_bound"))


def ordered_from_json(data: Dict[str, Any]) -> OrderedSimples:
    order = tuple(data.get("order", data["vertices"]))
    if "strata" in data:
        strata = tuple(tuple(s) for s in data["strata"])
    else:
        strata = tuple((v,) for v in order)
    closure = None
    if "closure" in data:
        closure = frozenset((int(i), int(j)) for i, j in data["closure"])
    ordered = OrderedSimples(order, strata, closure)
    ordered.validate(data["vertices"])
    return ordered


def algebra_from_json(data: Dict[str, Any]) -> AlgebraFile:
    spec = algebra_spec_from_json(data)
    algebra = path_algebra(spec)
    ordered = ordered_from_json(data)
    skew = None
    if "skew" in data:
        unknown = sorted(set(data["skew"]) - set(spec.vertices))
        if unknown:
            raise InputError(f"Skew degrees given for unknown vertices {unknown}")
        skew = SkewLabeling(dict(data["skew"]))
    return AlgebraFile(spec, algebra, ordered, skew)


def load_algebra(path: PathLike) -> AlgebraFile:
    return algebra_from_json(read_json(path))


def module_from_json(data: Dict[str, Any], algebra: Any) -> Module:
    validate_document(data, MODULE_SCHEMA, "Module file")
    names = {a.name for a in algebra.arrows}
    unknown = sorted(set(data.get("maps", {})) - names)
    if unknown:
        raise InputError(f"Module maps name unknown arrows {unknown}")
    missing = [v for v in algebra.vertices if v not in data["dims"]]
    if missing:
        raise InputError(f"Module dims miss vertices {missing}")
    return Module.build(algebra, dict(data["dims"]), data.get("maps"))


def load_module(path: PathLike, algebra: Any) -> Module:
    return module_from_json(read_json(path), algebra)


def tower_from_json(data: Dict[str, Any]) -> Tower:
    validate_document(data, TOWER_SCHEMA, "Tower file")
    return Tower.from_json(data)


def load_tower(path: PathLike) -> Tower:
    return tower_from_json(read_json(path))


def load_report(path: PathLike) -> Dict[str, Any]:
    return validate_document(read_json(path), REPORT_SCHEMA, "Report file")
