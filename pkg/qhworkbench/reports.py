"""
Report values and their canonical JSON form.

Every check returns a ``CheckResult``; the CLI wraps results with the command
name so that two runs of the same command can be compared with diff_reports.
"""

import json
from fractions import Fraction
from typing import Any, Dict, List, NamedTuple, Optional

from .errors import InputError
from .linalg import format_rational

EXCLUDED_KEYS = ("generated_at", "timestamp")


class CheckResult(NamedTuple):
    check: str
    passed: bool
    tables: Dict[str, Any]
    witnesses: Dict[str, Any]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "pass": self.passed,
            "tables": to_jsonable(self.tables),
            "witnesses": to_jsonable(self.witnesses),
        }


def to_jsonable(value: Any) -> Any:
    """Convert tuples, rationals and report values into plain JSON data."""
    if isinstance(value, CheckResult):
        return value.to_dict()
    if hasattr(value, "to_json") and callable(value.to_json):
        return value.to_json()
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(to_jsonable(v) for v in value)
    raise InputError(f"Cannot serialize value of type {type(value).__name__}")


def canonical_json(report: Any) -> str:
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def build_report(command: str, results: List[CheckResult], extra: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    report = {
        "command": command,
        "pass": all(r.passed for r in results),
        "results": [r.to_dict() for r in results],
    }
    if extra:
        report.update(to_jsonable(extra))
    return report


def _walk(a: Any, b: Any, path: str, out: List[str]) -> None:
    if isinstance(a, dict) and isinstance(b, dict):
        for key in sorted(set(a) | set(b)):
            if key in EXCLUDED_KEYS:
                continue
            where = f"{path}.{key}" if path else key
            if key not in a:
                out.append(f"{where}: only in second report")
            elif key not in b:
                out.append(f"{where}: only in first report")
            else:
                _walk(a[key], b[key], where, out)
    elif isinstance(a, list) and isinstance(b, list):
        if len(a) != len(b):
            out.append(f"{path}: length {len(a)} != {len(b)}")
        for i, (x, y) in enumerate(zip(a, b)):
            _walk(x, y, f"{path}[{i}]", out)
    elif a != b:
        out.append(f"{path}: {json.dumps(a, sort_keys=True)} != {json.dumps(b, sort_keys=True)}")


def diff_reports(a: Dict[str, Any], b: Dict[str, Any]) -> List[str]:
    """Structural differences between two reports of the same command."""
    if a.get("command") != b.get("command"):
        raise InputError(f"Reports come from different commands: {a.get('command')!r} vs {b.get('command')!r}")
    out: List[str] = []
    _walk(to_jsonable(a), to_jsonable(b), "", out)
    return out
