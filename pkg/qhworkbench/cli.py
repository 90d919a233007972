"""
Command-line interface for the workbench.

Every subcommand loads its input files, runs one engine operation and prints
a report: plain text by default, canonical JSON with --json. Exit codes are
0 when every check passes, 1 when a check fails and 2 for invalid input.
"""

import argparse
import json
import random
import re
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from .errors import InputError, WorkbenchError
from .graded import DEFAULT_DEPTH, GradedSheaf, Support, Weight, ext_tower, tor_tower
from .homological import ext1, hom_basis
from .isomorphism import is_isomorphic
from .logs import log_error, log_info, log_trace, log_warning
from .modules import ModuleMap, indecomposable_injective, indecomposable_projective, random_module
from .nodal import block_leaks, build_block, verify_block_range
from .qh import QHCategory
from .reports import CheckResult, build_report, canonical_json, diff_reports, to_jsonable
from .stratified import (
    StratifiedCover,
    injective_hull_iterative,
    injective_hull_stratified,
    projective_cover_iterative,
    projective_cover_stratified,
)
from .validate import AlgebraFile, load_algebra, load_module, load_report, load_tower, write_json

RANGE_PATTERN = re.compile(r"^(-?\d+)\.\.(-?\d+)$")


def parse_range(text: str) -> List[int]:
    match = RANGE_PATTERN.match(text.strip())
    if not match:
        raise InputError(f"Range must look like a..b, got {text!r}")
    low, high = int(match.group(1)), int(match.group(2))
    return list(range(low, high + 1))


def parse_weight(text: str) -> Weight:
    parts = text.replace("(", "").replace(")", "").split(",")
    try:
        return Weight(*(int(p) for p in parts))
    except (TypeError, ValueError):
        raise InputError(f"Weight must look like a,b, got {text!r}")


def map_to_json(f: ModuleMap) -> Dict[str, Any]:
    return {v: f.components[v].to_json() for v in f.algebra.vertices}


def _category(loaded: AlgebraFile) -> QHCategory:
    return QHCategory(loaded.algebra, loaded.ordered, loaded.skew)


def _vertices(loaded: AlgebraFile, vertex: Optional[str]) -> List[str]:
    if vertex is None:
        return list(loaded.algebra.vertices)
    loaded.algebra.check_vertex(vertex)
    return [vertex]


# -- command handlers ---------------------------------------------------------

def cmd_validate(args) -> Dict[str, Any]:
    loaded = load_algebra(args.algebra)
    report = loaded.algebra.report()
    tables = {
        "vertices": list(loaded.algebra.vertices),
        "dimension": report.dimension,
        "projective_dims": report.projective_dims,
        "basis": [p.label() for p in report.basis],
        "ordered": loaded.ordered,
    }
    if args.module:
        tables["module"] = load_module(args.module, loaded.algebra)
    return build_report("validate", [CheckResult("validate", True, tables, {})])


def cmd_hom(args) -> Dict[str, Any]:
    loaded = load_algebra(args.algebra)
    X = load_module(args.source, loaded.algebra)
    Y = load_module(args.target, loaded.algebra)
    basis = hom_basis(X, Y)
    return build_report("hom", [
        CheckResult("hom", True, {"dim": len(basis)}, {"basis": [map_to_json(f) for f in basis]})
    ])


def cmd_ext1(args) -> Dict[str, Any]:
    loaded = load_algebra(args.algebra)
    B = load_module(args.source, loaded.algebra)
    A = load_module(args.target, loaded.algebra)
    data = ext1(B, A)
    return build_report("ext1", [
        CheckResult("ext1", True, {"dim": data.dim, "syzygy": data.syzygy},
                    {"representatives": [map_to_json(f) for f in data.representatives]})
    ])


def _standard_report(args, costandard: bool) -> Dict[str, Any]:
    loaded = load_algebra(args.algebra)
    category = _category(loaded)
    name = "costandard" if costandard else "standard"
    results = []
    for v in _vertices(loaded, args.vertex):
        obj = category.costandard_object(v) if costandard else category.standard_object(v)
        results.append(CheckResult(f"{name}[{v}]", obj.is_valid, {"module": obj.module}, {"map": map_to_json(obj.map)}))
    return build_report(name, results)


def cmd_standard(args) -> Dict[str, Any]:
    return _standard_report(args, costandard=False)


def cmd_costandard(args) -> Dict[str, Any]:
    return _standard_report(args, costandard=True)


def cmd_check_qh(args) -> Dict[str, Any]:
    category = _category(load_algebra(args.algebra))
    return build_report("check-qh", [category.check_quasihereditary(), category.hom_standard_costandard_table()])


def _filtration_check(category: QHCategory, X) -> Dict[str, Any]:
    filtration = category.canonical_std_filtration(X)
    conditions = {v: category.check_above_equivalence(X, v) for v in category.algebra.vertices}
    return {
        "filtration": filtration,
        "conditions": conditions,
        "agree": all(c.agree for c in conditions.values()),
    }


def cmd_filtration(args) -> Dict[str, Any]:
    loaded = load_algebra(args.algebra)
    category = _category(loaded)
    if args.module:
        X = load_module(args.module, loaded.algebra)
        found = _filtration_check(category, X)
        filtration = found["filtration"]
        steps = [
            {"vertex": s.vertex, "dims": s.subquotient.dims, "multiplicity": s.multiplicity,
             "hom_dim": s.hom_dim, "certified": s.certified}
            for s in filtration.steps
        ]
        above = {v: c._asdict() for v, c in found["conditions"].items()}
        return build_report("filtration", [
            CheckResult("filtration", filtration.certified,
                        {"chain": filtration.chain, "steps": steps, "additive": filtration.additive,
                         "brackets": category.bracket_multiplicities(X)}, {}),
            CheckResult("above-equivalence", found["agree"], {"conditions": above}, {}),
        ])
    if args.trials < 1:
        raise InputError("filtration needs --module or a positive --trials count")
    rng = random.Random(args.seed)
    uncertified, disagreeing = [], []
    for i in range(args.trials):
        X = random_module(loaded.algebra, rng, max_dim=args.max_dim)
        found = _filtration_check(category, X)
        if not found["filtration"].certified:
            uncertified.append({"trial": i, "module": X})
        if not found["agree"]:
            disagreeing.append({"trial": i, "module": X})
        log_trace(f"Trial {i}: dims {X.dims}")
    sample = {"trials": args.trials, "seed": args.seed, "max_dim": args.max_dim}
    return build_report("filtration", [
        CheckResult("filtration", not uncertified, sample, {"failures": uncertified}),
        CheckResult("above-equivalence", not disagreeing, sample, {"failures": disagreeing}),
    ])


def cmd_reciprocity(args) -> Dict[str, Any]:
    category = _category(load_algebra(args.algebra))
    return build_report("reciprocity", [category.reciprocity_table()])


def _stratified_tables(cover: StratifiedCover) -> Dict[str, Any]:
    levels = []
    for level in cover.levels():
        levels.append({
            "level": level.level,
            "diagram": level.diagram,
            "diagnostics": level.diagnostics,
            "final_checks": level.final_checks,
        })
    return {"levels": levels}


def _cover_report(args, injective: bool) -> Dict[str, Any]:
    loaded = load_algebra(args.algebra)
    category = _category(loaded)
    name = "injhull" if injective else "projcover"
    results = []
    for v in _vertices(loaded, args.vertex):
        reference = (indecomposable_injective if injective else indecomposable_projective)(loaded.algebra, v)
        if args.method == "iterative":
            module = (injective_hull_iterative if injective else projective_cover_iterative)(loaded.algebra, v)
            details: Dict[str, Any] = {}
            purity = None
        else:
            cover = (injective_hull_stratified if injective else projective_cover_stratified)(category, v)
            module = cover.module
            details = _stratified_tables(cover)
            purity = cover.purity
        iso = is_isomorphic(module, reference) if module is not None else None
        isomorphic = bool(iso)
        tables = {
            "dims": module.dims if module is not None else None,
            "isomorphic_to_reference": isomorphic,
        }
        witnesses = dict(details)
        if iso is not None and iso.witness is not None:
            witnesses["witness"] = map_to_json(iso.witness)
        results.append(CheckResult(f"{name}[{v}]", isomorphic, tables, witnesses))
        if purity is not None:
            results.append(CheckResult(f"purity[{v}]", purity.passed, {}, {"purity": purity}))
    return build_report(name, results, {"method": args.method})


def cmd_projcover(args) -> Dict[str, Any]:
    return _cover_report(args, injective=False)


def cmd_injhull(args) -> Dict[str, Any]:
    return _cover_report(args, injective=True)


def cmd_ext_support(args) -> Dict[str, Any]:
    loaded = load_algebra(args.algebra)
    category = _category(loaded)
    results = []
    for v in _vertices(loaded, args.vertex):
        support = category.ext1_support(v)
        kernel = category.standard_kernel_decomposition(v)
        cokernel = category.costandard_cokernel_decomposition(v)
        results.append(CheckResult(
            f"ext-support[{v}]",
            support.consistent,
            {
                "out": support.out_set,
                "in": support.in_set,
                "hom_from_kernel": support.hom_from_kernel,
                "hom_to_cokernel": support.hom_to_cokernel,
            },
            {
                "kernel": {"dims": kernel.module.dims, "predicted": kernel.predicted, "holds": kernel.holds},
                "cokernel": {"dims": cokernel.module.dims, "predicted": cokernel.predicted, "holds": cokernel.holds},
            },
        ))
    return build_report("ext-support", results)


def cmd_skew_check(args) -> Dict[str, Any]:
    loaded = load_algebra(args.algebra)
    if loaded.skew is None:
        raise InputError("skew-check needs an algebra file with a 'skew' labeling")
    violations = _category(loaded).check_skew_constraint(loaded.skew)
    return build_report("skew-check", [
        CheckResult("skew-check", not violations, {"skdeg": loaded.skew.skdeg}, {"violations": violations})
    ])


def block_algebra_json(block) -> Dict[str, Any]:
    """A block written in the algebra file format."""
    data = {
        "vertices": list(block.spec.vertices),
        "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in block.spec.arrows],
        "order": list(block.ordered.order),
        "strata": [list(s) for s in block.ordered.strata],
        "skew": dict(block.skew.skdeg),
    }
    if block.ordered.closure is not None:
        data["closure"] = sorted([list(p) for p in block.ordered.closure])
    return data


def cmd_nodal_block(args) -> Dict[str, Any]:
    block = build_block(args.n)
    if args.output:
        write_json(args.output, block_algebra_json(block))
        log_info(f"Block {args.n} written to {args.output}")
    return build_report("nodal-block", [
        CheckResult("nodal-block", True, {"block": block, "expected": block.expected},
                    {"block_leaks": block_leaks(args.n)})
    ])


def cmd_nodal_verify(args) -> Dict[str, Any]:
    return verify_block_range(parse_range(args.range), depth=args.depth)


def cmd_towers(args) -> Dict[str, Any]:
    sheaf = GradedSheaf(Support(args.support), parse_weight(args.twist))
    tor = tor_tower(sheaf, args.depth)
    ext = ext_tower(sheaf, args.depth)
    results = [CheckResult("towers", True, {"tor": tor, "ext": ext}, {})]
    if args.oracle:
        tor_oracle = tor_tower(sheaf, args.depth, oracle=True)
        ext_oracle = ext_tower(sheaf, args.depth, oracle=True)
        results.append(CheckResult(
            "oracle-agreement",
            tor_oracle == tor and ext_oracle == ext,
            {"tor": tor_oracle, "ext": ext_oracle},
            {},
        ))
    for path in args.fixture or []:
        recorded = load_tower(path)
        computed = tor_tower(recorded.sheaf, recorded.depth) if recorded.kind == "tor" \
            else ext_tower(recorded.sheaf, recorded.depth)
        results.append(CheckResult(f"fixture[{path}]", computed == recorded,
                                   {"recorded": recorded, "computed": computed}, {}))
    return build_report("towers", results)


def cmd_diff(args) -> Dict[str, Any]:
    differences = diff_reports(load_report(args.first), load_report(args.second))
    return build_report("diff", [CheckResult("diff", not differences, {"differences": differences}, {})])


COMMANDS: Dict[str, Callable[[argparse.Namespace], Dict[str, Any]]] = {
    "validate": cmd_validate,
    "hom": cmd_hom,
    "ext1": cmd_ext1,
    "standard": cmd_standard,
    "costandard": cmd_costandard,
    "check-qh": cmd_check_qh,
    "filtration": cmd_filtration,
    "reciprocity": cmd_reciprocity,
    "projcover": cmd_projcover,
    "injhull": cmd_injhull,
    "ext-support": cmd_ext_support,
    "skew-check": cmd_skew_check,
    "nodal-block": cmd_nodal_block,
    "nodal-verify": cmd_nodal_verify,
    "towers": cmd_towers,
    "diff": cmd_diff,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhworkbench",
        description="Quasi-hereditary structure of quiver module categories and the nodal example",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s validate --algebra fix-d3.json
  %(prog)s projcover --algebra fix-d3.json --vertex o --method stratified
  %(prog)s nodal-verify --range -3..3 --json
  %(prog)s towers --support C+ --twist 0,0 --depth 6 --oracle
        """,
    )
    parser.add_argument("--json", action="store_true", help="Print the canonical JSON report")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str, algebra: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="Print the canonical JSON report")
        if algebra:
            p.add_argument("--algebra", "-a", required=True, help="Algebra file (JSON)")
        return p

    p = command("validate", "Validate an algebra file and optionally a module file")
    p.add_argument("--module", "-m", help="Module file (JSON)")
    for name, help_text in (("hom", "Basis of Hom(source, target)"), ("ext1", "Ext¹(source, target)")):
        p = command(name, help_text)
        p.add_argument("--source", required=True, help="Module file")
        p.add_argument("--target", required=True, help="Module file")
    for name in ("standard", "costandard", "ext-support"):
        p = command(name, f"{name} objects per vertex")
        p.add_argument("--vertex", "-v", help="Single vertex (default: all)")
    command("check-qh", "Quasi-hereditary certificate")
    command("reciprocity", "Reciprocity table ⟨P(t):M(s)⟩ = [N(s):L(t)]")
    command("skew-check", "Check the skew-degree constraint of the file's labeling")
    p = command("filtration", "Canonical standard filtration of a module, or of random modules")
    p.add_argument("--module", "-m", help="Module file (JSON)")
    p.add_argument("--trials", type=int, default=0, help="Number of random modules when no --module is given")
    p.add_argument("--seed", type=int, default=0, help="Seed for the random modules (default: 0)")
    p.add_argument("--max-dim", type=int, default=3, help="Largest vertex dimension of a random module (default: 3)")
    for name in ("projcover", "injhull"):
        p = command(name, "Projective cover" if name == "projcover" else "Injective hull")
        p.add_argument("--vertex", "-v", help="Single vertex (default: all)")
        p.add_argument("--method", choices=["stratified", "iterative"], default="stratified")
    p = command("nodal-block", "Derive the block of shift index n", algebra=False)
    p.add_argument("--n", type=int, required=True, help="Shift index")
    p.add_argument("--output", "-o", help="Write the block as an algebra file")
    p = command("nodal-verify", "Verify every table of the nodal example", algebra=False)
    p.add_argument("--range", required=True, help="Shift indices a..b")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help=f"Tower depth (default: {DEFAULT_DEPTH})")
    p = command("towers", "Tor and Ext towers of a twisted structure sheaf", algebra=False)
    p.add_argument("--support", choices=[s.value for s in Support], required=True)
    p.add_argument("--twist", default="0,0", help="Weight a,b (default: 0,0)")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help=f"Truncation depth (default: {DEFAULT_DEPTH})")
    p.add_argument("--oracle", action="store_true", help="Cross-check against the computed minimal resolution")
    p.add_argument("--fixture", action="append", help="Recorded tower file to compare with")
    p = command("diff", "Structural difference of two reports", algebra=False)
    p.add_argument("first")
    p.add_argument("second")
    return parser


def _join_option_values(argv: Sequence[str]) -> List[str]:
    """Glue values such as "-3..3" to their option so argparse does not read them as flags."""
    out: List[str] = []
    items = list(argv)
    i = 0
    while i < len(items):
        if items[i] in ("--range", "--twist") and i + 1 < len(items):
            out.append(f"{items[i]}={items[i + 1]}")
            i += 2
        else:
            out.append(items[i])
            i += 1
    return out


def render_text(report: Dict[str, Any]) -> str:
    lines = [f"{report['command']}: {'PASS' if report['pass'] else 'FAIL'}"]
    for result in report["results"]:
        lines.append(f"{'PASS' if result['pass'] else 'FAIL'} {result['check']}")
        for key in sorted(result["tables"]):
            lines.append(f"  {key}: {json.dumps(result['tables'][key], sort_keys=True, ensure_ascii=False)}")
    return "\n".join(lines) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command; returns the exit code."""
    raw = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_option_values(raw))
    except SystemExit as e:
        return int(e.code or 0)
    as_json = getattr(args, "json", False)
    try:
        report = COMMANDS[args.command](args)
    except (WorkbenchError, ValueError, OSError) as e:
        log_error(f"{args.command}: {e}")
        if as_json:
            sys.stdout.write(canonical_json({"command": args.command, "pass": False, "error": str(e)}))
        return 2
    report = to_jsonable(report)
    if as_json:
        sys.stdout.write(canonical_json(report))
    else:
        sys.stdout.write(render_text(report))
    if not report["pass"]:
        log_warning(f"{args.command}: a check failed")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
