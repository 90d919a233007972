"""
The nodal curve X = Spec k[x,y]/(xy) with its two-dimensional torus action.

Simple objects are twisted structure sheaves of the orbit closures, shifted
by their staggered degree. Blocks of the module category are derived from
the geometry: arrows come from degree-0 Ext¹ computed with graded free
resolutions, and the resulting quivers are run through the quasi-hereditary
engine to check every table of simple, costandard, projective and injective
objects.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

from .algebra import AlgebraSpec, path_algebra
from .errors import InputError, PreconditionError
from .graded import (
    DEFAULT_DEPTH,
    PI_MINUS,
    PI_PLUS,
    ZERO_WEIGHT,
    GradedSheaf,
    Support,
    Weight,
    equivariant_ext,
    ext_tower,
    tor_tower,
)
from .homological import ext1_dim, hom_basis
from .isomorphism import is_isomorphic
from .logs import log_info, log_report, log_trace, log_warning
from .modules import (
    Module,
    indecomposable_injective,
    indecomposable_projective,
    is_semisimple,
    kernel,
)
from .qh import OrderedSimples, QHCategory, SkewLabeling
from .reports import CheckResult, build_report
from .stratified import StratifiedCover, injective_hull_stratified, projective_cover_stratified

# L0(m, n) joins the block of n for |m| ≤ |n| + DEFAULT_BLOCK_WINDOW
DEFAULT_BLOCK_WINDOW = 1


@dataclass(frozen=True)
class Cocharacter:
    a: int
    b: int


CHI_PLUS = Cocharacter(-1, 2)
CHI_MINUS = Cocharacter(1, 2)
CHI_ZERO = Cocharacter(0, 1)


def pairing(chi: Cocharacter, weight: Weight) -> int:
    return chi.a * weight.a + chi.b * weight.b


@dataclass(frozen=True)
class NodalConfig:
    """Perversity, orbit dimensions and s-structure cocharacters per orbit."""

    perversity: Dict[Support, int] = field(
        default_factory=lambda: {Support.C_PLUS: 0, Support.C_MINUS: 0, Support.C0: 0}
    )
    orbit_dims: Dict[Support, int] = field(
        default_factory=lambda: {Support.C_PLUS: 1, Support.C_MINUS: 1, Support.C0: 0}
    )
    cocharacters: Dict[Support, Cocharacter] = field(
        default_factory=lambda: {Support.C_PLUS: CHI_PLUS, Support.C_MINUS: CHI_MINUS, Support.C0: CHI_ZERO}
    )


DEFAULT_CONFIG = NodalConfig()


def staggered_shift(sheaf: GradedSheaf, config: NodalConfig = DEFAULT_CONFIG) -> int:
    """The shift d at which O_Y(λ)[d] lies in the heart."""
    if sheaf.support not in config.cocharacters:
        raise InputError(f"{sheaf.label()}: support {sheaf.support.value} has no declared cocharacter")
    return pairing(config.cocharacters[sheaf.support], sheaf.twist) - config.perversity[sheaf.support]


def is_aligned(sheaf: GradedSheaf, config: NodalConfig = DEFAULT_CONFIG) -> bool:
    return sheaf.support in config.cocharacters and sheaf.shift == staggered_shift(sheaf, config)


def skew_degree(sheaf: GradedSheaf, config: NodalConfig = DEFAULT_CONFIG) -> int:
    if not is_aligned(sheaf, config):
        raise InputError(f"{sheaf.label()} is not heart-aligned")
    return 2 * staggered_shift(sheaf, config) - config.orbit_dims[sheaf.support]


def restrict_open(sheaf: GradedSheaf, branch: Support) -> Optional[int]:
    """Label n of the line bundle L_±(n) obtained by restricting to an open orbit; None when zero."""
    if branch not in (Support.C_PLUS, Support.C_MINUS):
        raise InputError(f"Cannot restrict to {branch.value}: not an open orbit")
    if sheaf.support not in (Support.X, branch):
        return None
    chi = CHI_PLUS if branch is Support.C_PLUS else CHI_MINUS
    return pairing(chi, sheaf.twist)


# -- the objects of the example ----------------------------------------------

def simple_plus(n: int) -> GradedSheaf:
    return GradedSheaf(Support.C_PLUS, Weight(n - 2, n - 1), n)


def simple_minus(n: int) -> GradedSheaf:
    return GradedSheaf(Support.C_MINUS, Weight(-n + 2, n - 1), n)


def simple_zero(m: int, k: int) -> GradedSheaf:
    return GradedSheaf(Support.C0, Weight(m, k), k)


def costandard_plus(n: int) -> GradedSheaf:
    return GradedSheaf(Support.C_PLUS, Weight(n, n), n)


def costandard_minus(n: int) -> GradedSheaf:
    return GradedSheaf(Support.C_MINUS, Weight(-n, n), n)


def is_simple_sheaf(sheaf: GradedSheaf) -> bool:
    if sheaf.support is Support.C_PLUS:
        return sheaf == simple_plus(sheaf.shift)
    if sheaf.support is Support.C_MINUS:
        return sheaf == simple_minus(sheaf.shift)
    if sheaf.support is Support.C0:
        return sheaf.shift == sheaf.twist.b
    return False


def vertex_name(sheaf: GradedSheaf) -> str:
    if sheaf.support is Support.C_PLUS:
        return f"L+({sheaf.shift})"
    if sheaf.support is Support.C_MINUS:
        return f"L-({sheaf.shift})"
    if sheaf.support is Support.C0:
        return f"L0({sheaf.twist.a},{sheaf.twist.b})"
    raise InputError(f"{sheaf.label()} is not a simple object")


def ext1_between_simples(A: GradedSheaf, B: GradedSheaf) -> int:
    """dim Ext¹(A, B) in the heart, as Ext^{1 + shift(B) − shift(A)} of the unshifted sheaves."""
    for s in (A, B):
        if not is_simple_sheaf(s):
            raise InputError(f"{s.label()} is not one of the simple objects")
    return equivariant_ext(A.unshifted(), B.unshifted(), 1 + B.shift - A.shift)


# -- blocks ---------------------------------------------------------------------

@dataclass(frozen=True)
class NodalBlock:
    n: int
    spec: AlgebraSpec
    objects: Dict[str, GradedSheaf]
    ordered: OrderedSimples
    skew: SkewLabeling
    expected: Dict[str, Dict[str, Dict[str, int]]]

    def category(self) -> QHCategory:
        return QHCategory(path_algebra(self.spec), self.ordered, self.skew)

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "vertices": list(self.spec.vertices),
            "arrows": [[a.name, a.source, a.target] for a in self.spec.arrows],
            "objects": {v: s.label() for v, s in self.objects.items()},
            "ordered": self.ordered.to_json(),
            "skew": dict(self.skew.skdeg),
        }


def block_simples(n: int, window: int = DEFAULT_BLOCK_WINDOW) -> List[GradedSheaf]:
    """Candidate simples of block n: C0 simples first, then L-(n), then L+(n)."""
    bound = abs(n) + window
    return [simple_zero(m, n) for m in range(-bound, bound + 1)] + [simple_minus(n), simple_plus(n)]


def _derived_arrows(simples: List[GradedSheaf]) -> List[Tuple[str, str, str]]:
    arrows = []
    for A in simples:
        for B in simples:
            count = ext1_between_simples(A, B)
            source, target = vertex_name(A), vertex_name(B)
            for k in range(count):
                name = f"{source}->{target}" if count == 1 else f"{source}->{target}#{k}"
                arrows.append((name, source, target))
    return arrows


def _expected_tables(n: int, names: List[str]) -> Dict[str, Dict[str, Dict[str, int]]]:
    """The tables of simple, costandard, projective and injective objects of the block."""
    unit = {v: {w: int(v == w) for w in names} for v in names}
    plus, minus = vertex_name(simple_plus(n)), vertex_name(simple_minus(n))
    zero_plus, zero_minus = vertex_name(simple_zero(n, n)), vertex_name(simple_zero(-n, n))
    costandard = {v: dict(unit[v]) for v in names}
    costandard[plus][zero_plus] = 1
    costandard[minus][zero_minus] = 1
    projective = {v: dict(unit[v]) for v in names}
    if n == 0:
        projective[zero_plus][plus] = 1
        projective[zero_plus][minus] = 1
    else:
        projective[zero_plus] = dict(costandard[plus])
        projective[zero_minus] = dict(costandard[minus])
    return {
        "standard": {v: dict(unit[v]) for v in names},
        "costandard": costandard,
        "projective": projective,
        "injective": {v: dict(costandard[v]) for v in names},
    }


def build_block(n: int, config: NodalConfig = DEFAULT_CONFIG, window: int = DEFAULT_BLOCK_WINDOW) -> NodalBlock:
    simples = block_simples(n, window)
    names = [vertex_name(s) for s in simples]
    arrows = _derived_arrows(simples)
    targets = {t for _, _, t in arrows}
    if any(src in targets for _, src, _ in arrows):
        raise PreconditionError(f"Block {n}: derived quiver has composable arrows and would need relations")
    spec = AlgebraSpec.build(names, arrows)
    zero = [v for v, s in zip(names, simples) if s.support is Support.C0]
    strata = (tuple(zero), (vertex_name(simple_minus(n)),), (vertex_name(simple_plus(n)),))
    ordered = OrderedSimples(tuple(names), strata, frozenset({(0, 1), (0, 2)}))
    skew = SkewLabeling({v: skew_degree(s, config) for v, s in zip(names, simples)})
    log_trace(f"Block {n}: {len(names)} simples, arrows {[a[0] for a in arrows]}")
    return NodalBlock(n, spec, dict(zip(names, simples)), ordered, skew, _expected_tables(n, names))


def block_leaks(n: int, window: int = DEFAULT_BLOCK_WINDOW) -> List[Dict[str, Any]]:
    """Nonzero Ext¹ between a simple of block n and a simple of block n ± 1."""
    inside = block_simples(n, window)
    outside = block_simples(n - 1, window) + block_simples(n + 1, window)
    leaks = []
    for A in inside:
        for B in outside:
            for source, target in ((A, B), (B, A)):
                d = ext1_between_simples(source, target)
                if d:
                    leaks.append({"from": vertex_name(source), "to": vertex_name(target), "dim": d})
    return leaks


# -- verification ---------------------------------------------------------------

def _dims_table(modules: Dict[str, Any]) -> Dict[str, Dict[str, int]]:
    return {v: dict(M.dims) for v, M in modules.items()}


def _shift_check(block: NodalBlock, config: NodalConfig) -> CheckResult:
    objects = dict(block.objects)
    objects[f"N+({block.n})"] = costandard_plus(block.n)
    objects[f"N-({block.n})"] = costandard_minus(block.n)
    shifts = {name: [s.shift, staggered_shift(s, config)] for name, s in objects.items()}
    return CheckResult("shifts", all(a == b for a, b in shifts.values()), {"printed_vs_computed": shifts}, {})


def _ext1_agreement(block: NodalBlock, category: QHCategory) -> CheckResult:
    mismatches = []
    for v, A in block.objects.items():
        for w, B in block.objects.items():
            geometric = ext1_between_simples(A, B)
            algebraic = ext1_dim(category.simple(v), category.simple(w))
            if geometric != algebraic:
                mismatches.append({"from": v, "to": w, "geometry": geometric, "algebra": algebraic})
    return CheckResult("ext1-agreement", not mismatches, {}, {"mismatches": mismatches})


def _table_check(name: str, computed: Dict[str, Dict[str, int]], expected: Dict[str, Dict[str, int]],
                 extra_failures: Iterable[str] = ()) -> CheckResult:
    failures = [v for v in expected if computed.get(v) != expected[v]] + list(extra_failures)
    return CheckResult(name, not failures, {"computed": computed, "expected": expected}, {"failures": failures})


def cover_radical(cover: StratifiedCover, category: QHCategory) -> Optional[Module]:
    """Kernel of the stratified cover onto its simple top, or None if there is no single such map."""
    if not cover.verified:
        return None
    maps = hom_basis(cover.module, category.simple(cover.vertex))
    if len(maps) != 1:
        return None
    return kernel(maps[0]).module


def _cover_checks(block: NodalBlock, category: QHCategory) -> List[CheckResult]:
    vertices = list(block.spec.vertices)
    covers = {v: projective_cover_stratified(category, v) for v in vertices}
    hulls = {v: injective_hull_stratified(category, v) for v in vertices}
    cover_failures = []
    for v, c in covers.items():
        if not c.verified or not is_isomorphic(c.module, indecomposable_projective(category.algebra, v)):
            cover_failures.append(f"{v}: stratified cover does not match P({v})")
    hull_failures = []
    for v, h in hulls.items():
        if not h.verified or not is_isomorphic(h.module, indecomposable_injective(category.algebra, v)):
            hull_failures.append(f"{v}: stratified hull does not match I({v})")
    if block.n == 0:
        top = vertex_name(simple_zero(0, 0))
        expected = {v: int(v in (vertex_name(simple_plus(0)), vertex_name(simple_minus(0)))) for v in vertices}
        radical = cover_radical(covers[top], category)
        if radical is None or not is_semisimple(radical) or radical.dims != expected:
            cover_failures.append(f"{top}: kernel of the cover is not L+(0) ⊕ L-(0)")
    computed_p = {v: dict(c.module.dims) if c.module is not None else {} for v, c in covers.items()}
    computed_i = {v: dict(h.module.dims) if h.module is not None else {} for v, h in hulls.items()}
    return [
        _table_check("projective-covers", computed_p, block.expected["projective"], cover_failures),
        _table_check("injective-hulls", computed_i, block.expected["injective"], hull_failures),
    ]


def verify_block(block: NodalBlock, config: NodalConfig = DEFAULT_CONFIG) -> List[CheckResult]:
    category = block.category()
    standards = {v: category.standard_object(v).module for v in block.spec.vertices}
    costandards = {v: category.costandard_object(v).module for v in block.spec.vertices}
    split = [
        v for v, N in costandards.items()
        if N.total_dim() == 2 and is_semisimple(N)
    ]
    skew_violations = category.check_skew_constraint(block.skew)
    results = [
        _shift_check(block, config),
        _ext1_agreement(block, category),
        category.check_quasihereditary(),
        category.reciprocity_table(),
        _table_check("standards-simple", _dims_table(standards), block.expected["standard"]),
        _table_check("costandards", _dims_table(costandards), block.expected["costandard"],
                     [f"{v}: costandard object splits" for v in split]),
    ]
    results.extend(_cover_checks(block, category))
    results.append(CheckResult("skew-constraint", not skew_violations, {"skdeg": dict(block.skew.skdeg)},
                               {"violations": skew_violations}))
    return results


def branch_leading_terms_check(depth: int = DEFAULT_DEPTH, twist: Weight = ZERO_WEIGHT) -> CheckResult:
    """Leading Tor/Ext terms of the branch structure sheaves; higher terms are recorded as surplus."""
    tables: Dict[str, Any] = {}
    passed = True
    for support, pi in ((Support.C_PLUS, PI_PLUS), (Support.C_MINUS, PI_MINUS)):
        sheaf = GradedSheaf(support, twist)
        tor = tor_tower(sheaf, depth)
        ext = ext_tower(sheaf, depth)
        leading = tor.at(0) == [twist] and not ext.at(0) and (depth < 1 or ext.at(1) == [twist + pi])
        passed = passed and leading
        tables[support.value] = {
            "leading_terms": leading,
            "tor_surplus": [[i, w] for i, w in tor.entries if i >= 1],
            "ext_surplus": [[i, w] for i, w in ext.entries if i >= 2],
        }
    return CheckResult("branch-leading-terms", passed, tables, {})


def verify_block_range(n_values: Iterable[int], depth: int = DEFAULT_DEPTH,
                    config: NodalConfig = DEFAULT_CONFIG) -> Dict[str, Any]:
    """Build and check every block in the range; blocks are reported in increasing n."""
    results: List[CheckResult] = []
    blocks = []
    leaks = {}
    for n in sorted(set(n_values)):
        block = build_block(n, config)
        block_results = verify_block(block, config)
        for r in block_results:
            results.append(CheckResult(f"block[{n}].{r.check}", r.passed, r.tables, r.witnesses))
        blocks.append(block)
        leaks[str(n)] = block_leaks(n)
        failed = [r.check for r in block_results if not r.passed]
        if failed:
            log_warning(f"Block {n}: failed {failed}")
        else:
            log_info(f"Block {n}: all checks passed")
    if blocks:
        results.append(branch_leading_terms_check(depth))
        n_failed = sum(1 for r in results if not r.passed)
        log_report(f"Blocks {blocks[0].n}..{blocks[-1].n}: {len(results)} checks, {n_failed} failed")
    return build_report("nodal-verify", results, {"blocks": blocks, "block_leaks": leaks})
