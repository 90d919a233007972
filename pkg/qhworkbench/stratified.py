"""
Projective covers built stratum by stratum, and the iterative oracle.

The stratified construction recurses over the strata from the closed end:
at each level the last stratum is open, the cover P_Z of the simple inside
the closed part is known, and two universal extensions produce the cover
at the current level. All auxiliary objects of the construction are kept
for diagnostics, and the result is verified independently before it is
returned.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Set, Tuple

from .errors import InputError, PreconditionError
from .homological import ext1_dim, hom_dim, universal_extension
from .logs import log_trace, log_warning
from .modules import (
    Module,
    ModuleMap,
    ShortExactSeq,
    compose,
    direct_sum,
    dual_module,
    factor_through_surjection,
    is_semisimple,
    kernel,
    largest_quotient_in,
    lift_along_surjection,
    lift_through_injection,
    map_from_projective,
    map_from_sum,
    radical_bases,
    simple_module,
)
from .qh import QHCategory

SEQUENCE_NAMES = (
    "S-Q-PZ",
    "R-P-Q",
    "R-D-S",
    "D-P-PZ",
    "K-M-S",
    "J-K-R",
    "J-M-D",
)


@dataclass(frozen=True)
class CoverDiagram:
    """The auxiliary objects of one level of the construction."""

    P_Z: Module
    S: Module
    Q: Module
    R: Module
    P: Module
    D: Module
    M: Module
    K: Module
    J: Module
    sequences: Dict[str, Optional[ShortExactSeq]]
    sequence_errors: Dict[str, str]
    B: Dict[str, int]
    E: Dict[str, int]
    F: Dict[str, int]
    F_bar: Dict[str, int]

    @property
    def sequences_valid(self) -> bool:
        return all(self.sequences.get(name) is not None for name in SEQUENCE_NAMES)

    def to_json(self) -> Dict[str, Any]:
        objects = {name: getattr(self, name).dims for name in ("P_Z", "S", "Q", "R", "P", "D", "M", "K", "J")}
        return {
            "objects": objects,
            "sequences": {name: self.sequences.get(name) is not None for name in SEQUENCE_NAMES},
            "sequence_errors": dict(self.sequence_errors),
            "B": dict(self.B),
            "E": dict(self.E),
            "F": dict(self.F),
            "F_bar": dict(self.F_bar),
        }


@dataclass(frozen=True)
class PurityReport:
    kernel_failures: List[Dict[str, Any]] = field(default_factory=list)
    surviving_ext1: Dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.kernel_failures and not self.surviving_ext1

    def to_json(self) -> Dict[str, Any]:
        return {"kernel_failures": list(self.kernel_failures), "surviving_ext1": dict(self.surviving_ext1)}


@dataclass(frozen=True)
class StratifiedCover:
    vertex: str
    level: int
    module: Optional[Module]
    candidate: Optional[Module]
    diagram: Optional[CoverDiagram]
    diagnostics: Dict[str, bool]
    final_checks: Dict[str, bool]
    purity: PurityReport
    inner: Optional["StratifiedCover"] = None

    @property
    def verified(self) -> bool:
        return self.module is not None

    def levels(self) -> List["StratifiedCover"]:
        """This level and every level below it, closed-most first."""
        chain = [] if self.inner is None else self.inner.levels()
        return chain + [self]


def _level_vertices(ordered, k: int) -> Set[str]:
    return {v for stratum in ordered.strata[:k + 1] for v in stratum}


def _check_open(ordered, k: int) -> None:
    for i in range(k):
        if ordered.in_boundary(k, i):
            raise PreconditionError(
                f"Stratum {list(ordered.strata[k])} is not open among the first {k + 1} strata"
            )


def _level_standard(category: QHCategory, t: str, level: Set[str]) -> Tuple[Module, ModuleMap]:
    """The standard object of t inside the subcategory of the level."""
    allowed = category.ordered.at_most(t) & level
    M, pi = largest_quotient_in(category.projective(t), allowed)
    phi = factor_through_surjection(pi, map_from_projective(category.simple(t), t, (1,)))
    return M, phi


def _kernel_failures(category: QHCategory, k: int, level: Set[str]) -> List[Dict[str, Any]]:
    open_stratum = category.ordered.strata[k]
    closed = level - set(open_stratum)
    failures = []
    for t in open_stratum:
        _, phi = _level_standard(category, t, level)
        K = kernel(phi).module
        predicted = {z: category.ext1_simple(t, z) if z in closed else 0 for z in category.algebra.vertices}
        semisimple = is_semisimple(K)
        if not semisimple or K.dims != predicted:
            failures.append({
                "level": k,
                "vertex": t,
                "semisimple": semisimple,
                "kernel_dims": dict(K.dims),
                "predicted": predicted,
            })
    return failures


def _ordered(category: QHCategory, vertices: Set[str]) -> List[str]:
    return [v for v in category.algebra.vertices if v in vertices]


def _try_sequence(name: str, build, sequences: Dict[str, Optional[ShortExactSeq]], errors: Dict[str, str]) -> None:
    try:
        sequences[name] = build()
    except InputError as e:
        sequences[name] = None
        errors[name] = str(e)


def _final_checks(category: QHCategory, s: str, P: Module, level: Set[str]) -> Tuple[Dict[str, bool], Dict[str, int]]:
    surviving = {}
    for t in _ordered(category, level):
        d = ext1_dim(P, category.simple(t))
        if d:
            surviving[t] = d
    top = {v: P.dims[v] - len(b) for v, b in radical_bases(P).items()}
    checks = {
        "projective": not surviving,
        "top": all(top[v] == (1 if v == s else 0) for v in category.algebra.vertices),
        "multiplicity": P.dims[s] == 1,
    }
    return checks, surviving


def _cover_at_level(category: QHCategory, s: str, k: int) -> StratifiedCover:
    ordered = category.ordered
    algebra = category.algebra
    _check_open(ordered, k)
    level = _level_vertices(ordered, k)
    open_stratum = set(ordered.strata[k])
    closed = level - open_stratum
    failures = _kernel_failures(category, k, level)

    if s in open_stratum:
        P, _ = _level_standard(category, s, level)
        checks, surviving = _final_checks(category, s, P, level)
        verified = all(checks.values())
        log_trace(f"Level {k}: {s} is open, cover dims {P.dimension_vector()}")
        return StratifiedCover(s, k, P if verified else None, P, None, {}, checks,
                               PurityReport(failures, surviving))

    inner = _cover_at_level(category, s, k - 1)
    failures = inner.purity.kernel_failures + failures
    if not inner.verified:
        return StratifiedCover(s, k, None, None, None, {}, {"inner": False},
                               PurityReport(failures, inner.purity.surviving_ext1), inner)
    P_Z = inner.module
    open_targets = _ordered(category, open_stratum)
    closed_targets = _ordered(category, closed)

    B = {t: ext1_dim(P_Z, category.simple(t)) for t in open_targets}
    first = universal_extension(P_Z, open_targets)
    S, Q = first.sub, first.mid
    E = {t: ext1_dim(Q, category.simple(t)) for t in closed_targets}
    F = {t: ext1_dim(S, category.simple(t)) for t in closed_targets}
    F_bar = {t: F[t] - E[t] for t in closed_targets}
    second = universal_extension(Q, closed_targets)
    R, P = second.sub, second.mid

    to_PZ = compose(first.proj, second.proj)
    D, d_incl = kernel(to_PZ)
    r_to_d = lift_through_injection(d_incl, second.incl)
    d_to_s = lift_through_injection(first.incl, compose(second.proj, d_incl))

    standards = {t: _level_standard(category, t, level) for t in open_targets}
    summand_vertices = [t for t in open_targets for _ in range(B[t])]
    M_sum = direct_sum(algebra, [standards[t][0] for t in summand_vertices])
    S_sum = direct_sum(algebra, [category.simple(t) for t in summand_vertices])
    M = M_sum.module
    m_to_s = map_from_sum(
        M_sum,
        [compose(S_sum.injections[i], standards[t][1]) for i, t in enumerate(summand_vertices)],
        S,
    )
    K, k_incl = kernel(m_to_s)
    m_to_d = lift_along_surjection(d_to_s, m_to_s)

    sequences: Dict[str, Optional[ShortExactSeq]] = {}
    errors: Dict[str, str] = {}
    sequences["S-Q-PZ"] = first
    sequences["R-P-Q"] = second
    _try_sequence("R-D-S", lambda: ShortExactSeq(R, D, S, r_to_d, d_to_s), sequences, errors)
    _try_sequence("D-P-PZ", lambda: ShortExactSeq(D, P, P_Z, d_incl, to_PZ), sequences, errors)
    _try_sequence("K-M-S", lambda: ShortExactSeq(K, M, S, k_incl, m_to_s), sequences, errors)
    if m_to_d is None:
        J = M
        for name in ("J-K-R", "J-M-D"):
            sequences[name] = None
            errors[name] = "M → S does not lift to D"
    else:
        J, j_incl = kernel(m_to_d)
        j_to_k = lift_through_injection(k_incl, j_incl)
        k_to_r = lift_through_injection(r_to_d, compose(m_to_d, k_incl))
        _try_sequence("J-K-R", lambda: ShortExactSeq(J, K, R, j_to_k, k_to_r), sequences, errors)
        _try_sequence("J-M-D", lambda: ShortExactSeq(J, M, D, j_incl, m_to_d), sequences, errors)

    diagram = CoverDiagram(P_Z, S, Q, R, P, D, M, K, J, sequences, errors, B, E, F, F_bar)
    diagnostics = {
        "inner-ext1-to-closed": all(ext1_dim(P_Z, category.simple(t)) == 0 for t in closed_targets),
        "d-hom-to-closed": all(hom_dim(D, category.simple(t)) == 0 for t in closed_targets),
        "d-ext1-to-open": all(ext1_dim(D, category.simple(t)) == 0 for t in open_targets),
        "d-hom-to-open": all(hom_dim(D, category.simple(t)) == B[t] for t in open_targets),
        "sequences": diagram.sequences_valid,
    }
    checks, surviving = _final_checks(category, s, P, level)
    verified = all(checks.values())
    if not verified:
        log_warning(f"Stratified cover of {s} at level {k} failed verification: {surviving}")
    log_trace(f"Level {k}: cover of {s} has dims {P.dimension_vector()}")
    return StratifiedCover(s, k, P if verified else None, P, diagram, diagnostics, checks,
                           PurityReport(failures, surviving), inner)


def projective_cover_stratified(category: QHCategory, s: str) -> StratifiedCover:
    """Projective cover of L(s) by recursion over the strata."""
    category.algebra.check_vertex(s)
    category.check_strata_semisimple()
    return _cover_at_level(category, s, len(category.ordered.strata) - 1)


def _opposite_category(category: QHCategory) -> QHCategory:
    return QHCategory(category.algebra.opposite(), category.ordered, category.skew)


def injective_hull_stratified(category: QHCategory, s: str) -> StratifiedCover:
    """Injective hull of L(s): the stratified cover over the opposite algebra, dualized."""
    cover = projective_cover_stratified(_opposite_category(category), s)
    hull = dual_module(cover.module, category.algebra) if cover.module is not None else None
    candidate = dual_module(cover.candidate, category.algebra) if cover.candidate is not None else None
    return StratifiedCover(s, cover.level, hull, candidate, cover.diagram, cover.diagnostics,
                           cover.final_checks, cover.purity, cover.inner)


def projective_cover_iterative(algebra: Any, s: str, max_steps: Optional[int] = None) -> Module:
    """Repeat universal extensions by every simple with nonzero Ext¹ until none remain.

    At most ``max_steps`` extensions are taken (default: the dimension of the
    algebra); a candidate that still has Ext¹ into a simple after that raises
    ``PreconditionError``.
    """
    X = simple_module(algebra, s)
    limit = algebra.dimension() if max_steps is None else max_steps
    for step in range(limit + 1):
        targets = [t for t in algebra.vertices if ext1_dim(X, simple_module(algebra, t))]
        if not targets:
            log_trace(f"Iterative cover of {s}: {step} steps")
            return X
        if step < limit:
            X = universal_extension(X, targets).mid
    raise PreconditionError(f"Iterative cover of {s} did not stabilize after {limit} extensions")


def injective_hull_iterative(algebra: Any, s: str, max_steps: Optional[int] = None) -> Module:
    return dual_module(projective_cover_iterative(algebra.opposite(), s, max_steps), algebra)
