"""
Quasi-hereditary structure of a module category.

``QHCategory`` binds a validated algebra to an ordering of its simples and a
stratification. Standard objects are truncations of projectives, costandard
objects truncations of injectives; the remaining checks are built from Hom
and Ext¹ dimensions between them.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Set, Tuple

from .errors import InputError, PreconditionError
from .homological import ext1_dim, hom_basis, hom_dim
from .isomorphism import is_isomorphic
from .logs import log_trace
from .modules import (
    Module,
    ModuleMap,
    Subobject,
    cokernel,
    compose,
    direct_sum,
    factor_through_surjection,
    image,
    indecomposable_injective,
    indecomposable_projective,
    is_semisimple,
    kernel,
    largest_quotient_in,
    largest_sub_in,
    map_from_projective,
    map_from_sum,
    simple_module,
    socle_bases,
)
from .linalg import Matrix
from .reports import CheckResult


@dataclass(frozen=True)
class OrderedSimples:
    """A total order on the simples and a stratification, closed-most stratum first.

    ``closure`` lists pairs (i, j) of stratum indices meaning stratum i lies in
    the boundary of stratum j. When omitted the strata form a chain.
    """

    order: Tuple[str, ...]
    strata: Tuple[Tuple[str, ...], ...]
    closure: Optional[FrozenSet[Tuple[int, int]]] = None

    def validate(self, vertices: Sequence[str]) -> None:
        if sorted(self.order) != sorted(vertices) or len(set(self.order)) != len(self.order):
            raise InputError(f"order must list every vertex exactly once: {list(vertices)}")
        flat = [v for stratum in self.strata for v in stratum]
        if sorted(flat) != sorted(vertices) or len(set(flat)) != len(flat):
            raise InputError("strata must partition the vertex set")
        if any(not stratum for stratum in self.strata):
            raise InputError("strata must be non-empty")
        for i, j in self.closure or ():
            if not (0 <= i < len(self.strata) and 0 <= j < len(self.strata)) or i == j:
                raise InputError(f"closure pair {[i, j]} does not name two distinct strata")
        for i, earlier in enumerate(self.strata):
            for later in self.strata[i + 1:]:
                for s in earlier:
                    for t in later:
                        if self.position(s) > self.position(t):
                            raise PreconditionError(
                                f"Order is incompatible with strata: {s!r} (closed) must precede {t!r}"
                            )
        below = self._strictly_below
        last = len(self.strata) - 1
        for i in range(last):
            if last in below.get(i, set()):
                raise PreconditionError("The last stratum must be open: it lies in the closure of another")

    @classmethod
    def chain(cls, order: Sequence[str]) -> "OrderedSimples":
        """One stratum per vertex, ordered like ``order``."""
        return cls(tuple(order), tuple((v,) for v in order))

    def position(self, v: str) -> int:
        return self.order.index(v)

    def precedes(self, s: str, t: str) -> bool:
        """s ≺ t (strict)."""
        return self.position(s) < self.position(t)

    def at_most(self, s: str) -> Set[str]:
        """{t : t ≼ s}."""
        return {t for t in self.order if self.position(t) <= self.position(s)}

    def above(self, s: str) -> List[str]:
        return [t for t in self.order if self.position(t) > self.position(s)]

    def stratum_of(self, v: str) -> int:
        for i, stratum in enumerate(self.strata):
            if v in stratum:
                return i
        raise InputError(f"Unknown vertex {v!r}")

    @cached_property
    def _strictly_below(self) -> Dict[int, Set[int]]:
        """For each stratum j, the strata in its boundary (transitively closed)."""
        n = len(self.strata)
        if self.closure is None:
            return {j: set(range(j)) for j in range(n)}
        below: Dict[int, Set[int]] = {j: set() for j in range(n)}
        for i, j in self.closure:
            below[j].add(i)
        changed = True
        while changed:
            changed = False
            for j in range(n):
                extra = set().union(*(below[i] for i in below[j])) - below[j]
                if extra:
                    below[j] |= extra
                    changed = True
        return below

    def in_boundary(self, i: int, j: int) -> bool:
        """Stratum i lies in the boundary of stratum j."""
        return i in self._strictly_below[j]

    def in_closure(self, i: int, j: int) -> bool:
        return i == j or self.in_boundary(i, j)

    def comparable(self, i: int, j: int) -> bool:
        return self.in_boundary(i, j) or self.in_boundary(j, i)

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"order": list(self.order), "strata": [list(s) for s in self.strata]}
        if self.closure is not None:
            data["closure"] = sorted([list(p) for p in self.closure])
        return data


@dataclass(frozen=True)
class SkewLabeling:
    skdeg: Dict[str, int] = field(default_factory=dict)


class StandardObject(NamedTuple):
    module: Module
    map: ModuleMap
    is_valid: bool


class AboveEquivalence(NamedTuple):
    factors_below: bool
    no_hom_from_standards: bool
    no_hom_to_costandards: bool

    @property
    def agree(self) -> bool:
        return len({self.factors_below, self.no_hom_from_standards, self.no_hom_to_costandards}) == 1


class FiltrationStep(NamedTuple):
    vertex: str
    subquotient: Module
    multiplicity: int
    hom_dim: int
    certified: bool


class StdFiltration(NamedTuple):
    chain: List[Tuple[int, ...]]
    steps: List[FiltrationStep]
    additive: bool

    @property
    def certified(self) -> bool:
        return self.additive and all(step.certified for step in self.steps)


class Decomposition(NamedTuple):
    module: Module
    predicted: Dict[str, int]
    holds: bool


class Ext1Support(NamedTuple):
    out_set: List[str]
    in_set: List[str]
    hom_from_kernel: Dict[str, int]
    hom_to_cokernel: Dict[str, int]
    consistent: bool


class QHCategory:
    """A module category with an order on its simples and a stratification."""

    def __init__(self, algebra: Any, ordered: OrderedSimples, skew: Optional[SkewLabeling] = None):
        ordered.validate(algebra.vertices)
        self.algebra = algebra
        self.ordered = ordered
        self.skew = skew
        self._standards: Dict[str, StandardObject] = {}
        self._costandards: Dict[str, StandardObject] = {}
        self._ext1_simple: Dict[Tuple[str, str], int] = {}

    # -- basic objects ------------------------------------------------------

    def simple(self, s: str) -> Module:
        return simple_module(self.algebra, s)

    def projective(self, s: str) -> Module:
        return indecomposable_projective(self.algebra, s)

    def injective(self, s: str) -> Module:
        return indecomposable_injective(self.algebra, s)

    def ext1_simple(self, s: str, t: str) -> int:
        """dim Ext¹(L(s), L(t))."""
        key = (s, t)
        if key not in self._ext1_simple:
            self._ext1_simple[key] = ext1_dim(self.simple(s), self.simple(t))
        return self._ext1_simple[key]

    def check_strata_semisimple(self) -> None:
        for stratum in self.ordered.strata:
            for s in stratum:
                for t in stratum:
                    if self.ext1_simple(s, t):
                        raise PreconditionError(
                            f"Stratum is not Ext¹-free: Ext¹(L({s}), L({t})) ≠ 0"
                        )

    # -- standard and costandard objects --------------------------------------

    def standard_object(self, s: str) -> StandardObject:
        if s not in self._standards:
            allowed = self.ordered.at_most(s)
            M, pi = largest_quotient_in(self.projective(s), allowed)
            top = map_from_projective(self.simple(s), s, (1,))
            phi = factor_through_surjection(pi, top)
            self._standards[s] = StandardObject(M, phi, M.dims[s] == 1)
        return self._standards[s]

    def costandard_object(self, s: str) -> StandardObject:
        if s not in self._costandards:
            allowed = self.ordered.at_most(s)
            N, iota = largest_sub_in(self.injective(s), allowed)
            L = self.simple(s)
            socle = socle_bases(N)[s]
            components = {v: Matrix.zeros(N.dims[v], L.dims[v]) for v in self.algebra.vertices}
            if socle:
                components[s] = Matrix.from_columns([socle[0]], N.dims[s])
            psi = ModuleMap(L, N, components)
            self._costandards[s] = StandardObject(N, psi, N.dims[s] == 1)
        return self._costandards[s]

    def standard_kernel(self, s: str) -> Subobject:
        """K(s), the kernel of M(s) → L(s)."""
        return kernel(self.standard_object(s).map)

    def costandard_cokernel(self, s: str) -> Module:
        """J(s), the cokernel of L(s) → N(s)."""
        return cokernel(self.costandard_object(s).map).module

    # -- certificates -------------------------------------------------------

    def _hom_ext_pairs(self) -> List[Tuple[str, str]]:
        pairs = []
        for s in self.ordered.order:
            for t in self.ordered.order:
                i, j = self.ordered.stratum_of(s), self.ordered.stratum_of(t)
                if not self.ordered.in_closure(i, j) or (i == j and s != t):
                    pairs.append((s, t))
        return pairs

    def check_quasihereditary(self) -> CheckResult:
        vertices = list(self.ordered.order)
        standard_valid = {s: self.standard_object(s).is_valid for s in vertices}
        costandard_valid = {s: self.costandard_object(s).is_valid for s in vertices}
        hom_ext_failures = []
        for s, t in self._hom_ext_pairs():
            M, N, L = self.standard_object(s).module, self.costandard_object(s).module, self.simple(t)
            values = {
                "hom(M,L)": hom_dim(M, L),
                "ext1(M,L)": ext1_dim(M, L),
                "hom(L,N)": hom_dim(L, N),
                "ext1(L,N)": ext1_dim(L, N),
            }
            for name, value in values.items():
                if value:
                    hom_ext_failures.append({"s": s, "t": t, "group": name, "dim": value})
        passed = all(standard_valid.values()) and all(costandard_valid.values()) and not hom_ext_failures
        log_trace(f"Quasi-hereditary certificate: {passed}")
        return CheckResult(
            "check-qh",
            passed,
            {
                "standard_valid": standard_valid,
                "costandard_valid": costandard_valid,
                "standard_dims": {s: self.standard_object(s).module.dims for s in vertices},
                "costandard_dims": {s: self.costandard_object(s).module.dims for s in vertices},
            },
            {"hom_ext_failures": hom_ext_failures},
        )

    def check_above_equivalence(self, X: Module, s: str) -> AboveEquivalence:
        above = self.ordered.above(s)
        return AboveEquivalence(
            all(X.dims[t] == 0 for t in above),
            all(hom_dim(self.standard_object(t).module, X) == 0 for t in above),
            all(hom_dim(X, self.costandard_object(t).module) == 0 for t in above),
        )

    def bracket_multiplicities(self, X: Module) -> Dict[str, Dict[str, int]]:
        """⟨X:M(s)⟩ = dim Hom(X, N(s)) and ⟨X:N(s)⟩ = dim Hom(M(s), X)."""
        return {
            "standard": {s: hom_dim(X, self.costandard_object(s).module) for s in self.ordered.order},
            "costandard": {s: hom_dim(self.standard_object(s).module, X) for s in self.ordered.order},
        }

    def reciprocity_table(self) -> CheckResult:
        """Rows t, columns s: ⟨P(t):M(s)⟩ against [N(s):L(t)]."""
        vertices = list(self.algebra.vertices)
        brackets = [
            [hom_dim(self.projective(t), self.costandard_object(s).module) for s in vertices]
            for t in vertices
        ]
        multiplicities = [[self.costandard_object(s).module.dims[t] for s in vertices] for t in vertices]
        return CheckResult(
            "reciprocity",
            brackets == multiplicities,
            {"vertices": vertices, "brackets": brackets, "multiplicities": multiplicities},
            {},
        )

    def hom_standard_costandard_table(self) -> CheckResult:
        """dim Hom(M(t), N(s)): the identity matrix on a quasi-hereditary category."""
        vertices = list(self.algebra.vertices)
        table = [
            [hom_dim(self.standard_object(t).module, self.costandard_object(s).module) for s in vertices]
            for t in vertices
        ]
        expected = [[1 if s == t else 0 for s in vertices] for t in vertices]
        return CheckResult("hom-standard-costandard", table == expected, {"vertices": vertices, "hom": table}, {})

    # -- filtrations ----------------------------------------------------------

    def canonical_std_filtration(self, X: Module) -> StdFiltration:
        """X = X_1 ⊃ X_2 ⊃ ... ⊃ 0 with X_i/X_{i+1} an essential quotient of copies of M(s_i)."""
        steps: List[FiltrationStep] = []
        current = X
        to_current: Optional[ModuleMap] = None
        bottom_up: List[Tuple[int, ...]] = []
        while not current.is_zero():
            candidates = [
                s for s in self.ordered.order
                if hom_dim(current, self.costandard_object(s).module) > 0
            ]
            if not candidates:
                break
            s = candidates[-1]
            M = self.standard_object(s).module
            maps = hom_basis(M, current)
            summands = direct_sum(self.algebra, [M] * len(maps))
            evaluation = map_from_sum(summands, maps, current)
            piece, inclusion = image(evaluation)
            expected = hom_dim(current, self.costandard_object(s).module)
            steps.append(FiltrationStep(s, piece, piece.dims[s], expected, piece.dims[s] == expected))
            quotient, projection = cokernel(inclusion)
            to_current = projection if to_current is None else compose(projection, to_current)
            bottom_up.append(kernel(to_current).module.dimension_vector())
            current = quotient
        steps.reverse()
        chain = [X.dimension_vector()] + list(reversed(bottom_up))[1:]
        if not X.is_zero():
            chain.append(tuple(0 for _ in X.dims))
        totals = tuple(sum(step.subquotient.dims[v] for step in steps) for v in self.algebra.vertices)
        return StdFiltration(chain, steps, current.is_zero() and totals == X.dimension_vector())

    # -- structure of K(s) and J(s) -----------------------------------------

    def _predicted(self, s: str, outgoing: bool) -> Dict[str, int]:
        i = self.ordered.stratum_of(s)
        predicted = {}
        for t in self.algebra.vertices:
            if self.ordered.in_boundary(self.ordered.stratum_of(t), i):
                predicted[t] = self.ext1_simple(s, t) if outgoing else self.ext1_simple(t, s)
            else:
                predicted[t] = 0
        return predicted

    def _semisimple_with_dims(self, dims: Dict[str, int]) -> Module:
        summands = [self.simple(t) for t in self.algebra.vertices for _ in range(dims[t])]
        return direct_sum(self.algebra, summands).module

    def standard_kernel_decomposition(self, s: str) -> Decomposition:
        K = self.standard_kernel(s).module
        predicted = self._predicted(s, outgoing=True)
        holds = is_semisimple(K) and bool(is_isomorphic(K, self._semisimple_with_dims(predicted)))
        return Decomposition(K, predicted, holds)

    def costandard_cokernel_decomposition(self, s: str) -> Decomposition:
        J = self.costandard_cokernel(s)
        predicted = self._predicted(s, outgoing=False)
        holds = is_semisimple(J) and bool(is_isomorphic(J, self._semisimple_with_dims(predicted)))
        return Decomposition(J, predicted, holds)

    # -- skew degrees and Ext¹ support --------------------------------------

    def check_skew_constraint(self, labeling: SkewLabeling) -> List[str]:
        violations = []
        for s in self.algebra.vertices:
            for t in self.algebra.vertices:
                if not self.ext1_simple(s, t):
                    continue
                i, j = self.ordered.stratum_of(s), self.ordered.stratum_of(t)
                if i == j:
                    violations.append(f"Ext¹(L({s}), L({t})) ≠ 0 inside one stratum")
                elif not self.ordered.comparable(i, j):
                    violations.append(f"Ext¹(L({s}), L({t})) ≠ 0 between incomparable strata")
                if s in labeling.skdeg and t in labeling.skdeg:
                    if labeling.skdeg[t] != labeling.skdeg[s] - 1:
                        violations.append(
                            f"Ext¹(L({s}), L({t})) ≠ 0 but skdeg {labeling.skdeg[s]} → {labeling.skdeg[t]}"
                        )
                else:
                    violations.append(f"Ext¹(L({s}), L({t})) ≠ 0 but a skew degree is missing")
        return violations

    def ext1_support(self, s: str) -> Ext1Support:
        self.algebra.check_vertex(s)
        out_set = [t for t in self.algebra.vertices if self.ext1_simple(s, t)]
        in_set = [t for t in self.algebra.vertices if self.ext1_simple(t, s)]
        K = self.standard_kernel(s).module
        J = self.costandard_cokernel(s)
        i = self.ordered.stratum_of(s)
        hom_k, hom_j = {}, {}
        consistent = True
        for t in self.algebra.vertices:
            hom_k[t] = hom_dim(K, self.simple(t))
            hom_j[t] = hom_dim(self.simple(t), J)
            # Hom(K(s), L(t)) ≅ Ext¹(L(s), L(t)) unless stratum(s) lies in the boundary of stratum(t)
            if not self.ordered.in_boundary(i, self.ordered.stratum_of(t)):
                if hom_k[t] != self.ext1_simple(s, t) or hom_j[t] != self.ext1_simple(t, s):
                    consistent = False
        return Ext1Support(out_set, in_set, hom_k, hom_j, consistent)
