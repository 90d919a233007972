"""
Restriction to an open set of vertices and its two adjoints.

For the idempotent e = Σ_{s open} e_s the truncated algebra eAe is presented
by generators (every nontrivial basis path between open vertices) and its
multiplication table. ``lower_extension`` is F ⊗ eA, ``upper_extension`` is
its dual construction Hom(Ae, F), and the intermediate extension is the image
of the canonical map between them.
"""

from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Tuple

from .algebra import Arrow, Path, PathAlgebra
from .errors import InputError
from .linalg import Matrix, inverse, unit_vector
from .logs import log_trace
from .modules import (
    DirectSum,
    Module,
    ModuleMap,
    direct_sum,
    dual_module,
    factor_through_surjection,
    generated_submodule,
    image,
    indecomposable_projective,
    map_from_projective,
    map_from_sum,
    quotient_by,
)


class TruncatedAlgebra:
    """eAe for the idempotent of a set of open vertices."""

    def __init__(self, base: PathAlgebra, open_vertices: Iterable[str]):
        wanted = set(open_vertices)
        for v in wanted:
            base.check_vertex(v)
        self.base = base
        self.vertices: Tuple[str, ...] = tuple(v for v in base.vertices if v in wanted)
        self.generators: Dict[str, Path] = {}
        for s in self.vertices:
            for t in self.vertices:
                for p in base.basis[(s, t)]:
                    if p.arrows:
                        self.generators[p.label()] = p
        self.arrows: Tuple[Arrow, ...] = tuple(
            Arrow(name, p.source, p.target) for name, p in self.generators.items()
        )
        self._opposite: Optional["TruncatedAlgebra"] = None

    def check_vertex(self, v: str) -> None:
        if v not in self.vertices:
            raise InputError(f"Vertex {v!r} is not in the open set {list(self.vertices)}")

    def path_operator(self, dims: Dict[str, int], action: Dict[str, Matrix],
                      arrows: Tuple[str, ...], source: str, target: str) -> Matrix:
        """Action of an arbitrary path of the base algebra between open vertices."""
        total = Matrix.zeros(dims[target], dims[source])
        if not arrows:
            return Matrix.identity(dims[source])
        coords = self.base.reduce(source, target, arrows)
        for c, p in zip(coords, self.base.basis[(source, target)]):
            if c == 0:
                continue
            term = action[p.label()] if p.arrows else Matrix.identity(dims[source])
            total = total + term.scale(c)
        return total

    def relation_defects(self, dims: Dict[str, int], action: Dict[str, Matrix]) -> List[str]:
        defects = []
        for first in self.arrows:
            for second in self.arrows:
                if first.target != second.source:
                    continue
                product = action[second.name] @ action[first.name]
                word = self.generators[first.name].arrows + self.generators[second.name].arrows
                expected = self.path_operator(dims, action, word, first.source, second.target)
                if product != expected:
                    defects.append(f"Product {first.name}·{second.name} does not match the multiplication table")
        return defects

    def dual_action(self, dims: Dict[str, int], action: Dict[str, Matrix]) -> Dict[str, Matrix]:
        op = self.opposite()
        dual = {}
        for name, q in op.generators.items():
            # q runs target → source in the base algebra
            forward = tuple(reversed(q.arrows))
            dual[name] = self.path_operator(dims, action, forward, q.target, q.source).transpose()
        return dual

    def opposite(self) -> "TruncatedAlgebra":
        if self._opposite is None:
            op = TruncatedAlgebra(self.base.opposite(), self.vertices)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def __eq__(self, other) -> bool:
        return (isinstance(other, TruncatedAlgebra) and self.base == other.base
                and self.vertices == other.vertices)

    def __hash__(self) -> int:
        return hash((self.base, self.vertices))

    def __repr__(self) -> str:
        return f"TruncatedAlgebra(open={list(self.vertices)}, generators={list(self.generators)})"


@lru_cache(maxsize=None)
def truncation(base: PathAlgebra, open_vertices: FrozenSet[str]) -> TruncatedAlgebra:
    return TruncatedAlgebra(base, open_vertices)


def restrict_to_open(X: Module, open_vertices: Iterable[str]) -> Module:
    """j*X: the spaces at open vertices with every path between them acting."""
    T = truncation(X.algebra, frozenset(open_vertices))
    dims = {v: X.dims[v] for v in T.vertices}
    action = {name: X.path_action(p.arrows, p.source) for name, p in T.generators.items()}
    return Module(T, dims, action)


def restrict_map(f: ModuleMap, open_vertices: Iterable[str]) -> ModuleMap:
    source = restrict_to_open(f.source, open_vertices)
    target = restrict_to_open(f.target, open_vertices)
    return ModuleMap(source, target, {v: f.components[v] for v in source.algebra.vertices})


class LowerExtension(NamedTuple):
    module: Module
    projection: ModuleMap
    summands: DirectSum
    generators: List[Tuple[str, int]]
    unit: Dict[str, Matrix]


class OpenAdjoints(NamedTuple):
    lower: Module
    upper: Module
    canonical: ModuleMap
    lower_unit: Dict[str, Matrix]
    upper_counit: Dict[str, Matrix]


def lower_extension(F: Module) -> LowerExtension:
    """j_! F = F ⊗_{eAe} eA as a quotient of ⊕_s P(s) ⊗ F_s."""
    T = F.algebra
    A = T.base
    generators = [(s, i) for s in T.vertices for i in range(F.dims[s])]
    summands = direct_sum(A, [indecomposable_projective(A, s) for s, _ in generators])
    G = summands.module
    position = {g: k for k, g in enumerate(generators)}

    def element(k: int, t: str, coords) -> Tuple:
        return summands.injections[k].components[t].apply(coords)

    relations: Dict[str, list] = {v: [] for v in A.vertices}
    for name, q in T.generators.items():
        s, t = q.source, q.target
        image_of = F.action[name]
        for i in range(F.dims[s]):
            # F(q) f_i ⊗ e_t − f_i ⊗ q
            vec = [Fraction(0)] * G.dims[t]
            fq = image_of.column(i)
            for j, c in enumerate(fq):
                if c != 0:
                    at_t = element(position[(t, j)], t, unit_vector(len(A.basis[(t, t)]), 0))
                    vec = [x + c * y for x, y in zip(vec, at_t)]
            moved = element(position[(s, i)], t, A.reduce(s, t, q.arrows))
            vec = [x - y for x, y in zip(vec, moved)]
            relations[t].append(tuple(vec))
    bases = generated_submodule(G, relations)
    lower, projection = quotient_by(G, bases)
    unit = {}
    for s in T.vertices:
        columns = [
            projection.components[s].apply(element(position[(s, i)], s, unit_vector(len(A.basis[(s, s)]), 0)))
            for i in range(F.dims[s])
        ]
        unit[s] = Matrix.from_columns(columns, lower.dims[s])
    log_trace(f"j_! : {F.dimension_vector()} → {lower.dimension_vector()}")
    return LowerExtension(lower, projection, summands, generators, unit)


def upper_extension(F: Module) -> Tuple[Module, Dict[str, Matrix]]:
    """j_* F together with the counit (j_* F)_s → F_s at open vertices."""
    dual_low = lower_extension(dual_module(F))
    upper = dual_module(dual_low.module)
    counit = {s: m.transpose() for s, m in dual_low.unit.items()}
    return upper, counit


def open_adjoints(F: Module) -> OpenAdjoints:
    """Both extensions of an eAe-module and the canonical map j_! F → j_* F."""
    if not isinstance(F.algebra, TruncatedAlgebra):
        raise InputError("open_adjoints expects a module over a truncated algebra")
    low = lower_extension(F)
    upper, counit = upper_extension(F)
    images = []
    for s, i in low.generators:
        theta = inverse(counit[s])
        images.append(map_from_projective(upper, s, theta.column(i)))
    lifted = map_from_sum(low.summands, images, upper)
    canonical = factor_through_surjection(low.projection, lifted)
    return OpenAdjoints(low.module, upper, canonical, low.unit, counit)


def intermediate_extension(F: Module) -> Module:
    """j_!* F, the image of the canonical map j_! F → j_* F."""
    adjoints = open_adjoints(F)
    return image(adjoints.canonical).module
