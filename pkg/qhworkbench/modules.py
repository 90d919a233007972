"""
Representations of a quiver with relations.

A ``Module`` stores one vector space dimension per vertex and one matrix per
arrow (from the source space to the target space). The same classes serve
modules over a ``PathAlgebra`` and over an idempotent truncation, since both
expose ``vertices``, ``arrows`` and ``relation_defects``.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

from .errors import InputError
from .linalg import (
    Matrix,
    Vector,
    quotient_basis,
    rank,
    rank_kernel_image,
    solve,
    unit_vector,
)


@dataclass(frozen=True)
class Module:
    """An object of the category: dimension vector plus arrow actions."""

    algebra: Any
    dims: Dict[str, int]
    action: Dict[str, Matrix]

    def __post_init__(self):
        vertices = list(self.algebra.vertices)
        if sorted(self.dims) != sorted(vertices):
            raise InputError(f"Module dims must cover exactly the vertices {vertices}")
        for v, d in self.dims.items():
            if not isinstance(d, int) or d < 0:
                raise InputError(f"Vertex {v!r}: dimension must be a non-negative integer")
        names = [a.name for a in self.algebra.arrows]
        if sorted(self.action) != sorted(names):
            raise InputError(f"Module maps must cover exactly the arrows {names}")
        for a in self.algebra.arrows:
            m = self.action[a.name]
            expected = (self.dims[a.target], self.dims[a.source])
            if m.shape != expected:
                raise InputError(f"Arrow {a.name!r}: matrix shape {m.shape}, expected {expected}")
        defects = self.algebra.relation_defects(self.dims, self.action)
        if defects:
            raise InputError("; ".join(defects))

    @classmethod
    def build(cls, algebra: Any, dims: Dict[str, int], maps: Optional[Dict[str, Sequence[Sequence[Any]]]] = None) -> "Module":
        """Build from plain nested lists; missing arrows act by zero."""
        maps = maps or {}
        action = {}
        for a in algebra.arrows:
            rows, cols = dims[a.target], dims[a.source]
            if a.name in maps:
                action[a.name] = Matrix.from_json(maps[a.name], rows, cols)
            else:
                action[a.name] = Matrix.zeros(rows, cols)
        return cls(algebra, dict(dims), action)

    def dim(self, v: str) -> int:
        return self.dims[v]

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dimension_vector(self) -> Tuple[int, ...]:
        return tuple(self.dims[v] for v in self.algebra.vertices)

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def path_action(self, arrows: Sequence[str], source: str) -> Matrix:
        m = Matrix.identity(self.dims[source])
        for name in arrows:
            m = self.action[name] @ m
        return m

    def to_json(self) -> Dict[str, Any]:
        return {
            "dims": {v: self.dims[v] for v in self.algebra.vertices},
            "maps": {a.name: self.action[a.name].to_json() for a in self.algebra.arrows},
        }


@dataclass(frozen=True)
class ModuleMap:
    """A morphism of modules, given by one matrix per vertex."""

    source: Module
    target: Module
    components: Dict[str, Matrix]

    def __post_init__(self):
        if self.source.algebra != self.target.algebra:
            raise InputError("Module map between modules over different algebras")
        for v in self.source.algebra.vertices:
            m = self.components.get(v)
            expected = (self.target.dims[v], self.source.dims[v])
            if m is None or m.shape != expected:
                raise InputError(f"Vertex {v!r}: component must have shape {expected}")
        for a in self.source.algebra.arrows:
            left = self.components[a.target] @ self.source.action[a.name]
            right = self.target.action[a.name] @ self.components[a.source]
            if left != right:
                raise InputError(f"Arrow {a.name!r}: components do not intertwine the actions")

    @property
    def algebra(self):
        return self.source.algebra

    def is_injective(self) -> bool:
        return all(rank(self.components[v]) == self.source.dims[v] for v in self.algebra.vertices)

    def is_surjective(self) -> bool:
        return all(rank(self.components[v]) == self.target.dims[v] for v in self.algebra.vertices)

    def is_isomorphism(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.components.values())

    def flatten(self) -> Vector:
        """Coordinates in the space of vertexwise matrices (vertex order, row-major)."""
        return tuple(a for v in self.algebra.vertices for a in self.components[v].flatten())

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, {
            v: self.components[v] + other.components[v] for v in self.algebra.vertices
        })

    def scale(self, c: Fraction) -> "ModuleMap":
        return ModuleMap(self.source, self.target, {v: m.scale(c) for v, m in self.components.items()})


def compose(g: ModuleMap, f: ModuleMap) -> ModuleMap:
    """g ∘ f."""
    if f.target != g.source:
        raise InputError("Cannot compose: target of the first map is not the source of the second")
    return ModuleMap(f.source, g.target, {
        v: g.components[v] @ f.components[v] for v in f.algebra.vertices
    })


def identity_map(X: Module) -> ModuleMap:
    return ModuleMap(X, X, {v: Matrix.identity(X.dims[v]) for v in X.algebra.vertices})


def zero_map(X: Module, Y: Module) -> ModuleMap:
    return ModuleMap(X, Y, {v: Matrix.zeros(Y.dims[v], X.dims[v]) for v in X.algebra.vertices})


def map_from_vector(X: Module, Y: Module, coords: Sequence[Fraction]) -> ModuleMap:
    """Inverse of ``ModuleMap.flatten``."""
    components = {}
    offset = 0
    for v in X.algebra.vertices:
        r, c = Y.dims[v], X.dims[v]
        chunk = coords[offset:offset + r * c]
        components[v] = Matrix(r, c, tuple(tuple(chunk[i * c:(i + 1) * c]) for i in range(r)))
        offset += r * c
    return ModuleMap(X, Y, components)


@dataclass(frozen=True)
class ShortExactSeq:
    """0 → sub → mid → quot → 0."""

    sub: Module
    mid: Module
    quot: Module
    incl: ModuleMap
    proj: ModuleMap

    def __post_init__(self):
        problems = self.problems()
        if problems:
            raise InputError("Not a short exact sequence: " + "; ".join(problems))

    def problems(self) -> List[str]:
        found = []
        if self.incl.source != self.sub or self.incl.target != self.mid:
            found.append("inclusion does not go from sub to mid")
        if self.proj.source != self.mid or self.proj.target != self.quot:
            found.append("projection does not go from mid to quot")
        if found:
            return found
        if not self.incl.is_injective():
            found.append("inclusion is not injective")
        if not self.proj.is_surjective():
            found.append("projection is not surjective")
        if not compose(self.proj, self.incl).is_zero():
            found.append("composite is not zero")
        for v in self.mid.algebra.vertices:
            if self.sub.dims[v] + self.quot.dims[v] != self.mid.dims[v]:
                found.append(f"vertex {v!r}: dimensions do not add up")
        return found

    def is_split(self) -> bool:
        # Split iff the identity of quot lifts along proj.
        return lift_along_surjection(self.proj, identity_map(self.quot)) is not None


class DirectSum(NamedTuple):
    module: Module
    injections: List[ModuleMap]
    projections: List[ModuleMap]


class Subobject(NamedTuple):
    module: Module
    inclusion: ModuleMap


class Quotient(NamedTuple):
    module: Module
    projection: ModuleMap


class TopRadicalSocle(NamedTuple):
    top: Module
    top_map: ModuleMap
    radical: Module
    radical_inclusion: ModuleMap
    socle: Module
    socle_inclusion: ModuleMap


class ProjectiveCover(NamedTuple):
    module: Module
    map: ModuleMap
    generators: List[Tuple[str, Vector]]
    summands: DirectSum


# -- constructors -----------------------------------------------------------

def simple_module(algebra: Any, s: str) -> Module:
    algebra.check_vertex(s)
    return Module.build(algebra, {v: 1 if v == s else 0 for v in algebra.vertices})


def direct_sum(algebra: Any, summands: Sequence[Module]) -> DirectSum:
    dims = {v: sum(m.dims[v] for m in summands) for v in algebra.vertices}
    action = {
        a.name: Matrix.block_diagonal([m.action[a.name] for m in summands])
        if summands else Matrix.zeros(0, 0)
        for a in algebra.arrows
    }
    total = Module(algebra, dims, action)
    injections, projections = [], []
    offsets = {v: 0 for v in algebra.vertices}
    for m in summands:
        inj, prj = {}, {}
        for v in algebra.vertices:
            columns = [unit_vector(dims[v], offsets[v] + i) for i in range(m.dims[v])]
            inj[v] = Matrix.from_columns(columns, dims[v])
            prj[v] = inj[v].transpose()
            offsets[v] += m.dims[v]
        injections.append(ModuleMap(m, total, inj))
        projections.append(ModuleMap(total, m, prj))
    return DirectSum(total, injections, projections)


def map_from_sum(total: DirectSum, maps: Sequence[ModuleMap], target: Module) -> ModuleMap:
    """The map ⊕ M_i → target restricting to ``maps[i]`` on the i-th summand."""
    components = {}
    for v in target.algebra.vertices:
        block = Matrix.zeros(target.dims[v], 0)
        for f in maps:
            block = block.hstack(f.components[v])
        components[v] = block
    return ModuleMap(total.module, target, components)


def map_into_sum(source: Module, maps: Sequence[ModuleMap], total: DirectSum) -> ModuleMap:
    """The map source → ⊕ M_i with components ``maps[i]``."""
    components = {}
    for v in source.algebra.vertices:
        block = Matrix.zeros(0, source.dims[v])
        for f in maps:
            block = block.vstack(f.components[v])
        components[v] = block
    return ModuleMap(source, total.module, components)


@lru_cache(maxsize=None)
def indecomposable_projective(algebra: Any, s: str) -> Module:
    """P(s) = e_s A: basis of the space at t = basis paths from s to t."""
    algebra.check_vertex(s)
    dims = {t: len(algebra.basis[(s, t)]) for t in algebra.vertices}
    action = {}
    for a in algebra.arrows:
        columns = [
            algebra.reduce(s, a.target, p.arrows + (a.name,))
            for p in algebra.basis[(s, a.source)]
        ]
        action[a.name] = Matrix.from_columns(columns, dims[a.target])
    return Module(algebra, dims, action)


@lru_cache(maxsize=None)
def indecomposable_injective(algebra: Any, s: str) -> Module:
    """I(s), the dual of the projective at s over the opposite algebra."""
    return dual_module(indecomposable_projective(algebra.opposite(), s), algebra)


# -- duality ----------------------------------------------------------------

def dual_module(X: Module, algebra: Any = None) -> Module:
    """Vector-space dual, a module over the opposite algebra."""
    target_algebra = algebra if algebra is not None else X.algebra.opposite()
    return Module(target_algebra, dict(X.dims), X.algebra.dual_action(X.dims, X.action))


def dual_map(f: ModuleMap) -> ModuleMap:
    source = dual_module(f.target)
    target = dual_module(f.source, source.algebra)
    return ModuleMap(source, target, {v: m.transpose() for v, m in f.components.items()})


def dual_sequence(seq: ShortExactSeq) -> ShortExactSeq:
    incl = dual_map(seq.proj)
    proj = dual_map(seq.incl)
    return ShortExactSeq(incl.source, incl.target, proj.target, incl, proj)


# -- subobjects and quotients ----------------------------------------------

def _solve_columns(b: Matrix, m: Matrix) -> Matrix:
    """The matrix Y with b Y = m; b must have independent columns containing m's."""
    columns = []
    for j in range(m.cols):
        solution = solve(b, m.column(j))
        if solution is None:
            raise InputError("Subspace is not stable under the action")
        columns.append(solution.particular)
    return Matrix.from_columns(columns, b.cols)


def _right_inverse(m: Matrix) -> Matrix:
    columns = []
    for i in range(m.rows):
        solution = solve(m, unit_vector(m.rows, i))
        if solution is None:
            raise InputError("Map is not surjective")
        columns.append(solution.particular)
    return Matrix.from_columns(columns, m.cols)


def span_basis(vectors: Sequence[Vector], length: int) -> List[Vector]:
    if not vectors:
        return []
    return rank_kernel_image(Matrix.from_columns(list(vectors), length)).image


def submodule_from_bases(X: Module, bases: Dict[str, List[Vector]]) -> Subobject:
    """The submodule spanned vertexwise by ``bases`` (must be stable)."""
    inclusion = {v: Matrix.from_columns(bases[v], X.dims[v]) for v in X.algebra.vertices}
    dims = {v: len(bases[v]) for v in X.algebra.vertices}
    action = {
        a.name: _solve_columns(inclusion[a.target], X.action[a.name] @ inclusion[a.source])
        for a in X.algebra.arrows
    }
    sub = Module(X.algebra, dims, action)
    return Subobject(sub, ModuleMap(sub, X, inclusion))


def quotient_by(X: Module, bases: Dict[str, List[Vector]]) -> Quotient:
    """X modulo the stable subspaces ``bases``."""
    quotients = {v: quotient_basis(X.dims[v], bases[v]) for v in X.algebra.vertices}
    dims = {v: quotients[v].dim for v in X.algebra.vertices}
    action = {
        a.name: quotients[a.target].projection @ X.action[a.name] @ quotients[a.source].section
        for a in X.algebra.arrows
    }
    quot = Module(X.algebra, dims, action)
    return Quotient(quot, ModuleMap(X, quot, {v: quotients[v].projection for v in X.algebra.vertices}))


def generated_submodule(X: Module, generators: Dict[str, List[Vector]]) -> Dict[str, List[Vector]]:
    """Vertexwise bases of the smallest submodule containing ``generators``."""
    bases = {v: span_basis(generators.get(v, []), X.dims[v]) for v in X.algebra.vertices}
    changed = True
    while changed:
        changed = False
        for a in X.algebra.arrows:
            images = [X.action[a.name].apply(b) for b in bases[a.source]]
            grown = span_basis(bases[a.target] + images, X.dims[a.target])
            if len(grown) > len(bases[a.target]):
                bases[a.target] = grown
                changed = True
    return bases


def kernel(f: ModuleMap) -> Subobject:
    bases = {v: rank_kernel_image(f.components[v]).kernel for v in f.algebra.vertices}
    return submodule_from_bases(f.source, bases)


def image(f: ModuleMap) -> Subobject:
    bases = {v: rank_kernel_image(f.components[v]).image for v in f.algebra.vertices}
    return submodule_from_bases(f.target, bases)


def cokernel(f: ModuleMap) -> Quotient:
    bases = {v: rank_kernel_image(f.components[v]).image for v in f.algebra.vertices}
    return quotient_by(f.target, bases)


def factor_through_surjection(p: ModuleMap, f: ModuleMap) -> ModuleMap:
    """The unique g with g ∘ p = f, for surjective p and f vanishing on ker p."""
    components = {}
    for v in p.algebra.vertices:
        components[v] = f.components[v] @ _right_inverse(p.components[v])
    g = ModuleMap(p.target, f.target, components)
    if compose(g, p) != f:
        raise InputError("Map does not vanish on the kernel")
    return g


def lift_through_injection(i: ModuleMap, f: ModuleMap) -> ModuleMap:
    """The unique g with i ∘ g = f, for injective i containing the image of f."""
    components = {v: _solve_columns(i.components[v], f.components[v]) for v in i.algebra.vertices}
    return ModuleMap(f.source, i.source, components)


def lift_along_surjection(p: ModuleMap, f: ModuleMap) -> Optional[ModuleMap]:
    """Some g with p ∘ g = f, or None if f does not lift."""
    from .homological import hom_basis

    basis = hom_basis(f.source, p.source)
    if not basis:
        return zero_map(f.source, p.source) if f.is_zero() else None
    images = [compose(p, g).flatten() for g in basis]
    solution = solve(Matrix.from_columns(images, len(f.flatten())), f.flatten())
    if solution is None:
        return None
    total = zero_map(f.source, p.source)
    for c, g in zip(solution.particular, basis):
        if c != 0:
            total = total + g.scale(c)
    return total


# -- radical, socle, top -----------------------------------------------------

def radical_bases(X: Module) -> Dict[str, List[Vector]]:
    bases = {}
    for v in X.algebra.vertices:
        images = [col for a in X.algebra.arrows if a.target == v for col in X.action[a.name].columns()]
        bases[v] = span_basis(images, X.dims[v])
    return bases


def socle_bases(X: Module) -> Dict[str, List[Vector]]:
    bases = {}
    for v in X.algebra.vertices:
        stacked = Matrix.zeros(0, X.dims[v])
        for a in X.algebra.arrows:
            if a.source == v:
                stacked = stacked.vstack(X.action[a.name])
        bases[v] = rank_kernel_image(stacked).kernel
    return bases


def top_radical_socle(X: Module) -> TopRadicalSocle:
    rad = radical_bases(X)
    top = quotient_by(X, rad)
    radical = submodule_from_bases(X, rad)
    socle = submodule_from_bases(X, socle_bases(X))
    return TopRadicalSocle(top.module, top.projection, radical.module, radical.inclusion,
                           socle.module, socle.inclusion)


def is_semisimple(X: Module) -> bool:
    return all(m.is_zero() for m in X.action.values())


def radical_series_dims(X: Module) -> List[Tuple[int, ...]]:
    """Dimension vectors of X ⊃ rad X ⊃ rad² X ⊃ ... ⊃ 0."""
    series = [X.dimension_vector()]
    current = X
    while not current.is_zero():
        current = submodule_from_bases(current, radical_bases(current)).module
        series.append(current.dimension_vector())
    return series


# -- projective covers and injective hulls ------------------------------------

def map_from_projective(X: Module, s: str, x: Sequence[Fraction]) -> ModuleMap:
    """The map P(s) → X sending the idempotent e_s to x ∈ X_s."""
    algebra = X.algebra
    P = indecomposable_projective(algebra, s)
    components = {}
    for t in algebra.vertices:
        columns = [X.path_action(p.arrows, s).apply(x) for p in algebra.basis[(s, t)]]
        components[t] = Matrix.from_columns(columns, X.dims[t])
    return ModuleMap(P, X, components)


def projective_cover_map(X: Module) -> ProjectiveCover:
    """Canonical cover ⊕ P(s)^{dim top_s} → X, generated by lifts of the top."""
    algebra = X.algebra
    rad = radical_bases(X)
    generators: List[Tuple[str, Vector]] = []
    for s in algebra.vertices:
        q = quotient_basis(X.dims[s], rad[s])
        for j in q.representatives:
            generators.append((s, unit_vector(X.dims[s], j)))
    summands = direct_sum(algebra, [indecomposable_projective(algebra, s) for s, _ in generators])
    phi = map_from_sum(summands, [map_from_projective(X, s, x) for s, x in generators], X)
    return ProjectiveCover(summands.module, phi, generators, summands)


def injective_hull_map(X: Module) -> Tuple[Module, ModuleMap]:
    """Injective hull X → ⊕ I(s)^{dim soc_s}, dual to the projective cover."""
    dual = dual_module(X)
    cover = projective_cover_map(dual)
    psi = dual_map(cover.map)
    psi = ModuleMap(X, psi.target, psi.components)
    return psi.target, psi


# -- sampling ---------------------------------------------------------------

def random_module(algebra: Any, rng: random.Random, max_dim: int = 3, attempts: int = 200) -> Module:
    """A random module with dims ≤ max_dim, re-sampled until the relations hold."""
    for _ in range(attempts):
        dims = {v: rng.randint(0, max_dim) for v in algebra.vertices}
        maps = {
            a.name: [[rng.choice((-1, 0, 0, 1, 2)) for _ in range(dims[a.source])]
                     for _ in range(dims[a.target])]
            for a in algebra.arrows
        }
        try:
            return Module.build(algebra, dims, maps)
        except InputError:
            continue
    # Relations too restrictive for random entries: fall back to a semisimple module.
    dims = {v: rng.randint(0, max_dim) for v in algebra.vertices}
    return Module.build(algebra, dims)


# -- Serre truncations -------------------------------------------------------

def _check_allowed(algebra: Any, allowed) -> set:
    allowed = set(allowed)
    for v in allowed:
        algebra.check_vertex(v)
    return allowed


def largest_quotient_in(X: Module, allowed) -> Quotient:
    """The largest quotient of X with composition factors in ``allowed``."""
    allowed = _check_allowed(X.algebra, allowed)
    forbidden = {
        t: [unit_vector(X.dims[t], i) for i in range(X.dims[t])]
        for t in X.algebra.vertices if t not in allowed
    }
    return quotient_by(X, generated_submodule(X, forbidden))


def largest_sub_in(X: Module, allowed) -> Subobject:
    """The largest submodule of X with composition factors in ``allowed``."""
    algebra = X.algebra
    allowed = _check_allowed(algebra, allowed)
    bases = {}
    for v in algebra.vertices:
        stacked = Matrix.zeros(0, X.dims[v])
        for t in algebra.vertices:
            if t in allowed:
                continue
            for p in algebra.basis[(v, t)]:
                stacked = stacked.vstack(X.path_action(p.arrows, v))
        bases[v] = rank_kernel_image(stacked).kernel
    return submodule_from_bases(X, bases)


def subquotient(X: Module, upper: Dict[str, List[Vector]], lower: Dict[str, List[Vector]]) -> Module:
    """upper / lower for stable subspaces lower ⊆ upper of X."""
    sub, inclusion = submodule_from_bases(X, upper)
    inner = {
        v: [_solve_columns(inclusion.components[v], Matrix.from_columns([b], X.dims[v])).column(0)
            for b in lower[v]]
        for v in X.algebra.vertices
    }
    return quotient_by(sub, inner).module
