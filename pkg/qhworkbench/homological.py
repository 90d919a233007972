"""
Hom spaces, Ext¹ and extensions.

Ext¹(B, A) is computed from the canonical presentation 0 → Ω → P₀ → B → 0
(P₀ the projective cover of B) as the cokernel of Hom(P₀, A) → Hom(Ω, A).
Classes are coordinates in the basis picked out by ``quotient_basis``.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

from .errors import InputError
from .linalg import Matrix, QuotientBasis, Vector, quotient_basis, rank_kernel_image, solve
from .logs import log_trace
from .modules import (
    Module,
    ModuleMap,
    ProjectiveCover,
    ShortExactSeq,
    compose,
    direct_sum,
    dual_module,
    dual_sequence,
    factor_through_surjection,
    kernel,
    cokernel,
    lift_through_injection,
    map_from_projective,
    map_from_sum,
    map_from_vector,
    map_into_sum,
    projective_cover_map,
    simple_module,
    zero_map,
)


def _check_same_algebra(X: Module, Y: Module) -> None:
    if X.algebra != Y.algebra:
        raise InputError("Modules are defined over different algebras")


def hom_basis(X: Module, Y: Module) -> List[ModuleMap]:
    """Basis of Hom(X, Y) as the nullspace of the intertwiner equations."""
    _check_same_algebra(X, Y)
    algebra = X.algebra
    offsets: Dict[str, int] = {}
    n = 0
    for v in algebra.vertices:
        offsets[v] = n
        n += Y.dims[v] * X.dims[v]
    if n == 0:
        return []

    def unknown(v: str, i: int, k: int) -> int:
        return offsets[v] + i * X.dims[v] + k

    rows = []
    for a in algebra.arrows:
        u, v = a.source, a.target
        xa, ya = X.action[a.name], Y.action[a.name]
        # f_v X_a - Y_a f_u = 0, entry (i, j)
        for i in range(Y.dims[v]):
            for j in range(X.dims[u]):
                row = [Fraction(0)] * n
                for k in range(X.dims[v]):
                    row[unknown(v, i, k)] += xa.entries[k][j]
                for l in range(Y.dims[u]):
                    row[unknown(u, l, j)] -= ya.entries[i][l]
                rows.append(row)
    null = rank_kernel_image(Matrix.from_rows(rows, cols=n)).kernel
    return [map_from_vector(X, Y, v) for v in null]


def hom_dim(X: Module, Y: Module) -> int:
    return len(hom_basis(X, Y))


def composition_multiplicity(X: Module, s: str) -> int:
    """[X : L(s)], read off the dimension vector."""
    X.algebra.check_vertex(s)
    return X.dims[s]


@dataclass(frozen=True)
class ExtClass:
    """An element of Ext¹(source, target) in canonical coordinates."""

    source: Module
    target: Module
    coordinates: Tuple[Fraction, ...]


@dataclass(frozen=True)
class Ext1Data:
    source: Module
    target: Module
    cover: ProjectiveCover
    syzygy: Module
    syzygy_inclusion: ModuleMap
    hom_syzygy: List[ModuleMap]
    quotient: QuotientBasis

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def representatives(self) -> List[ModuleMap]:
        """Maps Ω → A representing the canonical basis classes."""
        return [self.hom_syzygy[i] for i in self.quotient.representatives]

    def coordinates(self, g: ModuleMap) -> Vector:
        """Class of a map Ω → A."""
        if not self.hom_syzygy:
            return ()
        columns = [h.flatten() for h in self.hom_syzygy]
        solution = solve(Matrix.from_columns(columns, len(g.flatten())), g.flatten())
        if solution is None:
            raise InputError("Map is not a homomorphism from the syzygy")
        return self.quotient.projection.apply(solution.particular)

    def representing_map(self, coordinates: Sequence[Fraction]) -> ModuleMap:
        if len(coordinates) != self.dim:
            raise InputError(f"Ext class has {len(coordinates)} coordinates, expected {self.dim}")
        total = zero_map(self.syzygy, self.target)
        for c, rep in zip(coordinates, self.representatives):
            if c != 0:
                total = total + rep.scale(Fraction(c))
        return total


def presentation(B: Module) -> Tuple[ProjectiveCover, Module, ModuleMap]:
    """The canonical presentation: cover, syzygy Ω and its inclusion into P₀."""
    cover = projective_cover_map(B)
    omega, iota = kernel(cover.map)
    return cover, omega, iota


def ext1(B: Module, A: Module) -> Ext1Data:
    _check_same_algebra(A, B)
    cover, omega, iota = presentation(B)
    hom_omega = hom_basis(omega, A)
    if hom_omega:
        columns = [h.flatten() for h in hom_omega]
        H = Matrix.from_columns(columns, len(columns[0]))
        restricted = []
        for f in hom_basis(cover.module, A):
            solution = solve(H, compose(f, iota).flatten())
            restricted.append(solution.particular)
        quotient = quotient_basis(len(hom_omega), restricted)
    else:
        quotient = quotient_basis(0, [])
    data = Ext1Data(B, A, cover, omega, iota, hom_omega, quotient)
    log_trace(f"Ext¹: dim {data.dim} (Hom(Ω,A) dim {len(hom_omega)})")
    return data


def ext1_dim(B: Module, A: Module) -> int:
    return ext1(B, A).dim


def pushout_sequence(iota: ModuleMap, phi: ModuleMap, g: ModuleMap) -> ShortExactSeq:
    """0 → A → E → B → 0 from 0 → Ω → P₀ → B → 0 pushed out along g: Ω → A."""
    algebra = iota.algebra
    A, P0, B = g.target, iota.target, phi.target
    total = direct_sum(algebra, [A, P0])
    relations = map_into_sum(iota.source, [g, iota.scale(Fraction(-1))], total)
    E, pi = cokernel(relations)
    incl = compose(pi, total.injections[0])
    proj = factor_through_surjection(pi, map_from_sum(total, [zero_map(A, B), phi], B))
    return ShortExactSeq(A, E, B, incl, proj)


def extension_module(c: ExtClass) -> ShortExactSeq:
    """Realize an Ext¹ class as a short exact sequence 0 → A → E → B → 0."""
    data = ext1(c.source, c.target)
    g = data.representing_map(c.coordinates)
    return pushout_sequence(data.syzygy_inclusion, data.cover.map, g)


def extension_class(seq: ShortExactSeq) -> ExtClass:
    """Coordinates of the class of a short exact sequence."""
    data = ext1(seq.quot, seq.sub)
    E = seq.mid
    lifts = []
    for s, x in data.cover.generators:
        solution = solve(seq.proj.components[s], x)
        lifts.append(map_from_projective(E, s, solution.particular))
    psi = map_from_sum(data.cover.summands, lifts, E)
    g = lift_through_injection(seq.incl, compose(psi, data.syzygy_inclusion))
    return ExtClass(seq.quot, seq.sub, tuple(data.coordinates(g)))


def _ordered_targets(algebra: Any, targets: Sequence[str]) -> List[str]:
    wanted = set(targets)
    for t in wanted:
        algebra.check_vertex(t)
    return [v for v in algebra.vertices if v in wanted]


def universal_extension(B: Module, targets: Sequence[str]) -> ShortExactSeq:
    """0 → S → Q → B → 0 with S = ⊕ Ext¹(B, L(t))* ⊗ L(t), classified by the identity."""
    algebra = B.algebra
    cover, omega, iota = presentation(B)
    summands, maps = [], []
    for t in _ordered_targets(algebra, targets):
        data = ext1(B, simple_module(algebra, t))
        for rep in data.representatives:
            summands.append(data.target)
            maps.append(rep)
    S = direct_sum(algebra, summands)
    g = map_into_sum(omega, maps, S)
    log_trace(f"Universal extension: {len(summands)} simple summands")
    return pushout_sequence(iota, cover.map, g)


def universal_coextension(A: Module, targets: Sequence[str]) -> ShortExactSeq:
    """0 → A → E → T → 0 with T = ⊕ Ext¹(L(t), A)* ⊗ L(t); dual of universal_extension."""
    return dual_sequence(universal_extension(dual_module(A), targets))


def ext1_table(B: Module, targets: Sequence[str]) -> Dict[str, int]:
    """dim Ext¹(B, L(t)) for each target t."""
    algebra = B.algebra
    return {t: ext1(B, simple_module(algebra, t)).dim for t in _ordered_targets(algebra, targets)}
