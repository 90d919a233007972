"""
Quivers with relations and their path algebras.

An ``AlgebraSpec`` is the raw presentation; ``PathAlgebra`` validates it,
enumerates a monomial path basis and knows how to multiply basis paths.
Paths are composed left to right: the path ``(a, b)`` is "first a, then b".
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .errors import AlgebraValidationError, InputError
from .linalg import Matrix, Vector, _rref, to_rational, zero_vector
from .logs import log_trace


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Relation:
    """A linear combination of paths sharing source and target."""

    terms: Tuple[Tuple[Fraction, Tuple[str, ...]], ...]


@dataclass(frozen=True)
class AlgebraSpec:
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...] = ()
    relations: Tuple[Relation, ...] = ()
    nilpotency_bound: Optional[int] = None

    @classmethod
    def build(cls, vertices: Sequence[str], arrows: Sequence[Tuple[str, str, str]] = (),
              relations: Sequence[Sequence[Tuple[object, Sequence[str]]]] = (),
              nilpotency_bound: Optional[int] = None) -> "AlgebraSpec":
        """Convenience constructor from plain tuples."""
        return cls(
            vertices=tuple(vertices),
            arrows=tuple(Arrow(*a) for a in arrows),
            relations=tuple(
                Relation(tuple((to_rational(c), tuple(p)) for c, p in rel)) for rel in relations
            ),
            nilpotency_bound=nilpotency_bound,
        )


class Path(NamedTuple):
    source: str
    target: str
    arrows: Tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)

    def label(self) -> str:
        return ".".join(self.arrows) if self.arrows else f"e_{self.source}"

    def sort_key(self):
        return (len(self.arrows), self.arrows)


class PathBasisReport(NamedTuple):
    basis: List[Path]
    dimension: int
    projective_dims: Dict[str, int]


class PathAlgebra:
    """A validated finite-dimensional quotient of a path algebra."""

    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        self.vertices: Tuple[str, ...] = spec.vertices
        self.arrows: Tuple[Arrow, ...] = spec.arrows
        self._arrow_index = {a.name: a for a in spec.arrows}
        self._opposite: Optional["PathAlgebra"] = None
        self._check_presentation()
        self.bound = self._default_bound()
        self._paths = self._enumerate_paths(self.bound + 1)
        self._reducers: Dict[Tuple[str, str], Tuple[List[Path], Matrix, Tuple[int, ...]]] = {}
        self.basis: Dict[Tuple[str, str], List[Path]] = {}
        self._build_basis()

    # -- validation -------------------------------------------------------

    def _check_presentation(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("Vertex labels must be distinct")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise InputError("Arrow names must be distinct")
        for a in self.arrows:
            for end in (a.source, a.target):
                if end not in self.vertices:
                    raise InputError(f"Arrow {a.name!r}: unknown vertex {end!r}")
        for i, rel in enumerate(self.spec.relations):
            if not rel.terms:
                raise InputError(f"Relation {i}: empty relation")
            ends = {self.path_of(p, f"Relation {i}")[:2] for _, p in rel.terms}
            if len(ends) != 1:
                raise InputError(f"Relation {i}: paths do not share one source and one target")
        if self.spec.nilpotency_bound is not None and self.spec.nilpotency_bound < 0:
            raise InputError("nilpotency_bound must be non-negative")

    def _default_bound(self) -> int:
        if self.spec.nilpotency_bound is not None:
            return self.spec.nilpotency_bound
        longest_relation = max(
            (len(p) for rel in self.spec.relations for _, p in rel.terms), default=0
        )
        return max(len(self.vertices), longest_relation)

    def path_of(self, arrows: Sequence[str], context: str = "Path") -> Path:
        """Resolve an arrow-name sequence to a composable Path."""
        if not arrows:
            raise InputError(f"{context}: relation paths must contain at least one arrow")
        resolved = []
        for name in arrows:
            if name not in self._arrow_index:
                raise InputError(f"{context}: unknown arrow {name!r}")
            resolved.append(self._arrow_index[name])
        for a, b in zip(resolved, resolved[1:]):
            if a.target != b.source:
                raise InputError(f"{context}: arrows {a.name!r} and {b.name!r} are not composable")
        return Path(resolved[0].source, resolved[-1].target, tuple(arrows))

    def arrow(self, name: str) -> Arrow:
        if name not in self._arrow_index:
            raise InputError(f"Unknown arrow {name!r}")
        return self._arrow_index[name]

    def check_vertex(self, v: str) -> None:
        if v not in self.vertices:
            raise InputError(f"Unknown vertex {v!r}")

    # -- path basis -------------------------------------------------------

    def _enumerate_paths(self, max_length: int) -> Dict[Tuple[str, str], List[Path]]:
        paths: Dict[Tuple[str, str], List[Path]] = {(s, t): [] for s in self.vertices for t in self.vertices}
        layer = [Path(v, v, ()) for v in self.vertices]
        for length in range(max_length + 1):
            for p in layer:
                paths[(p.source, p.target)].append(p)
            if length == max_length:
                break
            layer = [
                Path(p.source, a.target, p.arrows + (a.name,))
                for p in layer
                for a in self.arrows
                if a.source == p.target
            ]
        for key in paths:
            paths[key].sort(key=Path.sort_key)
        return paths

    def _ideal_vectors(self) -> Dict[Tuple[str, str], List[Dict[Tuple[str, ...], Fraction]]]:
        limit = self.bound + 1
        found: Dict[Tuple[str, str], List[Dict[Tuple[str, ...], Fraction]]] = {}
        for rel in self.spec.relations:
            first = self.path_of(rel.terms[0][1])
            shortest = min(len(p) for _, p in rel.terms)
            prefixes = [u for (s, t), ps in self._paths.items() if t == first.source for u in ps]
            suffixes = [w for (s, t), ps in self._paths.items() if s == first.target for w in ps]
            for u in prefixes:
                for w in suffixes:
                    if u.length + w.length + shortest > limit:
                        continue
                    combo: Dict[Tuple[str, ...], Fraction] = {}
                    for c, p in rel.terms:
                        word = u.arrows + tuple(p) + w.arrows
                        if len(word) <= limit:
                            combo[word] = combo.get(word, Fraction(0)) + c
                    combo = {k: v for k, v in combo.items() if v != 0}
                    if combo:
                        found.setdefault((u.source, w.target), []).append(combo)
        return found

    def _build_basis(self) -> None:
        ideal = self._ideal_vectors()
        for key, paths in self._paths.items():
            # Longest paths first so that leading terms are the longest ones.
            columns = sorted(paths, key=Path.sort_key, reverse=True)
            rows = [
                [combo.get(p.arrows, Fraction(0)) for p in columns]
                for combo in ideal.get(key, [])
            ]
            reduced, pivots = _rref(Matrix.from_rows(rows, cols=len(columns)))
            pivot_paths = {columns[p].arrows for p in pivots}
            for p in columns:
                if p.length == self.bound + 1 and p.arrows not in pivot_paths:
                    raise AlgebraValidationError(self._unbounded_message(p))
            basis = sorted(
                (p for p in columns if p.arrows not in pivot_paths), key=Path.sort_key
            )
            self.basis[key] = basis
            self._reducers[key] = (columns, reduced, pivots)
        log_trace(f"Path basis: {self.dimension()} elements, bound {self.bound}")

    def _unbounded_message(self, path: Path) -> str:
        seen = [path.source]
        for name in path.arrows:
            seen.append(self._arrow_index[name].target)
        for i, v in enumerate(seen):
            if v in seen[:i]:
                start = seen.index(v)
                cycle = path.arrows[start:i]
                return (f"Algebra is infinite-dimensional: unbounded cycle through vertex {v!r} "
                        f"via arrows {', '.join(cycle)}")
        return f"Algebra is infinite-dimensional: path {path.label()} is not killed by the relations"

    def reduce(self, source: str, target: str, arrows: Tuple[str, ...]) -> Vector:
        """Coordinates of a path in the basis of paths ``source -> target``."""
        basis = self.basis[(source, target)]
        if len(arrows) > self.bound:
            return zero_vector(len(basis))
        columns, reduced, pivots = self._reducers[(source, target)]
        index = {p.arrows: i for i, p in enumerate(columns)}
        v = [Fraction(0)] * len(columns)
        v[index[arrows]] = Fraction(1)
        for row, p in enumerate(pivots):
            c = v[p]
            if c != 0:
                v = [x - c * r for x, r in zip(v, reduced.entries[row])]
        return tuple(v[index[b.arrows]] for b in basis)

    def multiply(self, left: Path, right: Path) -> Vector:
        """Coordinates of ``left`` followed by ``right`` in the basis of paths."""
        if left.target != right.source:
            raise InputError(f"Paths {left.label()} and {right.label()} are not composable")
        return self.reduce(left.source, right.target, left.arrows + right.arrows)

    def dimension(self) -> int:
        return sum(len(b) for b in self.basis.values())

    def projective_dimension_vector(self, s: str) -> Dict[str, int]:
        return {t: len(self.basis[(s, t)]) for t in self.vertices}

    def report(self) -> PathBasisReport:
        basis = [p for s in self.vertices for t in self.vertices for p in self.basis[(s, t)]]
        return PathBasisReport(
            basis=basis,
            dimension=len(basis),
            projective_dims={s: sum(self.projective_dimension_vector(s).values()) for s in self.vertices},
        )

    # -- relations on representations ---------------------------------------

    def path_matrix(self, dims: Dict[str, int], action: Dict[str, Matrix], arrows: Sequence[str],
                    source: str) -> Matrix:
        m = Matrix.identity(dims[source])
        for name in arrows:
            m = action[name] @ m
        return m

    def relation_defects(self, dims: Dict[str, int], action: Dict[str, Matrix]) -> List[str]:
        defects = []
        for i, rel in enumerate(self.spec.relations):
            first = self.path_of(rel.terms[0][1])
            total = Matrix.zeros(dims[first.target], dims[first.source])
            for c, p in rel.terms:
                total = total + self.path_matrix(dims, action, p, first.source).scale(c)
            if not total.is_zero():
                defects.append(f"Relation {i} does not vanish on the representation")
        return defects

    def dual_action(self, dims: Dict[str, int], action: Dict[str, Matrix]) -> Dict[str, Matrix]:
        """Action of the dual representation over the opposite algebra."""
        return {name: m.transpose() for name, m in action.items()}

    # -- opposite ---------------------------------------------------------

    def opposite(self) -> "PathAlgebra":
        """Arrows reversed; the opposite of the opposite is this algebra again."""
        if self._opposite is None:
            spec = self.spec
            op = PathAlgebra(AlgebraSpec(
                vertices=spec.vertices,
                arrows=tuple(Arrow(a.name, a.target, a.source) for a in spec.arrows),
                relations=tuple(
                    Relation(tuple((c, tuple(reversed(p))) for c, p in rel.terms)) for rel in spec.relations
                ),
                nilpotency_bound=spec.nilpotency_bound,
            ))
            op._opposite = self
            self._opposite = op
        return self._opposite

    def __eq__(self, other) -> bool:
        return isinstance(other, PathAlgebra) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __repr__(self) -> str:
        return f"PathAlgebra(vertices={list(self.vertices)}, arrows={[a.name for a in self.arrows]})"


@lru_cache(maxsize=None)
def path_algebra(spec: AlgebraSpec) -> PathAlgebra:
    """Validated algebra for a presentation (memoized per presentation)."""
    return PathAlgebra(spec)


def validate_algebra(spec: AlgebraSpec) -> PathBasisReport:
    """Enumerate the monomial path basis; fails if the algebra is infinite-dimensional."""
    return path_algebra(spec).report()
