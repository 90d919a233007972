"""
ℤ²-graded modules over the nodal ring R = k[x, y]/(xy).

The torus acts on the two axes with weights PI_PLUS and PI_MINUS. A module
O_Y(λ) has its generator in degree λ, so O_Y(λ)_μ = (O_Y)_{μ−λ}, and the
coordinate functions carry the inverse weights: deg x = −PI_PLUS and
deg y = −PI_MINUS. Every graded piece of R is spanned by at most one
monomial, which keeps all computations here down to small matrices.

Two kinds of free resolution are available. ``explicit_resolution`` writes
down the periodic resolutions of the four orbit-closure rings directly;
``minimal_resolution`` computes a minimal graded free resolution degree by
degree with linear algebra and serves as the oracle for the first.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import partial
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

from .errors import InputError
from .linalg import Matrix, Vector, rank, rank_kernel_image, span_contains
from .logs import log_trace

DEFAULT_DEPTH = 6
# monomial exponents scanned above each generator when looking for syzygies
SYZYGY_WINDOW = 2


@dataclass(frozen=True, order=True)
class Weight:
    a: int
    b: int

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "Weight":
        return Weight(-self.a, -self.b)

    def scale(self, k: int) -> "Weight":
        return Weight(k * self.a, k * self.b)

    def to_json(self) -> List[int]:
        return [self.a, self.b]

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Weight":
        if len(data) != 2:
            raise InputError(f"A weight has two coordinates, got {list(data)}")
        return cls(int(data[0]), int(data[1]))

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


PI_PLUS = Weight(2, 1)
PI_MINUS = Weight(-2, 1)
ZERO_WEIGHT = Weight(0, 0)


class Support(str, Enum):
    """The four G-stable closed subschemes of X."""

    X = "X"
    C_PLUS = "C+"
    C_MINUS = "C-"
    C0 = "C0"


@dataclass(frozen=True, order=True)
class Monomial:
    """x^x · y^y in R; at most one exponent is positive."""

    x: int = 0
    y: int = 0

    def __post_init__(self):
        if self.x < 0 or self.y < 0:
            raise InputError(f"Monomial exponents must be non-negative: x^{self.x} y^{self.y}")
        if self.x and self.y:
            raise InputError(f"x^{self.x} y^{self.y} vanishes in k[x,y]/(xy)")

    @property
    def degree(self) -> Weight:
        return -(PI_PLUS.scale(self.x) + PI_MINUS.scale(self.y))

    def times(self, other: "Monomial") -> Optional["Monomial"]:
        """Product in R, or None when it is zero."""
        x, y = self.x + other.x, self.y + other.y
        if x and y:
            return None
        return Monomial(x, y)

    def label(self) -> str:
        if self.x:
            return "x" if self.x == 1 else f"x^{self.x}"
        if self.y:
            return "y" if self.y == 1 else f"y^{self.y}"
        return "1"


ONE = Monomial()
X_VAR = Monomial(1, 0)
Y_VAR = Monomial(0, 1)


def monomial_of_degree(nu: Weight) -> Optional[Monomial]:
    """The monomial of R in degree nu, if there is one."""
    det = PI_PLUS.a * PI_MINUS.b - PI_MINUS.a * PI_PLUS.b
    # nu = −x·PI_PLUS − y·PI_MINUS
    x_num = -(nu.a * PI_MINUS.b - PI_MINUS.a * nu.b)
    y_num = -(PI_PLUS.a * nu.b - nu.a * PI_PLUS.b)
    if x_num % det or y_num % det:
        return None
    x, y = x_num // det, y_num // det
    if x < 0 or y < 0 or (x and y):
        return None
    return Monomial(x, y)


def window_monomials(bound: int) -> List[Monomial]:
    return [ONE] + [Monomial(k, 0) for k in range(1, bound + 1)] + [Monomial(0, k) for k in range(1, bound + 1)]


def support_allows(support: Support, m: Monomial) -> bool:
    """m is nonzero in the coordinate ring of the support."""
    if support is Support.X:
        return True
    if support is Support.C_PLUS:
        return m.y == 0
    if support is Support.C_MINUS:
        return m.x == 0
    return m == ONE


@dataclass(frozen=True)
class GradedSheaf:
    """O_Y(λ)[shift] for one of the four orbit closures Y."""

    support: Support
    twist: Weight
    shift: int = 0

    def piece(self, mu: Weight) -> Optional[Monomial]:
        m = monomial_of_degree(mu - self.twist)
        if m is None or not support_allows(self.support, m):
            return None
        return m

    def unshifted(self) -> "GradedSheaf":
        return GradedSheaf(self.support, self.twist)

    def label(self) -> str:
        text = f"O_{self.support.value}{self.twist}"
        return f"{text}[{self.shift}]" if self.shift else text

    def to_json(self) -> Dict[str, Any]:
        return {"support": self.support.value, "twist": self.twist.to_json(), "shift": self.shift}


def graded_piece_dim(sheaf: GradedSheaf, mu: Weight) -> int:
    return 0 if sheaf.piece(mu) is None else 1


class Term(NamedTuple):
    """coefficient · monomial · e_index in the next free module down."""

    index: int
    coefficient: Fraction
    monomial: Monomial


@dataclass(frozen=True)
class Resolution:
    """Graded free resolution F_depth → ... → F_0 → sheaf, truncated at ``depth``.

    ``degrees[i]`` lists the generator degrees of F_i and ``differentials[i][j]``
    is the image of the j-th generator of F_i in F_{i-1} (empty for i = 0).
    """

    sheaf: GradedSheaf
    degrees: Tuple[Tuple[Weight, ...], ...]
    differentials: Tuple[Tuple[Tuple[Term, ...], ...], ...]

    @property
    def depth(self) -> int:
        return len(self.degrees) - 1

    def shifted(self, nu: Weight) -> "Resolution":
        sheaf = GradedSheaf(self.sheaf.support, self.sheaf.twist + nu, self.sheaf.shift)
        degrees = tuple(tuple(g + nu for g in gens) for gens in self.degrees)
        return Resolution(sheaf, degrees, self.differentials)

    def tor_entries(self) -> List[Tuple[int, Weight]]:
        return sorted((i, g) for i, gens in enumerate(self.degrees) for g in gens)


def _chain_resolution(sheaf: GradedSheaf, depth: int, multipliers: Sequence[Monomial]) -> Resolution:
    degrees = [(sheaf.twist,)]
    differentials: List[Tuple[Tuple[Term, ...], ...]] = [()]
    for i in range(1, depth + 1):
        m = multipliers[(i - 1) % 2]
        degrees.append((degrees[-1][0] + m.degree,))
        differentials.append(((Term(0, Fraction(1), m),),))
    return Resolution(sheaf, tuple(degrees), tuple(differentials))


def explicit_resolution(sheaf: GradedSheaf, depth: int) -> Resolution:
    """The periodic minimal resolution of O_Y(λ), written down directly."""
    if depth < 0:
        raise InputError(f"Resolution depth must be non-negative, got {depth}")
    sheaf = sheaf.unshifted()
    if sheaf.support is Support.X:
        return Resolution(sheaf, ((sheaf.twist,),) + ((),) * depth, ((),) * (depth + 1))
    if sheaf.support is Support.C_PLUS:
        return _chain_resolution(sheaf, depth, (Y_VAR, X_VAR))
    if sheaf.support is Support.C_MINUS:
        return _chain_resolution(sheaf, depth, (X_VAR, Y_VAR))
    # two interleaved chains: x, y, x, ... and y, x, y, ...
    degrees = [(sheaf.twist,)]
    differentials: List[Tuple[Tuple[Term, ...], ...]] = [()]
    for i in range(1, depth + 1):
        first = X_VAR if i % 2 else Y_VAR
        second = Y_VAR if i % 2 else X_VAR
        if i == 1:
            prev = (sheaf.twist, sheaf.twist)
            targets = (0, 0)
        else:
            prev = degrees[-1]
            targets = (0, 1)
        degrees.append((prev[0] + first.degree, prev[1] + second.degree))
        differentials.append((
            (Term(targets[0], Fraction(1), first),),
            (Term(targets[1], Fraction(1), second),),
        ))
    return Resolution(sheaf, tuple(degrees), tuple(differentials))


def _free_basis(degrees: Sequence[Weight], mu: Weight) -> List[Tuple[int, Monomial]]:
    basis = []
    for j, g in enumerate(degrees):
        m = monomial_of_degree(mu - g)
        if m is not None:
            basis.append((j, m))
    return basis


def _differential_matrix(source: Sequence[Weight], target: Sequence[Weight],
                         images: Sequence[Sequence[Term]], mu: Weight) -> Tuple[Matrix, List[Tuple[int, Monomial]]]:
    columns = _free_basis(source, mu)
    rows = _free_basis(target, mu)
    position = {b: r for r, b in enumerate(rows)}
    grid = [[Fraction(0)] * len(columns) for _ in rows]
    for c, (j, m) in enumerate(columns):
        for term in images[j]:
            product = term.monomial.times(m)
            if product is not None:
                grid[position[(term.index, product)]][c] += term.coefficient
    return Matrix.from_rows(grid, len(columns)), columns


def _augmentation_matrix(sheaf: GradedSheaf, mu: Weight) -> Tuple[Matrix, List[Tuple[int, Monomial]]]:
    columns = _free_basis([sheaf.twist], mu)
    if sheaf.piece(mu) is None:
        return Matrix.zeros(0, len(columns)), columns
    return Matrix.from_rows([[1 if support_allows(sheaf.support, m) else 0 for _, m in columns]], len(columns)), columns


def _multiply(vector: Vector, basis: Sequence[Tuple[int, Monomial]], m: Monomial,
              target: Sequence[Tuple[int, Monomial]]) -> Vector:
    position = {b: r for r, b in enumerate(target)}
    out = [Fraction(0)] * len(target)
    for c, (j, n) in zip(vector, basis):
        product = n.times(m)
        if c != 0 and product is not None:
            out[position[(j, product)]] += c
    return tuple(out)


def _syzygies(degrees: Sequence[Weight], matrix_at) -> Tuple[Tuple[Weight, ...], Tuple[Tuple[Term, ...], ...]]:
    """Minimal homogeneous generators of the kernel of a map out of a free module.

    Degrees are scanned by decreasing second coordinate: multiplication by x
    or y lowers it by one, so everything generated in a degree comes from
    generators already found.
    """
    candidates = {g + m.degree for g in degrees for m in window_monomials(SYZYGY_WINDOW)}
    chosen: List[Tuple[Weight, Vector]] = []
    new_degrees: List[Weight] = []
    new_images: List[Tuple[Term, ...]] = []
    for mu in sorted(candidates, key=lambda w: (-w.b, w.a)):
        matrix, basis = matrix_at(mu)
        if not basis:
            continue
        generated = []
        for nu, v in chosen:
            m = monomial_of_degree(mu - nu)
            if m is not None:
                generated.append(_multiply(v, _free_basis(degrees, nu), m, basis))
        span = [g for g in generated if any(g)]
        for k in rank_kernel_image(matrix).kernel:
            if span_contains(span, k):
                continue
            span.append(k)
            chosen.append((mu, k))
            new_degrees.append(mu)
            new_images.append(tuple(Term(j, c, m) for c, (j, m) in zip(k, basis) if c != 0))
    return tuple(new_degrees), tuple(new_images)


def minimal_resolution(sheaf: GradedSheaf, depth: int) -> Resolution:
    """Minimal graded free resolution computed degree by degree."""
    if depth < 0:
        raise InputError(f"Resolution depth must be non-negative, got {depth}")
    sheaf = sheaf.unshifted()
    degrees: List[Tuple[Weight, ...]] = [(sheaf.twist,)]
    differentials: List[Tuple[Tuple[Term, ...], ...]] = [()]
    for i in range(1, depth + 1):
        if i == 1:
            matrix_at = partial(_augmentation_matrix, sheaf)
        else:
            matrix_at = partial(_differential_matrix, degrees[i - 1], degrees[i - 2], differentials[i - 1])
        gens, images = _syzygies(degrees[i - 1], matrix_at)
        degrees.append(gens)
        differentials.append(images)
        log_trace(f"Oracle resolution of {sheaf.label()}: F_{i} has {len(gens)} generators")
    return Resolution(sheaf, tuple(degrees), tuple(differentials))


def _cochains(resolution: Resolution, target: GradedSheaf, i: int) -> Dict[int, Monomial]:
    return {j: m for j, g in enumerate(resolution.degrees[i]) for m in [target.piece(g)] if m is not None}


def _coboundary(resolution: Resolution, target: GradedSheaf, i: int) -> Matrix:
    """Hom(F_i, target)_0 → Hom(F_{i+1}, target)_0, φ ↦ φ∘d."""
    source = _cochains(resolution, target, i)
    image = _cochains(resolution, target, i + 1)
    cols = sorted(source)
    rows = sorted(image)
    col_pos = {j: c for c, j in enumerate(cols)}
    grid = [[Fraction(0)] * len(cols) for _ in rows]
    for r, l in enumerate(rows):
        for term in resolution.differentials[i + 1][l]:
            if term.index not in col_pos:
                continue
            product = term.monomial.times(source[term.index])
            if product is not None and support_allows(target.support, product):
                grid[r][col_pos[term.index]] += term.coefficient
    return Matrix.from_rows(grid, len(cols))


def _rank(m: Matrix) -> int:
    return 0 if m.is_zero() else rank(m)


def ext_dims(resolution: Resolution, target: GradedSheaf, top: int) -> List[int]:
    """dim Ext^i(resolved sheaf, target) in degree 0 for 0 ≤ i ≤ top."""
    if top + 1 > resolution.depth:
        raise InputError(f"Ext^{top} needs a resolution of depth {top + 1}, got {resolution.depth}")
    target = target.unshifted()
    ranks = [_rank(_coboundary(resolution, target, i)) for i in range(top + 1)]
    dims = []
    for i in range(top + 1):
        incoming = ranks[i - 1] if i > 0 else 0
        dims.append(len(_cochains(resolution, target, i)) - ranks[i] - incoming)
    return dims


def equivariant_ext(A: GradedSheaf, B: GradedSheaf, i: int) -> int:
    """dim of the degree-0 part of Ext^i_R between two twisted structure sheaves."""
    if i < 0:
        return 0
    return ext_dims(explicit_resolution(A, i + 1), B, i)[i]


@dataclass(frozen=True)
class Tower:
    """Truncated Tor_i(sheaf, k) or Ext^i(k, sheaf) with one entry per graded piece."""

    kind: str
    sheaf: GradedSheaf
    depth: int
    entries: Tuple[Tuple[int, Weight], ...]

    def at(self, i: int) -> List[Weight]:
        return [w for j, w in self.entries if j == i]

    def to_json(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "support": self.sheaf.support.value,
            "twist": self.sheaf.twist.to_json(),
            "depth": self.depth,
            "entries": [[i, w.to_json()] for i, w in self.entries],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Tower":
        sheaf = GradedSheaf(Support(data["support"]), Weight.from_json(data["twist"]))
        entries = tuple(sorted((int(i), Weight.from_json(w)) for i, w in data["entries"]))
        return cls(data["kind"], sheaf, int(data["depth"]), entries)


def _resolver(oracle: bool):
    return minimal_resolution if oracle else explicit_resolution


def tor_tower(sheaf: GradedSheaf, depth: int = DEFAULT_DEPTH, oracle: bool = False) -> Tower:
    """Tor_i(sheaf, k) for i ≤ depth, read off the generators of a minimal resolution."""
    resolution = _resolver(oracle)(sheaf, depth)
    return Tower("tor", sheaf.unshifted(), depth, tuple(resolution.tor_entries()))


def ext_tower(sheaf: GradedSheaf, depth: int = DEFAULT_DEPTH, oracle: bool = False) -> Tower:
    """Entries (i, ν) with Ext^i(O_C0(ν), sheaf) nonzero in degree 0, for i ≤ depth."""
    if depth < 0:
        raise InputError(f"Tower depth must be non-negative, got {depth}")
    sheaf = sheaf.unshifted()
    point = _resolver(oracle)(GradedSheaf(Support.C0, ZERO_WEIGHT), depth + 1)
    monomials = [m for m in window_monomials(depth + SYZYGY_WINDOW) if support_allows(sheaf.support, m)]
    candidates = {
        sheaf.twist + m.degree - g
        for gens in point.degrees[:depth + 1]
        for g in gens
        for m in monomials
    }
    entries = []
    for nu in sorted(candidates):
        for i, d in enumerate(ext_dims(point.shifted(nu), sheaf, depth)):
            entries.extend([(i, nu)] * d)
    return Tower("ext", sheaf, depth, tuple(sorted(entries)))
