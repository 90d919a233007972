"""
Exact rational linear algebra.

Every Hom and Ext computation in the workbench reduces to the three
operations here: rank/kernel/image, solving, and quotient bases. Entries are
``fractions.Fraction``; row reduction is delegated to sympy and converted back.
All returned bases are canonical (derived from reduced echelon forms), so
identical inputs always produce identical outputs.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import sympy

from .errors import InputError

Vector = Tuple[Fraction, ...]
Scalar = Union[int, Fraction, str]


def to_rational(value: Scalar) -> Fraction:
    """Convert an int, Fraction, sympy rational or "p/q" string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"Not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"Not a rational number: {value!r} ({e})")
    if isinstance(value, sympy.Basic) and value.is_Rational:
        return Fraction(int(value.p), int(value.q))
    raise InputError(f"Not a rational number: {value!r}")


def format_rational(value: Fraction) -> str:
    """Serialize as "p/q", or "n" for integers."""
    return str(value)


def vector(values: Iterable[Scalar]) -> Vector:
    return tuple(to_rational(v) for v in values)


def zero_vector(n: int) -> Vector:
    return tuple(Fraction(0) for _ in range(n))


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))


def is_zero_vector(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


@dataclass(frozen=True)
class Matrix:
    """Dense matrix over the rationals."""

    rows: int
    cols: int
    entries: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise InputError(f"Matrix has {len(self.entries)} rows, expected {self.rows}")
        for i, row in enumerate(self.entries):
            if len(row) != self.cols:
                raise InputError(f"Matrix row {i} has {len(row)} entries, expected {self.cols}")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple(zero_vector(cols) for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], cols: Optional[int] = None) -> "Matrix":
        entries = tuple(vector(r) for r in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(len(entries), cols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], rows: int) -> "Matrix":
        cols = [vector(c) for c in columns]
        for j, c in enumerate(cols):
            if len(c) != rows:
                raise InputError(f"Column {j} has length {len(c)}, expected {rows}")
        return cls(rows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(rows)))

    @classmethod
    def from_sympy(cls, m: "sympy.Matrix") -> "Matrix":
        return cls(
            m.rows,
            m.cols,
            tuple(tuple(to_rational(sympy.Rational(m[i, j])) for j in range(m.cols)) for i in range(m.rows)),
        )

    @staticmethod
    def block_diagonal(blocks: Sequence["Matrix"]) -> "Matrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        grid = [list(zero_vector(cols)) for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    grid[r0 + i][c0 + j] = b.entries[i][j]
            r0 += b.rows
            c0 += b.cols
        return Matrix(rows, cols, tuple(tuple(r) for r in grid))

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def select_rows(self, indices: Sequence[int]) -> "Matrix":
        return Matrix(len(indices), self.cols, tuple(self.entries[i] for i in indices))

    def select_columns(self, indices: Sequence[int]) -> "Matrix":
        return Matrix(self.rows, len(indices), tuple(tuple(r[j] for j in indices) for r in self.entries))

    # -- arithmetic -------------------------------------------------------

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(self.column(j) for j in range(self.cols)))

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise InputError(f"Cannot apply {self.rows}x{self.cols} matrix to vector of length {len(v)}")
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.entries)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise InputError(f"Shape mismatch: {self.shape} @ {other.shape}")
        other_cols = other.columns()
        return Matrix(
            self.rows,
            other.cols,
            tuple(
                tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in other_cols)
                for r in self.entries
            ),
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise InputError(f"Shape mismatch: {self.shape} + {other.shape}")
        return Matrix(
            self.rows,
            self.cols,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> "Matrix":
        return self.scale(Fraction(-1))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c: Scalar) -> "Matrix":
        c = to_rational(c)
        return Matrix(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.entries))

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise InputError(f"Cannot hstack {self.shape} and {other.shape}")
        return Matrix(self.rows, self.cols + other.cols, tuple(r + s for r, s in zip(self.entries, other.entries)))

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise InputError(f"Cannot vstack {self.shape} and {other.shape}")
        return Matrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def is_zero(self) -> bool:
        return all(is_zero_vector(r) for r in self.entries)

    def flatten(self) -> Vector:
        return tuple(a for r in self.entries for a in r)

    # -- conversion -------------------------------------------------------

    def to_sympy(self) -> "sympy.Matrix":
        return sympy.Matrix(
            self.rows,
            self.cols,
            [sympy.Rational(a.numerator, a.denominator) for r in self.entries for a in r],
        )

    def to_json(self) -> List[List[str]]:
        return [[format_rational(a) for a in r] for r in self.entries]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[Scalar]], rows: int, cols: int) -> "Matrix":
        m = cls.from_rows(data, cols=cols)
        if m.rows != rows:
            raise InputError(f"Matrix has {m.rows} rows, expected {rows}")
        return m


class KernelImage(NamedTuple):
    rank: int
    kernel: List[Vector]
    image: List[Vector]


class Solution(NamedTuple):
    particular: Vector
    kernel: List[Vector]


class QuotientBasis(NamedTuple):
    """Projection onto V/W together with a section.

    ``projection @ section`` is the identity; ``representatives`` are the
    indices of the standard basis vectors spanning the chosen complement.
    """

    projection: Matrix
    dim: int
    section: Matrix
    representatives: Tuple[int, ...]


def _rref(m: Matrix) -> Tuple[Matrix, Tuple[int, ...]]:
    if m.rows == 0 or m.cols == 0:
        return m, ()
    reduced, pivots = m.to_sympy().rref()
    return Matrix.from_sympy(reduced), tuple(int(p) for p in pivots)


def _normalize(v: Sequence[Fraction]) -> Vector:
    for a in v:
        if a != 0:
            return tuple(x / a for x in v)
    return tuple(v)


def rank(m: Matrix) -> int:
    return len(_rref(m)[1])


def rank_kernel_image(m: Matrix) -> KernelImage:
    """Rank, kernel basis and column-space basis of ``m``.

    Kernel vectors come from the free columns of the row-reduced form and are
    scaled so their first nonzero entry is 1. Image vectors are the nonzero
    rows of the reduced form of the transpose.
    """
    reduced, pivots = _rref(m)
    kernel = []
    for f in range(m.cols):
        if f in pivots:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -reduced.entries[i][f]
        kernel.append(_normalize(v))
    reduced_t, pivots_t = _rref(m.transpose())
    image = [reduced_t.entries[i] for i in range(len(pivots_t))]
    return KernelImage(len(pivots), kernel, image)


def solve(m: Matrix, b: Sequence[Scalar]) -> Optional[Solution]:
    """Solve ``m x = b`` exactly; None when the system is inconsistent."""
    b = vector(b)
    if len(b) != m.rows:
        raise InputError(f"Right-hand side has length {len(b)}, expected {m.rows}")
    augmented = m.hstack(Matrix.from_columns([b], m.rows))
    reduced, pivots = _rref(augmented)
    if m.cols in pivots:
        return None
    x = [Fraction(0)] * m.cols
    for i, p in enumerate(pivots):
        x[p] = reduced.entries[i][m.cols]
    return Solution(tuple(x), rank_kernel_image(m).kernel)


def quotient_basis(ambient_dim: int, subspace_basis: Sequence[Sequence[Scalar]]) -> QuotientBasis:
    """Canonical projection of a coordinate space onto its quotient by a subspace."""
    vectors = [vector(v) for v in subspace_basis]
    for i, v in enumerate(vectors):
        if len(v) != ambient_dim:
            raise InputError(f"Subspace vector {i} has length {len(v)}, expected {ambient_dim}")
    if ambient_dim == 0:
        return QuotientBasis(Matrix.zeros(0, 0), 0, Matrix.zeros(0, 0), ())
    image = rank_kernel_image(Matrix.from_columns(vectors, ambient_dim)).image if vectors else []
    k = len(image)
    units = [unit_vector(ambient_dim, j) for j in range(ambient_dim)]
    _, pivots = _rref(Matrix.from_columns(image + units, ambient_dim))
    representatives = tuple(p - k for p in pivots if p >= k)
    basis = Matrix.from_columns(image + [units[j] for j in representatives], ambient_dim)
    inverse = Matrix.from_sympy(basis.to_sympy().inv())
    projection = inverse.select_rows(list(range(k, ambient_dim)))
    section = Matrix.from_columns([units[j] for j in representatives], ambient_dim)
    return QuotientBasis(projection, len(representatives), section, representatives)


def inverse(m: Matrix) -> Optional[Matrix]:
    """Inverse of a square matrix, or None when singular."""
    if m.rows != m.cols:
        raise InputError(f"Cannot invert a {m.rows}x{m.cols} matrix")
    if m.rows == 0:
        return m
    if rank(m) < m.rows:
        return None
    return Matrix.from_sympy(m.to_sympy().inv())


def coordinates(basis: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Optional[Vector]:
    """Coordinates of ``v`` in an independent family, or None if outside its span."""
    solution = solve(Matrix.from_columns(list(basis), len(v)), v)
    return None if solution is None else solution.particular


def span_contains(basis: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> bool:
    if not basis:
        return is_zero_vector(v)
    return coordinates(basis, v) is not None


def independent_subset(vectors: Sequence[Sequence[Fraction]], length: int) -> List[int]:
    """Indices of the greedy maximal independent subfamily, in order."""
    if not vectors:
        return []
    _, pivots = _rref(Matrix.from_columns(list(vectors), length))
    return list(pivots)
