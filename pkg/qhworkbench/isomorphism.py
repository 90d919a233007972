"""
Isomorphism testing with an explicit witness.

Cheap invariants rule out most non-isomorphic pairs; a deterministic sweep
over combinations of the Hom basis usually finds an invertible map; the
symbolic determinant of a generic element of Hom(X, Y) settles the rest.
"""

from fractions import Fraction
from typing import List, NamedTuple, Optional

import sympy

from .errors import InputError
from .homological import hom_basis
from .linalg import to_rational
from .logs import log_trace
from .modules import Module, ModuleMap, identity_map, radical_series_dims, socle_bases, zero_map

SWEEP_COEFFICIENTS = (1, 2, -1, 3, -2, 5)


class IsoResult(NamedTuple):
    isomorphic: bool
    witness: Optional[ModuleMap]
    method: str

    def __bool__(self) -> bool:
        return self.isomorphic


def _combination(X: Module, Y: Module, basis: List[ModuleMap], coeffs) -> ModuleMap:
    total = zero_map(X, Y)
    for c, f in zip(coeffs, basis):
        if c != 0:
            total = total + f.scale(Fraction(c))
    return total


def _sweep(X: Module, Y: Module, basis: List[ModuleMap]) -> Optional[ModuleMap]:
    n = len(basis)
    candidates = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    for k in range(len(SWEEP_COEFFICIENTS)):
        candidates.append([SWEEP_COEFFICIENTS[(i + k) % len(SWEEP_COEFFICIENTS)] * (i + 1) ** k
                           for i in range(n)])
    for coeffs in candidates:
        f = _combination(X, Y, basis, coeffs)
        if f.is_isomorphism():
            return f
    return None


def _symbolic(X: Module, Y: Module, basis: List[ModuleMap]) -> Optional[ModuleMap]:
    """Find a point where det of a generic hom is nonzero, or None if it vanishes identically."""
    params = sympy.symbols(f"t0:{len(basis)}")
    determinant = sympy.Integer(1)
    for v in X.algebra.vertices:
        d = X.dims[v]
        if d == 0:
            continue
        generic = sympy.zeros(d, d)
        for t, f in zip(params, basis):
            generic += f.components[v].to_sympy() * t
        determinant *= generic.det()
    determinant = sympy.expand(determinant)
    if determinant == 0:
        return None
    point = []
    remaining = determinant
    for t in params:
        degree = sympy.Poly(remaining, t).degree() if remaining.has(t) else 0
        # a nonzero polynomial of degree d in t has at most d roots
        for value in range(degree + 1):
            substituted = sympy.expand(remaining.subs(t, value))
            if substituted != 0:
                remaining = substituted
                point.append(value)
                break
    witness = _combination(X, Y, basis, [to_rational(p) for p in point])
    return witness if witness.is_isomorphism() else None


def _invariants_differ(X: Module, Y: Module) -> Optional[str]:
    if X.dims != Y.dims:
        return "dimension vectors differ"
    if radical_series_dims(X) != radical_series_dims(Y):
        return "radical series differ"
    socle_x = {v: len(b) for v, b in socle_bases(X).items()}
    socle_y = {v: len(b) for v, b in socle_bases(Y).items()}
    if socle_x != socle_y:
        return "socles differ"
    return None


def is_isomorphic(X: Module, Y: Module) -> IsoResult:
    if X.algebra != Y.algebra:
        raise InputError("Modules are defined over different algebras")
    reason = _invariants_differ(X, Y)
    if reason:
        log_trace(f"Not isomorphic: {reason}")
        return IsoResult(False, None, reason)
    if X == Y:
        return IsoResult(True, identity_map(X), "identical")
    basis = hom_basis(X, Y)
    if len(basis) != len(hom_basis(X, X)):
        return IsoResult(False, None, "hom dimensions differ")
    witness = _sweep(X, Y, basis)
    if witness is not None:
        return IsoResult(True, witness, "sweep")
    witness = _symbolic(X, Y, basis)
    if witness is not None:
        return IsoResult(True, witness, "symbolic")
    return IsoResult(False, None, "every homomorphism is singular")
