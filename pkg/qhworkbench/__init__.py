"""
QH Workbench Package

Exact linear-algebra engine for stratified and quasi-hereditary module
categories of bound quiver algebras, with the nodal-curve example and the
graded Tor/Ext towers behind it.
"""

__version__ = "0.1.0"
__author__ = "QH Workbench Team"

# Import main components for easy access
from .algebra import AlgebraSpec, PathAlgebra, path_algebra, validate_algebra
from .errors import AlgebraValidationError, InputError, PreconditionError, SchemaError, WorkbenchError
from .graded import GradedSheaf, Support, Tower, Weight, ext_tower, tor_tower
from .homological import ext1, hom_basis, universal_extension
from .isomorphism import is_isomorphic
from .modules import Module, ModuleMap, indecomposable_injective, indecomposable_projective
from .nodal import build_block, verify_block_range
from .qh import OrderedSimples, QHCategory, SkewLabeling
from .stratified import injective_hull_stratified, projective_cover_stratified
from .validate import load_algebra, load_module

__all__ = [
    "AlgebraSpec",
    "PathAlgebra",
    "path_algebra",
    "validate_algebra",
    "WorkbenchError",
    "InputError",
    "SchemaError",
    "AlgebraValidationError",
    "PreconditionError",
    "GradedSheaf",
    "Support",
    "Tower",
    "Weight",
    "tor_tower",
    "ext_tower",
    "ext1",
    "hom_basis",
    "universal_extension",
    "is_isomorphic",
    "Module",
    "ModuleMap",
    "indecomposable_projective",
    "indecomposable_injective",
    "build_block",
    "verify_block_range",
    "OrderedSimples",
    "QHCategory",
    "SkewLabeling",
    "projective_cover_stratified",
    "injective_hull_stratified",
    "load_algebra",
    "load_module",
]
