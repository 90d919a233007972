#!/usr/bin/env python3
"""
Tests for isomorphism testing with witnesses.
"""

import pytest

from qhworkbench.errors import InputError
from qhworkbench.isomorphism import is_isomorphic
from qhworkbench.modules import Module, ModuleMap, direct_sum, indecomposable_injective, simple_module


def test_identical_modules(a2_proj_a):
    result = is_isomorphic(a2_proj_a, a2_proj_a)
    assert result.isomorphic
    assert result.method == "identical"


def test_rescaled_action_is_isomorphic(a2, a2_proj_a):
    """P(a) with the arrow acting by 5 is isomorphic to P(a); the witness is invertible."""
    scaled = Module.build(a2.algebra, {"a": 1, "b": 1}, {"alpha": [[5]]})
    result = is_isomorphic(scaled, a2_proj_a)

    assert result
    assert isinstance(result.witness, ModuleMap)
    assert result.witness.is_isomorphism()
    assert result.witness.source == scaled


def test_same_dimension_vector_not_isomorphic(a2, a2_proj_a):
    """S(a) ⊕ S(b) and P(a) share dims but not radical series."""
    split = direct_sum(a2.algebra, [simple_module(a2.algebra, "a"), simple_module(a2.algebra, "b")]).module
    result = is_isomorphic(split, a2_proj_a)
    assert not result
    assert result.witness is None
    assert result.method == "radical series differ"


def test_kronecker_modules_distinguished_by_homs():
    """Two regular Kronecker modules with the same invariants but different parameters."""
    from qhworkbench.algebra import AlgebraSpec, path_algebra

    kronecker = path_algebra(AlgebraSpec.build(["u", "w"], [("x", "u", "w"), ("y", "u", "w")]))
    first = Module.build(kronecker, {"u": 1, "w": 1}, {"x": [[1]], "y": [[0]]})
    second = Module.build(kronecker, {"u": 1, "w": 1}, {"x": [[0]], "y": [[1]]})
    third = Module.build(kronecker, {"u": 1, "w": 1}, {"x": [[2]], "y": [[0]]})

    assert not is_isomorphic(first, second)
    assert is_isomorphic(first, third)


def test_dimension_mismatch(d3):
    result = is_isomorphic(simple_module(d3.algebra, "o"), indecomposable_injective(d3.algebra, "p"))
    assert result.method == "dimension vectors differ"


def test_different_algebras_rejected(a2, d3):
    with pytest.raises(InputError):
        is_isomorphic(simple_module(a2.algebra, "a"), simple_module(d3.algebra, "o"))
