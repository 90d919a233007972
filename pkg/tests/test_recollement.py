#!/usr/bin/env python3
"""
Tests for restriction to open vertices and the extension functors.
"""

import random

import pytest

from qhworkbench.errors import InputError
from qhworkbench.homological import hom_basis, hom_dim
from qhworkbench.linalg import rank
from qhworkbench.isomorphism import is_isomorphic
from qhworkbench.modules import (
    indecomposable_injective,
    indecomposable_projective,
    random_module,
    simple_module,
)
from qhworkbench.recollement import (
    intermediate_extension,
    lower_extension,
    open_adjoints,
    restrict_map,
    restrict_to_open,
    truncation,
    upper_extension,
)


def test_restriction_keeps_open_spaces(a2, a2_proj_a, d3):
    F = restrict_to_open(a2_proj_a, {"b"})
    assert F.dims == {"b": 1}
    assert F.total_dim() == 1

    G = restrict_to_open(indecomposable_projective(d3.algebra, "o"), {"p", "m"})
    assert G.dims == {"m": 1, "p": 1}
    assert G.algebra.arrows == ()


def test_restricting_a_map(a2, a2_proj_a):
    P_b = indecomposable_projective(a2.algebra, "b")
    (f,) = hom_basis(P_b, a2_proj_a)
    g = restrict_map(f, {"b"})
    assert g.source.dims == {"b": 1}
    assert g.target.dims == {"b": 1}
    assert rank(g.components["b"]) == 1


def test_truncated_algebra_generators(d3):
    """Paths between open vertices become generators of eAe."""
    T = truncation(d3.algebra, frozenset({"o", "p"}))
    assert list(T.generators) == ["to_p"]
    with pytest.raises(InputError):
        T.check_vertex("m")


def test_extensions_of_simple_in_a2(a2, a2_proj_a):
    """j_! L(b) = S(b), j_* L(b) = P(a) and the image of the canonical map is S(b)."""
    F = restrict_to_open(simple_module(a2.algebra, "b"), {"b"})
    S_b = simple_module(a2.algebra, "b")

    assert is_isomorphic(lower_extension(F).module, S_b).isomorphic
    upper, counit = upper_extension(F)
    assert is_isomorphic(upper, a2_proj_a).isomorphic
    assert counit["b"].shape == (1, 1)
    assert is_isomorphic(intermediate_extension(F), S_b).isomorphic

    print("✅ Extensions of a simple test passed")


def test_extensions_of_simple_in_d3(d3):
    F = restrict_to_open(simple_module(d3.algebra, "p"), {"p", "m"})
    adjoints = open_adjoints(F)

    assert is_isomorphic(adjoints.lower, simple_module(d3.algebra, "p")).isomorphic
    assert is_isomorphic(adjoints.upper, indecomposable_injective(d3.algebra, "p")).isomorphic
    assert adjoints.canonical.is_injective()
    assert intermediate_extension(F).dims == {"o": 0, "m": 0, "p": 1}


def test_open_adjoints_needs_truncated_module(a2, a2_proj_a):
    with pytest.raises(InputError):
        open_adjoints(a2_proj_a)


def test_adjunction_dimensions(d3):
    """dim Hom(j_! F, G) = dim Hom(F, j* G) and dim Hom(G, j_* F) = dim Hom(j* G, F)."""
    rng = random.Random(3)
    open_set = {"o", "p"}
    for _ in range(5):
        F = restrict_to_open(random_module(d3.algebra, rng, max_dim=2), open_set)
        G = random_module(d3.algebra, rng, max_dim=2)
        G_open = restrict_to_open(G, open_set)
        assert hom_dim(lower_extension(F).module, G) == hom_dim(F, G_open)
        upper, _ = upper_extension(F)
        assert hom_dim(G, upper) == hom_dim(G_open, F)
