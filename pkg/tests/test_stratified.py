#!/usr/bin/env python3
"""
Tests for the stratum-by-stratum projective cover and its iterative oracle.
"""

import pytest

from qhworkbench.errors import PreconditionError
from qhworkbench.isomorphism import is_isomorphic
from qhworkbench.modules import indecomposable_injective, indecomposable_projective
from qhworkbench.qh import OrderedSimples, QHCategory
from qhworkbench.stratified import (
    SEQUENCE_NAMES,
    injective_hull_iterative,
    injective_hull_stratified,
    projective_cover_iterative,
    projective_cover_stratified,
)

from conftest import category_of

FIXTURES = ["fix-a2", "fix-a2r", "fix-d3", "fix-a3"]


@pytest.mark.parametrize("name", FIXTURES)
def test_stratified_cover_is_the_projective(name):
    """For every vertex the stratified cover is verified and isomorphic to P(s)."""
    category = category_of(name)
    for s in category.algebra.vertices:
        cover = projective_cover_stratified(category, s)
        assert cover.verified, cover.final_checks
        assert is_isomorphic(cover.module, indecomposable_projective(category.algebra, s)).isomorphic

    print(f"✅ Stratified covers of {name} test passed")


@pytest.mark.parametrize("name", FIXTURES)
def test_stratified_hull_is_the_injective(name):
    category = category_of(name)
    for s in category.algebra.vertices:
        hull = injective_hull_stratified(category, s)
        assert hull.verified
        assert hull.module.algebra == category.algebra
        assert is_isomorphic(hull.module, indecomposable_injective(category.algebra, s)).isomorphic


@pytest.mark.parametrize("name", FIXTURES)
def test_iterative_oracle_agrees(name):
    category = category_of(name)
    algebra = category.algebra
    for s in algebra.vertices:
        assert is_isomorphic(projective_cover_iterative(algebra, s), indecomposable_projective(algebra, s))
        assert is_isomorphic(injective_hull_iterative(algebra, s), indecomposable_injective(algebra, s))


def test_iterative_oracle_refuses_an_unfinished_cover(a2):
    """P(a) in FIX-A2 needs one extension of L(a) by L(b)."""
    with pytest.raises(PreconditionError, match="did not stabilize"):
        projective_cover_iterative(a2.algebra, "a", max_steps=0)
    cover = projective_cover_iterative(a2.algebra, "a", max_steps=1)
    assert cover.dims == {"a": 1, "b": 1}
    with pytest.raises(PreconditionError):
        for s in a2.algebra.vertices:
            injective_hull_iterative(a2.algebra, s, max_steps=0)


def test_d3_recursion_records_every_level():
    """The cover of o climbs through all three strata; every diagnostic holds."""
    category = category_of("fix-d3")
    cover = projective_cover_stratified(category, "o")
    levels = cover.levels()

    assert [level.level for level in levels] == [0, 1, 2]
    assert levels[0].diagram is None
    assert levels[0].module.dims == {"o": 1, "m": 0, "p": 0}
    for level in levels[1:]:
        assert all(level.diagnostics.values()), level.diagnostics
        assert sorted(level.diagram.sequences) == sorted(SEQUENCE_NAMES)
        assert level.diagram.sequences_valid
    top = levels[-1].diagram
    assert top.B == {"p": 1}
    assert top.R.is_zero()
    assert cover.purity.passed


def test_open_vertex_needs_no_recursion():
    category = category_of("fix-d3")
    cover = projective_cover_stratified(category, "p")
    assert cover.inner is None
    assert cover.level == 2
    assert cover.module.dims == {"o": 0, "m": 0, "p": 1}


def test_a3_purity_failure_is_reported():
    """The cover of c is still correct, but K(c) is not semisimple at the top level."""
    category = category_of("fix-a3")
    cover = projective_cover_stratified(category, "a")
    assert cover.verified
    failures = cover.purity.kernel_failures
    assert any(f["vertex"] == "c" and not f["semisimple"] for f in failures)
    assert not cover.purity.passed


def test_purity_report_json():
    cover = projective_cover_stratified(category_of("fix-a2"), "a")
    data = cover.purity.to_json()
    assert data["kernel_failures"] == []
    assert data["surviving_ext1"] == {}


def test_stratum_with_extensions_is_rejected(a2):
    category = QHCategory(a2.algebra, OrderedSimples(("a", "b"), (("a", "b"),)))
    with pytest.raises(PreconditionError):
        projective_cover_stratified(category, "a")


def test_stratum_that_is_not_open_at_its_level(d3):
    ordered = OrderedSimples(("o", "m", "p"), (("o",), ("m",), ("p",)), frozenset({(1, 0), (0, 2), (1, 2)}))
    category = QHCategory(d3.algebra, ordered)
    with pytest.raises(PreconditionError):
        projective_cover_stratified(category, "o")
