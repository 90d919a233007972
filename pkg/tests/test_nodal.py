#!/usr/bin/env python3
"""
Tests for the nodal-curve example: shifts, derived blocks and their verification.
"""

import pytest

from qhworkbench.errors import InputError
from qhworkbench.graded import GradedSheaf, Support, Weight
from qhworkbench.nodal import (
    DEFAULT_CONFIG,
    NodalConfig,
    block_leaks,
    block_simples,
    branch_leading_terms_check,
    build_block,
    costandard_minus,
    costandard_plus,
    cover_radical,
    ext1_between_simples,
    is_aligned,
    restrict_open,
    simple_minus,
    simple_plus,
    simple_zero,
    skew_degree,
    staggered_shift,
    verify_block,
    verify_block_range,
    vertex_name,
)
from qhworkbench.modules import is_semisimple
from qhworkbench.stratified import projective_cover_stratified


@pytest.mark.parametrize("n", [-3, -1, 0, 2, 5])
def test_printed_shifts_are_staggered_degrees(n):
    """Every simple and costandard object is printed in its heart-aligned shift."""
    for sheaf in (simple_plus(n), simple_minus(n), simple_zero(4, n), costandard_plus(n), costandard_minus(n)):
        assert staggered_shift(sheaf) == n, sheaf.label()
        assert is_aligned(sheaf)


@pytest.mark.parametrize("n", [-2, 0, 3])
def test_skew_degrees(n):
    assert skew_degree(simple_zero(0, n)) == 2 * n
    assert skew_degree(simple_plus(n)) == 2 * n - 1
    assert skew_degree(simple_minus(n)) == 2 * n - 1


def test_skew_degree_needs_alignment():
    with pytest.raises(InputError):
        skew_degree(GradedSheaf(Support.C_PLUS, Weight(0, 0), 3))


def test_structure_sheaf_has_no_cocharacter():
    with pytest.raises(InputError):
        staggered_shift(GradedSheaf(Support.X, Weight(0, 0)))


def test_perversity_moves_the_shift():
    config = NodalConfig(perversity={Support.C_PLUS: 1, Support.C_MINUS: 0, Support.C0: 0})
    assert staggered_shift(simple_plus(2), config) == 1
    assert not is_aligned(simple_plus(2), config)
    assert staggered_shift(simple_plus(2), DEFAULT_CONFIG) == 2


def test_restriction_to_open_orbits():
    assert restrict_open(costandard_plus(3), Support.C_PLUS) == 3
    assert restrict_open(simple_plus(3), Support.C_PLUS) == 3
    assert restrict_open(costandard_minus(-2), Support.C_MINUS) == -2
    assert restrict_open(simple_zero(1, 1), Support.C_PLUS) is None
    assert restrict_open(costandard_plus(1), Support.C_MINUS) is None
    with pytest.raises(InputError):
        restrict_open(costandard_plus(1), Support.C0)


def test_vertex_names():
    assert vertex_name(simple_plus(2)) == "L+(2)"
    assert vertex_name(simple_minus(-1)) == "L-(-1)"
    assert vertex_name(simple_zero(-1, 3)) == "L0(-1,3)"
    with pytest.raises(InputError):
        vertex_name(GradedSheaf(Support.X, Weight(0, 0)))


@pytest.mark.parametrize("n", [-2, 0, 1])
def test_ext1_arrows_into_the_branches(n):
    """Ext¹(L0(n,n), L+(n)) and Ext¹(L0(−n,n), L−(n)) are one-dimensional; the reverse vanishes."""
    assert ext1_between_simples(simple_zero(n, n), simple_plus(n)) == 1
    assert ext1_between_simples(simple_zero(-n, n), simple_minus(n)) == 1
    assert ext1_between_simples(simple_plus(n), simple_zero(n, n)) == 0
    assert ext1_between_simples(simple_zero(n + 1, n), simple_plus(n)) == 0


def test_ext1_needs_simple_objects():
    with pytest.raises(InputError):
        ext1_between_simples(costandard_plus(1), simple_zero(1, 1))


def test_block_zero_quiver():
    """Block 0: L0(0,0) maps to both branch simples and nothing else is linked."""
    block = build_block(0)

    assert [s.support for s in block_simples(0)][-2:] == [Support.C_MINUS, Support.C_PLUS]
    assert sorted(a.name for a in block.spec.arrows) == ["L0(0,0)->L+(0)", "L0(0,0)->L-(0)"]
    assert block.ordered.strata[1:] == (("L-(0)",), ("L+(0)",))
    assert block.skew.skdeg["L+(0)"] == -1
    assert block.expected["projective"]["L0(0,0)"] == {
        "L0(-1,0)": 0, "L0(0,0)": 1, "L0(1,0)": 0, "L-(0)": 1, "L+(0)": 1,
    }

    print("✅ Block 0 quiver test passed")


def test_block_zero_cover_radical():
    """The stratified cover of L0(0,0) is an extension of L0(0,0) by L+(0) ⊕ L-(0)."""
    block = build_block(0)
    category = block.category()
    cover = projective_cover_stratified(category, "L0(0,0)")
    radical = cover_radical(cover, category)

    assert is_semisimple(radical)
    assert radical.dims == {"L0(-1,0)": 0, "L0(0,0)": 0, "L0(1,0)": 0, "L-(0)": 1, "L+(0)": 1}


def test_block_one_quiver():
    block = build_block(1)
    assert sorted(a.name for a in block.spec.arrows) == ["L0(-1,1)->L-(1)", "L0(1,1)->L+(1)"]
    assert len(block.spec.vertices) == 7
    assert block.expected["costandard"]["L+(1)"]["L0(1,1)"] == 1


def test_block_json():
    data = build_block(0).to_json()
    assert data["n"] == 0
    assert ["L0(0,0)->L+(0)", "L0(0,0)", "L+(0)"] in data["arrows"]
    assert data["objects"]["L+(0)"] == "O_C+(-2,-1)"
    assert data["ordered"]["closure"] == [[0, 1], [0, 2]]


def test_block_leaks_link_neighbouring_blocks():
    leaks = block_leaks(0)
    assert {"from": "L+(0)", "to": "L0(-2,-1)", "dim": 1} in leaks
    assert all(leak["dim"] > 0 for leak in leaks)


@pytest.mark.parametrize("n", [-1, 0, 2])
def test_verify_block(n):
    results = verify_block(build_block(n))
    failed = [(r.check, r.witnesses) for r in results if not r.passed]
    assert not failed, failed
    names = [r.check for r in results]
    assert "projective-covers" in names and "skew-constraint" in names


def test_branch_leading_terms():
    result = branch_leading_terms_check(depth=4)
    assert result.passed
    assert result.tables["C+"]["leading_terms"]
    assert set(result.tables) == {"C+", "C-"}


def test_verify_range():
    """Every block from −3 to 3 passes; the report lists blocks in increasing order."""
    report = verify_block_range(range(3, -4, -1))

    assert report["command"] == "nodal-verify"
    assert report["pass"], [r["check"] for r in report["results"] if not r["pass"]]
    assert [b["n"] for b in report["blocks"]] == [-3, -2, -1, 0, 1, 2, 3]
    assert report["results"][0]["check"] == "block[-3].shifts"
    assert report["results"][-1]["check"] == "branch-leading-terms"
    assert set(report["block_leaks"]) == {str(n) for n in range(-3, 4)}

    print("✅ Nodal verification range test passed")


def test_empty_range_has_no_leading_term_check():
    report = verify_block_range([])
    assert report["results"] == []
    assert report["pass"]
