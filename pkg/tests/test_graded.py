#!/usr/bin/env python3
"""
Tests for the graded nodal ring, its free resolutions and the Tor/Ext towers.
"""

import glob
import os

import pytest

from qhworkbench.errors import InputError
from qhworkbench.graded import (
    DEFAULT_DEPTH,
    PI_MINUS,
    PI_PLUS,
    X_VAR,
    Y_VAR,
    GradedSheaf,
    Monomial,
    Support,
    Tower,
    Weight,
    equivariant_ext,
    explicit_resolution,
    ext_dims,
    ext_tower,
    graded_piece_dim,
    minimal_resolution,
    monomial_of_degree,
    tor_tower,
)
from qhworkbench.validate import load_tower

from conftest import fixture_path

ALL_SUPPORTS = list(Support)


def test_variable_degrees():
    """deg x = −PI_PLUS, deg y = −PI_MINUS."""
    assert X_VAR.degree == -PI_PLUS
    assert Y_VAR.degree == -PI_MINUS
    assert monomial_of_degree(Weight(-4, -2)) == Monomial(2, 0)
    assert monomial_of_degree(Weight(2, -1)) == Y_VAR
    assert monomial_of_degree(Weight(0, 0)) == Monomial()


@pytest.mark.parametrize("nu", [Weight(0, -2), Weight(1, 0), Weight(2, 1), Weight(0, 1)])
def test_degrees_without_monomial(nu):
    assert monomial_of_degree(nu) is None


def test_monomials_live_on_one_axis():
    with pytest.raises(InputError):
        Monomial(1, 1)
    assert X_VAR.times(Y_VAR) is None
    assert X_VAR.times(X_VAR).label() == "x^2"


def test_graded_pieces_follow_the_support():
    """O_Y(λ) has its generator in degree λ and deg x = −PI_PLUS, so O_C+(λ) has its pieces at λ − k·PI_PLUS."""
    lam = Weight(1, 1)
    plus = GradedSheaf(Support.C_PLUS, lam)
    assert graded_piece_dim(plus, lam) == 1
    assert graded_piece_dim(plus, lam - PI_PLUS.scale(3)) == 1
    assert graded_piece_dim(plus, lam - PI_MINUS) == 0
    point = GradedSheaf(Support.C0, lam)
    assert graded_piece_dim(point, lam) == 1
    assert graded_piece_dim(point, lam - PI_PLUS) == 0
    assert GradedSheaf(Support.X, lam, 2).label() == "O_X(1,1)[2]"


@pytest.mark.parametrize("support", ALL_SUPPORTS)
@pytest.mark.parametrize("twist", [Weight(0, 0), Weight(3, -2)])
def test_explicit_resolution_matches_oracle(support, twist):
    """Generator degrees of the written-down resolution agree with the computed one."""
    sheaf = GradedSheaf(support, twist)
    explicit = explicit_resolution(sheaf, 4)
    oracle = minimal_resolution(sheaf, 4)
    assert explicit.tor_entries() == oracle.tor_entries()


def test_resolution_depth_must_be_non_negative():
    with pytest.raises(InputError):
        explicit_resolution(GradedSheaf(Support.X, Weight(0, 0)), -1)
    with pytest.raises(InputError):
        ext_tower(GradedSheaf(Support.X, Weight(0, 0)), -1)


def test_ext_dims_needs_a_deep_enough_resolution():
    resolution = explicit_resolution(GradedSheaf(Support.C0, Weight(0, 0)), 2)
    with pytest.raises(InputError):
        ext_dims(resolution, GradedSheaf(Support.X, Weight(0, 0)), 2)


@pytest.mark.parametrize("path", sorted(glob.glob(fixture_path("towers", "*.json"))))
def test_towers_match_recorded_fixtures(path):
    recorded = load_tower(path)
    compute = tor_tower if recorded.kind == "tor" else ext_tower
    assert compute(recorded.sheaf, recorded.depth) == recorded, os.path.basename(path)


def test_recorded_fixtures_cover_every_support():
    names = {os.path.basename(p) for p in glob.glob(fixture_path("towers", "*.json"))}
    for support in ALL_SUPPORTS:
        assert f"tor-{support.value}.json" in names
        assert f"ext-{support.value}.json" in names


@pytest.mark.parametrize("support", ALL_SUPPORTS)
@pytest.mark.parametrize("compute", [tor_tower, ext_tower])
@pytest.mark.parametrize("twist", [Weight(1, -1), Weight(1, 2)])
def test_towers_match_oracle_at_full_depth(support, compute, twist):
    sheaf = GradedSheaf(support, twist)
    assert compute(sheaf, DEFAULT_DEPTH) == compute(sheaf, DEFAULT_DEPTH, oracle=True)


@pytest.mark.parametrize("support", [Support.C_PLUS, Support.C_MINUS, Support.C0])
@pytest.mark.parametrize("oracle", [False, True])
def test_towers_have_period_two(support, oracle):
    """Two homological steps move Tor by −(PI_PLUS + PI_MINUS) and Ext by +(PI_PLUS + PI_MINUS)."""
    period = PI_PLUS + PI_MINUS
    assert period == Weight(0, 2)
    sheaf = GradedSheaf(support, Weight(1, -1))
    tor = tor_tower(sheaf, DEFAULT_DEPTH, oracle=oracle)
    ext = ext_tower(sheaf, DEFAULT_DEPTH, oracle=oracle)
    for i in range(DEFAULT_DEPTH - 1):
        assert tor.at(i)
        assert (i + 2, tor.at(i)[0] - period) in tor.entries
        if i >= 1:
            assert sorted(w - period for w in tor.at(i)) == sorted(tor.at(i + 2))
            assert sorted(w + period for w in ext.at(i)) == sorted(ext.at(i + 2))


def test_towers_move_with_the_twist():
    lam = Weight(4, -1)
    base = tor_tower(GradedSheaf(Support.C_MINUS, Weight(0, 0)))
    moved = tor_tower(GradedSheaf(Support.C_MINUS, lam))
    assert [(i, w + lam) for i, w in base.entries] == list(moved.entries)


def test_leading_terms_of_curve_towers():
    """Tor_0 = {λ} and Ext¹ = {λ + PI_PLUS} for the positive branch; Ext⁰ vanishes."""
    lam = Weight(-3, 5)
    sheaf = GradedSheaf(Support.C_PLUS, lam)
    assert tor_tower(sheaf).at(0) == [lam]
    ext = ext_tower(sheaf)
    assert ext.at(0) == []
    assert ext.at(1) == [lam + PI_PLUS]
    assert ext_tower(GradedSheaf(Support.C_MINUS, lam)).at(1) == [lam + PI_MINUS]


def test_depth_zero_towers():
    lam = Weight(2, 2)
    assert tor_tower(GradedSheaf(Support.C0, lam), 0).entries == ((0, lam),)
    assert ext_tower(GradedSheaf(Support.C0, lam), 0).entries == ((0, lam),)
    assert ext_tower(GradedSheaf(Support.X, lam), 0).entries == ()


def test_equivariant_ext_between_sheaves():
    zero = Weight(0, 0)
    plus = GradedSheaf(Support.C_PLUS, zero)
    assert equivariant_ext(GradedSheaf(Support.C0, PI_PLUS), plus, 1) == 1
    assert equivariant_ext(GradedSheaf(Support.C0, zero), plus, 0) == 0
    assert equivariant_ext(GradedSheaf(Support.C0, zero), GradedSheaf(Support.C0, zero), 0) == 1
    assert equivariant_ext(plus, plus, -1) == 0


def test_tower_json_form():
    tower = tor_tower(GradedSheaf(Support.C_PLUS, Weight(0, 0)), 2)
    data = tower.to_json()
    assert data == {
        "kind": "tor",
        "support": "C+",
        "twist": [0, 0],
        "depth": 2,
        "entries": [[0, [0, 0]], [1, [2, -1]], [2, [0, -2]]],
    }
    assert Tower.from_json(data) == tower
    assert DEFAULT_DEPTH == 6


def test_weight_parsing():
    assert Weight.from_json([1, -1]) == Weight(1, -1)
    with pytest.raises(InputError):
        Weight.from_json([1, 2, 3])
    assert str(Weight(1, -1)) == "(1,-1)"
