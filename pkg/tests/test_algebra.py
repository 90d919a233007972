#!/usr/bin/env python3
"""
Tests for algebra presentations and the path basis.
"""

import pytest

from qhworkbench.algebra import AlgebraSpec, PathAlgebra, path_algebra, validate_algebra
from qhworkbench.errors import AlgebraValidationError, InputError


def square(relation):
    return AlgebraSpec.build(
        ["1", "2", "3", "4"],
        [("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
        [relation],
    )


def test_a2_path_basis(a2):
    """A2 has basis e_a, alpha, e_b."""
    report = a2.algebra.report()

    assert report.dimension == 3
    assert [p.label() for p in report.basis] == ["e_a", "alpha", "e_b"]
    assert report.projective_dims == {"a": 2, "b": 1}

    print("✅ A2 path basis test passed")


def test_commutative_square_identifies_parallel_paths():
    """With a.b = c.d the two long paths have the same coordinates."""
    algebra = path_algebra(square([(1, ["a", "b"]), (-1, ["c", "d"])]))

    assert algebra.dimension() == 9
    assert len(algebra.basis[("1", "4")]) == 1
    assert algebra.reduce("1", "4", ("a", "b")) == algebra.reduce("1", "4", ("c", "d"))


def test_zero_relation_kills_path():
    algebra = path_algebra(square([(1, ["a", "b"])]))
    assert [p.arrows for p in algebra.basis[("1", "4")]] == [("c", "d")]
    assert all(x == 0 for x in algebra.reduce("1", "4", ("a", "b")))


def test_loop_with_nilpotent_relation_is_finite():
    spec = AlgebraSpec.build(["v"], [("x", "v", "v")], [[(1, ["x", "x"])]])
    assert validate_algebra(spec).dimension == 2


def test_loop_without_relation_is_rejected():
    """An unbounded cycle is reported with the vertex it runs through."""
    spec = AlgebraSpec.build(["v"], [("ell", "v", "v")])
    with pytest.raises(AlgebraValidationError) as excinfo:
        PathAlgebra(spec)
    assert "'v'" in str(excinfo.value)
    assert "ell" in str(excinfo.value)


@pytest.mark.parametrize("vertices, arrows, relations", [
    (["a", "a"], [], []),
    (["a", "b"], [("x", "a", "c")], []),
    (["a", "b"], [("x", "a", "b"), ("x", "b", "a")], []),
    (["a", "b", "c"], [("x", "a", "b"), ("y", "a", "c")], [[(1, ["x"]), (1, ["y"])]]),
    (["a", "b"], [("x", "a", "b")], [[(1, ["y"])]]),
    (["a", "b", "c"], [("x", "a", "b"), ("y", "a", "c")], [[(1, ["x", "y"])]]),
])
def test_malformed_presentations_are_input_errors(vertices, arrows, relations):
    with pytest.raises(InputError):
        PathAlgebra(AlgebraSpec.build(vertices, arrows, relations))


def test_opposite_reverses_arrows_and_is_involutive(d3):
    algebra = d3.algebra
    op = algebra.opposite()

    assert op.arrow("to_p").source == "p"
    assert op.arrow("to_p").target == "o"
    assert op.opposite() is algebra
    assert op.dimension() == algebra.dimension()


def test_path_algebra_is_memoized(a2):
    assert path_algebra(a2.spec) is a2.algebra


def test_multiply_checks_composability(a2):
    algebra = a2.algebra
    alpha = algebra.basis[("a", "b")][0]
    e_a = algebra.basis[("a", "a")][0]
    assert algebra.multiply(e_a, alpha) == (1,)
    with pytest.raises(InputError):
        algebra.multiply(alpha, e_a)
