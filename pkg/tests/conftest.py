"""
Shared fixtures: the algebra and module files shipped with the package.
"""

import os
import sys

import pytest

# Add current directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from qhworkbench.qh import QHCategory
from qhworkbench.validate import load_algebra, load_module

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "qhworkbench", "fixtures")


def fixture_path(*parts: str) -> str:
    return os.path.join(FIXTURES, *parts)


def load_fixture(name: str):
    return load_algebra(fixture_path(f"{name}.json"))


def category_of(name: str) -> QHCategory:
    loaded = load_fixture(name)
    return QHCategory(loaded.algebra, loaded.ordered, loaded.skew)


@pytest.fixture
def a2():
    return load_fixture("fix-a2")


@pytest.fixture
def a2r():
    return load_fixture("fix-a2r")


@pytest.fixture
def d3():
    return load_fixture("fix-d3")


@pytest.fixture
def a3():
    return load_fixture("fix-a3")


@pytest.fixture
def a2_proj_a(a2):
    return load_module(fixture_path("modules", "a2-proj-a.json"), a2.algebra)
