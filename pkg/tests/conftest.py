"""
Shared fixtures for the qbg-mobius test-suite.

Root systems, groups and quantum Bruhat graphs are cached at module level, so the fixtures
are cheap and the same objects can be used inside hypothesis tests, which must not depend on
function-scoped fixtures.

Usage:
    pytest tests/ -v
    pytest tests/ -m "not slow"
"""

from types import SimpleNamespace

import pytest

from qbg_mobius.affine import Convention, affine_weyl_group
from qbg_mobius.cartan import root_system
from qbg_mobius.qbg import build_qbg


def group_for(label, convention=Convention.UNTWISTED):
    return affine_weyl_group(root_system(label), convention)


def graph_for(label, convention=Convention.UNTWISTED):
    return build_qbg(root_system(label), convention)


def example_chain(group):
    """The saturated chain x ⋖ z₂ ⋖ z₁ ⋖ y in A2 with y = s₁s₂ t(-4,-4), plus z₃ and u."""
    return SimpleNamespace(
        x=group.element([2], [3, 2]),
        z2=group.element([1, 2], [-3, -4]),
        z1=group.element([1, 2, 1], [-4, -4]),
        y=group.element([1, 2], [-4, -4]),
        z3=group.element([], [3, 3]),
        u=group.element([1, 2, 1], [-1, -4]),
    )


@pytest.fixture
def a2():
    return root_system("A2")


@pytest.fixture
def a2_group():
    return group_for("A2")


@pytest.fixture
def a2_graph():
    return graph_for("A2")


@pytest.fixture
def example(a2_group):
    return example_chain(a2_group)


@pytest.fixture
def deep_top(a2_group):
    """y = s₁s₂ t(-10,-10), superregular for every profile valid in A2."""
    return a2_group.element([1, 2], [-10, -10])
