import math

import pytest

from rit_layout import LayoutConfig, demo_tree, normalize
from rit_layout.tree import TreeNode

TAU = 2.0 * math.pi


def full_chain(n: int, value: float = 1.0) -> TreeNode:
    """Path tree where every node carries the full root value."""
    nodes = [TreeNode(id=f"c{i}", label=f"c{i}", value=value) for i in range(n)]
    for parent, child in zip(nodes, nodes[1:]):
        parent.children = [child]
    return nodes[0]


def tree_equal_ignoring_ids(a, b) -> bool:
    if (a.label, a.value, a.color) != (b.label, b.value, b.color):
        return False
    if len(a.children) != len(b.children):
        return False
    return all(tree_equal_ignoring_ids(x, y) for x, y in zip(a.children, b.children))


@pytest.fixture
def demo():
    return normalize(demo_tree(), "strict")


@pytest.fixture
def default_cfg():
    return LayoutConfig(r0=8.0, h0=2.0, beta0=TAU)
