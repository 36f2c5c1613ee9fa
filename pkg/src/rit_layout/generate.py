"""Synthetic tree generation for testing and benchmarking.

Three generator kinds:

* fixed: every internal node has exactly c_max children.
* random: each parent draws its child count uniformly from [1, c_max].
* semi-random: like random, but the per-depth cap follows a schedule with
  an overall decreasing trend (default: c_max dropping by 1 every two
  levels, floored at 2).

Leaves get value 1 and internal values are the sum of their children, so
every generated tree is exactly full at every parent - the hardest case
for the separation geometry.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .tree import TreeNode

KINDS = ("fixed", "random", "semi-random")


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    c_max: int
    depth: int
    seed: int = 0
    schedule: tuple[int, ...] | None = None

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.c_max < 1:
            raise ValueError(f"c_max must be >= 1, got {self.c_max}")
        if self.depth < 1:
            raise ValueError(f"depth must be >= 1, got {self.depth}")
        if self.schedule is not None:
            if self.kind != "semi-random":
                raise ValueError("schedule applies only to semi-random trees")
            if len(self.schedule) != self.depth:
                raise ValueError(
                    f"schedule length {len(self.schedule)} != depth {self.depth}"
                )
            if any(c < 1 for c in self.schedule):
                raise ValueError("schedule entries must be >= 1")


def default_schedule(c_max: int, depth: int) -> tuple[int, ...]:
    floor = min(2, c_max)
    return tuple(max(floor, c_max - level // 2) for level in range(depth))


def generate_tree(spec: GeneratorSpec) -> TreeNode:
    """Deterministic tree for the spec; same seed, same tree."""
    spec.validate()
    rng = random.Random(spec.seed)
    if spec.kind == "semi-random":
        schedule = spec.schedule or default_schedule(spec.c_max, spec.depth)
    else:
        schedule = (spec.c_max,) * spec.depth
    counter = 0

    def build(level: int) -> TreeNode:
        nonlocal counter
        node = TreeNode(id=f"n{counter}", label=f"n{counter}", value=0.0)
        counter += 1
        if level == spec.depth:
            node.value = 1.0
            return node
        cap = schedule[level]
        n_children = cap if spec.kind == "fixed" else rng.randint(1, cap)
        node.children = [build(level + 1) for _ in range(n_children)]
        node.value = float(sum(c.value for c in node.children))
        return node

    return build(0)


def node_count(spec: GeneratorSpec) -> int:
    """Exact count for fixed trees: (c^(d+1)-1)/(c-1), or d+1 for c=1."""
    if spec.kind != "fixed":
        raise ValueError("only fixed trees have a closed-form node count")
    c, d = spec.c_max, spec.depth
    if c == 1:
        return d + 1
    return (c ** (d + 1) - 1) // (c - 1)


def demo_tree() -> TreeNode:
    """Hand-built sample hierarchy exercising the three classic defects.

    It contains thin leaves (hard to see), equal-colored neighbours across
    a subtree boundary (visually merge without gaps), and two equal-valued
    nodes at different depths (equal values must get equal areas).
    """

    def n(id_, value, color, children=()):
        return TreeNode(id=id_, label=id_, value=value, color=color, children=list(children))

    return n(
        "root", 100, "#bbbbbb",
        [
            n(
                "red", 75, "#e05a4e",
                [
                    n(
                        "orange", 30, "#e8963f",
                        [
                            n("yellow", 18, "#e5c24b"),
                            n("thin-green-1", 1, "#57a55a"),
                            n("yellow-2", 11, "#d9cf6e"),
                        ],
                    ),
                    n(
                        "crimson", 35, "#c23b52",
                        [
                            n("green-10-a", 10, "#57a55a"),
                            n("thin-pale-green", 1, "#a8d5a8"),
                            n("purple", 24, "#8e6bb5"),
                        ],
                    ),
                    n("green-10-b", 10, "#57a55a"),
                ],
            ),
            n(
                "blue", 25, "#4e79d0",
                [
                    n(
                        "green-15", 15, "#57a55a",
                        [
                            n("pale-purple-9.5", 9.5, "#c5a8e0"),
                            n("thin-green-2", 1, "#57a55a"),
                            n("teal", 4.5, "#4fa3a5"),
                        ],
                    ),
                    n(
                        "blue-2", 10, "#6c95dc",
                        [n("pale-purple-5", 5, "#c5a8e0")],
                    ),
                ],
            ),
        ],
    )
