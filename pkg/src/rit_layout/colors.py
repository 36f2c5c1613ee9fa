"""Hierarchical color assignment for trees without explicit colors.

The default scheme partitions the hue wheel: each child receives an equal
slice of its parent's hue range, takes its color from the middle of that
slice, and varies saturation/value with depth and sibling index so that
near hues stay distinguishable.  Explicit input colors are never replaced,
but the range bookkeeping still descends through them.
"""

from __future__ import annotations

import colorsys
from dataclasses import replace

from .tree import NormalizedNode

ROOT_GREY = "#9e9e9e"

FIXED_PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
)

_SATURATIONS = (0.78, 0.58, 0.42)
_VALUES = (0.88, 0.72, 0.95)


def hsv_hex(hue_deg: float, sat: float, val: float) -> str:
    r, g, b = colorsys.hsv_to_rgb((hue_deg % 360.0) / 360.0, sat, val)
    return "#{:02x}{:02x}{:02x}".format(round(r * 255), round(g * 255), round(b * 255))


def hex_hue(color: str) -> float:
    """Hue of an #RRGGBB color in degrees."""
    r = int(color[1:3], 16) / 255.0
    g = int(color[3:5], 16) / 255.0
    b = int(color[5:7], 16) / 255.0
    return colorsys.rgb_to_hsv(r, g, b)[0] * 360.0


def assign_colors(tree: NormalizedNode, palette: str = "hue-partition") -> NormalizedNode:
    """Return a copy of the tree with missing colors filled in."""
    if palette == "hue-partition":
        return _assign_hue_partition(tree)
    if palette == "fixed-list":
        counter = [0]

        def fill(node: NormalizedNode) -> NormalizedNode:
            color = node.color
            if color is None:
                color = FIXED_PALETTE[counter[0] % len(FIXED_PALETTE)]
                counter[0] += 1
            return replace(node, color=color, children=[fill(c) for c in node.children])

        root = fill(tree)
        if tree.color is None:
            root = replace(root, color=ROOT_GREY)
        return root
    raise ValueError(f"unknown palette {palette!r}")


def _assign_hue_partition(tree: NormalizedNode) -> NormalizedNode:
    def fill(node: NormalizedNode, lo: float, hi: float, depth: int, index: int) -> NormalizedNode:
        if node.color is not None:
            color = node.color
        elif depth == 0:
            color = ROOT_GREY
        else:
            hue = 0.5 * (lo + hi)
            sat = _SATURATIONS[(depth - 1) % len(_SATURATIONS)]
            val = _VALUES[index % len(_VALUES)]
            color = hsv_hex(hue, sat, val)
        count = len(node.children)
        width = (hi - lo) / count if count else 0.0
        children = [
            fill(child, lo + i * width, lo + (i + 1) * width, depth + 1, i)
            for i, child in enumerate(node.children)
        ]
        return replace(node, color=color, children=children)

    return fill(tree, 0.0, 360.0, 0, 0)
