"""Recursive radial-icicle layout plus sunburst and icicle baselines.

The radial-icicle layout walks the tree one sibling frame at a time and
touches every non-root node exactly three times: once to place its sector,
once to fix its wedge angle, once to add the top-up and recurse.  The
instrumented visit counter therefore ends at 3*(N-1) + 1.

Two angle modes:

* contained (default): each frame compresses its angle scale by
  k = min(1, available_span / (scale * sum(child data))) so children always
  fit the parent's post-wedge span; ring heights are solved against the
  compressed scale, which keeps every node's area equal to data times the
  standard area.
* literal: child angles are always 2*pi*data and heights come from the
  full-annulus solution; children of full parents overflow their frame by
  exactly the parent's wedge angle, which diagnostics reports rather than
  hides.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

from . import geometry as geo
from .geometry import (
    TAU,
    Path,
    SectorGeometry,
    build_node_path,
    clamp_wedge_angle,
    height_for_scale,
    is_full_turn,
    rect_path,
    sector_area,
    shift_path,
    topup_height,
    wedge_pair_area,
)
from .tree import NormalizedNode

MODES = ("contained", "literal")
TOPUP_VARIANTS = ("exact", "half")
STYLES = ("rit", "sunburst", "icicle")


@dataclass(frozen=True)
class LayoutConfig:
    """Root placement and wedge controls.

    ``ar0`` is the initial wedge-angle ratio alpha/beta for depth-1 nodes;
    ``acr`` multiplies it per generation.  ``topup_variant="half"`` selects
    the deliberately deficient top-up solve kept for measurement.
    """

    theta0: float = 0.0
    beta0: float = TAU
    r0: float = 8.0
    h0: float = 2.0
    ar0: float = 0.1
    acr: float = 1.0
    mode: str = "contained"
    relax_enabled: bool = False
    relax_threshold: float = 0.01
    topup_variant: str = "exact"

    def validate(self) -> None:
        if not 0.0 < self.beta0 <= TAU + geo.FULL_TURN_TOL:
            raise ValueError(f"beta0 must be in (0, 2*pi], got {self.beta0}")
        if self.r0 < 0.0:
            raise ValueError(f"r0 must be >= 0, got {self.r0}")
        if self.h0 <= 0.0:
            raise ValueError(f"h0 must be > 0, got {self.h0}")
        if not 0.0 < self.ar0 < 0.5:
            raise ValueError(f"ar0 must be in (0, 0.5), got {self.ar0}")
        if self.acr <= 0.0:
            raise ValueError(f"acr must be > 0, got {self.acr}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.relax_threshold < 0.0:
            raise ValueError(f"relax threshold must be >= 0, got {self.relax_threshold}")
        if self.topup_variant not in TOPUP_VARIANTS:
            raise ValueError(f"topup_variant must be one of {TOPUP_VARIANTS}")
        if not math.isfinite(self.theta0):
            raise ValueError(f"theta0 must be finite, got {self.theta0}")


@dataclass(frozen=True)
class PlacedNode:
    """One laid-out node: identity, geometry, outline, and placement frame.

    For the icicle style the sector fields are band coordinates: theta is
    the x offset, beta the width, r_in the distance of the row's top from
    the root's top edge.
    """

    id: str
    label: str
    color: str | None
    data: float
    depth: int
    parent: str | None
    sector: SectorGeometry
    path: Path
    frame_theta: float
    frame_beta: float
    angle_scale: float
    relaxed: bool = False


@dataclass(frozen=True)
class Layout:
    style: str
    config: LayoutConfig
    a_std: float
    nodes: tuple[PlacedNode, ...]
    visits: int

    def __post_init__(self) -> None:
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate node ids in layout")

    def node(self, node_id: str) -> PlacedNode:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise KeyError(node_id)

    def sibling_groups(self) -> list[list[PlacedNode]]:
        """Children grouped by parent, in placement order."""
        groups: dict[str, list[PlacedNode]] = {}
        for n in self.nodes:
            if n.parent is not None:
                groups.setdefault(n.parent, []).append(n)
        return list(groups.values())


def _check_tree(tree: NormalizedNode) -> None:
    for node in tree.walk():
        if node.data < 0.0 or not math.isfinite(node.data):
            raise ValueError(f"node {node.id!r} has invalid data value {node.data}")
    if tree.data != 1.0:
        raise ValueError(f"root data must be exactly 1, got {tree.data}")


def layout_rit(tree: NormalizedNode, cfg: LayoutConfig = LayoutConfig()) -> Layout:
    """Radial icicle layout: separation wedges plus exact area compensation."""
    cfg.validate()
    _check_tree(tree)
    theta0 = geo.normalize_angle(cfg.theta0)
    a_std = sector_area(cfg.r0, cfg.h0, cfg.beta0)
    root_sector = SectorGeometry(
        theta=theta0, beta=cfg.beta0, alpha=0.0, r_in=cfg.r0, height=cfg.h0, depth=0
    )
    nodes: list[PlacedNode] = [
        PlacedNode(
            id=tree.id,
            label=tree.label,
            color=tree.color,
            data=tree.data,
            depth=0,
            parent=None,
            sector=root_sector,
            path=build_node_path(root_sector),
            frame_theta=theta0,
            frame_beta=cfg.beta0,
            angle_scale=TAU,
        )
    ]
    visits = 1

    # Frame stack: (parent model node, frame start, frame width, incoming
    # angle scale, child inner radius, wedge ratio, child depth).
    stack: list[tuple[NormalizedNode, float, float, float, float, float, int]] = [
        (tree, theta0, cfg.beta0, TAU, cfg.r0 + cfg.h0, cfg.ar0, 1)
    ]
    while stack:
        parent, f_theta, f_beta, scale_in, r, ar, depth = stack.pop()
        children = parent.children
        if not children:
            continue
        total = sum(c.data for c in children)
        if cfg.mode == "contained" and total > 0.0 and f_beta > 0.0:
            k = min(1.0, f_beta / (scale_in * total))
        else:
            k = 1.0
        scale = scale_in * k
        h = height_for_scale(r, scale, a_std)
        big_r = r + h

        # Pass 1: place every child sector, packed from the frame start.
        placed: list[list] = []
        theta_c = f_theta
        for child in children:
            beta_c = scale * child.data
            placed.append([child, theta_c, beta_c])
            theta_c += beta_c
            visits += 1

        # Pass 2: fix wedge angles (full annuli and zero-width nodes exempt).
        for entry in placed:
            beta_c = entry[2]
            if beta_c <= 0.0 or is_full_turn(beta_c):
                entry.append(0.0)
            else:
                entry.append(clamp_wedge_angle(ar, beta_c, r, big_r))
            visits += 1

        # Pass 3: top-ups, node records, and child frames.
        recurse: list[tuple] = []
        for child, theta_child, beta_c, alpha in placed:
            if alpha > 0.0:
                lost = wedge_pair_area(r, h, alpha)
                h_top = topup_height(big_r, beta_c, alpha, lost, cfg.topup_variant)
            else:
                h_top = 0.0
            sector = SectorGeometry(
                theta=theta_child,
                beta=beta_c,
                alpha=alpha,
                r_in=r,
                height=h,
                topup_height=h_top,
                depth=depth,
            )
            nodes.append(
                PlacedNode(
                    id=child.id,
                    label=child.label,
                    color=child.color,
                    data=child.data,
                    depth=depth,
                    parent=parent.id,
                    sector=sector,
                    path=_node_path_or_empty(sector),
                    frame_theta=f_theta,
                    frame_beta=f_beta,
                    angle_scale=scale,
                )
            )
            visits += 1
            if child.children:
                recurse.append(
                    (
                        child,
                        theta_child + 0.5 * alpha,
                        beta_c - alpha,
                        scale,
                        big_r + h_top,
                        ar * cfg.acr,
                        depth + 1,
                    )
                )
        stack.extend(reversed(recurse))

    return Layout(style="rit", config=cfg, a_std=a_std, nodes=tuple(nodes), visits=visits)


def _node_path_or_empty(sector: SectorGeometry) -> Path:
    if sector.beta <= 0.0:
        # Zero-data node: a degenerate radial sliver with no area.
        t = sector.theta
        p0 = (sector.r_in * math.cos(t), sector.r_in * math.sin(t))
        p1 = (sector.outer_radius * math.cos(t), sector.outer_radius * math.sin(t))
        return Path.single(
            [geo.LineSegment(*p0, *p1), geo.LineSegment(*p1, *p0)]
        )
    return build_node_path(sector)


def layout_sunburst(tree: NormalizedNode, cfg: LayoutConfig = LayoutConfig()) -> Layout:
    """Classic sunburst: constant ring height, angle proportional to data."""
    cfg.validate()
    _check_tree(tree)
    theta0 = geo.normalize_angle(cfg.theta0)
    a_std = sector_area(cfg.r0, cfg.h0, cfg.beta0)
    nodes: list[PlacedNode] = []
    visits = 0

    def place(node: NormalizedNode, theta: float, parent: str | None, depth: int,
              f_theta: float, f_beta: float) -> None:
        nonlocal visits
        beta = cfg.beta0 * node.data
        sector = SectorGeometry(
            theta=theta, beta=beta, alpha=0.0,
            r_in=cfg.r0 + depth * cfg.h0, height=cfg.h0, depth=depth,
        )
        nodes.append(
            PlacedNode(
                id=node.id, label=node.label, color=node.color, data=node.data,
                depth=depth, parent=parent, sector=sector,
                path=_node_path_or_empty(sector),
                frame_theta=f_theta, frame_beta=f_beta, angle_scale=cfg.beta0,
            )
        )
        visits += 1
        child_theta = theta
        for child in node.children:
            place(child, child_theta, node.id, depth + 1, theta, beta)
            child_theta += cfg.beta0 * child.data

    place(tree, theta0, None, 0, theta0, cfg.beta0)
    return Layout(style="sunburst", config=cfg, a_std=a_std, nodes=tuple(nodes), visits=visits)


def layout_icicle(tree: NormalizedNode, cfg: LayoutConfig = LayoutConfig()) -> Layout:
    """Cartesian icicle: rows of height h0, width proportional to data, no gaps.

    The root width is a_std / h0, so rectangle areas equal data * a_std and
    all three styles share one area scale.
    """
    cfg.validate()
    _check_tree(tree)
    a_std = sector_area(cfg.r0, cfg.h0, cfg.beta0)
    width0 = a_std / cfg.h0
    nodes: list[PlacedNode] = []
    visits = 0

    def place(node: NormalizedNode, x: float, parent: str | None, depth: int,
              f_x: float, f_w: float) -> None:
        nonlocal visits
        width = width0 * node.data
        band = SectorGeometry(
            theta=x, beta=width, alpha=0.0,
            r_in=depth * cfg.h0, height=cfg.h0, depth=depth,
        )
        y_top = -depth * cfg.h0
        nodes.append(
            PlacedNode(
                id=node.id, label=node.label, color=node.color, data=node.data,
                depth=depth, parent=parent, sector=band,
                path=rect_path(x, y_top - cfg.h0, max(width, 0.0), cfg.h0),
                frame_theta=f_x, frame_beta=f_w, angle_scale=width0,
            )
        )
        visits += 1
        child_x = x
        for child in node.children:
            place(child, child_x, node.id, depth + 1, x, width)
            child_x += width0 * child.data

    place(tree, 0.0, None, 0, 0.0, width0)
    return Layout(style="icicle", config=cfg, a_std=a_std, nodes=tuple(nodes), visits=visits)


def compute_layout(tree: NormalizedNode, style: str, cfg: LayoutConfig = LayoutConfig()) -> Layout:
    if style == "rit":
        layout = layout_rit(tree, cfg)
        if cfg.relax_enabled:
            layout = relax_thin_nodes(layout, cfg)
        return layout
    if style == "sunburst":
        return layout_sunburst(tree, cfg)
    if style == "icicle":
        return layout_icicle(tree, cfg)
    raise ValueError(f"unknown style {style!r}; expected one of {STYLES}")


def relax_thin_nodes(layout: Layout, cfg: LayoutConfig | None = None) -> Layout:
    """Re-space runs of consecutive thin siblings into their surrounding gaps.

    A run of children with data below the threshold keeps each shape's
    angular extent but slides the shapes (subtrees included) so the gaps
    between cut edges inside the available span come out equal.  The span
    reaches from the cut edge of the nearest non-thin sibling on each side,
    or past the frame edge by the parent's half wedge angle at a group
    boundary.  Every moved node is flagged relaxed.
    """
    if layout.style != "rit":
        raise ValueError("relaxation applies to rit layouts only")
    if cfg is None:
        cfg = layout.config
    threshold = cfg.relax_threshold
    by_id = {n.id: n for n in layout.nodes}
    children_of: dict[str, list[PlacedNode]] = {}
    for n in layout.nodes:
        if n.parent is not None:
            children_of.setdefault(n.parent, []).append(n)

    rotations: dict[str, float] = {}

    def rotate_subtree(node_id: str, delta: float) -> None:
        rotations[node_id] = rotations.get(node_id, 0.0) + delta
        for child in children_of.get(node_id, ()):
            rotate_subtree(child.id, delta)

    for parent_id, group in children_of.items():
        parent = by_id[parent_id]
        parent_alpha = parent.sector.alpha
        frame_lo = group[0].frame_theta
        frame_hi = frame_lo + group[0].frame_beta
        thin = [n.data < threshold for n in group]
        i = 0
        while i < len(group):
            if not thin[i]:
                i += 1
                continue
            j = i
            while j < len(group) and thin[j]:
                j += 1
            run = group[i:j]
            if i > 0:
                span_lo = group[i - 1].sector.cut_end
            else:
                span_lo = frame_lo - 0.5 * parent_alpha
            if j < len(group):
                span_hi = group[j].sector.cut_start
            else:
                span_hi = frame_hi + 0.5 * parent_alpha
            widths = [n.sector.cut_end - n.sector.cut_start for n in run]
            gap = (span_hi - span_lo - sum(widths)) / (len(run) + 1)
            edge = span_lo + gap
            for node, width in zip(run, widths):
                rotate_subtree(node.id, edge - node.sector.cut_start)
                edge += width + gap
            i = j

    if not rotations:
        return layout

    new_nodes = []
    for n in layout.nodes:
        delta = rotations.get(n.id)
        if delta is None:
            new_nodes.append(n)
            continue
        sector = replace(n.sector, theta=n.sector.theta + delta)
        # A moved node keeps its placement frame (the parent's span did not
        # move); descendants' frames derive from the moved ancestor and shift.
        frame_shift = rotations.get(n.parent, 0.0) if n.parent is not None else 0.0
        new_nodes.append(
            replace(
                n,
                sector=sector,
                path=shift_path(n.path, rotate=delta),
                frame_theta=n.frame_theta + frame_shift,
                relaxed=True,
            )
        )
    return replace(layout, nodes=tuple(new_nodes))


_NUM_KEYS = ("theta", "beta", "alpha", "r_in", "height", "topup_height")


def _segment_to_json(seg) -> dict:
    if isinstance(seg, geo.ArcSegment):
        return {"type": "arc", "radius": seg.radius, "start": seg.start, "end": seg.end}
    return {"type": "line", "x0": seg.x0, "y0": seg.y0, "x1": seg.x1, "y1": seg.y1}


def layout_to_json(layout: Layout) -> str:
    """Geometry export: {a_std, style, nodes: [...]} with full float precision."""
    doc = {
        "a_std": layout.a_std,
        "style": layout.style,
        "nodes": [
            {
                "id": n.id,
                "depth": n.depth,
                **{k: getattr(n.sector, k) for k in _NUM_KEYS},
                "relaxed": n.relaxed,
                "color": n.color,
                "label": n.label,
                "path": [_segment_to_json(s) for s in n.path.segments],
            }
            for n in layout.nodes
        ],
    }
    return json.dumps(doc, indent=1)
