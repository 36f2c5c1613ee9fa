"""Deterministic SVG rendering of layouts.

Node outlines are emitted as filled path elements in depth-major order,
with arcs as elliptical-arc commands (split so no single command spans
pi or more).  The drawing is uniformly scaled and centered to fit the
canvas; the applied transform and the layout configuration are echoed in
a leading comment so the output is self-describing.  Identical inputs
produce byte-identical output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import ArcSegment, LineSegment, Path
from .layout import Layout
from .measure import loop_vertices

FALLBACK_FILL = "#cccccc"


@dataclass(frozen=True)
class RenderStyle:
    canvas: int = 840
    margin: float = 20.0
    stroke_width: float = 0.0
    dash_pattern: str = "5 4"
    background: str | None = "#ffffff"
    draw_labels: bool = False
    font_size: float = 11.0

    def validate(self) -> None:
        if self.canvas <= 0:
            raise ValueError(f"canvas size must be > 0, got {self.canvas}")
        if self.margin < 0 or 2 * self.margin >= self.canvas:
            raise ValueError(f"margin {self.margin} leaves no drawable canvas")
        if not self.dash_pattern.strip():
            raise ValueError("dash pattern must be non-empty")


def _fmt(x: float) -> str:
    # Fixed 6-decimal output; normalize -0.000000 so byte equality holds.
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


class _Transform:
    """Uniform scale + translation from layout coordinates to the canvas (y flipped)."""

    def __init__(self, layout: Layout, style: RenderStyle):
        xs: list[float] = []
        ys: list[float] = []
        for node in layout.nodes:
            for loop in node.path.loops:
                pts = loop_vertices(loop, 0.01)
                xs.extend((pts[:, 0].min(), pts[:, 0].max()))
                ys.extend((pts[:, 1].min(), pts[:, 1].max()))
        x_lo, x_hi = float(min(xs)), float(max(xs))
        y_lo, y_hi = float(min(ys)), float(max(ys))
        span = max(x_hi - x_lo, y_hi - y_lo, 1e-12)
        self.scale = (style.canvas - 2.0 * style.margin) / span
        self.cx = 0.5 * style.canvas - self.scale * 0.5 * (x_lo + x_hi)
        self.cy = 0.5 * style.canvas + self.scale * 0.5 * (y_lo + y_hi)

    def point(self, x: float, y: float) -> tuple[float, float]:
        return (self.cx + self.scale * x, self.cy - self.scale * y)


def _split_arc(seg: ArcSegment) -> list[tuple[float, float]]:
    """(start, end) angle pairs, each spanning less than pi."""
    pieces = max(1, math.ceil(abs(seg.span) / math.pi - 1e-12))
    if abs(seg.span) >= math.pi and pieces < 2:
        pieces = 2
    step = seg.span / pieces
    return [(seg.start + i * step, seg.start + (i + 1) * step) for i in range(pieces)]


def _loop_to_d(loop, tf: _Transform) -> str:
    x0, y0 = tf.point(*loop[0].start_point)
    parts = [f"M {_fmt(x0)} {_fmt(y0)}"]
    for seg in loop:
        if isinstance(seg, LineSegment):
            x, y = tf.point(seg.x1, seg.y1)
            parts.append(f"L {_fmt(x)} {_fmt(y)}")
        else:
            radius = seg.radius * tf.scale
            # The y flip mirrors orientation: SVG's positive-angle direction
            # (sweep=1) is screen-clockwise, so math-CCW arcs take sweep=0.
            sweep = 0 if seg.span > 0 else 1
            for _, a1 in _split_arc(seg):
                x, y = tf.point(seg.radius * math.cos(a1), seg.radius * math.sin(a1))
                parts.append(
                    f"A {_fmt(radius)} {_fmt(radius)} 0 0 {sweep} {_fmt(x)} {_fmt(y)}"
                )
    parts.append("Z")
    return " ".join(parts)


def _path_d(path: Path, tf: _Transform) -> str:
    return " ".join(_loop_to_d(loop, tf) for loop in path.loops)


def _config_comment(layout: Layout, tf: _Transform) -> str:
    cfg = layout.config
    fields = (
        f"style={layout.style} theta0={cfg.theta0!r} beta0={cfg.beta0!r} "
        f"r0={cfg.r0!r} h0={cfg.h0!r} ar0={cfg.ar0!r} acr={cfg.acr!r} "
        f"mode={cfg.mode} relax={cfg.relax_enabled} "
        f"relax_threshold={cfg.relax_threshold!r} "
        f"scale={tf.scale!r} cx={tf.cx!r} cy={tf.cy!r}"
    )
    return f"<!-- rit-config {fields} -->"


def _label_element(node, tf: _Transform, style: RenderStyle, is_icicle: bool) -> str | None:
    label = node.label
    if not label:
        return None
    sec = node.sector
    est_width = 0.6 * style.font_size * len(label)
    if is_icicle:
        if est_width > sec.beta * tf.scale:
            return None
        x = sec.theta + 0.5 * sec.beta
        y = -(sec.r_in + 0.5 * sec.height)
        px, py = tf.point(x, y)
        transform = ""
    else:
        if sec.beta <= 0.0:
            return None
        mid_angle = sec.theta + 0.5 * sec.beta
        mid_radius = sec.r_in + 0.5 * sec.height
        span = 2.0 * mid_radius * math.sin(min(sec.beta, math.pi) * 0.5) * tf.scale
        if est_width > span:
            return None
        px, py = tf.point(mid_radius * math.cos(mid_angle), mid_radius * math.sin(mid_angle))
        deg = math.degrees(math.atan2(-math.cos(mid_angle), -math.sin(mid_angle)))
        if 90.0 < deg % 360.0 < 270.0:
            deg += 180.0
        transform = f' transform="rotate({_fmt(deg)} {_fmt(px)} {_fmt(py)})"'
    return (
        f'<text x="{_fmt(px)}" y="{_fmt(py)}" font-size="{_fmt(style.font_size)}" '
        f'text-anchor="middle" dominant-baseline="middle"{transform}>{_escape(label)}</text>'
    )


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def render_svg(layout: Layout, style: RenderStyle = RenderStyle()) -> bytes:
    """Render a layout to SVG 1.1 bytes; identical inputs give identical bytes."""
    style.validate()
    tf = _Transform(layout, style)
    size = style.canvas
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        _config_comment(layout, tf),
    ]
    if style.background is not None:
        lines.append(f'<rect width="{size}" height="{size}" fill="{style.background}"/>')

    ordered = sorted(range(len(layout.nodes)), key=lambda i: (layout.nodes[i].depth, i))
    is_icicle = layout.style == "icicle"
    labels: list[str] = []
    for i in ordered:
        node = layout.nodes[i]
        fill = node.color or FALLBACK_FILL
        d = _path_d(node.path, tf)
        if node.relaxed:
            attrs = (
                f'fill="{fill}" fill-opacity="0.7" fill-rule="evenodd" stroke="{fill}" '
                f'stroke-width="1" stroke-dasharray="{style.dash_pattern}"'
            )
        elif style.stroke_width > 0:
            attrs = (
                f'fill="{fill}" fill-rule="evenodd" stroke="#000000" '
                f'stroke-width="{_fmt(style.stroke_width)}"'
            )
        else:
            attrs = f'fill="{fill}" fill-rule="evenodd" stroke="none"'
        lines.append(f'<path id="{_escape(node.id)}" d="{d}" {attrs}/>')
        if style.draw_labels:
            el = _label_element(node, tf, style, is_icicle)
            if el is not None:
                labels.append(el)
    lines.extend(labels)
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")
