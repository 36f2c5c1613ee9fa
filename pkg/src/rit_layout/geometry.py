"""Closed-form annular-sector geometry and node outline construction.

All angles are radians, counter-clockwise, measured from the positive
x axis; all arcs are centered on the origin.  A drawn node is an annular
sector with a fan-shaped wedge of half-angle ``alpha/2`` cut off each end
(opening a visible gap to its angular neighbours) and a thin top-up sector
stacked on its outer arc whose area exactly replaces the two wedges, so
the shape's total area stays proportional to the encoded value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TAU = 2.0 * math.pi

# Relative safety margin kept between a wedge angle and its hard bounds.
ANGLE_EPS = 1e-6

# Angular widths within this of a full turn are treated as full annuli.
FULL_TURN_TOL = 1e-12

# Maximum endpoint mismatch tolerated between consecutive path segments.
PATH_JOIN_TOL = 1e-9


def normalize_angle(theta: float) -> float:
    """Map an angle into [0, 2*pi)."""
    theta = math.fmod(theta, TAU)
    return theta + TAU if theta < 0.0 else theta


def annulus_area(r: float, h: float) -> float:
    """Area of the annulus with inner radius ``r`` and radial height ``h``."""
    if r < 0.0 or h < 0.0:
        raise ValueError(f"annulus_area requires r >= 0 and h >= 0, got r={r}, h={h}")
    return math.pi * ((r + h) ** 2 - r * r)


def sector_area(r: float, h: float, beta: float) -> float:
    """Area of an annular sector of arc angle ``beta``.

    Reduces to ``annulus_area`` at ``beta = 2*pi``.
    """
    if r < 0.0 or h < 0.0:
        raise ValueError(f"sector_area requires r >= 0 and h >= 0, got r={r}, h={h}")
    if not 0.0 < beta <= TAU + FULL_TURN_TOL:
        raise ValueError(f"sector angle must be in (0, 2*pi], got {beta}")
    return 0.5 * beta * ((r + h) ** 2 - r * r)


def height_for_scale(r: float, angle_scale: float, area_std: float) -> float:
    """Radial height giving a sector of angle ``angle_scale * d`` area ``d * area_std``.

    Solves 0.5 * s * ((r+h)^2 - r^2) = area_std for h.  With s = 2*pi this
    is the full-annulus height that keeps every ring's area equal to the
    standard area; smaller scales (compressed subtree frames) thicken the
    ring by exactly the inverse factor.
    """
    if r < 0.0:
        raise ValueError(f"inner radius must be >= 0, got {r}")
    if angle_scale <= 0.0 or area_std <= 0.0:
        raise ValueError(
            f"angle scale and standard area must be > 0, got s={angle_scale}, area={area_std}"
        )
    q = 2.0 * area_std / angle_scale
    # Algebraically -r + sqrt(r^2 + q); this form avoids cancellation for r >> h.
    return q / (r + math.sqrt(r * r + q))


def max_wedge_angle(r: float, outer_radius: float) -> float:
    """Hard geometric bound on the double-wedge angle: 2*acos(r/R).

    Beyond it the straight cut from the inner corner to the outer arc dips
    below the sector's inner radius.
    """
    if not 0.0 <= r < outer_radius:
        raise ValueError(f"need 0 <= r < R, got r={r}, R={outer_radius}")
    return 2.0 * math.acos(r / outer_radius)


def wedge_pair_area(r: float, h: float, alpha: float) -> float:
    """Combined area of the two wedges cut from the ends of a sector.

    The pair, mirrored together, forms a triangle capped by a circular
    segment of angle ``alpha`` at the outer radius; the sum collapses to
    0.5*R^2*alpha - r*R*sin(alpha/2) with R = r + h.
    """
    if r < 0.0 or h <= 0.0:
        raise ValueError(f"wedge_pair_area requires r >= 0 and h > 0, got r={r}, h={h}")
    if alpha == 0.0:
        return 0.0
    if not 0.0 < alpha < max_wedge_angle(r, r + h):
        raise ValueError(
            f"double-wedge angle {alpha} is at or beyond the geometric bound "
            f"{max_wedge_angle(r, r + h)}"
        )
    big_r = r + h
    return 0.5 * big_r * big_r * alpha - r * big_r * math.sin(0.5 * alpha)


def topup_height(
    outer_radius: float,
    beta: float,
    alpha: float,
    wedge_area: float,
    variant: str = "exact",
) -> float:
    """Height of the top-up sector (angle ``beta - alpha``) replacing ``wedge_area``.

    ``variant="exact"`` solves 0.5*(beta-alpha)*((R+h)^2 - R^2) = wedge_area,
    so the added area equals the cut area.  ``variant="half"`` drops the 0.5
    factor from the solve; the resulting top-up covers only half the loss and
    is kept solely so the deficit can be measured.
    """
    if outer_radius <= 0.0:
        raise ValueError(f"outer radius must be > 0, got {outer_radius}")
    if wedge_area < 0.0:
        raise ValueError(f"wedge area must be >= 0, got {wedge_area}")
    if beta - alpha <= 0.0 or alpha < 0.0:
        raise ValueError(f"need 0 <= alpha < beta, got alpha={alpha}, beta={beta}")
    if wedge_area == 0.0:
        return 0.0
    if variant == "exact":
        q = 2.0 * wedge_area / (beta - alpha)
    elif variant == "half":
        q = wedge_area / (beta - alpha)
    else:
        raise ValueError(f"unknown top-up variant {variant!r}")
    return q / (outer_radius + math.sqrt(outer_radius * outer_radius + q))


def clamp_wedge_angle(ar: float, beta: float, r: float, outer_radius: float) -> float:
    """Double-wedge angle ``ar * beta`` clamped strictly inside both bounds.

    The caps are half the sector angle and the geometric bound
    2*acos(r/R), each shrunk by ANGLE_EPS so the top-up sector never
    degenerates and the cut line never leaves the sector.
    """
    if ar <= 0.0:
        raise ValueError(f"angle ratio must be > 0, got {ar}")
    if not 0.0 < beta <= TAU + FULL_TURN_TOL:
        raise ValueError(f"sector angle must be in (0, 2*pi], got {beta}")
    margin = 1.0 - ANGLE_EPS
    return min(
        ar * beta,
        margin * 0.5 * beta,
        margin * max_wedge_angle(r, outer_radius),
    )


@dataclass(frozen=True)
class ArcSegment:
    """Circular arc centered on the origin; end < start means clockwise."""

    radius: float
    start: float
    end: float

    @property
    def start_point(self) -> tuple[float, float]:
        return (self.radius * math.cos(self.start), self.radius * math.sin(self.start))

    @property
    def end_point(self) -> tuple[float, float]:
        return (self.radius * math.cos(self.end), self.radius * math.sin(self.end))

    @property
    def span(self) -> float:
        return self.end - self.start

    def length(self) -> float:
        return abs(self.span) * self.radius


@dataclass(frozen=True)
class LineSegment:
    x0: float
    y0: float
    x1: float
    y1: float

    @property
    def start_point(self) -> tuple[float, float]:
        return (self.x0, self.y0)

    @property
    def end_point(self) -> tuple[float, float]:
        return (self.x1, self.y1)

    def length(self) -> float:
        return math.hypot(self.x1 - self.x0, self.y1 - self.y0)


Segment = ArcSegment | LineSegment


@dataclass(frozen=True)
class Path:
    """One or more closed loops of arc/line segments (outer boundary + holes)."""

    loops: tuple[tuple[Segment, ...], ...]
    closed: bool = True

    def __post_init__(self) -> None:
        for loop in self.loops:
            _check_loop(loop, self.closed)

    @property
    def segments(self) -> tuple[Segment, ...]:
        return tuple(seg for loop in self.loops for seg in loop)

    @classmethod
    def single(cls, segments: list[Segment], closed: bool = True) -> "Path":
        return cls(loops=(tuple(segments),), closed=closed)


def _check_loop(loop: tuple[Segment, ...], closed: bool) -> None:
    if not loop:
        raise ValueError("empty loop")
    scale = max(1.0, max(abs(c) for seg in loop for c in (*seg.start_point, *seg.end_point)))
    tol = PATH_JOIN_TOL * scale
    for prev, cur in zip(loop, loop[1:]):
        if math.dist(prev.end_point, cur.start_point) > tol:
            raise ValueError(
                f"segments do not join: {prev.end_point} -> {cur.start_point}"
            )
    if closed and math.dist(loop[-1].end_point, loop[0].start_point) > tol:
        raise ValueError("loop does not close")


def _polar(radius: float, angle: float) -> tuple[float, float]:
    return (radius * math.cos(angle), radius * math.sin(angle))


@dataclass(frozen=True)
class SectorGeometry:
    """Placed geometry of one node.

    ``alpha`` is the double-wedge angle (0 for the root and for full annuli);
    ``topup_height`` is nonzero exactly when ``alpha`` is.  The outer radius
    of the main sector is ``r_in + height``; the top-up extends it by
    ``topup_height`` over the angular range [theta+alpha/2, theta+beta-alpha/2].
    """

    theta: float
    beta: float
    alpha: float
    r_in: float
    height: float
    topup_height: float = 0.0
    depth: int = 0

    @property
    def outer_radius(self) -> float:
        return self.r_in + self.height

    @property
    def total_radius(self) -> float:
        return self.r_in + self.height + self.topup_height

    @property
    def cut_start(self) -> float:
        """Angle of the starting cut edge (shape extent at the outer radius)."""
        return self.theta + 0.5 * self.alpha

    @property
    def cut_end(self) -> float:
        return self.theta + self.beta - 0.5 * self.alpha


def is_full_turn(beta: float) -> bool:
    return beta >= TAU - FULL_TURN_TOL


def build_node_path(g: SectorGeometry) -> Path:
    """Closed outline of a node shape.

    Full annuli become two concentric loops (or one circle when r_in = 0);
    plain sectors a 4-segment outline; wedge-cut sectors the 6-segment
    outline of sector-minus-wedges plus top-up.  The inner arc always spans
    the full [theta, theta+beta]: cuts shorten the shape only above it.
    """
    if g.height <= 0.0:
        raise ValueError(f"degenerate sector height {g.height}")
    if g.beta < 0.0:
        raise ValueError(f"negative sector angle {g.beta}")
    t0, t1 = g.theta, g.theta + g.beta
    r, big_r = g.r_in, g.outer_radius

    if is_full_turn(g.beta):
        outer = ArcSegment(big_r, t0, t0 + TAU)
        if r == 0.0:
            return Path(loops=((outer,),))
        inner = ArcSegment(r, t0 + TAU, t0)
        return Path(loops=((outer,), (inner,)))

    if g.alpha == 0.0:
        segs: list[Segment] = []
        if r > 0.0:
            segs.append(ArcSegment(r, t0, t1))
        segs.append(LineSegment(*_polar(r, t1), *_polar(big_r, t1)))
        segs.append(ArcSegment(big_r, t1, t0))
        segs.append(LineSegment(*_polar(big_r, t0), *_polar(r, t0)))
        return Path.single(segs)

    top_r = g.total_radius
    a0 = g.cut_start
    a1 = g.cut_end
    segs = []
    if r > 0.0:
        segs.append(ArcSegment(r, t0, t1))
    segs.append(LineSegment(*_polar(r, t1), *_polar(big_r, a1)))
    segs.append(LineSegment(*_polar(big_r, a1), *_polar(top_r, a1)))
    segs.append(ArcSegment(top_r, a1, a0))
    segs.append(LineSegment(*_polar(top_r, a0), *_polar(big_r, a0)))
    segs.append(LineSegment(*_polar(big_r, a0), *_polar(r, t0)))
    return Path.single(segs)


def wedge_paths(g: SectorGeometry) -> tuple[Path, Path]:
    """Outlines of the two wedges cut from a sector's ends.

    Each wedge is bounded by the original radial edge, a slice of the outer
    arc of width alpha/2, and the straight cut back to the inner corner.
    """
    if g.alpha <= 0.0:
        raise ValueError("sector has no wedges")
    r, big_r = g.r_in, g.outer_radius
    t0, t1 = g.theta, g.theta + g.beta
    start = Path.single(
        [
            LineSegment(*_polar(r, t0), *_polar(big_r, t0)),
            ArcSegment(big_r, t0, t0 + 0.5 * g.alpha),
            LineSegment(*_polar(big_r, t0 + 0.5 * g.alpha), *_polar(r, t0)),
        ]
    )
    end = Path.single(
        [
            LineSegment(*_polar(r, t1), *_polar(big_r, t1 - 0.5 * g.alpha)),
            ArcSegment(big_r, t1 - 0.5 * g.alpha, t1),
            LineSegment(*_polar(big_r, t1), *_polar(r, t1)),
        ]
    )
    return start, end


def rect_path(x0: float, y0: float, width: float, height: float) -> Path:
    """Counter-clockwise rectangle outline with lower-left corner (x0, y0)."""
    x1, y1 = x0 + width, y0 + height
    return Path.single(
        [
            LineSegment(x0, y0, x1, y0),
            LineSegment(x1, y0, x1, y1),
            LineSegment(x1, y1, x0, y1),
            LineSegment(x0, y1, x0, y0),
        ]
    )


def shift_path(path: Path, rotate: float = 0.0, dx: float = 0.0, dy: float = 0.0) -> Path:
    """Rotate a path about the origin, then translate it."""
    cos_a, sin_a = math.cos(rotate), math.sin(rotate)

    def move(x: float, y: float) -> tuple[float, float]:
        return (x * cos_a - y * sin_a + dx, x * sin_a + y * cos_a + dy)

    loops = []
    for loop in path.loops:
        segs: list[Segment] = []
        for seg in loop:
            if isinstance(seg, ArcSegment):
                if dx or dy:
                    raise ValueError("arcs are origin-centered; cannot translate")
                segs.append(ArcSegment(seg.radius, seg.start + rotate, seg.end + rotate))
            else:
                segs.append(LineSegment(*move(seg.x0, seg.y0), *move(seg.x1, seg.y1)))
        loops.append(tuple(segs))
    return Path(loops=tuple(loops), closed=path.closed)


def sector_contains_points(
    g: SectorGeometry,
    xs: np.ndarray,
    ys: np.ndarray,
    margin: float = 0.0,
) -> np.ndarray:
    """Strict interior test for a node shape, vectorized over points.

    ``margin`` > 0 demands points lie clearly inside (distance-like slack in
    the same units as the radii), which keeps shared boundary corners from
    registering as overlap.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    rho = np.hypot(xs, ys)
    rel = np.mod(np.arctan2(ys, xs) - g.theta, TAU)
    r, big_r = g.r_in, g.outer_radius

    if is_full_turn(g.beta):
        return (rho > r + margin) & (rho < big_r - margin)

    # Angular margin scaled to arc length at each point's radius.
    ang_margin = np.divide(margin, np.maximum(rho, 1e-300))
    in_main = (
        (rho > r + margin)
        & (rho < big_r - margin)
        & (rel > ang_margin)
        & (rel < g.beta - ang_margin)
    )
    if g.alpha > 0.0:
        # Left of each directed cut line by more than `margin`
        # (lines have unit-scaled normals via division by their length).
        for (ax, ay), (bx, by) in (
            (_polar(r, g.theta), _polar(big_r, g.cut_start)),
            (_polar(big_r, g.cut_end), _polar(r, g.theta + g.beta)),
        ):
            ux, uy = bx - ax, by - ay
            norm = math.hypot(ux, uy)
            cross = (ux * (ys - ay) - uy * (xs - ax)) / norm
            in_main &= cross > margin
        in_top = (
            (rho > big_r + margin)
            & (rho < g.total_radius - margin)
            & (rel > 0.5 * g.alpha + ang_margin)
            & (rel < g.beta - 0.5 * g.alpha - ang_margin)
        )
        return in_main | in_top
    return in_main
