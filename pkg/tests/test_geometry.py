import math
import random

import pytest
from hypothesis import given, strategies as st

from rit_layout import (
    annulus_area,
    build_node_path,
    clamp_wedge_angle,
    height_for_scale,
    path_area,
    sector_area,
    topup_height,
    wedge_pair_area,
)
from rit_layout.geometry import (
    ANGLE_EPS,
    ArcSegment,
    LineSegment,
    Path,
    SectorGeometry,
    max_wedge_angle,
    normalize_angle,
    sector_contains_points,
    wedge_paths,
)

TAU = 2.0 * math.pi


class TestAnnulusArea:
    def test_ring(self):
        assert annulus_area(2.0, 1.0) == pytest.approx(5.0 * math.pi, rel=1e-15)

    def test_disc(self):
        assert annulus_area(0.0, 1.5) == pytest.approx(2.25 * math.pi, rel=1e-15)

    def test_second_ring_grows(self):
        assert annulus_area(3.0, 1.0) == pytest.approx(7.0 * math.pi, rel=1e-15)
        assert annulus_area(3.0, 1.0) > annulus_area(2.0, 1.0)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            annulus_area(-1.0, 1.0)
        with pytest.raises(ValueError):
            annulus_area(1.0, -0.5)


class TestSectorArea:
    def test_full_turn_matches_annulus(self):
        assert sector_area(2.0, 1.0, TAU) == pytest.approx(annulus_area(2.0, 1.0), rel=1e-15)

    def test_half_disc(self):
        assert sector_area(0.0, 1.0, math.pi) == pytest.approx(math.pi / 2, rel=1e-15)

    def test_unit_angle(self):
        assert sector_area(1.0, 1.0, 1.0) == pytest.approx(1.5, rel=1e-15)

    def test_angle_range_enforced(self):
        with pytest.raises(ValueError):
            sector_area(1.0, 1.0, 0.0)
        with pytest.raises(ValueError):
            sector_area(1.0, 1.0, TAU + 1e-6)


class TestHeightForScale:
    def test_unit_circle(self):
        assert height_for_scale(0.0, TAU, math.pi) == pytest.approx(1.0, rel=1e-15)

    def test_ring_after_first(self):
        # Annulus chain with standard area 5*pi: outer radii satisfy R^2 = 9 + 5i.
        assert height_for_scale(3.0, TAU, 5 * math.pi) == pytest.approx(
            math.sqrt(14) - 3.0, rel=1e-12
        )

    def test_chain_step(self):
        assert height_for_scale(math.sqrt(14), TAU, 5 * math.pi) == pytest.approx(
            math.sqrt(19) - math.sqrt(14), rel=1e-12
        )

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            height_for_scale(1.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            height_for_scale(1.0, 1.0, 0.0)

    @given(
        r=st.floats(0.0, 50.0),
        s=st.floats(1e-3, TAU),
        area=st.floats(1e-3, 100.0),
    )
    def test_inversion(self, r, s, area):
        h = height_for_scale(r, s, area)
        assert h > 0.0
        assert 0.5 * s * ((r + h) ** 2 - r * r) == pytest.approx(area, rel=1e-10)

    @given(r=st.floats(0.0, 50.0), area=st.floats(1e-3, 100.0))
    def test_decreasing_in_radius(self, r, area):
        assert height_for_scale(r + 0.5, TAU, area) < height_for_scale(r, TAU, area)

    @given(r=st.floats(0.0, 50.0), area=st.floats(1e-3, 100.0))
    def test_increasing_in_area(self, r, area):
        assert height_for_scale(r, TAU, area * 1.5) > height_for_scale(r, TAU, area)


class TestWedgePairArea:
    def test_zero_angle(self):
        assert wedge_pair_area(1.0, 1.0, 0.0) == 0.0

    def test_collapses_to_circular_sector_at_origin(self):
        assert wedge_pair_area(0.0, 2.0, 0.2) == pytest.approx(0.4, rel=1e-15)

    def test_frozen_value(self):
        expected = 0.4 - 2.0 * math.sin(0.1)  # 0.5*R^2*a - r*R*sin(a/2), R=2, r=1
        assert wedge_pair_area(1.0, 1.0, 0.2) == pytest.approx(expected, rel=1e-15)
        assert expected == pytest.approx(0.2003331667063437, abs=1e-15)

    def test_rejects_angle_at_geometric_bound(self):
        bound = max_wedge_angle(1.0, 2.0)
        with pytest.raises(ValueError):
            wedge_pair_area(1.0, 1.0, bound)

    @given(
        r=st.floats(0.0, 20.0),
        h=st.floats(0.01, 5.0),
        frac=st.floats(1e-6, 1.0 - 1e-9),
    )
    def test_three_term_form_matches_simplified(self, r, h, frac):
        alpha = frac * max_wedge_angle(r, r + h) * (1 - 1e-9)
        big_r = r + h
        three_term = (
            0.5 * big_r**2 * (alpha - math.sin(alpha))
            + 0.5 * big_r**2 * math.sin(alpha)
            - r * big_r * math.sin(alpha / 2)
        )
        assert wedge_pair_area(r, h, alpha) == pytest.approx(three_term, rel=1e-12, abs=1e-300)

    def test_against_polygon_measurement_1000_draws(self):
        # Independent check: measure the two explicit wedge outlines.  Wedges
        # have no inner/outer arc error cancellation, so thin rings need a
        # finer step than the default to hit 1e-7 relative.
        rng = random.Random(20240901)
        for _ in range(1000):
            r = rng.uniform(0.0, 10.0)
            h = rng.uniform(0.05, 3.0)
            beta = rng.uniform(0.05, TAU - 0.01)
            alpha = clamp_wedge_angle(rng.uniform(0.01, 0.45), beta, r, r + h)
            g = SectorGeometry(theta=rng.uniform(0, TAU), beta=beta, alpha=alpha,
                               r_in=r, height=h, depth=1)
            start, end = wedge_paths(g)
            measured = path_area(start, 2e-5) + path_area(end, 2e-5)
            assert measured == pytest.approx(wedge_pair_area(r, h, alpha), rel=1e-7)


class TestTopupHeight:
    def test_zero_loss(self):
        assert topup_height(2.0, 1.0, 0.2, 0.0) == 0.0

    def test_exact_back_substitution(self):
        w = wedge_pair_area(1.0, 1.0, 0.2)
        h_t = topup_height(2.0, 1.0, 0.2, w)
        assert h_t == pytest.approx(math.sqrt(4.0 + 2.0 * w / 0.8) - 2.0, rel=1e-12)
        recovered = 0.5 * (1.0 - 0.2) * ((2.0 + h_t) ** 2 - 4.0)
        assert recovered == pytest.approx(w, rel=1e-12)

    def test_half_variant_back_substitution(self):
        # The un-halved solve: (beta-alpha)*((R+h)^2 - R^2) = w, so the real
        # sector area added is only w/2.
        w = wedge_pair_area(1.0, 1.0, 0.2)
        h_t = topup_height(2.0, 1.0, 0.2, w, variant="half")
        assert h_t == pytest.approx(math.sqrt(4.0 + w / 0.8) - 2.0, rel=1e-12)
        added = 0.5 * (1.0 - 0.2) * ((2.0 + h_t) ** 2 - 4.0)
        assert added == pytest.approx(w / 2.0, rel=1e-12)

    def test_rejects_degenerate_span(self):
        with pytest.raises(ValueError):
            topup_height(2.0, 1.0, 1.0, 0.1)

    @given(
        r=st.floats(0.0, 20.0),
        h=st.floats(0.05, 5.0),
        beta=st.floats(0.05, TAU),
        ar=st.floats(0.01, 0.49),
    )
    def test_exactness_property(self, r, h, beta, ar):
        alpha = clamp_wedge_angle(ar, beta, r, r + h)
        w = wedge_pair_area(r, h, alpha)
        h_t = topup_height(r + h, beta, alpha, w)
        added = 0.5 * (beta - alpha) * ((r + h + h_t) ** 2 - (r + h) ** 2)
        assert added == pytest.approx(w, rel=1e-12)


class TestClampWedgeAngle:
    def test_ratio_dominates(self):
        assert clamp_wedge_angle(0.1, 1.0, 1.0, 100.0) == pytest.approx(0.1, rel=1e-15)

    def test_geometric_bound_binds(self):
        got = clamp_wedge_angle(0.45, 1.0, 0.999, 1.0)
        assert got == pytest.approx((1 - ANGLE_EPS) * 2.0 * math.acos(0.999), rel=1e-12)

    def test_half_beta_cap_binds(self):
        assert clamp_wedge_angle(0.9, 1.0, 0.0, 1.0) == pytest.approx(
            (1 - ANGLE_EPS) * 0.5, rel=1e-15
        )

    def test_cut_line_stays_inside_sector(self):
        # With the geometric bound active, the straight cut must never dip
        # below the inner radius.
        r, big_r = 0.999, 1.0
        alpha = clamp_wedge_angle(0.45, 1.0, r, big_r)
        ax, ay = r, 0.0
        bx, by = big_r * math.cos(alpha / 2), big_r * math.sin(alpha / 2)
        for i in range(1001):
            t = i / 1000
            x, y = ax + t * (bx - ax), ay + t * (by - ay)
            assert math.hypot(x, y) >= r - 1e-12
            assert -1e-12 <= math.atan2(y, x) <= alpha / 2 + 1e-12

    @given(
        ar=st.floats(1e-4, 0.999),
        beta=st.floats(1e-4, TAU),
        r=st.floats(0.0, 30.0),
        h=st.floats(0.01, 5.0),
    )
    def test_always_strictly_inside_bounds(self, ar, beta, r, h):
        alpha = clamp_wedge_angle(ar, beta, r, r + h)
        assert 0.0 < alpha < 0.5 * beta
        assert alpha < max_wedge_angle(r, r + h)


class TestBuildNodePath:
    def test_full_annulus_two_loops(self):
        g = SectorGeometry(theta=0.0, beta=TAU, alpha=0.0, r_in=8.0, height=2.0)
        path = build_node_path(g)
        assert len(path.loops) == 2
        assert all(len(loop) == 1 for loop in path.loops)
        radii = sorted(seg.radius for seg in path.segments)
        assert radii == [8.0, 10.0]

    def test_circle_single_loop(self):
        g = SectorGeometry(theta=0.0, beta=TAU, alpha=0.0, r_in=0.0, height=2.0)
        path = build_node_path(g)
        assert len(path.loops) == 1
        assert len(path.segments) == 1

    def test_plain_sector_four_segments(self):
        g = SectorGeometry(theta=0.2, beta=1.0, alpha=0.0, r_in=1.0, height=1.0, depth=1)
        path = build_node_path(g)
        assert len(path.segments) == 4
        arcs = [s for s in path.segments if isinstance(s, ArcSegment)]
        lines = [s for s in path.segments if isinstance(s, LineSegment)]
        assert len(arcs) == 2 and len(lines) == 2

    def test_cut_sector_six_segments_and_area(self):
        alpha = 0.2
        w = wedge_pair_area(1.0, 1.0, alpha)
        h_t = topup_height(2.0, 1.0, alpha, w)
        g = SectorGeometry(theta=0.0, beta=1.0, alpha=alpha, r_in=1.0, height=1.0,
                           topup_height=h_t, depth=1)
        path = build_node_path(g)
        assert len(path.segments) == 6
        assert path_area(path) == pytest.approx(sector_area(1.0, 1.0, 1.0), rel=1e-6)

    def test_degenerate_height_rejected(self):
        with pytest.raises(ValueError):
            build_node_path(SectorGeometry(theta=0, beta=1, alpha=0, r_in=1, height=0))


class TestContainment:
    def test_interior_and_exterior_points(self):
        alpha = 0.2
        w = wedge_pair_area(1.0, 1.0, alpha)
        h_t = topup_height(2.0, 1.0, alpha, w)
        g = SectorGeometry(theta=0.0, beta=1.0, alpha=alpha, r_in=1.0, height=1.0,
                           topup_height=h_t, depth=1)
        mid = 0.5
        inside_x = [1.5 * math.cos(mid), (2.0 + h_t / 2) * math.cos(mid)]
        inside_y = [1.5 * math.sin(mid), (2.0 + h_t / 2) * math.sin(mid)]
        assert sector_contains_points(g, inside_x, inside_y).all()
        # Inside the cut wedge: excluded; past the top-up: excluded.
        outside_x = [1.99 * math.cos(0.01), (2.0 + h_t) * 1.01 * math.cos(mid), 0.5]
        outside_y = [1.99 * math.sin(0.01), (2.0 + h_t) * 1.01 * math.sin(mid), 0.0]
        assert not sector_contains_points(g, outside_x, outside_y).any()

    def test_own_boundary_is_not_interior(self):
        from rit_layout.measure import path_boundary_points

        g = SectorGeometry(theta=0.3, beta=1.2, alpha=0.15, r_in=2.0, height=0.8,
                           topup_height=0.05, depth=1)
        pts = path_boundary_points(build_node_path(g), 2000)
        assert not sector_contains_points(g, pts[:, 0], pts[:, 1], margin=1e-9).any()


class TestPathInvariants:
    def test_disconnected_segments_rejected(self):
        with pytest.raises(ValueError):
            Path.single([LineSegment(0, 0, 1, 0), LineSegment(2, 0, 2, 1)])

    def test_open_loop_rejected(self):
        with pytest.raises(ValueError):
            Path.single([LineSegment(0, 0, 1, 0), LineSegment(1, 0, 1, 1)])

    def test_normalize_angle(self):
        assert normalize_angle(-math.pi) == pytest.approx(math.pi)
        assert normalize_angle(2 * TAU + 0.5) == pytest.approx(0.5)
        assert 0.0 <= normalize_angle(-1e-9) < TAU
