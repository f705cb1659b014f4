import random
from fractions import Fraction

import pytest

from stabregion.bezout import hermite_pencil
from stabregion.certify import BOUNDARY, STABLE, UNSTABLE
from stabregion.curves import assemble_certificate_pencil, build_curve_data
from stabregion.region import (
    CONSISTENT_WITH_CONVEX,
    NONCONVEX,
    PGM_BOUNDARY,
    PGM_STABLE,
    PGM_UNSTABLE,
    Box,
    connected_components,
    convexity_probe,
    render,
    scan_grid,
    trace_boundary,
)

from conftest import make_ackermann


class TestBox:
    def test_rejects_degenerate(self):
        with pytest.raises(ValueError):
            Box(1, 1, 0, 2)

    def test_exact_nodes(self):
        box = Box(-1, 4, -1, 4)
        assert box.node(0, 0, 11) == (-1, -1)
        assert box.node(10, 10, 11) == (4, 4)
        assert box.node(1, 0, 11) == (Fraction(-1, 2), -1)


class TestScanGrid:
    def test_vishnegradsky_closed_form(self, vishnegradsky):
        scan = scan_grid(vishnegradsky, Box(-1, 4, -1, 4), 11)
        for i2 in range(11):
            for i1 in range(11):
                k1, k2 = scan.node(i1, i2)
                label = scan.label_at(i1, i2)
                if label == BOUNDARY:
                    continue
                assert (label == STABLE) == (k1 > 0 and k1 * k2 > 1)

    def test_nn1_stable_set_nonempty(self, nn1):
        scan = scan_grid(nn1, Box(0, 3, 0, 60), 16)
        assert scan.counts()[STABLE] > 0

    def test_resolution_too_small(self, nn1):
        with pytest.raises(ValueError):
            scan_grid(nn1, Box(0, 1, 0, 1), 1)

    def test_deterministic(self, vishnegradsky):
        a = scan_grid(vishnegradsky, Box(-1, 4, -1, 4), 15)
        b = scan_grid(vishnegradsky, Box(-1, 4, -1, 4), 15)
        assert a == b

    def test_parallel_matches_serial(self, vishnegradsky):
        box = Box(-1, 4, -1, 4)
        serial = scan_grid(vishnegradsky, box, 15, workers=1)
        parallel = scan_grid(vishnegradsky, box, 15, workers=2)
        assert serial == parallel


class TestComponents:
    def test_single_hyperbolic_component(self, vishnegradsky):
        scan = scan_grid(vishnegradsky, Box(-1, 4, -1, 4), 21)
        comps = connected_components(scan)
        assert comps.count == 1
        assert comps.components[0].sample_interior

    def test_two_components(self, ackermann1):
        scan = scan_grid(ackermann1, Box(-5, 30, -30, 30), 41)
        comps = connected_components(scan)
        assert comps.count == 2

    def test_empty(self, nn1):
        # all-unstable window
        scan = scan_grid(nn1, Box(-3, -2, -3, -2), 5)
        assert scan.counts()[STABLE] == 0
        assert connected_components(scan).count == 0

    def test_count_monotone_under_shrinking(self, ackermann1):
        wide = connected_components(
            scan_grid(ackermann1, Box(-5, 30, -30, 30), 31)
        ).count
        narrow = connected_components(
            scan_grid(ackermann1, Box(-2, 4, -8, 4), 31)
        ).count
        assert narrow <= wide


class TestConvexityProbe:
    def test_hyperbolic_region_consistent(self, vishnegradsky):
        scan = scan_grid(vishnegradsky, Box(-1, 4, -1, 4), 21)
        comp = connected_components(scan).components[0]
        result = convexity_probe(vishnegradsky, scan, comp, 200)
        assert result.verdict == CONSISTENT_WITH_CONVEX

    def test_nonconvex_witness(self, ackermann0):
        scan = scan_grid(ackermann0, Box(-5, 30, -30, 30), 41)
        comps = connected_components(scan)
        comp = max(comps.components, key=lambda c: len(c.cells))
        result = convexity_probe(ackermann0, scan, comp, 500)
        assert result.verdict == NONCONVEX
        assert result.witness is not None
        a, b = result.witness
        h = hermite_pencil(ackermann0)
        from stabregion.certify import classify_point

        assert classify_point(ackermann0, h, None, a).verdict == STABLE
        assert classify_point(ackermann0, h, None, b).verdict == STABLE

    def test_single_cell_component_trivially_consistent(self, vishnegradsky):
        # a window in which exactly one node is stable
        scan = scan_grid(vishnegradsky, Box(0, 2, 0, 2), 3)
        comps = connected_components(scan)
        single = [c for c in comps.components if len(c.cells) == 1]
        if single:
            result = convexity_probe(vishnegradsky, scan, single[0], 50)
            assert result.verdict == CONSISTENT_WITH_CONVEX


class TestTraceBoundary:
    def test_nn1_pole_split(self, nn1):
        data = build_curve_data(nn1)
        box = Box(0, 3, 0, 60)
        polylines = trace_boundary(data, box, 300)
        curves = [p for p in polylines if p.kind == "curve"]
        lines = [p for p in polylines if p.kind == "line"]
        assert len(curves) >= 2  # split at the sweep pole
        assert len(lines) == 1  # the k2 = 0 boundary line
        (line,) = lines
        assert all(k2 == 0 for _, k2 in line.points)

    def test_vishnegradsky_traces_hyperbola(self, vishnegradsky):
        data = build_curve_data(vishnegradsky)
        polylines = trace_boundary(data, Box(-1, 4, -1, 4), 300)
        assert all(p.kind == "curve" for p in polylines)  # constant line dropped
        det = data.pencil.det_bipoly()
        on_curve = [
            pt
            for poly in polylines
            for pt in poly.points
        ]
        assert on_curve
        for k1, k2 in on_curve:
            assert det.eval(k1, k2) == 0

    def test_traced_points_exactly_on_curve(self, nn1, francis):
        for inst in (nn1, francis):
            data = build_curve_data(inst)
            det = data.pencil.det_bipoly()
            polylines = trace_boundary(data, Box(-2, 3, -2, 60), 200)
            for poly in polylines:
                if poly.kind != "curve":
                    continue
                for k1, k2 in poly.points:
                    assert det.eval(k1, k2) == 0


class TestRender:
    def test_deterministic_bytes(self, vishnegradsky):
        scan = scan_grid(vishnegradsky, Box(-1, 4, -1, 4), 11)
        comps = connected_components(scan)
        data = build_curve_data(vishnegradsky)
        polylines = trace_boundary(data, scan.box, 64)
        first = render(scan, comps, polylines)
        second = render(scan, comps, polylines)
        assert first.svg == second.svg
        assert first.pgm == second.pgm

    def test_empty_stable_set_still_renders(self, nn1):
        scan = scan_grid(nn1, Box(-3, -2, -3, -2), 5)
        data = build_curve_data(nn1)
        polylines = trace_boundary(data, scan.box, 64)
        picture = render(scan, connected_components(scan), polylines)
        assert picture.svg.startswith("<svg")
        assert picture.svg.rstrip().endswith("</svg>")

    def test_pgm_palette(self, vishnegradsky):
        scan = scan_grid(vishnegradsky, Box(-1, 4, -1, 4), 11)
        picture = render(scan, None, ())
        header, _, rest = picture.pgm.partition(b"\n255\n")
        assert header == b"P5\n11 11"
        assert len(rest) == 121
        # top-left pixel is the node (0, 10): k = (-1, 4): unstable
        assert rest[0] == PGM_UNSTABLE
        shades = {PGM_STABLE, PGM_UNSTABLE, PGM_BOUNDARY}
        assert set(rest) <= shades
        # stable node (1, 2) -> k1 = -1/2? pick a known stable node: k=(1,2)
        i1 = next(
            i for i in range(11) if scan.node(i, 0)[0] == 1
        )
        i2 = next(
            j for j in range(11) if scan.node(0, j)[1] == 2
        )
        assert scan.label_at(i1, i2) == STABLE
        row_from_top = 11 - 1 - i2
        assert rest[row_from_top * 11 + i1] == PGM_STABLE
