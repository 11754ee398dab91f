import math

import pytest

from curvelink import (
    Circle,
    FigureSpec,
    Oval,
    PolyGraph,
    Segment,
    compare_to_truth,
    inject_noise,
    inject_spurious,
    sample_figure,
)
from curvelink.synth import (
    FigureSpecError,
    measure_curvature,
    measure_min_separation,
    verify_figure_spec,
)

TAU = 2 * math.pi


class TestCurveDescriptors:
    def test_circle_geometry(self):
        c = Circle((1.0, 2.0), 0.5)
        assert c.length() == pytest.approx(math.pi)
        x, y = c.point(0.0)
        assert (x, y) == pytest.approx((1.5, 2.0))
        tx, ty = c.tangent(0.0)
        assert (tx, ty) == pytest.approx((0.0, 1.0))

    def test_segment_geometry(self):
        s = Segment((0.0, 0.0), (3.0, 4.0))
        assert s.length() == pytest.approx(5.0)
        assert s.point(2.5) == pytest.approx((1.5, 2.0))
        assert s.tangent(0.0) == pytest.approx((0.6, 0.8))

    def test_oval_geometry(self):
        o = Oval((0.0, 0.0), width=3.0, height=1.0)
        # two straights of 2.0 plus a full circle of radius 0.5
        assert o.length() == pytest.approx(4.0 + math.pi)
        x, y = o.point(0.0)
        assert y == pytest.approx(-0.5)
        with pytest.raises(ValueError):
            Oval((0, 0), width=1.0, height=2.0)

    def test_degenerate_oval_is_a_circle(self):
        o = Oval((1.0, 0.0), width=2.0, height=2.0)
        assert o.length() == pytest.approx(2 * math.pi)
        for s in (0.0, 1.0, 3.0, 5.5):
            x, y = o.point(s)
            assert math.hypot(x - 1.0, y) == pytest.approx(1.0, abs=1e-12)
        assert measure_curvature(o, 0.01) == pytest.approx(1.0, rel=1e-3)

    def test_measured_curvature_matches_analytic(self):
        assert measure_curvature(Circle((0, 0), 2.0), 0.01) == pytest.approx(0.5, rel=1e-4)
        assert measure_curvature(Segment((0, 0), (1, 1)), 0.01) == pytest.approx(0.0, abs=1e-6)
        assert measure_curvature(Oval((0, 0), 3.0, 1.0), 0.005) == pytest.approx(2.0, rel=1e-3)


class TestVerification:
    def test_underdeclared_curvature_rejected(self):
        spec = FigureSpec((Circle((0, 0), 0.5),), kappa_max=1.0, delta=0.5)
        with pytest.raises(FigureSpecError):
            verify_figure_spec(spec)

    def test_underdeclared_separation_rejected(self):
        spec = FigureSpec(
            (Circle((0, 0), 1.0), Circle((2.1, 0), 1.0)), kappa_max=1.1, delta=0.5
        )
        with pytest.raises(FigureSpecError):
            verify_figure_spec(spec)

    def test_concentric_separation_measured(self):
        delta = 0.2
        spec = FigureSpec(
            (Circle((0, 0), 1.0), Circle((0, 0), 1.0 + delta)),
            kappa_max=1.05,
            delta=delta,
        )
        _, sep, res = verify_figure_spec(spec)
        assert sep == pytest.approx(delta, abs=4 * res)

    def test_same_curve_separation_uses_far_pairs_only(self):
        # a single circle: nearby arcs are close but only far pairs count
        sep = measure_min_separation([Circle((0, 0), 1.0)], 1.05, 0.01)
        quarter_turn_chord = 2.0 * math.sin((math.pi / 2.0) / 1.05 / 2.0)
        assert sep == pytest.approx(quarter_turn_chord, abs=0.02)


class TestSampleFigure:
    def unit_circle_spec(self):
        return FigureSpec((Circle((0, 0), 1.0),), kappa_max=1.1, delta=1.2)

    def test_sixteen_uniform_samples(self):
        fig = sample_figure(self.unit_circle_spec(), epsilon=TAU / 16, seed=1, jitter=0.0)
        assert len(fig.samples) == 16
        expected = {(k, (k + 1) % 16) for k in range(16)}
        assert fig.truth.edges == PolyGraph.from_edges(16, expected).edges

    def test_open_segment_path(self):
        spec = FigureSpec((Segment((0, 0), (1, 0)),), kappa_max=1.0, delta=0.5)
        fig = sample_figure(spec, epsilon=0.3, seed=2, jitter=0.0)
        assert len(fig.samples) >= 4
        degrees = fig.truth.degrees()
        assert degrees.count(1) == 2  # endpoints
        assert all(d in (1, 2) for d in degrees)

    def test_epsilon_certificate(self):
        for seed in range(5):
            fig = sample_figure(self.unit_circle_spec(), epsilon=0.37, seed=seed)
            assert fig.max_arc_gap <= 0.37

    def test_samples_lie_on_curve_with_exact_tangents(self):
        fig = sample_figure(self.unit_circle_spec(), epsilon=0.4, seed=3)
        for s, prov in zip(fig.samples, fig.provenance):
            assert math.hypot(s.pos.x, s.pos.y) == pytest.approx(1.0, abs=1e-12)
            # tangent perpendicular to the radius
            assert abs(s.pos.x * s.tangent.x + s.pos.y * s.tangent.y) < 1e-12
            assert prov.curve == 0

    def test_seed_determinism(self):
        a = sample_figure(self.unit_circle_spec(), epsilon=0.3, seed=77)
        b = sample_figure(self.unit_circle_spec(), epsilon=0.3, seed=77)
        assert a.samples == b.samples
        assert a.truth.edges == b.truth.edges
        c = sample_figure(self.unit_circle_spec(), epsilon=0.3, seed=78)
        assert c.samples != a.samples

    def test_noise_floor_enforced_when_declared(self):
        # huge declared noise makes the spacing floor unsatisfiable
        spec = FigureSpec(
            (Circle((0, 0), 1.0),), kappa_max=1.1, delta=1.2, zeta=0.2, xi=0.0
        )
        with pytest.raises(FigureSpecError):
            sample_figure(spec, epsilon=0.3, seed=1)


class TestInjectNoise:
    def figure(self):
        spec = FigureSpec(
            (Circle((0, 0), 1.0),), kappa_max=1.1, delta=1.2, zeta=0.01, xi=0.02
        )
        return sample_figure(spec, epsilon=0.3, seed=5)

    def test_zero_noise_is_identity(self):
        fig = self.figure()
        assert inject_noise(fig, 0.0, 0.0, 9) is fig

    def test_bounds_hold(self):
        fig = self.figure()
        noisy = inject_noise(fig, 0.01, 0.02, 9)
        for before, after in zip(fig.samples, noisy.samples):
            shift = math.hypot(after.pos.x - before.pos.x, after.pos.y - before.pos.y)
            assert shift <= 0.01 + 1e-15
            dot = abs(
                before.tangent.x * after.tangent.x + before.tangent.y * after.tangent.y
            )
            assert math.acos(min(dot, 1.0)) <= 0.02 + 1e-9

    def test_truth_unchanged(self):
        fig = self.figure()
        noisy = inject_noise(fig, 0.01, 0.02, 9)
        assert noisy.truth.edges == fig.truth.edges

    def test_deterministic(self):
        fig = self.figure()
        assert inject_noise(fig, 0.01, 0.02, 9).samples == inject_noise(fig, 0.01, 0.02, 9).samples


class TestInjectSpurious:
    def figure(self):
        return sample_figure(
            FigureSpec((Circle((0, 0), 1.0),), kappa_max=1.1, delta=1.2),
            epsilon=0.3,
            seed=6,
        )

    def test_zero_count_is_identity(self):
        fig = self.figure()
        assert inject_spurious(fig, 0, (0, 0, 1, 1), 3) is fig

    def test_counts_and_marking(self):
        fig = self.figure()
        n0 = len(fig.samples)
        out = inject_spurious(fig, 100, fig.bounding_box(pad=0.2), 3)
        assert len(out.samples) == n0 + 100
        assert out.true_count() == n0
        assert sum(p.spurious for p in out.provenance) == 100
        assert out.truth.edges == fig.truth.edges
        assert out.truth.vertex_count == n0 + 100

    def test_points_inside_bbox(self):
        fig = self.figure()
        bbox = (-2.0, -3.0, 4.0, 5.0)
        out = inject_spurious(fig, 50, bbox, 8)
        for s, p in zip(out.samples, out.provenance):
            if p.spurious:
                assert bbox[0] <= s.pos.x <= bbox[2]
                assert bbox[1] <= s.pos.y <= bbox[3]


class TestCompareToTruth:
    def test_exact_match(self):
        fig = sample_figure(
            FigureSpec((Circle((0, 0), 1.0),), kappa_max=1.1, delta=1.2),
            epsilon=0.3,
            seed=10,
        )
        diff = compare_to_truth(fig.truth, fig)
        assert diff.exact
        assert diff.cross_curve_edges == 0

    def test_single_missing_edge(self):
        fig = sample_figure(
            FigureSpec((Circle((0, 0), 1.0),), kappa_max=1.1, delta=1.2),
            epsilon=0.3,
            seed=10,
        )
        dropped = sorted(fig.truth.edges)[0]
        partial = PolyGraph(fig.truth.vertex_count, fig.truth.edges - {dropped})
        diff = compare_to_truth(partial, fig)
        assert diff.missing == (dropped,)
        assert diff.extra == ()

    def test_cross_curve_edge_counted(self):
        fig = sample_figure(
            FigureSpec(
                (Circle((0, 0), 1.0), Circle((2.6, 0), 1.0)), kappa_max=1.1, delta=0.5
            ),
            epsilon=0.3,
            seed=12,
        )
        curve1_first = next(
            i for i, p in enumerate(fig.provenance) if p.curve == 1
        )
        meddled = PolyGraph(
            fig.truth.vertex_count,
            fig.truth.edges | {(0, curve1_first)},
        )
        diff = compare_to_truth(meddled, fig)
        assert diff.cross_curve_edges == 1
        assert len(diff.extra) == 1

    def test_vertex_count_mismatch_rejected(self):
        fig = sample_figure(
            FigureSpec((Circle((0, 0), 1.0),), kappa_max=1.1, delta=1.2),
            epsilon=0.3,
            seed=10,
        )
        with pytest.raises(ValueError):
            compare_to_truth(PolyGraph.from_edges(3, []), fig)
