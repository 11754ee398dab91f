import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvelink import (
    Circle,
    FigureSpec,
    ReconstructionParams,
    Segment,
    ZoneParams,
    inject_spurious,
    sample_figure,
    validate,
)
from curvelink.fileio import (
    FormatError,
    figure_to_json,
    graph_to_json,
    parse_figure_json,
    parse_figure_spec,
    parse_graph_json,
    parse_samples_csv,
    parse_samples_json,
    samples_to_csv,
    samples_to_json,
)
from curvelink.params import strict_failures
from conftest import make_sample


class TestCsv:
    def test_basic_row(self):
        samples = parse_samples_csv("0,0,1,0\n")
        assert len(samples) == 1
        assert (samples[0].tangent.x, samples[0].tangent.y) == (1.0, 0.0)

    def test_header_skipped(self):
        samples = parse_samples_csv("x,y,tx,ty\n1,2,0,1\n")
        assert len(samples) == 1
        assert samples[0].pos.x == 1.0

    def test_tangent_canonicalized(self):
        samples = parse_samples_csv("0,0,-2,0\n")
        assert (samples[0].tangent.x, samples[0].tangent.y) == (1.0, 0.0)

    def test_zero_tangent_rejected_with_line(self):
        with pytest.raises(FormatError, match="input.csv:2"):
            parse_samples_csv("0,0,1,0\n0,0,0,0\n", origin="input.csv")

    def test_malformed_row_reports_line(self):
        with pytest.raises(FormatError, match=":3"):
            parse_samples_csv("0,0,1,0\n1,0,1,0\n2,oops,1,0\n")

    def test_wrong_field_count(self):
        with pytest.raises(FormatError, match="4 fields"):
            parse_samples_csv("1,2,3\n")

    def test_non_finite_rejected(self):
        with pytest.raises(FormatError):
            parse_samples_csv("inf,0,1,0\n")

    def test_row_order_defines_ids(self):
        samples = parse_samples_csv("0,0,1,0\n1,0,1,0\n2,0,1,0\n")
        assert [s.id for s in samples] == [0, 1, 2]


class TestJson:
    def test_round_trip_with_params(self):
        samples = [make_sample(0.5, -0.25, 3, 4, 0)]
        text = samples_to_json(samples, {"epsilon": 0.3})
        parsed, params = parse_samples_json(text)
        assert params == {"epsilon": 0.3}
        assert parsed == samples

    def test_invalid_json(self):
        with pytest.raises(FormatError):
            parse_samples_json("{nope")

    def test_missing_samples_key(self):
        with pytest.raises(FormatError):
            parse_samples_json("{}")


coords = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
tangent_coords = st.floats(min_value=-100, max_value=100).filter(lambda v: abs(v) > 1e-6)


@settings(max_examples=100)
@given(st.lists(st.tuples(coords, coords, tangent_coords, tangent_coords), max_size=12))
def test_csv_round_trip_identity(rows):
    samples = [make_sample(x, y, tx, ty, k) for k, (x, y, tx, ty) in enumerate(rows)]
    assert parse_samples_csv(samples_to_csv(samples)) == samples


@settings(max_examples=100)
@given(st.lists(st.tuples(coords, coords, tangent_coords, tangent_coords), max_size=12))
def test_json_round_trip_identity(rows):
    samples = [make_sample(x, y, tx, ty, k) for k, (x, y, tx, ty) in enumerate(rows)]
    parsed, _ = parse_samples_json(samples_to_json(samples))
    assert parsed == samples


class TestParseSamplesPath:
    def test_csv_file(self, tmp_path):
        from curvelink import parse_samples, write_samples

        path = str(tmp_path / "s.csv")
        samples = [make_sample(0.5, -0.25, 3, 4, 0), make_sample(1, 2, 0, 1, 1)]
        write_samples(path, samples, "csv")
        assert parse_samples(path, "csv") == samples

    def test_json_file(self, tmp_path):
        from curvelink import parse_samples, write_samples

        path = str(tmp_path / "s.json")
        samples = [make_sample(0.5, -0.25, 3, 4, 0)]
        write_samples(path, samples, "json", params={"epsilon": 0.4})
        assert parse_samples(path, "json") == samples

    def test_unknown_format(self, tmp_path):
        from curvelink import parse_samples

        path = tmp_path / "s.csv"
        path.write_text("0,0,1,0\n")
        with pytest.raises(ValueError):
            parse_samples(str(path), "xml")


class TestGraphJson:
    def test_round_trip_and_sorted_edges(self):
        from curvelink import PolyGraph

        samples = [make_sample(float(k), 0.0, 1, 0, k) for k in range(4)]
        g = PolyGraph.from_edges(4, [(2, 3), (0, 1)])
        text = graph_to_json(g, samples)
        doc = json.loads(text)
        assert doc["edges"] == [[0, 1], [2, 3]]
        g2, samples2 = parse_graph_json(text)
        assert g2.edges == g.edges
        assert samples2 == samples


class TestFigureJson:
    def make_figure(self):
        fig = sample_figure(
            FigureSpec(
                (Circle((0, 0), 1.0), Segment((2, -1), (2, 1))),
                kappa_max=1.1,
                delta=0.9,
            ),
            epsilon=0.3,
            seed=21,
        )
        return inject_spurious(fig, 7, fig.bounding_box(pad=0.2), 5)

    def test_round_trip(self):
        fig = self.make_figure()
        text = figure_to_json(fig)
        back = parse_figure_json(text)
        assert back.samples == fig.samples
        assert back.truth.edges == fig.truth.edges
        assert back.provenance == fig.provenance
        assert back.epsilon == fig.epsilon
        assert back.min_separation_actual == fig.min_separation_actual

    def test_byte_determinism(self):
        fig = self.make_figure()
        assert figure_to_json(fig) == figure_to_json(fig)


class TestFigureSpecJson:
    def test_parse(self):
        spec = parse_figure_spec(
            json.dumps(
                {
                    "kappa_max": 1.2,
                    "delta": 0.4,
                    "curves": [
                        {"kind": "circle", "center": [0, 0], "radius": 1.0},
                        {"kind": "oval", "center": [3, 0], "width": 2.0, "height": 1.0},
                        {"kind": "segment", "a": [0, 2], "b": [3, 2]},
                    ],
                }
            )
        )
        assert len(spec.curves) == 3
        assert spec.kappa_max == 1.2

    def test_unknown_kind(self):
        with pytest.raises(FormatError, match="curve kind"):
            parse_figure_spec('{"kappa_max": 1, "delta": 1, "curves": [{"kind": "blob"}]}')

    def test_missing_field(self):
        with pytest.raises(FormatError):
            parse_figure_spec('{"curves": []}')


class TestValidation:
    def test_known_bad_parameter_set_flagged(self):
        # published example parameters that violate the separation bound:
        # 2 * 3 * 0.065^2 = 0.02535 > 0.015
        params = ReconstructionParams(kappa_max=3.0, epsilon=0.065, mode="noise_free")
        checks = validate(params, declared_delta=0.015)
        by_name = {c.name: c for c in checks}
        sep = by_name["separation_bound"]
        assert sep.passed is False
        assert sep.rhs == pytest.approx(0.02535)
        assert strict_failures(checks) == [sep]

    def test_good_parameters_pass(self):
        params = ReconstructionParams(kappa_max=1.0, epsilon=0.1)
        checks = validate(params, declared_delta=0.1)
        assert strict_failures(checks) == []
        by_name = {c.name: c for c in checks}
        assert by_name["separation_bound"].rhs == pytest.approx(0.02)
        assert by_name["sampling_bound"].rhs == pytest.approx(1 / math.sqrt(2))

    def test_sampling_boundary_is_strict(self):
        kappa = 1.3
        eps = 1.0 / (kappa * math.sqrt(2.0))
        params = ReconstructionParams(kappa_max=kappa, epsilon=eps)
        checks = validate(params)
        by_name = {c.name: c for c in checks}
        assert by_name["sampling_bound"].passed is False

    def test_every_inequality_reported(self):
        params = ReconstructionParams(kappa_max=1.0, epsilon=0.1, mode="noisy")
        names = {c.name for c in validate(params)}
        assert names == {
            "sampling_bound",
            "separation_bound",
            "noisy_separation_bound",
            "noisy_separation_bound_loose",
            "min_spacing_bound",
        }

    def test_unknown_delta_reports_unevaluated(self):
        params = ReconstructionParams(kappa_max=1.0, epsilon=0.1)
        by_name = {c.name: c for c in validate(params)}
        assert by_name["separation_bound"].passed is None
        assert by_name["separation_bound"].rhs is not None
        assert strict_failures(validate(params)) == []

    def test_noisy_example_parameters_evaluated(self):
        # kappa=5, eps=0.15, zeta=xi=0.01: the noisy separation threshold is
        # 4*0.01 + 4*0.15*0.01 + 2.1*5*0.0225 = 0.28225, and the sampling
        # bound itself fails since 0.15 >= 1/(5*sqrt(2))
        params = ReconstructionParams(
            kappa_max=5.0, epsilon=0.15, zeta=0.01, xi=0.01, mode="noisy"
        )
        by_name = {c.name: c for c in validate(params, declared_delta=0.29)}
        noisy_check = by_name["noisy_separation_bound"]
        assert noisy_check.rhs == pytest.approx(0.28225)
        assert noisy_check.passed is True
        assert by_name["sampling_bound"].passed is False

    def test_noisy_mode_uses_strict_form_not_loose(self):
        params = ReconstructionParams(
            kappa_max=1.0, epsilon=0.2, zeta=0.01, xi=0.05, mode="noisy"
        )
        # delta between the two thresholds: fails strict, passes loose
        loose = 4 * 0.01 + 2 * 0.2 * 0.05 + 2.1 * 1.0 * 0.04
        strict = 4 * 0.01 + 4 * 0.2 * 0.05 + 2.1 * 1.0 * 0.04
        delta = (loose + strict) / 2
        checks = validate(params, declared_delta=delta)
        failures = strict_failures(checks)
        assert [c.name for c in failures] == ["noisy_separation_bound"]

    def test_min_spacing_checked_when_supplied(self):
        params = ReconstructionParams(
            kappa_max=1.0, epsilon=0.2, zeta=0.05, xi=0.0, mode="noisy"
        )
        floor = (1 + 2 ** 1.5) * 0.05
        by_name = {c.name: c for c in validate(params, min_adjacent_spacing=floor * 0.9)}
        assert by_name["min_spacing_bound"].passed is False
        by_name = {c.name: c for c in validate(params, min_adjacent_spacing=floor * 1.1)}
        assert by_name["min_spacing_bound"].passed is True


class TestReconstructionParams:
    def test_rejects_bad_mode(self):
        with pytest.raises(ValueError):
            ReconstructionParams(kappa_max=1.0, epsilon=0.1, mode="banana")

    def test_rejects_bad_pair_source(self):
        with pytest.raises(ValueError):
            ReconstructionParams(kappa_max=1.0, epsilon=0.1, pair_source="linear")

    def test_zone_params_passthrough(self):
        p = ReconstructionParams(kappa_max=2.0, epsilon=0.1, zeta=0.01, xi=0.02, tol=1e-8)
        zp = p.zone_params()
        assert zp == ZoneParams(2.0, 0.1, 0.01, 0.02, 1e-8)

    def test_neighbor_radius_mode_dependent(self):
        noisy = ReconstructionParams(kappa_max=1.0, epsilon=0.1, zeta=0.02, mode="noisy")
        assert noisy.neighbor_radius() == pytest.approx(0.14)
        clean = ReconstructionParams(kappa_max=1.0, epsilon=0.1, zeta=0.02)
        assert clean.neighbor_radius() == pytest.approx(0.1)
