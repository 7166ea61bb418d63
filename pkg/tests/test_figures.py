import json
import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conicangles import GeometryError, Metric, Vec2, angle_between
from conicangles.figures import (
    CAPTIONS,
    COLUMNS,
    SAMPLES,
    build_figure,
    emit_figure,
    max_curve_residual,
    read_csv,
    resolve_params,
    to_csv,
    to_json,
    to_svg,
)


def chord_vec(fig, name):
    (_, _, t_a, x_a), (_, _, t_b, x_b) = fig.series(name)
    return Vec2(t_b - t_a, x_b - x_a)


@pytest.mark.parametrize("fid", range(1, 7))
def test_every_figure_is_self_consistent(fid):
    fig = build_figure(fid)
    assert fig.caption == CAPTIONS[fid]
    assert max_curve_residual(fig) <= 1e-10
    assert max_curve_residual(fig, roles=("curve",)) <= 1e-10
    curves = [s for s, r in fig.roles.items() if r == "curve"]
    assert curves and all(len(fig.series(s)) == SAMPLES for s in curves)


class TestFigureOne:
    def test_default_angle(self):
        md = build_figure(1).metadata
        assert md["inscribed_angle"] == pytest.approx(1.0, abs=1e-12)
        assert md["predicted_angle"] == pytest.approx(1.0, abs=1e-15)

    def test_angle_from_rows(self):
        fig = build_figure(1)
        ang = angle_between(chord_vec(fig, "chord_P0P1"), chord_vec(fig, "chord_P0P2")).value
        assert ang == pytest.approx(fig.metadata["inscribed_angle"], abs=1e-9)

    def test_override(self):
        fig = build_figure(1, {"theta1": 2.0})
        assert fig.metadata["inscribed_angle"] == pytest.approx(1.5, abs=1e-12)


def test_thales_figure():
    fig = build_figure(2)
    md = fig.metadata
    assert abs(md["thales_residual"]) <= 1e-12
    assert md["central_angle"] == pytest.approx(0.3, abs=1e-12)
    u, v = chord_vec(fig, "chord_P0P1"), chord_vec(fig, "chord_P0P1r")
    assert abs(-u.x0 * v.x0 + u.x1 * v.x1) <= 1e-10 * u.euclid_norm() * v.euclid_norm()


@pytest.mark.parametrize("fid", [3, 4])
def test_isometry_figures(fid):
    fig = build_figure(fid)
    md = fig.metadata
    assert md["inscribed_angle_turned"] == pytest.approx(md["inscribed_angle"], abs=1e-10)
    assert md["rotated_config_angle"] == pytest.approx(md["inscribed_angle"], abs=1e-10)
    assert md["inscribed_angle"] == pytest.approx(md["predicted_angle"], abs=1e-10)
    metric = Metric.euclidean() if fid == 3 else Metric.minkowski()
    a0 = angle_between(chord_vec(fig, "chord_P0P1"), chord_vec(fig, "chord_P0P2"), metric).value
    a1 = angle_between(chord_vec(fig, "chord_P0P1p"), chord_vec(fig, "chord_P0P2p"), metric).value
    assert a1 == pytest.approx(a0, abs=1e-9)
    assert fig.series("mapped_back")


def test_kinematics_figure():
    fig = build_figure(5)
    md = fig.metadata
    assert md["delta_tau"] == pytest.approx(1.0, abs=1e-12)
    assert md["predicted_delta_tau"] == pytest.approx(1.0, abs=1e-15)
    tau_a = fig.series("particle_A")[1][1]
    tau_b = fig.series("particle_B")[1][1]
    assert tau_a - tau_b == pytest.approx(md["delta_tau"], abs=1e-9)
    ang = angle_between(chord_vec(fig, "particle_A"), chord_vec(fig, "particle_B")).value
    ang_md = md["worldline_pseudo_angle"]
    assert ang_md == pytest.approx(0.5, abs=1e-12)
    # the chord from ejection to collision is the particle worldline itself
    assert ang == pytest.approx(ang_md, abs=1e-9)


def test_parabola_figure():
    fig = build_figure(6)
    md = fig.metadata
    assert set(s for s, r in fig.roles.items() if r == "chord") == {"chord_P0P1", "chord_P0P2", "chord_P1P2"}
    assert md["reconstructed_theta_separation"] == pytest.approx(2.0, abs=1e-12)
    assert md["theta_separation"] == 2.0
    v1, v2 = chord_vec(fig, "chord_P0P1"), chord_vec(fig, "chord_P0P2")
    recomputed = abs(v1.x1 / v1.x0 - v2.x1 / v2.x0)
    assert recomputed == pytest.approx(md["angle_measure"], abs=1e-9)


class TestParams:
    def test_defaults(self):
        assert resolve_params(1, None) == {"theta0": 0.7, "theta1": 1.0, "theta2": -1.0}

    def test_unknown_key(self):
        with pytest.raises(GeometryError):
            resolve_params(1, {"phiA": 1.0})

    def test_bad_id(self):
        with pytest.raises(GeometryError):
            build_figure(7)

    def test_non_finite(self):
        with pytest.raises(GeometryError):
            resolve_params(6, {"a": math.inf})

    def test_degenerate_config(self):
        with pytest.raises(GeometryError):
            build_figure(1, {"theta1": 0.7})


class TestFormats:
    def test_csv_round_trip(self):
        fig = build_figure(1)
        text = to_csv(fig)
        assert text.splitlines()[0] == ",".join(COLUMNS)
        assert read_csv(text) == fig.rows

    def test_json_mirrors_csv(self):
        fig = build_figure(5)
        doc = json.loads(to_json(fig))
        assert doc["figure"] == 5 and doc["caption"] == CAPTIONS[5]
        assert doc["columns"] == list(COLUMNS)
        assert [tuple(r[k] for k in COLUMNS) for r in doc["rows"]] == fig.rows
        assert doc["metadata"]["delta_tau"] == fig.metadata["delta_tau"]
        assert doc["series"]["observer"]["curve"]["kind"] == "rel-hyperbola"

    def test_json_metadata_round_trip(self):
        doc = json.loads(to_json(build_figure(1)))
        rows = [r for r in doc["rows"] if r["series"].startswith("chord")]
        pts = {(r["series"], i % 2): Vec2(r["t"], r["x"]) for i, r in enumerate(rows)}
        u = pts[("chord_P0P1", 1)] - pts[("chord_P0P1", 0)]
        v = pts[("chord_P0P2", 1)] - pts[("chord_P0P2", 0)]
        assert angle_between(u, v).value == pytest.approx(doc["metadata"]["inscribed_angle"], abs=1e-9)

    def test_svg(self):
        text = to_svg(build_figure(2))
        assert text.startswith("<svg") or text.startswith("<?xml")
        assert text.rstrip().endswith("</svg>")
        assert to_svg(build_figure(2)) == text

    @pytest.mark.parametrize("fmt", ["csv", "json", "svg"])
    def test_deterministic(self, fmt):
        assert emit_figure(4, None, fmt) == emit_figure(4, None, fmt)

    def test_writes_file(self, tmp_path):
        out = tmp_path / "fig.csv"
        text = emit_figure(6, {"a": 2.0}, "csv", out)
        assert out.read_text() == text

    def test_unwritable(self, tmp_path):
        with pytest.raises(OSError):
            emit_figure(1, None, "csv", tmp_path / "missing" / "fig.csv")

    def test_unknown_format(self):
        with pytest.raises(GeometryError):
            emit_figure(1, None, "png")


@settings(max_examples=25, deadline=None)
@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2))
def test_hyperbola_figure_consistency(t0, t1, t2):
    assume(min(abs(t0 - t1), abs(t0 - t2), abs(t1 - t2)) > 1e-3)
    fig = build_figure(1, {"theta0": t0, "theta1": t1, "theta2": t2})
    assert max_curve_residual(fig) <= 1e-10
    ang = angle_between(chord_vec(fig, "chord_P0P1"), chord_vec(fig, "chord_P0P2")).value
    assert ang == pytest.approx(abs(t1 - t2) / 2, abs=1e-9)
