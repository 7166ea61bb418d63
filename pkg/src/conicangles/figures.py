"""Data behind the six schematic figures, serialised as CSV, JSON or SVG.

Every figure is a list of rows ``(series, theta, t, x)``: sampled curves
plus chord endpoints, with ``t`` the first plane component and ``x`` the
second.  For the circle figure that means ``t = cos(theta)``,
``x = sin(theta)``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .conics import (
    TWO_PI,
    ConicKind,
    ConicSpec,
    VerticalChord,
    chord_gradient,
    conic_point,
    implicit_residual,
    reintersect,
)
from .errors import GeometryError
from .kinematics import ObserverTrajectory, collision, eject, proper_time_gap
from .metric import IsometryKind, Metric, Vec2, angle_between, apply_isometry, make_isometry
from .theorems import (
    InscribedConfig,
    central_angle,
    expected_inscribed_angle,
    inscribed_angle,
    parabola_angle_measure,
    rotate_config,
    thales_residual,
)

SAMPLES = 512
COLUMNS = ("series", "theta", "t", "x")

CAPTIONS = {
    1: "Inscribed angle theorem in Minkowski space",
    2: "Thales' theorem in Minkowski space",
    3: "Alternative interpretation of Euclidean inscribed angle theorem",
    4: "Alternative interpretation of hyperbolic inscribed angle theorem",
    5: "Kinematic interpretation of hyperbolic inscribed angle theorem",
    6: "Inscribed angle theorem for parabola",
}

DEFAULTS = {
    "theta0": 0.7,
    "theta1": 1.0,
    "theta2": -1.0,
    "a": 1.0,
    "c": 1.0,
    "phiA": 1.0,
    "phiB": 0.5,
    "tauE": 0.0,
    "phi": 0.5,
}

ALLOWED = {
    1: ("theta0", "theta1", "theta2"),
    2: ("theta0", "theta1"),
    3: ("theta0", "theta1", "theta2", "phi"),
    4: ("theta0", "theta1", "theta2", "phi"),
    5: ("a", "c", "phiA", "phiB", "tauE"),
    6: ("theta0", "theta1", "theta2", "a"),
}


@dataclass
class FigureData:
    figure_id: int
    params: dict[str, float]
    rows: list[tuple[str, float, float, float]] = field(default_factory=list)
    # series name -> the curve its points lie on
    curves: dict[str, ConicSpec] = field(default_factory=dict)
    # series name -> "curve" (sampled polyline) or "chord" (segment endpoints)
    roles: dict[str, str] = field(default_factory=dict)
    metadata: dict[str, float] = field(default_factory=dict)

    @property
    def caption(self) -> str:
        return CAPTIONS[self.figure_id]

    def add(self, series: str, role: str, spec: ConicSpec, pts) -> None:
        self.roles.setdefault(series, role)
        self.curves.setdefault(series, spec)
        for theta, p in pts:
            self.rows.append((series, float(theta), p.x0, p.x1))

    def series(self, name: str) -> list[tuple[str, float, float, float]]:
        return [r for r in self.rows if r[0] == name]


def resolve_params(figure_id: int, overrides: dict[str, float] | None) -> dict[str, float]:
    if figure_id not in CAPTIONS:
        raise GeometryError(f"figure id must be 1..6, got {figure_id}")
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    unknown = sorted(set(overrides) - set(ALLOWED[figure_id]))
    if unknown:
        raise GeometryError(f"figure {figure_id} does not take {', '.join(unknown)}")
    params = {k: DEFAULTS[k] for k in ALLOWED[figure_id]}
    for k, v in overrides.items():
        v = float(v)
        if not math.isfinite(v):
            raise GeometryError(f"parameter {k} must be finite")
        params[k] = v
    return params


def _sample(spec: ConicSpec, lo: float, hi: float, n: int = SAMPLES):
    return [(t, conic_point(spec, t).point) for t in np.linspace(lo, hi, n)]


def _at(spec: ConicSpec, *thetas: float):
    return [(t, conic_point(spec, t).point) for t in thetas]


def _span(thetas, pad: float = 1.0) -> tuple[float, float]:
    return min(thetas) - pad, max(thetas) + pad


def _hyperbola_inscribed(p: dict[str, float]) -> FigureData:
    spec = ConicSpec.unit_hyperbola()
    t0, t1, t2 = p["theta0"], p["theta1"], p["theta2"]
    cfg = InscribedConfig(spec, t0, t1, t2)
    fig = FigureData(1, p)
    fig.add("hyperbola", "curve", spec, _sample(spec, *_span(cfg.thetas)))
    fig.add("chord_P0P1", "chord", spec, _at(spec, t0, t1))
    fig.add("chord_P0P2", "chord", spec, _at(spec, t0, t2))
    fig.metadata = {
        "inscribed_angle": inscribed_angle(cfg).value,
        "predicted_angle": expected_inscribed_angle(cfg),
    }
    return fig


def _thales(p: dict[str, float]) -> FigureData:
    spec = ConicSpec.unit_hyperbola()
    t0, t1 = p["theta0"], p["theta1"]
    if t0 == t1:
        raise GeometryError("figure 2 needs theta0 != theta1")
    lo, hi = _span((t0, t1))
    fig = FigureData(2, p)
    branch = _sample(spec, lo, hi)
    fig.add("hyperbola", "curve", spec, branch)
    fig.add("hyperbola_reflected", "curve", spec, [(t, -q) for t, q in branch])
    p0, p1 = conic_point(spec, t0).point, conic_point(spec, t1).point
    fig.add("chord_P0P1", "chord", spec, [(t0, p0), (t1, p1)])
    fig.add("chord_P0P1r", "chord", spec, [(t0, p0), (t1, -p1)])
    u, v = p1 - p0, -p1 - p0
    m = 0.5 * (t0 + t1)
    fig.metadata = {
        "thales_residual": thales_residual(t0, t1),
        "gradient_P0P1": u.x0 / u.x1 if u.x1 else math.inf,
        "gradient_P0P1r": v.x0 / v.x1,
        "predicted_gradient_P0P1": 1.0 / math.tanh(m) if m else math.inf,
        "predicted_gradient_P0P1r": math.tanh(m),
        "central_angle": central_angle(t0, t1).value,
    }
    return fig


def _turn_lines(spec: ConicSpec, cfg: InscribedConfig, psi: float) -> list[float]:
    """Turn both chords about P0 by ``psi`` and return the new far endpoints."""
    p0 = conic_point(spec, cfg.theta0).point
    out = []
    for t in (cfg.theta1, cfg.theta2):
        d = conic_point(spec, t).point - p0
        if spec.kind is ConicKind.UNIT_CIRCLE:
            # direction angle of the line, gradient is rise x1 over run x0
            alpha = math.atan2(d.x1, d.x0) + psi
            co = math.cos(alpha)
            g = VerticalChord(1) if co == 0.0 else math.sin(alpha) / co
        else:
            # timelike direction (cosh b, sinh b) in (x0, x1); gradient x0/x1 = coth b
            b = math.atanh(d.x1 / d.x0) + psi
            g = VerticalChord(1) if b == 0.0 else 1.0 / math.tanh(b)
        out.append(reintersect(spec, cfg.theta0, g))
    return out


def _isometry_figure(figure_id: int, p: dict[str, float]) -> FigureData:
    circle = figure_id == 3
    spec = ConicSpec.unit_circle() if circle else ConicSpec.unit_hyperbola()
    t0, t1, t2, phi = p["theta0"], p["theta1"], p["theta2"], p["phi"]
    cfg = InscribedConfig(spec, t0, t1, t2)
    # turning both lines by phi/2 moves both far endpoints by phi
    t1p, t2p = _turn_lines(spec, cfg, 0.5 * phi)
    moved = InscribedConfig(spec, t0, t1p, t2p)
    fig = FigureData(figure_id, p)
    if circle:
        fig.add("circle", "curve", spec, _sample(spec, 0.0, TWO_PI))
    else:
        fig.add("hyperbola", "curve", spec, _sample(spec, *_span(cfg.thetas + moved.thetas)))
    fig.add("chord_P0P1", "chord", spec, _at(spec, t0, t1))
    fig.add("chord_P0P2", "chord", spec, _at(spec, t0, t2))
    fig.add("chord_P0P1p", "chord", spec, _at(spec, t0, t1p))
    fig.add("chord_P0P2p", "chord", spec, _at(spec, t0, t2p))
    iso = make_isometry(IsometryKind.ROTATION if circle else IsometryKind.BOOST, -phi)
    back = []
    for t in (t1p, t2p):
        q = apply_isometry(iso, conic_point(spec, t).point)
        back.append((math.atan2(q.x1, q.x0) % TWO_PI if circle else math.asinh(q.x0), q))
    fig.add("mapped_back", "points", spec, back)
    fig.metadata = {
        "inscribed_angle": inscribed_angle(cfg).value,
        "inscribed_angle_turned": inscribed_angle(moved).value,
        "predicted_angle": expected_inscribed_angle(cfg),
        "theta1_turned": t1p,
        "theta2_turned": t2p,
        "isometry_parameter": phi,
        "rotated_config_angle": inscribed_angle(rotate_config(cfg, phi)).value,
    }
    return fig


def _kinematics(p: dict[str, float]) -> FigureData:
    a, c, tau_e = p["a"], p["c"], p["tauE"]
    traj = ObserverTrajectory(a, c)
    spec = traj.spec
    wa, wb = eject(traj, tau_e, p["phiA"]), eject(traj, tau_e, p["phiB"])
    ca, cb = collision(traj, wa), collision(traj, wb)
    fig = FigureData(5, p)
    lo, hi = _span((tau_e, ca.tau, cb.tau), 0.5 * c / a)
    fig.add("observer", "curve", spec, _sample(spec, lo, hi))
    fig.add("particle_A", "chord", spec, [(tau_e, wa.anchor.point), (ca.tau, ca.point)])
    fig.add("particle_B", "chord", spec, [(tau_e, wb.anchor.point), (cb.tau, cb.point)])
    metric = Metric.minkowski(c)
    va, vb = Vec2(1.0, wa.velocity(c)), Vec2(1.0, wb.velocity(c))
    fig.metadata = {
        "tau_collision_A": ca.tau,
        "tau_collision_B": cb.tau,
        "delta_tau": proper_time_gap(traj, tau_e, p["phiA"], p["phiB"]),
        "predicted_delta_tau": 2.0 * c / a * (p["phiA"] - p["phiB"]),
        "worldline_pseudo_angle": angle_between(va, vb, metric).value,
    }
    return fig


def _parabola(p: dict[str, float]) -> FigureData:
    a, t0, t1, t2 = p["a"], p["theta0"], p["theta1"], p["theta2"]
    spec = ConicSpec.parabola(a)
    if len({t0, t1, t2}) != 3:
        raise GeometryError("parabola figure needs distinct parameters")
    fig = FigureData(6, p)
    fig.add("parabola", "curve", spec, _sample(spec, *_span((t0, t1, t2))))
    fig.add("chord_P0P1", "chord", spec, _at(spec, t0, t1))
    fig.add("chord_P0P2", "chord", spec, _at(spec, t0, t2))
    fig.add("chord_P1P2", "chord", spec, _at(spec, t1, t2))
    g1, g2 = chord_gradient(spec, t0, t1), chord_gradient(spec, t0, t2)
    measure = parabola_angle_measure(a, t0, t1, t2)
    fig.metadata = {
        "gradient_P0P1": g1 if not isinstance(g1, VerticalChord) else math.inf,
        "gradient_P0P2": g2 if not isinstance(g2, VerticalChord) else math.inf,
        "angle_measure": measure,
        "reconstructed_theta_separation": 2.0 * measure / a,
        "theta_separation": abs(t1 - t2),
    }
    return fig


def build_figure(figure_id: int, overrides: dict[str, float] | None = None) -> FigureData:
    params = resolve_params(figure_id, overrides)
    if figure_id == 1:
        return _hyperbola_inscribed(params)
    if figure_id == 2:
        return _thales(params)
    if figure_id in (3, 4):
        return _isometry_figure(figure_id, params)
    if figure_id == 5:
        return _kinematics(params)
    return _parabola(params)


def max_curve_residual(fig: FigureData, roles=("chord",)) -> float:
    """Largest implicit-equation residual over rows of the given roles."""
    worst = 0.0
    for series, _, t, x in fig.rows:
        if fig.roles[series] in roles:
            worst = max(worst, implicit_residual(fig.curves[series], Vec2(t, x)))
    return worst


def _num(v: float) -> str:
    return format(v, ".17g")


def to_csv(fig: FigureData) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for series, theta, t, x in fig.rows:
        w.writerow((series, _num(theta), _num(t), _num(x)))
    return buf.getvalue()


def read_csv(text: str) -> list[tuple[str, float, float, float]]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != COLUMNS:
        raise ValueError(f"unexpected CSV header {header}")
    return [(s, float(th), float(t), float(x)) for s, th, t, x in reader]


def _json_safe(v: float):
    return v if math.isfinite(v) else None


def to_json(fig: FigureData) -> str:
    doc = {
        "figure": fig.figure_id,
        "caption": fig.caption,
        "params": fig.params,
        "metadata": {k: _json_safe(v) for k, v in fig.metadata.items()},
        "series": {name: {"role": fig.roles[name], "curve": _curve_dict(fig.curves[name])} for name in fig.roles},
        "columns": list(COLUMNS),
        "rows": [dict(zip(COLUMNS, r)) for r in fig.rows],
    }
    return json.dumps(doc, indent=1) + "\n"


def _curve_dict(spec: ConicSpec) -> dict:
    return {"kind": spec.kind.value, "a": spec.a, "c": spec.c}


def to_svg(fig: FigureData, width: int = 480, height: int = 480, margin: int = 24) -> str:
    """Schematic spacetime diagram: space to the right, time upwards."""
    xs = [r[3] for r in fig.rows]
    ts = [r[2] for r in fig.rows]
    x_lo, x_hi, t_lo, t_hi = min(xs), max(xs), min(ts), max(ts)
    scale = min((width - 2 * margin) / ((x_hi - x_lo) or 1.0), (height - 2 * margin) / ((t_hi - t_lo) or 1.0))

    def pos(t: float, x: float) -> str:
        return f"{margin + (x - x_lo) * scale:.3f},{height - margin - (t - t_lo) * scale:.3f}"

    colors = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f"<title>{fig.caption}</title>",
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    chord_index = 0
    for name, role in fig.roles.items():
        pts = " ".join(pos(t, x) for _, _, t, x in fig.series(name))
        if role == "curve":
            out.append(f'<polyline points="{pts}" fill="none" stroke="black" stroke-width="1.5"/>')
        elif role == "chord":
            color = colors[chord_index % len(colors)]
            chord_index += 1
            out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.2"/>')
        for _, _, t, x in fig.series(name) if role != "curve" else ():
            cx, cy = pos(t, x).split(",")
            out.append(f'<circle cx="{cx}" cy="{cy}" r="2.5" fill="black"/>')
    y = 16
    for k, v in fig.metadata.items():
        out.append(f'<text x="4" y="{y}" font-size="10" font-family="monospace">{k} = {v:.6g}</text>')
        y += 12
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(fig: FigureData, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(fig)
    if fmt == "json":
        return to_json(fig)
    if fmt == "svg":
        return to_svg(fig)
    raise GeometryError(f"unknown figure format {fmt!r}")


def emit_figure(figure_id: int, params: dict[str, float] | None, fmt: str, output_path=None) -> str:
    """Build figure ``figure_id`` and write it to ``output_path`` (returns the text either way)."""
    text = render(build_figure(figure_id, params), fmt)
    if output_path is not None:
        with open(output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
