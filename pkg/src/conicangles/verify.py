"""Seeded property batteries run by ``conicangles verify``.

Each property draws from its own generator, seeded from ``(seed, index)``
with ``index`` its position in :data:`PROPERTIES`, so a suite gives the same
numbers whether it runs alone or as part of ``all``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .conics import ConicKind, ConicSpec, VerticalChord, chord_gradient, conic_point, implicit_residual
from .conics import reintersect, secant_gradient, wick_check
from .kinematics import (
    ObserverTrajectory,
    collision,
    eject,
    newtonian_collision_gap,
    newtonian_collision_time,
    numeric_collision_oracle,
    proper_time_gap,
)
from .metric import (
    MINKOWSKI,
    CausalClass,
    IsometryKind,
    Metric,
    Vec2,
    angle_between,
    apply_isometry,
    classify,
    inner,
    make_isometry,
)
from .theorems import (
    InscribedConfig,
    central_angle,
    expected_inscribed_angle,
    inscribed_angle,
    limit_scan,
    parabola_angle_measure,
    parabola_pseudo_angle,
    rotate_config,
    thales_residual,
)

SUITES = ("metric", "conics", "theorems", "kinematics", "limits")
CANONICAL_SCAN = dict(a=1.0, theta0=0.0, theta1=1.0, theta2=-1.0, c_values=(10.0, 20.0, 40.0, 80.0, 160.0))


@dataclass(frozen=True)
class Outcome:
    residual: float
    tol: float
    lower: float | None = None  # properties with a lower bound (halving ratios)
    note: str = ""

    @property
    def passed(self) -> bool:
        if not math.isfinite(self.residual):
            return False
        if self.lower is not None:
            return self.residual >= self.lower
        return self.residual <= self.tol


@dataclass(frozen=True)
class Property:
    suite: str
    name: str
    check: Callable[[np.random.Generator, int], Outcome]


def _distinct(rng, n, lo=-3.0, hi=3.0, gap=1e-6):
    while True:
        v = rng.uniform(lo, hi, n)
        if n < 2 or np.min(np.diff(np.sort(v))) > gap:
            return [float(x) for x in v]


def _timelike(rng, c=1.0):
    w = rng.uniform(-0.95, 0.95) * c
    s = rng.choice((-1.0, 1.0)) * rng.uniform(0.2, 3.0)
    return Vec2(s, s * w)


def _spacelike(rng):
    w = rng.uniform(-0.95, 0.95)
    s = rng.choice((-1.0, 1.0)) * rng.uniform(0.2, 3.0)
    return Vec2(s * w, s)


# ---------------------------------------------------------------- metric


def _bilinear(rng, n):
    worst = 0.0
    for _ in range(n):
        m = Metric(rng.choice(("euclidean", "minkowski")), float(rng.uniform(0.5, 3.0)))
        u, v, w = (Vec2(*rng.uniform(-5, 5, 2)) for _ in range(3))
        k = float(rng.uniform(-3, 3))
        lhs = inner(u * k + w, v, m)
        rhs = k * inner(u, v, m) + inner(w, v, m)
        scale = max(1.0, abs(k) * abs(inner(u, v, m)), abs(inner(w, v, m)))
        worst = max(worst, abs(lhs - rhs) / scale, abs(inner(u, v, m) - inner(v, u, m)) / scale)
    return Outcome(worst, 1e-12)


def _reverse_cs(rng, n):
    worst = 0.0
    for i in range(n):
        u, v = (_timelike(rng), _timelike(rng)) if i % 2 else (_spacelike(rng), _spacelike(rng))
        uu, vv, uv = inner(u, u), inner(v, v), inner(u, v)
        worst = max(worst, (uu * vv - uv * uv) / max(1.0, abs(uu * vv)))
    return Outcome(max(worst, 0.0), 1e-12)


def _boost_composition(rng, n):
    worst = 0.0
    for _ in range(n):
        p, q = rng.uniform(-3, 3, 2)
        lhs = make_isometry("boost", p) @ make_isometry("boost", q)
        rhs = make_isometry("boost", p + q)
        for r1, r2 in zip(lhs.matrix, rhs.matrix):
            for x, y in zip(r1, r2):
                worst = max(worst, abs(x - y) / max(1.0, abs(y)))
    return Outcome(worst, 1e-12)


def _boost_invariance(rng, n):
    worst = 0.0
    for _ in range(n):
        u, v = _timelike(rng), _timelike(rng)
        b = make_isometry("boost", float(rng.uniform(-2, 2)))
        before = angle_between(u, v).value
        after = angle_between(apply_isometry(b, u), apply_isometry(b, v)).value
        worst = max(worst, abs(before - after))
    return Outcome(worst, 1e-10)


def _rapidity_velocity(rng, n):
    worst = 0.0
    for _ in range(n):
        w = float(rng.uniform(-0.99, 0.99))
        worst = max(worst, abs(angle_between(Vec2(1.0, 0.0), Vec2(1.0, w)).value - math.atanh(abs(w))))
    return Outcome(worst, 1e-10)


def _isometry_forms(rng, n):
    worst = 0.0
    for _ in range(n):
        kind = IsometryKind.BOOST if rng.random() < 0.5 else IsometryKind.ROTATION
        iso = make_isometry(kind, float(rng.uniform(-3, 3)))
        v = Vec2(*rng.uniform(-5, 5, 2))
        m = iso.metric()
        w = apply_isometry(iso, v)
        q0, q1 = inner(v, v, m), inner(w, w, m)
        # a boosted Minkowski norm is a difference of squares of the image's size
        scale = max(1.0, v.euclid_norm() ** 2, w.euclid_norm() ** 2)
        worst = max(worst, abs(q0 - q1) / scale, abs(iso.det - 1.0))
    return Outcome(worst, 1e-12)


# ---------------------------------------------------------------- conics


def _random_specs(rng):
    a, c = float(rng.uniform(0.5, 2.0)), float(rng.uniform(0.5, 2.0))
    return [
        ConicSpec.unit_circle(),
        ConicSpec.unit_hyperbola(),
        ConicSpec.rel_hyperbola(a, c),
        ConicSpec.ellipse(a, c),
        ConicSpec.parabola(a),
    ]


def _param(rng, spec):
    if spec.kind is ConicKind.ELLIPSE:
        return float(rng.uniform(-0.9, 0.9) * math.pi * spec.c / spec.a)
    if spec.kind is ConicKind.UNIT_CIRCLE:
        return float(rng.uniform(0, 2 * math.pi))
    return float(rng.uniform(-3, 3))


def _implicit(rng, n):
    worst = 0.0
    for _ in range(n):
        for spec in _random_specs(rng):
            worst = max(worst, implicit_residual(spec, conic_point(spec, _param(rng, spec)).point))
    return Outcome(worst, 1e-10)


def _grad_residual(g, s):
    if isinstance(g, VerticalChord) or isinstance(s, VerticalChord):
        return 0.0 if g == s else math.inf
    return abs(g - s) / max(1.0, abs(g))


def _secant(rng, n):
    worst = 0.0
    for _ in range(n):
        for spec in _random_specs(rng):
            t0, t1 = _param(rng, spec), _param(rng, spec)
            if abs(t0 - t1) < 1e-3:
                continue
            worst = max(worst, _grad_residual(chord_gradient(spec, t0, t1), secant_gradient(spec, t0, t1)))
    return Outcome(worst, 1e-9)


def _param_gap(spec, x, y):
    if spec.kind is ConicKind.UNIT_CIRCLE:
        d = (x - y) % (2 * math.pi)
        return min(d, 2 * math.pi - d)
    return abs(x - y)


def _reintersect(rng, n):
    worst = 0.0
    for _ in range(n):
        for spec in _random_specs(rng):
            t0, t1 = _param(rng, spec), _param(rng, spec)
            if abs(t0 - t1) < 1e-3:
                continue
            back = reintersect(spec, t0, chord_gradient(spec, t0, t1))
            worst = max(worst, _param_gap(spec, back, t1 % (2 * math.pi) if spec.kind is ConicKind.UNIT_CIRCLE else t1))
    return Outcome(worst, 1e-9)


def _chords_timelike(rng, n):
    spec = ConicSpec.unit_hyperbola()
    bad = 0
    for _ in range(n):
        t0, t1 = _distinct(rng, 2)
        d = conic_point(spec, t1).point - conic_point(spec, t0).point
        bad += classify(d, MINKOWSKI) is not CausalClass.TIMELIKE
    return Outcome(float(bad), 0.0, note="count of non-timelike chords")


def _param_limit(rng, n):
    worst = math.inf
    for _ in range(n):
        a, theta = float(rng.uniform(0.5, 2.0)), float(rng.choice((-1, 1)) * rng.uniform(0.2, 3.0))
        c = 1e3 * a * abs(theta)
        par = conic_point(ConicSpec.parabola(a), theta).point
        errs = []
        for cc in (c, 2 * c):
            p = conic_point(ConicSpec.rel_hyperbola(a, cc), theta).point
            errs.append(max(abs(p.x0 - par.x0), abs(p.x1 - par.x1)))
        worst = min(worst, errs[0] / errs[1])
    return Outcome(worst, 0.0, lower=3.5, note="min halving ratio")


def _wick(rng, n):
    grid = np.linspace(-5, 5, max(n, 2))
    worst = max(wick_check(float(t)) / max(1.0, math.cosh(t)) for t in grid)
    return Outcome(worst, 1e-12)


# ---------------------------------------------------------------- theorems


def _inscribed_closed(kind):
    spec = ConicSpec(kind)

    def check(rng, n):
        worst = 0.0
        for _ in range(n):
            lo, hi = (0.0, 2 * math.pi) if kind is ConicKind.UNIT_CIRCLE else (-3.0, 3.0)
            cfg = InscribedConfig(spec, *_distinct(rng, 3, lo, hi))
            worst = max(worst, abs(inscribed_angle(cfg).value - expected_inscribed_angle(cfg)))
        return Outcome(worst, 1e-9)

    return check


def _theta0_independence(kind):
    spec = ConicSpec(kind)

    def check(rng, n):
        worst = 0.0
        lo, hi = (0.0, 2 * math.pi) if kind is ConicKind.UNIT_CIRCLE else (-3.0, 3.0)
        for _ in range(3):
            t1, t2 = _distinct(rng, 2, lo, hi, gap=1e-2)
            vals = []
            while len(vals) < n:
                t0 = float(rng.uniform(lo, hi))
                if min(abs(t0 - t1), abs(t0 - t2)) > 1e-6:
                    vals.append(inscribed_angle(InscribedConfig(spec, t0, t1, t2)).value)
            worst = max(worst, float(np.std(vals)))
        return Outcome(worst, 1e-9, note="std over theta0")

    return check


def _doubling(rng, n):
    worst = 0.0
    for _ in range(n):
        t0, t1, t2 = _distinct(rng, 3)
        ins = inscribed_angle(InscribedConfig(ConicSpec.unit_hyperbola(), t0, t1, t2)).value
        worst = max(worst, abs(central_angle(t1, t2).value - 2 * ins))
    return Outcome(worst, 1e-9)


def _thales(rng, n):
    worst = 0.0
    for _ in range(n):
        t0, t1 = _distinct(rng, 2)
        worst = max(worst, abs(thales_residual(t0, t1)) / max(1.0, math.cosh(t0 + t1)))
    return Outcome(worst, 1e-10)


def _isometry_invariance(rng, n):
    worst = 0.0
    spec = ConicSpec.unit_hyperbola()
    for _ in range(n):
        cfg = InscribedConfig(spec, *_distinct(rng, 3))
        phi = float(rng.uniform(-2, 2))
        moved = rotate_config(cfg, phi)
        shift = max(abs(m - (t + phi)) for m, t in zip(moved.thetas, cfg.thetas))
        worst = max(worst, shift, abs(inscribed_angle(moved).value - inscribed_angle(cfg).value))
    return Outcome(worst, 1e-10)


def _parabola_measure(rng, n):
    worst = 0.0
    for _ in range(n):
        a = float(rng.uniform(0.5, 2.0))
        t1, t2 = _distinct(rng, 2, gap=1e-3)
        for t0 in rng.uniform(-3, 3, 5):
            t0 = float(t0)
            if min(abs(t0 - t1), abs(t0 - t2)) < 1e-6:
                continue
            sep = 2.0 * parabola_angle_measure(a, t0, t1, t2) / a
            worst = max(worst, abs(sep - abs(t1 - t2)))
    return Outcome(worst, 1e-10)


def _parabola_band(rng, n):
    """Largest ``|ratio - 1| c^2`` over random configurations; bounded means O(c^-2)."""
    worst = 0.0
    for _ in range(n):
        t0, t1, t2 = _distinct(rng, 3, gap=1e-2)
        if min(abs(t0 + t1), abs(t0 + t2)) < 0.1:
            continue
        h = max(abs(t0 + t1), abs(t0 + t2)) / 2
        for c in (20 * h, 40 * h, 80 * h):
            ang = parabola_pseudo_angle(1.0, c, t0, t1, t2).value
            ratio = ang / (abs(t1 - t2) / (2 * c))
            worst = max(worst, abs(ratio - 1) * c * c / (h * h))
    return Outcome(worst, 1.5, note="max |ratio-1| c^2 / h^2")


# ---------------------------------------------------------------- kinematics


def _random_traj(rng):
    return ObserverTrajectory(float(rng.uniform(0.5, 2.0)), float(rng.uniform(0.5, 2.0)), float(rng.uniform(-1, 1)))


def _ejection_independence(rng, n):
    traj = ObserverTrajectory()
    pa, pb = 1.3, 0.4
    gaps = [proper_time_gap(traj, float(t), pa, pb) for t in rng.uniform(-3, 3, n)]
    spread = max(gaps) - min(gaps)
    return Outcome(max(spread, max(abs(g - 2 * (pa - pb)) for g in gaps)), 1e-9)


def _offset_invariance(rng, n):
    worst = 0.0
    for _ in range(n):
        traj = _random_traj(rng)
        pa, pb = rng.uniform(0.05, 2.0, 2)
        delta = float(rng.uniform(-min(pa, pb) + 1e-3, 2.0))
        te = float(rng.uniform(-3, 3))
        g0 = proper_time_gap(traj, te, pa, pb)
        g1 = proper_time_gap(traj, te, pa + delta, pb + delta)
        worst = max(worst, abs(g0 - g1))
    return Outcome(worst, 1e-9)


def _oracle(rng, n):
    worst = 0.0
    for _ in range(n):
        traj = _random_traj(rng)
        # observer rapidity at ejection within +-3 keeps lab coordinates well scaled
        te = traj.tau0 + traj.c / traj.a * float(rng.uniform(-3, 3))
        w = eject(traj, te, float(rng.uniform(0.05, 2.0)))
        worst = max(worst, abs(collision(traj, w).tau - numeric_collision_oracle(traj, w).tau))
    return Outcome(worst, 1e-9)


def _bridge(rng, n):
    worst = math.inf
    for _ in range(max(1, n // 100)):
        a = float(rng.uniform(0.5, 2.0))
        va, vb = sorted(rng.uniform(0.5, 5.0, 2), reverse=True)
        newton = newtonian_collision_gap(a, va, vb)
        errs = []
        for c in (1e2, 2e2, 4e2, 8e2):
            rel = proper_time_gap(ObserverTrajectory(a, c), 0.0, math.atanh(va / c), math.atanh(vb / c))
            errs.append(abs(rel - newton))
        worst = min(worst, min(e0 / e1 for e0, e1 in zip(errs, errs[1:])))
    return Outcome(worst, 0.0, lower=3.5, note="min halving ratio")


def _geometry_kinematics(rng, n):
    worst = 0.0
    for _ in range(n):
        traj = _random_traj(rng)
        te = float(rng.uniform(-2, 2))
        pa, pb = rng.uniform(0.05, 2.0, 2)
        wa, wb = eject(traj, te, pa), eject(traj, te, pb)
        m = Metric.minkowski(traj.c)
        ang = angle_between(Vec2(1.0, wa.velocity(traj.c)), Vec2(1.0, wb.velocity(traj.c)), m).value
        gap = abs(proper_time_gap(traj, te, pa, pb))
        worst = max(worst, abs(gap - 2 * traj.c / traj.a * ang))
    return Outcome(worst, 1e-9)


def _newton(rng, n):
    worst = 0.0
    for _ in range(n):
        a = float(rng.uniform(0.1, 5.0))
        beta, alpha = sorted(rng.uniform(0.01, 10.0, 2))
        closed = newtonian_collision_gap(a, alpha, beta)
        explicit = newtonian_collision_time(a, alpha) - newtonian_collision_time(a, beta)
        worst = max(worst, abs(closed - explicit))
    return Outcome(worst, 1e-12)


# ---------------------------------------------------------------- limits


def _scan_check(signature, random_config):
    def check(rng, n):
        worst = 0.0
        notes = []
        configs = [CANONICAL_SCAN]
        if random_config:
            configs = []
            for _ in range(n):
                t0, t1, t2 = _distinct(rng, 3, gap=0.05)
                if min(abs(t0 + t1), abs(t0 + t2)) < 0.1:
                    continue
                h = max(abs(t0 + t1), abs(t0 + t2), 1.0)
                configs.append(
                    dict(a=1.0, theta0=t0, theta1=t1, theta2=t2, c_values=tuple(10 * h * 2**k for k in range(5)))
                )
        for cfg in configs:
            scan = limit_scan(cfg["a"], cfg["theta0"], cfg["theta1"], cfg["theta2"], signature, cfg["c_values"])
            notes.append(f"{scan.fitted_order:.4f}")
            worst = max(worst, abs(scan.fitted_order + 2.0))
        shown = ",".join(notes[:10]) + (",..." if len(notes) > 10 else "")
        return Outcome(worst, 0.2, note=f"fitted_order=[{shown}]")

    return check


PROPERTIES: tuple[Property, ...] = (
    Property("metric", "bilinear_symmetric", _bilinear),
    Property("metric", "reverse_cauchy_schwarz", _reverse_cs),
    Property("metric", "boost_composition", _boost_composition),
    Property("metric", "boost_invariance_of_pseudo_angle", _boost_invariance),
    Property("metric", "rapidity_velocity", _rapidity_velocity),
    Property("metric", "isometry_preserves_form", _isometry_forms),
    Property("conics", "implicit_equation", _implicit),
    Property("conics", "closed_gradient_vs_secant", _secant),
    Property("conics", "reintersect_inverts_gradient", _reintersect),
    Property("conics", "hyperbola_chords_timelike", _chords_timelike),
    Property("conics", "rel_hyperbola_to_parabola_halving", _param_limit),
    Property("conics", "wick_rotation", _wick),
    Property("theorems", "hyperbola_inscribed_closed_form", _inscribed_closed(ConicKind.UNIT_HYPERBOLA)),
    Property("theorems", "circle_inscribed_closed_form", _inscribed_closed(ConicKind.UNIT_CIRCLE)),
    Property("theorems", "hyperbola_theta0_independence", _theta0_independence(ConicKind.UNIT_HYPERBOLA)),
    Property("theorems", "circle_theta0_independence", _theta0_independence(ConicKind.UNIT_CIRCLE)),
    Property("theorems", "central_angle_doubling", _doubling),
    Property("theorems", "thales_orthogonality", _thales),
    Property("theorems", "boost_shift_and_invariance", _isometry_invariance),
    Property("theorems", "parabola_measure_theta0_independence", _parabola_measure),
    Property("theorems", "parabola_ratio_band", _parabola_band),
    Property("kinematics", "ejection_independence", _ejection_independence),
    Property("kinematics", "offset_invariance", _offset_invariance),
    Property("kinematics", "closed_form_vs_bisection", _oracle),
    Property("kinematics", "newtonian_intersection", _newton),
    Property("kinematics", "nonrelativistic_bridge_halving", _bridge),
    Property("kinematics", "gap_equals_scaled_pseudo_angle", _geometry_kinematics),
    Property("limits", "canonical_scan_minkowski", _scan_check("minkowski", False)),
    Property("limits", "canonical_scan_euclidean", _scan_check("euclidean", False)),
    Property("limits", "random_scans_minkowski", _scan_check("minkowski", True)),
    Property("limits", "random_scans_euclidean", _scan_check("euclidean", True)),
)


def run_verify(suite: str = "all", seed: int = 42, samples: int = 1000) -> tuple[str, bool]:
    """Run a suite and return ``(report, all_passed)``."""
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if seed < 0:
        raise ValueError("seed must be a nonnegative integer")
    lines = [f"verify suite={suite} seed={seed} samples={samples}"]
    ok = True
    n_pass = n_fail = 0
    for index, prop in enumerate(PROPERTIES):
        if suite != "all" and prop.suite != suite:
            continue
        rng = np.random.default_rng([seed, index])
        try:
            out = prop.check(rng, samples)
        except Exception as exc:  # a property that raises has failed
            out = Outcome(math.inf, 0.0, note=f"{type(exc).__name__}: {exc}")
        bound = f"min={out.lower:.2g}" if out.lower is not None else f"tol={out.tol:.1e}"
        status = "PASS" if out.passed else "FAIL"
        name = "max_residual" if out.lower is None else "value"
        line = f"{status} {prop.suite}.{prop.name} {name}={out.residual:.6e} {bound}"
        if out.note:
            line += f" ({out.note})"
        lines.append(line)
        if out.passed:
            n_pass += 1
        else:
            n_fail += 1
            ok = False
    lines.append(f"summary: {n_pass} passed, {n_fail} failed")
    return "\n".join(lines) + "\n", ok
