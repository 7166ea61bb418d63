import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from conicangles import (
    GeometryError,
    Metric,
    NoIntersectionError,
    ObserverTrajectory,
    Vec2,
    angle_between,
    collision,
    eject,
    implicit_residual,
    newtonian_collision_gap,
    newtonian_collision_time,
    numeric_collision_oracle,
    observer_event,
    proper_time_gap,
)
from conicangles.kinematics import Event, Worldline

UNIT = ObserverTrajectory()
rel = st.floats(0.05, 2.5)
accel = st.floats(0.5, 2.0)
speed = st.floats(0.5, 3.0)


def brentq_collision(a, c, tau_e, phi_lab):
    """Collision proper time from the raw trajectory formulas and scipy's root finder."""

    def pos(tau):
        u = a * tau / c
        return (c / a) * math.sinh(u), (c * c / a) * (math.cosh(u) - 1.0)

    te, xe = pos(tau_e)
    v = c * math.tanh(phi_lab)

    def f(tau):
        t, x = pos(tau)
        return x - (xe + v * (t - te))

    lo = tau_e + 1e-6 * c / a
    hi = tau_e + 40.0 * c / a
    return brentq(f, lo, hi, xtol=1e-14, rtol=1e-14)


class TestObserver:
    def test_origin(self):
        assert observer_event(UNIT, 0.0).point.as_tuple() == (0.0, 0.0)

    def test_unit_time(self):
        p = observer_event(UNIT, 1.0).point
        assert p.as_tuple() == pytest.approx((1.17520119, 0.54308063), abs=5e-9)
        assert p.x0 == pytest.approx(math.sinh(1.0), rel=1e-15)

    def test_scaling(self):
        for tau in (-1.3, 0.4, 2.0):
            p2 = observer_event(ObserverTrajectory(a=2.0), tau).point
            p1 = observer_event(UNIT, 2 * tau).point
            assert p2.x0 == pytest.approx(p1.x0 / 2, rel=1e-14)
            assert p2.x1 == pytest.approx(p1.x1 / 2, rel=1e-14)

    def test_tau0_shift(self):
        traj = ObserverTrajectory(tau0=0.8)
        assert observer_event(traj, 0.8).point.as_tuple() == (0.0, 0.0)
        assert observer_event(traj, 1.8).point == observer_event(UNIT, 1.0).point

    def test_unit_coordinates(self):
        traj = ObserverTrajectory(a=1.5, c=2.0)
        u = traj.unit_coordinates(observer_event(traj, 0.9).point)
        k = 1.5 * 0.9 / 2.0
        assert u.as_tuple() == pytest.approx((math.sinh(k), math.cosh(k)), rel=1e-14)

    def test_invalid(self):
        with pytest.raises(GeometryError):
            ObserverTrajectory(a=0.0)
        with pytest.raises(GeometryError):
            observer_event(UNIT, math.nan)

    @given(accel, speed, st.floats(-2, 2), st.floats(-3, 3))
    def test_on_trajectory(self, a, c, tau0, tau):
        traj = ObserverTrajectory(a, c, tau0)
        assert implicit_residual(traj.spec, observer_event(traj, tau).point) <= 1e-10


class TestEject:
    def test_unit(self):
        w = eject(UNIT, 0.0, 1.0)
        assert w.lab_rapidity == 1.0
        assert w.anchor.point.as_tuple() == (0.0, 0.0)
        assert w.anchor.tau == 0.0

    def test_additivity(self):
        assert eject(UNIT, 0.5, 0.5).lab_rapidity == pytest.approx(1.0)

    @pytest.mark.parametrize("bad", [0.0, -0.3])
    def test_not_faster(self, bad):
        with pytest.raises(GeometryError):
            eject(UNIT, 0.0, bad)

    def test_timelike(self):
        w = eject(UNIT, 1.0, 2.0)
        assert abs(w.velocity(UNIT.c)) < UNIT.c


class TestCollision:
    @pytest.mark.parametrize("tau_e, expected", [(0.0, 2.0), (0.5, 1.5)])
    def test_examples(self, tau_e, expected):
        w = Worldline(observer_event(UNIT, tau_e), 1.0)
        assert brentq_collision(1.0, 1.0, tau_e, 1.0) == pytest.approx(expected, abs=1e-12)
        assert collision(UNIT, w).tau == pytest.approx(expected, abs=1e-12)

    def test_barely_faster(self):
        taus = [collision(UNIT, eject(UNIT, 0.3, eps)).tau for eps in (1e-2, 1e-4, 1e-6)]
        assert [t - 0.3 for t in taus] == pytest.approx([2e-2, 2e-4, 2e-6], rel=1e-8)

    def test_collision_event_has_point(self):
        ev = collision(UNIT, eject(UNIT, 0.0, 1.0))
        assert ev.point.as_tuple() == pytest.approx((math.sinh(2.0), math.cosh(2.0) - 1.0), rel=1e-14)

    def test_unanchored(self):
        with pytest.raises(GeometryError):
            collision(UNIT, Worldline(Event(Vec2(0.0, 0.0)), 1.0))

    def test_slower_particle(self):
        with pytest.raises(NoIntersectionError):
            collision(UNIT, Worldline(observer_event(UNIT, 1.0), 0.5))

    @settings(max_examples=200)
    @given(accel, speed, st.floats(-1, 1), st.floats(-2, 2), rel)
    def test_matches_brentq(self, a, c, tau0, s, r):
        traj = ObserverTrajectory(a, c, tau0)
        tau_e = tau0 + s * c / a
        w = eject(traj, tau_e, r)
        oracle = tau0 + brentq_collision(a, c, tau_e - tau0, w.lab_rapidity)
        assert collision(traj, w).tau == pytest.approx(oracle, abs=1e-9 * max(1.0, c / a))

    @settings(max_examples=100)
    @given(accel, speed, st.floats(-2, 2), rel)
    def test_matches_bisection(self, a, c, s, r):
        traj = ObserverTrajectory(a, c)
        w = eject(traj, s * c / a, r)
        assert collision(traj, w).tau == pytest.approx(numeric_collision_oracle(traj, w).tau, abs=1e-9 * max(1.0, c / a))


class TestOracle:
    def test_unit(self):
        w = eject(UNIT, 0.0, 1.0)
        assert numeric_collision_oracle(UNIT, w, (0.1, 10.0)).tau == pytest.approx(2.0, abs=1e-10)

    def test_no_root(self):
        with pytest.raises(NoIntersectionError):
            numeric_collision_oracle(UNIT, eject(UNIT, 0.0, 1.0), (3.0, 10.0))

    def test_shrinking_bracket(self):
        w = eject(UNIT, 0.0, 1.0)
        taus = [numeric_collision_oracle(UNIT, w, br).tau for br in ((0.1, 10.0), (1.0, 3.0), (1.9, 2.1))]
        assert max(taus) - min(taus) <= 2e-12


class TestGap:
    def test_unit(self):
        assert proper_time_gap(UNIT, 0.0, 1.0, 0.5) == pytest.approx(1.0, abs=1e-12)

    def test_other_ejection_time(self):
        assert proper_time_gap(UNIT, 0.7, 1.0, 0.5) == pytest.approx(1.0, abs=1e-12)

    def test_equal(self):
        assert proper_time_gap(UNIT, 0.2, 0.8, 0.8) == 0.0

    def test_brentq_cross_check(self):
        ta = brentq_collision(1.0, 1.0, 0.0, 1.0)
        tb = brentq_collision(1.0, 1.0, 0.0, 0.5)
        assert ta - tb == pytest.approx(1.0, abs=1e-11)

    def test_ejection_independence_batch(self):
        rng = np.random.default_rng(3)
        gaps = [proper_time_gap(UNIT, float(t), 1.0, 0.5) for t in rng.uniform(-3, 3, 1000)]
        assert max(gaps) - min(gaps) <= 1e-9
        assert gaps[0] == pytest.approx(1.0, abs=1e-9)

    @given(accel, speed, st.floats(-3, 3), rel, rel, st.floats(0.0, 1.0))
    def test_offset_invariance(self, a, c, tau_e, pa, pb, frac):
        traj = ObserverTrajectory(a, c)
        delta = -frac * 0.99 * min(pa, pb) if frac < 0.5 else frac
        g0 = proper_time_gap(traj, tau_e, pa, pb)
        g1 = proper_time_gap(traj, tau_e, pa + delta, pb + delta)
        assert g1 == pytest.approx(g0, abs=1e-9 * max(1.0, c / a))
        assert g0 == pytest.approx(2 * c / a * (pa - pb), abs=1e-9 * max(1.0, c / a))

    @given(accel, speed, st.floats(-3, 3), rel, rel)
    def test_equals_scaled_worldline_angle(self, a, c, s, pa, pb):
        assume(abs(pa - pb) > 1e-6)
        traj = ObserverTrajectory(a, c)
        # ejection rapidity within +-3; near the light cone the chord cross product cancels
        tau_e = s * c / a
        wa, wb = eject(traj, tau_e, pa), eject(traj, tau_e, pb)
        ua = Vec2(math.cosh(wa.lab_rapidity), c * math.sinh(wa.lab_rapidity))
        ub = Vec2(math.cosh(wb.lab_rapidity), c * math.sinh(wb.lab_rapidity))
        assert ua.x1 / ua.x0 == pytest.approx(wa.velocity(c), rel=1e-14)
        angle = angle_between(ua, ub, Metric.minkowski(c)).value
        gap = proper_time_gap(traj, tau_e, pa, pb)
        assert abs(gap) == pytest.approx(2 * c / a * angle, abs=1e-9 * max(1.0, c / a))


class TestNewtonian:
    def test_example(self):
        assert newtonian_collision_gap(2.0, 3.0, 1.0) == pytest.approx(2.0, abs=1e-15)

    def test_equal(self):
        assert newtonian_collision_gap(1.0, 2.0, 2.0) == 0.0

    def test_bad_acceleration(self):
        with pytest.raises(GeometryError):
            newtonian_collision_gap(0.0, 3.0, 1.0)

    def test_explicit_intersection(self):
        # x = t^2 + 0.5 t + 1 meets x = 3.5 t + 1 again at t = 3
        assert newtonian_collision_time(2.0, 3.5, 0.5, 1.0) == pytest.approx(3.0, abs=1e-15)
        assert newtonian_collision_time(1.0, 0.0) == 0.0

    @given(accel, st.floats(-5, 5), st.floats(-5, 5), st.floats(-3, 3), st.floats(-3, 3))
    def test_closed_form(self, a, alpha, beta, u, x0):
        assert newtonian_collision_gap(a, alpha, beta, u, x0) == pytest.approx(2 * (alpha - beta) / a, abs=1e-12)

    def test_relativistic_gap_at_large_c(self):
        c = 1e3
        gap = proper_time_gap(ObserverTrajectory(1.0, c), 0.0, math.atanh(3 / c), math.atanh(1 / c))
        assert gap == pytest.approx(4.0, rel=1e-4)
        # leading correction (2c/a)(alpha^3 - beta^3)/(3 c^3)
        assert gap - 4.0 == pytest.approx(52 / (3 * c * c), rel=1e-3)

    @given(accel, st.floats(0.5, 3.0), st.floats(0.1, 2.0))
    def test_bridge_halving(self, a, alpha, beta):
        assume(abs(alpha - beta) > 0.1)
        newton = newtonian_collision_gap(a, alpha, beta)

        def err(c):
            traj = ObserverTrajectory(a, c)
            return abs(proper_time_gap(traj, 0.0, math.atanh(alpha / c), math.atanh(beta / c)) - newton)

        for c in (50.0, 100.0, 200.0):
            assert err(c) / err(2 * c) >= 3.5
