"""Constant-proper-acceleration observer, ejected particles and their re-collisions.

Lab coordinates are (t, x).  The observer with proper acceleration ``a``
passes through the origin at proper time ``tau0``::

    t(tau) = (c/a) sinh(a (tau - tau0) / c)
    x(tau) = (c^2/a) (cosh(a (tau - tau0) / c) - 1)

Its lab rapidity at ``tau`` is ``a (tau - tau0) / c``.  A particle ejected
at ``tau_e`` with rapidity ``phi_rel`` relative to the observer moves in
a straight line with lab rapidity ``a (tau_e - tau0) / c + phi_rel``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .conics import ConicSpec, conic_point
from .errors import GeometryError, NoIntersectionError
from .metric import Vec2

BISECT_TOL = 1e-12
NEWTON_CHECK_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class ObserverTrajectory:
    a: float = 1.0
    c: float = 1.0
    tau0: float = 0.0

    def __post_init__(self) -> None:
        if not (self.a > 0 and self.c > 0):
            raise GeometryError("proper acceleration and c must be positive")

    @property
    def spec(self) -> ConicSpec:
        return ConicSpec.rel_hyperbola(self.a, self.c)

    def rapidity(self, tau: float) -> float:
        return self.a * (tau - self.tau0) / self.c

    def unit_coordinates(self, p: Vec2) -> Vec2:
        """Map lab (t, x) onto the unit hyperbola frame, where the trajectory is ``(sinh, cosh)``.

        The dimensionful trajectory is the unit hyperbola shifted by
        ``c^2/a`` in ``x`` and scaled by ``a/c`` (time) and ``a/c^2`` (space).
        """
        a, c = self.a, self.c
        return Vec2(a * p.x0 / c, a * p.x1 / (c * c) + 1.0)


@dataclass(frozen=True, slots=True)
class Event:
    point: Vec2
    tau: float | None = None


@dataclass(frozen=True, slots=True)
class Worldline:
    """Straight timelike worldline through ``anchor`` with lab rapidity ``lab_rapidity``."""

    anchor: Event
    lab_rapidity: float

    def velocity(self, c: float) -> float:
        return c * math.tanh(self.lab_rapidity)

    def x_at(self, t: float, c: float) -> float:
        return self.anchor.point.x1 + self.velocity(c) * (t - self.anchor.point.x0)


def observer_event(traj: ObserverTrajectory, tau: float) -> Event:
    if not math.isfinite(tau):
        raise GeometryError(f"non-finite proper time {tau}")
    return Event(conic_point(traj.spec, tau - traj.tau0).point, tau)


def eject(traj: ObserverTrajectory, tau_e: float, relative_rapidity: float) -> Worldline:
    if not relative_rapidity > 0:
        raise GeometryError(
            "particles must leave faster than the observer in the direction of acceleration "
            f"(relative rapidity {relative_rapidity} <= 0 never re-collides)"
        )
    return Worldline(observer_event(traj, tau_e), traj.rapidity(tau_e) + relative_rapidity)


def collision(traj: ObserverTrajectory, w: Worldline) -> Event:
    """Later event where the observer catches the particle again.

    The chord from ejection to collision has lab velocity
    ``c tanh(a (s_e + s_c) / 2c)`` with ``s = tau - tau0``, so matching the
    particle's rapidity gives ``tau_c = (2c/a) phi_lab - tau_e + 2 tau0``.
    """
    tau_e = w.anchor.tau
    if tau_e is None:
        raise GeometryError("worldline is not anchored on the observer trajectory")
    if not w.lab_rapidity > traj.rapidity(tau_e):
        raise NoIntersectionError("particle is not faster than the observer at ejection")
    tau_c = 2.0 * traj.c / traj.a * w.lab_rapidity - tau_e + 2.0 * traj.tau0
    return observer_event(traj, tau_c)


def proper_time_gap(traj: ObserverTrajectory, tau_e: float, rel_rapidity_a: float, rel_rapidity_b: float) -> float:
    """Observer proper time between re-collisions with particles A and B."""
    ca = collision(traj, eject(traj, tau_e, rel_rapidity_a))
    cb = collision(traj, eject(traj, tau_e, rel_rapidity_b))
    return ca.tau - cb.tau


def newtonian_collision_time(a: float, velocity: float, u: float = 0.0, x0: float = 0.0) -> float:
    """Nonzero root of ``a t^2/2 + u t + x0 = velocity t + x0``.

    ``velocity`` is the particle's lab velocity; both start at ``x0`` at
    ``t = 0``, which is always one root.  A particle slower than the
    observer gives a negative time (they last met in the past).
    """
    qa, qb, qc = 0.5 * a, u - velocity, x0 - x0
    disc = qb * qb - 4.0 * qa * qc
    if disc < 0:
        raise NoIntersectionError("particle and observer never meet")
    q = -0.5 * (qb + math.copysign(math.sqrt(disc), qb))
    roots = [q / qa] + ([qc / q] if q != 0.0 else [])
    nonzero = [r for r in roots if r != 0.0]
    # comoving particle: double root at the ejection time
    return nonzero[0] if nonzero else 0.0


def newtonian_collision_gap(a: float, alpha: float, beta: float, u: float = 0.0, x0: float = 0.0) -> float:
    """Difference of collision times ``2 (alpha - beta) / a`` for two ejected particles.

    ``alpha`` and ``beta`` are ejection velocities relative to the observer,
    whose trajectory is ``x = a t^2 / 2 + u t + x0``.  The closed form is
    cross-checked against the explicit trajectory intersections.
    """
    if not a > 0:
        raise GeometryError(f"acceleration must be positive, got {a}")
    closed = 2.0 * (alpha - beta) / a
    explicit = newtonian_collision_time(a, u + alpha, u, x0) - newtonian_collision_time(a, u + beta, u, x0)
    if not math.isclose(closed, explicit, rel_tol=NEWTON_CHECK_TOL, abs_tol=NEWTON_CHECK_TOL):
        raise ArithmeticError(f"closed form {closed!r} disagrees with trajectory intersection {explicit!r}")
    return closed


def separation(traj: ObserverTrajectory, w: Worldline, tau: float) -> float:
    """Observer position minus particle position at the observer's lab time."""
    p = observer_event(traj, tau).point
    return p.x1 - w.x_at(p.x0, traj.c)


def default_bracket(traj: ObserverTrajectory, w: Worldline) -> tuple[float, float]:
    tau_e = w.anchor.tau
    rel = w.lab_rapidity - traj.rapidity(tau_e)
    scale = traj.c / traj.a
    return (tau_e + 1e-9 * scale, tau_e + 10.0 * 2.0 * scale * rel)


def numeric_collision_oracle(
    traj: ObserverTrajectory,
    w: Worldline,
    bracket: tuple[float, float] | None = None,
) -> Event:
    """Collision event by bisection on :func:`separation`, independent of :func:`collision`."""
    lo, hi = bracket if bracket is not None else default_bracket(traj, w)
    f_lo, f_hi = separation(traj, w, lo), separation(traj, w, hi)
    if f_lo == 0.0:
        return observer_event(traj, lo)
    if f_hi == 0.0:
        return observer_event(traj, hi)
    if (f_lo < 0) == (f_hi < 0):
        raise NoIntersectionError(f"no sign change of the separation on [{lo}, {hi}]")
    while hi - lo > BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        f_mid = separation(traj, w, mid)
        if f_mid == 0.0:
            lo = hi = mid
            break
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return observer_event(traj, 0.5 * (lo + hi))
