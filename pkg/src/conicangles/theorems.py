"""Inscribed-angle theorems on the circle, hyperbola and parabola.

Angles here are always measured from the chord vectors themselves via
:func:`~conicangles.metric.angle_between`; the half-parameter closed forms
are what the tests compare against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .conics import TWO_PI, ConicKind, ConicSpec, VerticalChord, chord_gradient, conic_point
from .errors import DegenerateChordError, GeometryError
from .metric import (
    MINKOWSKI,
    AngleKind,
    AngleMeasure,
    IsometryKind,
    Signature,
    angle_between,
    apply_isometry,
    inner,
    make_isometry,
)


@dataclass(frozen=True, slots=True)
class InscribedConfig:
    """Vertex ``theta0`` and chord ends ``theta1``, ``theta2`` on one curve."""

    spec: ConicSpec
    theta0: float
    theta1: float
    theta2: float

    def __post_init__(self) -> None:
        ts = self.thetas
        if self.spec.kind is ConicKind.UNIT_CIRCLE:
            ts = tuple(t % TWO_PI for t in ts)
        if len(set(ts)) != 3:
            raise DegenerateChordError(f"parameters must be pairwise distinct, got {self.thetas}")
        for t in self.thetas:
            conic_point(self.spec, t)  # range checks (ellipse arc)

    @property
    def thetas(self) -> tuple[float, float, float]:
        return (self.theta0, self.theta1, self.theta2)


@dataclass(frozen=True)
class LimitScan:
    c_values: list[float]
    angles: list[float]
    asymptote_ratio: list[float]
    fitted_order: float


def chord_vectors(cfg: InscribedConfig):
    p0, p1, p2 = (conic_point(cfg.spec, t).point for t in cfg.thetas)
    return p1 - p0, p2 - p0


def inscribed_angle(cfg: InscribedConfig) -> AngleMeasure:
    """Angle at ``P0`` between chords ``P0P1`` and ``P0P2`` in the curve's own metric.

    The parabola has no such metric; see :func:`parabola_angle_measure`.
    """
    if cfg.spec.kind is ConicKind.PARABOLA:
        raise GeometryError("the parabola has no plane metric; use parabola_angle_measure")
    u, v = chord_vectors(cfg)
    if u.is_zero() or v.is_zero():
        raise DegenerateChordError("chord endpoints coincide")
    return angle_between(u, v, cfg.spec.metric())


def expected_inscribed_angle(cfg: InscribedConfig) -> float:
    """Half the central parameter separation, acute representative on ellipses/circles."""
    h = 0.5 * cfg.spec.angle_scale() * abs(cfg.theta1 - cfg.theta2)
    if cfg.spec.kind is ConicKind.UNIT_CIRCLE:
        h = 0.5 * abs(cfg.theta1 % TWO_PI - cfg.theta2 % TWO_PI)
    if cfg.spec.kind in (ConicKind.UNIT_CIRCLE, ConicKind.ELLIPSE):
        h = min(h, math.pi - h)
    return h


def _inverse_gradient(g) -> float:
    return 0.0 if isinstance(g, VerticalChord) else 1.0 / g


def parabola_angle_measure(a: float, theta0: float, theta1: float, theta2: float) -> float:
    """Galilean angle at ``P0`` between two chords of ``x = a t^2 / 2``.

    This is the difference of the chord velocities ``dx/dt``, reconstructed
    from the closed-form gradients, and equals ``a |theta1 - theta2| / 2``
    for every vertex ``theta0``.
    """
    spec = ConicSpec.parabola(a)
    g1 = chord_gradient(spec, theta0, theta1)
    g2 = chord_gradient(spec, theta0, theta2)
    return abs(_inverse_gradient(g1) - _inverse_gradient(g2))


def central_angle(theta1: float, theta2: float) -> AngleMeasure:
    """Pseudo-angle between the spacelike radii ``OP1`` and ``OP2`` of the unit hyperbola."""
    if theta1 == theta2:
        raise DegenerateChordError("central angle needs two distinct points")
    spec = ConicSpec.unit_hyperbola()
    return angle_between(conic_point(spec, theta1).point, conic_point(spec, theta2).point, MINKOWSKI)


def thales_residual(theta0: float, theta1: float) -> float:
    """Minkowski inner product of the unit (Euclidean-normalised) chords ``P0P1`` and ``P0P1'``.

    ``P1' = -P1`` lies on the opposite branch.  The chords are orthogonal,
    so the result is zero up to rounding.
    """
    if theta0 == theta1:
        raise DegenerateChordError("thales configuration needs theta0 != theta1")
    spec = ConicSpec.unit_hyperbola()
    p0 = conic_point(spec, theta0).point
    p1 = conic_point(spec, theta1).point
    u, v = p1 - p0, -p1 - p0
    return inner(u, v, MINKOWSKI) / (u.euclid_norm() * v.euclid_norm())


def rotate_config(cfg: InscribedConfig, phi: float) -> InscribedConfig:
    """Move all three points by the circle rotation / hyperbola boost with parameter ``phi``."""
    kind = cfg.spec.kind
    if kind is ConicKind.UNIT_HYPERBOLA:
        iso = make_isometry(IsometryKind.BOOST, phi)
        recover = lambda p: math.asinh(p.x0)  # noqa: E731
    elif kind is ConicKind.UNIT_CIRCLE:
        iso = make_isometry(IsometryKind.ROTATION, phi)
        recover = lambda p: math.atan2(p.x1, p.x0) % TWO_PI  # noqa: E731
    else:
        raise GeometryError(f"rotate_config supports the unit circle and unit hyperbola, not {kind.value}")
    new = [recover(apply_isometry(iso, conic_point(cfg.spec, t).point)) for t in cfg.thetas]
    return InscribedConfig(cfg.spec, *new)


def parabola_pseudo_angle(
    a: float,
    c: float,
    theta0: float,
    theta1: float,
    theta2: float,
    signature: Signature | str = Signature.MINKOWSKI,
) -> AngleMeasure:
    """Finite-``c`` angle between two parabola chords measured with ``ds^2 = -+c^2 dt^2 + dx^2``.

    With chord gradients ``g_i = dt/dx = 2 / (a (theta0 + theta_i))`` the
    tangents are ``(g_i, 1)`` in (t, x) and

        cosh^2 = (1 - c^2 g1 g2)^2 / ((1 - c^2 g1^2)(1 - c^2 g2^2))   (Minkowski)
        cos^2  = (1 + c^2 g1 g2)^2 / ((1 + c^2 g1^2)(1 + c^2 g2^2))   (Euclidean)

    The angle is recovered from the complementary form
    ``sinh^2 = c^2 (g1 - g2)^2 / ((1 - c^2 g1^2)(1 - c^2 g2^2))`` (and its
    Euclidean twin), which is the same expression without the cancellation
    near ``cosh^2 = 1``.
    """
    signature = Signature(signature)
    if theta1 == theta2:
        return AngleMeasure(0.0, AngleKind.PSEUDO if signature is Signature.MINKOWSKI else AngleKind.CIRCULAR)
    for t in (theta1, theta2):
        if t == theta0:
            raise DegenerateChordError("chord endpoints coincide")
        if theta0 + t == 0.0:
            raise GeometryError("chord gradient 2/(a(theta0 + theta_i)) has a pole at theta0 + theta_i = 0")
    if not (a > 0 and c > 0):
        raise GeometryError("a and c must be positive")
    g1 = 2.0 / (a * (theta0 + theta1))
    g2 = 2.0 / (a * (theta0 + theta2))
    c2 = c * c
    num = c2 * (g1 - g2) ** 2
    if signature is Signature.MINKOWSKI:
        d1, d2 = c2 * g1 * g1 - 1.0, c2 * g2 * g2 - 1.0
        if d1 <= 0.0 or d2 <= 0.0:
            raise GeometryError("chords are not timelike at this c")
        return AngleMeasure(math.asinh(math.sqrt(num / (d1 * d2))), AngleKind.PSEUDO)
    d1, d2 = 1.0 + c2 * g1 * g1, 1.0 + c2 * g2 * g2
    return AngleMeasure(math.asin(min(1.0, math.sqrt(num / (d1 * d2)))), AngleKind.CIRCULAR)


def limit_scan(
    a: float,
    theta0: float,
    theta1: float,
    theta2: float,
    signature: Signature | str,
    c_values,
) -> LimitScan:
    """Finite-``c`` parabola angles against the asymptote ``(a / 2c) |theta1 - theta2|``.

    ``fitted_order`` is the least-squares slope of ``log|ratio - 1|`` against
    ``log c`` over the last half (rounded up) of the scan, at least two points.
    """
    cs = [float(c) for c in c_values]
    if not cs:
        raise GeometryError("empty c scan")
    if any(b <= a_ for a_, b in zip(cs, cs[1:])):
        raise GeometryError("c_values must be strictly increasing")
    if theta1 == theta2:
        raise DegenerateChordError("limit scan needs theta1 != theta2")
    angles = [parabola_pseudo_angle(a, c, theta0, theta1, theta2, signature).value for c in cs]
    ratios = [ang / (a / (2.0 * c) * abs(theta1 - theta2)) for ang, c in zip(angles, cs)]
    return LimitScan(cs, angles, ratios, fit_order(cs, ratios))


def fit_order(cs: list[float], ratios: list[float]) -> float:
    n = len(cs)
    if n < 2:
        return math.nan
    k = max(2, math.ceil(n / 2))
    err = np.abs(np.asarray(ratios[-k:]) - 1.0)
    if np.any(err == 0.0):
        return math.nan
    slope, _ = np.polyfit(np.log(cs[-k:]), np.log(err), 1)
    return float(slope)
