"""Parametrised conics, closed-form chord gradients and second intersections.

Points are returned in (time, space) order.  The curves are

==============  ==========================================  ===================
kind            point at parameter ``theta``                 gradient convention
==============  ==========================================  ===================
UNIT_CIRCLE     ``(cos theta, sin theta)``                   ``d x1 / d x0``
UNIT_HYPERBOLA  ``(sinh theta, cosh theta)``                 ``d x0 / d x1``
REL_HYPERBOLA   ``t = (c/a) sinh(a theta/c)``,
                ``x = (c^2/a)(cosh(a theta/c) - 1)``         ``dt / dx``
ELLIPSE         ``t = (c/a) sin(a theta/c)``,
                ``x = (c^2/a)(1 - cos(a theta/c))``          ``dt / dx``
PARABOLA        ``(theta, a theta^2 / 2)``                   ``dt / dx``
==============  ==========================================  ===================

The circle is the only curve whose gradient is "space over time"; that keeps
the familiar ``(sin t0 - sin t1) / (cos t0 - cos t1)`` secant for it.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import DegenerateChordError, GeometryError, NoIntersectionError
from .metric import Metric, Vec2

TWO_PI = 2.0 * math.pi


class ConicKind(str, enum.Enum):
    UNIT_CIRCLE = "circle"
    UNIT_HYPERBOLA = "hyperbola"
    REL_HYPERBOLA = "rel-hyperbola"
    ELLIPSE = "ellipse"
    PARABOLA = "parabola"


_NEEDS_A = {ConicKind.REL_HYPERBOLA, ConicKind.ELLIPSE, ConicKind.PARABOLA}
_NEEDS_C = {ConicKind.REL_HYPERBOLA, ConicKind.ELLIPSE}


@dataclass(frozen=True, slots=True)
class ConicSpec:
    kind: ConicKind
    a: float | None = None
    c: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", ConicKind(self.kind))
        for name, needed in (("a", _NEEDS_A), ("c", _NEEDS_C)):
            value = getattr(self, name)
            if self.kind in needed:
                if value is None:
                    raise GeometryError(f"{self.kind.value} requires parameter {name}")
                if not (math.isfinite(value) and value > 0):
                    raise GeometryError(f"{name} must be positive and finite, got {value}")

    @classmethod
    def unit_circle(cls) -> ConicSpec:
        return cls(ConicKind.UNIT_CIRCLE)

    @classmethod
    def unit_hyperbola(cls) -> ConicSpec:
        return cls(ConicKind.UNIT_HYPERBOLA)

    @classmethod
    def rel_hyperbola(cls, a: float, c: float) -> ConicSpec:
        return cls(ConicKind.REL_HYPERBOLA, a, c)

    @classmethod
    def ellipse(cls, a: float, c: float) -> ConicSpec:
        return cls(ConicKind.ELLIPSE, a, c)

    @classmethod
    def parabola(cls, a: float) -> ConicSpec:
        return cls(ConicKind.PARABOLA, a)

    def metric(self) -> Metric:
        """The plane metric in which this curve is a metric circle.

        The parabola has none; asking for it raises.
        """
        if self.kind is ConicKind.UNIT_CIRCLE:
            return Metric.euclidean()
        if self.kind is ConicKind.UNIT_HYPERBOLA:
            return Metric.minkowski()
        if self.kind is ConicKind.REL_HYPERBOLA:
            return Metric.minkowski(self.c)
        if self.kind is ConicKind.ELLIPSE:
            return Metric.euclidean(self.c)
        raise GeometryError("the parabola is not a metric circle of any plane metric")

    def angle_scale(self) -> float:
        """Factor turning the curve parameter into the metric's central angle."""
        if self.kind in (ConicKind.REL_HYPERBOLA, ConicKind.ELLIPSE):
            return self.a / self.c
        return 1.0


@dataclass(frozen=True, slots=True)
class ParamPoint:
    theta: float
    point: Vec2


@dataclass(frozen=True, slots=True)
class VerticalChord:
    """Gradient of a chord whose run is exactly zero.

    ``sign`` is the sign of the chord's rise taken from the first to the
    second endpoint (``+1`` when it is zero as well).
    """

    sign: int


Gradient = float | VerticalChord


def _cosh_m1(u: float) -> float:
    s = math.sinh(0.5 * u)
    return 2.0 * s * s


def _one_m_cos(u: float) -> float:
    s = math.sin(0.5 * u)
    return 2.0 * s * s


def conic_point(spec: ConicSpec, theta: float) -> ParamPoint:
    if not math.isfinite(theta):
        raise GeometryError(f"non-finite curve parameter {theta}")
    kind = spec.kind
    if kind is ConicKind.UNIT_CIRCLE:
        theta = theta % TWO_PI
        return ParamPoint(theta, Vec2(math.cos(theta), math.sin(theta)))
    if kind is ConicKind.UNIT_HYPERBOLA:
        return ParamPoint(theta, Vec2(math.sinh(theta), math.cosh(theta)))
    a = spec.a
    if kind is ConicKind.PARABOLA:
        return ParamPoint(theta, Vec2(theta, 0.5 * a * theta * theta))
    c = spec.c
    u = a * theta / c
    if kind is ConicKind.REL_HYPERBOLA:
        return ParamPoint(theta, Vec2(c / a * math.sinh(u), c * c / a * _cosh_m1(u)))
    if abs(u) >= math.pi:
        raise GeometryError(f"ellipse parameter must satisfy |a theta / c| < pi, got {u}")
    return ParamPoint(theta, Vec2(c / a * math.sin(u), c * c / a * _one_m_cos(u)))


def implicit_residual(spec: ConicSpec, p: Vec2) -> float:
    """Relative residual of ``p`` in the curve's implicit equation."""
    t, x = p.x0, p.x1
    kind = spec.kind
    if kind is ConicKind.UNIT_CIRCLE:
        return abs(t * t + x * x - 1.0)
    if kind is ConicKind.UNIT_HYPERBOLA:
        # both branches of -x0^2 + x1^2 = 1
        return abs(x * x - t * t - 1.0) / max(1.0, x * x)
    a = spec.a
    if kind is ConicKind.PARABOLA:
        half = 0.5 * a * t * t
        return abs(x - half) / max(1.0, abs(x), half)
    c = spec.c
    r = c * c / a
    if kind is ConicKind.REL_HYPERBOLA:
        lhs, rhs = (x + r) ** 2 - (c * t) ** 2, r * r
        scale = max(r * r, (x + r) ** 2)
    else:
        lhs, rhs = (x - r) ** 2 + (c * t) ** 2, r * r
        scale = r * r
    return abs(lhs - rhs) / scale


def secant_gradient(spec: ConicSpec, theta0: float, theta1: float) -> Gradient:
    """Gradient of the chord from the point coordinates, in the curve's convention."""
    p0 = conic_point(spec, theta0).point
    p1 = conic_point(spec, theta1).point
    if spec.kind is ConicKind.UNIT_CIRCLE:
        rise, run = p1.x1 - p0.x1, p1.x0 - p0.x0
    else:
        rise, run = p1.x0 - p0.x0, p1.x1 - p0.x1
    if rise == 0.0 and run == 0.0:
        raise DegenerateChordError("chord endpoints coincide")
    if run == 0.0:
        return VerticalChord(1 if rise >= 0 else -1)
    return rise / run


def chord_gradient(spec: ConicSpec, theta0: float, theta1: float) -> Gradient:
    """Closed-form gradient of the chord joining parameters ``theta0`` and ``theta1``.

    * circle: ``-cot((t0 + t1)/2)``
    * unit hyperbola: ``coth((t0 + t1)/2)``
    * relativistic hyperbola: ``coth(a (t0 + t1) / 2c) / c``
    * ellipse: ``cot(a (t0 + t1) / 2c) / c``
    * parabola: ``2 / (a (t0 + t1))``

    A zero run gives a :class:`VerticalChord` instead of an infinity.
    """
    kind = spec.kind
    if kind is ConicKind.UNIT_CIRCLE:
        if (theta0 - theta1) % TWO_PI == 0.0:
            raise DegenerateChordError("chord endpoints coincide")
    elif theta0 == theta1:
        raise DegenerateChordError("chord endpoints coincide")
    if kind is ConicKind.ELLIPSE:
        # validates the parameter range
        conic_point(spec, theta0), conic_point(spec, theta1)

    m = 0.5 * (theta0 + theta1)
    if kind is ConicKind.UNIT_CIRCLE:
        s = math.sin(m)
        if s == 0.0:
            # rise sin(t1) - sin(t0) = 2 cos(m) sin((t1 - t0)/2)
            return VerticalChord(1 if math.cos(m) * math.sin(0.5 * (theta1 - theta0)) >= 0 else -1)
        return -math.cos(m) / s
    if kind is ConicKind.UNIT_HYPERBOLA:
        if m == 0.0:
            return VerticalChord(1 if theta1 > theta0 else -1)
        return 1.0 / math.tanh(m)
    a = spec.a
    if kind is ConicKind.PARABOLA:
        if m == 0.0:
            return VerticalChord(1 if theta1 > theta0 else -1)
        return 1.0 / (a * m)
    c = spec.c
    u = a * m / c
    if kind is ConicKind.REL_HYPERBOLA:
        if u == 0.0:
            return VerticalChord(1 if theta1 > theta0 else -1)
        return 1.0 / (c * math.tanh(u))
    if u == 0.0:
        return VerticalChord(1 if theta1 > theta0 else -1)
    return math.cos(u) / (c * math.sin(u))


def reintersect(spec: ConicSpec, theta0: float, gradient: Gradient) -> float:
    """Parameter of the second point where the line through ``theta0`` meets the curve.

    Inverse of :func:`chord_gradient` in its second argument.
    """
    kind = spec.kind
    vertical = isinstance(gradient, VerticalChord)
    if not vertical and not math.isfinite(gradient):
        raise GeometryError(f"non-finite gradient {gradient}; use VerticalChord")

    if kind is ConicKind.UNIT_CIRCLE:
        # -cot(m) = g with m in (0, pi); a vertical chord has sin(m) = 0
        m = 0.0 if vertical else math.atan2(1.0, -gradient)
        out = (2.0 * m - theta0) % TWO_PI
        if (out - theta0) % TWO_PI == 0.0:
            raise NoIntersectionError("line is tangent to the circle")
        return out

    if kind is ConicKind.UNIT_HYPERBOLA:
        if vertical:
            out = -theta0
        else:
            if abs(gradient) <= 1.0:
                raise NoIntersectionError("only lines with |gradient| > 1 meet the branch twice")
            out = 2.0 * math.atanh(1.0 / gradient) - theta0
    elif kind is ConicKind.PARABOLA:
        if vertical:
            out = -theta0
        else:
            if gradient == 0.0:
                raise NoIntersectionError("a line of constant time meets the parabola once")
            out = 2.0 / (spec.a * gradient) - theta0
    elif kind is ConicKind.REL_HYPERBOLA:
        a, c = spec.a, spec.c
        if vertical:
            out = -theta0
        else:
            cg = c * gradient
            if abs(cg) <= 1.0:
                raise NoIntersectionError("only timelike lines meet the trajectory twice")
            out = 2.0 * c / a * math.atanh(1.0 / cg) - theta0
    else:
        a, c = spec.a, spec.c
        if vertical:
            out = -theta0
        else:
            # cot(u) = c g; candidates u and u - pi, only one stays on the arc
            u = math.atan2(1.0, c * gradient)
            out = None
            for uu in (u, u - math.pi):
                cand = 2.0 * c / a * uu - theta0
                if abs(a * cand / c) < math.pi:
                    out = cand
                    break
            if out is None:
                raise NoIntersectionError("second intersection falls outside the ellipse arc")
    if out == theta0:
        raise NoIntersectionError("line is tangent to the curve")
    return out


def wick_check(theta: float) -> float:
    """Residual between the Wick-rotated circle and the unit hyperbola at ``theta``.

    The circle point ``(cos z, sin z)`` is evaluated at ``z = i theta`` with
    complex arithmetic.  Its first component is the hyperbola's space
    coordinate and ``-i`` times its second component is the hyperbola's time
    coordinate.  Returns the max-norm distance (imaginary parts included) to
    ``conic_point(UNIT_HYPERBOLA, theta)``.
    """
    z = 1j * theta
    space = cmath.cos(z)
    time = -1j * cmath.sin(z)
    target = conic_point(ConicSpec.unit_hyperbola(), theta).point
    return max(abs(time - target.x0), abs(space - target.x1))
