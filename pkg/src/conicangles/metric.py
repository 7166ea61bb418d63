"""Bilinear forms on the plane, causal classification, angles and isometries.

Vectors are stored in (time, space) order, ``(x0, x1)``.  A :class:`Metric`
carries a speed scale ``c`` so that

* Euclidean:  ``u.v = c**2 u0 v0 + u1 v1``
* Minkowski:  ``u.v = -c**2 u0 v0 + u1 v1``

With ``c = 1`` the Minkowski form is the usual ``-x0 y0 + x1 y1``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import CausalityError, GeometryError

NULL_TOL = 1e-12


class Signature(str, enum.Enum):
    EUCLIDEAN = "euclidean"
    MINKOWSKI = "minkowski"


class CausalClass(str, enum.Enum):
    TIMELIKE = "timelike"
    SPACELIKE = "spacelike"
    NULL = "null"


class AngleKind(str, enum.Enum):
    CIRCULAR = "circular"
    PSEUDO = "pseudo"


class IsometryKind(str, enum.Enum):
    ROTATION = "rotation"
    BOOST = "boost"


@dataclass(frozen=True, slots=True)
class Vec2:
    """A displacement in the plane, ``x0`` time-like and ``x1`` spatial."""

    x0: float
    x1: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x0) and math.isfinite(self.x1)):
            raise GeometryError(f"non-finite vector components ({self.x0}, {self.x1})")

    def __add__(self, other: Vec2) -> Vec2:
        return Vec2(self.x0 + other.x0, self.x1 + other.x1)

    def __sub__(self, other: Vec2) -> Vec2:
        return Vec2(self.x0 - other.x0, self.x1 - other.x1)

    def __neg__(self) -> Vec2:
        return Vec2(-self.x0, -self.x1)

    def __mul__(self, k: float) -> Vec2:
        return Vec2(k * self.x0, k * self.x1)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.x0 == 0.0 and self.x1 == 0.0

    def euclid_norm(self) -> float:
        return math.hypot(self.x0, self.x1)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x0, self.x1)


@dataclass(frozen=True, slots=True)
class Metric:
    signature: Signature = Signature.MINKOWSKI
    c: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "signature", Signature(self.signature))
        if not (math.isfinite(self.c) and self.c > 0):
            raise GeometryError(f"speed scale must be positive and finite, got {self.c}")

    @property
    def eps(self) -> float:
        return -1.0 if self.signature is Signature.MINKOWSKI else 1.0

    @classmethod
    def euclidean(cls, c: float = 1.0) -> Metric:
        return cls(Signature.EUCLIDEAN, c)

    @classmethod
    def minkowski(cls, c: float = 1.0) -> Metric:
        return cls(Signature.MINKOWSKI, c)


EUCLIDEAN = Metric.euclidean()
MINKOWSKI = Metric.minkowski()


@dataclass(frozen=True, slots=True)
class AngleMeasure:
    value: float
    kind: AngleKind

    def __float__(self) -> float:
        return self.value


def inner(u: Vec2, v: Vec2, m: Metric = MINKOWSKI) -> float:
    return m.eps * (m.c * m.c) * (u.x0 * v.x0) + u.x1 * v.x1


def classify(v: Vec2, m: Metric = MINKOWSKI) -> CausalClass:
    """Causal character of ``v``.

    Null means ``|v.v|`` is within ``NULL_TOL`` of the scale
    ``c**2 v0**2 + v1**2``.  Every nonzero vector is spacelike under a
    Euclidean metric.
    """
    if v.is_zero():
        raise GeometryError("zero vector has no causal class")
    if m.signature is Signature.EUCLIDEAN:
        return CausalClass.SPACELIKE
    q = inner(v, v, m)
    scale = m.c * m.c * v.x0 * v.x0 + v.x1 * v.x1
    if abs(q) <= NULL_TOL * scale:
        return CausalClass.NULL
    return CausalClass.TIMELIKE if q < 0 else CausalClass.SPACELIKE


def angle_between(u: Vec2, v: Vec2, m: Metric = MINKOWSKI) -> AngleMeasure:
    """Unsigned angle between the lines spanned by ``u`` and ``v``.

    Euclidean metrics give the acute angle ``arccos sqrt((u.v)^2 / (u^2 v^2))``;
    Minkowski metrics give the pseudo-angle ``arcosh sqrt((u.v)^2 / (u^2 v^2))``
    and require both vectors to be timelike or both spacelike.

    Both are evaluated through the identity
    ``|(u.v)^2 - u^2 v^2| = c^2 (u0 v1 - u1 v0)^2``, which avoids the
    cancellation in ``ratio - 1`` for nearly parallel vectors and keeps the
    arcosh/arccos argument in range without clamping.
    """
    if u.is_zero() or v.is_zero():
        raise GeometryError("angle with a zero vector is undefined")
    cross = m.c * abs(u.x0 * v.x1 - u.x1 * v.x0)
    dot = abs(inner(u, v, m))
    if m.signature is Signature.EUCLIDEAN:
        return AngleMeasure(math.atan2(cross, dot), AngleKind.CIRCULAR)

    cu, cv = classify(u, m), classify(v, m)
    if CausalClass.NULL in (cu, cv):
        raise CausalityError("pseudo-angle with a null vector is undefined")
    if cu is not cv:
        raise CausalityError("pseudo-angle between a timelike and a spacelike vector is not supported")
    # same causal class, so u^2 v^2 > 0 and sinh(theta) = c|u x v| / sqrt(u^2 v^2)
    norms = math.sqrt(inner(u, u, m) * inner(v, v, m))
    return AngleMeasure(math.asinh(cross / norms), AngleKind.PSEUDO)


@dataclass(frozen=True, slots=True)
class Isometry2:
    """A 2x2 linear isometry stored row-major as ``((m00, m01), (m10, m11))``."""

    matrix: tuple[tuple[float, float], tuple[float, float]]
    kind: IsometryKind

    @property
    def det(self) -> float:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def metric(self) -> Metric:
        return MINKOWSKI if self.kind is IsometryKind.BOOST else EUCLIDEAN

    def __matmul__(self, other: Isometry2) -> Isometry2:
        if self.kind is not other.kind:
            raise GeometryError("cannot compose a rotation with a boost")
        (a, b), (c, d) = self.matrix
        (e, f), (g, h) = other.matrix
        return Isometry2(((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h)), self.kind)


def make_isometry(kind: IsometryKind | str, phi: float) -> Isometry2:
    """Rotation by angle ``phi`` or boost by rapidity ``phi``.

    The boost matrix is ``[[cosh phi, sinh phi], [sinh phi, cosh phi]]``,
    which sends ``(sinh t, cosh t)`` to ``(sinh(t + phi), cosh(t + phi))``.
    """
    kind = IsometryKind(kind)
    if not math.isfinite(phi):
        raise GeometryError(f"non-finite isometry parameter {phi}")
    if kind is IsometryKind.BOOST:
        ch, sh = math.cosh(phi), math.sinh(phi)
        return Isometry2(((ch, sh), (sh, ch)), kind)
    co, si = math.cos(phi), math.sin(phi)
    return Isometry2(((co, -si), (si, co)), kind)


def apply_isometry(iso: Isometry2, v: Vec2) -> Vec2:
    (a, b), (c, d) = iso.matrix
    return Vec2(a * v.x0 + b * v.x1, c * v.x0 + d * v.x1)
