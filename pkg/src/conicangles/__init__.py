"""Inscribed angle theorems on circles, hyperbolae and parabolae, with their kinematics."""

from .conics import (
    ConicKind,
    ConicSpec,
    ParamPoint,
    VerticalChord,
    chord_gradient,
    conic_point,
    implicit_residual,
    reintersect,
    secant_gradient,
    wick_check,
)
from .errors import CausalityError, DegenerateChordError, GeometryError, NoIntersectionError
from .kinematics import (
    Event,
    ObserverTrajectory,
    Worldline,
    collision,
    eject,
    newtonian_collision_gap,
    newtonian_collision_time,
    numeric_collision_oracle,
    observer_event,
    proper_time_gap,
)
from .metric import (
    AngleKind,
    AngleMeasure,
    CausalClass,
    Isometry2,
    IsometryKind,
    Metric,
    Signature,
    Vec2,
    angle_between,
    apply_isometry,
    classify,
    inner,
    make_isometry,
)
from .theorems import (
    InscribedConfig,
    LimitScan,
    central_angle,
    inscribed_angle,
    limit_scan,
    parabola_angle_measure,
    parabola_pseudo_angle,
    rotate_config,
    thales_residual,
)

__version__ = "0.1.0"
