"""One-dimensional spacetime bookkeeping for the switching protocol."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .models import ConfigError

SPEED_OF_LIGHT_M_S = 299_792_458.0
# quoted bench figures are rounded to two significant digits
GEOMETRY_SPEED_RTOL = 1e-2


class CausalityOrderError(ValueError):
    pass


@dataclass(frozen=True)
class SpacetimeEvent:
    label: str
    position_m: float
    time_ns: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.position_m) and math.isfinite(self.time_ns)):
            raise ValueError(f"event {self.label!r} must have finite coordinates")


@dataclass(frozen=True)
class ExperimentGeometry:
    path_length_m: float = 48.0
    propagation_time_ns: float = 160.0
    switch_time_ns: float = 40.0
    path_separation_mm: float = 5.0

    def __post_init__(self) -> None:
        if self.path_length_m < 0:
            raise ConfigError("geometry.path_length_m must be non-negative")
        for name in ("propagation_time_ns", "switch_time_ns", "path_separation_mm"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"geometry.{name} must be positive")
        speed = self.path_length_m / (self.propagation_time_ns * 1e-9)
        if speed > SPEED_OF_LIGHT_M_S * (1.0 + GEOMETRY_SPEED_RTOL):
            raise ConfigError(
                "geometry.path_length_m / geometry.propagation_time_ns exceeds the speed of light"
            )


def _light_distance_m(dt_ns: float) -> float:
    return SPEED_OF_LIGHT_M_S * dt_ns * 1e-9


def required_signal_speed(src: SpacetimeEvent, dst: SpacetimeEvent) -> float:
    """Speed, in units of c, a signal needs to get from ``src`` to ``dst``."""
    dt = dst.time_ns - src.time_ns
    if dt <= 0:
        raise CausalityOrderError(
            f"{dst.label!r} does not follow {src.label!r}: "
            "influence would need to travel backwards in time"
        )
    return abs(dst.position_m - src.position_m) / _light_distance_m(dt)


def is_spacelike(a: SpacetimeEvent, b: SpacetimeEvent) -> bool:
    return abs(b.position_m - a.position_m) > _light_distance_m(abs(b.time_ns - a.time_ns))


@dataclass(frozen=True)
class Timeline:
    events: tuple[SpacetimeEvent, ...]
    critical_pair: tuple[SpacetimeEvent, SpacetimeEvent]

    @property
    def required_speed_c(self) -> float:
        return required_signal_speed(*self.critical_pair)

    @property
    def spacelike(self) -> bool:
        return is_spacelike(*self.critical_pair)

    def event(self, label: str) -> SpacetimeEvent:
        for ev in self.events:
            if ev.label == label:
                return ev
        raise KeyError(label)


def experiment_timeline(geom: ExperimentGeometry = ExperimentGeometry(), margin_ns: float = 0.0) -> Timeline:
    """Lay out entry, choice and exit events on the bench axis.

    The choice is drawn at the far end of the arms one switching window
    before the photon enters, so the signal that would have to carry the
    choice to the entrance covers ``path_length_m`` in ``switch_time_ns``.
    """
    L = geom.path_length_m
    entry = SpacetimeEvent("photon-entry", 0.0, 0.0)
    drawn = SpacetimeEvent("choice-drawn", L, -geom.switch_time_ns)
    applied = SpacetimeEvent(
        "choice-applied", L, geom.propagation_time_ns - geom.switch_time_ns - margin_ns
    )
    exit_ = SpacetimeEvent("photon-at-output", L, geom.propagation_time_ns)
    return Timeline((drawn, entry, applied, exit_), (drawn, entry))
