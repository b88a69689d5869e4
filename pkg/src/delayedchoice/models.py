"""Pulse-level simulation of a two-path interferometer with a switchable output.

Two models are provided. The quantum model routes each photon of an
effective photon-number source through the interferometer with a
phase-dependent splitting ratio. The particle-or-wave model draws a hidden
behaviour per pulse (wave or particle) conditioned on the configuration
and then produces the extremal detection statistics for that behaviour.

Scalar functions (``simulate_pulse_*``) take a ``numpy.random.Generator``
and simulate one gate. Batch functions (``simulate_batch_*``) do the same
for arrays of gates and are what the experiment loop uses.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

PROB_TOL = 1e-12


class ConfigError(ValueError):
    """Invalid or inconsistent model/run configuration."""


class InterferometerConfig(enum.Enum):
    OPEN = "O"
    CLOSED = "C"

    @property
    def opposite(self) -> "InterferometerConfig":
        return InterferometerConfig.CLOSED if self is InterferometerConfig.OPEN else InterferometerConfig.OPEN


class Behavior(enum.Enum):
    WAVE = "W"
    PARTICLE = "P"


def _check_prob(name: str, value: float) -> None:
    if not (0.0 <= value <= 1.0):
        raise ConfigError(f"{name} must lie in [0, 1], got {value!r}")


@dataclass(frozen=True)
class SourceModel:
    """Effective photon-number source truncated to at most two photons."""

    p0: float = 0.0
    p1: float = 0.936
    p2: float = 0.064
    efficiency: float = 1.0
    dark1: float = 0.0
    dark2: float = 0.0

    def __post_init__(self) -> None:
        for name in ("p0", "p1", "p2", "efficiency", "dark1", "dark2"):
            _check_prob(f"source.{name}", getattr(self, name))
        total = self.p0 + self.p1 + self.p2
        if abs(total - 1.0) > PROB_TOL:
            raise ConfigError(f"source.p0 + source.p1 + source.p2 must equal 1, got {total!r}")


@dataclass(frozen=True)
class InterferometerModel:
    intrinsic_visibility: float = 0.94
    phase: float = 0.0

    def __post_init__(self) -> None:
        _check_prob("interferometer.intrinsic_visibility", self.intrinsic_visibility)
        if not math.isfinite(self.phase):
            raise ConfigError("interferometer.phase must be finite")

    def d1_probability(self, cfg: InterferometerConfig, phase: Optional[float] = None) -> float:
        """Probability that a single surviving photon exits towards detector 1."""
        if cfg is InterferometerConfig.OPEN:
            return 0.5
        phi = self.phase if phase is None else phase
        return 0.5 * (1.0 + self.intrinsic_visibility * math.cos(phi))


@dataclass(frozen=True)
class PowParameters:
    """Conditional wave probabilities of a particle-or-wave theory.

    ``p_w_given_open == p_w_given_closed`` is the no-leakage case: the
    behaviour cannot depend on a choice it has no access to.
    """

    p_w_given_open: float
    p_w_given_closed: float

    def __post_init__(self) -> None:
        _check_prob("pow.p_w_given_open", self.p_w_given_open)
        _check_prob("pow.p_w_given_closed", self.p_w_given_closed)

    def p_wave(self, cfg: InterferometerConfig) -> float:
        if cfg is InterferometerConfig.CLOSED:
            return self.p_w_given_closed
        return self.p_w_given_open


@dataclass(frozen=True)
class DetectionOutcome:
    d1: bool
    d2: bool
    behavior: Optional[Behavior] = None


def sample_photon_number(src: SourceModel, rng: np.random.Generator) -> int:
    u = rng.random()
    if u < src.p0:
        return 0
    if u < src.p0 + src.p1:
        return 1
    return 2


def simulate_pulse_qm(
    src: SourceModel,
    ifm: InterferometerModel,
    cfg: InterferometerConfig,
    rng: np.random.Generator,
) -> DetectionOutcome:
    """One gate of the quantum model.

    Photons are routed independently (no two-photon interference) and the
    detectors are binary, so a pulse fires each detector at most once.
    """
    n = sample_photon_number(src, rng)
    q = ifm.d1_probability(cfg)
    d1 = d2 = False
    for _ in range(n):
        if rng.random() >= src.efficiency:
            continue
        if rng.random() < q:
            d1 = True
        else:
            d2 = True
    if rng.random() < src.dark1:
        d1 = True
    if rng.random() < src.dark2:
        d2 = True
    return DetectionOutcome(d1, d2, None)


def simulate_pulse_pow(
    pow: PowParameters,
    phase: float,
    cfg: InterferometerConfig,
    rng: np.random.Generator,
) -> DetectionOutcome:
    wave = rng.random() < pow.p_wave(cfg)
    behavior = Behavior.WAVE if wave else Behavior.PARTICLE
    if wave and cfg is InterferometerConfig.OPEN:
        # energy split between both outputs: independent firings
        return DetectionOutcome(rng.random() < 0.5, rng.random() < 0.5, behavior)
    if wave:
        q = 0.5 * (1.0 + math.cos(phase))
    else:
        q = 0.5
    d1 = rng.random() < q
    return DetectionOutcome(d1, not d1, behavior)


def outcome_probabilities_qm(
    src: SourceModel, ifm: InterferometerModel, cfg: InterferometerConfig, phase: Optional[float] = None
) -> dict[tuple[bool, bool], float]:
    """Exact probabilities of the four (d1, d2) patterns under the quantum model."""
    q = ifm.d1_probability(cfg, phase)
    eta = src.efficiency
    # per emitted photon: lost, to D1, to D2
    lost, to1, to2 = 1.0 - eta, eta * q, eta * (1.0 - q)
    # photon-induced firing patterns
    photon = {
        (False, False): src.p0 + src.p1 * lost + src.p2 * lost**2,
        (True, False): src.p1 * to1 + src.p2 * (to1**2 + 2 * to1 * lost),
        (False, True): src.p1 * to2 + src.p2 * (to2**2 + 2 * to2 * lost),
        (True, True): src.p2 * 2 * to1 * to2,
    }
    out = {k: 0.0 for k in photon}
    for (a, b), p in photon.items():
        for da in (False, True):
            pa = src.dark1 if da else 1.0 - src.dark1
            for db in (False, True):
                pb = src.dark2 if db else 1.0 - src.dark2
                out[(a or da, b or db)] += p * pa * pb
    return out


def outcome_probabilities_pow(
    pow: PowParameters, phase: float, cfg: InterferometerConfig
) -> dict[tuple[bool, bool], float]:
    pw = pow.p_wave(cfg)
    if cfg is InterferometerConfig.OPEN:
        return {
            (False, False): pw / 4,
            (True, False): pw / 4 + (1 - pw) / 2,
            (False, True): pw / 4 + (1 - pw) / 2,
            (True, True): pw / 4,
        }
    q = pw * 0.5 * (1.0 + math.cos(phase)) + (1 - pw) * 0.5
    return {(False, False): 0.0, (True, False): q, (False, True): 1.0 - q, (True, True): 0.0}


def simulate_batch_qm(
    src: SourceModel,
    ifm: InterferometerModel,
    closed: np.ndarray,
    phases: np.ndarray,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised quantum model; ``phases`` are added to ``ifm.phase``."""
    closed = np.asarray(closed, dtype=bool)
    n = closed.shape[0]
    u = rng.random((7, n))
    photons = np.where(u[0] < src.p0, 0, np.where(u[0] < src.p0 + src.p1, 1, 2))
    q = np.where(closed, 0.5 * (1.0 + ifm.intrinsic_visibility * np.cos(ifm.phase + phases)), 0.5)
    d1 = np.zeros(n, dtype=bool)
    d2 = np.zeros(n, dtype=bool)
    for k in range(2):
        present = (photons > k) & (u[1 + k] < src.efficiency)
        go1 = u[3 + k] < q
        d1 |= present & go1
        d2 |= present & ~go1
    d1 |= u[5] < src.dark1
    d2 |= u[6] < src.dark2
    return d1, d2


def simulate_batch_pow(
    pow: PowParameters,
    closed: np.ndarray,
    phases: np.ndarray,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised particle-or-wave model. Returns (d1, d2, wave)."""
    closed = np.asarray(closed, dtype=bool)
    n = closed.shape[0]
    u = rng.random((3, n))
    wave = u[0] < np.where(closed, pow.p_w_given_closed, pow.p_w_given_open)
    q = np.where(closed & wave, 0.5 * (1.0 + np.cos(phases)), 0.5)
    d1 = u[1] < q
    d2 = ~d1
    split = wave & ~closed
    d2 = np.where(split, u[2] < 0.5, d2)
    return d1, d2, wave
