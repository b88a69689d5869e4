"""Run configuration, pulse records and the experiment loop.

Randomness is split into independent substreams derived from the run seed:
one sequential stream for the configuration choices and one stream per
fixed-size chunk of pulses for detection. Chunks can therefore be simulated
by any number of worker processes with output identical to a sequential run.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .models import (
    Behavior,
    ConfigError,
    InterferometerConfig,
    InterferometerModel,
    PowParameters,
    SourceModel,
    simulate_batch_pow,
    simulate_batch_qm,
)
from .qrng import QrngModel, choice_array
from .timing import ExperimentGeometry

CHUNK_SIZE = 1 << 16
PULSE_PERIOD_NS = 1000.0
PHASE_DECIMALS = 9

_QRNG_STREAM = 0
_DETECTION_STREAM = 1


class Mode(enum.Enum):
    QM = "qm"
    POW = "pow"


@dataclass(frozen=True)
class RunConfig:
    mode: Mode = Mode.QM
    pulses_open: int = 1_000_000
    pulses_closed_per_phase: int = 50_000
    phase_points: int = 24
    source: SourceModel = field(default_factory=SourceModel)
    interferometer: InterferometerModel = field(default_factory=InterferometerModel)
    pow: Optional[PowParameters] = None
    qrng: QrngModel = field(default_factory=QrngModel)
    geometry: ExperimentGeometry = field(default_factory=ExperimentGeometry)
    seed: int = 20070216

    def __post_init__(self) -> None:
        if self.mode is Mode.POW and self.pow is None:
            raise ConfigError("mode = pow requires pow.p_w_given_open and pow.p_w_given_closed")
        for name in ("pulses_open", "pulses_closed_per_phase", "phase_points"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be non-negative")
        if self.pulses_closed_per_phase > 0 and self.phase_points < 3:
            raise ConfigError("phase_points must be at least 3 when closed pulses are requested")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")

    @property
    def total_pulses(self) -> int:
        return self.pulses_open + self.pulses_closed_per_phase * self.phase_points

    def phase_grid(self) -> np.ndarray:
        if self.phase_points == 0:
            return np.zeros(0)
        k = np.arange(self.phase_points)
        return np.round(2.0 * math.pi * k / self.phase_points, PHASE_DECIMALS)


@dataclass(slots=True)
class PulseRecord:
    pulse_id: int
    config: InterferometerConfig
    phase: float
    behavior: Optional[Behavior]
    d1: bool
    d2: bool
    t_entry_ns: float
    t_choice_ns: float


def _choices(run: RunConfig) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence(run.seed, spawn_key=(_QRNG_STREAM,)))
    return choice_array(run.qrng, run.total_pulses, rng)


def _chunk_rng(seed: int, chunk_id: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(_DETECTION_STREAM, chunk_id)))


def _simulate_chunk(run: RunConfig, chunk_id: int, closed: np.ndarray, phases: np.ndarray):
    rng = _chunk_rng(run.seed, chunk_id)
    if run.mode is Mode.QM:
        d1, d2 = simulate_batch_qm(run.source, run.interferometer, closed, phases, rng)
        return d1, d2, None
    return simulate_batch_pow(run.pow, closed, phases + run.interferometer.phase, rng)


def _chunk_records(run: RunConfig, start: int, closed, phases, d1, d2, wave) -> list[PulseRecord]:
    lag = run.geometry.propagation_time_ns - run.geometry.switch_time_ns
    C, O = InterferometerConfig.CLOSED, InterferometerConfig.OPEN
    W, P = Behavior.WAVE, Behavior.PARTICLE
    ph = phases.tolist()
    cl = closed.tolist()
    a, b = d1.tolist(), d2.tolist()
    wv = wave.tolist() if wave is not None else None
    out = []
    for i in range(len(cl)):
        pid = start + i
        t = pid * PULSE_PERIOD_NS
        beh = None if wv is None else (W if wv[i] else P)
        out.append(PulseRecord(pid, C if cl[i] else O, ph[i], beh, a[i], b[i], t, t + lag))
    return out


def run_experiment(run: RunConfig, workers: int = 1) -> list[PulseRecord]:
    """Simulate ``run.total_pulses`` gates.

    Each gate's configuration comes from the QRNG chain. The k-th closed
    gate is set to grid phase ``k mod phase_points``; open gates use phase 0.
    The result depends only on ``run`` (including its seed), never on
    ``workers``.
    """
    closed = _choices(run)
    n = closed.shape[0]
    grid = run.phase_grid()
    phases = np.zeros(n)
    if grid.size:
        closed_index = np.cumsum(closed) - 1
        phases[closed] = grid[closed_index[closed] % grid.size]

    bounds = [(s, min(s + CHUNK_SIZE, n)) for s in range(0, n, CHUNK_SIZE)]
    jobs = [(run, k, closed[s:e], phases[s:e]) for k, (s, e) in enumerate(bounds)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_simulate_chunk, *zip(*jobs)))
    else:
        results = [_simulate_chunk(*job) for job in jobs]

    records: list[PulseRecord] = []
    for (s, e), (d1, d2, wave) in zip(bounds, results):
        records.extend(_chunk_records(run, s, closed[s:e], phases[s:e], d1, d2, wave))
    return records
