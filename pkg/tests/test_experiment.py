import math

import numpy as np
import pytest

from delayedchoice.experiment import CHUNK_SIZE, Mode, PULSE_PERIOD_NS, RunConfig, run_experiment
from delayedchoice.models import ConfigError, InterferometerConfig, PowParameters
from delayedchoice.qrng import QrngModel

C, O = InterferometerConfig.CLOSED, InterferometerConfig.OPEN


def test_zero_pulses():
    assert run_experiment(RunConfig(pulses_open=0, pulses_closed_per_phase=0)) == []


def test_pow_requires_parameters():
    with pytest.raises(ConfigError):
        RunConfig(mode=Mode.POW)


def test_deterministic():
    run = RunConfig(pulses_open=3000, pulses_closed_per_phase=100, seed=77)
    assert run_experiment(run) == run_experiment(run)
    other = run_experiment(RunConfig(pulses_open=3000, pulses_closed_per_phase=100, seed=78))
    assert other != run_experiment(run)


def test_workers_do_not_change_output():
    run = RunConfig(mode=Mode.POW, pow=PowParameters(0.4, 0.7), pulses_open=3 * CHUNK_SIZE,
                    pulses_closed_per_phase=1000, seed=5)
    assert run_experiment(run, workers=3) == run_experiment(run, workers=1)


def test_record_invariants():
    run = RunConfig(mode=Mode.POW, pow=PowParameters(0.3, 0.6), pulses_open=2000,
                    pulses_closed_per_phase=100, phase_points=8, seed=2)
    records = run_experiment(run)
    assert len(records) == run.total_pulses
    lag = run.geometry.propagation_time_ns - run.geometry.switch_time_ns
    for i, r in enumerate(records):
        assert r.pulse_id == i
        assert r.behavior is not None
        assert r.t_entry_ns == i * PULSE_PERIOD_NS
        assert r.t_choice_ns == r.t_entry_ns + lag
        if r.config is O:
            assert r.phase == 0.0
    qm = run_experiment(RunConfig(pulses_open=500, pulses_closed_per_phase=10, seed=2))
    assert all(r.behavior is None for r in qm)


def test_closed_pulses_cycle_phase_grid():
    run = RunConfig(pulses_open=0, pulses_closed_per_phase=50, phase_points=6,
                    qrng=QrngModel(1.0, 1.0), seed=3)
    records = run_experiment(run)
    assert all(r.config is C for r in records)
    grid = run.phase_grid()
    assert [r.phase for r in records] == [grid[k % 6] for k in range(300)]
    assert grid[3] == round(math.pi, 9)


def test_phase_grid_survives_nine_decimals():
    grid = RunConfig().phase_grid()
    assert all(float(f"{p:.9f}") == p for p in grid)


def test_qrng_marginal_in_run():
    records = run_experiment(RunConfig(pulses_open=200_000, pulses_closed_per_phase=0, seed=9))
    frac = np.mean([r.config is C for r in records])
    assert abs(frac - 0.5) <= 4 * math.sqrt(0.25 / len(records))
