import math

import numpy as np
import pytest

from delayedchoice.experiment import Mode, RunConfig, run_experiment
from delayedchoice.models import PowParameters
from delayedchoice.stats import estimate_alpha, estimate_visibility_fit, tally

_CRITERIA: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record a named acceptance criterion; prints in the terminal summary."""

    class _Recorder:
        def __init__(self):
            self.name = None
            self.detail = ""

        def __call__(self, name):
            self.name = name
            return self

        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            _CRITERIA.append((self.name, exc_type is None, self.detail))
            return False

    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pow_run(p_open, p_closed, total=100_000, seed=1, phase_points=24):
    """Run split evenly between open gates and a closed phase sweep."""
    per_phase = math.ceil(total / 2 / phase_points)
    return RunConfig(
        mode=Mode.POW,
        pulses_open=total - per_phase * phase_points,
        pulses_closed_per_phase=per_phase,
        phase_points=phase_points,
        pow=PowParameters(p_open, p_closed),
        seed=seed,
    )


def estimates(run):
    summary, bins = tally(run_experiment(run))
    return estimate_visibility_fit(bins), estimate_alpha(summary)
