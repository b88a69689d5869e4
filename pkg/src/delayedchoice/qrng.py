"""Configuration-choice generator and a simple predictability estimator."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .models import ConfigError, InterferometerConfig

CLOSED = InterferometerConfig.CLOSED
OPEN = InterferometerConfig.OPEN


@dataclass(frozen=True)
class QrngModel:
    """Binary choice source.

    ``p_closed`` sets the first choice; afterwards the previous choice is
    repeated with probability ``persistence`` and flipped otherwise, so the
    lag-1 agreement rate equals ``persistence`` and the long-run marginal
    is one half.
    """

    p_closed: float = 0.5
    persistence: float = 0.5

    def __post_init__(self) -> None:
        for name in ("p_closed", "persistence"):
            value = getattr(self, name)
            if not (0.0 <= value <= 1.0):
                raise ConfigError(f"qrng.{name} must lie in [0, 1], got {value!r}")


class Predictor(enum.Enum):
    CONSTANT_CLOSED = "ConstantClosed"
    CONSTANT_OPEN = "ConstantOpen"
    REPEAT_LAST = "RepeatLast"
    FLIP_LAST = "FlipLast"


@dataclass(frozen=True)
class PredictabilityEstimate:
    value: float
    best_predictor: Predictor
    n: int


def next_choice(
    model: QrngModel, previous: Optional[InterferometerConfig], rng: np.random.Generator
) -> InterferometerConfig:
    u = rng.random()
    if previous is None:
        return CLOSED if u < model.p_closed else OPEN
    return previous if u < model.persistence else previous.opposite


def choice_array(
    model: QrngModel,
    n: int,
    rng: np.random.Generator,
    previous: Optional[bool] = None,
) -> np.ndarray:
    """Vectorised ``next_choice`` chain; True means Closed.

    Consumes exactly one uniform per choice, in the same order as repeated
    ``next_choice`` calls, so both paths yield the same sequence from the
    same generator state.
    """
    u = rng.random(n)
    if n == 0:
        return np.zeros(0, dtype=bool)
    flips = u >= model.persistence
    if previous is None:
        first = bool(u[0] < model.p_closed)
        flips[0] = False
    else:
        first = bool(previous)
    return np.logical_xor(first, np.cumsum(flips) % 2 == 1)


def estimate_predictability(seq: Sequence[InterferometerConfig]) -> PredictabilityEstimate:
    """Best accuracy among four one-step predictors.

    Constant predictors are scored over the whole sequence, the sequential
    ones over elements 2..n.
    """
    n = len(seq)
    if n < 2:
        raise ValueError("predictability needs a sequence of at least 2 choices")
    closed = np.fromiter((c is CLOSED for c in seq), dtype=bool, count=n)
    frac_closed = closed.mean()
    repeat = float(np.mean(closed[1:] == closed[:-1]))
    scores = {
        Predictor.CONSTANT_CLOSED: float(frac_closed),
        Predictor.CONSTANT_OPEN: float(1.0 - frac_closed),
        Predictor.REPEAT_LAST: repeat,
        Predictor.FLIP_LAST: 1.0 - repeat,
    }
    best = max(scores, key=scores.__getitem__)
    return PredictabilityEstimate(scores[best], best, n)
