"""Count tallies and the visibility / anticorrelation estimators."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .experiment import PulseRecord
from .models import InterferometerConfig


class EstimationError(ValueError):
    """Data cannot support the requested estimate."""


@dataclass(frozen=True)
class CountSummary:
    gates: int = 0
    singles1: int = 0
    singles2: int = 0
    coincidences: int = 0

    def __add__(self, other: "CountSummary") -> "CountSummary":
        return CountSummary(
            self.gates + other.gates,
            self.singles1 + other.singles1,
            self.singles2 + other.singles2,
            self.coincidences + other.coincidences,
        )


@dataclass(frozen=True)
class PhaseBin:
    phase: float
    gates: int
    counts1: int

    @property
    def rate(self) -> float:
        return self.counts1 / self.gates


@dataclass(frozen=True)
class AlphaEstimate:
    value: float
    stderr: float
    summary: CountSummary


class VisibilityMethod(enum.Enum):
    MIN_MAX = "MinMax"
    SINUSOID_FIT = "SinusoidFit"


@dataclass(frozen=True)
class VisibilityEstimate:
    value: float
    stderr: float
    phase_offset: float
    mean_rate: float
    method: VisibilityMethod
    raw_value: float


@dataclass(frozen=True)
class FringeFit:
    """Least-squares coefficients of ``a + b cos(phi) + c sin(phi)``."""

    a: float
    b: float
    c: float
    cov: np.ndarray

    @property
    def amplitude(self) -> float:
        return math.hypot(self.b, self.c)

    @property
    def visibility(self) -> float:
        return self.amplitude / self.a

    @property
    def phase_offset(self) -> float:
        return math.atan2(-self.c, self.b)


def tally(records: Iterable[PulseRecord]) -> tuple[CountSummary, list[PhaseBin]]:
    gates = s1 = s2 = cc = 0
    bins: dict[float, list[int]] = {}
    closed = InterferometerConfig.CLOSED
    for r in records:
        if r.config is closed:
            b = bins.get(r.phase)
            if b is None:
                b = bins[r.phase] = [0, 0]
            b[0] += 1
            b[1] += r.d1
        else:
            gates += 1
            s1 += r.d1
            s2 += r.d2
            cc += r.d1 and r.d2
    summary = CountSummary(gates, s1, s2, int(cc))
    return summary, [PhaseBin(ph, g, c) for ph, (g, c) in sorted(bins.items())]


def merge_bins(*parts: Sequence[PhaseBin]) -> list[PhaseBin]:
    """Combine partial bin lists (e.g. from parallel tallies)."""
    acc: dict[float, list[int]] = {}
    for part in parts:
        for b in part:
            slot = acc.setdefault(b.phase, [0, 0])
            slot[0] += b.gates
            slot[1] += b.counts1
    return [PhaseBin(ph, g, c) for ph, (g, c) in sorted(acc.items())]


def estimate_alpha(s: CountSummary) -> AlphaEstimate:
    if s.singles1 <= 0 or s.singles2 <= 0:
        raise EstimationError("insufficient counts: alpha needs nonzero singles on both detectors")
    value = s.coincidences * s.gates / (s.singles1 * s.singles2)
    stderr = value * math.sqrt(1.0 / max(s.coincidences, 1) + 1.0 / s.singles1 + 1.0 / s.singles2)
    return AlphaEstimate(value, stderr, s)


def estimate_visibility_minmax(bins: Sequence[PhaseBin]) -> VisibilityEstimate:
    if len(bins) < 2:
        raise EstimationError("min/max visibility needs at least 2 phase bins")
    if any(b.gates <= 0 for b in bins):
        raise EstimationError("every phase bin needs at least one gate")
    hi = max(bins, key=lambda b: b.rate)
    lo = min(bins, key=lambda b: b.rate)
    M, m = hi.rate, lo.rate
    if M + m == 0:
        raise EstimationError("no detector-1 counts in any phase bin")
    value = (M - m) / (M + m)
    var_M = M * (1 - M) / hi.gates
    var_m = m * (1 - m) / lo.gates
    stderr = 2.0 * math.sqrt(m * m * var_M + M * M * var_m) / (M + m) ** 2
    return VisibilityEstimate(
        min(max(value, 0.0), 1.0), stderr, -hi.phase, 0.5 * (M + m), VisibilityMethod.MIN_MAX, value
    )


def fit_sinusoid(
    phases: Sequence[float], rates: Sequence[float], variances: Optional[Sequence[float]] = None
) -> FringeFit:
    """Ordinary least squares via the normal equations.

    ``cov`` is the sandwich covariance for independent per-point
    ``variances``; zeros when none are given.
    """
    phi = np.asarray(phases, dtype=float)
    y = np.asarray(rates, dtype=float)
    X = np.column_stack([np.ones_like(phi), np.cos(phi), np.sin(phi)])
    if phi.size < 3 or np.linalg.matrix_rank(X) < 3:
        raise EstimationError("degenerate phase grid: the sinusoid fit is singular")
    XtX = X.T @ X
    try:
        coef = np.linalg.solve(XtX, X.T @ y)
        inv = np.linalg.inv(XtX)
    except np.linalg.LinAlgError as exc:
        raise EstimationError("degenerate phase grid: the sinusoid fit is singular") from exc
    if variances is None:
        cov = np.zeros((3, 3))
    else:
        w = np.asarray(variances, dtype=float)
        cov = inv @ (X.T * w) @ X @ inv
    return FringeFit(float(coef[0]), float(coef[1]), float(coef[2]), cov)


def _fit_visibility_stderr(fit: FringeFit) -> float:
    a, b, c, cov = fit.a, fit.b, fit.c, fit.cov
    R = fit.amplitude
    if R == 0.0:
        return math.sqrt(max(cov[1, 1] + cov[2, 2], 0.0) / 2.0) / abs(a)
    grad = np.array([-R / a**2, b / (R * a), c / (R * a)])
    return math.sqrt(max(float(grad @ cov @ grad), 0.0))


def estimate_visibility_fit(bins: Sequence[PhaseBin]) -> VisibilityEstimate:
    if len({b.phase for b in bins}) < 3:
        raise EstimationError("sinusoid fit needs at least 3 distinct phases")
    if any(b.gates <= 0 for b in bins):
        raise EstimationError("every phase bin needs at least one gate")
    rates = [b.rate for b in bins]
    variances = [r * (1 - r) / b.gates for r, b in zip(rates, bins)]
    fit = fit_sinusoid([b.phase for b in bins], rates, variances)
    if fit.a <= 0:
        raise EstimationError("fitted mean rate is not positive")
    raw = fit.visibility
    return VisibilityEstimate(
        min(max(raw, 0.0), 1.0),
        _fit_visibility_stderr(fit),
        fit.phase_offset,
        fit.a,
        VisibilityMethod.SINUSOID_FIT,
        raw,
    )
