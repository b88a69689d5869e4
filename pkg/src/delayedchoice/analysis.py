"""Deciding whether a particle-or-wave theory can account for (V, alpha).

Under such a theory a pulse that behaves as a particle shows no fringe, so
the visibility is at most the wave fraction in the closed configuration;
and a wave pulse has alpha of at least one, so alpha is at least the wave
fraction in the open configuration. Without information about the choice
both fractions are equal, which forces ``V <= alpha``. When that fails, the
pulse must have "guessed" the configuration, and Bayes' rule with equal
priors on the two configurations bounds how often.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .models import PowParameters

EXPERIMENT_POINT = (0.94, 0.12)


class UndefinedBoundError(ValueError):
    pass


class InfeasibleError(ValueError):
    pass


@dataclass(frozen=True)
class MeasuredParameters:
    V: float
    alpha: float
    V_err: float = 0.0
    alpha_err: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.V <= 1.0:
            raise ValueError(f"V must lie in [0, 1], got {self.V!r}")
        if self.alpha < 0.0:
            raise ValueError(f"alpha must be non-negative, got {self.alpha!r}")
        if self.V_err < 0.0 or self.alpha_err < 0.0:
            raise ValueError("uncertainties must be non-negative")


@dataclass(frozen=True)
class BayesBounds:
    p_c_given_w_min: float
    p_o_given_p_min: float
    symmetric_guess_min: float


class Verdict(enum.Enum):
    WAVE_OR_PARTICLE_COMPATIBLE = "WaveOrParticleCompatible"
    REQUIRES_WAVE_AND_PARTICLE_OR_LEAKAGE = "RequiresWaveAndParticle_or_Leakage"


@dataclass(frozen=True)
class TheoryVerdict:
    verdict: Verdict
    bounds: Optional[BayesBounds]
    notes: str


def pow_compatible(m: MeasuredParameters) -> bool:
    return m.V <= m.alpha


def bayes_lower_bounds(m: MeasuredParameters) -> BayesBounds:
    """Lower bounds on P(closed | wave) and P(open | particle).

    For alpha > 1 the open-given-particle bound is negative and reported as 0.
    """
    V, a = m.V, m.alpha
    if V + a <= 0.0:
        raise UndefinedBoundError("undefined bound: V + alpha must be positive")
    if 2.0 - V - a <= 0.0:
        raise UndefinedBoundError("undefined bound: 2 - V - alpha must be positive")
    p_cw = V / (V + a)
    p_op = max((1.0 - a) / (2.0 - V - a), 0.0)
    return BayesBounds(p_cw, p_op, max(p_cw, p_op))


def conditionals(pow: PowParameters) -> tuple[float, float]:
    """Exact (P(closed | wave), P(open | particle)) for a theory with equal priors."""
    po, pc = pow.p_w_given_open, pow.p_w_given_closed
    p_cw = pc / (po + pc) if po + pc > 0 else float("nan")
    p_op = (1.0 - po) / (2.0 - po - pc) if po + pc < 2 else float("nan")
    return p_cw, p_op


def _conclusion(bounds: BayesBounds, qrng_predictability: Optional[float]) -> str:
    g = bounds.symmetric_guess_min
    lines = [
        f"a particle-or-wave pulse would have to anticipate the configuration "
        f"with probability >= {g:.3f} (P(closed|wave) >= {bounds.p_c_given_w_min:.3f}, "
        f"P(open|particle) >= {bounds.p_o_given_p_min:.3f})",
    ]
    if qrng_predictability is not None:
        rel = ">" if g > qrng_predictability else "<="
        lines.append(
            f"required guess rate {g:.3f} {rel} QRNG predictability {qrng_predictability:.3f} "
            "(model-defined predictability)"
        )
    lines += [
        "remaining explanations:",
        "  (1) light described by a wave-and-particle theory such as quantum mechanics",
        "  (2) a particle-or-wave theory with superluminal signalling from the choice to the pulse",
        f"  (3) a particle-or-wave theory with a choice generator predictable at >= {g:.1%}",
    ]
    return "\n".join(lines)


def classify_theory(
    m: MeasuredParameters, sigmas: float = 3.0, qrng_predictability: Optional[float] = None
) -> TheoryVerdict:
    if sigmas < 0:
        raise ValueError("sigmas must be non-negative")
    if m.V - sigmas * m.V_err <= m.alpha + sigmas * m.alpha_err:
        return TheoryVerdict(
            Verdict.WAVE_OR_PARTICLE_COMPATIBLE,
            None,
            f"V = {m.V:.4f} is not above alpha = {m.alpha:.4f} at {sigmas:g} sigma; "
            "a particle-or-wave theory without leakage can reproduce the data",
        )
    bounds = bayes_lower_bounds(m)
    return TheoryVerdict(
        Verdict.REQUIRES_WAVE_AND_PARTICLE_OR_LEAKAGE, bounds, _conclusion(bounds, qrng_predictability)
    )


def pow_match(m: MeasuredParameters) -> PowParameters:
    """Extremal particle-or-wave theory reproducing (V, alpha) in expectation."""
    if m.alpha > 1.0:
        raise InfeasibleError(f"no particle-or-wave match: alpha = {m.alpha} exceeds 1")
    return PowParameters(p_w_given_open=m.alpha, p_w_given_closed=m.V)


@dataclass(frozen=True)
class RegionPoint:
    V: float
    alpha: float
    compatible: bool


@dataclass(frozen=True)
class RegionGrid:
    points: list[RegionPoint]
    experiment: RegionPoint

    @property
    def n_compatible(self) -> int:
        return sum(p.compatible for p in self.points)


def exclusion_region(grid_points_per_axis: int, experiment=EXPERIMENT_POINT) -> RegionGrid:
    n = grid_points_per_axis
    if n < 2:
        raise ValueError("grid_points_per_axis must be at least 2")
    axis = [i / (n - 1) for i in range(n)]
    points = [
        RegionPoint(V, a, pow_compatible(MeasuredParameters(V, a))) for V in axis for a in axis
    ]
    ev, ea = experiment
    return RegionGrid(points, RegionPoint(ev, ea, pow_compatible(MeasuredParameters(ev, ea))))
