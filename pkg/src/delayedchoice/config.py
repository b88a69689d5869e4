"""Flat ``key = value`` run configuration.

Example::

    # dotted keys select a section
    mode = pow
    seed = 7
    source.p2 = 0.064
    pow.p_w_given_open = 0.12
    pow.p_w_given_closed = 0.94

Unset keys keep the defaults of :class:`RunConfig`, which describe the
reference experiment. ``source.p1`` defaults to ``1 - p0 - p2``.
"""

from __future__ import annotations

from pathlib import Path
from typing import Callable

from .experiment import Mode, RunConfig
from .models import ConfigError, InterferometerModel, PowParameters, SourceModel
from .qrng import QrngModel
from .timing import ExperimentGeometry


def _count(text: str) -> int:
    return int(text.replace("_", ""))


def _mode(text: str) -> Mode:
    try:
        return Mode(text.lower())
    except ValueError:
        raise ValueError(f"expected qm or pow, got {text!r}") from None


_FLOAT = float
KEYS: dict[str, Callable[[str], object]] = {
    "mode": _mode,
    "seed": _count,
    "pulses_open": _count,
    "pulses_closed_per_phase": _count,
    "phase_points": _count,
    **{f"source.{k}": _FLOAT for k in ("p0", "p1", "p2", "efficiency", "dark1", "dark2")},
    "interferometer.intrinsic_visibility": _FLOAT,
    "interferometer.phase": _FLOAT,
    "pow.p_w_given_open": _FLOAT,
    "pow.p_w_given_closed": _FLOAT,
    "qrng.p_closed": _FLOAT,
    "qrng.persistence": _FLOAT,
    **{
        f"geometry.{k}": _FLOAT
        for k in ("path_length_m", "propagation_time_ns", "switch_time_ns", "path_separation_mm")
    },
}


def _section(values: dict, prefix: str) -> dict:
    n = len(prefix) + 1
    return {k[n:]: v for k, v in values.items() if k.startswith(prefix + ".")}


def parse_config(text: str) -> RunConfig:
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if not sep or not key or not val:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        if key not in KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            values[key] = KEYS[key](val)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key!r}: {exc}") from None

    src = _section(values, "source")
    if "p1" not in src and ("p0" in src or "p2" in src):
        src["p1"] = max(1.0 - src.get("p0", SourceModel.p0) - src.get("p2", SourceModel.p2), 0.0)
    pow_values = _section(values, "pow")
    mode = values.get("mode", Mode.QM)
    pow = None
    if pow_values or mode is Mode.POW:
        for name in ("p_w_given_open", "p_w_given_closed"):
            if name not in pow_values:
                raise ConfigError(f"missing key 'pow.{name}' (required when mode = pow)")
        pow = PowParameters(**pow_values)

    kwargs = {k: values[k] for k in ("seed", "pulses_open", "pulses_closed_per_phase", "phase_points") if k in values}
    return RunConfig(
        mode=mode,
        source=SourceModel(**src),
        interferometer=InterferometerModel(**_section(values, "interferometer")),
        pow=pow,
        qrng=QrngModel(**_section(values, "qrng")),
        geometry=ExperimentGeometry(**_section(values, "geometry")),
        **kwargs,
    )


def load_config(path: str | Path) -> RunConfig:
    return parse_config(Path(path).read_text())
