"""Domain types for AFC memory modelling.

Every frequency is a natural frequency in Hz (never rad/s) and every
duration is in seconds. The comb spacing is stored as the storage delay
``1/spacing`` because that is the quantity experiments quote.

All types are frozen dataclasses that validate on construction; JSON
(de)serialisation uses snake_case keys carrying an explicit unit suffix.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, fields
from typing import Any

from .errors import InvalidParameter, ParameterWarning, ValidationError

SINGLE_MODE_TEETH = 2.5
KAPPA_WINDOW = (2.0, 2.0 * math.sqrt(2.0))
# An extra mode is reported when the continuous count is this close (in
# mode bins) to the next integer.
NEAR_INTEGER_THRESHOLD = 0.15
_SNAP_RTOL = 1e-12


class _Checks:
    """Collects constraint violations so all of them can be reported."""

    def __init__(self):
        self.errors: list[InvalidParameter] = []

    def require(self, ok: bool, name: str, value, constraint: str) -> None:
        if not ok:
            self.errors.append(InvalidParameter(name, value, constraint))

    def positive(self, name: str, value) -> None:
        self.require(_finite(value) and value > 0, name, value, "> 0")

    def non_negative(self, name: str, value) -> None:
        self.require(_finite(value) and value >= 0, name, value, ">= 0")

    def raise_if_any(self) -> None:
        if len(self.errors) == 1:
            raise self.errors[0]
        if self.errors:
            raise ValidationError(self.errors)


def _finite(value) -> bool:
    try:
        return math.isfinite(value)
    except TypeError:
        return False


def check_positive(**values: float) -> None:
    """Raise InvalidParameter for every argument that is not strictly positive."""
    checks = _Checks()
    for name, value in values.items():
        checks.positive(name, value)
    checks.raise_if_any()


def check_non_negative(**values: float) -> None:
    checks = _Checks()
    for name, value in values.items():
        checks.non_negative(name, value)
    checks.raise_if_any()


def check_fraction(name: str, value: float) -> None:
    """Require 0 < value < 1."""
    if not (_finite(value) and 0 < value < 1):
        raise InvalidParameter(name, value, "0 < value < 1")


@dataclass(frozen=True)
class AfcParams:
    """Comb bandwidth, storage delay and, optionally, finesse, peak OD and T2."""

    bandwidth_gamma: float
    delay: float
    optical_t2: float | None = None
    finesse: float | None = None
    peak_od: float | None = None

    def __post_init__(self):
        checks = _Checks()
        checks.positive("bandwidth_gamma", self.bandwidth_gamma)
        checks.positive("delay", self.delay)
        if self.optical_t2 is not None:
            checks.positive("optical_t2", self.optical_t2)
        if self.finesse is not None:
            checks.require(_finite(self.finesse) and self.finesse >= 1,
                           "finesse", self.finesse, ">= 1")
        if self.peak_od is not None:
            checks.non_negative("peak_od", self.peak_od)
        if not checks.errors:
            checks.require(self.n_tooth >= 1, "n_tooth", self.n_tooth,
                           "bandwidth_gamma * delay >= 1")
        checks.raise_if_any()
        if self.n_tooth < SINGLE_MODE_TEETH:
            warnings.warn(f"only {self.n_tooth:g} comb teeth; fewer than "
                          f"{SINGLE_MODE_TEETH} cannot hold a single mode",
                          ParameterWarning, stacklevel=3)

    @classmethod
    def from_spacing(cls, bandwidth_gamma: float, spacing: float, **kwargs) -> AfcParams:
        check_positive(spacing=spacing)
        return cls(bandwidth_gamma, 1.0 / spacing, **kwargs)

    @property
    def spacing(self) -> float:
        """Tooth spacing in Hz."""
        return 1.0 / self.delay

    @property
    def n_tooth(self) -> float:
        return self.bandwidth_gamma * self.delay


@dataclass(frozen=True)
class ControlPulseParams:
    """Hyperbolic-square-hyperbolic control pulse.

    ``chi`` is the ratio of the total cut-off duration to the flat-top part.
    """

    rabi_omega: float
    square_duration_ts: float
    chi: float = 1.0

    def __post_init__(self):
        checks = _Checks()
        checks.positive("rabi_omega", self.rabi_omega)
        checks.positive("square_duration_ts", self.square_duration_ts)
        checks.require(_finite(self.chi) and self.chi >= 1, "chi", self.chi, ">= 1")
        checks.raise_if_any()

    @classmethod
    def from_cutoff(cls, rabi_omega: float, square_duration_ts: float,
                    cutoff_tc: float) -> ControlPulseParams:
        check_positive(square_duration_ts=square_duration_ts, cutoff_tc=cutoff_tc)
        return cls(rabi_omega, square_duration_ts, cutoff_tc / square_duration_ts)

    @property
    def cutoff_tc(self) -> float:
        return self.chi * self.square_duration_ts


@dataclass(frozen=True)
class ModeShape:
    """Input mode with intensity FWHM ``fwhm_t`` truncated to ``mode_bin_tm``."""

    fwhm_t: float
    mode_bin_tm: float
    shape: str = "gaussian"

    def __post_init__(self):
        checks = _Checks()
        checks.positive("fwhm_t", self.fwhm_t)
        checks.positive("mode_bin_tm", self.mode_bin_tm)
        checks.require(self.shape == "gaussian", "shape", self.shape, "one of {'gaussian'}")
        checks.raise_if_any()
        lo, hi = KAPPA_WINDOW
        if self.kappa < lo:
            warnings.warn(f"kappa below 2 ({self.kappa:g})", ParameterWarning, stacklevel=3)
        elif self.kappa > hi:
            warnings.warn(f"kappa above 2*sqrt(2) ({self.kappa:g})", ParameterWarning,
                          stacklevel=3)

    @classmethod
    def from_kappa(cls, fwhm_t: float, kappa: float) -> ModeShape:
        check_positive(kappa=kappa)
        return cls(fwhm_t, kappa * fwhm_t)

    @property
    def kappa(self) -> float:
        return self.mode_bin_tm / self.fwhm_t


@dataclass(frozen=True)
class SpinParams:
    spin_linewidth: float
    spin_storage_time: float

    def __post_init__(self):
        checks = _Checks()
        checks.positive("spin_linewidth", self.spin_linewidth)
        checks.positive("spin_storage_time", self.spin_storage_time)
        checks.raise_if_any()


@dataclass(frozen=True)
class CapacityReport:
    """A mode count with its integer part and the terms that produced it.

    ``bandwidth_term`` is the number of mode bins in the storage window and
    ``control_term`` the number consumed by control pulses;
    ``n_continuous = max(bandwidth_term - control_term, 0)``.
    """

    n_continuous: float
    n_floor: int
    near_integer_flag: bool
    bandwidth_term: float
    control_term: float = 0.0
    relative_efficiency: float = 1.0
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        checks = _Checks()
        checks.non_negative("n_continuous", self.n_continuous)
        checks.require(
            _finite(self.n_continuous)
            and self.n_floor <= self.n_continuous < self.n_floor + 1,
            "n_floor", self.n_floor, "n_floor <= n_continuous < n_floor + 1")
        checks.require(_finite(self.relative_efficiency)
                       and 0 < self.relative_efficiency <= 1,
                       "relative_efficiency", self.relative_efficiency, "in (0, 1]")
        checks.raise_if_any()

    @classmethod
    def from_terms(cls, bandwidth_term: float, control_term: float = 0.0,
                   relative_efficiency: float = 1.0,
                   warnings: tuple[str, ...] = ()) -> CapacityReport:
        n = _snap(bandwidth_term - control_term)
        if n < 0:
            n = 0.0
        floor = math.floor(n)
        near = (floor + 1 - n) <= NEAR_INTEGER_THRESHOLD
        return cls(n, floor, near, bandwidth_term, control_term,
                   relative_efficiency, tuple(warnings))

    @property
    def reported(self) -> int:
        """Mode count after applying the near-integer allowance."""
        return self.n_floor + 1 if self.near_integer_flag else self.n_floor

    @property
    def clamped(self) -> bool:
        return self.bandwidth_term - self.control_term < 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "n_continuous": self.n_continuous,
            "n_floor": self.n_floor,
            "n_reported": self.reported,
            "near_integer_flag": self.near_integer_flag,
            "bandwidth_term": self.bandwidth_term,
            "control_term": self.control_term,
            "relative_efficiency": self.relative_efficiency,
            "warnings": list(self.warnings),
        }


def _snap(x: float) -> float:
    """Round values that differ from an integer only by float noise."""
    r = round(x)
    if abs(x - r) <= _SNAP_RTOL * max(1.0, abs(x)):
        return float(r)
    return x


def validate(value):
    """Re-check the invariants of a domain value and return it unchanged.

    Raises InvalidParameter (a ValidationError when several constraints fail).
    """
    if not hasattr(value, "__dataclass_fields__"):
        raise TypeError(f"cannot validate {type(value).__name__}")
    kwargs = {f.name: getattr(value, f.name) for f in fields(value) if f.init}
    type(value)(**kwargs)
    return value


# -- JSON schema ------------------------------------------------------------

_SCHEMA: dict[type, dict[str, str]] = {
    AfcParams: {
        "bandwidth_gamma": "bandwidth_gamma_hz",
        "delay": "delay_s",
        "optical_t2": "optical_t2_s",
        "finesse": "finesse",
        "peak_od": "peak_od",
    },
    ControlPulseParams: {
        "rabi_omega": "rabi_omega_hz",
        "square_duration_ts": "square_duration_s",
        "chi": "chi",
    },
    ModeShape: {
        "fwhm_t": "fwhm_s",
        "mode_bin_tm": "mode_bin_s",
        "shape": "shape",
    },
    SpinParams: {
        "spin_linewidth": "spin_linewidth_hz",
        "spin_storage_time": "spin_storage_time_s",
    },
}


def json_keys(cls: type) -> dict[str, str]:
    """Attribute name -> JSON key for a serialisable domain type."""
    return dict(_SCHEMA[cls])


def to_json_dict(value) -> dict[str, Any]:
    keys = _SCHEMA[type(value)]
    out = {key: getattr(value, attr) for attr, key in keys.items()}
    return {k: v for k, v in out.items() if v is not None}


def from_json_dict(cls: type, data: dict[str, Any]):
    keys = _SCHEMA[cls]
    reverse = {key: attr for attr, key in keys.items()}
    unknown = sorted(set(data) - set(reverse))
    if unknown:
        raise InvalidParameter(unknown[0], data[unknown[0]],
                               f"known keys for {cls.__name__}: {sorted(reverse)}")
    return cls(**{reverse[k]: v for k, v in data.items()})
