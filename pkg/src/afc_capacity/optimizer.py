"""Optimal spin-wave bandwidth and dense parameter sweeps over any formula."""

from __future__ import annotations

import inspect
import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import capacity, gaussian, multiplex
from .errors import AfcError, InvalidParameter, MissingParameter, UnknownTarget
from .model import CapacityReport, check_positive


def optimal_bandwidth_sw(omega: float, delay: float, chi: float,
                         gamma_max: float = math.inf) -> float:
    """Bandwidth maximising the spin-wave capacity, capped at ``gamma_max``.

    The capacity is quadratic in the bandwidth, so the optimum is the
    stationary point ``pi^2 omega^2 delay / (8 chi)``.
    """
    check_positive(omega=omega, delay=delay, chi=chi)
    if not gamma_max > 0:
        raise InvalidParameter("gamma_max", gamma_max, "> 0")
    stationary = math.pi ** 2 * omega ** 2 * delay / (8.0 * chi)
    return min(stationary, gamma_max)


TARGETS: dict[str, Callable] = {
    f.__name__: f for f in (
        capacity.mode_bin_from_bandwidth,
        capacity.fixed_delay_capacity,
        capacity.t2_relative_efficiency,
        capacity.delay_for_efficiency,
        capacity.fixed_delay_capacity_at_efficiency,
        capacity.hsh_transfer_efficiency,
        capacity.hsh_square_duration,
        capacity.spin_wave_capacity,
        capacity.spin_wave_capacity_explicit,
        capacity.spin_wave_capacity_at_efficiency,
        capacity.spin_dephasing_factor,
        capacity.afc_echo_efficiency,
        gaussian.spectral_fwhm,
        gaussian.time_energy_fraction,
        gaussian.bandwidth_ratio,
        gaussian.spectral_energy_fraction,
        multiplex.min_spectral_spacing,
        multiplex.optimal_finesse,
        multiplex.max_echo_efficiency,
        multiplex.repeater_trial_rate,
        optimal_bandwidth_sw,
    )
}

REPORT_COLUMNS = ("n_continuous", "n_floor", "bandwidth_term", "control_term",
                  "relative_efficiency")


@dataclass(frozen=True)
class Axis:
    name: str
    min: float
    max: float
    points: int
    scale: str = "linear"

    def __post_init__(self):
        if not isinstance(self.points, int) or self.points < 2:
            raise InvalidParameter(f"{self.name}.points", self.points, "integer >= 2")
        if self.scale not in ("linear", "log"):
            raise InvalidParameter(f"{self.name}.scale", self.scale, "'linear' or 'log'")
        if self.scale == "log" and not (self.min > 0 and self.max > 0):
            raise InvalidParameter(f"{self.name}.min", self.min, "> 0 on a log axis")

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.min, self.max, self.points)
        return np.linspace(self.min, self.max, self.points)


@dataclass(frozen=True)
class SweepSpec:
    """Up to two swept axes, fixed keyword arguments and a target formula name."""

    target: str
    axes: tuple[Axis, ...]
    fixed: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 2:
            raise InvalidParameter("axes", len(self.axes), "1 or 2 axes")
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names) or set(names) & set(self.fixed):
            raise InvalidParameter("axes", names, "distinct names not also fixed")

    @classmethod
    def from_json_dict(cls, data: dict) -> SweepSpec:
        axes = tuple(Axis(a["name"], float(a["min"]), float(a["max"]), int(a["points"]),
                          a.get("scale", "linear"))
                     for a in data["axes"])
        return cls(data["target"], axes, dict(data.get("fixed", {})))


def resolve_target(name: str) -> Callable:
    try:
        return TARGETS[name]
    except KeyError:
        raise UnknownTarget(f"unknown target {name!r}; known: {sorted(TARGETS)}") from None


def _check_signature(func: Callable, supplied: set[str]) -> None:
    params = inspect.signature(func).parameters
    required = {n for n, p in params.items() if p.default is inspect.Parameter.empty}
    missing = sorted(required - supplied)
    if missing:
        raise MissingParameter(f"{func.__name__} needs {missing}")
    unknown = sorted(supplied - set(params))
    if unknown:
        raise InvalidParameter(unknown[0], None, f"parameter of {func.__name__}")


def evaluate(func: Callable, kwargs: dict[str, Any]) -> dict[str, Any]:
    """Call ``func`` and flatten its result into output columns plus a status."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            result = func(**kwargs)
        except AfcError as exc:
            return {"status": type(exc).__name__}
    if isinstance(result, CapacityReport):
        out = {c: getattr(result, c) for c in REPORT_COLUMNS}
        notes = list(result.warnings)
    else:
        out = {"value": float(result)}
        notes = sorted({w.category.__name__ for w in caught})
    out["status"] = ";".join(notes) if notes else "ok"
    return out


def sweep(spec: SweepSpec) -> tuple[list[str], list[dict[str, Any]]]:
    """Evaluate the target on the full axis grid.

    Rows are row-major (first axis outermost). Returns ``(columns, rows)``.
    """
    func = resolve_target(spec.target)
    _check_signature(func, {a.name for a in spec.axes} | set(spec.fixed))
    grids = [a.values() for a in spec.axes]
    rows = []
    for point in itertools.product(*grids):
        kwargs = dict(spec.fixed)
        kwargs.update({a.name: float(v) for a, v in zip(spec.axes, point)})
        row = {a.name: float(v) for a, v in zip(spec.axes, point)}
        row.update(evaluate(func, kwargs))
        rows.append(row)
    outputs = list(REPORT_COLUMNS) if _returns_report(func) else ["value"]
    columns = [a.name for a in spec.axes] + outputs + ["status"]
    return columns, rows


def _returns_report(func: Callable) -> bool:
    return inspect.signature(func).return_annotation in (CapacityReport, "CapacityReport")

