"""Material constants and coherence-time data for rare-earth doped crystals.

Built-in records live in ``data/materials.json``; user files use the same
schema and shadow built-ins of the same name.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import InvalidParameter, NoData, NonPositiveLinewidth, OutOfRange, UnknownMaterial
from .model import _Checks, check_non_negative
from .multiplex import InhomogeneousProfile

# Excitation density prefactor, for I in W/cm^2, tau in us and alpha in 1/cm.
ISD_DENSITY_CONSTANT = 3e12
OD_CONSISTENCY_RTOL = 0.01
KINDS = ("PE", "AFC")


@dataclass(frozen=True)
class T2Row:
    temperature: float
    pe_t2: float
    pe_t2_err: float
    afc_t2: float | None = None
    afc_t2_err: float | None = None

    def value(self, kind: str) -> tuple[float | None, float | None]:
        if kind == "PE":
            return self.pe_t2, self.pe_t2_err
        return self.afc_t2, self.afc_t2_err


@dataclass(frozen=True)
class T2Value:
    value: float
    uncertainty: float
    interpolated: bool = False


@dataclass(frozen=True)
class MaterialRecord:
    name: str
    max_afc_bandwidth: float
    hyperfine_span_total: float | None = None
    hyperfine_span_ground: float | None = None
    hyperfine_span_excited: float | None = None
    feature_width: float | None = None
    inhomogeneous: InhomogeneousProfile | None = None
    absorption_coefficient: float | None = None
    crystal_length: float | None = None
    t2_table: tuple[T2Row, ...] = ()
    comment: str = ""

    def __post_init__(self):
        checks = _Checks()
        checks.positive("max_afc_bandwidth", self.max_afc_bandwidth)
        for attr in ("hyperfine_span_total", "hyperfine_span_ground",
                     "hyperfine_span_excited", "feature_width",
                     "absorption_coefficient", "crystal_length"):
            value = getattr(self, attr)
            if value is not None:
                checks.non_negative(attr, value)
        split = (self.hyperfine_span_ground, self.hyperfine_span_excited)
        if None not in split and self.hyperfine_span_total is not None:
            checks.require(math.isclose(sum(split), self.hyperfine_span_total, rel_tol=1e-9),
                           "hyperfine_span_total", self.hyperfine_span_total,
                           "ground + excited")
        if (self.inhomogeneous is not None and self.absorption_coefficient is not None
                and self.crystal_length is not None):
            od = self.absorption_coefficient * self.crystal_length
            checks.require(math.isclose(od, self.inhomogeneous.peak_od,
                                        rel_tol=OD_CONSISTENCY_RTOL),
                           "inhomogeneous.peak_od", self.inhomogeneous.peak_od,
                           f"alpha * L = {od:g} within 1%")
        temps = [r.temperature for r in self.t2_table]
        checks.require(temps == sorted(temps) and len(set(temps)) == len(temps),
                       "t2_table", temps, "strictly increasing temperatures")
        for r in self.t2_table:
            checks.positive(f"pe_t2@{r.temperature}K", r.pe_t2)
            if r.afc_t2 is not None:
                checks.positive(f"afc_t2@{r.temperature}K", r.afc_t2)
        checks.raise_if_any()

    @property
    def hyperfine_span(self) -> float | None:
        """Delta_g + Delta_e, from the combined value or the two parts."""
        if self.hyperfine_span_total is not None:
            return self.hyperfine_span_total
        if None in (self.hyperfine_span_ground, self.hyperfine_span_excited):
            return None
        return self.hyperfine_span_ground + self.hyperfine_span_excited

    @property
    def optical_depth(self) -> float | None:
        if self.absorption_coefficient is not None and self.crystal_length is not None:
            return self.absorption_coefficient * self.crystal_length
        if self.inhomogeneous is not None:
            return self.inhomogeneous.peak_od
        return None

    @classmethod
    def from_json_dict(cls, data: dict[str, Any]) -> MaterialRecord:
        inhom = data.get("inhomogeneous")
        rows = tuple(
            T2Row(r["temperature_k"], r["pe_t2_s"], r["pe_t2_err_s"],
                  r.get("afc_t2_s"), r.get("afc_t2_err_s"))
            for r in data.get("t2_table", ()))
        return cls(
            name=data["name"],
            max_afc_bandwidth=data["max_afc_bandwidth_hz"],
            hyperfine_span_total=data.get("hyperfine_span_total_hz"),
            hyperfine_span_ground=data.get("hyperfine_span_ground_hz"),
            hyperfine_span_excited=data.get("hyperfine_span_excited_hz"),
            feature_width=data.get("feature_width_hz"),
            inhomogeneous=InhomogeneousProfile.from_json_dict(inhom) if inhom else None,
            absorption_coefficient=data.get("absorption_coefficient_per_m"),
            crystal_length=data.get("crystal_length_m"),
            t2_table=rows,
            comment=data.get("comment", ""),
        )

    def to_json_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "name": self.name,
            "max_afc_bandwidth_hz": self.max_afc_bandwidth,
            "hyperfine_span_total_hz": self.hyperfine_span_total,
            "hyperfine_span_ground_hz": self.hyperfine_span_ground,
            "hyperfine_span_excited_hz": self.hyperfine_span_excited,
            "feature_width_hz": self.feature_width,
            "inhomogeneous": self.inhomogeneous.to_json_dict() if self.inhomogeneous else None,
            "absorption_coefficient_per_m": self.absorption_coefficient,
            "crystal_length_m": self.crystal_length,
            "comment": self.comment,
        }
        out = {k: v for k, v in out.items() if v is not None and v != ""}
        if self.t2_table:
            out["t2_table"] = [_row_dict(r) for r in self.t2_table]
        return out


def _row_dict(r: T2Row) -> dict[str, float]:
    d = {"temperature_k": r.temperature, "pe_t2_s": r.pe_t2, "pe_t2_err_s": r.pe_t2_err}
    if r.afc_t2 is not None:
        d["afc_t2_s"] = r.afc_t2
        d["afc_t2_err_s"] = r.afc_t2_err
    return d


@dataclass(frozen=True)
class IsdMeasurement:
    """One photon-echo linewidth measurement with its ISD contribution.

    Units follow the empirical density formula: W/cm^2, us and 1/cm.
    """

    intensity: float
    pulse_duration: float
    absorption_coefficient: float
    homogeneous_linewidth: float
    isd_linewidth: float = 0.0

    def __post_init__(self):
        checks = _Checks()
        for attr in ("intensity", "pulse_duration", "absorption_coefficient",
                     "homogeneous_linewidth", "isd_linewidth"):
            checks.non_negative(attr, getattr(self, attr))
        checks.require(self.isd_linewidth <= self.homogeneous_linewidth, "isd_linewidth",
                       self.isd_linewidth, "<= homogeneous_linewidth")
        checks.raise_if_any()

    @property
    def excitation_density(self) -> float:
        return excitation_density(self.intensity, self.pulse_duration,
                                  self.absorption_coefficient)

    @property
    def corrected_t2(self) -> float:
        return isd_corrected_t2(self.homogeneous_linewidth, self.isd_linewidth)


def excitation_density(intensity: float, duration: float, alpha: float) -> float:
    """``3e12 * I * tau * alpha`` with I in W/cm^2, tau in us, alpha in 1/cm."""
    check_non_negative(intensity=intensity, duration=duration, alpha=alpha)
    return ISD_DENSITY_CONSTANT * intensity * duration * alpha


def isd_corrected_t2(gamma_h: float, gamma_isd: float) -> float:
    """T2 = 1/(pi * Gamma_0) after removing the ISD broadening from Gamma_h."""
    check_non_negative(gamma_isd=gamma_isd)
    if not gamma_h > gamma_isd:
        raise NonPositiveLinewidth(
            f"intrinsic linewidth {gamma_h:g} - {gamma_isd:g} Hz is not positive")
    return 1.0 / (math.pi * (gamma_h - gamma_isd))


def t2_lookup(record: MaterialRecord, temperature: float, kind: str = "PE") -> T2Value:
    """Coherence time at ``temperature`` from the record's table.

    Exact at tabulated temperatures, linear in temperature between them
    (value and uncertainty alike). Rows without an entry of ``kind`` are
    skipped for interpolation but raise NoData when hit exactly.
    """
    if kind not in KINDS:
        raise InvalidParameter("kind", kind, f"one of {KINDS}")
    table = record.t2_table
    if not table:
        raise NoData(f"{record.name} has no coherence-time table")
    lo, hi = table[0].temperature, table[-1].temperature
    if not lo <= temperature <= hi:
        raise OutOfRange(f"{temperature} K outside tabulated range [{lo}, {hi}] K")
    for row in table:
        if row.temperature == temperature:
            value, err = row.value(kind)
            if value is None:
                raise NoData(f"no {kind} T2 for {record.name} at {temperature} K")
            return T2Value(value, err)
    rows = [r for r in table if r.value(kind)[0] is not None]
    below = [r for r in rows if r.temperature < temperature]
    above = [r for r in rows if r.temperature > temperature]
    if not below or not above:
        raise NoData(f"no {kind} T2 bracketing {temperature} K for {record.name}")
    a, b = below[-1], above[0]
    w = (temperature - a.temperature) / (b.temperature - a.temperature)
    (va, ea), (vb, eb) = a.value(kind), b.value(kind)
    return T2Value(va + w * (vb - va), ea + w * (eb - ea), interpolated=True)


def load_materials(path: str | Path) -> dict[str, MaterialRecord]:
    """Read a materials JSON file (``{"materials": [...]}`` or a bare list)."""
    with open(path, encoding="utf-8") as fh:
        return _parse(json.load(fh))


def _parse(data) -> dict[str, MaterialRecord]:
    items = data["materials"] if isinstance(data, dict) else data
    records = [MaterialRecord.from_json_dict(d) for d in items]
    return {r.name: r for r in records}


def builtin_materials() -> dict[str, MaterialRecord]:
    text = resources.files(__package__).joinpath("data/materials.json").read_text("utf-8")
    return _parse(json.loads(text))


def registry(user_path: str | Path | None = None) -> dict[str, MaterialRecord]:
    """Built-in records, shadowed by those in ``user_path`` if given."""
    records = builtin_materials()
    if user_path:
        records.update(load_materials(user_path))
    return records


def builtin(name: str) -> MaterialRecord:
    return lookup(name)


def lookup(name: str, user_path: str | Path | None = None) -> MaterialRecord:
    records = registry(user_path)
    try:
        return records[name]
    except KeyError:
        raise UnknownMaterial(f"unknown material {name!r}; known: {sorted(records)}") from None
