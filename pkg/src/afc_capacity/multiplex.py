"""Spectral and spatial multiplexing budgets and repeater trial rates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .capacity import afc_echo_efficiency
from .errors import InvalidParameter
from .model import CapacityReport, _Checks, check_non_negative, check_positive
from .search import golden_section_max

SPEED_OF_LIGHT = 299_792_458.0  # m/s
PROFILE_SHAPES = ("square", "gaussian")

FINESSE_GRID = (1.0, 50.0, 1000)
FINESSE_TOL = 1e-6


@dataclass(frozen=True)
class InhomogeneousProfile:
    """Absorption profile: full width for ``square``, FWHM for ``gaussian``."""

    shape: str
    width: float
    peak_od: float

    def __post_init__(self):
        checks = _Checks()
        checks.require(self.shape in PROFILE_SHAPES, "shape", self.shape,
                       f"one of {PROFILE_SHAPES}")
        checks.positive("width", self.width)
        checks.non_negative("peak_od", self.peak_od)
        checks.raise_if_any()

    def to_json_dict(self) -> dict:
        return {"shape": self.shape, "width_hz": self.width, "peak_od": self.peak_od}

    @classmethod
    def from_json_dict(cls, data: dict) -> InhomogeneousProfile:
        return cls(data["shape"], data["width_hz"], data["peak_od"])


@dataclass(frozen=True)
class SpectralBudget:
    spacing: float
    centers: tuple[float, ...]
    per_mode_od: tuple[float, ...]
    per_mode_finesse: tuple[float | None, ...]
    per_mode_efficiency: tuple[float, ...]
    average_efficiency: float
    within_fwhm: tuple[bool, ...]

    @property
    def n_modes(self) -> int:
        return len(self.centers)

    def rows(self) -> list[dict]:
        return [
            {"mode_index": i, "center_hz": c, "od": od, "finesse": fin,
             "efficiency": eta, "within_fwhm": inside}
            for i, (c, od, fin, eta, inside) in enumerate(zip(
                self.centers, self.per_mode_od, self.per_mode_finesse,
                self.per_mode_efficiency, self.within_fwhm))
        ]


@dataclass(frozen=True)
class SpatialGrid:
    pitch: float
    area: float

    def __post_init__(self):
        check_positive(pitch=self.pitch, area=self.area)


def min_spectral_spacing(dg: float, de: float, df: float) -> float:
    """Smallest separation ``2(dg + de) + df`` between independent combs.

    When only the combined hyperfine span is known, pass it as ``dg`` and
    ``de = 0``.
    """
    check_non_negative(dg=dg, de=de, df=df)
    return 2.0 * (dg + de) + df


def spectral_capacity(profile: InhomogeneousProfile, spacing: float) -> CapacityReport:
    """Number of combs of the given spacing that fit in the profile width.

    For a Gaussian profile the FWHM is used as the window; this is a heuristic
    and the report carries a ``GaussianWindowHeuristic`` note.
    """
    check_positive(spacing=spacing)
    notes = ("GaussianWindowHeuristic",) if profile.shape == "gaussian" else ()
    return CapacityReport.from_terms(profile.width / spacing, warnings=notes)


def od_at_detuning(profile: InhomogeneousProfile, f):
    """Optical depth at detuning ``f`` (Hz) from the profile centre."""
    f_a = np.asarray(f, dtype=float)
    if profile.shape == "gaussian":
        od = profile.peak_od * np.exp(-4 * math.log(2) * f_a ** 2 / profile.width ** 2)
    else:
        od = np.where(np.abs(f_a) <= profile.width / 2, profile.peak_od, 0.0)
    return float(od) if od.ndim == 0 else od


def optimal_finesse(od: float) -> float:
    """Finesse maximising the square-tooth echo efficiency at optical depth ``od``.

    Coarse grid on F in [1, 50], then golden-section search in the bracket
    around the best grid point.
    """
    check_positive(od=od)
    return _optimal_finesse(float(od))


@lru_cache(maxsize=4096)
def _optimal_finesse(od: float) -> float:
    lo, hi, n = FINESSE_GRID
    grid = np.linspace(lo, hi, n)
    i = int(np.argmax(afc_echo_efficiency(od, grid)))
    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, n - 1)]
    f_star, _ = golden_section_max(lambda F: afc_echo_efficiency(od, F), a, b,
                                   tol=FINESSE_TOL)
    return f_star


def max_echo_efficiency(od: float) -> float:
    """Echo efficiency at the optimal finesse (0 for zero optical depth)."""
    if od == 0:
        return 0.0
    return afc_echo_efficiency(od, optimal_finesse(od))


def mode_centers(n_modes: int, spacing: float) -> list[float]:
    """Symmetric placement about 0: a centre mode for odd counts, straddling for even."""
    if int(n_modes) != n_modes or n_modes < 1:
        raise InvalidParameter("n_modes", n_modes, "integer >= 1")
    check_positive(spacing=spacing)
    n = int(n_modes)
    return [(k - (n - 1) / 2) * spacing for k in range(n)]


def spectral_efficiency_budget(profile: InhomogeneousProfile, dg: float, de: float,
                               df: float, n_modes: int) -> SpectralBudget:
    """Per-mode optimal echo efficiency for ``n_modes`` combs packed about line centre."""
    spacing = min_spectral_spacing(dg, de, df)
    if spacing <= 0:
        raise InvalidParameter("spacing", spacing, "2(dg+de)+df > 0")
    centers = mode_centers(n_modes, spacing)
    ods, fins, etas = [], [], []
    for c in centers:
        od = od_at_detuning(profile, c)
        ods.append(od)
        if od > 0:
            fin = optimal_finesse(od)
            fins.append(fin)
            etas.append(afc_echo_efficiency(od, fin))
        else:
            fins.append(None)
            etas.append(0.0)
    half = profile.width / 2
    inside = tuple(abs(c) <= half for c in centers)
    return SpectralBudget(spacing, tuple(centers), tuple(ods), tuple(fins), tuple(etas),
                          math.fsum(etas) / len(etas), inside)


def spatial_capacity(grid: SpatialGrid) -> CapacityReport:
    """Sites on a square lattice of the given pitch covering ``area``."""
    return CapacityReport.from_terms(grid.area / grid.pitch ** 2)


def total_budget(*components) -> CapacityReport:
    """Product of the floored component counts (CapacityReports or integers)."""
    if not components:
        raise InvalidParameter("components", components, "at least one")
    total = 1
    for c in components:
        count = c.n_floor if isinstance(c, CapacityReport) else c
        if int(count) != count or count < 0:
            raise InvalidParameter("component", c, "non-negative integer count")
        total *= int(count)
    return CapacityReport(float(total), total, False, float(total))


def communication_time(link_length: float, refractive_index: float) -> float:
    check_positive(link_length=link_length, refractive_index=refractive_index)
    return refractive_index * link_length / SPEED_OF_LIGHT


def repeater_trial_rate(link_length: float, refractive_index: float,
                        n_modes: int = 1) -> float:
    """Entanglement trial rate ``n_modes / tau_comm`` of one elementary link."""
    check_positive(n_modes=n_modes)
    return n_modes / communication_time(link_length, refractive_index)
