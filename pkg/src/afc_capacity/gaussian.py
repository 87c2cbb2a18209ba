"""Gaussian input modes: spectral width and energy containment in each domain.

A Gaussian intensity pulse of FWHM ``T`` is assigned a bin ``T_m = kappa*T``
and the comb bandwidth is ``2.5/T_m``. Larger ``kappa`` keeps more energy
inside the time bin and less inside the bandwidth; the two fractions are
equal at :func:`optimal_kappa`. All fractions refer to the untruncated pulse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .capacity import BINS_PER_BANDWIDTH
from .model import _Checks, check_positive

LN2 = math.log(2.0)


@dataclass(frozen=True)
class GaussianMode:
    """Intensity ``amplitude * exp(-4 ln2 (t - center)^2 / fwhm_t^2)``."""

    fwhm_t: float
    center: float = 0.0
    amplitude: float = 1.0

    def __post_init__(self):
        checks = _Checks()
        checks.positive("fwhm_t", self.fwhm_t)
        checks.non_negative("amplitude", self.amplitude)
        checks.raise_if_any()

    def intensity(self, t):
        t = np.asarray(t, dtype=float)
        return self.amplitude * np.exp(-4 * LN2 * (t - self.center) ** 2 / self.fwhm_t ** 2)

    def field(self, t):
        """Field amplitude; its FWHM is sqrt(2) times the intensity FWHM."""
        t = np.asarray(t, dtype=float)
        return math.sqrt(self.amplitude) * np.exp(
            -2 * LN2 * (t - self.center) ** 2 / self.fwhm_t ** 2)

    def power_spectrum(self, f):
        """Power spectrum normalised to 1 at f = 0."""
        f = np.asarray(f, dtype=float)
        return np.exp(-(f * self.fwhm_t * math.pi) ** 2 / LN2)


def spectral_fwhm(fwhm_t: float) -> float:
    """FWHM in Hz of the power spectrum of a Gaussian with intensity FWHM ``fwhm_t``."""
    check_positive(fwhm_t=fwhm_t)
    return 2 * LN2 / (math.pi * fwhm_t)


def time_energy_fraction(kappa: float) -> float:
    """Energy fraction inside a centred bin of ``kappa`` intensity FWHMs."""
    check_positive(kappa=kappa)
    return math.erf(kappa * math.sqrt(LN2))


def bandwidth_ratio(kappa: float) -> float:
    """Comb bandwidth ``2.5/T_m`` over the spectral FWHM of the mode."""
    check_positive(kappa=kappa)
    return BINS_PER_BANDWIDTH * math.pi / (2 * LN2 * kappa)


def spectral_energy_fraction(kappa: float) -> float:
    """Fraction of the power spectrum inside ``|f| <= 1.25 / T_m``."""
    return math.erf(math.sqrt(LN2) * bandwidth_ratio(kappa))


def optimal_kappa() -> float:
    """The kappa at which both energy fractions are equal (fixed point of bandwidth_ratio)."""
    return math.sqrt(BINS_PER_BANDWIDTH * math.pi / (2 * LN2))
