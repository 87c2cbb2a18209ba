"""Discrete Fourier analysis of truncated Gaussian pulse trains.

Used to check the bandwidth rule numerically: a train of modes spaced by
``T_m`` carries modulation at ``+-1/T_m`` and should keep nearly all of its
energy inside ``|f| <= 1.25/T_m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BandExceedsGrid, InvalidParameter, TooFewPeaks, UndersampledTrain
from .model import check_positive

MIN_SAMPLES_PER_BIN = 20
DEFAULT_SAMPLES_PER_BIN = 200
DEFAULT_PAD_FACTOR = 8
# Local maxima weaker than this fraction of the spectrum maximum are ignored
# (truncation ripple, not modulation).
PEAK_RELATIVE_FLOOR = 1e-3


@dataclass(frozen=True, eq=False)
class PulseTrain:
    amplitudes: tuple
    mode_bin_tm: float
    fwhm_t: float
    sample_rate: float
    samples: np.ndarray

    @property
    def dt(self) -> float:
        return 1.0 / self.sample_rate

    @property
    def times(self) -> np.ndarray:
        """Sample instants (bin-symmetric midpoints)."""
        return (np.arange(self.samples.size) + 0.5) * self.dt

    @property
    def duration(self) -> float:
        return len(self.amplitudes) * self.mode_bin_tm

    @property
    def energy(self) -> float:
        return float(np.sum(np.abs(self.samples) ** 2) * self.dt)

    def scaled(self, factor) -> PulseTrain:
        return PulseTrain(tuple(a * factor for a in self.amplitudes), self.mode_bin_tm,
                          self.fwhm_t, self.sample_rate, self.samples * factor)


@dataclass(frozen=True, eq=False)
class PowerSpectrum:
    """Two-sided energy spectral density on an ascending, uniform grid."""

    frequencies: np.ndarray
    power_density: np.ndarray
    resolution: float

    @property
    def total_energy(self) -> float:
        return float(np.sum(self.power_density) * self.resolution)


def synthesize_train(amplitudes, fwhm_t: float, mode_bin_tm: float,
                     sample_rate: float | None = None) -> PulseTrain:
    """Sample a train of Gaussian field pulses, one centred in each bin.

    ``amplitudes`` are field amplitudes (may be complex). ``fwhm_t`` is the
    intensity FWHM, so the field FWHM is ``sqrt(2) * fwhm_t``. Every pulse is
    cut to zero outside its own bin ``[k T_m, (k+1) T_m)``.
    """
    amps = tuple(amplitudes)
    if not amps:
        raise InvalidParameter("amplitudes", amps, "at least one amplitude")
    check_positive(fwhm_t=fwhm_t, mode_bin_tm=mode_bin_tm)
    if sample_rate is None:
        sample_rate = DEFAULT_SAMPLES_PER_BIN / mode_bin_tm
    check_positive(sample_rate=sample_rate)
    if sample_rate * mode_bin_tm < MIN_SAMPLES_PER_BIN * (1 - 1e-12):
        raise UndersampledTrain(
            f"{sample_rate * mode_bin_tm:.3g} samples per bin; need at least "
            f"{MIN_SAMPLES_PER_BIN}")

    n_samples = _count(len(amps) * mode_bin_tm * sample_rate)
    t = (np.arange(n_samples) + 0.5) / sample_rate
    bins = np.minimum(np.floor(t / mode_bin_tm).astype(int), len(amps) - 1)
    offset = t - (bins + 0.5) * mode_bin_tm
    a = np.asarray(amps)
    envelope = np.exp(-2 * math.log(2) * offset ** 2 / fwhm_t ** 2)
    samples = a[bins] * envelope
    return PulseTrain(amps, mode_bin_tm, fwhm_t, sample_rate, samples)


def power_spectrum(train: PulseTrain, pad_factor: int = DEFAULT_PAD_FACTOR) -> PowerSpectrum:
    """Energy spectral density ``|X(f)|^2`` of the zero-padded train.

    Normalised so that ``sum(power_density) * resolution`` equals the train
    energy ``sum(|x|^2) * dt``.
    """
    if int(pad_factor) != pad_factor or pad_factor < 1:
        raise InvalidParameter("pad_factor", pad_factor, "integer >= 1")
    n = train.samples.size * int(pad_factor)
    dt = train.dt
    spectrum = np.fft.fftshift(np.fft.fft(train.samples, n)) * dt
    freqs = np.fft.fftshift(np.fft.fftfreq(n, dt))
    return PowerSpectrum(freqs, np.abs(spectrum) ** 2, 1.0 / (n * dt))


def band_energy_fraction(spectrum: PowerSpectrum, half_width: float) -> float:
    """Fraction of spectral energy with ``|f| <= half_width`` (trapezoidal rule)."""
    check_positive(half_width=half_width)
    f = spectrum.frequencies
    if half_width > max(-f[0], f[-1]) * (1 + 1e-12):
        raise BandExceedsGrid(
            f"half_width {half_width:g} Hz exceeds the grid edge {max(-f[0], f[-1]):g} Hz")
    p = spectrum.power_density
    inside = np.abs(f) <= half_width * (1 + 1e-12)
    total = np.trapezoid(p, f)
    return float(np.trapezoid(p[inside], f[inside]) / total)


def modulation_peaks(spectrum: PowerSpectrum, count: int,
                     relative_floor: float = PEAK_RELATIVE_FLOOR) -> list[float]:
    """Signed frequencies of the ``count`` strongest local maxima away from DC.

    Maxima within one resolution step of 0 Hz, or weaker than
    ``relative_floor`` times the spectrum maximum, are not counted.
    Returned in ascending frequency order.
    """
    if int(count) != count or count < 1:
        raise InvalidParameter("count", count, "integer >= 1")
    idx = _local_maxima(spectrum, relative_floor)
    if len(idx) < count:
        raise TooFewPeaks(f"found {len(idx)} modulation peaks, {count} requested")
    p = spectrum.power_density
    # stable sort on -power keeps ties in frequency order
    strongest = idx[np.argsort(-p[idx], kind="stable")[:count]]
    return sorted(float(spectrum.frequencies[i]) for i in strongest)


def peak_fwhm(spectrum: PowerSpectrum, frequency: float) -> float:
    """Full width at half maximum of the local peak nearest ``frequency``."""
    f = spectrum.frequencies
    p = spectrum.power_density
    i = int(np.argmin(np.abs(f - frequency)))
    # climb to the local maximum
    while 0 < i < f.size - 1 and max(p[i - 1], p[i + 1]) > p[i]:
        i = i - 1 if p[i - 1] > p[i + 1] else i + 1
    half = p[i] / 2
    lo = i
    while lo > 0 and p[lo] > half:
        lo -= 1
    hi = i
    while hi < f.size - 1 and p[hi] > half:
        hi += 1
    if p[lo] > half or p[hi] > half:
        raise TooFewPeaks(f"peak near {frequency:g} Hz has no half-maximum crossing")
    left = _crossing(f, p, lo, lo + 1, half)
    right = _crossing(f, p, hi - 1, hi, half)
    return float(right - left)


def _crossing(f, p, i, j, level):
    return f[i] + (level - p[i]) * (f[j] - f[i]) / (p[j] - p[i])


def _local_maxima(spectrum: PowerSpectrum, relative_floor: float) -> np.ndarray:
    p = spectrum.power_density
    f = spectrum.frequencies
    inner = np.arange(1, p.size - 1)
    is_max = (p[inner] > p[inner - 1]) & (p[inner] >= p[inner + 1])
    idx = inner[is_max]
    keep = (np.abs(f[idx]) > spectrum.resolution * (1 + 1e-9)) & (
        p[idx] >= relative_floor * p.max())
    return idx[keep]


def _count(x: float) -> int:
    r = round(x)
    return int(r) if abs(x - r) < 1e-6 else int(math.ceil(x))
