"""Closed-form temporal capacity and efficiency formulas for AFC memories.

Conventions: frequencies in Hz (natural, not angular), durations in s.
A temporal mode needs a bin of ``2.5 / gamma``; a spin-wave memory loses
the bins occupied by its two control pulses.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from .errors import ControlPulseDominates, ControlPulseWarning, InvalidParameter, ParameterWarning
from .model import CapacityReport, check_fraction, check_non_negative, check_positive

BINS_PER_BANDWIDTH = 2.5
# pi^2 * Ts * Omega^2 / Gamma at which a HSH pulse transfers >= 98%.
HSH_EXPONENT = 4.0
T2_DECAY_FACTOR = 4.0


def mode_bin_from_bandwidth(gamma: float) -> float:
    """Shortest mode bin ``T_m = 2.5 / gamma`` a comb of bandwidth ``gamma`` supports."""
    check_positive(gamma=gamma)
    return BINS_PER_BANDWIDTH / gamma


def fixed_delay_capacity(gamma: float, delay: float,
                         t2: float | None = None) -> CapacityReport:
    """Number of mode bins that fit in the storage delay of a fixed-delay memory.

    If ``t2`` is given the report also carries the coherence-limited relative
    efficiency at this delay.
    """
    check_positive(gamma=gamma, delay=delay)
    n = gamma * delay / BINS_PER_BANDWIDTH
    eta = 1.0 if t2 is None else t2_relative_efficiency(delay, t2)
    return CapacityReport.from_terms(n, 0.0, relative_efficiency=eta)


def t2_relative_efficiency(delay: float, t2: float) -> float:
    """Relative echo efficiency ``exp(-4 delay / T2)`` lost to optical decoherence."""
    check_positive(t2=t2)
    check_non_negative(delay=delay)
    return math.exp(-T2_DECAY_FACTOR * delay / t2)


def delay_for_efficiency(eta: float, t2: float) -> float:
    """Inverse of :func:`t2_relative_efficiency`: the delay giving ``eta``."""
    check_fraction("eta", eta)
    check_positive(t2=t2)
    return t2 / T2_DECAY_FACTOR * math.log(1.0 / eta)


def fixed_delay_capacity_at_efficiency(eta: float, t2: float, gamma: float) -> CapacityReport:
    """Capacity ``ln(1/eta) * gamma * T2 / 10`` at a target relative efficiency."""
    check_fraction("eta", eta)
    check_positive(t2=t2, gamma=gamma)
    n = math.log(1.0 / eta) * gamma * t2 / (T2_DECAY_FACTOR * BINS_PER_BANDWIDTH)
    return CapacityReport.from_terms(n, 0.0, relative_efficiency=eta)


def hsh_transfer_efficiency(ts: float, omega: float, gamma: float) -> float:
    """Population transfer efficiency of a HSH pulse with flat-top duration ``ts``.

    Valid in the adiabatic regime ``gamma > omega``; a ParameterWarning is
    emitted otherwise.
    """
    check_non_negative(ts=ts)
    check_positive(omega=omega, gamma=gamma)
    _warn_adiabatic(omega, gamma)
    return -math.expm1(-math.pi ** 2 * ts * omega ** 2 / gamma)


def hsh_square_duration(omega: float, gamma: float,
                        exponent: float = HSH_EXPONENT) -> float:
    """Flat-top duration at which the transfer exponent equals ``exponent``."""
    check_positive(omega=omega, gamma=gamma)
    check_non_negative(exponent=exponent)
    return exponent * gamma / (math.pi ** 2 * omega ** 2)


def control_pulse_bins(gamma: float, omega: float, chi: float) -> float:
    """Mode bins used by a HSH control pulse sized with the default exponent."""
    if not chi >= 1:
        raise InvalidParameter("chi", chi, ">= 1")
    tc = chi * hsh_square_duration(omega, gamma)
    return tc / mode_bin_from_bandwidth(gamma)


def spin_wave_capacity(gamma: float, delay: float, omega: float,
                       chi: float) -> CapacityReport:
    """Capacity of a spin-wave memory driven by HSH control pulses.

    The storage window ``delay`` minus one control pulse cut-off
    ``chi * 4 gamma / (pi^2 omega^2)``, counted in bins of ``2.5/gamma``.
    Negative results are clamped to zero with a ControlPulseWarning.
    """
    check_positive(gamma=gamma, delay=delay, omega=omega)
    bandwidth_term = gamma * delay / BINS_PER_BANDWIDTH
    control_term = control_pulse_bins(gamma, omega, chi)
    notes = _warn_adiabatic(omega, gamma)
    return _spin_report(bandwidth_term, control_term, notes)


def spin_wave_capacity_explicit(delay: float, tc: float, tm: float) -> CapacityReport:
    """``(delay - tc) / tm`` for a measured control cut-off and mode bin."""
    check_positive(delay=delay, tm=tm)
    check_non_negative(tc=tc)
    if tc >= delay:
        raise ControlPulseDominates(
            f"control cut-off {tc:g} s is not shorter than the delay {delay:g} s")
    return CapacityReport.from_terms(delay / tm, tc / tm)


def spin_wave_capacity_at_efficiency(eta: float, t2: float, gamma: float, omega: float,
                                     chi: float) -> CapacityReport:
    """Spin-wave capacity with the delay set by a target T2-limited efficiency."""
    check_fraction("eta", eta)
    check_positive(t2=t2, gamma=gamma, omega=omega)
    bandwidth_term = (math.log(1.0 / eta) * gamma * t2
                      / (T2_DECAY_FACTOR * BINS_PER_BANDWIDTH))
    control_term = control_pulse_bins(gamma, omega, chi)
    notes = _warn_adiabatic(omega, gamma)
    return _spin_report(bandwidth_term, control_term, notes, relative_efficiency=eta)


def spin_dephasing_factor(t_spin: float, gamma_spin: float) -> float:
    """Gaussian spin-dephasing decay, normalised to 1 at ``t_spin = 0``.

    ``gamma_spin`` is the FWHM of the inhomogeneous spin linewidth.
    """
    check_non_negative(t_spin=t_spin)
    check_positive(gamma_spin=gamma_spin)
    return math.exp(-(math.pi * t_spin * gamma_spin) ** 2 / (2.0 * math.log(2.0)))


def afc_echo_efficiency(od, finesse):
    """Backward-retrieval efficiency of a square-tooth comb.

    ``(1 - exp(-od/F))^2 * sinc^2(pi/F)`` with ``sinc(x) = sin(x)/x``.
    Accepts scalars or numpy arrays (broadcast).
    """
    od_a = np.asarray(od, dtype=float)
    f_a = np.asarray(finesse, dtype=float)
    if not np.all(np.isfinite(od_a) & (od_a >= 0)):
        raise InvalidParameter("od", od, ">= 0")
    if not np.all(np.isfinite(f_a) & (f_a >= 1)):
        raise InvalidParameter("finesse", finesse, ">= 1")
    # np.sinc is the normalised sin(pi x)/(pi x), so sinc(1/F) == sin(pi/F)/(pi/F)
    eta = (-np.expm1(-od_a / f_a)) ** 2 * np.sinc(1.0 / f_a) ** 2
    return float(eta) if eta.ndim == 0 else eta


def _spin_report(bandwidth_term, control_term, notes, relative_efficiency=1.0):
    if bandwidth_term < control_term:
        warnings.warn(f"control pulse needs {control_term:.3g} bins but only "
                      f"{bandwidth_term:.3g} fit in the storage window; capacity set to 0",
                      ControlPulseWarning, stacklevel=3)
        notes = notes + ("ControlPulseDominates",)
    return CapacityReport.from_terms(bandwidth_term, control_term,
                                     relative_efficiency=relative_efficiency,
                                     warnings=notes)


def _warn_adiabatic(omega, gamma) -> tuple[str, ...]:
    if gamma <= omega:
        warnings.warn(f"gamma={gamma:g} Hz <= omega={omega:g} Hz: outside the "
                      "adiabatic regime the transfer formula assumes",
                      ParameterWarning, stacklevel=3)
        return ("AdiabaticRegimeViolated",)
    return ()
