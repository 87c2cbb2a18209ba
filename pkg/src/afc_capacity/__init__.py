"""Multimode capacity of atomic-frequency-comb quantum memories.

Closed-form capacity models for fixed-delay and spin-wave storage,
Gaussian mode-shape trade-offs, FFT checks of pulse-train bandwidth,
spectral/spatial multiplexing budgets, a materials database and a
parameter-sweep optimizer.
"""

from .capacity import (
    afc_echo_efficiency,
    control_pulse_bins,
    delay_for_efficiency,
    fixed_delay_capacity,
    fixed_delay_capacity_at_efficiency,
    hsh_square_duration,
    hsh_transfer_efficiency,
    mode_bin_from_bandwidth,
    spin_dephasing_factor,
    spin_wave_capacity,
    spin_wave_capacity_at_efficiency,
    spin_wave_capacity_explicit,
    t2_relative_efficiency,
)
from .errors import (
    AfcError,
    BandExceedsGrid,
    ControlPulseDominates,
    ControlPulseWarning,
    InvalidParameter,
    MissingParameter,
    NoData,
    NonPositiveLinewidth,
    OutOfRange,
    ParameterWarning,
    TooFewPeaks,
    UndersampledTrain,
    UnknownCase,
    UnknownMaterial,
    UnknownTarget,
    ValidationError,
)
from .gaussian import (
    GaussianMode,
    bandwidth_ratio,
    optimal_kappa,
    spectral_energy_fraction,
    spectral_fwhm,
    time_energy_fraction,
)
from .materials import (
    IsdMeasurement,
    MaterialRecord,
    T2Value,
    excitation_density,
    isd_corrected_t2,
    load_materials,
    lookup,
    registry,
    t2_lookup,
)
from .model import (
    AfcParams,
    CapacityReport,
    ControlPulseParams,
    ModeShape,
    SpinParams,
    from_json_dict,
    to_json_dict,
    validate,
)
from .multiplex import (
    InhomogeneousProfile,
    SpatialGrid,
    SpectralBudget,
    communication_time,
    max_echo_efficiency,
    min_spectral_spacing,
    optimal_finesse,
    repeater_trial_rate,
    spatial_capacity,
    spectral_capacity,
    spectral_efficiency_budget,
    total_budget,
)
from .optimizer import Axis, SweepSpec, optimal_bandwidth_sw, sweep
from .reproduce import reproduce
from .search import golden_section_max
from .spectral import (
    PowerSpectrum,
    PulseTrain,
    band_energy_fraction,
    modulation_peaks,
    peak_fwhm,
    power_spectrum,
    synthesize_train,
)

__version__ = "0.1.0"
