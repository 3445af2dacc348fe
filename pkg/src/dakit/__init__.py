"""Distributed amplifier design toolkit.

Sizing of the artificial gate/drain lines around a transistor's parasitic
capacitances, microstrip realization of the series inductors, gain and
optimum-stage-count figures, stepped-impedance (tapered) line analysis,
and a nodal small-signal simulator to check a finished design.
"""

from .design import (
    MATCH_DRAIN,
    DesignOptions,
    DesignReport,
    ScreeningResult,
    Table1Check,
    max_capacitance_for_bandwidth,
    predict_bandwidth,
    report_from_json,
    report_to_json,
    screen_catalog,
    series_cap_for_target,
    synthesize_design,
    verify_table1,
)
from .device import (
    Catalog,
    Substrate,
    TransistorModel,
    VerificationRow,
    builtin_table1,
    effective_gate_capacitance,
    estimate_cgs,
    load_catalog,
    serialize_catalog,
)
from .errors import CatalogError, DakitError, DesignError, GeometryError, SimulationError
from .gain import (
    GainFigures,
    n_opt_from_losses,
    n_opt_from_params,
    power_gain_lossless,
    power_gain_lossy,
    recommended_n,
    voltage_gain,
)
from .ladder import (
    LineCell,
    LineSection,
    cell_for_impedance,
    char_impedance,
    cutoff_frequency,
    drain_loss_per_cell,
    drain_section,
    gate_loss_per_cell,
    gate_section,
    phase_velocity,
    propagation_constant,
)
from .microstrip import (
    ImpedanceResult,
    MicrostripLine,
    line_constants,
    phase_shift,
    segment_length,
    synthesize_strip,
    width_for,
    z0_of,
)
from .mna import (
    LINEAR,
    LOG,
    Capacitor,
    Inductor,
    Network,
    Port,
    Resistor,
    SweepMetrics,
    TwoPortSweep,
    Vccs,
    build_network,
    extract_metrics,
    s_parameters_at,
    sweep,
)
from .taper import (
    DRAIN,
    GATE,
    TaperProfile,
    TaperReport,
    analyze_taper,
    equivalent_impedance,
    ginzton_profiles,
    junction_gammas,
    overall_gamma,
    overall_gamma_quarterwave,
)

__version__ = "0.1.0"
