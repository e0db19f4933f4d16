"""Frequency-domain scattering for nonreciprocal superconducting coupled-mode networks."""

from .analysis import (
    EffectiveDamping,
    FrequencyGrid,
    Spectrum,
    Symmetry,
    adiabatic_isolator,
    bandwidth,
    classify_symmetry,
    compare_closed_form,
    effective_damping,
    isolation_ratio,
    isolator_loss_scan,
    sweep,
)
from .devices import (
    Circulation,
    ClosedFormContext,
    ConditionReport,
    DeviceKind,
    DeviceParams,
    Direction,
    analytic_s1,
    analytic_s2,
    analytic_s3,
    build_device,
    build_multifunctional,
    check_device,
    dual_frequency_params,
    isolator_conditions,
    switch,
    symmetric_circulator_conditions,
)
from .errors import *  # noqa: F401,F403
from .network import Coupling, Mode, ModeKind, Network, Port, build_network, coupling_matrix
from .scattering import (
    DynamicalMatrix,
    ScatteringMatrix,
    dynamical_matrix,
    reflection,
    scattering_matrix,
    transmission,
)

__version__ = "0.1.0"
