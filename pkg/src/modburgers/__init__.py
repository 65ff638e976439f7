"""Multiple-shock extinction in the modular Burgers' equation.

Simulates the odd three-interface problem on an interface-fitted grid and
estimates the finite-time extinction scaling laws.
"""
from .diagnostics import (
    EnergyReport,
    energy_report,
    interface_report,
    region_energy,
    region_mass,
    z_mass,
)
from .grid import (
    DegenerateSlopeError,
    GhostPair,
    GridSpec,
    InterfaceBreakdown,
    SingularInterfaceError,
    ghost_values,
    interface_derivatives,
    interface_velocity_discrete,
)
from .model import (
    InitialProfile,
    ShockParams,
    build_initial_profile,
    eval_initial_data,
    extinction_upper_bound,
    shock_jump_residual,
    shock_profile,
    shock_speed,
)
from .scaling import FitConfig, PowerFit, extinction_report, loglog_fit, scan_t0
from .solver import SimConfig, assemble_cn_system, run, step
from .state import SimState, TraceRecord

__version__ = "0.1.0"
