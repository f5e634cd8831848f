"""Steady-state entanglement of a cavity-magnomechanical system with magnon squeezing."""

from .dynamics import Stability, build_diffusion, build_drift, is_stable
from .entanglement import Pair, log_negativity, pair_log_negativity, reduce
from .lyapunov import integrate_covariance, solve_lyapunov
from .model import DriveSpec, SystemParams, magnon_frequency, mhz, reference_parameters, rabi_from_drive, thermal_occupancy
from .steady_state import SteadyState, solve_steady_state, solve_steady_state_selfconsistent
from .sweep import SweepSpec, preset, run_sweep

__all__ = [
    "DriveSpec",
    "Pair",
    "Stability",
    "SteadyState",
    "SweepSpec",
    "SystemParams",
    "build_diffusion",
    "build_drift",
    "integrate_covariance",
    "is_stable",
    "log_negativity",
    "magnon_frequency",
    "mhz",
    "pair_log_negativity",
    "reference_parameters",
    "preset",
    "rabi_from_drive",
    "reduce",
    "run_sweep",
    "solve_lyapunov",
    "solve_steady_state",
    "solve_steady_state_selfconsistent",
    "thermal_occupancy",
]

__version__ = "0.1.0"
