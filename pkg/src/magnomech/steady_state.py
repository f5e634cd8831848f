"""Classical steady state of the driven cavity-magnon-phonon system."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import ConvergenceError, DomainError, SingularSteadyStateError
from .model import SystemParams

FIXED_POINT_DAMPING = 0.5


@dataclass(frozen=True)
class SteadyState:
    """Mean-field solution around which the fluctuations are linearized.

    Attributes
    ----------
    m_s : complex
        Steady magnon amplitude.
    q_s : float
        Steady dimensionless mechanical displacement.
    g_enh : float
        Drive-enhanced magnomechanical coupling ``sqrt(2) g_mb |m_s|`` (rad/s).
    beta : complex
        Effective complex magnon rate entering ``m_s``.
    delta_m_eff_used : float
        Effective magnon detuning the solution was computed at.
    """

    m_s: complex
    q_s: float
    g_enh: float
    beta: complex
    delta_m_eff_used: float


def magnon_beta(delta_m_eff, kappa_m, chi, theta):
    """``(i Delta_m - 2 chi sin(theta)) + (kappa_m - 2 chi cos(theta))``."""
    return complex(kappa_m - 2.0 * chi * math.cos(theta), delta_m_eff) - 2.0 * chi * math.sin(theta)


def _solve_at(params: SystemParams, delta_m_eff) -> SteadyState:
    beta = magnon_beta(delta_m_eff, params.kappa_m, params.chi, params.theta)
    cavity = complex(-params.gamma_gain, params.delta_a)
    denom = params.g_ma**2 + cavity * beta
    scale = max(params.g_ma**2, abs(cavity) * abs(beta))
    if denom == 0 or abs(denom) <= 1e-14 * scale:
        raise SingularSteadyStateError(
            "vanishing steady-state denominator g_ma^2 + (i Delta_a - Gamma) beta: "
            f"g_ma={params.g_ma!r}, Delta_a={params.delta_a!r}, Gamma={params.gamma_gain!r}, "
            f"beta={beta!r}"
        )
    m_s = params.eps_d * cavity / denom
    if params.omega_b == 0.0:
        if params.g_mb != 0.0 and m_s != 0:
            raise SingularSteadyStateError("omega_b = 0 leaves the mechanical displacement undetermined")
        q_s = 0.0
    else:
        q_s = -params.g_mb * abs(m_s) ** 2 / params.omega_b
    g_enh = math.sqrt(2.0) * abs(params.g_mb) * abs(m_s)
    return SteadyState(m_s=m_s, q_s=q_s, g_enh=g_enh, beta=beta, delta_m_eff_used=delta_m_eff)


def solve_steady_state(params: SystemParams) -> SteadyState:
    """Steady state at the effective magnon detuning stored in ``params``.

    ``m_s = eps_d (i Delta_a - Gamma) / (g_ma^2 + (i Delta_a - Gamma) beta)``
    and ``q_s = -g_mb |m_s|^2 / omega_b`` from the stationary momentum
    equation. Raises :class:`SingularSteadyStateError` when the
    denominator vanishes.
    """
    return _solve_at(params, params.delta_m_eff)


def solve_steady_state_selfconsistent(
    params: SystemParams,
    delta_m_bare,
    tol=1e-10,
    max_iter=10_000,
) -> SteadyState:
    """Close ``Delta_m_eff = Delta_m + g_mb q_s`` by damped fixed-point iteration.

    ``params.delta_m_eff`` only serves as the starting guess. Iteration
    stops once ``|Delta_m_eff - (Delta_m + g_mb q_s)| < tol * omega_b``.
    """
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    if max_iter < 1:
        raise DomainError(f"max_iter must be at least 1, got {max_iter!r}")
    scale = params.omega_b if params.omega_b > 0.0 else 1.0

    delta = delta_m_bare if params.g_mb == 0.0 or params.eps_d == 0.0 else params.delta_m_eff
    residual = math.inf
    for _ in range(max_iter):
        ss = _solve_at(params, delta)
        target = delta_m_bare + params.g_mb * ss.q_s
        residual = abs(delta - target)
        if residual < tol * scale:
            return ss
        delta = (1.0 - FIXED_POINT_DAMPING) * delta + FIXED_POINT_DAMPING * target
    raise ConvergenceError(
        f"self-consistent detuning did not converge in {max_iter} iterations "
        f"(last residual {residual:.3e} rad/s)",
        residual=residual,
    )
