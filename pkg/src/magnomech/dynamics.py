"""Drift and diffusion matrices of the linearized fluctuations, and stability.

Quadratures are ordered ``(dX1, dX2, dY1, dY2, dx, dp)``: cavity, magnon,
then mechanics. Matrices are plain ``(6, 6)`` float arrays.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, NumericalError
from .model import SystemParams
from .steady_state import SteadyState

QUADRATURES = ("dX1", "dX2", "dY1", "dY2", "dx", "dp")
# Below gamma_b / (2 omega_b) = 5e-7 at the reference parameters, so a free
# mechanical mode still reads as stable.
DEFAULT_MARGIN_FRACTION = 1e-7


def build_drift(params: SystemParams, ss: SteadyState) -> np.ndarray:
    """Drift matrix ``A`` of ``du/dt = A u + n``.

    The squeezing enters through ``mu_pm = -kappa_m +- 2 chi cos(theta)``
    and ``nu_pm = +-Delta_m + 2 chi sin(theta)``; the magnomechanical
    coupling uses ``ss.g_enh``.
    """
    gam = params.gamma_gain
    da = params.delta_a
    g = params.g_ma
    G = ss.g_enh
    wb = params.omega_b
    two_chi_c = 2.0 * params.chi * math.cos(params.theta)
    two_chi_s = 2.0 * params.chi * math.sin(params.theta)
    dm = ss.delta_m_eff_used
    mu_p = -params.kappa_m + two_chi_c
    mu_m = -params.kappa_m - two_chi_c
    nu_p = dm + two_chi_s
    nu_m = -dm + two_chi_s

    A = np.array(
        [
            [gam, da, 0.0, g, 0.0, 0.0],
            [-da, gam, -g, 0.0, 0.0, 0.0],
            [0.0, g, mu_p, nu_p, -G, 0.0],
            [-g, 0.0, nu_m, mu_m, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0, 0.0, wb],
            [0.0, 0.0, 0.0, G, -wb, -params.gamma_b],
        ]
    )
    if not np.all(np.isfinite(A)):
        raise DomainError("drift matrix has non-finite entries")
    return A


def build_diffusion(params: SystemParams) -> np.ndarray:
    """Diagonal diffusion matrix of the quadrature input noise."""
    cav = params.kappa_a * (2.0 * params.n_a + 1.0)
    mag = params.kappa_m * (2.0 * params.n_m + 1.0)
    mech = params.gamma_b * (2.0 * params.n_b + 1.0)
    return np.diag([cav, cav, mag, mag, 0.0, mech])


class Stability(str, enum.Enum):
    STABLE = "stable"
    MARGINAL = "marginal"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class StabilityReport:
    verdict: Stability
    max_real_part: float
    margin: float

    @property
    def stable(self):
        return self.verdict is Stability.STABLE

    def __str__(self):
        return f"{self.verdict.value} (max Re(lambda) = {self.max_real_part:.6e} rad/s, margin {self.margin:.3e})"


def is_stable(A, margin=None) -> StabilityReport:
    """Classify ``A`` by the largest real part of its eigenvalues.

    ``margin`` defaults to ``1e-7 * omega_b``, read off the ``A[4, 5]``
    entry; for generic matrices without that entry the spectral radius
    sets the scale instead.
    """
    A = np.asarray(A, dtype=float)
    if not np.all(np.isfinite(A)):
        raise DomainError("drift matrix has non-finite entries")
    try:
        eig = np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigenvalue solver failed: {exc}") from exc
    if margin is None:
        scale = abs(A[4, 5]) if A.shape == (6, 6) and A[4, 5] != 0.0 else np.max(np.abs(eig))
        margin = DEFAULT_MARGIN_FRACTION * scale
    max_re = float(np.max(eig.real))
    if max_re < -margin:
        verdict = Stability.STABLE
    elif max_re > margin:
        verdict = Stability.UNSTABLE
    else:
        verdict = Stability.MARGINAL
    return StabilityReport(verdict=verdict, max_real_part=max_re, margin=float(margin))


def characteristic_polynomial(A) -> np.ndarray:
    """Coefficients of ``det(s I - A)``, highest power first.

    Uses the Faddeev-LeVerrier recursion, which needs only matrix
    products and traces, so it is independent of any eigensolver.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    coeffs = np.zeros(n + 1)
    coeffs[0] = 1.0
    M = np.zeros_like(A)
    eye = np.eye(n)
    for k in range(1, n + 1):
        M = A @ M + coeffs[k - 1] * eye
        coeffs[k] = -np.trace(A @ M) / k
    return coeffs


def routh_hurwitz_stable(A) -> bool:
    """Strict Hurwitz stability of ``A`` from its Routh array.

    ``A`` is rescaled to unit max-entry first; the verdict is invariant
    under positive scaling and the coefficients stay well conditioned.
    A zero pivot counts as not strictly stable.
    """
    A = np.asarray(A, dtype=float)
    scale = np.max(np.abs(A))
    if scale == 0.0:
        return False
    coeffs = characteristic_polynomial(A / scale)
    n = len(coeffs) - 1
    width = n // 2 + 1
    rows = [np.zeros(width), np.zeros(width)]
    rows[0][: len(coeffs[0::2])] = coeffs[0::2]
    rows[1][: len(coeffs[1::2])] = coeffs[1::2]
    for _ in range(n - 1):
        upper, lower = rows[-2], rows[-1]
        if lower[0] == 0.0:
            return False
        new = np.zeros(width)
        for j in range(width - 1):
            new[j] = (lower[0] * upper[j + 1] - upper[0] * lower[j + 1]) / lower[0]
        rows.append(new)
    first = np.array([r[0] for r in rows])
    tol = 1e-14 * np.max(np.abs(first))
    if np.any(np.abs(first) <= tol):
        return False
    return bool(np.all(first > 0) or np.all(first < 0))
