"""Bipartite Gaussian entanglement from the steady-state covariance matrix.

Quadratures follow ``X = (a + a^dagger)/sqrt(2)``, so the vacuum has
variance 1/2 and a two-mode state is entangled exactly when the smallest
symplectic eigenvalue ``eta`` of its partial transpose is below 1/2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import NumericalError, UnphysicalStateError

#: Two-mode symplectic form for the (x1, p1, x2, p2) ordering.
OMEGA_2 = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)
PARTIAL_TRANSPOSE = np.diag([1.0, 1.0, 1.0, -1.0])

DISCRIMINANT_CLAMP = 1e-12
DUAL_ROUTE_RTOL = 1e-9


class Pair(str, enum.Enum):
    CAVITY_MAGNON = "cavity_magnon"
    PHONON_MAGNON = "phonon_magnon"
    CAVITY_PHONON = "cavity_phonon"


# Rows/columns of the 6x6 covariance matrix picked out for each pair;
# the magnon is always the second mode.
PAIR_INDICES = {
    Pair.CAVITY_MAGNON: (0, 1, 2, 3),
    Pair.PHONON_MAGNON: (4, 5, 2, 3),
    Pair.CAVITY_PHONON: (0, 1, 4, 5),
}


@dataclass(frozen=True)
class ReducedCM:
    """Symmetric 4x4 two-mode covariance matrix ``[[A, C], [C^T, B]]``."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.shape != (4, 4):
            raise ValueError(f"reduced covariance matrix must be 4x4, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def a(self):
        return self.matrix[:2, :2]

    @property
    def b(self):
        return self.matrix[2:, 2:]

    @property
    def c(self):
        return self.matrix[:2, 2:]

    def swapped(self) -> "ReducedCM":
        order = [2, 3, 0, 1]
        return ReducedCM(self.matrix[np.ix_(order, order)])


@dataclass(frozen=True)
class EntanglementResult:
    e_n: float
    eta: float
    sigma: float
    pair: Pair | None = None
    eta_symplectic: float | None = None


def reduce(V, pair) -> ReducedCM:
    """Extract the 4x4 covariance matrix of one pair of modes."""
    idx = PAIR_INDICES[Pair(pair)]
    return ReducedCM(np.asarray(V, dtype=float)[np.ix_(idx, idx)])


def _det2(m):
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def seralian(vs: ReducedCM) -> float:
    """``det A + det B - 2 det C`` of the reduced covariance matrix."""
    return _det2(vs.a) + _det2(vs.b) - 2.0 * _det2(vs.c)


def symplectic_eigenvalues(V) -> np.ndarray:
    """Symplectic eigenvalues of a 4x4 covariance matrix, ascending.

    They are the moduli of the eigenvalues of ``i Omega V``, each of
    which appears twice; one copy of each is returned. For positive-definite
    ``V = L L^T`` the spectrum is taken from the Hermitian matrix
    ``i L^T Omega L``, which is similar to ``i Omega V`` and keeps small
    eigenvalues accurate when ``V`` is strongly squeezed.
    """
    V = np.asarray(V, dtype=float)
    try:
        L = np.linalg.cholesky(V)
    except np.linalg.LinAlgError:
        ev = np.abs(np.linalg.eigvals(1j * OMEGA_2 @ V))
    else:
        ev = np.abs(np.linalg.eigvalsh(1j * (L.T @ OMEGA_2 @ L)))
    return np.sort(ev)[::2]


def partial_transpose(vs: ReducedCM) -> np.ndarray:
    """Flip the sign of the second mode's momentum."""
    return PARTIAL_TRANSPOSE @ vs.matrix @ PARTIAL_TRANSPOSE


def is_physical(V, tol=1e-10) -> bool:
    """Robertson-Schroedinger test ``V + (i/2) Omega >= 0`` for any number of modes."""
    V = np.asarray(V, dtype=float)
    modes = V.shape[0] // 2
    omega = np.kron(np.eye(modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    ev = np.linalg.eigvalsh(V + 0.5j * omega)
    return bool(ev.min() >= -tol * max(1.0, np.abs(ev).max()))


def log_negativity(vs: ReducedCM, pair=None, check=True) -> EntanglementResult:
    """Logarithmic negativity ``max(0, -ln(2 eta))`` of a two-mode state.

    ``eta = sqrt((Sigma - sqrt(Sigma^2 - 4 det V_s)) / 2)`` is computed in
    the equivalent form ``sqrt(2 det V_s / (Sigma + sqrt(Sigma^2 - 4 det V_s)))``. With ``check``
    set it is also taken as the smallest symplectic eigenvalue of the
    partial transpose, and a disagreement beyond ``1e-9`` relative raises
    :class:`NumericalError`.

    Raises
    ------
    UnphysicalStateError
        If ``det V_s < 0`` or ``Sigma^2 - 4 det V_s`` is clearly negative.
    """
    if not isinstance(vs, ReducedCM):
        vs = ReducedCM(vs)
    det = float(np.linalg.det(vs.matrix))
    sigma = seralian(vs)
    if det < 0.0:
        raise UnphysicalStateError(f"negative determinant of reduced covariance matrix: {det!r}")
    disc = sigma * sigma - 4.0 * det
    if disc < 0.0:
        if disc < -DISCRIMINANT_CLAMP * max(1.0, sigma * sigma):
            raise UnphysicalStateError(f"Sigma^2 - 4 det V_s = {disc!r} < 0")
        disc = 0.0
    # (Sigma - sqrt(disc)) / 2 rationalized; the subtraction cancels badly when eta is small
    root = sigma + math.sqrt(disc)
    if root < 0.0:
        raise UnphysicalStateError(f"Sigma = {sigma!r} is negative")
    eta = math.sqrt(2.0 * det / root) if root > 0.0 else 0.0

    eta_sym = None
    if check:
        eta_sym = float(symplectic_eigenvalues(partial_transpose(vs))[0])
        if abs(eta - eta_sym) > DUAL_ROUTE_RTOL * max(abs(eta_sym), 1e-300):
            raise NumericalError(f"closed-form eta {eta!r} disagrees with symplectic eigenvalue {eta_sym!r}")

    e_n = max(0.0, -math.log(2.0 * eta)) if eta > 0.0 else math.inf
    return EntanglementResult(
        e_n=e_n,
        eta=eta,
        sigma=sigma,
        pair=Pair(pair) if pair is not None else None,
        eta_symplectic=eta_sym,
    )


def pair_log_negativity(V, pair, check=True) -> EntanglementResult:
    return log_negativity(reduce(V, pair), pair=pair, check=check)
