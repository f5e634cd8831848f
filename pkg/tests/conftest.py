import numpy as np
import pytest
import scipy.linalg

from magnomech.entanglement import OMEGA_2
from magnomech.model import mhz, reference_parameters


@pytest.fixture
def ref():
    return reference_parameters()


@pytest.fixture
def fig2_point():
    """Phase-sweep parameters at theta = 0.44 pi, passive cavity."""
    return reference_parameters(chi=mhz(0.4), theta=0.44 * np.pi, gamma_gain=-mhz(0.5))


def random_stable_matrix(rng, n=6):
    """Random matrix shifted so that max Re(lambda) = -margin."""
    M = rng.normal(size=(n, n))
    shift = np.max(np.linalg.eigvals(M).real) + rng.uniform(0.2, 2.0)
    return M - shift * np.eye(n)


def random_psd(rng, n=6):
    M = rng.normal(size=(n, n))
    return M @ M.T


def random_symplectic(rng, scale=0.6):
    """exp(Omega H) for a random symmetric generator H."""
    H = rng.normal(size=(4, 4)) * scale
    return scipy.linalg.expm(OMEGA_2 @ (H + H.T))


def random_physical_cm(rng, scale=0.6):
    """Two-mode thermal state with random symplectic eigenvalues, squeezed and mixed by S."""
    S = random_symplectic(rng, scale)
    nu = 0.5 + rng.exponential(1.0, size=2)
    return S @ np.diag([nu[0], nu[0], nu[1], nu[1]]) @ S.T


def two_mode_squeezed_vacuum(r):
    c, s = np.cosh(2 * r) / 2, np.sinh(2 * r) / 2
    Z = np.diag([1.0, -1.0])
    return np.block([[c * np.eye(2), s * Z], [s * Z, c * np.eye(2)]])
