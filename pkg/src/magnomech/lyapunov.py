"""Steady-state covariance matrix from ``A V + V A^T = -D``.

:func:`solve_lyapunov` is the production solver; :func:`integrate_covariance`
relaxes ``dV/dt = A V + V A^T + D`` in time and only serves as an
independent check of it.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .dynamics import is_stable
from .exceptions import DomainError, NumericalError, UnstableSystemError


def _symmetrize(V):
    return 0.5 * (V + V.T)


def lyapunov_residual(A, V, D):
    """Frobenius norm of ``A V + V A^T + D``."""
    return float(np.linalg.norm(A @ V + V @ A.T + D))


def solve_lyapunov(A, D, check_stability=True) -> np.ndarray:
    """Solve ``A V + V A^T = -D`` for the symmetric covariance ``V``.

    The equation is vectorized with the Kronecker sum
    ``(I kron A + A kron I) vec(V) = -vec(D)`` and solved by LU with
    partial pivoting.

    Parameters
    ----------
    A : (n, n) array_like
        Drift matrix. Must be strictly stable unless ``check_stability``
        is false.
    D : (n, n) array_like
        Symmetric positive semidefinite diffusion matrix.
    check_stability : bool, default: True
        Reject non-stable ``A`` with :class:`UnstableSystemError`.

    Returns
    -------
    V : (n, n) ndarray
        Symmetrized solution.
    """
    A = np.asarray(A, dtype=float)
    D = np.asarray(D, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n) or D.shape != (n, n):
        raise DomainError(f"incompatible shapes {A.shape} and {D.shape}")
    if check_stability:
        report = is_stable(A)
        if not report.stable:
            raise UnstableSystemError(f"drift matrix is not stable: {report}", report=report)

    eye = np.eye(n)
    # vec() is column-major, so vec(A V + V A^T) = (I kron A + A kron I) vec(V)
    lhs = np.kron(eye, A) + np.kron(A, eye)
    try:
        lu, piv = scipy.linalg.lu_factor(lhs, check_finite=True)
    except (ValueError, np.linalg.LinAlgError) as exc:
        raise NumericalError(f"Lyapunov system factorization failed: {exc}") from exc
    if np.any(np.diag(lu) == 0.0):
        raise NumericalError("Lyapunov system is singular (A has eigenvalues summing to zero)")
    vec = scipy.linalg.lu_solve((lu, piv), -D.reshape(-1, order="F"))
    V = vec.reshape((n, n), order="F")
    return _symmetrize(V)


def relaxation_time(A):
    """``1 / |max Re(lambda)|``, the slowest decay time of a stable ``A``."""
    return 1.0 / abs(float(np.max(np.linalg.eigvals(A).real)))


def default_time_step(A):
    return 0.05 / np.linalg.norm(A, 2)


def _rk4_step(A, D, V, h):
    At = A.T

    def rhs(X):
        return A @ X + X @ At + D

    k1 = rhs(V)
    k2 = rhs(V + 0.5 * h * k1)
    k3 = rhs(V + 0.5 * h * k2)
    k4 = rhs(V + h * k3)
    return V + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _rk4_affine_map(A, D, h):
    """One RK4 step written as ``vec(V') = P vec(V) + q``.

    The columns of ``P`` are the homogeneous step applied to the basis
    matrices, so the map is assembled from the matrix-form right-hand
    side only.
    """
    n = A.shape[0]
    zero = np.zeros((n, n))
    q = _rk4_step(A, D, zero, h).reshape(-1)
    P = np.empty((n * n, n * n))
    for k in range(n * n):
        E = np.zeros(n * n)
        E[k] = 1.0
        P[:, k] = _rk4_step(A, zero, E.reshape(n, n), h).reshape(-1)
    return P, q


def _symmetrize_vec(v, n):
    return _symmetrize(v.reshape(n, n)).reshape(-1)


def integrate_covariance(A, D, v0, dt, t_end, stepwise=None) -> np.ndarray:
    """Integrate ``dV/dt = A V + V A^T + D`` with classical RK4 from ``v0``.

    Fixed step ``dt``; a shorter final step lands exactly on ``t_end``.
    ``dt`` must satisfy ``dt <= 0.1 / ||A||_2``.

    Short runs step explicitly, symmetrizing after each step. Long runs
    (``stepwise=False``, the default beyond 2000 steps) advance the same
    RK4 one-step map by repeated squaring, symmetrizing after every
    composition; both give ``V(t_end)`` up to round-off.
    """
    A = np.asarray(A, dtype=float)
    D = np.asarray(D, dtype=float)
    n = A.shape[0]
    V = _symmetrize(np.array(v0, dtype=float))
    norm = np.linalg.norm(A, 2)
    if not dt > 0.0:
        raise DomainError(f"dt must be positive, got {dt!r}")
    if not t_end > dt:
        raise DomainError(f"t_end must exceed dt, got t_end={t_end!r}, dt={dt!r}")
    if norm > 0.0 and dt > 0.1 / norm * (1.0 + 1e-12):
        raise DomainError(f"dt={dt:.3e} exceeds the explicit-stepping limit 0.1/||A|| = {0.1 / norm:.3e}")

    n_steps = int(np.floor(t_end / dt))
    remainder = t_end - n_steps * dt
    if remainder <= 1e-12 * dt:
        remainder = 0.0
    if stepwise is None:
        stepwise = n_steps <= 2000

    if stepwise:
        for _ in range(n_steps):
            V = _symmetrize(_rk4_step(A, D, V, dt))
    else:
        P, q = _rk4_affine_map(A, D, dt)
        v = V.reshape(-1)
        k = n_steps
        while k:
            if k & 1:
                v = _symmetrize_vec(P @ v + q, n)
            k >>= 1
            if k:
                P, q = P @ P, _symmetrize_vec(P @ q + q, n)
        V = v.reshape(n, n)
    if remainder:
        V = _symmetrize(_rk4_step(A, D, V, remainder))
    return V


def relax_to_steady_state(A, D, v0=None, horizon=20.0, dt=None):
    """Convenience wrapper: integrate for ``horizon`` relaxation times."""
    A = np.asarray(A, dtype=float)
    if v0 is None:
        v0 = np.zeros_like(A)
    if dt is None:
        dt = default_time_step(A)
    return integrate_covariance(A, D, v0, dt, horizon * relaxation_time(A))
