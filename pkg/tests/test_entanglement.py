import math

import mpmath
import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from magnomech.dynamics import build_diffusion, build_drift
from magnomech.entanglement import (
    OMEGA_2,
    Pair,
    ReducedCM,
    is_physical,
    log_negativity,
    pair_log_negativity,
    partial_transpose,
    reduce,
    seralian,
    symplectic_eigenvalues,
)
from magnomech.exceptions import UnphysicalStateError
from magnomech.lyapunov import solve_lyapunov
from magnomech.steady_state import solve_steady_state

from conftest import random_physical_cm, random_symplectic, two_mode_squeezed_vacuum


def steady_cm(p):
    return solve_lyapunov(build_drift(p, solve_steady_state(p)), build_diffusion(p))


def mp_eta(V):
    """High-precision closed-form eta, used as an oracle."""
    with mpmath.workdps(50):
        M = mpmath.matrix(V.tolist())
        a = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
        b = M[2, 2] * M[3, 3] - M[2, 3] * M[3, 2]
        c = M[0, 2] * M[1, 3] - M[0, 3] * M[1, 2]
        sigma = a + b - 2 * c
        det = mpmath.det(M)
        return float(mpmath.sqrt((sigma - mpmath.sqrt(sigma**2 - 4 * det)) / 2))


class TestReduction:
    def test_vacuum(self):
        V = 0.5 * np.eye(6)
        for pair in (Pair.CAVITY_MAGNON, Pair.PHONON_MAGNON):
            vs = reduce(V, pair)
            assert np.array_equal(vs.matrix, 0.5 * np.eye(4))
            res = log_negativity(vs)
            assert res.e_n == 0.0
            assert res.eta == pytest.approx(0.5, rel=1e-15)

    def test_block_diagonal_has_no_correlations(self):
        rng = np.random.default_rng(0)
        blocks = [random_physical_cm(rng)[:2, :2] for _ in range(3)]
        V = np.zeros((6, 6))
        for k, b in enumerate(blocks):
            V[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = b
        for pair in Pair:
            assert not reduce(V, pair).c.any()
            assert pair_log_negativity(V, pair).e_n == 0.0

    def test_index_bookkeeping(self):
        V = np.arange(36, dtype=float).reshape(6, 6)
        V = V + V.T
        am = reduce(V, "cavity_magnon").matrix
        bm = reduce(V, Pair.PHONON_MAGNON).matrix
        np.testing.assert_array_equal(am, V[:4, :4])
        np.testing.assert_array_equal(bm[:2, :2], V[4:, 4:])
        np.testing.assert_array_equal(bm[2:, 2:], V[2:4, 2:4])
        np.testing.assert_array_equal(bm[:2, 2:], V[4:, 2:4])

    def test_reduced_matrix_is_read_only(self):
        vs = ReducedCM(np.eye(4))
        with pytest.raises(ValueError):
            vs.matrix[0, 0] = 2.0

    def test_shape(self):
        with pytest.raises(ValueError):
            ReducedCM(np.eye(3))


class TestClosedForm:
    def test_two_mode_squeezed_vacuum(self):
        res = log_negativity(two_mode_squeezed_vacuum(0.5))
        assert res.e_n == pytest.approx(1.0, abs=1e-9)
        assert res.eta == pytest.approx(math.exp(-1.0) / 2, rel=1e-12)

    @pytest.mark.parametrize("r", [0.01, 0.3, 1.0, 2.5])
    def test_squeezed_vacuum_scaling(self, r):
        assert log_negativity(two_mode_squeezed_vacuum(r)).e_n == pytest.approx(2 * r, rel=1e-9)

    def test_partial_transpose_flips_one_momentum(self):
        vs = ReducedCM(two_mode_squeezed_vacuum(0.4))
        pt = partial_transpose(vs)
        assert pt[1, 3] == -vs.matrix[1, 3]
        assert pt[0, 2] == vs.matrix[0, 2]
        assert pt[3, 3] == vs.matrix[3, 3]

    def test_thermal_product_state(self):
        V = np.diag([2.0, 2.0, 0.7, 0.7])
        res = log_negativity(V)
        assert res.e_n == 0.0
        assert res.eta == pytest.approx(0.7)

    def test_product_of_squeezed_states_is_separable(self):
        V = np.diag([0.5 * math.exp(2), 0.5 * math.exp(-2), 0.5 * math.exp(-1), 0.5 * math.exp(1)])
        assert log_negativity(V).e_n == 0.0

    def test_swap_invariance(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            vs = ReducedCM(random_physical_cm(rng))
            assert seralian(vs.swapped()) == pytest.approx(seralian(vs), rel=1e-12)
            assert log_negativity(vs.swapped()).eta == pytest.approx(log_negativity(vs).eta, rel=1e-10)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**31))
    def test_local_symplectic_invariance(self, seed):
        rng = np.random.default_rng(seed)
        V = random_physical_cm(rng)
        S = np.zeros((4, 4))
        for k in range(2):
            H = rng.normal(size=(2, 2)) * 0.5
            S[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = scipy.linalg.expm(OMEGA_2[:2, :2] @ (H + H.T))
        before = log_negativity(V).eta
        after = log_negativity(S @ V @ S.T).eta
        assert after == pytest.approx(before, rel=1e-8)

    def test_global_symplectic_preserves_spectrum(self):
        rng = np.random.default_rng(9)
        V = random_physical_cm(rng)
        S = random_symplectic(rng)
        np.testing.assert_allclose(symplectic_eigenvalues(S @ V @ S.T), symplectic_eigenvalues(V), rtol=1e-9)

    def test_matches_high_precision_oracle(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            V = random_physical_cm(rng, scale=1.0)
            assert log_negativity(V).eta == pytest.approx(mp_eta(V), rel=1e-10)

    def test_dual_route_on_random_states(self):
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            res = log_negativity(random_physical_cm(rng))
            assert abs(res.eta - res.eta_symplectic) <= 1e-9 * res.eta_symplectic

    def test_dual_route_under_strong_local_squeezing(self):
        r = 2.0
        S = np.diag([math.exp(r), math.exp(-r), math.exp(-r), math.exp(r)])
        V = S @ two_mode_squeezed_vacuum(1.5) @ S.T
        res = log_negativity(V)
        assert abs(res.eta - res.eta_symplectic) <= 1e-9 * res.eta_symplectic
        assert res.e_n == pytest.approx(3.0, rel=1e-9)

    def test_pure_state_boundary_is_not_rejected(self):
        # Sigma^2 = 4 det for a symmetric pure state up to round-off.
        res = log_negativity(two_mode_squeezed_vacuum(0.0))
        assert res.e_n == 0.0


class TestSteadyState:
    @pytest.mark.parametrize("pair", [Pair.CAVITY_MAGNON, Pair.PHONON_MAGNON])
    def test_dual_route_on_reference_point(self, fig2_point, pair):
        V = steady_cm(fig2_point)
        res = pair_log_negativity(V, pair)
        assert res.pair is pair
        assert abs(res.eta - res.eta_symplectic) <= 1e-9 * res.eta_symplectic
        assert res.eta == pytest.approx(mp_eta(reduce(V, pair).matrix), rel=1e-10)

    def test_reference_point_is_physical_and_entangled(self, fig2_point):
        V = steady_cm(fig2_point)
        assert is_physical(V)
        assert pair_log_negativity(V, Pair.CAVITY_MAGNON).e_n > 0.0


class TestUnphysical:
    def test_negative_determinant(self):
        with pytest.raises(UnphysicalStateError):
            log_negativity(np.diag([1.0, -1.0, 1.0, 1.0]))

    def test_negative_discriminant(self):
        # Indefinite with det > 0 and Sigma^2 < 4 det; positive-definite
        # matrices never get here.
        V = np.array(
            [
                [0.2, -0.6, -0.1, -2.2],
                [-0.6, 0.8, 0.0, 0.7],
                [-0.1, 0.0, -1.2, -1.2],
                [-2.2, 0.7, -1.2, -1.4],
            ]
        )
        assert np.linalg.det(V) > 0
        assert seralian(ReducedCM(V)) ** 2 < 4 * np.linalg.det(V)
        with pytest.raises(UnphysicalStateError):
            log_negativity(V)

    def test_is_physical(self):
        assert is_physical(0.5 * np.eye(6))
        assert not is_physical(0.4 * np.eye(6))
        assert is_physical(two_mode_squeezed_vacuum(1.0))
