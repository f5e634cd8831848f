import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magnomech.exceptions import ConvergenceError, DomainError, SingularSteadyStateError
from magnomech.model import mhz, reference_parameters
from magnomech.steady_state import magnon_beta, solve_steady_state, solve_steady_state_selfconsistent


def test_undriven():
    ss = solve_steady_state(reference_parameters(eps_d=0.0))
    assert ss.m_s == 0
    assert ss.q_s == 0.0
    assert ss.g_enh == 0.0


def test_uncoupled_cavity_limit():
    p = reference_parameters(g_ma=0.0)
    ss = solve_steady_state(p)
    assert ss.m_s == pytest.approx(p.eps_d / ss.beta, rel=1e-14)


def test_residual_at_reference_point():
    p = reference_parameters(chi=mhz(0.4), theta=0.8 * math.pi, g_ma=mhz(3.5))
    ss = solve_steady_state(p)
    z = complex(-p.gamma_gain, p.delta_a)
    rhs = p.eps_d * z
    residual = ss.m_s * (p.g_ma**2 + z * ss.beta) - rhs
    assert abs(residual) < 1e-8 * abs(rhs)


def test_beta_matches_inputs():
    p = reference_parameters(chi=mhz(0.7), theta=1.3)
    ss = solve_steady_state(p)
    expected = complex(p.kappa_m - 2 * p.chi * math.cos(p.theta) - 2 * p.chi * math.sin(p.theta), p.delta_m_eff)
    assert ss.beta == expected
    assert ss.beta == magnon_beta(p.delta_m_eff, p.kappa_m, p.chi, p.theta)


def test_displacement_and_coupling():
    p = reference_parameters()
    ss = solve_steady_state(p)
    assert ss.q_s == pytest.approx(-p.g_mb * abs(ss.m_s) ** 2 / p.omega_b, rel=1e-14)
    assert ss.g_enh == pytest.approx(math.sqrt(2) * p.g_mb * abs(ss.m_s), rel=1e-14)
    assert ss.g_enh >= 0.0
    # Drive-enhanced coupling at the reference point is a few MHz.
    assert 1.0 < ss.g_enh / mhz(1.0) < 3.0


def test_singular_denominator():
    p = reference_parameters(g_ma=0.0, delta_a=0.0, gamma_gain=0.0)
    with pytest.raises(SingularSteadyStateError, match="denominator"):
        solve_steady_state(p)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.0, mhz(2.0)), st.floats(0.0, 2 * math.pi))
def test_depends_on_squeezing_only_through_quadrature_combinations(chi, theta):
    p = reference_parameters(chi=chi, theta=theta)
    c2, s2 = 2 * chi * math.cos(theta), 2 * chi * math.sin(theta)
    beta = complex(p.kappa_m - c2 - s2, p.delta_m_eff)
    z = complex(-p.gamma_gain, p.delta_a)
    expected = p.eps_d * z / (p.g_ma**2 + z * beta)
    assert solve_steady_state(p).m_s == pytest.approx(expected, rel=1e-13)
    shifted = reference_parameters(chi=chi, theta=theta + 4 * math.pi)
    assert solve_steady_state(shifted).m_s == pytest.approx(solve_steady_state(p).m_s, rel=1e-13)


def test_no_squeezing_means_no_phase_dependence():
    values = {solve_steady_state(reference_parameters(chi=0.0, theta=t)).m_s for t in np.linspace(0, 2 * math.pi, 37)}
    assert len(values) == 1


@pytest.mark.parametrize("lam", [0.5, 3.0, 1e-3])
def test_linear_in_drive(lam):
    p = reference_parameters()
    base = solve_steady_state(p).m_s
    scaled = solve_steady_state(p.replace(eps_d=lam * p.eps_d)).m_s
    assert scaled == pytest.approx(lam * base, rel=1e-14)


class TestSelfConsistent:
    def test_no_back_action(self):
        p = reference_parameters(g_mb=0.0)
        ss = solve_steady_state_selfconsistent(p, delta_m_bare=mhz(9.0), max_iter=1)
        assert ss.delta_m_eff_used == mhz(9.0)

    def test_undriven(self):
        p = reference_parameters(eps_d=0.0)
        ss = solve_steady_state_selfconsistent(p, delta_m_bare=mhz(9.5))
        assert ss.delta_m_eff_used == mhz(9.5)

    def test_agrees_with_direct_solve(self):
        p = reference_parameters()
        direct = solve_steady_state(p)
        # Bare detuning that lands the effective one on 10 MHz.
        bare = p.delta_m_eff - p.g_mb * direct.q_s
        tol = 1e-10
        ss = solve_steady_state_selfconsistent(p.replace(delta_m_eff=bare), delta_m_bare=bare, tol=tol)
        assert abs(ss.delta_m_eff_used - p.delta_m_eff) < 10 * tol * p.omega_b
        assert ss.m_s == pytest.approx(direct.m_s, rel=1e-8)
        assert abs(ss.delta_m_eff_used - (bare + p.g_mb * ss.q_s)) < tol * p.omega_b

    def test_non_convergence(self):
        p = reference_parameters()
        with pytest.raises(ConvergenceError) as info:
            solve_steady_state_selfconsistent(p, delta_m_bare=mhz(10.0), max_iter=1)
        assert info.value.residual > 0

    @pytest.mark.parametrize("kwargs", [dict(tol=0.0), dict(max_iter=0)])
    def test_arguments(self, kwargs):
        with pytest.raises(DomainError):
            solve_steady_state_selfconsistent(reference_parameters(), delta_m_bare=mhz(10.0), **kwargs)
