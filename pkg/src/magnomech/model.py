"""Physical parameters, unit conventions and thermal-noise helpers.

All rates are stored as angular frequencies in rad/s and temperatures in
kelvin. The conversion helpers :func:`mhz` and :func:`to_mhz` translate
to and from the ``f/2pi in MHz`` notation used for quoting rates.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Optional

from scipy import constants

from .exceptions import DomainError

HBAR = constants.hbar
K_B = constants.k
TWO_PI = 2.0 * math.pi

#: Spin density of yttrium-iron-garnet, in 1/m^3.
YIG_SPIN_DENSITY = 4.22e27
#: Gyromagnetic ratio 2pi * 28 GHz/T, in rad/s/T.
GYROMAGNETIC_RATIO = TWO_PI * 28e9
#: Absolute cavity/magnon frequency used for their thermal occupancies.
DEFAULT_ABS_FREQUENCY = TWO_PI * 10e9


def mhz(value):
    """Convert ``f/2pi`` in MHz to an angular frequency in rad/s."""
    return TWO_PI * 1e6 * value


def to_mhz(omega):
    """Convert an angular frequency in rad/s to ``f/2pi`` in MHz."""
    return omega / (TWO_PI * 1e6)


def _check_finite(**values):
    for name, value in values.items():
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value!r}")


def reduce_phase(theta):
    """Map an angle onto ``[0, 2pi)``."""
    reduced = math.fmod(theta, TWO_PI)
    if reduced < 0.0:
        reduced += TWO_PI
    if reduced >= TWO_PI:
        reduced = 0.0
    return reduced


@dataclass(frozen=True)
class SystemParams:
    """Complete parameter set of one linearized magnomechanical system.

    Every rate is an angular frequency (rad/s). ``delta_m_eff`` is the
    effective magnon-drive detuning, which already includes the
    mechanical back-action shift. ``gamma_gain`` is the signed net cavity
    rate (positive means net gain); when omitted it defaults to
    ``-kappa_a``, a passive cavity. ``omega_b_abs`` defaults to
    ``omega_b``. ``theta`` is reduced to ``[0, 2pi)`` on construction.
    """

    delta_a: float
    delta_m_eff: float
    omega_b: float
    g_ma: float
    g_mb: float
    kappa_a: float
    kappa_m: float
    gamma_b: float
    eps_d: float
    chi: float
    theta: float
    temperature: float
    gamma_gain: Optional[float] = None
    omega_a_abs: float = DEFAULT_ABS_FREQUENCY
    omega_m_abs: float = DEFAULT_ABS_FREQUENCY
    omega_b_abs: Optional[float] = None

    def __post_init__(self):
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if value is None:
                continue
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise DomainError(f"{f.name} must be a real number, got {value!r}")
            value = float(value)
            _check_finite(**{f.name: value})
            object.__setattr__(self, f.name, value)
        for name in ("kappa_a", "kappa_m", "gamma_b", "omega_b", "chi", "temperature"):
            if getattr(self, name) < 0.0:
                raise DomainError(f"{name} must be non-negative, got {getattr(self, name)!r}")
        if self.gamma_gain is None:
            object.__setattr__(self, "gamma_gain", -self.kappa_a)
        if self.omega_b_abs is None:
            object.__setattr__(self, "omega_b_abs", self.omega_b)
        for name in ("omega_a_abs", "omega_m_abs", "omega_b_abs"):
            if getattr(self, name) <= 0.0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)!r}")
        object.__setattr__(self, "theta", reduce_phase(self.theta))

    def replace(self, **changes) -> "SystemParams":
        """Return a copy with ``changes`` applied (validated again).

        Changing ``omega_b`` alone keeps the mechanical occupancy tied to
        it unless ``omega_b_abs`` was set explicitly to something else.
        """
        if "omega_b" in changes and "omega_b_abs" not in changes and self.omega_b_abs == self.omega_b:
            changes["omega_b_abs"] = None
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)

    @property
    def n_a(self):
        return thermal_occupancy(self.omega_a_abs, self.temperature)

    @property
    def n_m(self):
        return thermal_occupancy(self.omega_m_abs, self.temperature)

    @property
    def n_b(self):
        return thermal_occupancy(self.omega_b_abs, self.temperature)


#: Names of the rate-valued fields, i.e. those quoted in MHz/2pi at the CLI.
FREQUENCY_FIELDS = (
    "delta_a",
    "delta_m_eff",
    "omega_b",
    "g_ma",
    "g_mb",
    "kappa_a",
    "kappa_m",
    "gamma_b",
    "gamma_gain",
    "eps_d",
    "chi",
    "omega_a_abs",
    "omega_m_abs",
    "omega_b_abs",
)

PARAM_FIELDS = tuple(f.name for f in dataclasses.fields(SystemParams))


def reference_parameters(**overrides) -> SystemParams:
    """Experimentally motivated reference point for the three-mode system.

    Delta_a/2pi = Delta_m/2pi = omega_b/2pi = 10 MHz, gamma_b/2pi = 10 Hz,
    kappa_m/2pi = 1 MHz, kappa_a/2pi = 0.5 MHz, g_mb/2pi = 0.2 Hz,
    eps_d = 3.5e14 s^-1, chi/2pi = 0.4 MHz, g_ma/2pi = 3.5 MHz,
    theta = 0.8 pi, T = 12 mK and a passive cavity (Gamma = -kappa_a).
    """
    values = dict(
        delta_a=mhz(10.0),
        delta_m_eff=mhz(10.0),
        omega_b=mhz(10.0),
        g_ma=mhz(3.5),
        g_mb=TWO_PI * 0.2,
        kappa_a=mhz(0.5),
        kappa_m=mhz(1.0),
        gamma_b=TWO_PI * 10.0,
        eps_d=3.5e14,
        chi=mhz(0.4),
        theta=0.8 * math.pi,
        temperature=12e-3,
    )
    values.update(overrides)
    return SystemParams(**values)


def thermal_occupancy(omega_abs, temperature):
    """Bose-Einstein mean occupancy ``1 / (exp(hbar w / k_B T) - 1)``.

    Parameters
    ----------
    omega_abs : float
        Mode angular frequency in rad/s, strictly positive.
    temperature : float
        Bath temperature in kelvin. ``T = 0`` returns exactly 0.

    Returns
    -------
    float
        Mean thermal occupancy.
    """
    _check_finite(omega_abs=omega_abs, temperature=temperature)
    if omega_abs <= 0.0:
        raise DomainError(f"omega_abs must be positive, got {omega_abs!r}")
    if temperature < 0.0:
        raise DomainError(f"temperature must be non-negative, got {temperature!r}")
    if temperature == 0.0:
        return 0.0
    x = HBAR * omega_abs / (K_B * temperature)
    if x > 700.0:
        return math.exp(-x)
    return 1.0 / math.expm1(x)


@dataclass(frozen=True)
class DriveSpec:
    """Microwave drive acting on a YIG sphere.

    ``b0`` is the drive field amplitude (T), ``sphere_diameter`` in m,
    ``spin_density`` in 1/m^3, ``gyromagnetic_ratio`` in rad/s/T and
    ``bias_field`` (T) the static field setting the magnon frequency.
    """

    b0: float
    sphere_diameter: float
    spin_density: float = YIG_SPIN_DENSITY
    gyromagnetic_ratio: float = GYROMAGNETIC_RATIO
    bias_field: float = 0.357

    def __post_init__(self):
        _check_finite(**dataclasses.asdict(self))
        if self.b0 < 0.0:
            raise DomainError(f"b0 must be non-negative, got {self.b0!r}")
        for name in ("sphere_diameter", "spin_density", "gyromagnetic_ratio", "bias_field"):
            if getattr(self, name) <= 0.0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)!r}")

    @property
    def volume(self):
        return math.pi / 6.0 * self.sphere_diameter**3

    @property
    def total_spins(self):
        return self.spin_density * self.volume


def rabi_from_drive(spec: DriveSpec) -> float:
    """Magnon-drive coupling ``eps_d = sqrt(5)/4 * gamma_g * sqrt(N_t) * B0``."""
    return math.sqrt(5.0) / 4.0 * spec.gyromagnetic_ratio * math.sqrt(spec.total_spins) * spec.b0


def magnon_frequency(gamma_g, bias_field):
    """Kittel-mode angular frequency ``gamma_g * H``."""
    _check_finite(gamma_g=gamma_g, bias_field=bias_field)
    if gamma_g <= 0.0:
        raise DomainError(f"gamma_g must be positive, got {gamma_g!r}")
    if bias_field < 0.0:
        raise DomainError(f"bias_field must be non-negative, got {bias_field!r}")
    return gamma_g * bias_field
