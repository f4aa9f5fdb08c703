"""NV centre / 13C physics: control frames, Rabi enhancement, direct-drive times.

Units: frequencies are ordinary frequencies (MHz unless a name says kHz),
fields in gauss, times in microseconds, angles in radians. A rotation of
frequency ``f`` accrues the Bloch angle ``2 pi f t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .errors import DegenerateFrame, ResonanceError
from .su2 import Axis, Z_AXIS

#: relative size below which an enhancement-factor denominator is treated as resonant
RESONANCE_RTOL = 1e-9


@dataclass(frozen=True)
class PhysicalConstants:
    """Zero-field splitting ``delta`` (MHz), electron ``gamma_e`` (MHz/G), 13C ``gamma_c`` (kHz/G)."""

    delta: float = 2870.0
    gamma_e: float = 2.8
    gamma_c: float = 1.0705

    def __post_init__(self):
        for name in ("delta", "gamma_e", "gamma_c"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")

    @property
    def gamma_n_mhz(self) -> float:
        return self.gamma_c * 1e-3


DEFAULT_CONSTANTS = PhysicalConstants()
# gamma_C rounded to 1 kHz/G so that omega_0 is exactly 0.5 MHz at 500 G
ROUNDED_CONSTANTS = replace(DEFAULT_CONSTANTS, gamma_c=1.0)

PRESETS = {"default": DEFAULT_CONSTANTS, "rounded": ROUNDED_CONSTANTS, "paper": ROUNDED_CONSTANTS}


@dataclass(frozen=True)
class HyperfineSpin:
    """A 13C spin: longitudinal ``A`` and transverse ``B`` hyperfine couplings in MHz."""

    label: str
    A: float
    B: float
    distance: Optional[float] = None  # angstrom

    def __post_init__(self):
        if not self.B >= 0:
            raise ValueError(f"transverse coupling B must be >= 0 (got {self.B!r}); use |B|")


@dataclass(frozen=True)
class FieldConfig:
    B0: float = 500.0
    manifold: int = 1

    def __post_init__(self):
        if not self.B0 > 0:
            raise ValueError("B0 must be positive")
        if self.manifold not in (1, -1):
            raise ValueError("manifold must be +1 or -1")


@dataclass(frozen=True)
class ControlFrame:
    """Two rotation axes, ``v0 = z`` at ``omega0`` and ``v1`` at ``omega1`` (MHz), ``alpha`` apart."""

    omega0: float
    omega1: float
    alpha: float
    kappa: float

    def __post_init__(self):
        if not (self.omega0 > 0 and self.omega1 > 0):
            raise DegenerateFrame("rotation frequencies must be positive")
        if not (0.0 <= self.alpha <= math.pi):
            raise ValueError("alpha must lie in [0, pi]")

    @classmethod
    def from_alpha_kappa(cls, alpha: float, kappa: float, omega0: float) -> "ControlFrame":
        if not kappa > 0:
            raise ValueError("kappa must be positive")
        return cls(omega0=omega0, omega1=omega0 / kappa, alpha=alpha, kappa=kappa)

    @property
    def v0(self) -> Axis:
        return Z_AXIS

    @property
    def v1(self) -> Axis:
        return Axis.from_vector((math.sin(self.alpha), 0.0, math.cos(self.alpha)))

    def axis(self, k: int) -> Axis:
        return self.v0 if k == 0 else self.v1

    def frequency(self, k: int) -> float:
        return self.omega0 if k == 0 else self.omega1

    @property
    def axis_vectors(self) -> np.ndarray:
        return np.array([[0.0, 0.0, 1.0], [math.sin(self.alpha), 0.0, math.cos(self.alpha)]])

    @property
    def frequencies(self) -> np.ndarray:
        return np.array([self.omega0, self.omega1])

    def scaled(self, c: float) -> "ControlFrame":
        return ControlFrame(self.omega0 * c, self.omega1 * c, self.alpha, self.kappa)


@dataclass(frozen=True)
class EnhancementFactors:
    zeta0: float
    zeta_plus: float
    zeta_minus: float

    def as_tuple(self) -> tuple:
        return (self.zeta0, self.zeta_plus, self.zeta_minus)

    def for_state(self, ms: int) -> float:
        return {0: self.zeta0, 1: self.zeta_plus, -1: self.zeta_minus}[ms]

    @property
    def best(self) -> float:
        """Largest magnitude over the three electronic states."""
        return max(abs(z) for z in self.as_tuple())


def larmor(field: FieldConfig, consts: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Bare nuclear Larmor frequency in MHz."""
    return consts.gamma_n_mhz * field.B0


def control_frame(
    spin: HyperfineSpin,
    field: FieldConfig,
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
) -> ControlFrame:
    omega0 = larmor(field, consts)
    longitudinal = omega0 + field.manifold * spin.A
    omega1 = math.hypot(longitudinal, spin.B)
    if omega1 == 0.0:
        raise DegenerateFrame(f"spin {spin.label!r}: omega_1 vanishes in manifold {field.manifold:+d}")
    if spin.B == 0.0:
        raise DegenerateFrame(f"spin {spin.label!r}: B = 0, both rotation axes lie along z")
    alpha = math.atan2(spin.B, longitudinal)
    return ControlFrame(omega0=omega0, omega1=omega1, alpha=alpha, kappa=omega0 / omega1)


def _check_denominator(d: float, scale: float, what: str):
    if abs(d) <= RESONANCE_RTOL * scale:
        raise ResonanceError(f"{what} denominator vanishes: electron transition resonant with drive")


def enhancement_factors(
    spin: HyperfineSpin,
    field: FieldConfig,
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
) -> EnhancementFactors:
    """First-order Rabi enhancement factors from the hyperfine couplings."""
    D, ge, gn = consts.delta, consts.gamma_e, consts.gamma_n_mhz
    A, B, B0 = spin.A, spin.B, field.B0
    ratio = ge / gn
    d_plus = D + B0 * (ge - gn) - A
    d_minus = D - B0 * (ge - gn) - A
    _check_denominator(d_plus, D, "zeta_+1")
    _check_denominator(d_minus, D, "zeta_-1")
    z0 = 1.0 - ratio * 4.0 * B * (D - A) / (d_plus * d_minus)
    zp = 1.0 + ratio * 2.0 * B / d_plus
    zm = 1.0 + ratio * 2.0 * B / d_minus
    return EnhancementFactors(z0, zp, zm)


def enhancement_factors_alpha_kappa(
    alpha: float,
    kappa: float,
    B0: float,
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
) -> EnhancementFactors:
    """Same factors written in terms of the +1-manifold ``(alpha, kappa)``.

    Algebraically identical to :func:`enhancement_factors` when ``alpha`` and
    ``kappa`` come from the ``m_s = +1`` control frame; it is kept as an
    independent evaluation path and used for synthetic frames.
    """
    D, ge, gn = consts.delta, consts.gamma_e, consts.gamma_n_mhz
    s, c = math.sin(alpha), math.cos(alpha)
    num = 2.0 * B0 * ge * s
    den_plus = kappa * (B0 * ge + D) - B0 * gn * c
    den_minus = kappa * (D - B0 * (ge - 2.0 * gn)) - B0 * gn * c
    den_zero = kappa * (B0 * gn + D) - B0 * gn * c
    _check_denominator(den_plus, kappa * D, "zeta_+1")
    _check_denominator(den_minus, kappa * D, "zeta_-1")
    z0 = 1.0 - 2.0 * num * den_zero / (den_plus * den_minus)
    zp = 1.0 + num / den_plus
    zm = 1.0 + num / den_minus
    return EnhancementFactors(z0, zp, zm)


def effective_angle(theta: float, phase_inversion: bool) -> float:
    return min(theta, 2.0 * math.pi - theta) if phase_inversion else theta


def direct_drive_time(
    theta: float,
    rabi_khz: float,
    zeta: float,
    phase_inversion: bool = False,
) -> float:
    """Gate time in microseconds for a resonant rf rotation by ``theta``.

    The effective Rabi frequency is ``|zeta| * rabi_khz``; with
    ``phase_inversion`` a rotation beyond pi is done backwards.
    """
    if not rabi_khz > 0:
        raise ValueError("bare Rabi frequency must be positive")
    if zeta == 0:
        raise ValueError("zeta = 0: the drive does not couple")
    if not (0.0 <= theta < 2.0 * math.pi):
        raise ValueError("theta must lie in [0, 2pi)")
    rabi_mhz = abs(zeta) * rabi_khz * 1e-3
    return effective_angle(theta, phase_inversion) / (2.0 * math.pi * rabi_mhz)


def rwa_check(omega_eff_khz: float, frame: ControlFrame, threshold: float = 0.1) -> bool:
    """True when the effective drive exceeds ``threshold`` times the Larmor frequency."""
    if not threshold > 0:
        raise ValueError("threshold must be positive")
    return abs(omega_eff_khz) > threshold * frame.omega0 * 1e3
