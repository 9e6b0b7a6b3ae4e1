"""
Unit system of the toolkit.

All quantities are dimensionless: ħ = 1, momenta in units of ħk_L, energies and
frequencies in units of the recoil frequency ω_rec = ħk_L²/(2m), times in ω_rec⁻¹.
SI values only appear at the boundary through a ``SiContext``.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from scipy.constants import hbar, physical_constants

from app.errors import InvalidParameterError, MissingSiContextError

logger = logging.getLogger(__name__)

ATOMIC_MASS_UNIT = physical_constants["atomic mass constant"][0]

# Beyond these the Bragg picture breaks down (quasi-Bragg regime)
QUASI_BRAGG_RABI_LIMIT = 8.0
QUASI_BRAGG_DETUNING_LIMIT = 8.0


class Quantity(Enum):
    TIME = "time"
    FREQUENCY = "frequency"
    MOMENTUM = "momentum"


class Direction(Enum):
    TO_SI = "to_si"
    TO_NATURAL = "to_natural"


@dataclass(frozen=True)
class SiContext:
    """Laser wavelength [m] and atomic mass [kg] fixing the recoil scale"""
    wavelength: float
    mass: float

    def __post_init__(self):
        if not (self.wavelength > 0 and self.mass > 0):
            raise InvalidParameterError(
                "SI context needs positive wavelength and mass",
                {"wavelength": self.wavelength, "mass": self.mass},
            )

    @classmethod
    def from_atomic_mass(cls, wavelength: float, mass_u: float) -> "SiContext":
        return cls(wavelength=wavelength, mass=mass_u * ATOMIC_MASS_UNIT)

    @classmethod
    def rubidium_87(cls) -> "SiContext":
        return cls.from_atomic_mass(780.1e-9, 86.909180531)

    @property
    def wavenumber(self) -> float:
        return 2.0 * math.pi / self.wavelength

    @property
    def recoil_frequency(self) -> float:
        """ω_rec in rad/s"""
        return hbar * self.wavenumber ** 2 / (2.0 * self.mass)

    @property
    def recoil_momentum(self) -> float:
        """ħk_L in kg·m/s"""
        return hbar * self.wavenumber


@dataclass(frozen=True)
class UnitSystem:
    """Dimensionless unit system, optionally anchored to SI"""
    si_context: Optional[SiContext] = None

    def require_si(self) -> SiContext:
        if self.si_context is None:
            raise MissingSiContextError("SI conversion requested without an SI context")
        return self.si_context


def si_convert(units: UnitSystem, value: float, direction: Direction,
               quantity: Quantity = Quantity.TIME) -> float:
    """
    Convert a value between recoil units and SI.

    Args:
        units: Unit system carrying the SI context
        value: Value to convert
        direction: TO_SI or TO_NATURAL
        quantity: Times use ω_rec⁻¹ [s], frequencies ω_rec [rad/s], momenta ħk_L [kg·m/s]

    Returns:
        Converted value
    """
    context = units.require_si()
    if quantity is Quantity.TIME:
        scale = 1.0 / context.recoil_frequency
    elif quantity is Quantity.FREQUENCY:
        scale = context.recoil_frequency
    else:
        scale = context.recoil_momentum
    return value * scale if direction is Direction.TO_SI else value / scale
