"""AC capacitance bridge with two parallel-LC reference arms.

Topology (excitation ``V`` across both dividers, error taken between the
two midpoints)::

        V ──┬── C_t ──(a)── C_2 ──┬── 0
            └── L4‖C4 ─(b)─ L3‖C3 ┘

    e = V_a - V_b = V * (Z2 / (Zt + Z2) - Z3 / (Z4 + Z3))

The null ``Zt/Z2 = Z4/Z3`` gives

    C_t = C_2 * L3 (1 - w^2 L4 C4) / (L4 (1 - w^2 L3 C3))

which for ``L3 == L4`` is the familiar ratio of the two tank factors.
The difference amplifier is ideal with gain ``R2/R1``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import NamedTuple

from .errors import InvalidGeometryError, NoBalanceError, ResonanceError

RESONANCE_TOL = 1e-9

_F0 = 10e3
_W0 = 2 * math.pi * _F0
_C3 = 10e-9
_L = 0.5 / (_W0**2 * _C3)
# 0.9 / 0.5 * C3 puts the null at C_t = C_2 * 0.1 / 0.5 = 2 pF
_C4 = 0.9 / (_W0**2 * _L)


@dataclass(frozen=True)
class BridgeNetwork:
    c2: float = 10e-12
    l3: float = _L
    c3: float = _C3
    l4: float = _L
    c4: float = _C4
    excitation_amplitude: float = 1.0
    excitation_frequency: float = _F0
    r1: float = 1e3
    r2: float = 10e3

    def __post_init__(self):
        for name in ("c2", "l3", "c3", "l4", "c4", "excitation_amplitude",
                     "excitation_frequency", "r1", "r2"):
            if not getattr(self, name) > 0:
                raise InvalidGeometryError(f"{name} must be > 0, got {getattr(self, name)}")
        _tank_factor(self.l3, self.c3, self.omega)
        _tank_factor(self.l4, self.c4, self.omega)

    @property
    def omega(self) -> float:
        return 2.0 * math.pi * self.excitation_frequency

    @property
    def gain(self) -> float:
        return self.r2 / self.r1

    def with_gain(self, gain: float) -> "BridgeNetwork":
        return replace(self, r2=gain * self.r1)


@dataclass(frozen=True)
class PhasorSignal:
    amplitude: float
    phase: float = 0.0

    @classmethod
    def from_complex(cls, z: complex) -> "PhasorSignal":
        amp, ph = cmath.polar(z)
        if ph <= -math.pi:
            ph += 2 * math.pi
        return cls(amp, ph if amp > 0 else 0.0)

    def __complex__(self):
        return cmath.rect(self.amplitude, self.phase)


class ArmImpedances(NamedTuple):
    transducer: complex
    c2: complex
    tank3: complex
    tank4: complex


def _tank_factor(l, c, omega):
    k = 1.0 - omega * omega * l * c
    if abs(k) <= RESONANCE_TOL:
        raise ResonanceError(f"LC arm at resonance: |1 - w^2 L C| = {abs(k):.3g}")
    return k


def capacitor_impedance(capacitance: float, omega: float) -> complex:
    return 1.0 / (1j * omega * capacitance)


def tank_impedance(inductance: float, capacitance: float, omega: float) -> complex:
    """Impedance ``j w L / (1 - w^2 L C)`` of an inductor in parallel with a capacitor."""
    return 1j * omega * inductance / _tank_factor(inductance, capacitance, omega)


def arm_impedances(network: BridgeNetwork, transducer_capacitance: float) -> ArmImpedances:
    if not transducer_capacitance > 0:
        raise InvalidGeometryError("transducer_capacitance must be > 0")
    w = network.omega
    return ArmImpedances(
        capacitor_impedance(transducer_capacitance, w),
        capacitor_impedance(network.c2, w),
        tank_impedance(network.l3, network.c3, w),
        tank_impedance(network.l4, network.c4, w),
    )


def error_signal(network: BridgeNetwork, transducer_capacitance: float) -> PhasorSignal:
    """Midpoint voltage difference for a transducer capacitance."""
    z = arm_impedances(network, transducer_capacitance)
    v = network.excitation_amplitude
    va = v * z.c2 / (z.transducer + z.c2)
    vb = v * z.tank3 / (z.tank4 + z.tank3)
    return PhasorSignal.from_complex(va - vb)


def balance_capacitance(network: BridgeNetwork) -> float:
    """Transducer capacitance that nulls the bridge.

    Raises
    ------
    NoBalanceError
        If the null would need a non-positive capacitance.
    """
    w = network.omega
    k3 = _tank_factor(network.l3, network.c3, w)
    k4 = _tank_factor(network.l4, network.c4, w)
    ratio = network.l3 * k4 / (network.l4 * k3)
    if not ratio > 0:
        raise NoBalanceError(f"balance ratio {ratio:.4g} is not positive")
    return network.c2 * ratio


def amplified_output(network: BridgeNetwork, error: PhasorSignal) -> PhasorSignal:
    return PhasorSignal(network.gain * error.amplitude, error.phase)
