"""Shallow spherical shell drift and the corrugated twin-dual assembly.

The vertex drift ``f`` of a clamped shallow spherical diaphragm under a
uniform pressure ``p`` is the real root of the depressed cubic

    f**3 + alpha * f = eta

with

    D     = E h^3 / (12 (1 - nu^2))
    alpha = 56 h^2 / ((1 + nu)(23 - 9 nu))
    eta   = 7 p a^4 h^2 / (8 D (1 + nu)(23 - 9 nu))

The closed form is Cardano's ``f = A - alpha / (3 A)``.  The deflected
profile is ``w(r) = f (1 - (r/a)^2)^2``.

Every sector of a spherical corrugation adds ``w`` evaluated at the groove
radius, the two end shells each add ``f``, and the two facing corrugated
diaphragms double the one-side drift.

All lengths are metres and all pressures are pascals.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

from .errors import InvalidGeometryError, OutOfRangeError


class Structure(str, enum.Enum):
    """Diaphragm arrangement of the cell."""

    SINGLE_PLAIN = "single"
    DUAL_PLAIN = "dual"
    CORRUGATED_TWIN_DUAL = "corrugated"


class DriftMode(str, enum.Enum):
    """How absolute drift magnitudes are obtained.

    ``FORMULA`` uses the shell equations verbatim.  ``ANCHORED`` keeps the
    pressure dependence of the shell equations but rescales it so that the
    anchor pressure produces the configured end-shell drift and the
    configured groove vertex height.
    """

    FORMULA = "formula"
    ANCHORED = "anchored"


@dataclass(frozen=True)
class Material:
    young_modulus: float = 200e9
    poisson_ratio: float = 0.3

    def __post_init__(self):
        if not self.young_modulus > 0:
            raise InvalidGeometryError(f"young_modulus must be > 0, got {self.young_modulus}")
        if not 0 <= self.poisson_ratio < 0.5:
            raise InvalidGeometryError(f"poisson_ratio must be in [0, 0.5), got {self.poisson_ratio}")


@dataclass(frozen=True)
class ShellGeometry:
    """Spherical end shell.

    ``shell_height`` is carried for reporting only; no formula uses it.
    """

    rim_radius: float = 0.025
    thickness: float = 0.6e-3
    shell_height: float = 0.005

    def __post_init__(self):
        if not self.rim_radius > 0:
            raise InvalidGeometryError(f"rim_radius must be > 0, got {self.rim_radius}")
        if not 0 < self.thickness < self.rim_radius:
            raise InvalidGeometryError(
                f"thickness must lie in (0, rim_radius), got {self.thickness}"
            )


@dataclass(frozen=True)
class CorrugationGeometry:
    """One spherical corrugation ring made of ``sector_count`` slanted sectors.

    ``groove_vertex_height`` is the groove's vertex drift at the anchor
    pressure. ``groove_length`` only feeds the sector-length stability cap.
    """

    sector_count: int = 8
    groove_length: float = 0.005
    groove_radius: float = 0.02
    groove_vertex_height: float = 0.006

    def __post_init__(self):
        if self.sector_count < 0:
            raise InvalidGeometryError(f"sector_count must be >= 0, got {self.sector_count}")
        if not self.groove_radius > 0:
            raise InvalidGeometryError(f"groove_radius must be > 0, got {self.groove_radius}")
        if self.groove_vertex_height < 0:
            raise InvalidGeometryError("groove_vertex_height must be >= 0")
        if self.groove_length < 0:
            raise InvalidGeometryError("groove_length must be >= 0")


@dataclass(frozen=True)
class CellSpec:
    """Complete mechanical description of a pressure cell.

    Parameters
    ----------
    reference_pressure : float
        Standard pressure ``p_s`` against which ``drift_change`` is reported.
    anchor_pressure, anchor_end_drift : float
        Used by :attr:`DriftMode.ANCHORED` only: at ``anchor_pressure`` each
        end shell drifts by ``anchor_end_drift``.
    """

    material: Material = field(default_factory=Material)
    shell: ShellGeometry = field(default_factory=ShellGeometry)
    corrugation: CorrugationGeometry = field(default_factory=CorrugationGeometry)
    structure: Structure = Structure.CORRUGATED_TWIN_DUAL
    reference_pressure: float = 0.0
    anchor_pressure: float = 10.0
    anchor_end_drift: float = 0.002

    def __post_init__(self):
        object.__setattr__(self, "structure", Structure(self.structure))
        if not self.corrugation.groove_radius < self.shell.rim_radius:
            raise InvalidGeometryError(
                f"groove_radius {self.corrugation.groove_radius} must be smaller "
                f"than rim_radius {self.shell.rim_radius}"
            )
        if self.reference_pressure < 0:
            raise OutOfRangeError("reference_pressure must be >= 0")
        if not self.anchor_pressure > 0:
            raise OutOfRangeError("anchor_pressure must be > 0")
        if self.anchor_end_drift < 0:
            raise InvalidGeometryError("anchor_end_drift must be >= 0")

    @property
    def sector_count(self) -> int:
        """Sectors that actually contribute drift for this structure."""
        if self.structure is Structure.CORRUGATED_TWIN_DUAL:
            return self.corrugation.sector_count
        return 0


@dataclass(frozen=True)
class DriftCoefficients:
    flexural_rigidity: float
    cubic_linear_coeff: float
    cubic_constant: float


@dataclass(frozen=True)
class DriftReport:
    """Every drift quantity for one applied pressure (metres).

    ``effective_pickup_displacement`` is what the capacitor array sees:
    ``f_x`` for a single plain cell, ``2 f_x`` for a dual plain cell and the
    one-side total ``fd`` for the corrugated twin-dual cell.
    """

    pressure: float
    end_shell_drift: float
    drift_change: float
    sector_drift: float
    corrugation_total: float
    one_side_total: float
    relative_drift: float
    effective_pickup_displacement: float


def _check_pressure(pressure):
    if not pressure >= 0:
        raise OutOfRangeError(f"pressure must be >= 0, got {pressure}")


def flexural_rigidity(material: Material, thickness: float) -> float:
    """Plate bending stiffness ``E h^3 / (12 (1 - nu^2))`` in N*m."""
    if not thickness > 0:
        raise InvalidGeometryError(f"thickness must be > 0, got {thickness}")
    nu = material.poisson_ratio
    return material.young_modulus * thickness**3 / (12.0 * (1.0 - nu * nu))


def drift_coefficients(spec: CellSpec, pressure: float) -> DriftCoefficients:
    _check_pressure(pressure)
    h = spec.shell.thickness
    a = spec.shell.rim_radius
    nu = spec.material.poisson_ratio
    rigidity = flexural_rigidity(spec.material, h)
    shape = (1.0 + nu) * (23.0 - 9.0 * nu)
    alpha = 56.0 * h * h / shape
    eta = 7.0 * pressure * a**4 * h * h / (8.0 * rigidity * shape)
    return DriftCoefficients(rigidity, alpha, eta)


def solve_depressed_cubic(alpha: float, eta: float) -> float:
    """Real root of ``f**3 + alpha*f = eta`` for ``alpha > 0``.

    Cardano gives ``f = u - v`` with ``u = A`` and ``v = alpha/(3A)``.  When
    ``eta << alpha**1.5`` that difference cancels catastrophically, so it is
    evaluated as ``(u**3 - v**3) / (u**2 + u*v + v**2)`` where the numerator
    is exactly ``eta``.
    """
    if not alpha > 0:
        raise InvalidGeometryError(f"alpha must be > 0, got {alpha}")
    if eta == 0:
        return 0.0
    zeta = math.sqrt(alpha**3 / 27.0 + eta * eta / 4.0)
    u = math.copysign(abs(eta / 2.0 + zeta) ** (1.0 / 3.0), eta / 2.0 + zeta)
    v = alpha / (3.0 * u)
    f = eta / (u * u + alpha / 3.0 + v * v)
    # one Newton step removes the last few ulps of cbrt error
    return f - (f**3 + alpha * f - eta) / (3.0 * f * f + alpha)


def vertex_drift(spec: CellSpec, pressure: float) -> float:
    """Vertex drift of one end shell from the shell equations (metres)."""
    c = drift_coefficients(spec, pressure)
    return solve_depressed_cubic(c.cubic_linear_coeff, c.cubic_constant)


def deflection_at(vertex_height: float, radial_pos: float, rim_radius: float) -> float:
    """Shell altitude ``f (1 - (r/a)^2)^2`` at radius ``radial_pos``."""
    if not rim_radius > 0:
        raise InvalidGeometryError(f"rim_radius must be > 0, got {rim_radius}")
    if not 0 <= radial_pos <= rim_radius:
        raise OutOfRangeError(f"radial_pos {radial_pos} outside [0, {rim_radius}]")
    s = 1.0 - (radial_pos / rim_radius) ** 2
    return vertex_height * s * s


def sector_drift(corrugation: CorrugationGeometry, rim_radius: float, vertex_height: float) -> float:
    """Axial contribution of one corrugation sector."""
    return deflection_at(vertex_height, corrugation.groove_radius, rim_radius)


def aggregate_drift(structure, sector_count, per_sector, end_drift):
    """Combine per-sector and end-shell drift.

    Returns
    -------
    tuple of float
        ``(corrugation_total, one_side_total, relative_drift, effective)``
    """
    structure = Structure(structure)
    if structure is Structure.SINGLE_PLAIN:
        return 0.0, end_drift, end_drift, end_drift
    if structure is Structure.DUAL_PLAIN:
        return 0.0, end_drift, 2.0 * end_drift, 2.0 * end_drift
    corrugation_total = sector_count * per_sector
    one_side = corrugation_total + 2.0 * end_drift
    return corrugation_total, one_side, 2.0 * one_side, one_side


def response_ratio(spec: CellSpec, pressure: float) -> float:
    """Formula drift at ``pressure`` relative to formula drift at the anchor."""
    return vertex_drift(spec, pressure) / vertex_drift(spec, spec.anchor_pressure)


def end_shell_drift(spec: CellSpec, pressure: float, mode=DriftMode.ANCHORED) -> float:
    mode = DriftMode(mode)
    if mode is DriftMode.FORMULA:
        return vertex_drift(spec, pressure)
    return spec.anchor_end_drift * response_ratio(spec, pressure)


def groove_vertex_drift(spec: CellSpec, pressure: float, mode=DriftMode.ANCHORED) -> float:
    # formula mode has no independent groove model; the groove follows the shell vertex
    mode = DriftMode(mode)
    if mode is DriftMode.FORMULA:
        return vertex_drift(spec, pressure)
    return spec.corrugation.groove_vertex_height * response_ratio(spec, pressure)


def assembly_drift(spec: CellSpec, pressure: float, mode=DriftMode.ANCHORED) -> DriftReport:
    """Evaluate the whole drift chain of ``spec`` at ``pressure``.

    Examples
    --------
    >>> r = assembly_drift(CellSpec(), 10.0)
    >>> round(r.one_side_total * 100, 4)   # cm
    1.0221
    """
    _check_pressure(pressure)
    mode = DriftMode(mode)
    f_x = end_shell_drift(spec, pressure, mode)
    f_s = end_shell_drift(spec, spec.reference_pressure, mode)
    n = spec.sector_count
    if spec.structure is Structure.CORRUGATED_TWIN_DUAL:
        w_x = sector_drift(spec.corrugation, spec.shell.rim_radius,
                           groove_vertex_drift(spec, pressure, mode))
    else:
        w_x = 0.0
    total, one_side, relative, effective = aggregate_drift(spec.structure, n, w_x, f_x)
    return DriftReport(
        pressure=pressure,
        end_shell_drift=f_x,
        drift_change=f_x - f_s,
        sector_drift=w_x,
        corrugation_total=total,
        one_side_total=one_side,
        relative_drift=relative,
        effective_pickup_displacement=effective,
    )


def sector_length_exceeded(corrugation: CorrugationGeometry, max_groove_length: float) -> bool:
    """True (and warn) when the groove is longer than the stability cap."""
    if corrugation.groove_length > max_groove_length:
        warnings.warn(
            f"groove length {corrugation.groove_length:g} m exceeds the stability "
            f"cap {max_groove_length:g} m; diaphragm guidance may be needed",
            stacklevel=2,
        )
        return True
    return False
