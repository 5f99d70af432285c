"""Interleaved concentric-cylinder capacitive pickup.

Cylinders fixed to one diaphragm slide into the gaps between cylinders fixed
to the facing diaphragm.  Capacitance grows with the axial overlap, so the
array is modelled as a baseline plus a slope per metre of extra overlap,
clamped once the plates are fully engaged.

The slope and baseline are normally fitted to measured anchor points with
:func:`calibrate`; :meth:`PlateArray.from_geometry` gives the coaxial
first-principles estimate for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.constants import epsilon_0

from .errors import IllPosedError, InvalidGeometryError


@dataclass(frozen=True)
class PlateArray:
    """Concentric-cylinder plate array.

    Cylinders (``2 * plate_pair_count`` of them) are evenly spaced between
    ``inner_radius`` and ``outer_radius``.  At rest they overlap by
    ``baseline_overlap``; the overlap can grow up to ``plate_length``.
    """

    plate_pair_count: int = 4
    outer_radius: float = 0.02
    inner_radius: float = 0.01
    plate_length: float = 0.015
    innermost_plate_length: float = 0.012
    permittivity: float = epsilon_0
    baseline_overlap: float = 0.003
    baseline_capacitance: float = 2e-12
    slope: float = 13e-12 / 0.0102208

    def __post_init__(self):
        if self.plate_pair_count < 1:
            raise InvalidGeometryError("plate_pair_count must be >= 1")
        if not 0 < self.inner_radius < self.outer_radius:
            raise InvalidGeometryError("need 0 < inner_radius < outer_radius")
        if not 0 < self.innermost_plate_length <= self.plate_length:
            raise InvalidGeometryError("need 0 < innermost_plate_length <= plate_length")
        if not 0 <= self.baseline_overlap <= self.plate_length:
            raise InvalidGeometryError("baseline_overlap must lie in [0, plate_length]")
        if not self.permittivity > 0:
            raise InvalidGeometryError("permittivity must be > 0")
        if not self.baseline_capacitance > 0:
            raise InvalidGeometryError("baseline_capacitance must be > 0")
        if not self.slope > 0:
            raise InvalidGeometryError("slope must be > 0")

    @property
    def radial_gap(self) -> float:
        return (self.outer_radius - self.inner_radius) / (2 * self.plate_pair_count - 1)

    @property
    def max_overlap(self) -> float:
        return self.plate_length

    @property
    def radii(self) -> np.ndarray:
        return np.linspace(self.inner_radius, self.outer_radius, 2 * self.plate_pair_count)

    def geometric_slope(self) -> float:
        """Coaxial capacitance per metre of overlap summed over every gap."""
        r = self.radii
        return float(sum(coaxial_pair_capacitance(r[i], r[i + 1], 1.0, self.permittivity)
                         for i in range(len(r) - 1)))

    @classmethod
    def from_geometry(cls, **kwargs) -> "PlateArray":
        """Uncalibrated array whose slope and baseline come from the coaxial formula."""
        proto = cls(**kwargs)
        slope = proto.geometric_slope()
        baseline = max(slope * proto.baseline_overlap, np.finfo(float).tiny)
        return replace(proto, slope=slope, baseline_capacitance=baseline)


@dataclass(frozen=True)
class CapacitanceReading:
    capacitance: float
    overlap_length: float
    saturated: bool


def parallel_plate_capacitance(permittivity: float, area: float, separation: float) -> float:
    if not separation > 0:
        raise InvalidGeometryError(f"separation must be > 0, got {separation}")
    if not area > 0:
        raise InvalidGeometryError(f"area must be > 0, got {area}")
    return permittivity * area / separation


def coaxial_pair_capacitance(inner_radius, outer_radius, overlap_length, permittivity):
    """Capacitance ``2 pi eps L / ln(b/a)`` of two coaxial cylinders."""
    if not 0 < inner_radius < outer_radius:
        raise InvalidGeometryError(
            f"need 0 < inner_radius < outer_radius, got {inner_radius}, {outer_radius}"
        )
    if overlap_length < 0:
        raise InvalidGeometryError("overlap_length must be >= 0")
    return 2.0 * math.pi * permittivity * overlap_length / math.log(outer_radius / inner_radius)


def array_capacitance(array: PlateArray, displacement: float) -> CapacitanceReading:
    """Capacitance of ``array`` after the diaphragms close by ``displacement``."""
    if displacement < 0:
        raise InvalidGeometryError(f"displacement must be >= 0, got {displacement}")
    wanted = array.baseline_overlap + displacement
    overlap = min(max(wanted, 0.0), array.max_overlap)
    saturated = wanted > array.max_overlap
    c = array.baseline_capacitance + array.slope * (overlap - array.baseline_overlap)
    return CapacitanceReading(c, overlap, saturated)


def calibrate(array: PlateArray, anchors) -> PlateArray:
    """Fit baseline and slope to ``(displacement, capacitance)`` anchors.

    Two anchors give an exact line; more are fitted by least squares.

    Raises
    ------
    IllPosedError
        Fewer than two distinct displacements, or a non-positive capacitance.
    """
    pts = np.asarray(anchors, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 2 or pts.shape[1] != 2:
        raise IllPosedError("need at least two (displacement, capacitance) anchors")
    x, c = pts[:, 0], pts[:, 1]
    if np.any(c <= 0):
        raise IllPosedError("anchor capacitances must be > 0")
    if np.unique(x).size < 2:
        raise IllPosedError("anchors must have distinct displacements")
    if pts.shape[0] == 2:
        slope = (c[1] - c[0]) / (x[1] - x[0])
        intercept = c[0] - slope * x[0]
    else:
        slope, intercept = np.polyfit(x, c, 1)
    if not slope > 0:
        raise IllPosedError("anchors imply a non-increasing capacitance")
    return replace(array, baseline_capacitance=float(intercept), slope=float(slope))
