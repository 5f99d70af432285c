"""Shell drift, deflection profile and assembly aggregation."""

from __future__ import annotations

from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diaphragm_cell import mechanics as mech
from diaphragm_cell.errors import InvalidGeometryError, OutOfRangeError

CM = 1e-2
NOMINAL = mech.CellSpec()

# hand evaluation of the rigidity/cubic coefficients at the nominal parameters
D_NOMINAL = 3.956043956043955
ALPHA_NOMINAL = 7.639257294429707e-07
ETA_NOMINAL_10PA = 1.1786099137931037e-14
# real root of f^3 + alpha f - eta from numpy.roots (companion-matrix eigenvalues)
F_NOMINAL_10PA = 1.54283312e-08


class TestFlexuralRigidity:
    def test_nominal_material(self):
        d = mech.flexural_rigidity(mech.Material(200e9, 0.3), 0.6e-3)
        np.testing.assert_allclose(d, D_NOMINAL, rtol=1e-12)
        assert d == pytest.approx(3.956, abs=5e-4)

    def test_unit_case(self):
        assert mech.flexural_rigidity(mech.Material(12.0, 0.0), 1.0) == 1.0

    def test_cubic_in_thickness(self):
        m = mech.Material()
        assert mech.flexural_rigidity(m, 2e-3) == pytest.approx(8 * mech.flexural_rigidity(m, 1e-3), rel=1e-14)

    @pytest.mark.parametrize("h", [0.0, -1e-3])
    def test_rejects_bad_thickness(self, h):
        with pytest.raises(InvalidGeometryError):
            mech.flexural_rigidity(mech.Material(), h)


class TestDriftCoefficients:
    def test_nominal_values(self):
        c = mech.drift_coefficients(NOMINAL, 10.0)
        np.testing.assert_allclose(c.flexural_rigidity, D_NOMINAL, rtol=1e-12)
        np.testing.assert_allclose(c.cubic_linear_coeff, ALPHA_NOMINAL, rtol=1e-12)
        np.testing.assert_allclose(c.cubic_constant, ETA_NOMINAL_10PA, rtol=1e-12)
        assert c.cubic_linear_coeff == pytest.approx(7.639e-7, rel=1e-4)
        assert c.cubic_constant == pytest.approx(1.179e-14, rel=1e-3)

    def test_zero_pressure(self):
        c0 = mech.drift_coefficients(NOMINAL, 0.0)
        assert c0.cubic_constant == 0.0
        assert c0.cubic_linear_coeff == mech.drift_coefficients(NOMINAL, 10.0).cubic_linear_coeff

    def test_linear_in_pressure(self):
        e1 = mech.drift_coefficients(NOMINAL, 3.0).cubic_constant
        e2 = mech.drift_coefficients(NOMINAL, 6.0).cubic_constant
        assert e2 == pytest.approx(2 * e1, rel=1e-15)

    def test_negative_pressure_rejected(self):
        with pytest.raises(OutOfRangeError):
            mech.drift_coefficients(NOMINAL, -1.0)


class TestVertexDrift:
    def test_zero(self):
        assert mech.vertex_drift(NOMINAL, 0.0) == 0.0

    def test_nominal_point(self):
        f = mech.vertex_drift(NOMINAL, 10.0)
        np.testing.assert_allclose(f, F_NOMINAL_10PA, rtol=1e-8)
        assert abs(f**3 + ALPHA_NOMINAL * f - ETA_NOMINAL_10PA) <= 1e-24
        # small-eta limit
        assert f == pytest.approx(ETA_NOMINAL_10PA / ALPHA_NOMINAL, rel=1e-8)

    def test_large_eta_matches_numpy_roots(self):
        alpha, eta = 1e-6, 1e-3
        roots = np.roots([1.0, 0.0, alpha, -eta])
        real = roots[np.abs(roots.imag) < 1e-12].real
        assert mech.solve_depressed_cubic(alpha, eta) == pytest.approx(real[0], rel=1e-12)

    @settings(max_examples=300, deadline=None)
    @given(alpha=st.floats(1e-12, 1e2), eta=st.floats(1e-30, 1e3))
    def test_cubic_residual(self, alpha, eta):
        f = mech.solve_depressed_cubic(alpha, eta)
        assert f >= 0
        assert abs(f**3 + alpha * f - eta) <= 1e-10 * max(eta, alpha * f)

    @settings(max_examples=100, deadline=None)
    @given(p1=st.floats(0, 1e5), p2=st.floats(0, 1e5))
    def test_monotone_in_pressure(self, p1, p2):
        lo, hi = sorted((p1, p2))
        assert mech.vertex_drift(NOMINAL, lo) <= mech.vertex_drift(NOMINAL, hi)


class TestDeflection:
    def test_nominal_groove(self):
        w = mech.deflection_at(0.6 * CM, 2 * CM, 2.5 * CM)
        assert w / CM == pytest.approx(0.07776, rel=1e-12)
        assert w / CM == pytest.approx(0.0776, rel=3e-3)

    def test_centre_and_rim(self):
        assert mech.deflection_at(0.3, 0.0, 2.0) == 0.3
        assert mech.deflection_at(0.3, 2.0, 2.0) == 0.0

    def test_beyond_rim(self):
        with pytest.raises(OutOfRangeError):
            mech.deflection_at(0.3, 2.1, 2.0)

    def test_decreasing_on_radius(self):
        r = np.linspace(0, 1, 201)
        w = [mech.deflection_at(1.0, ri, 1.0) for ri in r]
        assert np.all(np.diff(w) <= 0)


class TestSectorDrift:
    def test_nominal_groove(self):
        corr = mech.CorrugationGeometry(groove_radius=2 * CM)
        assert mech.sector_drift(corr, 2.5 * CM, 0.6 * CM) / CM == pytest.approx(0.07776)

    def test_zero_height(self):
        assert mech.sector_drift(mech.CorrugationGeometry(), 0.025, 0.0) == 0.0

    def test_rim_limit(self):
        corr = mech.CorrugationGeometry(groove_radius=0.025 * (1 - 1e-9))
        assert mech.sector_drift(corr, 0.025, 0.006) < 1e-18

    def test_groove_outside_rim_rejected(self):
        with pytest.raises(InvalidGeometryError):
            mech.CellSpec(corrugation=mech.CorrugationGeometry(groove_radius=0.03))


class TestAggregation:
    def test_nominal_eight_sectors(self):
        total, fd, fdr, eff = mech.aggregate_drift("corrugated", 8, 0.0776, 0.2)
        assert total == pytest.approx(0.6208)
        assert fd == pytest.approx(1.0208)
        assert fdr == pytest.approx(2 * fd)
        assert eff == fd

    def test_nominal_four_sectors(self):
        _, fd, _, _ = mech.aggregate_drift("corrugated", 4, 0.0776, 0.2)
        assert fd == pytest.approx(0.7104)

    def test_zero(self):
        assert mech.aggregate_drift("corrugated", 0, 0.0, 0.0) == (0.0, 0.0, 0.0, 0.0)

    @pytest.mark.parametrize("structure,expected", [("single", 0.2), ("dual", 0.4)])
    def test_plain_structures(self, structure, expected):
        assert mech.aggregate_drift(structure, 8, 0.0776, 0.2)[3] == pytest.approx(expected)


class TestAssemblyDrift:
    def test_anchored_nominal_numbers(self):
        r = mech.assembly_drift(NOMINAL, 10.0)
        assert r.end_shell_drift == pytest.approx(0.2 * CM, rel=1e-12)
        assert r.sector_drift == pytest.approx(0.07776 * CM, rel=1e-12)
        assert r.corrugation_total == pytest.approx(0.62208 * CM, rel=1e-12)
        assert r.one_side_total == pytest.approx(1.02208 * CM, rel=1e-12)
        assert r.relative_drift == pytest.approx(2.04416 * CM, rel=1e-12)
        assert r.effective_pickup_displacement == r.one_side_total

    def test_formula_mode_uses_shell_equations(self):
        r = mech.assembly_drift(NOMINAL, 10.0, "formula")
        assert r.end_shell_drift == pytest.approx(F_NOMINAL_10PA, rel=1e-8)
        assert r.sector_drift == pytest.approx(0.1296 * F_NOMINAL_10PA, rel=1e-8)

    @pytest.mark.parametrize("mode", list(mech.DriftMode))
    def test_zero_pressure_fixed_point(self, mode):
        r = mech.assembly_drift(NOMINAL, 0.0, mode)
        assert all(getattr(r, f) == 0.0 for f in
                   ("end_shell_drift", "drift_change", "sector_drift", "corrugation_total",
                    "one_side_total", "relative_drift", "effective_pickup_displacement"))

    def test_drift_change_against_reference(self):
        spec = replace(NOMINAL, reference_pressure=5.0)
        r = mech.assembly_drift(spec, 10.0)
        assert r.drift_change == pytest.approx(
            r.end_shell_drift - mech.assembly_drift(spec, 5.0).end_shell_drift)

    def test_negative_pressure_rejected(self):
        with pytest.raises(OutOfRangeError):
            mech.assembly_drift(NOMINAL, -0.1)

    @settings(max_examples=60, deadline=None)
    @given(n=st.integers(0, 40), p=st.floats(0, 1e3))
    def test_invariants(self, n, p):
        spec = replace(NOMINAL, corrugation=replace(NOMINAL.corrugation, sector_count=n))
        r = mech.assembly_drift(spec, p)
        assert r.corrugation_total == n * r.sector_drift
        assert r.one_side_total == r.corrugation_total + 2 * r.end_shell_drift
        assert r.relative_drift == 2 * r.one_side_total
        fields = (r.end_shell_drift, r.sector_drift, r.corrugation_total,
                  r.one_side_total, r.relative_drift)
        assert all(v >= 0 for v in fields)

    @settings(max_examples=60, deadline=None)
    @given(p1=st.floats(0, 1e3), p2=st.floats(0, 1e3), mode=st.sampled_from(list(mech.DriftMode)))
    def test_monotone_fields(self, p1, p2, mode):
        lo, hi = sorted((p1, p2))
        a = mech.assembly_drift(NOMINAL, lo, mode)
        b = mech.assembly_drift(NOMINAL, hi, mode)
        for name in ("end_shell_drift", "sector_drift", "corrugation_total",
                     "one_side_total", "relative_drift"):
            assert getattr(a, name) <= getattr(b, name)

    def test_plain_structures_ignore_sectors(self):
        for s in (mech.Structure.SINGLE_PLAIN, mech.Structure.DUAL_PLAIN):
            r = mech.assembly_drift(replace(NOMINAL, structure=s), 10.0)
            assert r.corrugation_total == 0.0


def test_sector_length_cap_warns():
    long = mech.CorrugationGeometry(groove_length=0.008)
    with pytest.warns(UserWarning, match="stability"):
        assert mech.sector_length_exceeded(long, 0.006)
    assert not mech.sector_length_exceeded(mech.CorrugationGeometry(), 0.006)


@pytest.mark.parametrize("kwargs", [
    dict(young_modulus=0.0), dict(poisson_ratio=0.5), dict(poisson_ratio=-0.1),
])
def test_material_validation(kwargs):
    with pytest.raises(InvalidGeometryError):
        mech.Material(**kwargs)
