from __future__ import annotations

import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from diaphragm_cell import digitizer as dg
from diaphragm_cell.bridge import PhasorSignal
from diaphragm_cell.errors import NonMonotoneResponseError, OutOfRangeError
from diaphragm_cell.rig import Rig

DATA = Path(__file__).parent / "data"
ADC = dg.AdcSpec()


class TestRectifier:
    def test_amplitude(self):
        assert dg.rectify_peak(PhasorSignal(0.5, 1.2)) == 0.5

    def test_zero(self):
        assert dg.rectify_peak(PhasorSignal(0.0)) == 0.0

    def test_phase_invariant(self):
        assert dg.rectify_peak(PhasorSignal(0.3, 0.0)) == dg.rectify_peak(PhasorSignal(0.3, math.pi / 2))


class TestAdcDac:
    def test_endpoints(self):
        assert dg.adc_code(ADC, 0.0) == 0
        assert dg.adc_code(ADC, ADC.full_scale_voltage) == 4095

    def test_half_scale(self):
        assert dg.adc_code(ADC, ADC.full_scale_voltage / 2) == 2048

    def test_clamps(self):
        assert dg.adc_code(ADC, -1.0) == 0
        assert dg.adc_code(ADC, 99.0) == 4095

    def test_round_half_up(self):
        assert dg.adc_code(ADC, 0.5 * ADC.lsb) == 1
        assert dg.adc_code(ADC, 0.49 * ADC.lsb) == 0

    def test_array_input(self):
        np.testing.assert_array_equal(dg.adc_code(ADC, [0.0, 5.0]), [0, 4095])

    def test_dac_endpoints(self):
        assert dg.dac_voltage(ADC, 0) == 0.0
        assert dg.dac_voltage(ADC, 4095) == ADC.full_scale_voltage

    def test_dac_out_of_range(self):
        with pytest.raises(OutOfRangeError):
            dg.dac_voltage(ADC, 4096)

    def test_round_trip_mv_grid(self):
        v = np.arange(0, 5001) * 1e-3
        err = np.abs(dg.dac_voltage(ADC, dg.adc_code(ADC, v)) - v)
        assert err.max() <= ADC.full_scale_voltage / 2 / 4095 * (1 + 1e-12)


class TestBuildTable:
    def test_identity(self):
        table = dg.build_table(lambda p: p, (0, 4095))
        np.testing.assert_array_equal(table.entries, np.arange(4096))

    def test_quadratic(self):
        pmax = 50.0
        table = dg.build_table(lambda p: 4095 * (p / pmax) ** 2, (0, pmax))
        # brute force: every ADC code's exact pre-image vs. the table
        k = np.arange(4096)
        p = pmax * np.sqrt(k / 4095)
        forward = np.floor(4095 * (p / pmax) ** 2 + 0.5).astype(int)
        recovered = dg.linearize(table, forward)
        assert np.max(np.abs(recovered - table.pressure_code(p))) <= 1.0

    def test_non_monotone(self):
        def bump(p):
            return 4095 * p / 10 - (200 if 4 < p < 5 else 0)
        with pytest.raises(NonMonotoneResponseError):
            dg.build_table(bump, (0, 10))

    def test_tiny_jitter_tolerated(self):
        table = dg.build_table(lambda p: 409.5 * p + 0.5 * math.sin(p * 1e3), (0, 10))
        assert np.all(np.diff(table.entries.astype(int)) >= 0)

    def test_clamps_outside_response(self):
        table = dg.build_table(lambda p: 1000 + 200 * p, (0, 10))
        assert table.entries[500] == 0
        assert table.entries[1000] == 0
        assert table.entries[3000] == 4095
        assert table.entries[3500] == 4095

    def test_samples_floor(self):
        with pytest.raises(ValueError):
            dg.build_table(lambda p: p, (0, 1), samples=100)

    @given(a=st.floats(0.1, 5), b=st.floats(0.0, 3))
    def test_monotone_preserved(self, a, b):
        table = dg.build_table(lambda p: 4095 * (a * p + b * p**3) / (a + b), (0, 1), samples=4096)
        assert np.all(np.diff(table.entries.astype(int)) >= 0)


class TestLinearize:
    def test_identity(self):
        table = dg.LinearizationTable(np.arange(4096), 0, 4095)
        assert dg.linearize(table, 1234) == 1234
        assert dg.linearize(table, 0) == table.entries[0]

    def test_out_of_range(self):
        table = dg.LinearizationTable(np.arange(4096), 0, 4095)
        with pytest.raises(OutOfRangeError):
            dg.linearize(table, 4096)
        with pytest.raises(OutOfRangeError):
            dg.linearize(table, -1)

    def test_rejects_decreasing(self):
        e = np.arange(4096)
        e[10] = 0
        with pytest.raises(NonMonotoneResponseError):
            dg.LinearizationTable(e, 0, 1)


class TestBcd:
    @pytest.mark.parametrize("value,digits", [(1022, (1, 0, 2, 2)), (0, (0, 0, 0, 0)),
                                              (4095, (4, 0, 9, 5)), (7, (0, 0, 0, 7))])
    def test_examples(self, value, digits):
        assert dg.to_bcd(value) == digits

    def test_round_trip_all_codes(self):
        for v in range(4096):
            assert int("".join(map(str, dg.to_bcd(v)))) == v

    def test_overflow(self):
        with pytest.raises(OutOfRangeError):
            dg.to_bcd(10000)


class TestDisplay:
    def test_before_period(self):
        s = dg.DisplayState()
        assert dg.display_tick(s, 0.5, 1234) is s

    def test_one_period(self):
        s = dg.display_tick(dg.DisplayState(), 1.0, 1234)
        assert s.bcd_digits == (1, 2, 3, 4)
        assert s.last_latched == 1.0

    def test_several_periods(self):
        s = dg.display_tick(dg.DisplayState(last_latched=3.0), 5.7, 42)
        assert s.bcd_digits == (0, 0, 4, 2)
        assert s.last_latched == pytest.approx(5.0)

    def test_clock_backwards(self):
        with pytest.raises(OutOfRangeError):
            dg.display_tick(dg.DisplayState(last_latched=2.0), 1.0, 0)


class TestExport:
    def test_round_trip(self, tmp_path):
        table = dg.build_table(lambda p: 4095 * math.sqrt(p / 10), (0, 10), params={"note": "sqrt"})
        path, header = dg.export_table(table, tmp_path / "lut.bin")
        assert path.stat().st_size == 2 * 4096
        back = dg.import_table(path)
        assert back == table
        assert back.params["note"] == "sqrt"

    def test_little_endian_words(self, tmp_path):
        table = dg.LinearizationTable(np.arange(4096), 0, 4095)
        path, _ = dg.export_table(table, tmp_path / "id.bin")
        raw = path.read_bytes()
        assert raw[2:4] == b"\x01\x00"
        assert raw[-2:] == (4095).to_bytes(2, "little")

    def test_nominal_table_matches_golden(self, tmp_path):
        path, header = dg.export_table(Rig().table, tmp_path / "lut.bin")
        assert path.read_bytes() == (DATA / "nominal_lut.bin").read_bytes()
        assert header.read_text() == (DATA / "nominal_lut.bin.txt").read_text()
