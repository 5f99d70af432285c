"""Command line entry point: ``diaphragm-cell {simulate,calibrate,figures,inspect}``.

Exit codes: 0 success, 1 config error, 2 model error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import digitizer as dg
from .config import DEFAULT_TOML, load_config, parse_quantity
from .errors import ConfigError, ModelError
from .rig import Rig, RunConfig, write_records_csv

EXIT_OK, EXIT_CONFIG, EXIT_MODEL, EXIT_IO = 0, 1, 2, 3


def _rig(args, table=None) -> Rig:
    cfg = load_config(args.config) if args.config else RunConfig()
    if args.mode:
        cfg = replace(cfg, drift_mode=args.mode)
    return Rig(cfg, table=table)


def cmd_simulate(args):
    table = dg.import_table(args.table) if args.table else None
    rig = _rig(args, table)
    result = rig.run_experiment()
    path = write_records_csv(result.records, args.out)
    for k, v in result.summary.items():
        print(f"{k}: {v}")
    print(f"wrote {path}")


def cmd_calibrate(args):
    rig = _rig(args)
    for p in dg.export_table(rig.table, args.out):
        print(f"wrote {p}")


def cmd_figures(args):
    rig = _rig(args)
    for p in rig.emit_figure_datasets(args.outdir).values():
        print(f"wrote {p}")


def cmd_inspect(args):
    rig = _rig(args)
    p = parse_quantity(args.pressure, "pressure")
    rec = rig.run_chain(p)
    d = rec.drift
    rows = [
        ("applied pressure", f"{p:.6g} Pa"),
        ("end shell drift f_x", f"{d.end_shell_drift * 100:.6g} cm"),
        ("drift change", f"{d.drift_change * 100:.6g} cm"),
        ("sector drift w_x", f"{d.sector_drift * 100:.6g} cm"),
        ("corrugation total f_n", f"{d.corrugation_total * 100:.6g} cm"),
        ("one side total fd", f"{d.one_side_total * 100:.6g} cm"),
        ("relative drift fdr", f"{d.relative_drift * 100:.6g} cm"),
        ("pickup displacement", f"{d.effective_pickup_displacement * 100:.6g} cm"),
        ("capacitance", f"{rec.capacitance * 1e12:.6g} pF" + (" (saturated)" if rec.saturated else "")),
        ("bridge error", f"{rec.error_amplitude:.6g} V"),
        ("amplifier output", f"{rec.amplified_voltage:.6g} V (gain {rig.bridge.gain:.6g})"),
        ("ADC code", str(rec.adc_code)),
        ("pressure code", f"{rec.pressure_code}  BCD {''.join(map(str, dg.to_bcd(rec.pressure_code)))}"),
        ("DAC output", f"{rec.output_voltage:.6g} V"),
        ("measured pressure", f"{rec.measured_pressure:.6g} Pa"),
    ]
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        print(f"{k:<{width}}  {v}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diaphragm-cell", description=__doc__.splitlines()[0])
    parser.add_argument("--print-default-config", action="store_true",
                        help="print the default TOML config and exit")
    sub = parser.add_subparsers(dest="command")

    def common(p):
        p.add_argument("-c", "--config", type=Path, help="TOML run configuration")
        p.add_argument("--mode", choices=["anchored", "formula"], help="override drift mode")

    p = sub.add_parser("simulate", help="run the configured waveform, write records CSV")
    common(p)
    p.add_argument("-o", "--out", type=Path, default=Path("records.csv"))
    p.add_argument("--table", type=Path, help="use an exported lookup table")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("calibrate", help="build and export the lookup table")
    common(p)
    p.add_argument("-o", "--out", type=Path, default=Path("lut.bin"))
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("figures", help="write fig4/fig5/fig9 CSV datasets")
    common(p)
    p.add_argument("-o", "--outdir", type=Path, default=None)
    p.set_defaults(func=cmd_figures)

    p = sub.add_parser("inspect", help="print every stage value for one pressure")
    common(p)
    p.add_argument("pressure", help="applied pressure, e.g. 10 or '10 Pa'")
    p.set_defaults(func=cmd_inspect)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.print_default_config:
        sys.stdout.write(DEFAULT_TOML)
        return EXIT_OK
    if not args.command:
        parser.print_help()
        return EXIT_CONFIG
    try:
        args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ModelError as exc:
        print(f"model error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
