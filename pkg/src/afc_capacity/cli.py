"""Command-line interface.

Scalar results go to stdout as JSON; tables go to ``--out`` as CSV (or to
stdout when no path is given). Numbers are written with 6 significant
digits. Exit codes: 0 success, 1 invalid input, 2 usage error.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import capacity as cap
from . import materials as mat
from . import multiplex, optimizer, spectral
from .errors import AfcError, InvalidParameter
from .model import AfcParams, ControlPulseParams, _Checks
from .reproduce import reproduce

MATERIALS_ENV = "AFC_MATERIALS_PATH"
SIG_DIGITS = 6
SUBCOMMANDS = ("capacity", "sw-capacity", "spectrum", "sweep", "multiplex", "materials",
               "rate", "reproduce")
TABLE_COMMANDS = ("spectrum", "sweep", "multiplex")


@dataclass
class RunConfig:
    subcommand: str
    config_path: str | None = None
    out_path: str | None = None
    output_format: str = "json"
    overrides: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        expected = "csv" if self.subcommand in TABLE_COMMANDS else "json"
        if self.output_format != expected:
            raise InvalidParameter("format", self.output_format,
                                   f"{self.subcommand} writes {expected}")

    def parameters(self) -> dict[str, Any]:
        """Config-file values (flattened) updated with ``--set`` overrides."""
        values: dict[str, Any] = {}
        if self.config_path:
            with open(self.config_path, encoding="utf-8") as fh:
                values.update(_flatten(json.load(fh)))
        for key, raw in self.overrides.items():
            values[key] = _parse_scalar(raw)
        return values


def _flatten(data: dict) -> dict[str, Any]:
    out = {}
    for key, value in data.items():
        if isinstance(value, dict):
            out.update(_flatten(value))
        else:
            out[key] = value
    return out


def _parse_scalar(raw: str):
    try:
        return float(raw)
    except ValueError:
        return raw


# -- formatting ---------------------------------------------------------------

def _num(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    return float(f"{float(x):.{SIG_DIGITS}g}")


def _round_tree(obj):
    if isinstance(obj, dict):
        return {k: _round_tree(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_tree(v) for v in obj]
    return _num(obj)


def _json(obj) -> str:
    return json.dumps(_round_tree(obj), indent=2) + "\n"


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return f"{x:.{SIG_DIGITS}g}"
    return str(x)


def _csv(columns: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_cell(row.get(c)) for c in columns) + "\n")
    return buf.getvalue()


def _emit_table(text: str, out_path: str | None, stdout) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)


# -- subcommands ----------------------------------------------------------------

def _pick(args, params: dict, flag: str, key: str):
    value = getattr(args, flag)
    return value if value is not None else params.get(key)


def _require(**values) -> None:
    """Report every missing or non-positive value in one error."""
    checks = _Checks()
    for name, value in values.items():
        if value is None:
            checks.require(False, name, value, "required")
        elif not isinstance(value, str):
            checks.positive(name, value)
    checks.raise_if_any()


def cmd_capacity(args, run: RunConfig, stdout) -> int:
    params = run.parameters()
    gamma = _pick(args, params, "gamma_hz", "bandwidth_gamma_hz")
    delay = _pick(args, params, "delay_s", "delay_s")
    t2 = _pick(args, params, "t2_s", "optical_t2_s")
    if args.eta is not None:
        _require(gamma_hz=gamma, t2_s=t2)
        report = cap.fixed_delay_capacity_at_efficiency(args.eta, t2, gamma)
        result = {"formula": "capacity_at_efficiency", **report.to_dict(),
                  "delay_s": cap.delay_for_efficiency(args.eta, t2)}
    else:
        _require(gamma_hz=gamma, delay_s=delay)
        afc = AfcParams(gamma, delay, optical_t2=t2)
        report = cap.fixed_delay_capacity(afc.bandwidth_gamma, afc.delay, afc.optical_t2)
        result = {"formula": "fixed_delay", **report.to_dict(),
                  "mode_bin_s": cap.mode_bin_from_bandwidth(gamma)}
    stdout.write(_json(result))
    return 0


def cmd_sw_capacity(args, run: RunConfig, stdout) -> int:
    params = run.parameters()
    if args.tc_s is not None or args.tm_s is not None:
        delay = _pick(args, params, "delay_s", "delay_s")
        _require(delay_s=delay, tc_s=args.tc_s, tm_s=args.tm_s)
        report = cap.spin_wave_capacity_explicit(delay, args.tc_s, args.tm_s)
        stdout.write(_json({"formula": "explicit", **report.to_dict()}))
        return 0
    gamma = _pick(args, params, "gamma_hz", "bandwidth_gamma_hz")
    omega = _pick(args, params, "omega_hz", "rabi_omega_hz")
    chi = _pick(args, params, "chi", "chi")
    chi = 1.0 if chi is None else chi
    if args.eta is not None:
        t2 = _pick(args, params, "t2_s", "optical_t2_s")
        _require(gamma_hz=gamma, omega_hz=omega, t2_s=t2)
        report = cap.spin_wave_capacity_at_efficiency(args.eta, t2, gamma, omega, chi)
        formula = "spin_wave_at_efficiency"
    else:
        delay = _pick(args, params, "delay_s", "delay_s")
        _require(gamma_hz=gamma, delay_s=delay, omega_hz=omega)
        report = cap.spin_wave_capacity(gamma, delay, omega, chi)
        formula = "spin_wave"
    ts = cap.hsh_square_duration(omega, gamma)
    pulse = ControlPulseParams(omega, ts, chi)
    result = {"formula": formula, **report.to_dict(),
              "square_duration_s": pulse.square_duration_ts,
              "cutoff_s": pulse.cutoff_tc,
              "transfer_efficiency": cap.hsh_transfer_efficiency(ts, omega, gamma)}
    stdout.write(_json(result))
    return 0


def cmd_spectrum(args, run: RunConfig, stdout) -> int:
    amplitudes = [float(a) for a in args.amplitudes.split(",") if a.strip()]
    train = spectral.synthesize_train(amplitudes, args.fwhm_s, args.mode_bin_s,
                                      args.sample_rate_hz)
    spec = spectral.power_spectrum(train, args.pad_factor)
    rows = [{"frequency_hz": float(f), "power_density": float(p)}
            for f, p in zip(spec.frequencies, spec.power_density)]
    _emit_table(_csv(["frequency_hz", "power_density"], rows), run.out_path, stdout)
    return 0


def cmd_sweep(args, run: RunConfig, stdout) -> int:
    with open(args.spec, encoding="utf-8") as fh:
        spec = optimizer.SweepSpec.from_json_dict(json.load(fh))
    columns, rows = optimizer.sweep(spec)
    _emit_table(_csv(columns, rows), run.out_path, stdout)
    return 0


def cmd_multiplex(args, run: RunConfig, stdout) -> int:
    dg, de, df = args.dg_hz, args.de_hz, args.df_hz
    profile = None
    if args.material:
        record = mat.lookup(args.material, _materials_path(args))
        profile = record.inhomogeneous
        if dg is None and de is None:
            dg, de = record.hyperfine_span, 0.0
        if df is None:
            df = record.feature_width
    if args.profile_shape or args.width_hz is not None:
        _require(profile_shape=args.profile_shape, width_hz=args.width_hz,
                 peak_od=args.peak_od)
        profile = multiplex.InhomogeneousProfile(args.profile_shape, args.width_hz,
                                                 args.peak_od)
    elif profile is not None and args.peak_od is not None:
        profile = multiplex.InhomogeneousProfile(profile.shape, profile.width, args.peak_od)
    _require(dg_hz=dg, df_hz=df)
    if profile is None:
        raise InvalidParameter("profile", None, "--material or --profile-shape/--width-hz")
    budget = multiplex.spectral_efficiency_budget(profile, dg, de or 0.0, df, args.n_modes)
    columns = ["mode_index", "center_hz", "od", "finesse", "efficiency", "within_fwhm"]
    table = _csv(columns, budget.rows())
    summary = _json({"n_modes": budget.n_modes, "average_efficiency": budget.average_efficiency,
                     "spacing_hz": budget.spacing})
    if run.out_path:
        _emit_table(table, run.out_path, stdout)
        stdout.write(summary)
    else:
        stdout.write(table)
        sys.stderr.write(summary)
    return 0


def _materials_path(args) -> str | None:
    return getattr(args, "file", None) or os.environ.get(MATERIALS_ENV) or None


def cmd_materials(args, run: RunConfig, stdout) -> int:
    records = mat.registry(_materials_path(args))
    if args.action == "list":
        stdout.write(_json(sorted(records)))
        return 0
    if not args.name:
        raise InvalidParameter("name", None, "required for 'show'")
    record = records.get(args.name) or mat.lookup(args.name, _materials_path(args))
    stdout.write(_json(record.to_json_dict()))
    return 0


def cmd_rate(args, run: RunConfig, stdout) -> int:
    tau = multiplex.communication_time(args.link_length_m, args.refractive_index)
    rate = multiplex.repeater_trial_rate(args.link_length_m, args.refractive_index,
                                         args.n_modes)
    stdout.write(_json({"rate_hz": rate, "tau_comm_s": tau, "n_modes": args.n_modes}))
    return 0


def cmd_reproduce(args, run: RunConfig, stdout) -> int:
    results = reproduce(args.case)
    failed = [r["case"] for r in results if not r["pass"]]
    if args.case == "all":
        payload = {"cases": results, "passed": len(results) - len(failed),
                   "failed": failed}
    else:
        payload = results[0]
    text = _json(payload)
    if run.out_path:
        _emit_table(text, run.out_path, stdout)
    else:
        stdout.write(text)
    return 1 if failed else 0


HANDLERS = {
    "capacity": cmd_capacity,
    "sw-capacity": cmd_sw_capacity,
    "spectrum": cmd_spectrum,
    "sweep": cmd_sweep,
    "multiplex": cmd_multiplex,
    "materials": cmd_materials,
    "rate": cmd_rate,
    "reproduce": cmd_reproduce,
}


def _key_value(text: str) -> tuple[str, str]:
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    key, value = text.split("=", 1)
    return key.strip(), value.strip()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="afc-capacity",
        description="Multimode capacity of atomic-frequency-comb quantum memories.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with parameter values")
    common.add_argument("--set", dest="overrides", action="append", type=_key_value,
                        default=[], metavar="KEY=VALUE", help="override a config value")
    common.add_argument("--out", help="write the result to this path")

    p = sub.add_parser("capacity", parents=[common], help="fixed-delay temporal capacity")
    p.add_argument("--gamma-hz", type=float)
    p.add_argument("--delay-s", type=float)
    p.add_argument("--t2-s", type=float)
    p.add_argument("--eta", type=float, help="target T2-limited relative efficiency")

    p = sub.add_parser("sw-capacity", parents=[common], help="spin-wave temporal capacity")
    p.add_argument("--gamma-hz", type=float)
    p.add_argument("--delay-s", type=float)
    p.add_argument("--omega-hz", type=float)
    p.add_argument("--chi", type=float)
    p.add_argument("--t2-s", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--tc-s", type=float, help="measured control cut-off (explicit form)")
    p.add_argument("--tm-s", type=float, help="mode bin (explicit form)")

    p = sub.add_parser("spectrum", parents=[common], help="power spectrum of a pulse train")
    p.add_argument("--amplitudes", required=True, help="comma-separated field amplitudes")
    p.add_argument("--fwhm-s", type=float, required=True)
    p.add_argument("--mode-bin-s", type=float, required=True)
    p.add_argument("--sample-rate-hz", type=float)
    p.add_argument("--pad-factor", type=int, default=spectral.DEFAULT_PAD_FACTOR)

    p = sub.add_parser("sweep", parents=[common], help="evaluate a formula on a grid")
    p.add_argument("--spec", required=True, help="JSON file describing the sweep")

    p = sub.add_parser("multiplex", parents=[common], help="spectral multiplexing budget")
    p.add_argument("--material")
    p.add_argument("--file", help="user materials JSON")
    p.add_argument("--profile-shape", choices=multiplex.PROFILE_SHAPES)
    p.add_argument("--width-hz", type=float)
    p.add_argument("--peak-od", type=float)
    p.add_argument("--dg-hz", type=float)
    p.add_argument("--de-hz", type=float)
    p.add_argument("--df-hz", type=float)
    p.add_argument("--n-modes", type=int, required=True)

    p = sub.add_parser("materials", parents=[common], help="material database")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p.add_argument("--file", help="user materials JSON (shadows built-ins)")

    p = sub.add_parser("rate", parents=[common], help="repeater trial rate")
    p.add_argument("--link-length-m", type=float, required=True)
    p.add_argument("--refractive-index", type=float, required=True)
    p.add_argument("--n-modes", type=int, default=1)

    p = sub.add_parser("reproduce", parents=[common], help="recompute published values")
    p.add_argument("--case", default="all")
    return parser


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    fmt = "csv" if args.subcommand in TABLE_COMMANDS else "json"
    try:
        config = RunConfig(args.subcommand, args.config, args.out, fmt, dict(args.overrides))
        return HANDLERS[args.subcommand](args, config, stdout)
    except AfcError as exc:
        stderr.write(json.dumps(exc.to_dict()) + "\n")
        return 1
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
