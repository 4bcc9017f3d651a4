"""Command-line front end.

Exit status: 0 on success, 1 on bad input, 2 on an unexpected failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from collections.abc import Sequence

from .analytic import (
    Objective,
    Optimum,
    optimal_tc_availability,
    optimal_tc_lost_time,
    round_display,
)
from .piecewise import SweepModel, default_domain, optimize_piecewise, sweep
from .simulator import SimConfig, compare_with_model
from .units import ModelError, ModelParams, ParseError, format_duration, parse_duration, to_unit

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2

TABLE1_ROWS = [
    (1, 1, 4),
    (1, 1, 16),
    (1, 30, 4),
    (1, 30, 16),
    (2, 1, 4),
    (2, 1, 16),
    (2, 30, 4),
    (2, 30, 16),
]
TABLE_IN_HEADER = ["tf_hours", "ts_secs", "tr_mins"]
TABLE_OUT_HEADER = TABLE_IN_HEADER + ["lost_time_optimal_mins", "availability_optimal_mins"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _duration(text: str) -> float:
    try:
        return parse_duration(text)
    except ParseError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _model_flag(text: str) -> str:
    aliases = {"continuous": "continuous", "latency": "latency", "with_latency": "latency"}
    if text not in aliases:
        raise argparse.ArgumentTypeError(f"unknown model {text!r}")
    return aliases[text]


def _add_params(sp: argparse.ArgumentParser, tc: bool = False) -> None:
    sp.add_argument("--tf", type=_duration, required=True, help="mean time to failure")
    sp.add_argument("--ts", type=_duration, required=True, help="exposed save time")
    sp.add_argument("--tr", type=_duration, default=0.0, help="recovery time")
    sp.add_argument("--te", type=_duration, default=0.0, help="error detection latency")
    if tc:
        sp.add_argument("--tc", type=_duration, required=True, help="checkpoint interval")
    sp.add_argument("--out", help="write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="optckpt", description="Checkpoint interval planning.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("optimal", help="lost-time and availability optimal intervals")
    _add_params(sp)
    sp.add_argument("--model", type=_model_flag, help="continuous or latency")
    sp.add_argument(
        "--objective", choices=["both", "lost_time", "availability"], default="both"
    )
    sp.add_argument("--from", dest="t_lo", type=_duration, help="search lower bound")
    sp.add_argument("--to", dest="t_hi", type=_duration, help="search upper bound")
    sp.add_argument("--unit", choices=["s", "min", "h"], default="min")

    sp = sub.add_parser("table", help="reproduce the optimal-interval table as CSV")
    sp.add_argument("--rows", help="CSV with header tf_hours,ts_secs,tr_mins")
    sp.add_argument("--out")

    sp = sub.add_parser("sweep", help="sample both objectives over a t_c range as CSV")
    _add_params(sp)
    sp.add_argument("--model", type=_model_flag)
    sp.add_argument("--from", dest="t_lo", type=_duration)
    sp.add_argument("--to", dest="t_hi", type=_duration)
    sp.add_argument("--step", type=_duration)

    sp = sub.add_parser("simulate", help="Monte Carlo check of the models at one t_c")
    _add_params(sp, tc=True)
    sp.add_argument("--cycles", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--retention", type=int)
    sp.add_argument("--workers", type=int, default=1, help="threads (output unchanged)")
    return parser


def _params(args) -> ModelParams:
    return ModelParams(args.tf, args.ts, args.tr, args.te)


def _echo_params(p: ModelParams) -> str:
    pairs = [("t_f", p.t_f, "h"), ("t_s", p.t_s, "s"), ("t_r", p.t_r, "min"), ("t_e", p.t_e, "min")]
    return "params: " + " ".join(f"{k}={format_duration(v, u, digits=6)}" for k, v, u in pairs)


def _resolve_model(args) -> str:
    return args.model or ("latency" if args.te > 0 else "continuous")


def _fmt_optimum(label: str, opt: Optimum, unit: str) -> list[str]:
    t = to_unit(opt.t_c_opt, unit)
    if opt.objective_kind is Objective.LOST_TIME:
        obj = f"lost time {round_display(to_unit(opt.objective_value, unit))} {unit} per failure"
    else:
        obj = f"availability {opt.objective_value:.6f}"
    return [f"{label} optimal t_c: {round_display(t)} {unit} ({obj}; {opt.method.value})"]


def cmd_optimal(args) -> str:
    p = _params(args)
    model = _resolve_model(args)
    kinds = [Objective.LOST_TIME, Objective.AVAILABILITY]
    if args.objective != "both":
        kinds = [Objective(args.objective)]
    results = {}
    for kind in kinds:
        if model == "continuous":
            fn = optimal_tc_lost_time if kind is Objective.LOST_TIME else optimal_tc_availability
            results[kind] = fn(p)
        else:
            lo, hi = default_domain(p, args.t_hi)
            if args.t_lo is not None:
                lo = args.t_lo
            results[kind] = optimize_piecewise(p, kind, (lo, hi))

    lines = [_echo_params(p), f"model: {model}"]
    for kind, opt in results.items():
        label = "lost-time" if kind is Objective.LOST_TIME else "availability"
        lines += _fmt_optimum(label, opt, args.unit)
    for kind, opt in results.items():
        key = kind.value
        lines.append(f"{key}_t_c_s={opt.t_c_opt!r}")
        lines.append(f"{key}_t_c_{args.unit}={to_unit(opt.t_c_opt, args.unit)!r}")
        lines.append(f"{key}_objective={opt.objective_value!r}")
        lines.append(f"{key}_method={opt.method.value}")
    return "\n".join(lines) + "\n"


def table_row(tf_hours: float, ts_secs: float, tr_mins: float) -> list[str]:
    p = ModelParams(tf_hours * 3600.0, float(ts_secs), tr_mins * 60.0)
    lt = optimal_tc_lost_time(p).t_c_opt / 60.0
    av = optimal_tc_availability(p).t_c_opt / 60.0
    return [f"{tf_hours:g}", f"{ts_secs:g}", f"{tr_mins:g}", str(round_display(lt)), str(round_display(av))]


def read_rows(text: str) -> list[tuple[float, float, float]]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != TABLE_IN_HEADER:
        raise ParseError(f"line 1: expected header {','.join(TABLE_IN_HEADER)}")
    rows = []
    for lineno, rec in enumerate(reader, start=2):
        if not rec or all(not f.strip() for f in rec):
            continue
        if len(rec) != 3:
            raise ParseError(f"line {lineno}: expected 3 fields, got {len(rec)}")
        try:
            vals = tuple(float(f) for f in rec)
        except ValueError:
            raise ParseError(f"line {lineno}: malformed number in {','.join(rec)!r}") from None
        if not all(v >= 0 for v in vals):
            raise ParseError(f"line {lineno}: values must be non-negative")
        rows.append(vals)
    return rows


def cmd_table(args) -> str:
    if args.rows:
        with open(args.rows, newline="") as fh:
            rows = read_rows(fh.read())
    else:
        rows = TABLE1_ROWS
    lines = [",".join(TABLE_OUT_HEADER)]
    lines += [",".join(table_row(*r)) for r in rows]
    return "\n".join(lines) + "\n"


def cmd_sweep(args) -> str:
    p = _params(args)
    model = SweepModel.WITH_LATENCY if _resolve_model(args) == "latency" else SweepModel.CONTINUOUS
    lo, hi = default_domain(p)
    lo = lo if args.t_lo is None else args.t_lo
    hi = hi if args.t_hi is None else args.t_hi
    step = args.step if args.step is not None else (hi - lo) / 1000 or 1.0
    return sweep(p, model, (lo, hi), step).to_csv()


def cmd_simulate(args) -> str:
    p = _params(args)
    cfg = SimConfig(p, args.tc, args.cycles, args.seed, args.retention)
    cmp = compare_with_model(cfg, workers=max(1, args.workers))
    sim = cmp.simulated
    model = "continuous" if p.t_e == 0 else "latency"
    lines = [
        f"cycles={sim.cycles}",
        f"seed={args.seed}",
        f"retention_depth={cfg.depth}",
        f"model={model}",
        f"mean_lost_time_per_cycle_s={sim.mean_lost_time_per_cycle!r}",
        f"stderr_lost_time_s={sim.stderr_lost_time!r}",
        f"availability_estimate={sim.availability_estimate!r}",
        f"stderr_availability={sim.stderr_availability!r}",
        f"restarts_from_origin={sim.restarts_from_origin}",
        f"model_lost_time_s={cmp.model_lost_time!r}",
        f"model_availability={cmp.model_availability!r}",
        "",
        "quantity,simulated,stderr,model,abs_error,rel_error",
    ]
    for name, s, se, m, err in (
        ("lost_time_s", sim.mean_lost_time_per_cycle, sim.stderr_lost_time, cmp.model_lost_time, cmp.abs_error_lost_time),
        ("availability", sim.availability_estimate, sim.stderr_availability, cmp.model_availability, cmp.abs_error_availability),
    ):
        rel = err / abs(m) if m else float("inf")
        lines.append(f"{name},{s:.9g},{se:.9g},{m:.9g},{err:.9g},{rel:.9g}")
    return "\n".join(lines) + "\n"


COMMANDS = {
    "optimal": cmd_optimal,
    "table": cmd_table,
    "sweep": cmd_sweep,
    "simulate": cmd_simulate,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = COMMANDS[args.command](args)
        if getattr(args, "out", None):
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except (ModelError, OSError) as e:
        print(f"optckpt: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as e:  # noqa: BLE001
        print(f"optckpt: internal error: {e!r}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
