"""Batch command-line front-end.

Subcommands: design, sweep, ber, uncertain, rate.  All numeric output is
emitted at full double precision so repeated runs are byte-identical.
Exit codes: 0 success, 2 input error, 3 solver error.  The environment
variable SFD_THREADS caps how many sweep rows are computed in parallel.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .channel import ChannelStats, load_scenario, matrix_to_json
from .capacity import secrecy_capacity_degraded
from .design_wiener import design_zf_wiener
from .design_zf import design_zf_zf
from .exceptions import InputError, NotDegraded, SecrecyDesignError, SolverError
from .filters import ReceiverKind, achievable_secrecy_rate
from .montecarlo import simulate_ber_bpsk
from .uncertainty import design_scenario1_zf, design_scenario2_zf


def _fmt(x):
    return format(float(x), ".17g")


def _designer(eve_receiver):
    return design_zf_zf if eve_receiver == "zf" else design_zf_wiener


def _solution_dict(sol):
    return {
        "regime": sol.regime.value,
        "nu": sol.nu,
        "mu": sol.mu,
        "mse_main": sol.mse_main,
        "mse_eve": sol.mse_eve,
        "power": sol.power,
        "kkt_residual": sol.kkt_residual,
        "h_t": matrix_to_json(sol.t.h_t),
    }


def _thread_count():
    try:
        return max(1, int(os.environ.get("SFD_THREADS", "1")))
    except ValueError:
        return 1


def _map_rows(fn, values):
    workers = _thread_count()
    if workers == 1:
        return [fn(v) for v in values]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, values))


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def cmd_design(args):
    scenario = load_scenario(args.scenario)
    sol = _designer(args.eve_receiver)(scenario)
    json.dump(_solution_dict(sol), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def cmd_sweep(args):
    from dataclasses import replace

    scenario = load_scenario(args.scenario)
    if args.steps < 2:
        raise InputError("steps must be >= 2")
    if not args.start < args.stop:
        raise InputError("--from must be < --to")
    values = np.linspace(args.start, args.stop, args.steps)
    designer = _designer(args.eve_receiver)

    def row(value):
        if args.param == "gamma":
            inst = replace(scenario, gamma=float(value))
        else:
            inst = replace(scenario, p_avg=float(value))
        try:
            sol = designer(inst)
        except SecrecyDesignError as exc:
            return [_fmt(value), type(exc).__name__, "", "", "", "", ""]
        return [
            _fmt(value),
            sol.regime.value,
            _fmt(sol.nu),
            _fmt(sol.mu),
            _fmt(sol.mse_main),
            _fmt(sol.mse_eve),
            _fmt(sol.power),
        ]

    rows = _map_rows(row, values)
    _write_csv(
        args.out,
        "param_value,regime,nu,mu,mse_main,mse_eve_model,power_used",
        rows,
    )
    return 0


def cmd_ber(args):
    from dataclasses import replace

    scenario = load_scenario(args.scenario)
    if args.steps < 2:
        raise InputError("steps must be >= 2")
    if not args.start < args.stop:
        raise InputError("--from must be < --to")
    gamma = args.gamma if args.gamma is not None else scenario.gamma
    rx_eve = (
        ReceiverKind.ZERO_FORCING
        if args.eve_receiver == "zf"
        else ReceiverKind.WIENER
    )
    designer = _designer(args.eve_receiver)
    values = np.linspace(args.start, args.stop, args.steps)

    def row(value):
        inst = replace(scenario, p_avg=float(value), gamma=gamma)
        sol = designer(inst)
        ber_m, ber_e = simulate_ber_bpsk(inst, sol, rx_eve, args.trials, args.seed)
        return [
            _fmt(value),
            _fmt(ber_m.mean),
            _fmt(ber_e.mean),
            _fmt(ber_m.std_error),
            _fmt(ber_e.std_error),
        ]

    rows = _map_rows(row, values)
    _write_csv(args.out, "pavg,ber_main,ber_eve,stderr_main,stderr_eve", rows)
    return 0


def _matrix_from_json(rows):
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def cmd_uncertain(args):
    with open(args.stats) as fh:
        data = json.load(fh)
    p_avg = float(data["p_avg"])
    gamma = float(data["gamma"])
    stats_e = ChannelStats(
        sigma=_matrix_from_json(data["sigma_e"]), n_rows=int(data["n_e"])
    )
    if args.mode == "scenario1":
        stats_m = ChannelStats(
            sigma=_matrix_from_json(data["sigma_m"]), n_rows=int(data["n_m"])
        )
        sol = design_scenario1_zf(stats_m, stats_e, p_avg, gamma)
    else:
        if "h_m" not in data:
            raise InputError("scenario2 mode needs an exact 'h_m' matrix")
        sol = design_scenario2_zf(_matrix_from_json(data["h_m"]), stats_e, p_avg, gamma)
    json.dump(_solution_dict(sol), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def cmd_rate(args):
    from dataclasses import replace

    scenario = load_scenario(args.scenario)
    if args.steps < 2:
        raise InputError("steps must be >= 2")
    if not args.start < args.stop:
        raise InputError("--from must be < --to")
    designer = _designer(args.eve_receiver)
    values = np.linspace(args.start, args.stop, args.steps)

    def row(value):
        inst = replace(scenario, p_avg=float(value))
        sol = designer(inst)
        rate = achievable_secrecy_rate(inst, sol.t)
        try:
            cap = _fmt(
                secrecy_capacity_degraded(
                    inst.h_m, inst.h_e, inst.p_avg, seed=args.seed
                )
            )
        except NotDegraded:
            cap = ""
        return [_fmt(value), _fmt(rate), cap]

    rows = _map_rows(row, values)
    _write_csv(args.out, "pavg,rate_design,capacity_estimate", rows)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="secfilt",
        description="MIMO transmit filter design under secrecy constraints",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, scenario=True):
        if scenario:
            p.add_argument("--scenario", required=True, help="scenario JSON file")
        p.add_argument(
            "--eve-receiver", choices=["zf", "wiener"], default="zf",
            help="eavesdropper receiver assumed by the design",
        )

    p = sub.add_parser("design", help="solve one design instance")
    add_common(p)
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("sweep", help="sweep gamma or power, write CSV")
    add_common(p)
    p.add_argument("--param", choices=["gamma", "pavg"], required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("ber", help="BPSK bit error rate over a power sweep")
    add_common(p)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ber)

    p = sub.add_parser("uncertain", help="channel-uncertainty design")
    p.add_argument("--stats", required=True, help="statistics JSON file")
    p.add_argument("--mode", choices=["scenario1", "scenario2"], required=True)
    p.set_defaults(func=cmd_uncertain)

    p = sub.add_parser("rate", help="achievable secrecy rate vs capacity")
    add_common(p)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_rate)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 3
    except (InputError, OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
