"""Command-line surface: params, classify, sweep, verify, simulate.

Single results print as JSON (schema_version 1, floats at 17 significant
digits so repeated runs are byte-identical); sweeps write CSV.  Exit codes:
0 success, 1 validation failure, 2 verification failure.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import __version__, channels, checks, discrim, oracle, smallmat

SCHEMA_VERSION = 1
EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_VERIFICATION = 2

SWEEP_PARAMS = (
    "phi1", "theta1", "phi2", "theta2",
    "lambda1", "lambda2",
    "phi1p", "theta1p", "phi2p", "theta2p",
)

CSV_HEADER = (
    "axis1,axis2,alpha,beta,gamma1,gamma2,useful,node,boundary,"
    "single_dist,entangled_dist,gap"
)


def _fmt_float(x: float) -> str:
    x = float(x) + 0.0  # turns -0.0 into 0.0
    if not math.isfinite(x):
        raise ValueError("refusing to emit a non-finite number")
    return "%.17g" % x


def _emit_json(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f'{pad}  "{k}": {_emit_json(v, indent + 1)}' for k, v in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = ",\n".join(f"{pad}  {_emit_json(v, indent + 1)}" for v in obj)
        return "[\n" + items + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        escaped = (
            obj.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
        )
        return f'"{escaped}"'
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _print_record(record: dict) -> None:
    print(_emit_json(record))


def _base_record(command: str, seed=None) -> dict:
    rec = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "version": __version__,
    }
    if seed is not None:
        rec["seed"] = int(seed)
        rec["rng"] = oracle.RNG_ALGORITHM
    return rec


def _params_dict(p: discrim.DiscrimParams) -> dict:
    return {
        "alpha": p.alpha,
        "beta": p.beta,
        "gamma1": p.gamma1,
        "gamma2": p.gamma2,
        "gamma_m": p.gamma_m,
        "gamma_M": p.gamma_M,
        "P": p.P,
    }


def _distance_dict(r: discrim.DistanceResult) -> dict:
    return {
        "value": r.value,
        "arg": r.arg,
        "branch": r.branch,
        "scan_resolution": r.scan_resolution,
    }


def _classification_dict(c: discrim.Classification) -> dict:
    return {
        "useful": c.useful,
        "node": c.node,
        "boundary": c.boundary,
        "margins": dict(c.margins),
    }


def _parse_probe(text: str):
    head, _, body = text.partition("(")
    if not body.endswith(")"):
        raise channels.ChannelParseError(f"unrecognized probe literal {text!r}")
    parts = [p.strip() for p in body[:-1].split(",")]
    try:
        amps = [complex(p) for p in parts]
    except ValueError:
        raise channels.ChannelParseError(
            f"bad amplitude in probe literal {text!r}"
        ) from None
    norm = math.sqrt(sum(abs(a) ** 2 for a in amps))
    if norm == 0.0:
        raise channels.ChannelParseError(f"zero probe state {text!r}")
    amps = [a / norm for a in amps]
    if head == "qubit" and len(amps) == 2:
        return oracle.PureState2(amps[0], amps[1])
    if head == "pair" and len(amps) == 4:
        return oracle.PureState4(tuple(amps))
    raise channels.ChannelParseError(
        f"probe literal must be qubit(a0,a1) or pair(a00,a01,a10,a11): {text!r}"
    )


def cmd_params(args) -> int:
    c1 = channels.parse_channel(args.channel1)
    c2 = channels.parse_channel(args.channel2)
    rec = _base_record("params")
    rec["inputs"] = {
        "channel1": channels.format_channel(c1),
        "channel2": channels.format_channel(c2),
    }
    rec["params"] = _params_dict(discrim.compute_params(c1, c2))
    _print_record(rec)
    return EXIT_OK


def cmd_classify(args) -> int:
    c1 = channels.parse_channel(args.channel1)
    c2 = channels.parse_channel(args.channel2)
    p = discrim.compute_params(c1, c2)
    single = discrim.max_distance_single(p)
    ent = discrim.max_distance_entangled(p)
    rec = _base_record("classify")
    rec["inputs"] = {
        "channel1": channels.format_channel(c1),
        "channel2": channels.format_channel(c2),
    }
    rec["params"] = _params_dict(p)
    rec["single"] = _distance_dict(single)
    rec["entangled"] = _distance_dict(ent)
    rec["classification"] = _classification_dict(discrim.classify_pair(c1, c2))
    rec["success_single"] = discrim.success_probability(single.value)
    rec["success_entangled"] = discrim.success_probability(ent.value)
    rec["gap"] = ent.value - single.value
    _print_record(rec)
    return EXIT_OK


def _parse_axis(text: str):
    name, _, spec = text.partition("=")
    name = name.strip()
    if name not in SWEEP_PARAMS:
        raise ValueError(f"unknown sweep parameter {name!r}")
    pieces = spec.split(":")
    if len(pieces) != 3:
        raise ValueError(f"axis spec must be name=start:stop:steps, got {text!r}")
    start, stop = float(pieces[0]), float(pieces[1])
    steps = int(pieces[2])
    if steps < 2:
        raise ValueError(f"axis needs at least 2 steps: {text!r}")
    return name, start, stop, steps


def _sweep_channels(values: dict):
    c1 = channels.QubitChannel.mixture(
        values["lambda1"],
        channels.ExtremalChannel(values["phi1"], values["theta1"]),
        channels.ExtremalChannel(values["phi1p"], values["theta1p"]),
    )
    c2 = channels.QubitChannel.mixture(
        values["lambda2"],
        channels.ExtremalChannel(values["phi2"], values["theta2"]),
        channels.ExtremalChannel(values["phi2p"], values["theta2p"]),
    )
    return c1, c2


def cmd_sweep(args) -> int:
    axes = [_parse_axis(g) for g in args.grid]
    if not 1 <= len(axes) <= 2:
        raise ValueError("sweep needs one or two --grid axes")
    if len(axes) == 2 and axes[0][0] == axes[1][0]:
        raise ValueError(f"sweep axes must differ, got {axes[0][0]!r} twice")
    fixed = {
        "phi1": 0.0, "theta1": 0.0, "phi2": 0.0, "theta2": 0.0,
        "lambda1": 1.0, "lambda2": 1.0,
        "phi1p": 0.0, "theta1p": 0.0, "phi2p": 0.0, "theta2p": 0.0,
    }
    for item in args.fix:
        name, _, value = item.partition("=")
        name = name.strip()
        if name not in SWEEP_PARAMS:
            raise ValueError(f"unknown fixed parameter {name!r}")
        fixed[name] = float(value)

    def axis_values(axis):
        _, start, stop, steps = axis
        return [start + (stop - start) * i / (steps - 1) for i in range(steps)]

    rows = []
    grids = [axis_values(a) for a in axes]
    first = grids[0]
    second = grids[1] if len(axes) == 2 else [None]
    for v1 in first:
        for v2 in second:
            values = dict(fixed)
            values[axes[0][0]] = v1
            if v2 is not None:
                values[axes[1][0]] = v2
            c1, c2 = _sweep_channels(values)
            p = discrim.compute_params(c1, c2)
            single = discrim.max_distance_single(p).value
            ent = discrim.max_distance_entangled(p).value
            cls = discrim.classify_pair(c1, c2)
            rows.append(
                ",".join(
                    [
                        _fmt_float(v1),
                        "" if v2 is None else _fmt_float(v2),
                        _fmt_float(p.alpha),
                        _fmt_float(p.beta),
                        _fmt_float(p.gamma1),
                        _fmt_float(p.gamma2),
                        "true" if cls.useful else "false",
                        cls.node,
                        "true" if cls.boundary else "false",
                        _fmt_float(single),
                        _fmt_float(ent),
                        _fmt_float(ent - single),
                    ]
                )
            )
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(CSV_HEADER + "\n")
            for row in rows:
                fh.write(row + "\n")
    except OSError as exc:
        raise ValueError(f"cannot write {args.out!r}: {exc}") from None
    rec = _base_record("sweep")
    rec["out"] = args.out
    rec["rows"] = len(rows)
    _print_record(rec)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = oracle.SearchConfig(
        grid_points=96, multistarts=16, refine_tol=1e-10, rng_seed=args.seed
    )
    if args.mode == "lemma1":
        report = checks.check_lemma1(args.samples, args.seed, cfg)
    elif args.mode == "lemma2":
        report = checks.check_lemma2(args.samples, args.seed, cfg)
    elif args.mode == "tree":
        report = checks.check_tree(args.samples, args.seed, cfg)
    elif args.mode == "montecarlo":
        trials = args.trials if args.trials else 10**6
        report = checks.check_montecarlo(trials, args.seed, cfg)
    else:
        raise ValueError(f"unknown verify mode {args.mode!r}")
    rec = _base_record("verify", seed=args.seed)
    rec["report"] = report
    _print_record(rec)
    return EXIT_OK if report["passed"] else EXIT_VERIFICATION


def cmd_simulate(args) -> int:
    c1 = channels.parse_channel(args.channel1)
    c2 = channels.parse_channel(args.channel2)
    cfg = oracle.SearchConfig(rng_seed=args.seed)
    if args.optimal:
        probe, _ = oracle.optimal_entangled_probe(c1, c2, cfg)
    elif args.probe is not None:
        probe = _parse_probe(args.probe)
    else:
        raise ValueError("simulate needs a probe literal or --optimal")
    if isinstance(probe, oracle.PureState2):
        delta = oracle.delta_single(c1, c2, probe)
        probe_kind = "qubit"
    else:
        delta = oracle.delta_entangled(c1, c2, probe)
        probe_kind = "pair"
    distance = smallmat.trace_norm(delta)
    meas = oracle.helstrom(delta)
    theoretical = discrim.success_probability(distance)
    empirical = oracle.simulate(c1, c2, probe, meas, args.trials, args.seed)
    sigma = 0.5 / math.sqrt(args.trials)
    rec = _base_record("simulate", seed=args.seed)
    rec["inputs"] = {
        "channel1": channels.format_channel(c1),
        "channel2": channels.format_channel(c2),
        "probe": probe_kind,
        "optimal": bool(args.optimal),
        "trials": args.trials,
    }
    rec["distance"] = distance
    rec["theoretical_success"] = theoretical
    rec["empirical_success"] = empirical
    rec["z"] = (empirical - theoretical) / sigma
    _print_record(rec)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entdisc",
        description="Decide whether side entanglement helps discriminate two "
        "qubit channels in the diagonal form.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("params", help="discrimination parameters of a pair")
    p.add_argument("channel1")
    p.add_argument("channel2")
    p.set_defaults(fn=cmd_params)

    p = sub.add_parser("classify", help="distances, verdict and tree node")
    p.add_argument("channel1")
    p.add_argument("channel2")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("sweep", help="grid sweep over channel parameters, CSV out")
    p.add_argument("fix", nargs="*", help="fixed parameters as name=value")
    p.add_argument("--grid", action="append", required=True,
                   help="axis as name=start:stop:steps (1 or 2 axes)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("verify", help="seeded oracle-equivalence sweeps")
    p.add_argument("--mode", required=True,
                   choices=["lemma1", "lemma2", "tree", "montecarlo"])
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=0,
                   help="Monte-Carlo trials (montecarlo mode)")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("simulate", help="seeded Helstrom discrimination runs")
    p.add_argument("channel1")
    p.add_argument("channel2")
    p.add_argument("probe", nargs="?", default=None,
                   help="qubit(a0,a1) or pair(a00,a01,a10,a11)")
    p.add_argument("--optimal", action="store_true",
                   help="use the best entangled probe from the oracle")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(fn=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_VALIDATION if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except (channels.ChannelParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
