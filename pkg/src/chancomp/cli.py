"""Command-line surface.

Subcommands:
  analyze    degradedness / capacity quantities for one or two channels
  region     rate regions and capacities for bc / prc / bdc models
  reproduce  reference tables (computed vs closed forms) as CSV
  verify     randomized verification suites
  replay     re-run a recorded manifest

Channels are given as `kind:param` shorthand (bsc:0.1, bec:0.4, z:0.3,
identity:4) or as paths to JSON channel files. Exit codes: 0 success,
1 parse error, 2 precondition violation, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .channels import ChannelError, DimensionMismatch, PreconditionError
from .degradedness import (
    eta_bounds_report,
    eta_kl,
    eta_ln,
    eta_mc,
    test_degraded,
)
from .infotheory import capacity_ba
from .io import (
    ParseError,
    RunManifest,
    format_fixed,
    load_manifest,
    parse_channel_spec,
    to_jsonable,
    write_csv,
    write_manifest,
)
from .regions import bc_inner_region, bdc_capacity, prc_capacity
from .reproduce import TARGETS, run_target
from .search import GridSpec
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_PRECONDITION = 2
EXIT_VERIFY = 3

ANALYZE_OPS = ("eta-ln", "eta-mc", "eta-kl", "degraded", "capacity", "eta-bounds")


def _budget_from_args(args) -> GridSpec:
    return GridSpec(resolution=args.resolution, restarts=args.restarts, seed=args.seed)


def _add_common(parser):
    parser.add_argument("--resolution", type=int, default=64, help="simplex grid resolution")
    parser.add_argument("--aux-size", type=int, default=None, help="auxiliary alphabet size")
    parser.add_argument("--restarts", type=int, default=64, help="random restarts for ascents")
    parser.add_argument("--trials", type=int, default=None, help="randomized trial count")
    parser.add_argument("--seed", type=int, default=None, help="random seed (required in CI mode)")
    parser.add_argument("--out", type=str, default=None, help="output file path")


def _resolve_seed(args) -> int:
    if args.seed is None:
        if os.environ.get("CI") or os.environ.get("CHANCOMP_REQUIRE_SEED"):
            raise PreconditionError("an explicit --seed is required in CI mode")
        return 0
    return args.seed


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chancomp", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="degradedness and capacity quantities")
    p_an.add_argument("op", choices=ANALYZE_OPS)
    p_an.add_argument("channels", nargs="+", help="one channel for eta-kl/capacity, two otherwise")
    _add_common(p_an)

    p_rg = sub.add_parser("region", help="rate regions and network capacities")
    p_rg.add_argument("model", choices=("bc", "prc", "bdc"))
    p_rg.add_argument("channels", nargs="+")
    p_rg.add_argument("--c12", type=float, default=0.0, help="conference capacity, bits")
    p_rg.add_argument("--c13", type=float, default=0.0, help="relay 1 link capacity, bits")
    p_rg.add_argument("--c23", type=float, default=0.0, help="relay 2 link capacity, bits")
    _add_common(p_rg)

    p_rp = sub.add_parser("reproduce", help="reference tables as CSV")
    p_rp.add_argument("target", choices=sorted(TARGETS))
    _add_common(p_rp)

    p_vf = sub.add_parser("verify", help="randomized verification suites")
    p_vf.add_argument("suite", choices=sorted(SUITES))
    _add_common(p_vf)

    p_re = sub.add_parser("replay", help="re-run a recorded manifest")
    p_re.add_argument("manifest", type=str)
    return parser


def _load_channels(specs, expected: int):
    if len(specs) != expected:
        raise ParseError(f"expected {expected} channel argument(s), got {len(specs)}")
    return [parse_channel_spec(s) for s in specs]


def _emit_report(doc: dict, out: str | None, argv, seed, budget: GridSpec, started: float):
    for key, value in doc.items():
        if isinstance(value, float):
            print(f"{key}: {value:.9g}")
        elif isinstance(value, dict):
            print(f"{key}:")
            for k2, v2 in value.items():
                print(f"  {k2}: {v2:.9g}" if isinstance(v2, float) else f"  {k2}: {v2}")
        else:
            print(f"{key}: {value}")
    if out:
        Path(out).write_text(json.dumps(to_jsonable(doc), indent=2, sort_keys=True, default=str) + "\n")
        write_manifest(out, RunManifest.capture(argv, seed, {"resolution": budget.resolution, "restarts": budget.restarts}, time.perf_counter() - started))


def cmd_analyze(args, argv) -> int:
    started = time.perf_counter()
    seed = _resolve_seed(args)
    budget = GridSpec(resolution=args.resolution, restarts=args.restarts, seed=seed)
    op = args.op
    if op in ("eta-kl", "capacity"):
        (ch,) = _load_channels(args.channels, 1)
        if op == "eta-kl":
            rep = eta_kl(ch, budget)
            doc = {
                "op": op,
                "value": rep.value,
                "comparable": rep.comparable,
                "witness": list(map(float, rep.witness.probs)),
                "method": rep.method,
                "certified_gap": rep.certified_gap,
            }
        else:
            res = capacity_ba(ch, tol=1e-9)
            doc = {
                "op": op,
                "capacity": res.capacity,
                "argmax": list(map(float, res.argmax.probs)),
                "iterations": res.iterations,
                "gap": res.gap,
            }
        _emit_report(doc, args.out, argv, seed, budget, started)
        return EXIT_OK
    ch1, ch2 = _load_channels(args.channels, 2)
    if op in ("eta-ln", "eta-mc"):
        rep = eta_ln(ch1, ch2, budget) if op == "eta-ln" else eta_mc(ch1, ch2, budget)
        doc = {
            "op": op,
            "value": rep.value,
            "comparable": rep.comparable,
            "witness": list(map(float, rep.witness.probs)),
            "method": rep.method,
            "certified_gap": rep.certified_gap,
        }
    elif op == "degraded":
        cert = test_degraded(ch1, ch2)
        doc = {
            "op": op,
            "degraded": cert.degraded,
            "status": cert.status,
            "residual": cert.residual,
            "dual_margin": cert.dual_margin,
        }
        if cert.intermediate is not None:
            doc["intermediate"] = [list(map(float, r)) for r in cert.intermediate.rows]
        if cert.dual_certificate is not None:
            doc["dual_certificate"] = list(map(float, cert.dual_certificate))
    else:  # eta-bounds
        rep = eta_bounds_report(ch1, ch2, budget)
        doc = {
            "op": op,
            "eta_ln": rep.eta_ln.value,
            "eta_kl_first": rep.eta_kl_first.value,
            "eta_kl_second": rep.eta_kl_second.value,
            "lower_bound": rep.lower_bound,
            "lower_slack": rep.lower_slack,
            "degraded": rep.degraded,
            "upper_bound": rep.upper_bound,
            "upper_slack": rep.upper_slack,
            "passed": rep.passed,
        }
    _emit_report(doc, args.out, argv, seed, budget, started)
    return EXIT_OK


def cmd_region(args, argv) -> int:
    started = time.perf_counter()
    seed = _resolve_seed(args)
    budget = GridSpec(resolution=args.resolution, restarts=args.restarts, seed=seed)
    model = args.model
    if model == "bc":
        ch1, ch2 = _load_channels(args.channels, 2)
        region = bc_inner_region(ch1, ch2, args.c12, args.aux_size, budget)
        header = ["R1", "R2"]
        rows = [[pt.r1, pt.r2] for pt in region.boundary]
        report = {"model": model, "c12": args.c12, "vertices": len(rows)}
    elif model == "prc":
        ch1, ch2 = _load_channels(args.channels, 2)
        rep = prc_capacity(ch1, ch2, args.c12, budget)
        header = ["rate"]
        value = rep.capacity_or_region if rep.conditions_hold else rep.capacity_or_region[0]
        rows = [[value]]
        report = {"model": model, "conditions_hold": rep.conditions_hold, "thresholds": rep.thresholds, "notes": rep.notes}
    else:
        ch1, ch2, ch3 = _load_channels(args.channels, 3)
        rep = bdc_capacity(ch1, ch2, ch3, args.c13, args.c23, budget)
        header = ["rate"]
        value = rep.capacity_or_region if rep.conditions_hold else rep.capacity_or_region[0]
        rows = [[value]]
        report = {"model": model, "conditions_hold": rep.conditions_hold, "thresholds": rep.thresholds, "notes": rep.notes}
    text = write_csv(args.out, header, rows)
    if args.out:
        Path(args.out + ".report.json").write_text(json.dumps(to_jsonable(report), indent=2, sort_keys=True, default=str) + "\n")
        write_manifest(args.out, RunManifest.capture(argv, seed, {"resolution": budget.resolution, "restarts": budget.restarts}, time.perf_counter() - started))
    else:
        sys.stdout.write(text)
        print(json.dumps(to_jsonable(report), sort_keys=True, default=str))
    return EXIT_OK


def cmd_reproduce(args, argv) -> int:
    started = time.perf_counter()
    seed = _resolve_seed(args)
    budget = GridSpec(resolution=args.resolution, restarts=args.restarts, seed=seed)
    header, rows = run_target(args.target, budget)
    out = args.out or f"{args.target}.csv"
    write_csv(out, header, rows)
    write_manifest(out, RunManifest.capture(argv, seed, {"resolution": budget.resolution, "restarts": budget.restarts}, time.perf_counter() - started))
    print(f"wrote {out} ({len(rows)} rows)")
    return EXIT_OK


def cmd_verify(args, argv) -> int:
    seed = _resolve_seed(args)
    trials = args.trials if args.trials is not None else 20
    if trials < 1:
        raise PreconditionError("trials must be >= 1")
    result = run_suite(args.suite, trials=trials, seed=seed)
    for line in result.lines:
        print(line)
    status = "PASS" if result.passed else "FAIL"
    print(f"{result.name}: {result.trials - result.failures}/{result.trials} pass, worst slack {result.worst_slack:+.3e} [{status}]")
    return EXIT_OK if result.passed else EXIT_VERIFY


def cmd_replay(args, argv) -> int:
    manifest = load_manifest(args.manifest)
    return main(list(manifest.command))


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "analyze":
            return cmd_analyze(args, argv)
        if args.command == "region":
            return cmd_region(args, argv)
        if args.command == "reproduce":
            return cmd_reproduce(args, argv)
        if args.command == "verify":
            return cmd_verify(args, argv)
        if args.command == "replay":
            return cmd_replay(args, argv)
        raise AssertionError("unreachable")
    except (ParseError, json.JSONDecodeError, FileNotFoundError, ChannelError) as exc:
        if isinstance(exc, (DimensionMismatch, PreconditionError)):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_PRECONDITION
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, DimensionMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    raise SystemExit(main())
