"""``cohesion-lab`` command line interface."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import datasets, experiments, heuristics
from .game import DEFAULT_EXACT_CAP, ExactCapExceeded, Status, is_socially_cohesive, quick_rejection
from .graph import EdgeListParseError, GraphError, format_edge_list, read_edge_list
from .reduction import build_instance, verify_reduction

EXIT_CODES = {Status.COHESIVE: 0, Status.NOT_COHESIVE: 1, Status.INCONCLUSIVE: 2}
EXIT_PARSE = 3
EXIT_CAP = 4


def _methods(text: str) -> list[str]:
    out = [m.strip().lower() for m in text.split(",") if m.strip()]
    for m in out:
        if m not in heuristics.METHODS:
            raise argparse.ArgumentTypeError(f"unknown method {m!r}")
    return out


def _write(out: str | None, csv_text: str, json_text: str) -> None:
    if out is None:
        sys.stdout.write(csv_text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    csv_path = path if path.suffix == ".csv" else path.with_suffix(".csv")
    csv_path.write_text(csv_text)
    csv_path.with_suffix(".json").write_text(json_text)


def _load(path: str):
    try:
        return read_edge_list(path)
    except (EdgeListParseError, GraphError, OSError) as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return None


def cmd_check(args) -> int:
    g = _load(args.graph)
    if g is None:
        return EXIT_PARSE
    if args.quick_only:
        verdict = quick_rejection(g)
        if verdict is None:
            for m in args.methods:
                v = heuristics.heuristic_cohesion_test(g, m, args.seed)
                if v.status is Status.NOT_COHESIVE:
                    verdict = v
                    break
        if verdict is None:
            verdict = heuristics.CohesionVerdict(Status.INCONCLUSIVE, heuristics.Method.QUICK_TEST)
    else:
        try:
            verdict = is_socially_cohesive(g, exact_cap=args.exact_cap)
        except ExactCapExceeded as exc:
            print(f"error: {exc}; rerun with --quick-only or a larger --exact-cap", file=sys.stderr)
            return EXIT_CAP
    print(verdict.to_json(g))
    return EXIT_CODES[verdict.status]


def cmd_enumerate(args) -> int:
    rep = experiments.cmd_enumerate(args.n, args.methods, args.exact_cap,
                                    check_stability=not args.no_stability, workers=args.workers)
    _write(args.out, rep.to_csv(), rep.to_json())
    return 0


def cmd_sample(args) -> int:
    reports = []
    for n in args.n:
        reports.append(experiments.cmd_sample(
            n, args.samples, args.seed, args.methods, args.exact_cap,
            check_stability=not args.no_stability, connected_only=args.connected_only,
            workers=args.workers))
    rep = experiments.ExperimentReport("sample", [r for x in reports for r in x.rows])
    _write(args.out, rep.to_csv(), rep.to_json())
    return 0


def cmd_real(args) -> int:
    if not Path(args.graph).exists() and args.graph in datasets.KNOWN_SIZES:
        try:
            g = datasets.load(args.graph)
        except datasets.DatasetUnavailable as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_PARSE
    else:
        g = _load(args.graph)
    if g is None:
        return EXIT_PARSE
    name = args.name or Path(args.graph).stem
    rep = experiments.cmd_real(g, name, args.methods, args.exact_cap, args.seed)
    _write(args.out, rep.to_csv(), rep.to_json())
    return 0


def cmd_reduce(args) -> int:
    g = _load(args.graph)
    if g is None:
        return EXIT_PARSE
    try:
        inst = build_instance(g, args.k)
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sidecar = inst.sidecar()
    if args.verify:
        sidecar["verified"] = verify_reduction(g, args.k)
    prefix = Path(args.out or "instance")
    prefix.parent.mkdir(parents=True, exist_ok=True)
    prefix.with_suffix(".edges").write_text(format_edge_list(inst.h))
    prefix.with_suffix(".json").write_text(json.dumps(sidecar))
    print(json.dumps({k: v for k, v in sidecar.items() if k not in ("v1", "v2")}))
    return 0


def cmd_report(args) -> int:
    texts = [Path(p).read_text() for p in args.reports]
    rep = experiments.merge_reports(texts)
    _write(args.out, rep.to_csv(), rep.to_json())
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--methods", type=_methods, default=list(heuristics.METHODS),
                        help="comma separated subset of lm,ap")
    common.add_argument("--exact-cap", type=int, default=DEFAULT_EXACT_CAP,
                        help="largest n decided by exhaustive search")
    common.add_argument("--out", default=None, help="output path (CSV plus a JSON mirror)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="cohesion-lab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="decide social cohesion of an edge list")
    c.add_argument("graph")
    c.add_argument("--quick-only", action="store_true", help="quick tests and heuristics only")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("enumerate", parents=[common], help="all connected graphs of size n")
    e.add_argument("n", type=int)
    e.add_argument("--no-stability", action="store_true", help="skip exact core-stability checks")
    e.add_argument("--workers", type=int, default=1)
    e.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("sample", parents=[common], help="uniformly sampled graphs of size n")
    s.add_argument("n", type=int, nargs="+")
    s.add_argument("--samples", type=int, default=experiments.DEFAULT_SAMPLES)
    s.add_argument("--connected-only", action="store_true")
    s.add_argument("--no-stability", action="store_true", help="skip exact core-stability checks")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_sample)

    r = sub.add_parser("real", parents=[common], help="heuristics on a real network")
    r.add_argument("graph", help="edge list file, or a dataset name such as karate")
    r.add_argument("--name", default=None)
    r.set_defaults(func=cmd_real)

    d = sub.add_parser("reduce", parents=[common], help="build the clique reduction instance")
    d.add_argument("graph")
    d.add_argument("-k", type=int, required=True)
    d.add_argument("--verify", action="store_true")
    d.set_defaults(func=cmd_reduce)

    rp = sub.add_parser("report", parents=[common], help="merge JSON reports into one CSV")
    rp.add_argument("reports", nargs="+")
    rp.set_defaults(func=cmd_report)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
