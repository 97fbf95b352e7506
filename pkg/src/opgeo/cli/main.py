"""``opgeo run`` and ``opgeo verify``.

Exit codes: 0 when everything passes, 1 on a verification failure (or an
undecided check), 2 on a script or usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from ..scalar import precision
from ..verify import EXPLORATORY, SUITES, SuiteConfig, run_suite
from .dsl import ScriptError, parse
from .interpreter import RunConfig, run

EXIT_OK, EXIT_FAIL, EXIT_SCRIPT = 0, 1, 2


def _ceiling(flag: int | None) -> int | None:
    """--precision-bits wins over OPGEO_MAX_PRECISION, which wins over the default."""
    if flag is not None:
        return flag
    env = os.environ.get("OPGEO_MAX_PRECISION")
    return int(env) if env else None


def cmd_run(args: argparse.Namespace) -> int:
    path = Path(args.script)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"opgeo: cannot read {path}: {exc.strerror}", file=sys.stderr)
        return EXIT_SCRIPT
    try:
        script = parse(text)
        out = run(script, RunConfig(precision_bits=_ceiling(args.precision_bits), exploratory=args.exploratory))
    except ScriptError as err:
        print(err.format(str(path)), file=sys.stderr)
        return EXIT_SCRIPT
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    payload = {"script": path.name, **out.to_dict()}
    (out_dir / f"{path.stem}.json").write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    for name, data in sorted(out.scenes.items()):
        (out_dir / f"{name}.svg").write_bytes(data)
    if args.report == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(out.to_text())
    return EXIT_FAIL if out.failed else EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        cfg = SuiteConfig(seed=args.seed, trials=args.trials, frame_dimension=args.dim,
                          mode=args.mode, samples=args.samples)
        with precision(max_bits=_ceiling(args.precision_bits)):
            report = run_suite(args.suite, cfg, exploratory=args.exploratory)
    except (ValueError, KeyError, PermissionError) as exc:
        print(f"opgeo: {exc}", file=sys.stderr)
        return EXIT_SCRIPT
    print(report.to_json() if args.report == "json" else report.to_text())
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="opgeo", description="Operational geometry kernel")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="execute a construction script")
    r.add_argument("script")
    r.add_argument("--out-dir", default="out")
    r.add_argument("--report", choices=("json", "text"), default="text")
    r.add_argument("--precision-bits", type=int, default=None)
    r.add_argument("--exploratory", action="store_true")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", help="run a randomized verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=1000)
    v.add_argument("--dim", type=int, choices=(2, 3), default=3)
    v.add_argument("--mode", choices=("exact", "interval-only"), default="exact")
    v.add_argument("--samples", type=int, default=1000, help="sampled points per topology witness")
    v.add_argument("--report", choices=("json", "text"), default="json")
    v.add_argument("--precision-bits", type=int, default=None)
    v.add_argument("--exploratory", action="store_true",
                   help=f"allow exploratory suites ({', '.join(sorted(EXPLORATORY))})")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_SCRIPT if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
