"""Run every verification suite and write one JSON report per suite.

    python3 scripts/run_all_suites.py --trials 2000 --seed 1 --out reports/
"""
import argparse
import json
from pathlib import Path

from opgeo.verify import EXPLORATORY, SUITES, SuiteConfig, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--dims", nargs="+", type=int, default=[2, 3])
    ap.add_argument("--samples", type=int, default=200, help="sampled points per topology witness")
    ap.add_argument("--out", type=Path, default=Path("reports"))
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    bad = 0
    for dim in args.dims:
        for name in SUITES:
            if name in EXPLORATORY and dim != 2:
                continue
            cfg = SuiteConfig(seed=args.seed, trials=args.trials, frame_dimension=dim, samples=args.samples)
            rep = run_suite(name, cfg, exploratory=True)
            (args.out / f"{name}_{dim}d.json").write_text(json.dumps(rep.to_dict(), indent=2) + "\n")
            status = "ok" if rep.ok else f"{rep.failures} failed, {rep.uncertain} uncertain"
            print(f"{name:<14} {dim}D  {rep.elapsed_ms / 1000:7.1f}s  {status}")
            bad += not rep.ok
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
