#!/usr/bin/env python3
"""Regenerate every figure data set and run the verification suites.

Writes CSV files into ./out (override with --out-dir) and exits nonzero if
any verification check fails.
"""

import argparse
import pathlib
import sys

from telecloning.cli import FIGURES, main as cli_main


def run(argv):
    print(f"$ telecloning {' '.join(argv)}")
    code = cli_main(argv)
    if code != 0:
        sys.exit(code)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="out")
    parser.add_argument("--samples", type=int, default=1_000_000)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    for name in FIGURES:
        run(["figure", name, "--out", str(out_dir / f"{name}.csv")])

    run([
        "sweep", "--vary", "nP=0:1:0.05", "--m", "port",
        "--out", str(out_dir / "port-sweep-mc.csv"),
        "--samples", str(args.samples // 50), "--seed", str(args.seed),
    ])

    run(["verify", "formulas", "--seed", str(args.seed)])
    run(["verify", "montecarlo", "--samples", str(args.samples), "--seed", str(args.seed)])
    run(["verify", "conversion", "--seed", str(args.seed)])
    print(f"all outputs written to {out_dir}/")


if __name__ == "__main__":
    main()
