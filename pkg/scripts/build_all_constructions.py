#!/usr/bin/env python3
"""Run every shipped construction and write artifacts, CSVs and plot data.

Outputs land in out/ (override with --outdir). Each artifact can be
re-checked later with `momentorder verify <artifact>`.
"""

import argparse
import pathlib
import subprocess
import sys
import time

JOBS = [
    ("kernel", ["construct", "kernel", "--n", "12"]),
    ("staged", ["construct", "staged", "--stages", "4"]),
    ("matched", ["construct", "matched", "--stages", "3"]),
    ("alternating", ["construct", "alternating", "--stages", "3"]),
    ("unimodal", ["construct", "unimodal", "--stages", "2"]),
    ("mixed-demo", ["construct", "mixed-demo", "--stages", "2"]),
    ("padded-runs", ["construct", "padded-runs", "--stages", "3", "--padded"]),
    ("discrete-cdf", ["construct", "discrete-cdf", "--a", "7/5", "--k-max", "20"]),
    ("ac-cdf", ["construct", "ac-cdf", "--a", "7/5", "--k-max", "10"]),
]


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--outdir", default="out")
    args = ap.parse_args()
    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, argv in JOBS:
        cmd = (
            [sys.executable, "-m", "momentorder.cli"]
            + argv
            + [
                "--artifact",
                str(outdir / f"{name}.artifact.json"),
                "--out",
                str(outdir / f"{name}.csv"),
                "--plot",
                str(outdir / f"{name}.dat"),
            ]
        )
        t0 = time.time()
        rc = subprocess.run(cmd).returncode
        print(f"{name}: exit {rc} in {time.time() - t0:.1f}s")
        if rc != 0:
            return rc
    print(f"artifacts in {outdir}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
