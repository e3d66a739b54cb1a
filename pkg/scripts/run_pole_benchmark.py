#!/usr/bin/env python3
"""Sinc product accuracy of every pole family on the benchmark matrices.

Writes one CSV per matrix into the output directory.  Pass --small for
a quick smoke run on reduced orders.
"""

import argparse
import pathlib
import sys

from sincint.cli import main as cli


def run(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results", help="output directory")
    ap.add_argument("--n-max", type=int, default=12)
    ap.add_argument("--small", action="store_true")
    args = ap.parse_args(argv)

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for matrix in ("lap1d", "lap2d", "fem"):
        out = outdir / f"poles_{matrix}.csv"
        cmd = ["poles-bench", "--matrix", matrix, "--n-max", str(args.n_max),
               "--out", str(out)]
        if args.small:
            cmd.append("--small")
        rc = cli(cmd)
        if rc != 0:
            return rc
        print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(run())
