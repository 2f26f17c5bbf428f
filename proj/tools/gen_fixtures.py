#!/usr/bin/env python3
"""Regenerates the arithmetic CSV fixtures under tests/fixtures."""
import argparse
import csv
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def write(path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(sorted(set(rows)))


def factorial(m):
    out = ROOT / "factorial"
    write(out / "dec.csv", ["A", "A'"], [(a, max(a - 1, 0)) for a in range(m + 1)])
    write(out / "mult.csv", ["A", "B'", "C"],
          [(a, b, a * b) for a in range(m + 1) for b in range(m + 1) if a * b <= m])
    cond = [(0, c, 1) for c in range(m + 1)] + [(a, c, c) for a in range(1, m + 1) for c in range(m + 1)]
    write(out / "cond.csv", ["A", "C", "B"], cond)


def times(n):
    write(ROOT / "queries" / "times.csv", ["X", "Y", "Z"],
          [(x, y, x * y) for x in range(n + 1) for y in range(n + 1) if x * y <= n])


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--factorial-max", type=int, default=24)
    p.add_argument("--times-max", type=int, default=81)
    args = p.parse_args()
    factorial(args.factorial_max)
    times(args.times_max)
