#!/usr/bin/env python3
"""Render the tessellation pictures for the two bundled groups.

Writes into figures/: the two-sided partition of the (2,3,7) triangle
group at radius 8, the right-cell decomposition of its top cell, and the
two-sided partition of the (2,2,2,4) quadrilateral group.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from polycell.cli import main

ROOT = Path(__file__).resolve().parents[1]
OUT = ROOT / "figures"


def run():
    OUT.mkdir(exist_ok=True)
    jobs = [
        ["render", "--group", str(ROOT / "groups/w237.json"),
         "--radius", "8", "--coloring", "twosided",
         "--out", str(OUT / "w237_twosided_r8.svg")],
        ["render", "--group", str(ROOT / "groups/w237.json"),
         "--radius", "10", "--coloring", "onesided:3",
         "--out", str(OUT / "w237_onesided_level3_r10.svg")],
        ["render", "--group", str(ROOT / "groups/w2224.json"),
         "--radius", "8", "--coloring", "twosided",
         "--out", str(OUT / "w2224_twosided_r8.svg")],
    ]
    for job in jobs:
        code = main(job + ["--workspace", str(ROOT / "workspace")])
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(run())
