#!/usr/bin/env python3
"""Run every verification suite for both bundled groups.

Exit status 0 means all oracle comparisons agreed; 1 means some oracle
found a disagreement; 2 signals usage or cache problems.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from polycell.cli import main

ROOT = Path(__file__).resolve().parents[1]


def run():
    worst = 0
    # the classical recursion oracle is exponential in word length, so the
    # faster-growing quadrilateral group gets a shorter comparison window
    for group, radius, oracle_len in (("w237", 10, 8), ("w2224", 8, 4)):
        print(f"=== {group} ===")
        code = main([
            "verify", "all",
            "--group", str(ROOT / f"groups/{group}.json"),
            "--radius", str(radius),
            "--oracle-length", str(oracle_len),
            "--workspace", str(ROOT / "workspace"),
        ])
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(run())
