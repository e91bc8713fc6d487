#!/usr/bin/env python3
"""Tabulate how many elements each conjectural cell contains per length.

Usage: python scripts/cell_growth_table.py [group.json] [max_length]
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from polycell import PolygonGroup, load_presentation
from polycell.automata import choose_k, shortlex_fsa
from polycell.cells import build_partition
from polycell.fsa import count_words, intersect

ROOT = Path(__file__).resolve().parents[1]


def run(config: str, max_len: int):
    pres = load_presentation(config)
    group = PolygonGroup(pres)
    k = choose_k(group, radius=10)
    part = build_partition(group, k)
    nf = shortlex_fsa(group)
    print(f"group {pres.label}: k = {k}, levels {part.data.levels}")
    header = "len  " + "".join(f"{lab:>8}" for lab in part.labels) + "   total"
    print(header)
    per_label = {
        lab: count_words(intersect(nf, part.languages[lab]), max_len)
        for lab in part.labels
    }
    for n in range(max_len + 1):
        row = [per_label[lab][n] for lab in part.labels]
        print(f"{n:>3}  " + "".join(f"{c:>8}" for c in row) + f"  {sum(row):>6}")


if __name__ == "__main__":
    cfg = sys.argv[1] if len(sys.argv) > 1 else str(ROOT / "groups/w237.json")
    run(cfg, int(sys.argv[2]) if len(sys.argv) > 2 else 14)
