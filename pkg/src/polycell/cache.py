"""Persistent per-group workspace.

Layout under the workspace root, one directory per group:

    <group>/ball.r<N>.tsv     length <tab> word <tab> left <tab> right
    <group>/kl.r<N>.tsv       v <tab> w <tab> R coeffs <tab> P coeffs <tab> mu
    <group>/fsa/<name>.fsa    text automata, bit-exact round trip
    <group>/reports/*.json
    <group>/meta.json         group hash, tool version, validated k, stamps

Every artifact records a stamp (group hash, radius, k, version); a stamp
mismatch on read is treated as stale and forces recomputation.  Writes go
through a temp file and atomic rename.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .errors import CorruptCache
from .fsa import FSA, from_text, to_text
from .kl import KLTable
from .presentation import CoxeterPresentation, config_dict
from .words import ElementBall, PolygonGroup


def group_hash(pres: CoxeterPresentation) -> str:
    blob = json.dumps(config_dict(pres), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _atomic_write(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


@dataclass
class Workspace:
    root: Path

    def __init__(self, root):
        self.root = Path(root)

    def group_dir(self, pres: CoxeterPresentation) -> Path:
        return self.root / pres.label

    # --- meta / stamps ------------------------------------------------------

    def meta_path(self, pres) -> Path:
        return self.group_dir(pres) / "meta.json"

    def read_meta(self, pres) -> dict:
        path = self.meta_path(pres)
        if not path.exists():
            return {"group_hash": group_hash(pres), "tool_version": __version__,
                    "artifacts": {}}
        try:
            meta = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise CorruptCache(str(path)) from exc
        if meta.get("group_hash") != group_hash(pres) or \
                meta.get("tool_version") != __version__:
            return {"group_hash": group_hash(pres), "tool_version": __version__,
                    "artifacts": {}}
        return meta

    def write_meta(self, pres, meta: dict) -> None:
        meta["group_hash"] = group_hash(pres)
        meta["tool_version"] = __version__
        _atomic_write(self.meta_path(pres), json.dumps(meta, indent=2).encode())

    def stamp(self, pres, name: str, **params) -> None:
        meta = self.read_meta(pres)
        meta.setdefault("artifacts", {})[name] = params
        self.write_meta(pres, meta)

    def is_fresh(self, pres, name: str, **params) -> bool:
        meta = self.read_meta(pres)
        have = meta.get("artifacts", {}).get(name)
        path = self.group_dir(pres) / name
        return have == params and path.exists()

    def validated_k(self, pres) -> dict | None:
        return self.read_meta(pres).get("validated_k")

    def store_validated_k(self, pres, k: int, radius: int) -> None:
        meta = self.read_meta(pres)
        meta["validated_k"] = {"k": k, "radius": radius}
        self.write_meta(pres, meta)

    # --- ball ----------------------------------------------------------------

    def ball_name(self, radius: int) -> str:
        return f"ball.r{radius}.tsv"

    def write_ball(self, pres, group: PolygonGroup, ball: ElementBall) -> Path:
        names = pres.names
        lines = []
        for e in ball.elements:
            lines.append("\t".join([
                str(e.length),
                "".join(names[s] for s in e.word) or "-",
                "".join(names[s] for s in sorted(e.left)) or "-",
                "".join(names[s] for s in sorted(e.right)) or "-",
            ]))
        path = self.group_dir(pres) / self.ball_name(ball.radius)
        _atomic_write(path, ("\n".join(lines) + "\n").encode())
        self.stamp(pres, self.ball_name(ball.radius), radius=ball.radius)
        return path

    def read_ball_words(self, pres, radius: int) -> list[tuple[int, tuple[int, ...]]]:
        path = self.group_dir(pres) / self.ball_name(radius)
        out = []
        try:
            for line in path.read_text().splitlines():
                length, word, _left, _right = line.split("\t")
                out.append((int(length),
                            pres.parse_word("" if word == "-" else word)))
        except (ValueError, KeyError) as exc:
            raise CorruptCache(str(path)) from exc
        return out

    # --- KL -------------------------------------------------------------------

    def kl_name(self, radius: int) -> str:
        return f"kl.r{radius}.tsv"

    def write_kl(self, pres, table: KLTable) -> Path:
        table.fill()
        ball = table.ball
        names = pres.names

        def encode(word):
            return "".join(names[s] for s in word) or "-"

        lines = []
        order = sorted(range(len(ball.elements)),
                       key=lambda i: (ball.elements[i].length, ball.elements[i].word))
        for v in order:
            for w in order:
                if not table.leq_idx(v, w):
                    continue
                r = table.r_idx(v, w)
                p = table.p_idx(v, w)
                lines.append("\t".join([
                    encode(ball.elements[v].word),
                    encode(ball.elements[w].word),
                    ",".join(str(c) for c in r) or "0",
                    ",".join(str(c) for c in p) or "0",
                    str(table.mu_idx(v, w)),
                ]))
        path = self.group_dir(pres) / self.kl_name(ball.radius)
        _atomic_write(path, ("\n".join(lines) + "\n").encode())
        self.stamp(pres, self.kl_name(ball.radius), radius=ball.radius)
        return path

    def read_kl(self, pres, radius: int) -> list[tuple]:
        path = self.group_dir(pres) / self.kl_name(radius)
        out = []
        try:
            for line in path.read_text().splitlines():
                v, w, r, p, mu = line.split("\t")
                out.append((
                    pres.parse_word("" if v == "-" else v),
                    pres.parse_word("" if w == "-" else w),
                    tuple(int(c) for c in r.split(",")),
                    tuple(int(c) for c in p.split(",")),
                    int(mu),
                ))
        except (ValueError, KeyError) as exc:
            raise CorruptCache(str(path)) from exc
        return out

    # --- automata ---------------------------------------------------------------

    def fsa_path(self, pres, name: str) -> Path:
        return self.group_dir(pres) / "fsa" / f"{name}.fsa"

    def write_fsa(self, pres, name: str, fsa: FSA, **params) -> Path:
        path = self.fsa_path(pres, name)
        _atomic_write(path, to_text(fsa).encode())
        self.stamp(pres, f"fsa/{name}.fsa", **params)
        return path

    def read_fsa(self, pres, name: str) -> FSA:
        path = self.fsa_path(pres, name)
        try:
            return from_text(path.read_text())
        except (ValueError, IndexError) as exc:
            raise CorruptCache(str(path)) from exc

    # --- reports -------------------------------------------------------------

    def write_report(self, pres, name: str, text: str) -> Path:
        path = self.group_dir(pres) / "reports" / name
        _atomic_write(path, text.encode())
        return path
