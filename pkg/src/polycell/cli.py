"""Command-line pipelines over a persistent workspace.

Exit codes: 0 success, 1 a verification found a disagreement, 2 usage,
resource, or cache-integrity errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .automata import (
    canonical_fsa,
    choose_k,
    element_counts,
    factor_fsa,
    red_x_mu,
    shortlex_fsa,
    validate_k,
)
from .cache import Workspace, group_hash
from .cells import (
    ConjecturalPartition,
    build_partition,
    descent_class_fsa,
    dihedral_data,
    omega_minimal,
    partition_is_exact,
    u_t_fsa,
)
from .compare import empirical_vs_conjectural
from .errors import (
    CorruptCache,
    KNotValidated,
    PolycellError,
    ResourceLimit,
    VerificationDisagreement,
)
from .fsa import FSA, are_equivalent, count_words, from_text
from .kl import KLTable
from .oracle import ClassicalKL, braid_closure, oracle_classify, unique_reduced_census
from .presentation import load_presentation
from .render import PALETTE, realize_polygon, render_svg, scene_for_partition
from .words import PolygonGroup

_GROUP_CACHE: dict[str, PolygonGroup] = {}


def _context(args):
    pres = load_presentation(args.group)
    key = group_hash(pres)
    group = _GROUP_CACHE.get(key)
    if group is None:
        group = PolygonGroup(pres)
        _GROUP_CACHE[key] = group
    ws = Workspace(args.workspace)
    return pres, group, ws


def _resolve_k(ws: Workspace, pres, group, k_arg: str, validation_radius: int = 10) -> int:
    cached = ws.validated_k(pres)
    if k_arg == "auto":
        if cached and cached["radius"] >= validation_radius:
            return cached["k"]
        k = choose_k(group, radius=validation_radius)
        ws.store_validated_k(pres, k, validation_radius)
        return k
    k = int(k_arg)
    if cached and cached["k"] <= k and cached["radius"] >= validation_radius:
        return k
    if not validate_k(group, k, validation_radius):
        raise KNotValidated(
            f"k={k} fails fellow-traveler validation at radius {validation_radius}"
        )
    ws.store_validated_k(pres, k, validation_radius)
    return k


def _partition(ws, pres, group, k: int) -> ConjecturalPartition:
    return build_partition(group, k)


# --- subcommand implementations ----------------------------------------------


def cmd_group_info(args) -> int:
    pres, group, ws = _context(args)
    data = dihedral_data(pres)
    info = {
        "name": pres.label,
        "hash": group_hash(pres),
        "generators": list(pres.names),
        "coxeter_matrix": [
            ["inf" if m == float("inf") else int(m) for m in row]
            for row in pres.matrix
        ],
        "dihedral_longest_words": [
            pres.word_str(e.longest_word) for e in data.entries
        ],
        "levels": list(data.levels),
        "predicted_two_sided_cells": data.predicted_cell_count,
        "small_roots": group.table.size,
        "canonical_states": len(group.transitions),
    }
    print(json.dumps(info, indent=2))
    return 0


def cmd_ball(args) -> int:
    pres, group, ws = _context(args)
    name = ws.ball_name(args.radius)
    if ws.is_fresh(pres, name, radius=args.radius):
        print(f"cached {ws.group_dir(pres) / name}")
        return 0
    ball = group.ball(args.radius, cap=args.cap)
    path = ws.write_ball(pres, group, ball)
    print(f"computed {path} ({len(ball)} elements)")
    return 0


def cmd_kl(args) -> int:
    pres, group, ws = _context(args)
    name = ws.kl_name(args.radius)
    if ws.is_fresh(pres, name, radius=args.radius):
        print(f"cached {ws.group_dir(pres) / name}")
        return 0
    table = KLTable(group, group.ball(args.radius, cap=args.cap))
    path = ws.write_kl(pres, table)
    print(f"computed {path}")
    return 0


def cmd_cells(args) -> int:
    pres, group, ws = _context(args)
    k = _resolve_k(ws, pres, group, args.k)
    if args.mode == "conjectural":
        part = _partition(ws, pres, group, k)
        refs = {}
        for label in part.labels:
            path = ws.write_fsa(pres, f"cell_{label}", part.languages[label],
                                k=k, kind="cell")
            refs[label] = str(path)
        from .fsa import intersect

        nf = shortlex_fsa(group)
        counts = {
            label: count_words(intersect(nf, part.languages[label]), args.radius)
            for label in part.labels
        }
        word_counts = {
            label: count_words(part.languages[label], args.radius)
            for label in part.labels
        }
        report = {
            "group": pres.label,
            "k": k,
            "radius": args.radius,
            "trust_margin": args.trust_margin,
            "exact_partition": partition_is_exact(part),
            "element_counts_by_length": counts,
            "word_counts_by_length": word_counts,
            "fsa_files": refs,
        }
        text = json.dumps(report, indent=2) + "\n"
        path = ws.write_report(pres, f"partition.r{args.radius}.json", text)
        print(f"wrote {path}")
        return 0
    if args.mode == "empirical":
        from .kl import cells as scc_cells, two_sided_cells, w_graph

        ball = group.ball(args.radius, cap=args.cap)
        table = KLTable(group, ball)
        left = scc_cells(w_graph(ball, "left", table))
        right = scc_cells(w_graph(ball, "right", table))
        joined = two_sided_cells(left, right)
        report = {
            "group": pres.label,
            "radius": args.radius,
            "left_cells": len(left),
            "right_cells": len(right),
            "two_sided_cells": len(joined),
            "cells": [
                [pres.word_str(ball.elements[i].word) for i in comp]
                for comp in joined
            ],
        }
        path = ws.write_report(pres, f"empirical.r{args.radius}.json",
                               json.dumps(report, indent=2) + "\n")
        print(f"wrote {path}")
        return 0
    # compare
    part = _partition(ws, pres, group, k)
    report = empirical_vs_conjectural(group, part, args.radius,
                                      trust_margin=args.trust_margin)
    path = ws.write_report(pres, f"compare.r{args.radius}.json", report.to_json())
    print(f"wrote {path} (agreement {report.agreement_ratio:.3f})")
    if not report.partition_equal:
        raise VerificationDisagreement("empirical cells disagree with the partition")
    return 0


def _build_target(args, pres, group, ws, target: str) -> FSA:
    k = _resolve_k(ws, pres, group, args.k)
    if target == "canonical":
        return canonical_fsa(group)
    if target == "shortlex":
        return shortlex_fsa(group)
    if target.startswith("cell:"):
        part = _partition(ws, pres, group, k)
        return part.languages[target.split(":", 1)[1]]
    if target.startswith("pattern:"):
        return red_x_mu(group, pres.parse_word(target.split(":", 1)[1]), k)
    if target.startswith("factor:"):
        return factor_fsa(group, pres.parse_word(target.split(":", 1)[1]))
    if target.startswith("descent:"):
        letters = target.split(":", 1)[1]
        return descent_class_fsa(group, frozenset(pres.parse_word(letters)))
    if target.startswith("ut:"):
        part = _partition(ws, pres, group, k)
        pair = tuple(sorted(pres.parse_word(target.split(":", 1)[1])))
        return u_t_fsa(part, pair)
    raise PolycellError(f"unknown fsa target {target!r}")


def cmd_fsa(args) -> int:
    pres, group, ws = _context(args)
    if args.action == "build":
        fsa = _build_target(args, pres, group, ws, args.target)
        name = args.target.replace(":", "_")
        path = ws.write_fsa(pres, name, fsa, target=args.target)
        print(f"wrote {path} ({fsa.n_states} states)")
        return 0
    if args.action == "stats":
        if Path(args.target).exists():
            fsa = from_text(Path(args.target).read_text())
        else:
            fsa = _build_target(args, pres, group, ws, args.target)
        counts = count_words(fsa, args.radius)
        print(json.dumps({
            "states": fsa.n_states,
            "accepting": len(fsa.accepting),
            "word_counts": counts,
        }, indent=2))
        return 0
    # equiv
    a = _load_or_build(args, pres, group, ws, args.target)
    b = _load_or_build(args, pres, group, ws, args.other)
    same = are_equivalent(a, b)
    print(f"equivalent: {same}")
    return 0


def _load_or_build(args, pres, group, ws, ref: str) -> FSA:
    if Path(ref).exists():
        return from_text(Path(ref).read_text())
    return _build_target(args, pres, group, ws, ref)


def cmd_onesided(args) -> int:
    pres, group, ws = _context(args)
    k = _resolve_k(ws, pres, group, args.k)
    part = _partition(ws, pres, group, k)
    specs = omega_minimal(part, args.level, args.radius, k)
    entries = []
    for spec in specs:
        word = pres.word_str(spec.translator.word) or "e"
        name = f"onesided_l{spec.level}_{word}"
        path = ws.write_fsa(pres, name, spec.language, k=k, level=spec.level)
        entries.append({
            "level": spec.level,
            "pair": [pres.names[s] for s in spec.pair],
            "translator": word,
            "fsa": str(path),
            "states": spec.language.n_states,
        })
    report = {
        "group": pres.label,
        "level": args.level,
        "radius": args.radius,
        "k": k,
        "specs": entries,
    }
    path = ws.write_report(pres, f"onesided.l{args.level}.r{args.radius}.json",
                           json.dumps(report, indent=2) + "\n")
    print(f"wrote {path} ({len(entries)} specs)")
    return 0


def cmd_verify(args) -> int:
    pres, group, ws = _context(args)
    failures: list[str] = []
    results: dict = {"group": pres.label, "radius": args.radius}

    def check(name: str, ok: bool, detail=""):
        results[name] = {"pass": bool(ok), "detail": detail}
        if not ok:
            failures.append(name)

    if args.suite in ("oracles", "all"):
        k = _resolve_k(ws, pres, group, args.k)
        part = _partition(ws, pres, group, k)
        data = part.data
        ball = group.ball(args.radius, cap=args.cap)
        bad = [e for e in ball.elements
               if part.classify(e) != oracle_classify(pres, e.word, data)]
        check("oracle_classification", not bad,
              f"{len(bad)} disagreements in {len(ball)} elements")
        # dual route for the unique-expression class: closure sizes against
        # element counts of the c0 language
        census, words = unique_reduced_census(pres, ball)
        by_len = [0] * (args.radius + 1)
        for w in words:
            by_len[len(w)] += 1
        from .fsa import intersect

        c0_counts = count_words(
            intersect(shortlex_fsa(group), part.languages["c0"]), args.radius)
        check("census_routes", by_len == c0_counts,
              f"{census} unique-expression elements within radius {args.radius}")
        check("partition_exact", partition_is_exact(part))
        wc = count_words(canonical_fsa(group), min(args.radius, 10))
        brute = [0] * (min(args.radius, 10) + 1)
        for e in ball.elements:
            if e.length <= min(args.radius, 10):
                brute[e.length] += len(braid_closure(pres, e.word))
        check("word_counts", wc == brute)
        check("element_counts",
              element_counts(group, args.radius) == ball.counts)

    if args.suite in ("kl", "all"):
        ball = group.ball(args.radius, cap=args.cap)
        table = KLTable(group, ball)
        table.fill()  # raises if the defining identity ever fails
        check("kl_identity", True, f"all pairs in ball({args.radius})")
        oracle = ClassicalKL(pres)
        cap = min(args.radius, args.oracle_length)
        bad_pairs = 0
        idxs = [i for i, e in enumerate(ball.elements) if e.length <= cap]
        for wi in idxs:
            for vi in idxs:
                if table.leq_idx(vi, wi):
                    got = table.p_idx(vi, wi)
                    want = oracle.kl_poly(ball.elements[vi].word,
                                          ball.elements[wi].word)
                    if got != want:
                        bad_pairs += 1
        check("kl_oracle", bad_pairs == 0, f"{bad_pairs} mismatches up to length {cap}")
        name = ws.kl_name(args.radius)
        if (ws.group_dir(pres) / name).exists():
            stored = ws.read_kl(pres, args.radius)
            mism = 0
            for v_word, w_word, r, p, mu in stored:
                vi = ball.index.get(v_word)
                wi = ball.index.get(w_word)
                if vi is None or wi is None:
                    mism += 1
                    continue
                want_r = table.r_idx(vi, wi) or (0,)
                want_p = table.p_idx(vi, wi) or (0,)
                if (tuple(r) != want_r or tuple(p) != want_p
                        or mu != table.mu_idx(vi, wi)):
                    mism += 1
            check("kl_cache", mism == 0, f"{mism} stale records")

    path = ws.write_report(pres, f"verify.{args.suite}.r{args.radius}.json",
                           json.dumps(results, indent=2) + "\n")
    print(f"wrote {path}")
    for name, payload in results.items():
        if isinstance(payload, dict) and "pass" in payload:
            print(f"  {name}: {'PASS' if payload['pass'] else 'FAIL'}"
                  + (f" ({payload['detail']})" if payload["detail"] else ""))
    if failures:
        raise VerificationDisagreement(", ".join(failures))
    return 0


def cmd_render(args) -> int:
    pres, group, ws = _context(args)
    k = _resolve_k(ws, pres, group, args.k)
    part = _partition(ws, pres, group, k)
    ball = group.ball(args.radius, cap=args.cap)
    realization = realize_polygon(pres)
    if args.coloring == "twosided":
        labels = [part.classify(e) for e in ball.elements]
        palette = dict(PALETTE)
    elif args.coloring.startswith("onesided:"):
        level = int(args.coloring.split(":", 1)[1])
        specs = omega_minimal(part, level, args.radius, k)
        labels = []
        for e in ball.elements:
            key = "bg"
            for si, spec in enumerate(specs):
                if spec.language.accepts(e.word):
                    key = f"spec{si}"
                    break
            labels.append(key)
        palette = {"bg": "#eeeeee"}
    else:
        raise PolycellError(f"unknown coloring {args.coloring!r}")
    scene = scene_for_partition(ball, realization, labels,
                                size=args.size, palette=palette)
    data = render_svg(scene)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(data)
    print(f"wrote {out} ({len(data)} bytes)")
    return 0


# --- argument parsing ---------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="polycell",
        description="Cell data and reduced-word automata for hyperbolic "
                    "polygon Coxeter groups",
    )
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, radius_default=10):
        p.add_argument("--group", required=True, help="group config JSON file")
        p.add_argument("--workspace", default="workspace")
        p.add_argument("--radius", type=int, default=radius_default)
        p.add_argument("--trust-margin", type=int, default=4)
        p.add_argument("--k", default="auto", help="fellow-traveler constant or 'auto'")
        p.add_argument("--cap", type=int, default=2_000_000)

    g = sub.add_parser("group", help="inspect a group configuration")
    gsub = g.add_subparsers(dest="action", required=True)
    gi = gsub.add_parser("info")
    common(gi)
    gi.set_defaults(func=cmd_group_info)

    b = sub.add_parser("ball", help="compute and cache a metric ball")
    common(b)
    b.set_defaults(func=cmd_ball)

    klp = sub.add_parser("kl", help="compute and cache Kazhdan-Lusztig data")
    common(klp)
    klp.set_defaults(func=cmd_kl)

    c = sub.add_parser("cells", help="cell partitions")
    c.add_argument("mode", choices=["empirical", "conjectural", "compare"])
    common(c, radius_default=12)
    c.set_defaults(func=cmd_cells)

    f = sub.add_parser("fsa", help="build, inspect, compare automata")
    f.add_argument("action", choices=["build", "stats", "equiv"])
    f.add_argument("target", help="canonical | shortlex | cell:<label> | "
                                  "pattern:<word> | factor:<word> | "
                                  "descent:<letters> | ut:<letters> | file path")
    f.add_argument("other", nargs="?", help="second automaton for equiv")
    common(f)
    f.set_defaults(func=cmd_fsa)

    o = sub.add_parser("onesided", help="one-sided cell specs at a level")
    o.add_argument("--level", type=int, required=True)
    common(o, radius_default=12)
    o.set_defaults(func=cmd_onesided)

    v = sub.add_parser("verify", help="oracle verification suites")
    v.add_argument("suite", choices=["all", "oracles", "kl"])
    common(v)
    v.add_argument("--oracle-length", type=int, default=8)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="tessellation SVG")
    common(r, radius_default=8)
    r.add_argument("--coloring", default="twosided")
    r.add_argument("--out", required=True)
    r.add_argument("--size", type=int, default=800)
    r.set_defaults(func=cmd_render)
    return top


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except VerificationDisagreement as exc:
        print(f"verification disagreement: {exc}", file=sys.stderr)
        return 1
    except (CorruptCache, ResourceLimit, KNotValidated) as exc:
        print(f"error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return 2
    except PolycellError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
