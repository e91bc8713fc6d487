"""Alignment of truncated empirical cells with the conjectural partition.

Empirical cells come from strongly connected components of W-graphs built
over a finite ball, so elements near the boundary may sit in fragments of
their true cell.  The comparison therefore fixes a trust margin: only
elements of length <= radius - margin are judged, and for those the
restricted empirical two-sided partition is required to coincide with the
restriction of the conjectural label partition.  Right cells are compared
against the one-sided specs the same way.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .cells import ConjecturalPartition, OneSidedCellSpec
from .kl import KLTable, cells as scc_cells, two_sided_cells, w_graph
from .words import ElementBall, PolygonGroup


@dataclass
class ComparisonReport:
    group: str
    radius: int
    trust_margin: int
    k: int
    element_count: int
    trusted_count: int
    agreement_ratio: float
    partition_equal: bool
    purity_ratio: float
    disagreements: list[dict]
    boundary_flagged: list[str]
    right_cell_agreement: dict

    def to_json(self) -> str:
        payload = {
            "group": self.group,
            "radius": self.radius,
            "trust_margin": self.trust_margin,
            "k": self.k,
            "element_count": self.element_count,
            "trusted_count": self.trusted_count,
            "agreement_ratio": self.agreement_ratio,
            "partition_equal": self.partition_equal,
            "purity_ratio": self.purity_ratio,
            "disagreements": self.disagreements,
            "boundary_flagged": self.boundary_flagged,
            "right_cell_agreement": self.right_cell_agreement,
        }
        return json.dumps(payload, indent=2) + "\n"


def _partition_map(parts: list[list[int]]) -> dict[int, int]:
    out = {}
    for ci, comp in enumerate(parts):
        for v in comp:
            out[v] = ci
    return out


def _restricted_agreement(ball: ElementBall, mine: dict[int, int],
                          theirs: dict[int, str], trusted: list[int]):
    """Per-element check that the two partitions restricted to the trusted
    set induce the same class."""
    trusted_set = set(trusted)
    mine_classes: dict[int, set[int]] = {}
    their_classes: dict[str, set[int]] = {}
    for i in trusted:
        mine_classes.setdefault(mine[i], set()).add(i)
        their_classes.setdefault(theirs[i], set()).add(i)
    agree = []
    disagree = []
    for i in trusted:
        if mine_classes[mine[i]] == their_classes[theirs[i]]:
            agree.append(i)
        else:
            disagree.append(i)
    return agree, disagree, mine_classes


def empirical_vs_conjectural(
    group: PolygonGroup,
    part: ConjecturalPartition,
    radius: int,
    trust_margin: int = 4,
    specs: list[OneSidedCellSpec] | None = None,
    table: KLTable | None = None,
) -> ComparisonReport:
    ball = group.ball(radius)
    if table is None:
        table = KLTable(group, ball)
    left = scc_cells(w_graph(ball, "left", table))
    right = scc_cells(w_graph(ball, "right", table))
    joined = two_sided_cells(left, right)
    emp = _partition_map(joined)
    emp_right = _partition_map(right)

    conj = {i: part.classify(e) for i, e in enumerate(ball.elements)}
    trusted = [i for i, e in enumerate(ball.elements)
               if e.length <= radius - trust_margin]
    agree, disagree, emp_classes = _restricted_agreement(ball, emp, conj, trusted)

    # purity: an empirical class never mixes two conjectural labels
    impure = sum(
        1 for members in emp_classes.values()
        if len({conj[i] for i in members}) > 1
    )
    purity_ratio = 1.0 - impure / max(1, len(emp_classes))

    word = group.presentation.word_str
    disagreements = [
        {
            "element": word(ball.elements[i].word),
            "conjectural": conj[i],
            "empirical_cell": sorted(
                word(ball.elements[j].word)
                for j in emp_classes[emp[i]]
            ),
        }
        for i in disagree
    ]
    boundary = [word(e.word) for e in ball.elements
                if e.length > radius - trust_margin]

    right_section: dict = {"checked": False}
    if specs is not None:
        right_section = _right_cell_comparison(
            group, ball, emp_right, specs, trusted, conj)

    return ComparisonReport(
        group=group.presentation.label,
        radius=radius,
        trust_margin=trust_margin,
        k=part.k,
        element_count=len(ball.elements),
        trusted_count=len(trusted),
        agreement_ratio=len(agree) / max(1, len(trusted)),
        partition_equal=not disagree,
        purity_ratio=purity_ratio,
        disagreements=disagreements,
        boundary_flagged=boundary,
        right_cell_agreement=right_section,
    )


def _right_cell_comparison(group, ball, emp_right, specs, trusted, conj):
    """Within the trusted region, elements of one spec language should form
    a union-free match with empirical right cells of their level."""
    word = group.presentation.word_str
    level_labels = {f"c{spec.level}" for spec in specs}
    spec_of: dict[int, int] = {}
    for i in trusted:
        if conj[i] not in level_labels:
            continue
        for si, spec in enumerate(specs):
            if spec.language.accepts(ball.elements[i].word):
                spec_of[i] = si
                break
    pairs_checked = 0
    pairs_wrong = []
    idxs = sorted(spec_of)
    for a_pos, i in enumerate(idxs):
        for j in idxs[a_pos + 1:]:
            pairs_checked += 1
            same_spec = spec_of[i] == spec_of[j]
            same_emp = emp_right[i] == emp_right[j]
            if same_spec != same_emp:
                pairs_wrong.append(
                    [word(ball.elements[i].word), word(ball.elements[j].word)]
                )
    return {
        "checked": True,
        "covered_elements": len(spec_of),
        "pairs_checked": pairs_checked,
        "pairs_inconsistent": pairs_wrong,
    }
