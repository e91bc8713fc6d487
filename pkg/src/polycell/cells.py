"""Conjectural cell partition for polygon groups and its automata.

Every non-ideal vertex spans a finite dihedral subgroup; grouping vertices
by the order of that subgroup gives levels e_1 < ... < e_m.  An element is
labeled by the highest level whose longest dihedral word appears as a
factor in some reduced expression; elements with a unique reduced
expression form the pattern-free class c0 and the identity stands alone.
Each label's reduced-expression language is assembled from the pattern
machines by boolean algebra, so membership tests, disjointness and the
cover of Red(W) are all exact automaton computations.

One-sided data: the descent class W^T (left descents exactly T) is regular
by reversing a right-descent re-selection of the canonical machine; U^T
subtracts the higher cells; translators w^-1 w_T act by left translation,
and the minimal ones tile the two-sided cell.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automata import (
    canonical_fsa,
    left_translate,
    red_x_mu,
    right_descent_class_fsa,
)
from .errors import InvalidDescentClass, NoFiniteVertex
from .fsa import (
    FSA,
    are_equivalent,
    difference,
    epsilon_language,
    intersect,
    is_empty,
    is_subset,
    minimize,
    reverse_fsa,
    union,
)
from .presentation import CoxeterPresentation
from .words import Element, PolygonGroup, Word

LABEL_ID = "cid"
LABEL_ZERO = "c0"


def level_label(i: int) -> str:
    return f"c{i}"


@dataclass(frozen=True)
class DihedralEntry:
    pair: tuple[int, int]       # generator indices, s < t
    order: int                  # m(s, t)
    longest_word: Word          # ShortLex-least alternating word of length m


@dataclass(frozen=True)
class DihedralData:
    entries: tuple[DihedralEntry, ...]
    levels: tuple[int, ...]     # distinct finite orders, increasing

    @property
    def m(self) -> int:
        return len(self.levels)

    def level_of(self, order: int) -> int:
        return self.levels.index(order) + 1

    def pairs_at_level(self, i: int) -> list[DihedralEntry]:
        return [e for e in self.entries if e.order == self.levels[i - 1]]

    @property
    def patterns_by_level(self) -> list[list[Word]]:
        return [[e.longest_word for e in self.pairs_at_level(i)]
                for i in range(1, self.m + 1)]

    @property
    def predicted_cell_count(self) -> int:
        return self.m + 2


def dihedral_data(pres: CoxeterPresentation) -> DihedralData:
    entries = []
    for (s, t), m in pres.adjacent_pairs():
        word = tuple(s if i % 2 == 0 else t for i in range(m))
        entries.append(DihedralEntry(pair=(s, t), order=m, longest_word=word))
    if not entries:
        raise NoFiniteVertex("all vertices are ideal")
    entries.sort(key=lambda e: (e.order, e.pair))
    levels = tuple(sorted({e.order for e in entries}))
    return DihedralData(entries=tuple(entries), levels=levels)


@dataclass
class ConjecturalPartition:
    group: PolygonGroup
    data: DihedralData
    k: int
    languages: dict[str, FSA]          # label -> minimal DFA
    pattern_fsas: dict[tuple[int, int], FSA]  # dihedral pair -> red_x_mu machine

    @property
    def labels(self) -> list[str]:
        return [LABEL_ID, LABEL_ZERO] + [
            level_label(i) for i in range(1, self.data.m + 1)
        ]

    def classify(self, e: Element) -> str:
        if not e.word:
            return LABEL_ID
        for i in range(self.data.m, 0, -1):
            for entry in self.data.pairs_at_level(i):
                if self.pattern_fsas[entry.pair].accepts(e.word):
                    return level_label(i)
        return LABEL_ZERO

    def classify_by_language(self, e: Element) -> str:
        for label in self.labels:
            if self.languages[label].accepts(e.word):
                return label
        raise AssertionError(f"partition does not cover {e.word}")


def build_partition(group: PolygonGroup, k: int) -> ConjecturalPartition:
    data = dihedral_data(group.presentation)
    pattern_fsas = {
        entry.pair: red_x_mu(group, entry.longest_word, k)
        for entry in data.entries
    }
    languages: dict[str, FSA] = {}
    higher: FSA | None = None
    for i in range(data.m, 0, -1):
        level = None
        for entry in data.pairs_at_level(i):
            m = pattern_fsas[entry.pair]
            level = m if level is None else union(level, m)
        if higher is not None:
            level = difference(level, higher)
        languages[level_label(i)] = minimize(level)
        higher = level if higher is None else union(higher, level)
    base = canonical_fsa(group)
    eps = epsilon_language(group.presentation.names)
    languages[LABEL_ID] = eps
    rest = union(eps, higher) if higher is not None else eps
    languages[LABEL_ZERO] = minimize(difference(base, rest))
    return ConjecturalPartition(
        group=group, data=data, k=k, languages=languages,
        pattern_fsas=pattern_fsas,
    )


def partition_is_exact(part: ConjecturalPartition) -> bool:
    """Pairwise disjoint and union equal to Red(W), by automata algebra."""
    labels = part.labels
    for i, a in enumerate(labels):
        for b in labels[i + 1:]:
            if not is_empty(intersect(part.languages[a], part.languages[b])):
                return False
    total = None
    for label in labels:
        fsa = part.languages[label]
        total = fsa if total is None else union(total, fsa)
    return are_equivalent(total, canonical_fsa(part.group))


# --- descent classes and one-sided machinery ---------------------------------


def valid_descent_classes(pres: CoxeterPresentation) -> list[frozenset[int]]:
    out = [frozenset()]
    out += [frozenset({s}) for s in range(pres.rank)]
    out += [frozenset(e.pair) for e in dihedral_data(pres).entries]
    return out


def descent_class_fsa(group: PolygonGroup, T) -> FSA:
    """Red(W^T): reduced expressions of elements with left descent set
    exactly T.  Right-descent classes are unions of canonical states; the
    left-handed language is their reversal."""
    T = frozenset(T)
    if T not in set(valid_descent_classes(group.presentation)):
        raise InvalidDescentClass(f"{sorted(T)} is not a realizable descent class")
    right = right_descent_class_fsa(group, T)
    return minimize(reverse_fsa(right))


def u_t_fsa(part: ConjecturalPartition, pair: tuple[int, int]) -> FSA:
    """Red(U^T): the descent class minus all higher-level cells."""
    data = part.data
    entry = next(e for e in data.entries if e.pair == tuple(sorted(pair)))
    i = data.level_of(entry.order)
    out = descent_class_fsa(part.group, frozenset(entry.pair))
    for j in range(i + 1, data.m + 1):
        out = difference(out, part.languages[level_label(j)])
    return minimize(out)


def omega_elements(part: ConjecturalPartition, pair: tuple[int, int],
                   radius: int) -> list[Element]:
    """Translators w^-1 w_T for w in U^T within the ball, deduplicated and
    sorted by (length, word)."""
    group = part.group
    entry = next(e for e in part.data.entries if e.pair == tuple(sorted(pair)))
    ut = u_t_fsa(part, pair)
    w_t = group.element(entry.longest_word)
    ball = group.ball(radius)
    seen: dict[Word, Element] = {}
    for e in ball.elements:
        if ut.accepts(e.word):
            omega = group.multiply(group.inverse(e), w_t)
            seen.setdefault(omega.word, omega)
    return sorted(seen.values(), key=lambda e: (e.length, e.word))


@dataclass(frozen=True)
class OneSidedCellSpec:
    level: int
    pair: tuple[int, int]
    translator: Element
    language: FSA


def _spec_candidates(part: ConjecturalPartition, i: int, radius: int,
                     k: int) -> list[OneSidedCellSpec]:
    group = part.group
    out = []
    for entry in part.data.pairs_at_level(i):
        ut = u_t_fsa(part, entry.pair)
        for omega in omega_elements(part, entry.pair, radius):
            lang = left_translate(group, ut, omega, k)
            out.append(OneSidedCellSpec(
                level=i, pair=entry.pair, translator=omega, language=lang,
            ))
    return out


def omega_minimal(part: ConjecturalPartition, i: int, radius: int, k: int,
                  log=None) -> list[OneSidedCellSpec]:
    """Keep the translators whose translated languages are containment-
    maximal, shortest translator first; ties broken by ShortLex, duplicate
    languages collapsed."""
    cands = _spec_candidates(part, i, radius, k)
    cands.sort(key=lambda c: (c.translator.length, c.translator.word, c.pair))
    kept: list[OneSidedCellSpec] = []
    for cand in cands:
        dominated = False
        for other in kept:
            if is_subset(cand.language, other.language):
                dominated = True
                if log is not None and cand.pair != other.pair:
                    log.append((other.translator.word, other.pair,
                                cand.translator.word, cand.pair))
                break
        if not dominated:
            kept.append(cand)
    return kept


def one_sided_cells(part: ConjecturalPartition, i: int, radius: int,
                    k: int) -> list[OneSidedCellSpec]:
    return omega_minimal(part, i, radius, k)


def left_cell_language(spec: OneSidedCellSpec) -> FSA:
    """Right cells reflect to left cells by word reversal (inverse elements)."""
    return minimize(reverse_fsa(spec.language))
