"""Word problem for polygon Coxeter groups.

Reading a word left to right while tracking which small roots are inversions
of the prefix gives a deterministic automaton whose live runs are exactly
the reduced words (states double as right-descent detectors).  On top of
that single primitive we build reduction, ShortLex normal forms (repeated
extraction of the least left descent, with the deletion position located by
running the word until the automaton dies), multiplication, and metric balls
with full left/right Cayley edges.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ResourceLimit
from .presentation import CoxeterPresentation
from .smallroots import SmallRootTable, compute_small_roots

Word = tuple[int, ...]


@dataclass(frozen=True)
class Element:
    """Group element as its ShortLex-least reduced word, with descent sets."""

    word: Word
    left: frozenset[int]
    right: frozenset[int]

    @property
    def length(self) -> int:
        return len(self.word)

    def __repr__(self):
        return f"Element({self.word})"


@dataclass
class ElementBall:
    """All elements of length <= radius, sorted by (length, word)."""

    radius: int
    elements: list[Element]
    index: dict[Word, int]
    right_mult: list[list[int | None]]  # None = product leaves the ball
    left_mult: list[list[int | None]]
    counts: list[int]  # elements per length

    def __len__(self):
        return len(self.elements)

    def idx(self, e: Element) -> int:
        return self.index[e.word]


class PolygonGroup:
    """Word-problem engine for one polygon presentation."""

    def __init__(self, presentation: CoxeterPresentation, root_cap: int = 100000):
        self.presentation = presentation
        self.rank = presentation.rank
        self.table: SmallRootTable = compute_small_roots(presentation, cap=root_cap)
        self._build_transitions()
        self.identity = Element((), frozenset(), frozenset())
        self._balls: dict[int, ElementBall] = {}

    # canonical automaton: states are the reachable sets of small inversions
    def _build_transitions(self) -> None:
        table = self.table
        n = self.rank
        start = frozenset()
        ids = {start: 0}
        sets = [start]
        trans: list[list[int | None]] = []
        i = 0
        while i < len(sets):
            cur = sets[i]
            row: list[int | None] = []
            for s in range(n):
                if table.simple[s] in cur:
                    row.append(None)
                    continue
                nxt = {table.simple[s]}
                for r in cur:
                    img = table.action[r][s]
                    if img >= 0:
                        nxt.add(img)
                key = frozenset(nxt)
                j = ids.get(key)
                if j is None:
                    j = len(sets)
                    ids[key] = j
                    sets.append(key)
                row.append(j)
            trans.append(row)
            i += 1
        self.state_sets = sets
        self.transitions = trans
        simple_of = {r: s for s, r in enumerate(table.simple)}
        self.state_rdesc = [
            frozenset(simple_of[r] for r in st if r in simple_of) for st in sets
        ]

    # --- word primitives -------------------------------------------------

    def run(self, word, state: int = 0) -> int | None:
        trans = self.transitions
        for s in word:
            nxt = trans[state][s]
            if nxt is None:
                return None
            state = nxt
        return state

    def is_reduced(self, word) -> bool:
        return self.run(word) is not None

    def right_descents(self, reduced: Word) -> frozenset[int]:
        state = self.run(reduced)
        assert state is not None
        return self.state_rdesc[state]

    def left_descents(self, reduced: Word) -> frozenset[int]:
        state = self.run(reduced[::-1])
        assert state is not None
        return self.state_rdesc[state]

    def _death_index(self, s: int, word) -> int:
        """Feed s then word; return the word position whose letter kills the
        run.  Requires s to be a left descent of the word's element."""
        state = self.transitions[0][s]
        for i, x in enumerate(word):
            nxt = self.transitions[state][x]
            if nxt is None:
                return i
            state = nxt
        raise AssertionError("word survived: not a left descent")

    def reduce_word(self, word) -> Word:
        """Some reduced word for the same element (deletion condition)."""
        out: list[int] = []
        states = [0]
        for s in word:
            nxt = self.transitions[states[-1]][s]
            if nxt is not None:
                out.append(s)
                states.append(nxt)
                continue
            # exchange on the inverse: s + reversed(out) dies at position p,
            # so dropping the mirrored letter shortens out . s to out minus one
            p = self._death_index(s, out[::-1])
            drop = len(out) - 1 - p
            del out[drop:drop + 1]
            del states[drop + 1:]
            for x in out[drop:]:
                states.append(self.transitions[states[-1]][x])
        return tuple(out)

    def shortlex(self, reduced) -> Word:
        """ShortLex-least reduced word, by least-left-descent extraction."""
        u = list(reduced)
        out: list[int] = []
        while u:
            t = min(self.left_descents(tuple(u)))
            if t == u[0]:
                out.append(u.pop(0))
                continue
            j = self._death_index(t, u)
            del u[j:j + 1]
            out.append(t)
        return tuple(out)

    def nf(self, word) -> Word:
        return self.shortlex(self.reduce_word(word))

    # --- elements ---------------------------------------------------------

    def element(self, word) -> Element:
        w = self.nf(word)
        if not w:
            return self.identity
        return Element(w, self.left_descents(w), self.right_descents(w))

    def element_from_str(self, text: str) -> Element:
        return self.element(self.presentation.parse_word(text))

    def multiply(self, a: Element, b: Element) -> Element:
        return self.element(a.word + b.word)

    def inverse(self, a: Element) -> Element:
        return self.element(a.word[::-1])

    def descents(self, a: Element, side: str) -> frozenset[int]:
        if side == "left":
            return a.left
        if side == "right":
            return a.right
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def length_of(self, word) -> int:
        return len(self.reduce_word(word))

    # --- balls --------------------------------------------------------------

    def ball(self, radius: int, cap: int = 2_000_000) -> ElementBall:
        if radius in self._balls:
            return self._balls[radius]
        layers: list[list[Word]] = [[()]]
        seen: set[Word] = {()}
        for _ in range(radius):
            nxt: set[Word] = set()
            for w in layers[-1]:
                state = self.run(w)
                for s in range(self.rank):
                    if self.transitions[state][s] is not None:
                        z = self.shortlex(w + (s,))
                        if z not in seen:
                            nxt.add(z)
            if len(seen) + len(nxt) > cap:
                raise ResourceLimit(f"ball exceeds cap {cap}")
            seen |= nxt
            layers.append(sorted(nxt))

        words: list[Word] = [w for layer in layers for w in layer]
        index = {w: i for i, w in enumerate(words)}
        elements = [
            Element(w, self.left_descents(w), self.right_descents(w)) if w else self.identity
            for w in words
        ]
        right_mult: list[list[int | None]] = []
        left_mult: list[list[int | None]] = []
        for w in words:
            rrow: list[int | None] = []
            lrow: list[int | None] = []
            for s in range(self.rank):
                rrow.append(index.get(self.nf(w + (s,))))
                lrow.append(index.get(self.nf((s,) + w)))
            right_mult.append(rrow)
            left_mult.append(lrow)
        counts = [len(layer) for layer in layers]
        ball = ElementBall(
            radius=radius,
            elements=elements,
            index=index,
            right_mult=right_mult,
            left_mult=left_mult,
            counts=counts,
        )
        self._balls[radius] = ball
        return ball

    def word_str(self, word) -> str:
        return self.presentation.word_str(word)
