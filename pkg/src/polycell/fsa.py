"""Finite-state automata over small symbol alphabets.

Symbols are indices into an alphabet tuple of short strings; for automata
over group generators the symbol index equals the generator index, so
engine words feed straight in.  Transitions map (state, symbol) to a tuple
of targets; deterministic machines keep singleton tuples.  Epsilon moves
are stored separately and only appear in intermediate products (projection
erases one pair coordinate); stored machines are epsilon-free.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import AlphabetMismatch, StateBlowup

STATE_CAP = 2_000_000


@dataclass
class FSA:
    alphabet: tuple[str, ...]
    n_states: int
    initial: int
    accepting: frozenset[int]
    transitions: dict[tuple[int, int], tuple[int, ...]]
    eps: dict[int, tuple[int, ...]] = dc_field(default_factory=dict)
    deterministic: bool = False
    trim: bool = False
    minimal: bool = False

    def step(self, state: int, sym: int) -> int | None:
        t = self.transitions.get((state, sym))
        return t[0] if t else None

    def accepts(self, word) -> bool:
        if self.deterministic:
            q = self.initial
            for s in word:
                t = self.transitions.get((q, s))
                if not t:
                    return False
                q = t[0]
            return q in self.accepting
        cur = _eps_closure(self, {self.initial})
        for s in word:
            nxt = set()
            for q in cur:
                nxt.update(self.transitions.get((q, s), ()))
            if not nxt:
                return False
            cur = _eps_closure(self, nxt)
        return bool(cur & self.accepting)

    def symbol_index(self, name: str) -> int:
        return self.alphabet.index(name)

    def edges(self):
        for (q, s), targets in self.transitions.items():
            for t in targets:
                yield q, s, t


def _eps_closure(fsa: FSA, states: set[int]) -> frozenset[int]:
    if not fsa.eps:
        return frozenset(states)
    out = set(states)
    stack = list(states)
    while stack:
        q = stack.pop()
        for t in fsa.eps.get(q, ()):
            if t not in out:
                out.add(t)
                stack.append(t)
    return frozenset(out)


def make_dfa(alphabet, n_states, initial, accepting, delta) -> FSA:
    """delta: dict (state, sym) -> state."""
    return FSA(
        alphabet=tuple(alphabet),
        n_states=n_states,
        initial=initial,
        accepting=frozenset(accepting),
        transitions={k: (v,) for k, v in delta.items()},
        deterministic=True,
    )


def empty_language(alphabet) -> FSA:
    return make_dfa(alphabet, 1, 0, frozenset(), {})


def epsilon_language(alphabet) -> FSA:
    return FSA(
        alphabet=tuple(alphabet),
        n_states=1,
        initial=0,
        accepting=frozenset({0}),
        transitions={},
        deterministic=True,
        trim=True,
        minimal=True,
    )


def _check_alphabet(a: FSA, b: FSA) -> None:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch(f"{a.alphabet} vs {b.alphabet}")


def determinize(fsa: FSA, cap: int = STATE_CAP) -> FSA:
    start = _eps_closure(fsa, {fsa.initial})
    ids: dict[frozenset[int], int] = {start: 0}
    order = [start]
    delta: dict[tuple[int, int], int] = {}
    accepting = set()
    nsym = len(fsa.alphabet)
    i = 0
    while i < len(order):
        cur = order[i]
        if cur & fsa.accepting:
            accepting.add(i)
        for s in range(nsym):
            nxt = set()
            for q in cur:
                nxt.update(fsa.transitions.get((q, s), ()))
            if not nxt:
                continue
            key = _eps_closure(fsa, nxt)
            j = ids.get(key)
            if j is None:
                j = len(order)
                if j >= cap:
                    raise StateBlowup(f"determinization exceeds {cap} states")
                ids[key] = j
                order.append(key)
            delta[(i, s)] = j
        i += 1
    out = make_dfa(fsa.alphabet, len(order), 0, accepting, delta)
    out.trim = False
    return trim_fsa(out)


def trim_fsa(fsa: FSA) -> FSA:
    """Drop states not on an accepting path; preserves determinism."""
    fwd: dict[int, list[int]] = {}
    back: dict[int, list[int]] = {}
    for q, s, t in fsa.edges():
        fwd.setdefault(q, []).append(t)
        back.setdefault(t, []).append(q)
    for q, ts in fsa.eps.items():
        for t in ts:
            fwd.setdefault(q, []).append(t)
            back.setdefault(t, []).append(q)
    reach = {fsa.initial}
    stack = [fsa.initial]
    while stack:
        q = stack.pop()
        for t in fwd.get(q, ()):
            if t not in reach:
                reach.add(t)
                stack.append(t)
    co = set(fsa.accepting)
    stack = list(co)
    while stack:
        q = stack.pop()
        for t in back.get(q, ()):
            if t not in co:
                co.add(t)
                stack.append(t)
    live = reach & co
    if fsa.initial not in live:
        out = empty_language(fsa.alphabet)
        out.trim = True
        return out
    remap = {}
    for q in range(fsa.n_states):
        if q in live:
            remap[q] = len(remap)
    transitions = {}
    for (q, s), targets in fsa.transitions.items():
        if q in live:
            kept = tuple(remap[t] for t in targets if t in live)
            if kept:
                transitions[(remap[q], s)] = kept
    eps = {}
    for q, targets in fsa.eps.items():
        if q in live:
            kept = tuple(remap[t] for t in targets if t in live)
            if kept:
                eps[remap[q]] = kept
    return FSA(
        alphabet=fsa.alphabet,
        n_states=len(remap),
        initial=remap[fsa.initial],
        accepting=frozenset(remap[q] for q in fsa.accepting if q in live),
        transitions=transitions,
        eps=eps,
        deterministic=fsa.deterministic,
        trim=True,
        minimal=fsa.minimal,
    )


def minimize(fsa: FSA, cap: int = STATE_CAP) -> FSA:
    """Unique minimal DFA via partition refinement (dead state implicit)."""
    if not fsa.deterministic or fsa.eps:
        fsa = determinize(fsa, cap)
    fsa = trim_fsa(fsa)
    if fsa.n_states == 0 or not fsa.accepting:
        out = empty_language(fsa.alphabet)
        out.minimal = True
        return out
    n = fsa.n_states
    dead = n  # implicit non-accepting sink
    nsym = len(fsa.alphabet)

    def target(q: int, s: int) -> int:
        if q == dead:
            return dead
        t = fsa.transitions.get((q, s))
        return t[0] if t else dead

    cls = [0] * (n + 1)
    for q in fsa.accepting:
        cls[q] = 1
    while True:
        sig: dict[tuple, int] = {}
        new_cls = [0] * (n + 1)
        for q in range(n + 1):
            key = (cls[q],) + tuple(cls[target(q, s)] for s in range(nsym))
            if key not in sig:
                sig[key] = len(sig)
            new_cls[q] = sig[key]
        if new_cls == cls:
            break
        cls = new_cls

    dead_cls = cls[dead]
    # canonical numbering: BFS from the initial class in symbol order
    renum = {cls[fsa.initial]: 0}
    order = [fsa.initial]
    delta: dict[tuple[int, int], int] = {}
    accepting = set()
    i = 0
    while i < len(order):
        rep = order[i]
        if rep in fsa.accepting:
            accepting.add(i)
        for s in range(nsym):
            t = target(rep, s)
            if cls[t] == dead_cls:
                continue
            j = renum.get(cls[t])
            if j is None:
                j = len(renum)
                renum[cls[t]] = j
                order.append(t)
            delta[(i, s)] = j
        i += 1
    out = make_dfa(fsa.alphabet, len(renum), 0, accepting, delta)
    out.trim = True
    out.minimal = True
    return out


def reverse_fsa(fsa: FSA) -> FSA:
    """NFA for the reversed language (fresh initial state, eps to old finals)."""
    transitions: dict[tuple[int, int], list[int]] = {}
    for q, s, t in fsa.edges():
        transitions.setdefault((t, s), []).append(q)
    eps: dict[int, list[int]] = {}
    for q, targets in fsa.eps.items():
        for t in targets:
            eps.setdefault(t, []).append(q)
    new_init = fsa.n_states
    eps[new_init] = sorted(fsa.accepting)
    return FSA(
        alphabet=fsa.alphabet,
        n_states=fsa.n_states + 1,
        initial=new_init,
        accepting=frozenset({fsa.initial}),
        transitions={k: tuple(sorted(v)) for k, v in transitions.items()},
        eps={k: tuple(sorted(v)) for k, v in eps.items()},
        deterministic=False,
    )


def _product(a: FSA, b: FSA, keep) -> FSA:
    """Pairing on completed DFAs; keep(in_a, in_b) decides acceptance.
    None marks the implicit dead side."""
    _check_alphabet(a, b)
    if not a.deterministic or a.eps:
        a = determinize(a)
    if not b.deterministic or b.eps:
        b = determinize(b)
    nsym = len(a.alphabet)
    start = (a.initial if a.n_states else None, b.initial if b.n_states else None)
    ids = {start: 0}
    order = [start]
    delta = {}
    accepting = set()
    i = 0
    while i < len(order):
        qa, qb = order[i]
        if keep(qa in a.accepting if qa is not None else False,
                qb in b.accepting if qb is not None else False):
            accepting.add(i)
        for s in range(nsym):
            ta = a.step(qa, s) if qa is not None else None
            tb = b.step(qb, s) if qb is not None else None
            if ta is None and tb is None:
                continue
            key = (ta, tb)
            j = ids.get(key)
            if j is None:
                j = len(order)
                if j >= STATE_CAP:
                    raise StateBlowup("product exceeds state cap")
                ids[key] = j
                order.append(key)
            delta[(i, s)] = j
        i += 1
    out = make_dfa(a.alphabet, len(order), 0, accepting, delta)
    return trim_fsa(out)


def intersect(a: FSA, b: FSA) -> FSA:
    return _product(a, b, lambda x, y: x and y)


def union(a: FSA, b: FSA) -> FSA:
    return _product(a, b, lambda x, y: x or y)


def difference(a: FSA, b: FSA) -> FSA:
    return _product(a, b, lambda x, y: x and not y)


def symmetric_difference(a: FSA, b: FSA) -> FSA:
    return _product(a, b, lambda x, y: x != y)


def complement_within(universe: FSA, a: FSA) -> FSA:
    return difference(universe, a)


def boolean(op: str, a: FSA, b: FSA | None = None, universe: FSA | None = None) -> FSA:
    if op == "union":
        return union(a, b)
    if op == "intersection":
        return intersect(a, b)
    if op == "difference":
        return difference(a, b)
    if op == "complement":
        if universe is None:
            raise ValueError("complement needs the universe automaton")
        return complement_within(universe, a)
    raise ValueError(f"unknown boolean op {op!r}")


def is_empty(fsa: FSA) -> bool:
    t = trim_fsa(fsa)
    return not t.accepting


def are_equivalent(a: FSA, b: FSA) -> bool:
    _check_alphabet(a, b)
    return is_empty(symmetric_difference(a, b))


def is_subset(a: FSA, b: FSA) -> bool:
    return is_empty(difference(a, b))


def count_words(fsa: FSA, max_len: int) -> list[int]:
    """Number of accepted words of each length 0..max_len (exact integers)."""
    if not fsa.deterministic or fsa.eps:
        raise ValueError("counting requires a deterministic automaton")
    vec = {fsa.initial: 1}
    counts = [sum(c for q, c in vec.items() if q in fsa.accepting)]
    nsym = len(fsa.alphabet)
    for _ in range(max_len):
        nxt: dict[int, int] = {}
        for q, c in vec.items():
            for s in range(nsym):
                t = fsa.transitions.get((q, s))
                if t:
                    nxt[t[0]] = nxt.get(t[0], 0) + c
        vec = nxt
        counts.append(sum(c for q, c in vec.items() if q in fsa.accepting))
    return counts


def analyze(fsa: FSA, max_len: int) -> dict:
    d = fsa if fsa.deterministic and not fsa.eps else determinize(fsa)
    counts = count_words(d, max_len)
    return {"is_empty": is_empty(d), "word_counts": counts}


def enumerate_words(fsa: FSA, max_len: int):
    """Yield accepted words (as tuples of symbol indices) up to max_len,
    shortest first, lexicographic within a length."""
    if not fsa.deterministic or fsa.eps:
        fsa = determinize(fsa)
    layer = [((), fsa.initial)]
    nsym = len(fsa.alphabet)
    for _ in range(max_len + 1):
        nxt = []
        for word, q in layer:
            if q in fsa.accepting:
                yield word
            for s in range(nsym):
                t = fsa.transitions.get((q, s))
                if t:
                    nxt.append((word + (s,), t[0]))
        layer = nxt


def shortest_accepted(fsa: FSA, cap: int = 10000) -> tuple[int, ...] | None:
    for w in enumerate_words(fsa, cap):
        return w
    return None


# --- text serialization ---------------------------------------------------


def to_text(fsa: FSA) -> str:
    if fsa.eps:
        raise ValueError("serialization requires an epsilon-free automaton")
    lines = [
        "states %d alphabet %s initial %d"
        % (fsa.n_states, " ".join(fsa.alphabet), fsa.initial)
    ]
    for q, s, t in sorted(fsa.edges()):
        lines.append(f"{q} {fsa.alphabet[s]} {t}")
    lines.append("accept " + " ".join(str(q) for q in sorted(fsa.accepting)))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> FSA:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    if head[0] != "states" or "alphabet" not in head or "initial" not in head:
        raise ValueError(f"bad automaton header: {lines[0]!r}")
    n_states = int(head[1])
    ai = head.index("alphabet")
    ii = head.index("initial")
    alphabet = tuple(head[ai + 1:ii])
    initial = int(head[ii + 1])
    sym_idx = {sym: i for i, sym in enumerate(alphabet)}
    transitions: dict[tuple[int, int], list[int]] = {}
    accepting: frozenset[int] | None = None
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "accept":
            accepting = frozenset(int(x) for x in parts[1:])
            continue
        q, sym, t = int(parts[0]), parts[1], int(parts[2])
        transitions.setdefault((q, sym_idx[sym]), []).append(t)
    if accepting is None:
        raise ValueError("missing accept line")
    det = all(len(v) == 1 for v in transitions.values())
    return FSA(
        alphabet=alphabet,
        n_states=n_states,
        initial=initial,
        accepting=accepting,
        transitions={k: tuple(v) for k, v in transitions.items()},
        deterministic=det,
    )
