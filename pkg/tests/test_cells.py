import pytest

from polycell.cells import (
    LABEL_ID,
    LABEL_ZERO,
    descent_class_fsa,
    dihedral_data,
    left_cell_language,
    omega_elements,
    omega_minimal,
    partition_is_exact,
    u_t_fsa,
    valid_descent_classes,
)
from polycell.errors import InvalidDescentClass, NoFiniteVertex
from polycell.fsa import (
    are_equivalent,
    count_words,
    difference,
    enumerate_words,
    intersect,
    is_empty,
    is_subset,
    union,
)
from polycell.oracle import braid_closure, oracle_classify
from polycell.presentation import presentation_from_angles
from tests.conftest import K_W237, K_W2224


def test_dihedral_data_w237(w237):
    data = dihedral_data(w237)
    words = [w237.word_str(e.longest_word) for e in data.entries]
    assert words == ["rt", "rsr", "stststs"]
    assert data.levels == (2, 3, 7)
    assert data.predicted_cell_count == 5


def test_dihedral_data_w2224(w2224):
    data = dihedral_data(w2224)
    assert sorted(2 * e.order for e in data.entries) == [4, 4, 4, 8]
    assert data.levels == (2, 4)
    assert data.predicted_cell_count == 4


def test_dihedral_data_needs_finite_vertex():
    with pytest.raises(NoFiniteVertex):
        dihedral_data(presentation_from_angles(["inf"] * 3))


def test_longest_words_are_shortlex_least(w2224):
    data = dihedral_data(w2224)
    for e in data.entries:
        s, t = e.pair
        assert s < t
        assert e.longest_word[0] == s
        assert len(e.longest_word) == e.order


def test_classify_examples(part237, g237, w237):
    cases = {
        "": LABEL_ID,
        "r": LABEL_ZERO,
        "rs": LABEL_ZERO,
        "rst": LABEL_ZERO,
        "rt": "c1",
        "tr": "c1",
        "rsr": "c2",
        "stststs": "c3",
        "tststst": "c3",
    }
    for txt, want in cases.items():
        e = g237.element(w237.parse_word(txt))
        assert part237.classify(e) == want
        assert part237.classify_by_language(e) == want


def test_srt_has_two_expressions_hence_c1(part237, g237, w237):
    # srt rewrites to str through the commuting pair, so it carries the
    # rt pattern; the rigid class keeps words like rst instead
    e = g237.element(w237.parse_word("srt"))
    assert braid_closure(w237, e.word) == {(1, 0, 2), (1, 2, 0)}
    assert part237.classify(e) == "c1"
    assert oracle_classify(w237, e.word, part237.data) == "c1"


def test_partition_exact(part237, part2224):
    assert partition_is_exact(part237)
    assert partition_is_exact(part2224)


def test_partition_matches_oracle_on_ball(part2224, g2224, w2224):
    for e in g2224.ball(7).elements:
        assert part2224.classify(e) == oracle_classify(w2224, e.word, part2224.data)


def test_level_exclusivity(part237, g237):
    # a level-i element is accepted by some level-i pattern machine and by
    # no higher-level machine
    data = part237.data
    for e in g237.ball(9).elements:
        label = part237.classify(e)
        if not label.startswith("c") or label in (LABEL_ZERO, LABEL_ID):
            continue
        i = int(label[1:])
        hits = [
            lvl
            for lvl in range(1, data.m + 1)
            for entry in data.pairs_at_level(lvl)
            if part237.pattern_fsas[entry.pair].accepts(e.word)
        ]
        assert max(hits) == i


def test_zero_class_is_unique_expression(part237, g237, w237):
    for e in g237.ball(9).elements:
        label = part237.classify(e)
        size = len(braid_closure(w237, e.word))
        if label == LABEL_ZERO:
            assert size == 1
        elif label not in (LABEL_ID,):
            assert size >= 2


def test_descent_classes(g237, w237):
    empty = descent_class_fsa(g237, frozenset())
    assert list(enumerate_words(empty, 4)) == [()]
    for T in valid_descent_classes(w237):
        fsa = descent_class_fsa(g237, T)
        for e in g237.ball(8).elements:
            assert fsa.accepts(e.word) == (e.left == T)


def test_descent_classes_partition_reduced_words(g237):
    from polycell.automata import canonical_fsa

    total = None
    for T in valid_descent_classes(g237.presentation):
        fsa = descent_class_fsa(g237, T)
        total = fsa if total is None else union(total, fsa)
    assert are_equivalent(total, canonical_fsa(g237))


def test_invalid_descent_class(g237, g2224):
    with pytest.raises(InvalidDescentClass):
        descent_class_fsa(g237, frozenset({0, 1, 2}))
    with pytest.raises(InvalidDescentClass):
        # opposite quadrilateral sides never bound a common vertex
        descent_class_fsa(g2224, frozenset({0, 2}))


def test_u_t_top_level_equals_descent_class(part237, g237):
    U = u_t_fsa(part237, (1, 2))
    W_T = descent_class_fsa(g237, frozenset({1, 2}))
    assert are_equivalent(U, W_T)
    assert U.accepts(g237.presentation.parse_word("stststs"))


def test_u_t_lower_level_subtracts_higher_cells(part237, g237):
    U = u_t_fsa(part237, (0, 2))  # the rt vertex, level 1
    for e in g237.ball(8).elements:
        in_ut = U.accepts(e.word)
        if in_ut:
            assert e.left == frozenset({0, 2})
            assert part237.classify(e) == "c1"
        else:
            assert e.left != frozenset({0, 2}) or part237.classify(e) != "c1"


def test_omega_contains_identity(part237):
    oms = omega_elements(part237, (1, 2), radius=10)
    assert oms[0].word == ()
    assert len(oms) >= 2


def test_omega_minimal_top_level(part237, g237, w237):
    specs = omega_minimal(part237, 3, radius=12, k=K_W237)
    translators = [w237.word_str(sp.translator.word) for sp in specs]
    assert translators[0] == ""  # identity translator survives
    # pairwise disjoint languages after minimal filtering
    for i, a in enumerate(specs):
        for b in specs[i + 1:]:
            assert is_empty(intersect(a.language, b.language))
    # non-minimal candidates are swallowed: every omega translate lands
    # inside the union of the kept ones, up to the discovery horizon
    u = None
    for sp in specs:
        u = sp.language if u is None else union(u, sp.language)
    assert is_subset(u, part237.languages["c3"])
    missing = difference(part237.languages["c3"], u)
    counts = count_words(missing, 10)
    assert counts == [0] * 11


def test_identity_spec_language_is_ut(part237):
    specs = omega_minimal(part237, 3, radius=10, k=K_W237)
    first = specs[0]
    assert first.translator.word == ()
    assert are_equivalent(first.language, u_t_fsa(part237, first.pair))


def test_specs_subset_of_their_cell(part2224, g2224):
    specs = omega_minimal(part2224, 2, radius=8, k=K_W2224)
    for sp in specs:
        assert is_subset(sp.language, part2224.languages["c2"])


def test_left_cells_by_reversal(part237, g237, w237):
    specs = omega_minimal(part237, 3, radius=10, k=K_W237)
    lang = left_cell_language(specs[0])
    # reversed language consists of inverses: closed under braid moves
    for w in enumerate_words(lang, 9):
        for sibling in braid_closure(w237, w):
            assert lang.accepts(sibling)


def test_brute_force_translate_membership(part237, g237, w237):
    # language membership for w * U^T against ball arithmetic
    specs = omega_minimal(part237, 3, radius=12, k=K_W237)
    U = u_t_fsa(part237, (1, 2))
    ball10 = g237.ball(10)
    for sp in specs[:4]:
        w = sp.translator
        members = set()
        for u in g237.ball(10 + w.length).elements:
            if U.accepts(u.word):
                prod = g237.multiply(w, u)
                if prod.length <= 10:
                    members.add(prod.word)
        for e in ball10.elements:
            assert sp.language.accepts(e.word) == (e.word in members)
