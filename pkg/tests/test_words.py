import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polycell.errors import ResourceLimit
from polycell.oracle import braid_closure


def test_normal_form_examples(g237, w237):
    nf = lambda txt: w237.word_str(g237.nf(w237.parse_word(txt)))
    assert nf("tr") == "rt"
    assert nf("srs") == "rsr"
    assert nf("ss") == ""
    assert nf("tststst") == "stststs"


def test_normal_form_idempotent(g237, w237):
    for txt in ("tr", "srs", "tststst", "rsrsrs", "ttss"):
        once = g237.nf(w237.parse_word(txt))
        assert g237.nf(once) == once


def test_multiply_basics(g237):
    e = g237.identity
    r = g237.element((0,))
    t = g237.element((2,))
    assert g237.multiply(r, e) == r
    assert g237.multiply(r, r) == e
    rt = g237.multiply(r, t)
    assert rt.word == (0, 2) and rt.length == 2


def test_descents(g237, w237):
    e = g237.identity
    assert e.left == frozenset() and e.right == frozenset()
    w_t = g237.element(w237.parse_word("stststs"))
    assert w_t.left == frozenset({1, 2})
    assert w_t.right == frozenset({1, 2})
    rs = g237.element(w237.parse_word("rs"))
    assert rs.right == frozenset({1})
    assert g237.descents(rs, "right") == rs.right
    with pytest.raises(ValueError):
        g237.descents(rs, "up")


def test_descent_iff_shorter(g237):
    ball = g237.ball(6)
    for e in ball.elements:
        for s in range(3):
            shorter = g237.multiply(g237.element((s,)), e).length == e.length - 1
            assert (s in e.left) == shorter


def test_ball_counts_small(g237):
    assert len(g237.ball(0)) == 1
    assert len(g237.ball(1)) == 4
    ball2 = g237.ball(2)
    assert ball2.counts == [1, 3, 5]
    # brute force: all 9 two-letter words, identified by normal form
    elems = {g237.nf(w) for w in itertools.product(range(3), repeat=2)}
    assert sum(1 for w in elems if len(w) == 2) == 5


def test_ball_edges_involutive(g237):
    ball = g237.ball(5)
    for i in range(len(ball)):
        for s in range(3):
            j = ball.right_mult[i][s]
            if j is not None:
                assert ball.right_mult[j][s] == i


def test_ball_cap():
    import polycell

    p = polycell.presentation_from_angles([2, 2, 2, 4])
    g = polycell.PolygonGroup(p)
    with pytest.raises(ResourceLimit):
        g.ball(8, cap=10)


def test_elements_sorted_by_length_then_word(g2224):
    ball = g2224.ball(6)
    keys = [(e.length, e.word) for e in ball.elements]
    assert keys == sorted(keys)


words237 = st.lists(st.integers(min_value=0, max_value=2), max_size=10).map(tuple)


@settings(max_examples=80, deadline=None)
@given(word=words237)
def test_length_changes_by_one(g237, word):
    e = g237.element(word)
    for s in range(3):
        assert abs(g237.multiply(e, g237.element((s,))).length - e.length) == 1


@settings(max_examples=60, deadline=None)
@given(word=words237)
def test_braid_closure_constant_on_classes(g237, w237, word):
    e = g237.element(word)
    for sibling in braid_closure(w237, e.word):
        assert g237.nf(sibling) == e.word


@settings(max_examples=60, deadline=None)
@given(word=words237)
def test_inverse_involution(g237, word):
    e = g237.element(word)
    assert g237.inverse(g237.inverse(e)) == e
    assert g237.multiply(e, g237.inverse(e)) == g237.identity
