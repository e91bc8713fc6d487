import math

from polycell import presentation_from_angles
from polycell.smallroots import ESCAPED, NEG_SIMPLE, compute_small_roots


def test_simple_roots_present(w237):
    table = compute_small_roots(w237)
    for s in range(3):
        coords = table.roots[table.simple[s]]
        assert all(
            table.field.is_zero(c) if t != s else c == table.field.one
            for t, c in enumerate(coords)
        )


def test_all_ideal_polygon_has_only_simple_roots():
    # every adjacent pair is infinite, so every reflection escapes
    p = presentation_from_angles(["inf", "inf", "inf"])
    table = compute_small_roots(p)
    assert table.size == 3
    for s in range(3):
        row = table.action[table.simple[s]]
        for t in range(3):
            assert row[t] == (NEG_SIMPLE if t == s else ESCAPED)


def test_action_is_involutive(w237, w2224):
    for pres in (w237, w2224):
        table = compute_small_roots(pres)
        for i in range(table.size):
            for s in range(pres.rank):
                j = table.action[i][s]
                if j >= 0:
                    assert table.action[j][s] == i


def test_w237_count_matches_float_closure(w237):
    # independent route: numeric closure with a wide certainty margin
    n = 3
    gram = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            m = w237.m(i, j)
            gram[i][j] = 2.0 if i == j else -2.0 * math.cos(math.pi / m)
    roots = {}
    order = []

    def intern(v):
        key = tuple(round(x, 9) for x in v)
        if key not in roots:
            roots[key] = len(order)
            order.append(v)
        return roots[key]

    for s in range(n):
        intern(tuple(1.0 if t == s else 0.0 for t in range(n)))
    i = 0
    while i < len(order):
        beta = order[i]
        for s in range(n):
            if order[i] == tuple(1.0 if t == s else 0.0 for t in range(n)):
                continue
            pairing = sum(beta[t] * gram[s][t] for t in range(n))
            assert abs(pairing + 2.0) > 1e-6  # decisions stay far from the cut
            if pairing + 2.0 < 0:
                continue
            img = list(beta)
            img[s] -= pairing
            intern(tuple(img))
        i += 1

    table = compute_small_roots(w237)
    assert table.size == len(order)


def test_depths_start_at_one(g237):
    table = g237.table
    assert all(table.depths[i] == 1 for i in table.simple)
    assert all(d >= 1 for d in table.depths)
