"""Hyperbolic polygon presentations.

A polygon with n geodesic sides and interior angles pi/a_1, ..., pi/a_n
(a_k = inf marks an ideal vertex) generates a Coxeter group: one involution
per side, with m(s,t) finite exactly for cyclically adjacent sides.  The
vertex carrying angle pi/a_k is the one shared by sides k-1 and k (0-based,
cyclic), so m(g_{k-1}, g_k) = a_k.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import BadDenominator, NonHyperbolic, TooFewSides

INFINITY = math.inf

_DEFAULT_NAMES = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class CoxeterPresentation:
    names: tuple[str, ...]
    angles: tuple[float, ...]  # integer denominators, INFINITY for ideal vertices
    matrix: tuple[tuple[float, ...], ...]
    label: str = "group"

    @property
    def rank(self) -> int:
        return len(self.names)

    def m(self, s: int, t: int) -> float:
        return self.matrix[s][t]

    def finite_orders(self) -> list[int]:
        return [int(a) for a in self.angles if a != INFINITY]

    def lcm_order(self) -> int:
        n = 1
        for a in self.finite_orders():
            n = math.lcm(n, a)
        return n

    def adjacent_pairs(self) -> list[tuple[tuple[int, int], int]]:
        """Cyclically adjacent generator pairs with finite order, one per
        non-ideal vertex: ((s, t), m) with s < t."""
        out = []
        n = self.rank
        for k, a in enumerate(self.angles):
            if a == INFINITY:
                continue
            s, t = (k - 1) % n, k
            out.append(((min(s, t), max(s, t)), int(a)))
        return out

    def word_str(self, word) -> str:
        return "".join(self.names[s] for s in word)

    def parse_word(self, text: str) -> tuple[int, ...]:
        idx = {name: i for i, name in enumerate(self.names)}
        return tuple(idx[ch] for ch in text)


def presentation_from_angles(angles, names=None, label="group") -> CoxeterPresentation:
    n = len(angles)
    if n < 3:
        raise TooFewSides(f"need at least 3 sides, got {n}")
    parsed = []
    for a in angles:
        if a == INFINITY or a == "inf":
            parsed.append(INFINITY)
        elif isinstance(a, int) and a >= 2:
            parsed.append(float(a))
        else:
            raise BadDenominator(f"angle denominator must be an integer >= 2 or inf: {a!r}")
    angle_sum = sum(Fraction(1, int(a)) for a in parsed if a != INFINITY)
    if angle_sum >= n - 2:
        raise NonHyperbolic(
            f"angle sum {angle_sum}*pi is not less than {(n - 2)}*pi"
        )
    if names is None:
        names = tuple(_DEFAULT_NAMES[:n])
    else:
        names = tuple(names)
        if len(names) != n or len(set(names)) != n:
            raise BadDenominator("generator names must be distinct, one per side")
    matrix = [[INFINITY] * n for _ in range(n)]
    for i in range(n):
        matrix[i][i] = 1.0
    for k, a in enumerate(parsed):
        if a == INFINITY:
            continue
        i, j = (k - 1) % n, k
        matrix[i][j] = matrix[j][i] = a
    return CoxeterPresentation(
        names=names,
        angles=tuple(parsed),
        matrix=tuple(tuple(row) for row in matrix),
        label=label,
    )


def load_presentation(source) -> CoxeterPresentation:
    """Build a presentation from a JSON config: {"name": ..., "angles": [...]}
    with optional "generators".  Accepts a dict, a JSON string, or a path."""
    if isinstance(source, dict):
        cfg = source
    else:
        text = str(source)
        try:
            if Path(text).exists():
                text = Path(text).read_text()
        except OSError:
            pass
        cfg = json.loads(text)
    return presentation_from_angles(
        cfg["angles"], names=cfg.get("generators"), label=cfg.get("name", "group")
    )


def config_dict(pres: CoxeterPresentation) -> dict:
    angles = ["inf" if a == INFINITY else int(a) for a in pres.angles]
    return {"name": pres.label, "angles": angles, "generators": list(pres.names)}
