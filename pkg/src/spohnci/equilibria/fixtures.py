"""Worked games with known equilibrium families.

Each family maps parameter values to a joint distribution and knows the open
region where its printed formulas give totally mixed points. Families whose
points are rational evaluate exactly; the two irrational Nash points use floats.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction as Fr
from math import sqrt
from typing import Callable, Sequence

import numpy as np

from ..games import Game, GameFormat, MixedProfile
from ..graphs import Graph

Params = tuple[Fr, ...]


class ParameterOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class Family:
    name: str
    graph: Graph
    d: tuple[int, ...]
    params: tuple[str, ...]
    box: tuple[tuple[Fr, Fr], ...]  # open bounding box used for sampling
    formula: Callable[[Params], Sequence]  # flat p in storage order
    admissible: Callable[[Params], bool]
    rational: bool = True
    closed: bool = False  # printed interval includes its endpoints

    def __call__(self, *values) -> MixedProfile:
        vals = tuple(v if isinstance(v, float) else Fr(v) for v in values)
        if len(vals) != len(self.params):
            raise TypeError(f"family {self.name} takes parameters {self.params}")
        if not self._inside(vals):
            raise ParameterOutOfRange(f"{dict(zip(self.params, vals))} outside the family's range")
        p = tuple(self.formula(vals))
        if self.rational:
            return MixedProfile(GameFormat(self.d), p)
        return MixedProfile(GameFormat(self.d), tuple(float(v) for v in p))

    def _inside(self, vals: Params) -> bool:
        if self.closed:
            return all(lo <= v <= hi for v, (lo, hi) in zip(vals, self.box))
        return self.admissible(vals)

    def samples(self, count: int = 10, seed: int = 0) -> list[Params]:
        """Interior parameter values: an even grid for one parameter, seeded rejection otherwise."""
        if not self.params:
            return [()]
        if len(self.params) == 1:
            lo, hi = self.box[0]
            return [(lo + (hi - lo) * Fr(i, count + 1),) for i in range(1, count + 1)]
        rng = np.random.default_rng(seed)
        out: list[Params] = []
        while len(out) < count:
            vals = tuple(
                lo + (hi - lo) * Fr(int(rng.integers(1, 1000)), 1000) for lo, hi in self.box
            )
            if self.admissible(vals):
                out.append(vals)
        return out


@dataclass(frozen=True)
class Fixture:
    id: str
    title: str
    game: Game
    graph: Graph  # graph used by ``solve --fixture``
    families: tuple[Family, ...] = field(default=())

    def family(self, name: str) -> Family:
        for f in self.families:
            if f.name == name:
                return f
        raise KeyError(f"fixture {self.id} has no family {name!r}; known: {[f.name for f in self.families]}")


def _tensor(d: Sequence[int], f: Callable[[tuple[int, ...]], object]) -> list:
    """Tensor from a function of 1-based states."""
    return [f(tuple(i + 1 for i in s)) for s in itertools.product(*(range(x) for x in d))]


def _p(d: Sequence[int], f: Callable[[tuple[int, ...]], object]) -> list:
    return _tensor(d, f)


def _one_param(lo, hi) -> tuple[tuple[Fr, Fr], ...]:
    return ((Fr(lo), Fr(hi)),)


def _between(lo, hi) -> Callable[[Params], bool]:
    return lambda v: Fr(lo) < v[0] < Fr(hi)


# -- prisoner's dilemma -----------------------------------------------------------


def prisoners_dilemma() -> Fixture:
    d = (2, 2)
    game = Game.from_lists(d, [[0, -2, 1, -1], [0, 1, -2, -1]])
    K2 = Graph(2, [(1, 2)])

    def f1(v: Params):
        t = v[0]
        return [t * (1 + t) / 2, t * (1 - t) / 2, t * (1 - t) / 2, (1 - t) * (2 - t) / 2]

    def f2(v: Params):
        t = v[0]
        return [3 * (1 - t * t) / 8, (1 - t) * (1 - 3 * t) / 8, (1 + t) * (1 + 3 * t) / 8, 3 * (1 - t * t) / 8]

    return Fixture(
        "prisoners-dilemma",
        "Prisoner's dilemma; dependency equilibria on the complete graph",
        game,
        K2,
        (
            Family("F1", K2, d, ("t",), _one_param(0, 1), f1, _between(0, 1), closed=True),
            Family("F2", K2, d, ("t",), _one_param(Fr(-1, 3), Fr(1, 3)), f2, _between(Fr(-1, 3), Fr(1, 3)), closed=True),
        ),
    )


# -- coordination game (all players rewarded when everyone agrees) -----------------


def coordination() -> Fixture:
    d = (2, 2, 2)
    X = _tensor(d, lambda s: 1 if s[0] == s[1] == s[2] else 0)
    game = Game.from_lists(d, [X, X, X])
    G0 = Graph(3, [])
    G1 = Graph(3, [(2, 3)])
    G2 = Graph(3, [(1, 2), (2, 3)])
    G3 = Graph(3, [(1, 2), (1, 3), (2, 3)])

    def g0(v: Params):
        return [Fr(1, 8)] * 8

    def g1(v: Params):
        t = v[0]
        return _p(d, lambda s: t / 2 if s[1] == s[2] else (1 - 2 * t) / 4)

    def u3_of(u1: Fr, u2: Fr) -> Fr:
        # (u2 + u1)(u2 + u3) = u2 / 2, solved for u3
        return u2 / (2 * (u1 + u2)) - u2

    def g2_p(u1: Fr, u2: Fr, u3: Fr, delta: Fr = Fr(0)):
        s = u1 + u2 + u3

        def val(st: tuple[int, ...]):
            a, b, c = st
            if a == b == c:
                i = a
                return (Fr(1, 2) - s) * (1 + delta * (i - Fr(3, 2)) / s)
            if b == c:  # (3-i, i, i)
                return u1 + delta * (b - Fr(3, 2))
            if a == c:  # (i, 3-i, i)
                return u2 + delta * (a - Fr(3, 2))
            return u3 + delta * (a - Fr(3, 2))  # (i, i, 3-i)

        return _p(d, val)

    def g2(v: Params):
        u1, u2 = v
        return g2_p(u1, u2, u3_of(u1, u2))

    def g2_ok(v: Params) -> bool:
        u1, u2 = v
        if u1 <= 0 or u2 <= 0:
            return False
        u3 = u3_of(u1, u2)
        return u3 > 0 and u1 + u2 + u3 < Fr(1, 2)

    def g3(v: Params):
        return g2_p(*v)

    def g3_ok(v: Params) -> bool:
        u1, u2, u3, delta = v
        return u1 + u2 + u3 < Fr(1, 2) and min(u1, u2, u3) > abs(delta) / 2

    half = (Fr(0), Fr(1, 2))
    return Fixture(
        "coordination-2-2-2",
        "Binary 3-player coordination game (payoff 1 when all choices agree)",
        game,
        G1,
        (
            Family("G0", G0, d, (), (), g0, lambda v: True),
            Family("G1", G1, d, ("t",), _one_param(0, Fr(1, 2)), g1, _between(0, Fr(1, 2))),
            Family("G2", G2, d, ("u1", "u2"), (half, half), g2, g2_ok),
            Family("G3", G3, d, ("u1", "u2", "u3", "delta"), (half, half, half, (Fr(-1, 2), Fr(1, 2))), g3, g3_ok),
        ),
    )


# -- El Farol bar ---------------------------------------------------------------------


def el_farol(a: Fr) -> Fixture:
    d = (2, 2, 2)
    n = 3

    def payoff(k: int):
        def f(s: tuple[int, ...]):
            if s[k] == 1:
                return 0
            return 1 if sum(x - 1 for x in s) <= a * n else -1

        return _tensor(d, f)

    game = Game.from_lists(d, [payoff(k) for k in range(n)])
    G0 = Graph(3, [])
    G1 = Graph(3, [(2, 3)])
    G3 = Graph(3, [(1, 2), (1, 3), (2, 3)])
    r = 1 / sqrt(2)
    counted = 1 if a == Fr(1, 2) else 2  # strategy whose count is the exponent y

    def g0(v: Params):
        return _p(d, lambda s: r ** sum(x == counted for x in s) * (1 - r) ** sum(x != counted for x in s))

    if a == Fr(1, 2):

        def g1(v: Params):
            y = v[0]
            table = {
                (1, 1, 1): (1 - 2 * y) / (8 * y),
                (1, 2, 2): (1 - 2 * y) * (1 - 4 * y) / (8 * y),
                (1, 1, 2): (1 - 2 * y) / 4,
                (1, 2, 1): (1 - 2 * y) / 4,
                (2, 1, 2): (6 * y - 1) / 4,
                (2, 2, 1): (6 * y - 1) / 4,
                (2, 1, 1): (6 * y - 1) / (8 * y),
                (2, 2, 2): (6 * y - 1) * (1 - 4 * y) / (8 * y),
            }
            return _p(d, table.__getitem__)

        g1_fam = Family("G1", G1, d, ("y",), _one_param(Fr(1, 6), Fr(1, 4)), g1, _between(Fr(1, 6), Fr(1, 4)))

        def g3(v: Params):
            u1, u2, u3, x = v
            s = u1 + u2 + u3
            table = {
                (2, 2, 2): x,
                (1, 1, 1): 1 + x / 2 - Fr(3, 2) * s,
                (2, 1, 1): u1,
                (1, 2, 2): (u2 + u3 - u1 - x) / 2,
                (1, 2, 1): u2,
                (2, 1, 2): (u1 + u3 - u2 - x) / 2,
                (1, 1, 2): u3,
                (2, 2, 1): (u1 + u2 - u3 - x) / 2,
            }
            return _p(d, table.__getitem__)

        def g3_ok(v: Params) -> bool:
            u1, u2, u3, x = v
            u = (u1, u2, u3)
            if min(v) <= 0:
                return False
            if any(u[i] + x >= u[(i + 1) % 3] + u[(i + 2) % 3] for i in range(3)):
                return False
            return sum(u) < (2 + x) / 3

        box = ((Fr(0), Fr(1, 2)),) * 3 + ((Fr(0), Fr(1, 4)),)
    else:

        def g1(v: Params):
            x = v[0]
            return _p(
                d,
                lambda s: (
                    (Fr(1, 2) - 2 * x) if s[1:] == (1, 1) else x if s[1] != s[2] else Fr(1, 2)
                )
                # player 1 goes with probability 1/2 + x; the printed factor (i - 3/2)x
                # leaves players 2 and 3 non-indifferent, (2i - 3)x does not
                * (Fr(1, 2) + (2 * s[0] - 3) * x),
            )

        g1_fam = Family("G1", G1, d, ("x",), _one_param(0, Fr(1, 4)), g1, _between(0, Fr(1, 4)))

        def g3(v: Params):
            u1, u2, u3, x = v
            table = {
                (2, 2, 2): x,
                (1, 1, 1): 1 + u1 + u2 + u3 - 4 * x,
                (1, 2, 2): u1,
                (2, 1, 1): x - u2 - u3,
                (2, 1, 2): u2,
                (1, 2, 1): x - u1 - u3,
                (2, 2, 1): u3,
                (1, 1, 2): x - u1 - u2,
            }
            return _p(d, table.__getitem__)

        def g3_ok(v: Params) -> bool:
            u1, u2, u3, x = v
            if min(v) <= 0:
                return False
            if max(u1 + u2, u1 + u3, u2 + u3) >= x:
                return False
            return x < (1 + u1 + u2 + u3) / 4

        box = ((Fr(0), Fr(1, 4)),) * 3 + ((Fr(0), Fr(1, 2)),)

    tag = "1/2" if a == Fr(1, 2) else "3/4"
    return Fixture(
        f"el-farol-{tag}",
        f"El Farol bar with three villagers, overcrowding threshold a = {tag}",
        game,
        G1,
        (
            Family("G0", G0, d, (), (), g0, lambda v: True, rational=False),
            g1_fam,
            Family("G3", G3, d, ("u1", "u2", "u3", "x"), box, g3, g3_ok),
        ),
    )


# -- Cournot-type fishers -------------------------------------------------------------


def cournot_fishers() -> Fixture:
    d = (2, 2, 2)
    game = Game.from_lists(d, [_tensor(d, lambda s, k=k: s[k] * max(0, 6 - sum(s))) for k in range(3)])
    G0 = Graph(3, [])
    G1 = Graph(3, [(2, 3)])

    def g1(v: Params):
        x = v[0]
        table = {
            (1, 1, 1): x * (6 * x - 1),
            (1, 2, 2): x * (6 * x - 1),
            (1, 1, 2): (Fr(1, 2) - x) * (6 * x - 1),
            (1, 2, 1): (Fr(1, 2) - x) * (6 * x - 1),
            (2, 1, 1): x * (2 - 6 * x),
            (2, 2, 2): x * (2 - 6 * x),
            (2, 1, 2): (1 - 2 * x) * (1 - 3 * x),
            (2, 2, 1): (1 - 2 * x) * (1 - 3 * x),
        }
        p = _p(d, table.__getitem__)
        total = sum(p)
        return [v / total for v in p]

    return Fixture(
        "cournot-fishers",
        "Three fishers selling in one port (price max(0, 6 - total catch))",
        game,
        G1,
        (
            Family("G0", G0, d, (), (), lambda v: [Fr(1, 8)] * 8, lambda v: True),
            Family("G1", G1, d, ("x",), _one_param(Fr(1, 6), Fr(1, 3)), g1, _between(Fr(1, 6), Fr(1, 3))),
        ),
    )


# -- CI equilibria Pareto-dominating the Nash equilibrium --------------------------------


def pareto() -> Fixture:
    d = (2, 2, 2)
    X1 = [0, 4, 0, 0, 3, 0, 0, 1]
    X2 = [2, 0, 3, 1, 3, -1, 4, 0]
    X3 = [2, 3, 0, 1, 3, 4, -1, 0]
    game = Game.from_lists(d, [X1, X2, X3])
    G1 = Graph(3, [(2, 3)])

    def line(v: Params):
        t = v[0]
        s1 = ((10 * t - 3) / (4 * t - 1), (2 - 6 * t) / (4 * t - 1))
        s2 = {(1, 1): t, (1, 2): t, (2, 1): 1 - 3 * t, (2, 2): t}
        return _p(d, lambda s: s1[s[0] - 1] * s2[(s[1], s[2])])

    return Fixture(
        "pareto-2-2-2",
        "Binary 3-player game whose CI equilibria Pareto-dominate the pure Nash equilibrium",
        game,
        G1,
        (Family("G1", G1, d, ("t",), _one_param(Fr(3, 10), Fr(1, 3)), line, _between(Fr(3, 10), Fr(1, 3))),),
    )


# -- 4x2x2 game with CI equilibria but no totally mixed Nash equilibrium -------------------

BEATS_NASH_SIGMA2 = (Fr(8, 21), Fr(1, 7), Fr(1, 3), Fr(1, 7))
BEATS_NASH_BASE = (Fr(913, 5933), Fr(3290, 5933), Fr(1730, 5933), Fr(0))
BEATS_NASH_DIRECTION = (Fr(-106095, 47464), Fr(27635, 47464), Fr(7749, 11866), Fr(1))
BEATS_NASH_INTERVAL = (Fr(0), Fr(664, 9645))


def beats_nash() -> Fixture:
    d = (4, 2, 2)
    X1 = [1, 0, 1, 15, 0, 0, 0, 20, -1, 7, 2, 11, 0, 2, 0, 18]
    X2 = [1, 0, 0, 0, 1, 3, 0, 2, 9, 1, 0, 30, 4, 4, 0, 5]
    X3 = [1, 0, 1, 0, 1, 0, 0, 10, 9, 0, 10, 3, 4, 0, 0, 5]
    game = Game.from_lists(d, [X1, X2, X3])
    G1 = Graph(3, [(2, 3)])

    def line(v: Params):
        t = v[0]
        s1 = [b + t * c for b, c in zip(BEATS_NASH_BASE, BEATS_NASH_DIRECTION)]
        s2 = BEATS_NASH_SIGMA2
        return [s1[i] * s2[j] for i in range(4) for j in range(4)]

    return Fixture(
        "beats-nash-4-2-2",
        "4x2x2 game with a line of Nash CI equilibria and no totally mixed Nash equilibrium",
        game,
        G1,
        (Family("G1", G1, d, ("t",), (BEATS_NASH_INTERVAL,), line, _between(*BEATS_NASH_INTERVAL)),),
    )


def fixtures() -> list[Fixture]:
    return [
        prisoners_dilemma(),
        el_farol(Fr(1, 2)),
        el_farol(Fr(3, 4)),
        cournot_fishers(),
        coordination(),
        pareto(),
        beats_nash(),
    ]


def fixture(fid: str) -> Fixture:
    for f in fixtures():
        if f.id == fid:
            return f
    raise KeyError(f"unknown fixture {fid!r}; known: {[f.id for f in fixtures()]}")
