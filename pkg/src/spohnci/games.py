"""Finite normal-form games, joint distributions, marginals and Spohn matrices.

Flat storage convention: a tensor over ``[d_1] x ... x [d_n]`` is a flat tuple
of length ``D = d_1 * ... * d_n`` in lexicographic order with the last index
varying fastest. Indices are 0-based in storage and 1-based when printed;
``to_one_based`` / ``from_one_based`` are the only conversions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Any, Iterable, Sequence

import numpy as np

MAX_STATES = 10**6

Number = Any  # Fraction, int or float
Backend = str  # "rational" | "double"
BACKENDS = ("rational", "double")


class FormatMismatch(ValueError):
    pass


class ZeroMarginal(ArithmeticError):
    """The conditional payoff of ``player`` at ``strategy`` is undefined (1-based)."""

    def __init__(self, player: int, strategy: int):
        super().__init__(f"marginal of player {player} at strategy {strategy} is zero")
        self.player = player
        self.strategy = strategy


def to_one_based(state: Sequence[int]) -> tuple[int, ...]:
    return tuple(i + 1 for i in state)


def from_one_based(state: Sequence[int]) -> tuple[int, ...]:
    return tuple(i - 1 for i in state)


def convert(value: Number, backend: Backend) -> Number:
    if backend == "rational":
        return value if isinstance(value, Fraction) else Fraction(value)
    if backend == "double":
        return float(value)
    raise ValueError(f"unknown backend {backend!r}")


@dataclass(frozen=True)
class GameFormat:
    d: tuple[int, ...]

    def __init__(self, d: Iterable[int]):
        d = tuple(int(x) for x in d)
        if not d:
            raise ValueError("a game needs at least one player")
        if any(x < 1 for x in d):
            raise ValueError(f"strategy counts must be >= 1, got {d}")
        if prod(d) > MAX_STATES:
            raise ValueError(f"state count {prod(d)} exceeds the limit {MAX_STATES}")
        object.__setattr__(self, "d", d)

    @property
    def n(self) -> int:
        return len(self.d)

    @property
    def size(self) -> int:
        return prod(self.d)

    def states(self) -> list[tuple[int, ...]]:
        """All global states, 0-based, in flat order."""
        return list(itertools.product(*(range(x) for x in self.d)))

    def flat_index(self, state: Sequence[int]) -> int:
        idx = 0
        for s, x in zip(state, self.d):
            if not 0 <= s < x:
                raise IndexError(f"state {tuple(state)} out of range for {self.d}")
            idx = idx * x + s
        return idx

    def unflatten(self, idx: int) -> tuple[int, ...]:
        if not 0 <= idx < self.size:
            raise IndexError(idx)
        out = []
        for x in reversed(self.d):
            idx, r = divmod(idx, x)
            out.append(r)
        return tuple(reversed(out))

    def sub(self, players: Iterable[int]) -> tuple[int, ...]:
        return tuple(self.d[i] for i in players)

    def __str__(self) -> str:
        return ",".join(map(str, self.d))


@dataclass(frozen=True)
class PayoffTensor:
    format: GameFormat
    values: tuple[Number, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.format.size:
            raise FormatMismatch(
                f"payoff tensor has {len(self.values)} entries, format needs {self.format.size}"
            )

    def at(self, state: Sequence[int]) -> Number:
        return self.values[self.format.flat_index(state)]


@dataclass(frozen=True)
class Game:
    format: GameFormat
    payoffs: tuple[PayoffTensor, ...]

    def __post_init__(self) -> None:
        if len(self.payoffs) != self.format.n:
            raise FormatMismatch("one payoff tensor per player required")
        if any(t.format != self.format for t in self.payoffs):
            raise FormatMismatch("payoff tensors must share the game format")

    @classmethod
    def from_lists(cls, d: Iterable[int], payoffs: Sequence[Sequence[Number]]) -> "Game":
        fmt = GameFormat(d)
        return cls(fmt, tuple(PayoffTensor(fmt, tuple(_exact(v) for v in t)) for t in payoffs))

    def tensor(self, k: int) -> tuple[Number, ...]:
        """Payoff values of player ``k`` (0-based)."""
        return self.payoffs[k].values


@dataclass(frozen=True)
class MixedProfile:
    format: GameFormat
    p: tuple[Number, ...]

    def __post_init__(self) -> None:
        if len(self.p) != self.format.size:
            raise FormatMismatch(f"profile has {len(self.p)} entries, format needs {self.format.size}")
        if any(v < 0 for v in self.p):
            raise ValueError("profile entries must be nonnegative")
        total = sum(self.p)
        exact = all(isinstance(v, (int, Fraction)) for v in self.p)
        if (exact and total != 1) or (not exact and abs(total - 1) > 1e-9):
            raise ValueError(f"profile entries sum to {total}, not 1")

    @classmethod
    def from_list(cls, d: Iterable[int], p: Sequence[Number]) -> "MixedProfile":
        return cls(GameFormat(d), tuple(_exact(v) for v in p))

    @classmethod
    def uniform(cls, fmt: GameFormat) -> "MixedProfile":
        return cls(fmt, (Fraction(1, fmt.size),) * fmt.size)

    @classmethod
    def product(cls, fmt: GameFormat, factors: Sequence[Sequence[Number]]) -> "MixedProfile":
        """Independent profile from one mixed strategy per player."""
        vals = []
        for state in fmt.states():
            v: Number = 1
            for k, s in enumerate(state):
                v = v * factors[k][s]
            vals.append(v)
        return cls(fmt, tuple(vals))

    def totally_mixed(self) -> bool:
        return all(v > 0 for v in self.p)

    def with_backend(self, backend: Backend) -> "MixedProfile":
        return MixedProfile(self.format, tuple(convert(v, backend) for v in self.p))


@dataclass(frozen=True)
class SpohnMatrix:
    player: int  # 0-based
    rows: tuple[tuple[Number, Number], ...]

    def minors(self) -> dict[tuple[int, int], Number]:
        """2x2 minors m_a c_b - m_b c_a keyed by 0-based (a, b), a < b."""
        out = {}
        for a, b in itertools.combinations(range(len(self.rows)), 2):
            (ma, ca), (mb, cb) = self.rows[a], self.rows[b]
            out[(a, b)] = ma * cb - mb * ca
        return out


def _exact(v: Number) -> Number:
    if isinstance(v, (Fraction, float)):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    return v


def _check(game: Game, p: MixedProfile) -> None:
    if game.format != p.format:
        raise FormatMismatch(f"game format {game.format.d} vs profile format {p.format.d}")


def marginal(p: MixedProfile, S: Iterable[int]) -> Number | tuple[Number, ...]:
    """Marginal of ``p`` on the 0-based player set ``S`` (flat, in sorted order of ``S``).

    The empty set returns the total mass as a scalar.
    """
    S = sorted(set(S))
    fmt = p.format
    if any(not 0 <= i < fmt.n for i in S):
        raise ValueError(f"players {S} out of range")
    if not S:
        return sum(p.p)
    sub = GameFormat(fmt.sub(S))
    out: list[Number] = [0] * sub.size
    for state, v in zip(fmt.states(), p.p):
        j = sub.flat_index([state[i] for i in S])
        out[j] = out[j] + v
    return tuple(out)


def contract(game: Game, k: int, p: MixedProfile) -> tuple[Number, ...]:
    """The vector ``p ._k X^(k)``: component ``i`` sums X^(k)_j p_j over states with j_k = i."""
    _check(game, p)
    out: list[Number] = [0] * game.format.d[k]
    for state, x, v in zip(game.format.states(), game.tensor(k), p.p):
        out[state[k]] = out[state[k]] + x * v
    return tuple(out)


def conditional_payoffs(game: Game, k: int, p: MixedProfile) -> tuple[Number, ...]:
    m = marginal(p, [k])
    c = contract(game, k, p)
    for i, mi in enumerate(m):
        if mi == 0:
            raise ZeroMarginal(k + 1, i + 1)
    return tuple(ci / mi for ci, mi in zip(c, m))


def expected_payoff(game: Game, k: int, p: MixedProfile) -> Number:
    _check(game, p)
    return sum((x * v for x, v in zip(game.tensor(k), p.p)), start=0 * p.p[0])


def spohn_matrix(game: Game, k: int, p: MixedProfile) -> SpohnMatrix:
    m = marginal(p, [k])
    c = contract(game, k, p)
    return SpohnMatrix(k, tuple(zip(m, c)))


def random_game(
    fmt: GameFormat | Sequence[int], seed: int, coefficient_range: tuple[int, int] = (-10, 10)
) -> Game:
    """Integer payoffs drawn uniformly from the closed range, reproducible per seed."""
    if not isinstance(fmt, GameFormat):
        fmt = GameFormat(fmt)
    lo, hi = coefficient_range
    if lo > hi:
        raise ValueError("empty coefficient range")
    rng = np.random.default_rng(seed)
    tensors = []
    for _ in range(fmt.n):
        vals = rng.integers(lo, hi + 1, size=fmt.size)
        tensors.append(PayoffTensor(fmt, tuple(Fraction(int(v)) for v in vals)))
    return Game(fmt, tuple(tensors))


def game_with_backend(game: Game, backend: Backend) -> Game:
    fmt = game.format
    return Game(
        fmt,
        tuple(PayoffTensor(fmt, tuple(convert(v, backend) for v in t.values)) for t in game.payoffs),
    )
