"""Defining equations of Spohn, Spohn-CI and Nash-CI varieties.

Two coordinate systems appear here:

* p-coordinates, one variable per global state (flat order of ``GameFormat``);
* clique coordinates sigma^(C)_{j_C}, one block per maximal clique C of the
  graph, cliques in canonical order, states in lexicographic order.

Player and strategy arguments are 0-based; player ``k`` is graph vertex ``k + 1``.
Printed names and provenance labels are 1-based.

The generator sets are pre-saturation: no components inside coordinate or
total-sum hyperplanes are removed. For generic games on cluster graphs this is
already the Nash CI variety; for other graphs an external saturation may be
needed, which is what the export path is for.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod
from typing import Any, Iterable, Sequence

from .games import Game, GameFormat
from .graphs import Graph, is_cluster, maximal_cliques, pairwise_markov_statements
from .polyring import Poly, Ring

DIALECTS = ("plain", "m2")


class IsolatedVertex(ValueError):
    pass


def _index_name(base: str, state: Sequence[int], d: Sequence[int]) -> str:
    if all(x <= 9 for x in d):
        return f"{base}_{''.join(str(s + 1) for s in state)}"
    return f"{base}_({','.join(str(s + 1) for s in state)})"


@dataclass(frozen=True)
class SigmaVar:
    clique: int  # 0-based index into the canonical clique list
    state: tuple[int, ...]  # 0-based clique state


class SigmaSpace:
    """Clique coordinates of the graphical model of ``G`` with format ``d``."""

    def __init__(self, G: Graph, d: Sequence[int]):
        if len(d) != G.n:
            raise ValueError("format and graph sizes differ")
        self.graph = G
        self.d = tuple(d)
        self.cliques = maximal_cliques(G)
        self.vars: list[SigmaVar] = []
        for ci, c in enumerate(self.cliques):
            for s in itertools.product(*(range(d[v - 1]) for v in c)):
                self.vars.append(SigmaVar(ci, s))
        self.index = {v: i for i, v in enumerate(self.vars)}
        self.ring = Ring(len(self.vars))
        self.var_clique = [v.clique for v in self.vars]
        self.names = [
            _index_name(f"s{v.clique + 1}", v.state, [d[u - 1] for u in self.cliques[v.clique]])
            for v in self.vars
        ]

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def var_index(self, clique: int, state: Sequence[int]) -> int:
        return self.index[SigmaVar(clique, tuple(state))]

    def state_vars(self, x: Sequence[int], cliques: Iterable[int] | None = None) -> list[int]:
        """Variable indices sigma^(C)_{x_C} for a 0-based global state ``x``."""
        cs = range(len(self.cliques)) if cliques is None else cliques
        return [self.var_index(c, [x[v - 1] for v in self.cliques[c]]) for c in cs]

    def monomial(self, var_indices: Iterable[int], coeff: Any = 1) -> Poly:
        e = [0] * self.nvars
        for i in var_indices:
            e[i] += 1
        return Poly(self.ring, {tuple(e): coeff})

    def clique_degrees(self, e: Sequence[int]) -> tuple[int, ...]:
        out = [0] * len(self.cliques)
        for i, k in enumerate(e):
            out[self.var_clique[i]] += k
        return tuple(out)

    def multidegree(self, poly: Poly) -> tuple[int, ...] | None:
        """Common per-clique degree vector of all terms; None if not multihomogeneous or zero."""
        degs = {self.clique_degrees(e) for e in poly.terms}
        return degs.pop() if len(degs) == 1 else None

    def component_cliques(self, vertex: int) -> list[int]:
        comp = next(c for c in self.graph.components() if vertex in c)
        return [i for i, c in enumerate(self.cliques) if set(c) <= set(comp)]


@dataclass(frozen=True)
class SigmaPoly:
    space: SigmaSpace
    poly: Poly
    multidegree: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.poly.ring != self.space.ring:
            raise ValueError("polynomial does not live in the clique coordinate ring")
        if len(self.multidegree) != len(self.space.cliques):
            raise ValueError("multidegree needs one entry per clique")
        if not self.poly.is_zero() and self.space.multidegree(self.poly) != self.multidegree:
            raise ValueError("polynomial is not multihomogeneous of the stated multidegree")

    def to_str(self) -> str:
        return self.poly.to_str(self.space.names, _fmt_coeff)

    def evaluate(self, values: Sequence[Any]) -> Any:
        return self.poly.evaluate(values)


@dataclass(frozen=True)
class MonomialMap:
    space: SigmaSpace
    images: tuple[tuple[int, ...], ...]  # per flat p-index: one variable index per clique

    def exponents(self) -> list[list[int]]:
        out = []
        for img in self.images:
            e = [0] * self.space.nvars
            for i in img:
                e[i] += 1
            out.append(e)
        return out


def monomial_map(G: Graph, d: Sequence[int]) -> MonomialMap:
    space = SigmaSpace(G, d)
    states = GameFormat(d).states()
    return MonomialMap(space, tuple(tuple(space.state_vars(x)) for x in states))


def _component(G: Graph, k: int) -> tuple[int, ...]:
    return next(c for c in G.components() if k + 1 in c)


def _L(space: SigmaSpace, k: int, a: int) -> Poly:
    comp = _component(space.graph, k)
    cl = space.component_cliques(k + 1)
    total = space.ring.zero()
    for sub in itertools.product(*(range(space.d[v - 1]) if v != k + 1 else (a,) for v in comp)):
        x = [0] * len(space.d)
        for v, s in zip(comp, sub):
            x[v - 1] = s
        total = total + space.monomial(space.state_vars(x, cl))
    return total


def L_poly(G: Graph, d: Sequence[int], k: int, a: int) -> SigmaPoly:
    """Sum of the clique monomials of k's component with player k fixed to strategy a."""
    if len(_component(G, k)) == 1:
        raise IsolatedVertex(f"player {k + 1} is isolated; the first column is the constant 1")
    space = SigmaSpace(G, d)
    cl = set(space.component_cliques(k + 1))
    md = tuple(1 if c in cl else 0 for c in range(len(space.cliques)))
    return SigmaPoly(space, _L(space, k, a), md)


@dataclass(frozen=True)
class PullbackMatrix:
    player: int
    isolated: bool
    rows: tuple[tuple[Poly, Poly], ...]
    column_factor: Poly  # sum of the monomials of the other components
    row_factors: tuple[Poly, ...]  # sigma^(k)_a for isolated k, otherwise 1

    def minor(self, a: int, b: int) -> Poly:
        (la, ga), (lb, gb) = self.rows[a], self.rows[b]
        return la * gb - lb * ga

    def removed_factor(self, a: int, b: int) -> Poly:
        return self.column_factor * self.row_factors[a] * self.row_factors[b]


def _pullback(game: Game, space: SigmaSpace, k: int) -> PullbackMatrix:
    G, d = space.graph, space.d
    comp = _component(G, k)
    isolated = len(comp) == 1
    cl = space.component_cliques(k + 1)
    others = [c for c in range(len(space.cliques)) if c not in cl]
    ring = space.ring
    col2 = [ring.zero() for _ in range(d[k])]
    X = game.tensor(k)
    for x, val in zip(game.format.states(), X):
        if val == 0:
            continue
        vs = space.state_vars(x, others if isolated else None)
        col2[x[k]] = col2[x[k]] + space.monomial(vs, val)
    rest = [v for v in G.vertices if v not in comp]
    dsum = ring.zero()
    for sub in itertools.product(*(range(d[v - 1]) for v in rest)):
        x = [0] * len(d)
        for v, s in zip(rest, sub):
            x[v - 1] = s
        dsum = dsum + space.monomial(space.state_vars(x, others))
    if isolated:
        rows = tuple((ring.one(), col2[a]) for a in range(d[k]))
        row_factors = tuple(space.monomial([space.var_index(cl[0], (a,))]) for a in range(d[k]))
    else:
        rows = tuple((_L(space, k, a), col2[a]) for a in range(d[k]))
        row_factors = tuple(ring.one() for _ in range(d[k]))
    return PullbackMatrix(k, isolated, rows, dsum, row_factors)


def pullback_matrix(game: Game, G: Graph, k: int) -> PullbackMatrix:
    return _pullback(game, SigmaSpace(G, game.format.d), k)


def player_multidegree(space: SigmaSpace, k: int) -> tuple[int, ...]:
    cl = set(space.component_cliques(k + 1))
    isolated = len(_component(space.graph, k)) == 1
    if isolated:
        return tuple(0 if c in cl else 1 for c in range(len(space.cliques)))
    return tuple(2 if c in cl else 1 for c in range(len(space.cliques)))


@dataclass(frozen=True)
class Generator:
    player: int  # 0-based
    a: int
    b: int
    poly: SigmaPoly

    @property
    def label(self) -> str:
        return f"F[{self.player + 1}]_{self.a + 1},{self.b + 1}"


@dataclass(frozen=True)
class EquationSystem:
    space: SigmaSpace
    game: Game
    generators: tuple[Generator, ...]
    matrices: tuple[PullbackMatrix, ...]
    kind: str  # "cluster" (Nash CI generators) or "general"

    @property
    def graph(self) -> Graph:
        return self.space.graph

    @property
    def format(self) -> GameFormat:
        return self.game.format

    def polys(self) -> list[Poly]:
        return [g.poly.poly for g in self.generators]

    def normalizations(self) -> list[Poly]:
        """Sum of sigma over each clique, minus 1."""
        out = []
        for ci in range(len(self.space.cliques)):
            idx = [i for i, v in enumerate(self.space.vars) if v.clique == ci]
            p = self.space.ring.const(-1)
            for i in idx:
                p = p + self.space.ring.var(i)
            out.append(p)
        return out

    def residuals(self, values: Sequence[Any]) -> list[Any]:
        return [g.poly.evaluate(values) for g in self.generators]


def equation_system(game: Game, G: Graph, spanning: bool = False) -> EquationSystem:
    """All 2x2 minors of every pullback matrix.

    With ``spanning`` only the minors against the first row are kept, d_k - 1
    per player; they cut out the same set wherever the first row is nonzero.
    """
    space = SigmaSpace(G, game.format.d)
    gens = []
    mats = []
    for k in range(game.format.n):
        M = _pullback(game, space, k)
        mats.append(M)
        md = player_multidegree(space, k)
        pairs = [(0, b) for b in range(1, game.format.d[k])] if spanning else itertools.combinations(range(game.format.d[k]), 2)
        for a, b in pairs:
            gens.append(Generator(k, a, b, SigmaPoly(space, M.minor(a, b), md)))
    return EquationSystem(space, game, tuple(gens), tuple(mats), "cluster" if is_cluster(G) else "general")


def sigma_point(space: SigmaSpace, blocks: Sequence[Sequence[Any]]) -> list[Any]:
    """Flatten per-clique sigma vectors (each in the clique's lexicographic state order)."""
    if len(blocks) != len(space.cliques):
        raise ValueError("one sigma vector per clique required")
    out: list[Any] = []
    for ci, block in enumerate(blocks):
        size = prod(space.d[v - 1] for v in space.cliques[ci])
        if len(block) != size:
            raise ValueError(f"clique {ci + 1} needs {size} values")
        out.extend(block)
    return out


def profile_from_sigma(space: SigmaSpace, values: Sequence[Any]) -> list[Any]:
    """Evaluate the monomial map: the (unnormalized) p-vector of a sigma point."""
    out = []
    for x in GameFormat(space.d).states():
        v: Any = 1
        for i in space.state_vars(x):
            v = v * values[i]
        out.append(v)
    return out


# -- p-coordinate polynomials ------------------------------------------------


@dataclass(frozen=True)
class PPoly:
    label: str
    poly: Poly


def p_names(d: Sequence[int]) -> list[str]:
    return [_index_name("p", x, d) for x in GameFormat(d).states()]


def spohn_minors_p(game: Game) -> list[PPoly]:
    fmt = game.format
    ring = Ring(fmt.size)
    states = fmt.states()
    out = []
    for k in range(fmt.n):
        m = [ring.zero() for _ in range(fmt.d[k])]
        c = [ring.zero() for _ in range(fmt.d[k])]
        for idx, (x, val) in enumerate(zip(states, game.tensor(k))):
            m[x[k]] = m[x[k]] + ring.var(idx)
            if val != 0:
                c[x[k]] = c[x[k]] + ring.var(idx, val)
        for a, b in itertools.combinations(range(fmt.d[k]), 2):
            out.append(PPoly(f"M[{k + 1}]_{a + 1},{b + 1}", m[a] * c[b] - m[b] * c[a]))
    return out


def ci_minors_p(G: Graph, d: Sequence[int]) -> list[PPoly]:
    fmt = GameFormat(d)
    ring = Ring(fmt.size)
    out = []
    for i, j, rest in pairwise_markov_statements(G):
        for rc in itertools.product(*(range(d[v - 1]) for v in rest)):
            def var(si: int, sj: int) -> Poly:
                x = [0] * len(d)
                x[i - 1], x[j - 1] = si, sj
                for v, s in zip(rest, rc):
                    x[v - 1] = s
                return ring.var(fmt.flat_index(x))

            for ia, ja in itertools.combinations(range(d[i - 1]), 2):
                for ib, jb in itertools.combinations(range(d[j - 1]), 2):
                    cond = "".join(str(s + 1) for s in rc)
                    label = f"CI[{i}|{j}|{','.join(map(str, rest))}]_{ia + 1}{ja + 1},{ib + 1}{jb + 1}" + (
                        f";{cond}" if rest else ""
                    )
                    out.append(PPoly(label, var(ia, ib) * var(ja, jb) - var(ia, jb) * var(ja, ib)))
    return out


def generator_count(d: Sequence[int]) -> int:
    return sum(comb(x, 2) for x in d)


# -- export --------------------------------------------------------------------


def _fmt_coeff(c: Any) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    if isinstance(c, float):
        return repr(c)
    return str(c)


def export_ideal(
    source: EquationSystem | Sequence[PPoly] | Sequence[Poly],
    dialect: str = "plain",
    names: Sequence[str] | None = None,
) -> str:
    """Deterministic text for a generator list.

    ``plain`` writes one polynomial per line. ``m2`` writes a ring declaration
    and an ideal that Macaulay2 can load.
    """
    if dialect not in DIALECTS:
        raise ValueError(f"unknown dialect {dialect!r}; expected one of {DIALECTS}")
    if isinstance(source, EquationSystem):
        polys = source.polys()
        names = source.space.names
        labels = [g.label for g in source.generators]
        header = f"{source.kind} pre-saturation generators, format {source.format}, graph {source.graph.edge_spec()}"
    else:
        items = list(source)
        polys = [p.poly if isinstance(p, PPoly) else p for p in items]
        labels = [p.label if isinstance(p, PPoly) else f"g{i + 1}" for i, p in enumerate(items)]
        header = "polynomials in p-coordinates"
        if names is None:
            if not polys:
                raise ValueError("variable names are required for an empty polynomial list")
            names = [f"x{i + 1}" for i in range(polys[0].ring.nvars)]
    texts = [p.to_str(names, _fmt_coeff) for p in polys]
    if dialect == "plain":
        return "".join(t + "\n" for t in texts)
    lines = [f"-- {header}", f"-- generators: {len(texts)}"]
    lines.append(f"R = QQ[{', '.join(names)}];")
    if not texts:
        lines.append("I = ideal(map(R^1, R^0, 0));")
    else:
        lines.append("I = ideal(")
        for i, (t, lab) in enumerate(zip(texts, labels)):
            sep = "," if i < len(texts) - 1 else ""
            lines.append(f"  {t}{sep} -- {lab}")
        lines.append(");")
    return "\n".join(lines) + "\n"
