"""Undirected graphs on the players, cliques, Markov statements and cluster structure.

Vertices are 1-based, ``1..n``. A graph produced by ``induced`` remembers the
original vertex ids in ``labels`` so formats can be restricted consistently.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Sequence

MAX_CLIQUE_VERTICES = 20
MAX_PARAM_ENTRIES = 5 * 10**6

Edge = tuple[int, int]


class NotCluster(ValueError):
    def __init__(self, component: tuple[int, ...]):
        super().__init__(f"component {set(component)} is not a clique")
        self.component = component


class SizeLimit(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge]
    labels: tuple[int, ...] = field(default=(), compare=False)

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = (), labels: Sequence[int] | None = None):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        norm = set()
        for e in edges:
            i, j = int(e[0]), int(e[1])
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"edge {i}-{j} outside vertices 1..{n}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(norm))
        lab = tuple(labels) if labels is not None else tuple(range(1, n + 1))
        if len(lab) != n:
            raise ValueError("one label per vertex required")
        object.__setattr__(self, "labels", lab)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, itertools.combinations(range(1, n + 1), 2))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, ())

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def neighbors(self, v: int) -> set[int]:
        out = set()
        for i, j in self.edges:
            if i == v:
                out.add(j)
            elif j == v:
                out.add(i)
        return out

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def components(self) -> list[tuple[int, ...]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        adj = self.adjacency()
        seen: set[int] = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            comp, queue = [], deque([v])
            seen.add(v)
            while queue:
                u = queue.popleft()
                comp.append(u)
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            comps.append(tuple(sorted(comp)))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_clique(self, vs: Iterable[int]) -> bool:
        return all(self.adjacent(i, j) for i, j in itertools.combinations(sorted(vs), 2))

    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def isolated(self) -> list[int]:
        adj = self.adjacency()
        return [v for v in self.vertices if not adj[v]]

    def induced(self, vs: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled to 1..m in increasing order of ``vs``."""
        vs = sorted(set(vs))
        pos = {v: i + 1 for i, v in enumerate(vs)}
        edges = [(pos[i], pos[j]) for i, j in self.edges if i in pos and j in pos]
        return Graph(len(vs), edges, [self.labels[v - 1] for v in vs])

    def restrict_format(self, d: Sequence[int]) -> tuple[int, ...]:
        """Strategy counts of this graph's vertices, given the counts of the original players."""
        return tuple(d[lab - 1] for lab in self.labels)

    def edge_spec(self) -> str:
        return "edges:" + ",".join(f"{i}-{j}" for i, j in self.sorted_edges())


def canonical_clique_order(cliques: Iterable[Iterable[int]]) -> list[tuple[int, ...]]:
    cs = [tuple(sorted(c)) for c in cliques]
    return sorted(cs, key=lambda c: (c[0], len(c), c))


def maximal_cliques(G: Graph) -> list[tuple[int, ...]]:
    """All maximal cliques (Bron-Kerbosch with pivoting), canonically sorted."""
    if G.n > MAX_CLIQUE_VERTICES:
        raise SizeLimit(f"clique enumeration is limited to {MAX_CLIQUE_VERTICES} vertices")
    adj = G.adjacency()
    found: list[frozenset[int]] = []

    def expand(r: set[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            found.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    if G.n:
        expand(set(), set(G.vertices), set())
    return canonical_clique_order(found)


def separates(G: Graph, A: Iterable[int], B: Iterable[int], C: Iterable[int]) -> bool:
    """True when every path from A to B meets C."""
    A, B, C = set(A), set(B), set(C)
    if A & B or A & C or B & C:
        raise ValueError("A, B and C must be pairwise disjoint")
    adj = G.adjacency()
    seen = set(A)
    queue = deque(A)
    while queue:
        u = queue.popleft()
        if u in B:
            return False
        for w in adj[u]:
            if w not in seen and w not in C:
                seen.add(w)
                queue.append(w)
    return True


def pairwise_markov_statements(G: Graph) -> list[tuple[int, int, tuple[int, ...]]]:
    """One statement X_i _||_ X_j | X_rest per non-adjacent pair i < j."""
    out = []
    for i, j in itertools.combinations(G.vertices, 2):
        if not G.adjacent(i, j):
            rest = tuple(v for v in G.vertices if v not in (i, j))
            out.append((i, j, rest))
    return out


@dataclass(frozen=True)
class ClusterStructure:
    components: tuple[tuple[int, ...], ...]
    n_i: tuple[int, ...]
    D: tuple[int, ...]
    S: tuple[int, ...]
    isolated: tuple[int, ...]  # 0-based component indices that are singletons

    @property
    def k(self) -> int:
        return len(self.components)

    @property
    def isolated_vertices(self) -> tuple[int, ...]:
        return tuple(self.components[i][0] for i in self.isolated)


def cluster_structure(G: Graph, d: Sequence[int]) -> ClusterStructure:
    if len(d) != G.n:
        raise ValueError(f"format has {len(d)} players, graph has {G.n} vertices")
    comps = G.components()
    for c in comps:
        if not G.is_clique(c):
            raise NotCluster(c)
    return ClusterStructure(
        components=tuple(comps),
        n_i=tuple(len(c) for c in comps),
        D=tuple(prod(d[v - 1] for v in c) for c in comps),
        S=tuple(sum(d[v - 1] for v in c) for c in comps),
        isolated=tuple(i for i, c in enumerate(comps) if len(c) == 1),
    )


def is_cluster(G: Graph) -> bool:
    return all(G.is_clique(c) for c in G.components())


def universal_clique_peel(G: Graph) -> tuple[tuple[int, ...], Graph] | None:
    """Vertices adjacent to all others, and the induced graph on the remaining ones."""
    adj = G.adjacency()
    peel = tuple(v for v in G.vertices if len(adj[v]) == G.n - 1)
    if not peel:
        return None
    rest = [v for v in G.vertices if v not in peel]
    return peel, G.induced(rest)


def cluster_supergraph(G: Graph) -> Graph:
    edges = []
    for c in G.components():
        edges.extend(itertools.combinations(c, 2))
    return Graph(G.n, edges, G.labels)


def cluster_subgraph(G: Graph, d: Sequence[int] | None = None) -> Graph:
    """Greedy clique partition: cover the uncovered vertex of highest d first,
    always by the largest clique containing it (ties go to smaller vertex ids)."""
    if d is None:
        d = [1] * G.n
    remaining = set(G.vertices)
    edges = []
    while remaining:
        v = min(remaining, key=lambda u: (-d[u - 1], u))
        sub = G.induced(remaining)
        back = {i + 1: sorted(remaining)[i] for i in range(len(remaining))}
        cliques = [tuple(back[u] for u in c) for c in maximal_cliques(sub)]
        best = min((c for c in cliques if v in c), key=lambda c: (-len(c), c))
        edges.extend(itertools.combinations(best, 2))
        remaining -= set(best)
    return Graph(G.n, edges, G.labels)


def is_chordal(G: Graph) -> bool:
    """Maximum cardinality search followed by a perfect elimination check."""
    adj = G.adjacency()
    weight = {v: 0 for v in G.vertices}
    order: list[int] = []
    unnumbered = set(G.vertices)
    while unnumbered:
        v = max(sorted(unnumbered), key=lambda u: weight[u])
        order.append(v)
        unnumbered.discard(v)
        for w in adj[v] & unnumbered:
            weight[w] += 1
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        earlier = [w for w in adj[v] if pos[w] < pos[v]]
        if len(earlier) > 1:
            parent = max(earlier, key=lambda w: pos[w])
            if any(w != parent and not G.adjacent(w, parent) for w in earlier):
                return False
    return True


@dataclass(frozen=True)
class ParamMatrix:
    cliques: tuple[tuple[int, ...], ...]
    row_labels: tuple[tuple[int, tuple[int, ...]], ...]  # (clique index, 0-based clique state)
    col_labels: tuple[tuple[int, ...], ...]  # 0-based global states
    rows: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.col_labels)

    def to_text(self) -> str:
        def digits(s: Sequence[int]) -> str:
            sep = "" if all(x < 9 for x in s) else "."
            return sep.join(str(x + 1) for x in s)

        rl = " ".join(f"C{c + 1}:{digits(s)}" for c, s in self.row_labels)
        cl = " ".join(digits(s) for s in self.col_labels)
        lines = [f"# rows {rl} | cols {cl}"]
        lines.extend(" ".join(map(str, r)) for r in self.rows)
        return "\n".join(lines) + "\n"


def parametrization_matrix(G: Graph, d: Sequence[int]) -> ParamMatrix:
    if len(d) != G.n:
        raise ValueError("format and graph sizes differ")
    cliques = maximal_cliques(G)
    ncols = prod(d)
    nrows = sum(prod(d[v - 1] for v in c) for c in cliques)
    if nrows * ncols > MAX_PARAM_ENTRIES:
        raise SizeLimit(f"parametrization matrix {nrows}x{ncols} exceeds the size limit")
    states = list(itertools.product(*(range(x) for x in d)))
    row_labels = []
    rows = []
    for ci, c in enumerate(cliques):
        for a in itertools.product(*(range(d[v - 1]) for v in c)):
            row_labels.append((ci, a))
            rows.append(tuple(int(all(x[v - 1] == av for v, av in zip(c, a))) for x in states))
    return ParamMatrix(tuple(cliques), tuple(row_labels), tuple(states), tuple(rows))
