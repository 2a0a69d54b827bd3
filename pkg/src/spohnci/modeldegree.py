"""Dimension and degree of graphical-model varieties via the union/join calculus.

``model_dim`` is the rank of the parametrization matrix minus one. ``model_degree``
walks a decomposition tree: disjoint unions combine by the multinomial rule,
peeling a universal clique K_p raises the child degree to the power
D_peel = prod of d over the peeled vertices, and complete graphs have degree 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, prod
from typing import Sequence, Union

from .graphs import Graph, parametrization_matrix, universal_clique_peel
from .linalg import bareiss_rank
from .polyring import multinomial


class NotDecomposableError(ValueError):
    def __init__(self, subgraph: Graph):
        verts = ",".join(map(str, subgraph.labels))
        super().__init__(f"induced subgraph on vertices {{{verts}}} is not decomposable")
        self.subgraph = subgraph


@dataclass(frozen=True)
class BaseComplete:
    graph: Graph


@dataclass(frozen=True)
class NotDecomposable:
    graph: Graph


@dataclass(frozen=True)
class CliquePeel:
    graph: Graph
    clique: tuple[int, ...]  # original vertex ids
    child: "Tree"


@dataclass(frozen=True)
class DisjointUnion:
    graph: Graph
    children: tuple["Tree", ...]


Tree = Union[BaseComplete, NotDecomposable, CliquePeel, DisjointUnion]


def model_dim(G: Graph, d: Sequence[int]) -> int:
    if len(d) != G.n:
        raise ValueError("format and graph sizes differ")
    return bareiss_rank(parametrization_matrix(G, d).rows) - 1


def decompose(G: Graph) -> Tree:
    comps = G.components()
    if len(comps) > 1:
        return DisjointUnion(G, tuple(decompose(G.induced(c)) for c in comps))
    if G.is_complete():
        return BaseComplete(G)
    peeled = universal_clique_peel(G)
    if peeled is None:
        return NotDecomposable(G)
    clique, rest = peeled
    return CliquePeel(G, tuple(G.labels[v - 1] for v in clique), decompose(rest))


def leaves(tree: Tree) -> list[Tree]:
    if isinstance(tree, DisjointUnion):
        return [leaf for c in tree.children for leaf in leaves(c)]
    if isinstance(tree, CliquePeel):
        return leaves(tree.child)
    return [tree]


def is_decomposable(tree: Tree) -> bool:
    return not any(isinstance(leaf, NotDecomposable) for leaf in leaves(tree))


def pretty(tree: Tree) -> str:
    if isinstance(tree, BaseComplete):
        return f"K{tree.graph.n}"
    if isinstance(tree, NotDecomposable):
        edges = ",".join(
            f"{tree.graph.labels[i - 1]}-{tree.graph.labels[j - 1]}" for i, j in tree.graph.sorted_edges()
        )
        return f"N[{edges}]"
    if isinstance(tree, CliquePeel):
        inner = pretty(tree.child)
        if not isinstance(tree.child, (BaseComplete, NotDecomposable)):
            inner = f"({inner})"
        return f"K{len(tree.clique)} ∨ {inner}"
    parts = []
    for c in tree.children:
        s = pretty(c)
        parts.append(f"({s})" if isinstance(c, CliquePeel) else s)
    return " ⊎ ".join(parts)


def _sub_format(node: Tree, d: Sequence[int]) -> tuple[int, ...]:
    return node.graph.restrict_format(d)


def model_degree(G: Graph, d: Sequence[int]) -> int:
    if len(d) != G.n:
        raise ValueError("format and graph sizes differ")
    return _degree(decompose(G), d)


def _degree(node: Tree, d: Sequence[int]) -> int:
    if isinstance(node, BaseComplete):
        return 1
    if isinstance(node, NotDecomposable):
        raise NotDecomposableError(node.graph)
    if isinstance(node, CliquePeel):
        d_peel = prod(d[v - 1] for v in node.clique)
        return _degree(node.child, d) ** d_peel
    dims = [model_dim(c.graph, _sub_format(c, d)) for c in node.children]
    out = multinomial(dims)
    for c in node.children:
        out *= _degree(c, d)
    return out


def recursion_dim(tree: Tree, d: Sequence[int]) -> int:
    """Dimension from the tree alone: sums over unions, D_peel (child + 1) - 1 over peels."""
    if isinstance(tree, BaseComplete):
        return prod(_sub_format(tree, d)) - 1
    if isinstance(tree, NotDecomposable):
        raise NotDecomposableError(tree.graph)
    if isinstance(tree, CliquePeel):
        d_peel = prod(d[v - 1] for v in tree.clique)
        return d_peel * (recursion_dim(tree.child, d) + 1) - 1
    return sum(recursion_dim(c, d) for c in tree.children)


def star_degree(d: Sequence[int], center: int) -> int:
    """Degree of the star model with the given 1-based center."""
    leaves_ = [x - 1 for i, x in enumerate(d, start=1) if i != center]
    return multinomial(leaves_) ** d[center - 1]


def product_degree(dim1: int, deg1: int, dim2: int, deg2: int) -> int:
    return comb(dim1 + dim2, dim1) * deg1 * deg2
