"""Dimension, Chow class, degree and emptiness of Spohn-type varieties of generic games.

Everything here depends only on the format and the graph. The results hold for a
generic game of that format and say nothing about a particular payoff tensor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Any, Sequence

from .graphs import (
    ClusterStructure,
    Graph,
    NotCluster,
    cluster_structure,
    cluster_subgraph,
    cluster_supergraph,
)
from .polyring import Poly, Ring, binom, multinomial, tridiag_det_identity

NONEMPTY, EMPTY, UNKNOWN = "NonEmpty", "Empty", "Unknown"
KINDS = ("Spohn", "SpohnCI", "NashCI", "GraphicalModel")


@dataclass(frozen=True)
class VarietyReport:
    kind: str
    status: str
    dimension: int | None = None
    degree: int | None = None
    chow_class: Poly | None = None
    certificate: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind}")
        if self.status not in (NONEMPTY, EMPTY, UNKNOWN):
            raise ValueError(f"unknown status {self.status}")
        if self.status == EMPTY and (self.dimension is not None or self.degree is not None):
            raise ValueError("an empty variety has no dimension or degree")
        if self.degree is not None and self.degree < 0:
            raise ValueError("degree must be nonnegative")

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "status": self.status,
            "dimension": self.dimension,
            "degree": self.degree,
            "chow_class": None if self.chow_class is None else self.chow_class.to_str(),
            "certificate": list(self.certificate),
        }

    def summary(self) -> str:
        if self.status == EMPTY:
            return "empty"
        parts = []
        if self.dimension is not None:
            parts.append(f"dim {self.dimension}")
        if self.degree is not None:
            parts.append(f"degree {self.degree}")
        parts.append("nonempty" if self.status == NONEMPTY else "emptiness unknown")
        return ", ".join(parts)


def spohn_codim_degree(d: Sequence[int]) -> tuple[int, int]:
    """Generic codimension and degree of the Spohn variety."""
    if not d:
        raise ValueError("need at least one player")
    return sum(d) - len(d), prod(d)


def spohn_ci_dimension(d: Sequence[int], G: Graph) -> VarietyReport:
    from .modeldegree import model_dim

    dim = model_dim(G, d) - (sum(d) - len(d))
    cert = [f"generic: dim M_G - (sum d - n) = {dim}, valid when nonempty"]
    if dim < 0:
        return VarietyReport("SpohnCI", EMPTY, certificate=tuple(cert + ["negative expected dimension"]))
    status = general_graph_emptiness(d, G)
    return VarietyReport(
        "SpohnCI",
        status.status,
        dimension=None if status.status == EMPTY else dim,
        certificate=tuple(cert) + status.certificate,
    )


def nash_ci_dimension(d: Sequence[int], cluster: ClusterStructure) -> int:
    return sum(cluster.D) - sum(cluster.S) + len(d) - cluster.k


def chow_ring(cluster: ClusterStructure) -> Ring:
    return Ring(cluster.k, tuple(cluster.D))


def chow_class(d: Sequence[int], cluster: ClusterStructure) -> Poly:
    """Class of the Nash CI variety in Z[x_1..x_k]/<x_i^{D_i}>."""
    ring = chow_ring(cluster)
    xs = ring.gens()
    total = ring.zero()
    for x in xs:
        total = total + x
    cls = ring.one()
    for i in cluster.isolated:
        di = d[cluster.components[i][0] - 1]
        cls = cls * (total - xs[i]) ** (di - 1)
    for i, comp in enumerate(cluster.components):
        if i in cluster.isolated:
            continue
        for v in comp:
            if d[v - 1] > 1:
                cls = cls * tridiag_det_identity(d[v - 1] - 1, xs[i], total)
    return cls


def nash_ci_degree(d: Sequence[int], cluster: ClusterStructure) -> int:
    """Coefficient of prod x_i^{D_i - 1} in class * (sum x)^dim."""
    cls = chow_class(d, cluster)
    dim = nash_ci_dimension(d, cluster)
    top = [D - 1 for D in cluster.D]
    # (sum x)^dim contributes multinomial(dim; top - e) to the monomial x^e
    deg = 0
    for e, c in cls.terms.items():
        rest = [t - x for t, x in zip(top, e)]
        if min(rest) >= 0 and sum(rest) == dim:
            deg += c * multinomial(rest)
    return deg


def one_edge_3player_degree(d1: int, d2: int, d3: int) -> int:
    D = d2 * d3
    return (
        binom(D + 1, d1 + 1)
        - binom(D - d2 + 1, d1 + 1)
        - binom(D - d3 + 1, d1 + 1)
        + binom(D - d2 - d3 + 1, d1 + 1)
    )


def is_empty_cluster(d: Sequence[int], cluster: ClusterStructure) -> bool:
    """Some isolated vertex has d_i > 1 + (1/2) sum_l (D_l - 1)."""
    slack = sum(D - 1 for D in cluster.D)
    return any(2 * d[v - 1] > 2 + slack for v in cluster.isolated_vertices)


def nash_no_edge_nonempty(d: Sequence[int]) -> bool:
    n, total = len(d), sum(d)
    return all(di <= 2 - n + (total - di) for di in d)


def nash_ci_report(d: Sequence[int], G: Graph) -> VarietyReport:
    cluster = cluster_structure(G, d)
    comps = " ".join("{" + ",".join(map(str, c)) + "}" for c in cluster.components)
    cert = [
        f"generic game; cluster graph with components {comps}",
        f"D = {list(cluster.D)}, S = {list(cluster.S)}, isolated = {list(cluster.isolated_vertices)}",
    ]
    if is_empty_cluster(d, cluster):
        bad = [v for v in cluster.isolated_vertices if 2 * d[v - 1] > 2 + sum(D - 1 for D in cluster.D)]
        cert.append(f"empty: isolated vertex {bad[0]} has d = {d[bad[0] - 1]} > 1 + sum(D_l - 1)/2")
        return VarietyReport("NashCI", EMPTY, certificate=tuple(cert))
    cls = chow_class(d, cluster)
    dim = nash_ci_dimension(d, cluster)
    deg = nash_ci_degree(d, cluster)
    cert.append(f"dimension sum D - sum S + n - k = {dim}")
    cert.append(f"degree = coefficient of prod x_i^(D_i - 1) in class * (x_1 + ... + x_k)^{dim}")
    return VarietyReport("NashCI", NONEMPTY, dimension=dim, degree=deg, chow_class=cls, certificate=tuple(cert))


def _cluster_verdict(d: Sequence[int], H: Graph) -> bool:
    """True when the cluster graph H has a nonempty Nash CI variety."""
    return not is_empty_cluster(d, cluster_structure(H, d))


def general_graph_emptiness(d: Sequence[int], G: Graph) -> VarietyReport:
    if len(d) != G.n:
        raise ValueError("format and graph sizes differ")
    isolated = set(G.isolated())
    top = max(d)
    if any(d[v - 1] == top and v not in isolated for v in G.vertices):
        return _status(NONEMPTY, "a vertex with the largest d is not isolated", G)
    if not isolated:
        return _status(NONEMPTY, "no isolated vertex", G)
    if G.n >= 2 and G.is_connected():
        return _status(NONEMPTY, "graph is connected", G)
    sub = cluster_subgraph(G, d)
    if _cluster_verdict(d, sub):
        return _status(NONEMPTY, "greedy cluster subgraph is nonempty", sub)
    sup = cluster_supergraph(G)
    if not _cluster_verdict(d, sup):
        return _status(EMPTY, "cluster supergraph is empty", sup)
    return _status(UNKNOWN, "subgraph empty and supergraph nonempty; no rule applies", sub, sup)


def _status(status: str, rule: str, *witnesses: Graph) -> VarietyReport:
    cert = ["generic game", f"{status}: {rule}"]
    cert.extend(f"witness graph {w.edge_spec()}" for w in witnesses)
    return VarietyReport("SpohnCI", status, certificate=tuple(cert))


def invariants_report(d: Sequence[int], G: Graph) -> VarietyReport:
    """Nash CI data for cluster graphs; dimension plus emptiness status otherwise."""
    try:
        return nash_ci_report(d, G)
    except NotCluster:
        return spohn_ci_dimension(d, G)
