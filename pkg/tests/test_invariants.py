import itertools
import json
from math import prod

import pytest

from spohnci.graphs import Graph, cluster_structure
from spohnci.invariants import (
    EMPTY,
    NONEMPTY,
    UNKNOWN,
    VarietyReport,
    chow_class,
    chow_ring,
    general_graph_emptiness,
    invariants_report,
    is_empty_cluster,
    nash_ci_degree,
    nash_ci_dimension,
    nash_no_edge_nonempty,
    one_edge_3player_degree,
    spohn_ci_dimension,
    spohn_codim_degree,
)

EDGE23 = Graph(3, [(2, 3)])
LAST = Graph(4, [(2, 3), (3, 4)])

# (d1, d2, d3, dimension, degree); None marks an empty variety
TABLE = [
    (2, 2, 2, 1, 8),
    (2, 2, 3, 2, 21),
    (3, 2, 2, 1, 5),
    (2, 3, 3, 4, 54),
    (3, 2, 3, 2, 29),
    (3, 3, 3, 4, 141),
    (2, 2, 4, 3, 40),
    (4, 2, 2, 1, 1),
    (2, 3, 4, 6, 102),
    (3, 2, 4, 3, 86),
    (4, 2, 3, 2, 20),
    (2, 4, 4, 9, 192),
    (5, 2, 2, None, None),
    (2, 2, 5, 4, 65),
    (2, 3, 5, 8, 165),
    (7, 2, 3, None, None),
]


def cluster_graphs(n):
    def partitions(s):
        if not s:
            yield []
            return
        first, rest = s[0], s[1:]
        for p in partitions(rest):
            for i in range(len(p)):
                yield p[:i] + [[first] + p[i]] + p[i + 1 :]
            yield [[first]] + p

    for part in partitions(list(range(1, n + 1))):
        yield Graph(n, [e for b in part for e in itertools.combinations(sorted(b), 2)])


@pytest.mark.parametrize("d1,d2,d3,dim,deg", TABLE)
def test_table(d1, d2, d3, dim, deg):
    rep = invariants_report((d1, d2, d3), EDGE23)
    if dim is None:
        assert rep.status == EMPTY and rep.dimension is None and rep.degree is None
    else:
        assert (rep.status, rep.dimension, rep.degree) == (NONEMPTY, dim, deg)
    assert one_edge_3player_degree(d1, d2, d3) == (deg or 0)


def test_closed_formula_agrees():
    for d in itertools.product(range(1, 7), repeat=3):
        cs = cluster_structure(EDGE23, d)
        assert nash_ci_degree(d, cs) == one_edge_3player_degree(*d), d


def test_spohn_codim_degree():
    assert spohn_codim_degree((2, 2)) == (2, 4)
    assert spohn_codim_degree((2, 2, 2)) == (3, 8)
    assert spohn_codim_degree((1, 1, 1)) == (0, 1)


def test_spohn_ci_dimension_binary():
    d = (2, 2, 2)
    assert spohn_ci_dimension(d, EDGE23).dimension == 1
    assert spohn_ci_dimension(d, Graph.complete(3)).dimension == 4
    assert spohn_ci_dimension(d, Graph(3, [(1, 2), (2, 3)])).dimension == 2
    assert spohn_ci_dimension(d, Graph.empty(3)).dimension == 0
    assert spohn_ci_dimension((4, 2, 2), EDGE23).dimension == 1


def test_nash_dimension():
    assert nash_ci_dimension((2, 3, 3), cluster_structure(EDGE23, (2, 3, 3))) == 4
    assert nash_ci_dimension((2, 2, 2), cluster_structure(EDGE23, (2, 2, 2))) == 1
    d = (2, 3, 2)
    assert nash_ci_dimension(d, cluster_structure(Graph.complete(3), d)) == prod(d) - sum(d) + 3 - 1


def test_chow_class_examples():
    d = (2, 2, 2)
    cls = chow_class(d, cluster_structure(EDGE23, d))
    x1, x2 = chow_ring(cluster_structure(EDGE23, d)).gens()
    assert cls == 4 * x1 * x2**2 + 4 * x2**3
    assert cls.to_str() == "4*x1*x2^2 + 4*x2^3"
    cs = cluster_structure(Graph.empty(2), (2, 2))
    y1, y2 = chow_ring(cs).gens()
    assert chow_class((2, 2), cs) == y1 * y2
    for d in [(2, 3), (3, 2, 2), (2, 2, 2, 2)]:
        cs = cluster_structure(Graph.complete(len(d)), d)
        (x,) = chow_ring(cs).gens()
        assert chow_class(d, cs) == prod(d) * x ** (sum(d) - len(d))


def test_degree_examples():
    for d, deg in [((2, 2, 3), 21), ((3, 2, 4), 86), ((5, 2, 2), 0)]:
        assert nash_ci_degree(d, cluster_structure(EDGE23, d)) == deg


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_class_homogeneous(n):
    dmax = 4 if n <= 3 else 3
    for G in cluster_graphs(n):
        for d in itertools.product(range(1, dmax + 1), repeat=n):
            cs = cluster_structure(G, d)
            cls = chow_class(d, cs)
            if not cls.is_zero():
                assert cls.degrees() == {sum(cs.S) - n}


def test_single_player_complete_is_isolated():
    for d in (2, 3, 7):
        cs = cluster_structure(Graph.complete(1), (d,))
        assert is_empty_cluster((d,), cs) and nash_ci_degree((d,), cs) == 0


def test_complete_degree():
    for d in [(2, 2), (3, 4), (2, 2, 2), (2, 3, 4), (4, 4, 4), (2, 2, 2, 2, 2, 2)]:
        assert nash_ci_degree(d, cluster_structure(Graph.complete(len(d)), d)) == prod(d)


def test_emptiness_examples():
    assert is_empty_cluster((5, 2, 2), cluster_structure(EDGE23, (5, 2, 2)))
    assert is_empty_cluster((7, 2, 3), cluster_structure(EDGE23, (7, 2, 3)))
    assert not is_empty_cluster((9, 2, 2), cluster_structure(Graph.complete(3), (9, 2, 2)))
    assert nash_no_edge_nonempty((2, 2, 2))
    assert not nash_no_edge_nonempty((4, 2, 2))
    assert nash_no_edge_nonempty((3, 2, 2))


def test_no_edge_equivalence():
    for n in range(1, 5):
        for d in itertools.product(range(1, 7), repeat=n):
            cs = cluster_structure(Graph.empty(n), d)
            assert (not is_empty_cluster(d, cs)) == nash_no_edge_nonempty(d), d


def test_general_graph_examples():
    r9 = general_graph_emptiness((9, 2, 2, 2), LAST)
    assert r9.status == EMPTY
    assert any("edges:2-3,2-4,3-4" in c for c in r9.certificate)
    r5 = general_graph_emptiness((5, 2, 2, 2), LAST)
    assert r5.status == NONEMPTY
    assert any("subgraph" in c for c in r5.certificate)
    for d1 in (6, 7, 8):
        assert general_graph_emptiness((d1, 2, 2, 2), LAST).status == UNKNOWN


def test_general_graph_rules():
    assert "largest d" in general_graph_emptiness((2, 3, 3), EDGE23).certificate[1]
    # a lone generic player is never indifferent between two strategies
    assert general_graph_emptiness((2,), Graph(1)).status == EMPTY
    assert general_graph_emptiness((1,), Graph(1)).status == NONEMPTY


def test_general_consistent_with_cluster():
    for n in range(1, 5):
        for G in cluster_graphs(n):
            for d in itertools.product(range(1, 5), repeat=n):
                rep = general_graph_emptiness(d, G)
                empty = is_empty_cluster(d, cluster_structure(G, d))
                assert rep.status == (EMPTY if empty else NONEMPTY), (G, d)


def test_report_json_and_validation():
    rep = invariants_report((5, 2, 2), EDGE23)
    js = rep.to_json()
    assert js["dimension"] is None and js["degree"] is None and js["chow_class"] is None
    assert isinstance(js["certificate"], list)
    json.dumps(js)
    with pytest.raises(ValueError):
        VarietyReport("NashCI", EMPTY, dimension=1)
    with pytest.raises(ValueError):
        VarietyReport("NashCI", NONEMPTY, degree=-1)


def test_summaries():
    assert invariants_report((4, 2, 2), EDGE23).summary() == "dim 1, degree 1, nonempty"
    assert invariants_report((5, 2, 2), EDGE23).summary() == "empty"
    assert invariants_report((2, 2, 2), Graph.empty(3)).summary() == "dim 0, degree 2, nonempty"
    assert invariants_report((2, 2, 2), Graph.complete(3)).degree == 8
