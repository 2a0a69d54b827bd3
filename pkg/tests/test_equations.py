import itertools
from fractions import Fraction as F

import pytest

from spohnci.equations import (
    IsolatedVertex,
    L_poly,
    SigmaSpace,
    ci_minors_p,
    equation_system,
    export_ideal,
    generator_count,
    monomial_map,
    p_names,
    player_multidegree,
    profile_from_sigma,
    pullback_matrix,
    sigma_point,
    spohn_minors_p,
)
from spohnci.equilibria.fixtures import fixture
from spohnci.games import random_game
from spohnci.graphs import Graph
from spohnci.polyring import Ring

EDGE23 = Graph(3, [(2, 3)])
BINARY3 = [
    Graph(3, list(edges))
    for r in range(4)
    for edges in itertools.combinations([(1, 2), (1, 3), (2, 3)], r)
]


def test_monomial_map_one_edge():
    mm = monomial_map(EDGE23, (2, 2, 2))
    names = mm.space.names
    assert names == ["s1_1", "s1_2", "s2_11", "s2_12", "s2_21", "s2_22"]
    # p_{212} = s1_2 * s2_12
    img = mm.images[0b101]
    assert sorted(names[i] for i in img) == ["s1_2", "s2_12"]
    assert all(sum(e) == 2 for e in mm.exponents())


def test_monomial_map_complete_is_identity():
    mm = monomial_map(Graph.complete(3), (2, 3, 2))
    assert mm.images == tuple((i,) for i in range(12))


def test_L_poly_examples():
    L = L_poly(EDGE23, (2, 2, 2), 2, 0)
    assert L.to_str() == "s2_11 + s2_21"
    L = L_poly(EDGE23, (2, 2, 2), 1, 0)
    assert L.to_str() == "s2_11 + s2_12"
    assert L.multidegree == (0, 1)
    K2 = L_poly(Graph.complete(2), (2, 3), 0, 1)
    assert K2.to_str() == "s1_21 + s1_22 + s1_23"
    path = L_poly(Graph(3, [(1, 2), (2, 3)]), (2, 2, 2), 0, 0)
    assert len(path.poly.terms) == 4
    assert path.poly.degrees() == {2}
    with pytest.raises(IsolatedVertex):
        L_poly(EDGE23, (2, 2, 2), 0, 0)


def _check_pullback(game, G):
    d = game.format.d
    mm = monomial_map(G, d)
    space = mm.space
    exps = mm.exponents()
    p_minors = spohn_minors_p(game)
    pos = 0
    for k in range(len(d)):
        M = pullback_matrix(game, G, k)
        for a, b in itertools.combinations(range(d[k]), 2):
            pulled = p_minors[pos].poly.substitute_monomials(space.ring, exps)
            pos += 1
            assert pulled.exact_div(M.removed_factor(a, b)) == M.minor(a, b), (G, k, a, b)


@pytest.mark.parametrize("G", BINARY3, ids=lambda G: G.edge_spec())
def test_pullback_consistency_binary(G):
    for seed in range(3):
        _check_pullback(random_game((2, 2, 2), seed=seed), G)


def test_pullback_consistency_4x2x2():
    _check_pullback(fixture("beats-nash-4-2-2").game, EDGE23)
    _check_pullback(random_game((4, 2, 2), seed=11), EDGE23)


def test_generator_counts_4x2x2():
    S = equation_system(fixture("beats-nash-4-2-2").game, EDGE23)
    mds = [g.poly.multidegree for g in S.generators]
    assert len(mds) == generator_count((4, 2, 2)) == 8
    assert mds.count((0, 1)) == 6 and mds.count((1, 2)) == 2
    sp = equation_system(fixture("beats-nash-4-2-2").game, EDGE23, spanning=True)
    mds = [g.poly.multidegree for g in sp.generators]
    assert len(mds) == 5
    assert mds.count((0, 1)) == 3 and mds.count((1, 2)) == 2
    assert [g.label for g in sp.generators][:3] == ["F[1]_1,2", "F[1]_1,3", "F[1]_1,4"]


def test_zero_edge_multidegrees():
    space = SigmaSpace(Graph.empty(3), (2, 2, 2))
    assert [player_multidegree(space, k) for k in range(3)] == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
    S = equation_system(random_game((2, 2, 2), seed=2), Graph.empty(3))
    assert [g.poly.multidegree for g in S.generators] == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]


@pytest.mark.parametrize("G", BINARY3 + [Graph(4, [(1, 2), (2, 3)]), Graph(4, [(3, 4)])], ids=lambda G: G.edge_spec())
def test_generators_multihomogeneous(G):
    d = (2,) * G.n if G.n == 3 else (2, 3, 2, 2)
    S = equation_system(random_game(d, seed=5), G)
    for g in S.generators:
        expected = player_multidegree(S.space, g.player)
        if not g.poly.poly.is_zero():
            assert S.space.multidegree(g.poly.poly) == expected == g.poly.multidegree


def test_pareto_components_vanish():
    # points on the four printed components of the pre-saturation variety
    S = equation_system(fixture("pareto-2-2-2").game, EDGE23)

    def res(s1, s2):
        return S.residuals(sigma_point(S.space, [s1, s2]))

    for t, s in [(F(1, 3), F(2, 7)), (F(2), F(5))]:
        assert res((t - 3 * s, 2 * s), (t, t, s, t)) == [0, 0, 0]
    assert res((F(3), F(7)), (0, 0, F(5), 0)) == [0, 0, 0]
    for u in [F(1, 2), F(3)]:
        assert res((1, -1), ((4 - u) / 3, 1, (4 * u - u * u) / 3, u)) == [0, 0, 0]
    for s, w in [(F(1), F(2)), (F(3), F(-1))]:
        a = 19 * s * s - 10 * s * w + 3 * w * w
        b = -(13 * s * s - 2 * s * w + w * w)
        assert res((a, b), ((4 * s - w) / 3, s, s, w)) == [0, 0, 0]
    # the totally mixed line t in (3/10, 1/3) sits on the third component
    t = F(31, 100)
    s1 = ((10 * t - 3) / (4 * t - 1), (2 - 6 * t) / (4 * t - 1))
    assert res(s1, (t, t, 1 - 3 * t, t)) == [0, 0, 0]
    # a generic point does not
    assert any(res((F(1, 2), F(1, 2)), (F(1, 5), F(2, 5), F(1, 10), F(3, 10))))


def test_profile_from_sigma():
    space = SigmaSpace(EDGE23, (2, 2, 2))
    vals = sigma_point(space, [(F(1, 3), F(2, 3)), (F(1, 2), F(1, 4), F(1, 8), F(1, 8))])
    p = profile_from_sigma(space, vals)
    assert sum(p) == 1
    assert p[0] == F(1, 6) and p[7] == F(1, 12)
    with pytest.raises(ValueError):
        sigma_point(space, [(1, 0)])


def test_spohn_minors_pd():
    pd = fixture("prisoners-dilemma").game
    minors = spohn_minors_p(pd)
    assert len(minors) == 2
    point = [F(3, 8), F(1, 8), F(1, 8), F(3, 8)]
    assert all(m.poly.evaluate(point) == 0 for m in minors)
    assert any(m.poly.evaluate([F(1, 4), F(1, 4), F(1, 8), F(3, 8)]) != 0 for m in minors)


def test_ci_minor_counts():
    assert len(ci_minors_p(Graph.empty(2), (2, 2))) == 1
    assert ci_minors_p(Graph.complete(3), (2, 2, 2)) == []
    assert len(ci_minors_p(EDGE23, (2, 2, 2))) == 4
    assert len(ci_minors_p(Graph.empty(2), (3, 3))) == 9


def test_ci_minors_vanish_on_model():
    space = SigmaSpace(EDGE23, (2, 3, 2))
    vals = [F(i + 1, 7) for i in range(space.nvars)]
    p = profile_from_sigma(space, vals)
    assert all(m.poly.evaluate(p) == 0 for m in ci_minors_p(EDGE23, (2, 3, 2)))


def test_export_plain_and_m2():
    S = equation_system(fixture("beats-nash-4-2-2").game, EDGE23, spanning=True)
    plain = export_ideal(S)
    assert len(plain.splitlines()) == 5
    assert export_ideal(S) == plain
    m2 = export_ideal(S, "m2")
    assert m2.count(" -- F[") == 5
    assert "R = QQ[s1_1, s1_2, s1_3, s1_4, s2_11, s2_12, s2_21, s2_22];" in m2
    assert m2.rstrip().endswith(");")
    with pytest.raises(ValueError):
        export_ideal(S, "maple")


def test_export_empty_system():
    S = equation_system(random_game((1, 1), seed=0), Graph.empty(2))
    assert S.generators == ()
    assert export_ideal(S) == ""
    assert "ideal(map(R^1, R^0, 0))" in export_ideal(S, "m2")
    with pytest.raises(ValueError):
        export_ideal([])
    assert export_ideal([], "m2", names=["x"]).count("ideal(") == 1


def test_export_p_polys():
    pd = fixture("prisoners-dilemma").game
    text = export_ideal(spohn_minors_p(pd), "m2", names=p_names((2, 2)))
    assert "R = QQ[p_11, p_12, p_21, p_22];" in text
    assert text.count(" -- M[") == 2


def test_fraction_coefficients_print():
    R = Ring(1)
    assert export_ideal([R.var(0, F(-3, 4))], names=["y"]) == "-3/4*y\n"
