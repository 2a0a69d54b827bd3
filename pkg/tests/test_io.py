import json
from fractions import Fraction as F

import pytest

from spohnci.equilibria import fixture, fixtures
from spohnci.graphs import Graph
from spohnci.io import (
    ParseError,
    dumps,
    game_from_json,
    game_to_json,
    graph_from_json,
    graph_to_json,
    load_game,
    load_graph,
    load_profile,
    parse_format,
    parse_graph_spec,
    profile_from_json,
    profile_to_json,
)


def test_parse_format():
    assert parse_format("4,2,2") == (4, 2, 2)
    assert parse_format(" 3 , 2") == (3, 2)
    with pytest.raises(ParseError) as exc:
        parse_format("2,x,2")
    assert exc.value.pos == 2
    assert "position 3" in str(exc.value) and str(exc.value).endswith("  ^")
    with pytest.raises(ParseError):
        parse_format("2,0")


def test_parse_graph_spec():
    assert parse_graph_spec("edges:2-3,3-4", 4) == Graph(4, [(2, 3), (3, 4)])
    assert parse_graph_spec("edges:", 3) == Graph.empty(3)
    assert parse_graph_spec("complete", 3) == Graph.complete(3)
    assert parse_graph_spec("empty", 2) == Graph.empty(2)


@pytest.mark.parametrize(
    "text,pos",
    [("edges:2-3,3-9", 12), ("edges:2-3,x", 10), ("path", 0), ("edges:2-2", 6)],
)
def test_graph_spec_errors(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_graph_spec(text, 4)
    assert exc.value.pos == pos


def test_numbers():
    g = game_from_json({"format": [2], "payoffs": [[1, "3/4"]]})
    assert g.tensor(0) == (1, F(3, 4))
    assert isinstance(g.tensor(0)[0], F)
    p = profile_from_json({"format": [2], "p": [0.25, 0.75]})
    assert p.p == (0.25, 0.75)
    with pytest.raises(ParseError):
        game_from_json({"format": [2], "payoffs": [[True, 1]]})
    with pytest.raises(ParseError):
        game_from_json({"format": [2], "payoffs": [["one", 1]]})
    with pytest.raises(ParseError):
        profile_from_json({"format": [2, 0], "p": [1]})
    with pytest.raises(ParseError):
        graph_from_json({"edges": []})


@pytest.mark.parametrize("fid", [fx.id for fx in fixtures()])
def test_game_round_trip(fid):
    game = fixture(fid).game
    assert game_from_json(json.loads(dumps(game_to_json(game)))) == game


def test_profile_and_graph_round_trip():
    fam = fixture("beats-nash-4-2-2").family("G1")
    p = fam(F(1, 100))
    assert profile_from_json(json.loads(dumps(profile_to_json(p)))) == p
    G = Graph(4, [(3, 4), (1, 2)])
    assert graph_to_json(G) == {"vertices": 4, "edges": [[1, 2], [3, 4]]}
    assert graph_from_json(graph_to_json(G)) == G


def test_load_files(tmp_path):
    game = fixture("prisoners-dilemma").game
    gp = tmp_path / "g.json"
    gp.write_text(dumps(game_to_json(game)))
    assert load_game(gp) == game
    pp = tmp_path / "p.json"
    pp.write_text('{"format": [2, 2], "p": ["3/8", "1/8", "1/8", "3/8"]}')
    assert load_profile(pp).p == (F(3, 8), F(1, 8), F(1, 8), F(3, 8))
    hp = tmp_path / "h.json"
    hp.write_text('{"vertices": 3, "edges": [[2, 3]]}')
    assert load_graph(str(hp), 3) == Graph(3, [(2, 3)])
    with pytest.raises(ParseError):
        load_graph(str(hp), 4)
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(ParseError, match="invalid JSON"):
        load_game(bad)


def test_inline_graph_needs_n():
    with pytest.raises(ParseError):
        load_graph("edges:1-2")
    assert load_graph("edges:1-2", 2) == Graph.complete(2)
