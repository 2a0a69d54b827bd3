"""JSON files and inline literals for games, profiles, graphs and formats.

Game: ``{"format": [d1, ...], "payoffs": [[...], ...]}``, flat arrays with the
last index fastest. Profile: ``{"format": [...], "p": [...]}``. Graph:
``{"vertices": n, "edges": [[i, j], ...]}`` with 1-based vertices. Rationals
may be written as ``"a/b"`` strings.

Inline graphs: ``edges:2-3,3-4``, ``edges:`` (no edges), ``empty``, ``complete``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .games import Game, MixedProfile
from .graphs import Graph


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.message, self.text, self.pos = message, text, pos
        if pos is None:
            super().__init__(message)
        else:
            super().__init__(f"{message} at position {pos + 1}\n  {text}\n  {' ' * pos}^")


_INT = re.compile(r"\s*(\d+)\s*")


def parse_format(text: str) -> tuple[int, ...]:
    out, pos = [], 0
    for part in text.split(","):
        m = _INT.fullmatch(part)
        if not m or int(m.group(1)) < 1:
            raise ParseError("expected a positive integer", text, pos + len(part) - len(part.lstrip()))
        out.append(int(m.group(1)))
        pos += len(part) + 1
    return tuple(out)


def parse_graph_spec(text: str, n: int) -> Graph:
    spec = text.strip()
    if spec == "complete":
        return Graph.complete(n)
    if spec == "empty":
        return Graph.empty(n)
    if not spec.startswith("edges:"):
        raise ParseError("expected 'edges:i-j,...', 'empty' or 'complete'", text, 0)
    body = spec[len("edges:") :]
    edges = []
    pos = len("edges:")
    if body.strip():
        for part in body.split(","):
            m = re.fullmatch(r"\s*(\d+)\s*-\s*(\d+)\s*", part)
            if not m:
                raise ParseError("expected an edge 'i-j'", text, pos)
            i, j = int(m.group(1)), int(m.group(2))
            for v, g in ((i, 1), (j, 2)):
                if not 1 <= v <= n:
                    raise ParseError(f"vertex {v} outside 1..{n}", text, pos + m.start(g))
            if i == j:
                raise ParseError(f"self-loop at vertex {i}", text, pos)
            edges.append((i, j))
            pos += len(part) + 1
    return Graph(n, edges)


def _number(v: Any, where: str) -> Any:
    if isinstance(v, bool):
        raise ParseError(f"{where}: expected a number, got a boolean")
    if isinstance(v, (int, float)):
        return Fraction(v) if isinstance(v, int) else v
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except ValueError:
            raise ParseError(f"{where}: cannot read {v!r} as a rational") from None
    raise ParseError(f"{where}: expected a number or 'a/b' string")


def _json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON ({e.msg}) at line {e.lineno} column {e.colno}") from None


def _fmt(obj: dict, path: Any) -> tuple[int, ...]:
    d = obj.get("format") if isinstance(obj, dict) else None
    if not isinstance(d, list) or not all(isinstance(x, int) and not isinstance(x, bool) and x > 0 for x in d):
        raise ParseError(f"{path}: 'format' must be a list of positive integers")
    return tuple(d)


def game_from_json(obj: Any, source: Any = "game") -> Game:
    d = _fmt(obj, source)
    pay = obj.get("payoffs")
    if not isinstance(pay, list) or not all(isinstance(t, list) for t in pay):
        raise ParseError(f"{source}: 'payoffs' must be a list of flat arrays")
    vals = [[_number(v, f"{source}: payoffs[{k}][{i}]") for i, v in enumerate(t)] for k, t in enumerate(pay)]
    return Game.from_lists(d, vals)


def profile_from_json(obj: Any, source: Any = "profile") -> MixedProfile:
    d = _fmt(obj, source)
    p = obj.get("p")
    if not isinstance(p, list):
        raise ParseError(f"{source}: 'p' must be a flat array")
    return MixedProfile.from_list(d, [_number(v, f"{source}: p[{i}]") for i, v in enumerate(p)])


def graph_from_json(obj: Any, source: Any = "graph") -> Graph:
    if not isinstance(obj, dict) or not isinstance(obj.get("vertices"), int):
        raise ParseError(f"{source}: 'vertices' must be an integer")
    edges = obj.get("edges", [])
    if not isinstance(edges, list) or not all(isinstance(e, list) and len(e) == 2 for e in edges):
        raise ParseError(f"{source}: 'edges' must be a list of [i, j] pairs")
    return Graph(obj["vertices"], edges)


def load_game(path: str | Path) -> Game:
    return game_from_json(_json(path), path)


def load_profile(path: str | Path) -> MixedProfile:
    return profile_from_json(_json(path), path)


def load_graph(spec: str, n: int | None = None) -> Graph:
    """A graph from an inline literal (needs ``n``) or a JSON file."""
    s = spec.strip()
    if s in ("complete", "empty") or s.startswith("edges:"):
        if n is None:
            raise ParseError("inline graph needs the number of players (give --format or --game)")
        return parse_graph_spec(s, n)
    G = graph_from_json(_json(spec), spec)
    if n is not None and G.n != n:
        raise ParseError(f"{spec}: graph has {G.n} vertices, expected {n}")
    return G


def _num_out(v: Any) -> Any:
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return v


def game_to_json(game: Game) -> dict:
    return {"format": list(game.format.d), "payoffs": [[_num_out(v) for v in game.tensor(k)] for k in range(game.format.n)]}


def profile_to_json(p: MixedProfile) -> dict:
    return {"format": list(p.format.d), "p": [_num_out(v) for v in p.p]}


def graph_to_json(G: Graph) -> dict:
    return {"vertices": G.n, "edges": [list(e) for e in G.sorted_edges()]}


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
