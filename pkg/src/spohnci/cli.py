"""Command-line front end.

Exit codes: 0 when the command succeeds and the requested verdict holds (or
the variety is nonempty), 1 when the verdict fails or the variety is empty,
2 on usage, parse or I/O errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .equations import export_ideal, equation_system
from .equilibria.fixtures import Fixture, fixture, fixtures
from .equilibria.solve import (
    CANDIDATES,
    FAMILY,
    UNIQUE,
    SolveResult,
    WrongShape,
    newton_solve,
    solve_one_edge_3player,
)
from .equilibria.verify import default_tol, verify_ci_equilibrium, verify_nash
from .games import Game
from .graphs import Graph
from .invariants import EMPTY, invariants_report
from .io import (
    ParseError,
    dumps,
    game_to_json,
    graph_to_json,
    load_game,
    load_graph,
    load_profile,
    parse_format,
    profile_to_json,
)
from .modeldegree import NotDecomposableError, decompose, model_degree, model_dim, pretty


class UsageError(Exception):
    pass


def _num(v: Any) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _jnum(v: Any) -> Any:
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    return v


def _vec(vs: Sequence[Any]) -> str:
    return "(" + ", ".join(_num(v) for v in vs) + ")"


def _emit(text: str, out: str | None = None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fixture_arg(args) -> Fixture | None:
    return fixture(args.fixture) if getattr(args, "fixture", None) else None


def _game(args) -> Game:
    fx = _fixture_arg(args)
    if fx is not None:
        return fx.game
    if not args.game:
        raise UsageError("give --game FILE or --fixture ID")
    return load_game(args.game)


def _graph(args, n: int, default: Graph | None = None) -> Graph:
    if args.graph:
        return load_graph(args.graph, n)
    if default is None:
        raise UsageError("--graph is required")
    return default


# -- invariants -----------------------------------------------------------------


def cmd_invariants(args) -> int:
    d = parse_format(args.format)
    G = _graph(args, len(d))
    rep = invariants_report(d, G)
    if args.json:
        _emit(dumps({"format": list(d), "graph": G.edge_spec(), **rep.to_json()}))
    else:
        lines = [rep.summary(), f"kind: {rep.kind}", f"format: {','.join(map(str, d))}", f"graph: {G.edge_spec()}"]
        if rep.chow_class is not None:
            lines.append(f"chow class: {rep.chow_class.to_str()}")
        lines.append("certificate:")
        lines.extend(f"  {c}" for c in rep.certificate)
        _emit("\n".join(lines) + "\n")
    return 1 if rep.status == EMPTY else 0


# -- equations ------------------------------------------------------------------


def cmd_equations(args) -> int:
    game = _game(args)
    fx = _fixture_arg(args)
    G = _graph(args, game.format.n, fx.graph if fx else None)
    system = equation_system(game, G, spanning=args.spanning)
    _emit(export_ideal(system, args.export), args.output)
    return 0


# -- verify ---------------------------------------------------------------------


def _params(text: str) -> tuple[Any, ...]:
    out = []
    for part in text.split(","):
        try:
            out.append(Fraction(part.strip()))
        except ValueError:
            try:
                out.append(float(part))
            except ValueError:
                raise ParseError(f"cannot read parameter {part!r}") from None
    return tuple(out)


def cmd_verify(args) -> int:
    tol = default_tol() if args.tol is None else args.tol
    fx = _fixture_arg(args)
    game = _game(args)
    default_graph = None
    if fx is not None:
        if not args.family:
            raise UsageError("--fixture needs --family (and --at for parametrized families)")
        fam = fx.family(args.family)
        p = fam(*(_params(args.at) if args.at else ()))
        default_graph = fam.graph
    else:
        if not args.profile:
            raise UsageError("--profile is required")
        p = load_profile(args.profile)
    if args.notion == "nash":
        rep = verify_nash(game, p, tol, args.backend)
    else:
        G = _graph(args, game.format.n, default_graph)
        rep = verify_ci_equilibrium(game, G, p, tol, args.backend)
    verdict = rep.verdict(args.notion)
    if args.json:
        _emit(dumps({"notion": args.notion, "verdict": verdict, **rep.to_json()}))
    else:
        lines = [
            f"{args.notion}: {'undefined' if verdict is None else str(verdict).lower()}",
            f"graph: {rep.graph}",
            f"backend: {rep.backend}, tol {rep.tol:g}",
            f"totally mixed: {str(rep.totally_mixed).lower()}",
            "spohn residuals: " + " ".join(f"{r:.3g}" for r in map(float, rep.spohn_residuals)),
        ]
        ci = rep.ci_residuals
        lines.append("ci residuals: " + (" ".join(f"{k}={float(v):.3g}" for k, v in ci) if ci else "none"))
        lines.append(f"independence residual: {float(rep.independence_residual):.3g}")
        lines.append("nash slack: " + " ".join(f"{float(s):.6g}" for s in rep.nash_slack))
        lines.extend(f"note: {n}" for n in rep.notes)
        _emit("\n".join(lines) + "\n")
    return 0 if verdict else 1


# -- solve ----------------------------------------------------------------------


def _solve_json(res: SolveResult) -> dict:
    return {
        "status": res.status,
        "cliques": [list(c) for c in res.cliques],
        "sigma": [[_jnum(v) for v in b] for b in res.sigma],
        "directions": [[[_jnum(v) for v in b] for b in dirn] for dirn in res.directions],
        "chart": None if res.chart is None else {"clique": res.chart[0] + 1, "coordinate": res.chart[1] + 1},
        "interval": None if res.interval is None else [_jnum(v) for v in res.interval],
        "dimension": res.dimension,
        "degree": res.degree,
        "candidates": [
            {"sigma": [list(b) for b in c.sigma], "residual": c.residual, "ci": c.report.ci} for c in res.candidates
        ],
        "notes": list(res.notes),
    }


def _clique(c: Sequence[int]) -> str:
    return "{" + ",".join(map(str, c)) + "}"


def _solve_text(res: SolveResult) -> str:
    lines = [f"status: {res.status}", "cliques: " + " ".join(f"C{i + 1}={_clique(c)}" for i, c in enumerate(res.cliques))]
    for i, block in enumerate(res.sigma):
        line = f"sigma C{i + 1} = {_vec(block)}"
        if res.directions and any(v != 0 for v in res.directions[0][i]):
            for j, dirn in enumerate(res.directions):
                t = "t" if len(res.directions) == 1 else f"t{j + 1}"
                line += f" + {t} * {_vec(dirn[i])}"
        lines.append(line)
    if res.chart is not None:
        lines.append(f"chart: t = sigma C{res.chart[0] + 1} coordinate {res.chart[1] + 1}")
    if res.interval is not None:
        lo, hi = res.interval
        lines.append(f"interior interval: ({'-inf' if lo is None else _num(lo)}, {'inf' if hi is None else _num(hi)})")
    if res.dimension is not None:
        lines.append(f"dimension {res.dimension}, degree {res.degree}")
    if res.status == CANDIDATES:
        lines.append(f"candidates: {len(res.candidates)}")
        for c in res.candidates:
            lines.append("  " + " ".join(f"C{i + 1}=" + "(" + ", ".join(f"{v:.9f}" for v in b) + ")" for i, b in enumerate(c.sigma)))
    lines.extend(f"note: {n}" for n in res.notes)
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    fx = _fixture_arg(args)
    game = _game(args)
    G = _graph(args, game.format.n, fx.graph if fx else None)
    tol = default_tol() if args.tol is None else args.tol
    res = None
    notice = ()
    if not args.newton:
        try:
            if G.n != 3 or len(G.edges) != 1:
                raise WrongShape("the linear stage needs a 3-player game with exactly one edge")
            res = solve_one_edge_3player(game, next(iter(G.edges)), args.backend, tol)
        except WrongShape as e:
            notice = (f"{e}; using the Newton sampler",)
    if res is None:
        r = newton_solve(equation_system(game, G), starts=args.starts, tol=tol, seed=args.seed)
        res = SolveResult(r.status, r.cliques, candidates=r.candidates, notes=notice + r.notes)
    _emit(dumps(_solve_json(res)) if args.json else _solve_text(res))
    ok = res.status in (UNIQUE, FAMILY) or (res.status == CANDIDATES and res.candidates)
    return 0 if ok else 1


# -- model ----------------------------------------------------------------------


def cmd_model(args) -> int:
    d = parse_format(args.format)
    G = _graph(args, len(d))
    which = [w for w in ("dim", "degree", "decompose") if getattr(args, w)] or ["dim", "degree", "decompose"]
    out: dict[str, Any] = {"format": list(d), "graph": G.edge_spec()}
    code = 0
    if "dim" in which:
        out["dim"] = model_dim(G, d)
    if "decompose" in which:
        out["decomposition"] = pretty(decompose(G))
    if "degree" in which:
        try:
            out["degree"] = model_degree(G, d)
        except NotDecomposableError as e:
            out["degree"] = None
            out["not_decomposable"] = e.subgraph.edge_spec()
            code = 1
    if args.json:
        _emit(dumps(out))
    else:
        lines = [f"graph: {out['graph']}", f"format: {','.join(map(str, d))}"]
        if "dim" in out:
            lines.append(f"dim: {out['dim']}")
        if "degree" in out:
            lines.append(f"degree: {out['degree']}" if out["degree"] is not None else "degree: not decomposable")
        if "decomposition" in out:
            lines.append(f"decomposition: {out['decomposition']}")
        _emit("\n".join(lines) + "\n")
    return code


# -- fixtures -------------------------------------------------------------------


def cmd_fixtures(args) -> int:
    if args.dump:
        fx = fixture(args.dump)
        if args.what == "game":
            _emit(dumps(game_to_json(fx.game)), args.output)
        elif args.what == "graph":
            _emit(dumps(graph_to_json(fx.graph)), args.output)
        else:
            if not args.family:
                raise UsageError("--what profile needs --family")
            fam = fx.family(args.family)
            _emit(dumps(profile_to_json(fam(*(_params(args.at) if args.at else ())))), args.output)
        return 0
    items = fixtures()
    if args.json:
        _emit(
            dumps(
                [
                    {
                        "id": f.id,
                        "title": f.title,
                        "format": list(f.game.format.d),
                        "families": [
                            {"name": fam.name, "graph": fam.graph.edge_spec(), "params": list(fam.params),
                             "box": [[_jnum(lo), _jnum(hi)] for lo, hi in fam.box]}
                            for fam in f.families
                        ],
                    }
                    for f in items
                ]
            )
        )
        return 0
    lines = []
    for f in items:
        lines.append(f"{f.id}  [{','.join(map(str, f.game.format.d))}]  {f.title}")
        for fam in f.families:
            lb, rb = "[]" if fam.closed else "()"
            params = ", ".join(f"{n} in {lb}{_num(lo)}, {_num(hi)}{rb}" for n, (lo, hi) in zip(fam.params, fam.box))
            lines.append(f"  {fam.name}  {fam.graph.edge_spec()}  {params or 'point'}")
    _emit("\n".join(lines) + "\n")
    return 0


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spohnci", description="Dependency and CI equilibria of normal-form games.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, tol=False, backend=False):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if tol:
            p.add_argument("--tol", type=float, default=None, help="residual tolerance (default $SPOHNCI_TOL or 1e-9)")
        if backend:
            p.add_argument("--backend", choices=("rational", "double"), default="rational")

    p = sub.add_parser("invariants", help="dimension, degree and emptiness of the Nash CI variety")
    p.add_argument("--format", required=True, help="strategy counts, e.g. 4,2,2")
    p.add_argument("--graph", required=True, help="edges:2-3,... | empty | complete | graph.json")
    common(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("equations", help="export the defining polynomials in clique coordinates")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--game")
    src.add_argument("--fixture")
    p.add_argument("--graph")
    p.add_argument("--export", choices=("plain", "m2"), default="plain")
    p.add_argument("--spanning", action="store_true", help="only the d_k - 1 minors against the first row")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_equations)

    p = sub.add_parser("verify", help="check a profile against an equilibrium notion")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--game")
    src.add_argument("--fixture")
    p.add_argument("--graph")
    p.add_argument("--profile")
    p.add_argument("--family")
    p.add_argument("--at", help="family parameters, comma separated (e.g. 1/5)")
    p.add_argument("--notion", choices=("ci", "dependency", "nash"), default="ci")
    common(p, tol=True, backend=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="CI equilibria: exact linear stage or seeded Newton sampler")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--game")
    src.add_argument("--fixture")
    p.add_argument("--graph")
    p.add_argument("--starts", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--newton", action="store_true", help="skip the linear stage")
    common(p, tol=True, backend=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("model", help="dimension, degree and decomposition of the graphical model")
    p.add_argument("--format", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--dim", action="store_true")
    p.add_argument("--degree", action="store_true")
    p.add_argument("--decompose", action="store_true")
    common(p)
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("fixtures", help="list the built-in example games or dump one as JSON")
    p.add_argument("--dump", metavar="ID")
    p.add_argument("--what", choices=("game", "graph", "profile"), default="game")
    p.add_argument("--family")
    p.add_argument("--at")
    p.add_argument("-o", "--output")
    common(p)
    p.set_defaults(func=cmd_fixtures)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, KeyError, ValueError, ArithmeticError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"spohnci {args.command}: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
