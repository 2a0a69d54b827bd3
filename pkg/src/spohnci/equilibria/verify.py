"""Membership checks for Nash, dependency and CI equilibria.

CI residuals use the pairwise Markov statements, which characterize the
graphical model only for strictly positive distributions. For a boundary point
on a non-chordal graph no CI verdict is given.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Any

from ..equations import ci_minors_p
from ..games import (
    Backend,
    FormatMismatch,
    Game,
    MixedProfile,
    game_with_backend,
    marginal,
    spohn_matrix,
)
from ..graphs import Graph, is_chordal

DEFAULT_TOL = 1e-9
TOL_ENV = "SPOHNCI_TOL"


def default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    return float(raw) if raw else DEFAULT_TOL


@dataclass(frozen=True)
class VerificationReport:
    tol: float
    backend: str
    graph: str
    spohn_residuals: tuple[Any, ...]  # per player, max |2x2 minor|
    ci_residuals: tuple[tuple[str, Any], ...]  # per pairwise statement, max |minor|
    totally_mixed: bool
    independence_residual: Any  # max |p - product of single-player marginals|
    nash_slack: tuple[Any, ...]  # per player: payoff minus best pure deviation
    dependency: bool
    ci: bool | None
    nash: bool
    notes: tuple[str, ...] = ()

    def verdict(self, notion: str) -> bool | None:
        return {"dependency": self.dependency, "ci": self.ci, "nash": self.nash}[notion]

    def to_json(self) -> dict[str, Any]:
        return {
            "tol": self.tol,
            "backend": self.backend,
            "graph": self.graph,
            "totally_mixed": self.totally_mixed,
            "spohn_residuals": [float(r) for r in self.spohn_residuals],
            "ci_residuals": {k: float(v) for k, v in self.ci_residuals},
            "independence_residual": float(self.independence_residual),
            "nash_slack": [float(s) for s in self.nash_slack],
            "verdicts": {"dependency": self.dependency, "ci": self.ci, "nash": self.nash},
            "notes": list(self.notes),
        }


def _max_abs(values) -> Any:
    return max((abs(v) for v in values), default=0)


def verify_ci_equilibrium(
    game: Game, G: Graph, p: MixedProfile, tol: float | None = None, backend: Backend = "rational"
) -> VerificationReport:
    if tol is None:
        tol = default_tol()
    fmt = game.format
    if p.format != fmt:
        raise FormatMismatch(f"profile format {p.format.d} differs from game format {fmt.d}")
    if G.n != fmt.n:
        raise FormatMismatch(f"graph has {G.n} vertices, game has {fmt.n} players")
    game = game_with_backend(game, backend)
    p = p.with_backend(backend)
    notes: list[str] = []

    spohn = tuple(_max_abs(spohn_matrix(game, k, p).minors().values()) for k in range(fmt.n))

    groups: dict[str, Any] = {}
    for m in ci_minors_p(G, fmt.d):
        key = m.label.split("]")[0] + "]"
        groups[key] = max(groups.get(key, 0), abs(m.poly.evaluate(p.p)))
    ci_res = tuple(sorted(groups.items()))

    mixed = p.totally_mixed()
    margs = [marginal(p, [k]) for k in range(fmt.n)]
    indep = 0
    for state, v in zip(fmt.states(), p.p):
        prod_v: Any = 1
        for k, s in enumerate(state):
            prod_v = prod_v * margs[k][s]
        indep = max(indep, abs(v - prod_v))

    slack = []
    for k in range(fmt.n):
        others = [i for i in range(fmt.n) if i != k]
        rest = marginal(p, others)
        rest = rest if isinstance(rest, tuple) else (rest,)
        X = game.tensor(k)
        dev = [0] * fmt.d[k]
        for idx, state in enumerate(fmt.states()):
            r = 0
            for i in others:
                r = r * fmt.d[i] + state[i]
            dev[state[k]] = dev[state[k]] + X[idx] * rest[r]
        payoff = sum((x * v for x, v in zip(X, p.p)), start=0 * p.p[0])
        slack.append(payoff - max(dev))

    dependency = mixed and _max_abs(spohn) <= tol
    ci: bool | None
    if not mixed and not is_chordal(G):
        ci = None
        notes.append("boundary semantics undefined: p is not totally mixed and the graph is not chordal")
    else:
        ci = dependency and _max_abs(v for _, v in ci_res) <= tol
    if not mixed:
        notes.append("p is not totally mixed; dependency and CI verdicts require p > 0")
    nash = indep <= tol and min(slack) >= -tol
    return VerificationReport(
        tol=tol,
        backend=backend,
        graph=G.edge_spec(),
        spohn_residuals=spohn,
        ci_residuals=ci_res,
        totally_mixed=mixed,
        independence_residual=indep,
        nash_slack=tuple(slack),
        dependency=dependency,
        ci=ci,
        nash=nash,
        notes=tuple(notes),
    )


def verify_nash(game: Game, p: MixedProfile, tol: float | None = None, backend: Backend = "rational") -> VerificationReport:
    """Product form plus no profitable pure deviation; the graph is the 0-edge graph."""
    return verify_ci_equilibrium(game, Graph.empty(game.format.n), p, tol, backend)
