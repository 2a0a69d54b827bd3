"""Solvers for CI equilibria in clique coordinates.

``solve_one_edge_3player`` handles the determined case exactly. The isolated
player's minors are linear in the edge clique's sigma, which pins that sigma
down. The remaining minors are then linear in the isolated player's sigma.

``newton_solve`` is a multi-start sampler for small systems. An empty result
proves nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Any, Sequence

import numpy as np

from ..equations import EquationSystem, SigmaSpace, equation_system, profile_from_sigma
from ..games import Backend, Game, MixedProfile
from ..graphs import Graph
from ..linalg import solve_affine
from ..polyring import Poly
from .verify import DEFAULT_TOL, VerificationReport, verify_ci_equilibrium

UNIQUE, FAMILY, NONE, CANDIDATES = "UniquePoint", "AffineFamily", "NoSolution", "SolverCandidates"
MAX_NEWTON_VARS = 64
DEDUP_RADIUS = 1e-6
MAX_HALVINGS = 30


class WrongShape(ValueError):
    pass


class SingularLinearStage(ArithmeticError):
    pass


@dataclass(frozen=True)
class Candidate:
    sigma: tuple[tuple[Any, ...], ...]
    residual: float
    report: VerificationReport


@dataclass(frozen=True)
class SolveResult:
    status: str
    cliques: tuple[tuple[int, ...], ...]
    sigma: tuple[tuple[Any, ...], ...] = ()  # point, or base point of a family
    directions: tuple[tuple[tuple[Any, ...], ...], ...] = ()
    chart: tuple[int, int] | None = None  # (clique index, coordinate) used as the parameter t
    interval: tuple[Any, Any] | None = None  # open interval of t giving positive coordinates
    dimension: int | None = None
    degree: int | None = None
    candidates: tuple[Candidate, ...] = ()
    notes: tuple[str, ...] = field(default=())

    def point(self, t: Any = 0) -> tuple[tuple[Any, ...], ...]:
        """Sigma blocks of the family at parameter ``t`` (the point itself when unique)."""
        if not self.directions:
            return self.sigma
        dirn = self.directions[0]
        return tuple(tuple(b + t * v for b, v in zip(bb, dd)) for bb, dd in zip(self.sigma, dirn))


def _blocks(space: SigmaSpace, flat: Sequence[Any]) -> tuple[tuple[Any, ...], ...]:
    out, i = [], 0
    for c in space.cliques:
        size = prod(space.d[v - 1] for v in c)
        out.append(tuple(flat[i : i + size]))
        i += size
    return tuple(out)


def _var_range(space: SigmaSpace, clique: int) -> list[int]:
    return [i for i, v in enumerate(space.vars) if v.clique == clique]


def _linear_rows(polys: Sequence[Poly], unknown: list[int], known: dict[int, Any]) -> list[list[Any]]:
    """Coefficient rows of polynomials that are linear in ``unknown`` once ``known`` is substituted."""
    col = {v: j for j, v in enumerate(unknown)}
    rows = []
    for poly in polys:
        row: list[Any] = [0] * len(unknown)
        for e, c in poly.terms.items():
            term = c
            target = None
            for i, k in enumerate(e):
                if not k:
                    continue
                if i in col:
                    if k != 1 or target is not None:
                        raise ValueError("polynomial is not linear in the unknown block")
                    target = col[i]
                else:
                    term = term * known[i] ** k
            if target is None:
                if term != 0:
                    raise ValueError("unexpected constant term")
                continue
            row[target] = row[target] + term
        rows.append(row)
    return rows


def _solve(rows: list[list[Any]], rhs: list[Any], backend: Backend):
    if backend == "rational":
        return solve_affine(rows, rhs)
    A = np.array(rows, dtype=float)
    b = np.array(rhs, dtype=float)
    x, *_ = np.linalg.lstsq(A, b, rcond=None)
    if np.max(np.abs(A @ x - b), initial=0) > 1e-9:
        return None
    _, s, vt = np.linalg.svd(A)
    rank = int(np.sum(s > 1e-10 * max(1.0, s[0] if len(s) else 1.0)))
    return list(x), [list(v) for v in vt[rank:]]


def solve_one_edge_3player(
    game: Game, edge: tuple[int, int], backend: Backend = "rational", tol: float = DEFAULT_TOL
) -> SolveResult:
    fmt = game.format
    a, b = sorted(edge)
    if fmt.n != 3 or a == b or not (1 <= a and b <= 3):
        raise WrongShape("the linear stage needs a 3-player game and one edge between two players")
    iso = ({1, 2, 3} - {a, b}).pop()
    G = Graph(3, [(a, b)])
    if fmt.d[iso - 1] != fmt.d[a - 1] * fmt.d[b - 1]:
        res = newton_solve(equation_system(game, G), tol=tol)
        return SolveResult(
            res.status,
            res.cliques,
            candidates=res.candidates,
            notes=("linear stage not determined (d of the isolated player differs from the edge's state count); Newton sampler used",)
            + res.notes,
        )
    system = equation_system(game, G)
    space = system.space
    iso_clique = next(i for i, c in enumerate(space.cliques) if c == (iso,))
    pair_clique = 1 - iso_clique
    iso_vars, pair_vars = _var_range(space, iso_clique), _var_range(space, pair_clique)

    stage1 = [g.poly.poly for g in system.generators if g.player == iso - 1]
    rows = _linear_rows(stage1, pair_vars, {})
    rows.append([1] * len(pair_vars))
    rhs = [0] * (len(rows) - 1) + [1]
    sol = _solve(rows, rhs, backend)
    if sol is None:
        return SolveResult(NONE, tuple(space.cliques), notes=("stage 1 is inconsistent",))
    sigma2, kernel = sol
    if kernel:
        raise SingularLinearStage(f"stage 1 leaves a {len(kernel)}-dimensional solution set; game is not generic")
    notes = []
    if any(v <= 0 for v in sigma2):
        notes.append("edge-clique sigma has a nonpositive coordinate; no totally mixed CI equilibrium")

    known = dict(zip(pair_vars, sigma2))
    stage2 = [g.poly.poly for g in system.generators if g.player != iso - 1]
    rows = _linear_rows(stage2, iso_vars, known)
    rows.append([1] * len(iso_vars))
    rhs = [0] * (len(rows) - 1) + [1]
    sol = _solve(rows, rhs, backend)
    if sol is None:
        return SolveResult(NONE, tuple(space.cliques), notes=tuple(notes) + ("stage 2 is inconsistent",))
    base, kernel = sol
    # Kernel vectors of [stage 2; ones] keep the normalization, so base + t*v stays on it.

    def blocks(iso_vals: Sequence[Any], pair_vals: Sequence[Any]) -> tuple[tuple[Any, ...], ...]:
        flat: list[Any] = [0] * space.nvars
        for i, v in zip(iso_vars, iso_vals):
            flat[i] = v
        for i, v in zip(pair_vars, pair_vals):
            flat[i] = v
        return _blocks(space, flat)

    zero_pair = [0] * len(pair_vars)
    if not kernel:
        point = blocks(base, sigma2)
        positive = all(v > 0 for blk in point for v in blk) and not notes
        status = UNIQUE if positive else NONE
        if not positive and not notes:
            notes.append("unique solution has a nonpositive coordinate")
        return SolveResult(status, tuple(space.cliques), sigma=point, dimension=0, degree=1, notes=tuple(notes))
    if len(kernel) > 1:
        return SolveResult(
            FAMILY,
            tuple(space.cliques),
            sigma=blocks(base, sigma2),
            directions=tuple(blocks(v, zero_pair) for v in kernel),
            dimension=len(kernel),
            degree=1,
            notes=tuple(notes) + ("interior region of a multi-parameter family is not computed",),
        )
    direction = list(kernel[0])
    c = max(j for j, v in enumerate(direction) if v != 0)
    direction = [v / direction[c] for v in direction]
    base = [bv - base[c] * dv for bv, dv in zip(base, direction)]
    lo, hi = _positive_interval(base, direction)
    status = FAMILY
    if notes or lo is None:
        status = NONE
        if lo is None:
            notes.append("the line does not meet the open simplex")
    return SolveResult(
        status,
        tuple(space.cliques),
        sigma=blocks(base, sigma2),
        directions=(blocks(direction, zero_pair),),
        chart=(iso_clique, c),
        interval=None if lo is None else (lo, hi),
        dimension=1,
        degree=1,
        notes=tuple(notes),
    )


def _positive_interval(base: Sequence[Any], direction: Sequence[Any]):
    lo: Any = None
    hi: Any = None
    for b, v in zip(base, direction):
        if v == 0:
            if b <= 0:
                return None, None
            continue
        bound = -b / v
        if v > 0:
            lo = bound if lo is None else max(lo, bound)
        else:
            hi = bound if hi is None else min(hi, bound)
    if lo is not None and hi is not None and lo >= hi:
        return None, None
    return lo, hi


# -- Newton sampler ------------------------------------------------------------------


class _NumericSystem:
    """Vectorized evaluation of a polynomial list and its Jacobian."""

    def __init__(self, polys: Sequence[Poly], nvars: int):
        self.m, self.n = len(polys), nvars
        exps, coefs, rows = [], [], []
        for r, p in enumerate(polys):
            for e, c in p.terms.items():
                exps.append(e)
                coefs.append(float(c))
                rows.append(r)
        self.E = np.array(exps, dtype=float).reshape(-1, nvars)
        self.c = np.array(coefs, dtype=float)
        self.rows = np.array(rows, dtype=int)

    def __call__(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        pw = x[None, :] ** self.E
        mono = np.prod(pw, axis=1)
        F = np.bincount(self.rows, weights=self.c * mono, minlength=self.m)
        J = np.zeros((self.m, self.n))
        for j in range(self.n):
            ej = self.E[:, j]
            mask = ej > 0
            if not mask.any():
                continue
            dpw = pw[mask].copy()
            dpw[:, j] = ej[mask] * x[j] ** (ej[mask] - 1)
            J[:, j] = np.bincount(self.rows[mask], weights=self.c[mask] * np.prod(dpw, axis=1), minlength=self.m)
        return F, J

    def value(self, x: np.ndarray) -> np.ndarray:
        mono = np.prod(x[None, :] ** self.E, axis=1)
        return np.bincount(self.rows, weights=self.c * mono, minlength=self.m)


def _select_rows(J: np.ndarray, forced: int) -> list[int]:
    """Greedy maximal set of numerically independent rows; the last ``forced`` rows are always kept."""
    m = J.shape[0]
    keep = list(range(m - forced, m))
    for r in range(m - forced):
        trial = keep + [r]
        if np.linalg.matrix_rank(J[trial], tol=1e-8) == len(trial):
            keep.append(r)
    return sorted(keep)


def newton_solve(
    system: EquationSystem,
    normalizations: Sequence[Poly] | None = None,
    starts: int = 64,
    tol: float = DEFAULT_TOL,
    max_iter: int = 100,
    seed: int = 0,
) -> SolveResult:
    space = system.space
    if space.nvars > MAX_NEWTON_VARS:
        raise ValueError(f"Newton sampler is limited to {MAX_NEWTON_VARS} variables")
    if starts < 1:
        raise ValueError("need at least one start")
    norms = list(system.normalizations() if normalizations is None else normalizations)
    gens = system.polys()
    full = _NumericSystem(gens + norms, space.nvars)
    rng = np.random.default_rng(seed)
    sizes = [prod(space.d[v - 1] for v in c) for c in space.cliques]

    def draw() -> np.ndarray:
        return np.concatenate([rng.dirichlet(np.ones(s)) for s in sizes])

    start_points = [draw() for _ in range(starts)]
    _, J0 = full(draw())
    chosen = _select_rows(J0, len(norms))
    reduced = _NumericSystem([(gens + norms)[i] for i in chosen], space.nvars)

    found: list[tuple[np.ndarray, float]] = []
    for x in start_points:
        x = x.copy()
        for _ in range(max_iter):
            F, J = reduced(x)
            norm = np.linalg.norm(F)
            if np.max(np.abs(full.value(x))) < tol * 1e-3:
                break
            step, *_ = np.linalg.lstsq(J, -F, rcond=None)
            lam, improved = 1.0, False
            for _h in range(MAX_HALVINGS + 1):
                trial = x + lam * step
                if np.all(np.isfinite(trial)) and np.linalg.norm(reduced.value(trial)) < norm:
                    improved = True
                    break
                lam /= 2
            if not improved:
                break
            x = trial
        res = float(np.max(np.abs(full.value(x))))
        if res < tol:
            found.append((x, res))

    found.sort(key=lambda t: tuple(np.round(t[0], 9)))
    unique: list[tuple[np.ndarray, float]] = []
    for x, r in found:
        if all(np.max(np.abs(x - y)) > DEDUP_RADIUS for y, _ in unique):
            unique.append((x, r))

    candidates = []
    rejected = 0
    for x, r in unique:
        if np.any(x <= 0):
            rejected += 1
            continue
        p = np.array(profile_from_sigma(space, list(x)), dtype=float)
        profile = MixedProfile(system.format, tuple(float(v) for v in p / p.sum()))
        report = verify_ci_equilibrium(system.game, space.graph, profile, tol, backend="double")
        if report.ci:
            candidates.append(Candidate(_blocks(space, [float(v) for v in x]), r, report))
        else:
            rejected += 1
    notes = [f"{starts} starts, seed {seed}; {len(unique)} distinct converged points, {rejected} outside the open simplex or failing verification"]
    notes.append("an empty candidate list does not prove that no equilibrium exists")
    return SolveResult(CANDIDATES, tuple(space.cliques), candidates=tuple(candidates), notes=tuple(notes))
