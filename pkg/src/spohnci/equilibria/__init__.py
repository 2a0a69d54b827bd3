"""Equilibrium verification, solvers and worked-example fixtures."""

from .fixtures import Family, Fixture, ParameterOutOfRange, fixture, fixtures
from .solve import SingularLinearStage, SolveResult, WrongShape, newton_solve, solve_one_edge_3player
from .verify import VerificationReport, verify_ci_equilibrium, verify_nash

__all__ = [
    "Family",
    "Fixture",
    "ParameterOutOfRange",
    "SingularLinearStage",
    "SolveResult",
    "VerificationReport",
    "WrongShape",
    "fixture",
    "fixtures",
    "newton_solve",
    "solve_one_edge_3player",
    "verify_ci_equilibrium",
    "verify_nash",
]
