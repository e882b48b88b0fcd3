"""Possible Winner solvers."""

from .brute import solve_bruteforce
from .bucklin import solve_bucklin_t1, solve_bucklin_t1_sketch
from .common import DEFAULT_BUDGET, SolveResult, witness_ok
from .dispatch import dispatch, poly_solver, solve_exact
from .pairwise import solve_copeland_t1, solve_maximin_t1
from .scoring import solve_rule_2110, solve_scoring_t1, solve_scoring_t2, solve_scoring_t3
from .search import solve_search

__all__ = [
    "DEFAULT_BUDGET", "SolveResult", "witness_ok", "solve_bruteforce", "solve_search", "solve_exact",
    "dispatch", "poly_solver",
    "solve_scoring_t1", "solve_scoring_t2", "solve_scoring_t3", "solve_rule_2110",
    "solve_copeland_t1", "solve_maximin_t1", "solve_bucklin_t1", "solve_bucklin_t1_sketch",
]
