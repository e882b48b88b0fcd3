"""Route an instance to the matching polynomial solver, or to exact search."""

from __future__ import annotations

from fractions import Fraction

from ..analysis import classify, classify_rule
from ..orders import PossibleWinnerInstance
from ..rules import normalize, two_one_zero
from .brute import solve_bruteforce
from .bucklin import solve_bucklin_t1
from .common import SolveResult, complete_check
from .pairwise import solve_copeland_t1, solve_maximin_t1
from .scoring import solve_rule_2110, solve_scoring_t1, solve_scoring_t2, solve_scoring_t3


def poly_solver(inst: PossibleWinnerInstance):
    """The polynomial solver whose regime covers ``inst``, or ``None``."""
    t = inst.profile.max_undetermined
    rule = inst.rule
    if rule.kind == "scoring":
        label = classify(rule.scores).label
        m = rule.scores.m
        if m >= 3 and normalize(rule.scores.scores) == two_one_zero(m) and t <= m - 2:
            return solve_rule_2110
        if label != "Differentiating" and t <= 1:
            return solve_scoring_t1
        if label not in ("Differentiating", "OneOneContaminated") and t <= 2:
            return solve_scoring_t2
        if label not in ("Differentiating", "OneOneContaminated", "OneZeroOneContaminated") and t <= 3:
            return solve_scoring_t3
        return None
    if t > 1:
        return None
    if rule.kind == "copeland":
        return solve_copeland_t1 if rule.alpha in (Fraction(0), Fraction(1)) else None
    if rule.kind == "maximin":
        return solve_maximin_t1
    return solve_bucklin_t1


def hard_regime_label(inst: PossibleWinnerInstance) -> str:
    rc = classify_rule(inst.rule)
    return f"NP-hard regime ({rc.theorem})"


def dispatch(inst: PossibleWinnerInstance, budget: int | None = None, jobs: int = 1) -> SolveResult:
    if inst.profile.is_complete:
        return complete_check(inst)
    solver = poly_solver(inst)
    if solver is not None:
        return solver(inst)
    res = solve_bruteforce(inst, budget=budget, jobs=jobs)
    return SolveResult(res.answer, res.witness, res.method, hard_regime_label(inst))


def solve_exact(inst: PossibleWinnerInstance, budget: int | None = None, jobs: int = 1) -> SolveResult:
    """Brute force when the effect product fits the budget, pruned search otherwise."""
    from ..errors import BudgetExceeded
    from .search import solve_search
    try:
        return solve_bruteforce(inst, budget=budget, jobs=jobs)
    except BudgetExceeded:
        return solve_search(inst)
