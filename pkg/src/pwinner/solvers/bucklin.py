"""Bucklin with at most one undetermined pair per vote.

Once the target ``c`` is raised, its position in every vote is fixed, so its
majority depth ``k`` is known.  ``c`` co-wins exactly when no rival reaches a
majority before depth ``k`` and no rival is ranked within the top ``k`` more
often than ``c``.  An undetermined pair in a single-pair vote occupies two
adjacent positions ``(p, p+1)``; it only decides who is counted at depth ``p``.
Votes whose pair sits at depth ``k - 1`` feed the first condition and votes at
depth ``k`` feed the second, so the two conditions are independent flows.

``solve_bucklin_t1_sketch`` keeps only the depth-``k`` condition (a plain
k-approval problem).  It is kept for comparison against the exact solver.
"""

from __future__ import annotations

from ..errors import PreconditionViolated
from ..orders import PossibleWinnerInstance, fix_pair, push_up, undetermined_pairs
from .common import SolveResult, complete_check, first_extension, unit_flow


def _prepare(inst: PossibleWinnerInstance):
    if inst.rule.kind != "bucklin":
        raise PreconditionViolated("Bucklin rule required")
    if inst.profile.max_undetermined > 1:
        raise PreconditionViolated("a vote has more than one undetermined pair")
    c, m, n = inst.target, inst.m, inst.profile.n
    votes = [push_up(v, c) for v in inst.profile.votes]
    # base[d][x]: votes surely ranking x within the top d (d = 1..m)
    base = [[0] * m for _ in range(m + 1)]
    pair_at: list[tuple[int, tuple[int, int]] | None] = []
    for v in votes:
        pairs = sorted(undetermined_pairs(v))
        p = v.as_partial()
        n_above = [bin(p.above[x]).count("1") for x in range(m)]
        if pairs:
            x, y = pairs[0]
            depth = min(n_above[x], n_above[y]) + 1  # the pair sits on slots depth, depth+1
            pair_at.append((depth, (x, y)))
        else:
            pair_at.append(None)
        for z in range(m):
            # lowest possible rank of z (1-based); the pair members may drop one
            rank = n_above[z] + 1 + (1 if pairs and z in pairs[0] else 0)
            for d in range(rank, m + 1):
                base[d][z] += 1
    k = next((d for d in range(1, m + 1) if 2 * base[d][c] > n), 1)
    return votes, base, pair_at, k


def _complete(votes, pair_at, picks: dict[int, int]):
    out = []
    for i, v in enumerate(votes):
        if pair_at[i] is not None and i in picks:
            x, y = pair_at[i][1]
            top = picks[i]
            v = fix_pair(v, top, y if top == x else x)
        out.append(first_extension(v))
    return tuple(out)


def _depth_flow(votes_at, pair_at, base_row, cap_of):
    units = [(pair_at[i][1], 1) for i in votes_at]
    caps = {x: cap_of - base_row[x] for x in range(len(base_row))}
    if any(v < 0 for v in caps.values()):
        return None
    chosen = unit_flow(units, caps)
    if chosen is None:
        return None
    return {i: pick[0] for i, pick in zip(votes_at, chosen)}


def solve_bucklin_t1(inst: PossibleWinnerInstance) -> SolveResult:
    method, regime = "flow-bucklin-t1", "P regime (t<=1, Bucklin)"
    votes, base, pair_at, k = _prepare(inst)
    if inst.profile.is_complete:
        return complete_check(inst)
    c, n = inst.target, inst.profile.n
    picks: dict[int, int] = {}
    at_k = [i for i, pa in enumerate(pair_at) if pa and pa[0] == k]
    row = list(base[k])
    row[c] = 0  # c's own count is the cap, it never takes a pair slot here
    got = _depth_flow(at_k, pair_at, row, base[k][c])
    if got is None:
        return SolveResult(False, None, method, regime)
    picks.update(got)
    if k > 1:
        at_k1 = [i for i, pa in enumerate(pair_at) if pa and pa[0] == k - 1]
        row = list(base[k - 1])
        row[c] = 0
        got = _depth_flow(at_k1, pair_at, row, n // 2)
        if got is None:
            return SolveResult(False, None, method, regime)
        picks.update(got)
    return SolveResult(True, _complete(votes, pair_at, picks), method, regime)


def solve_bucklin_t1_sketch(inst: PossibleWinnerInstance) -> SolveResult:
    """Only the depth-``k`` test: c must be ranked in the top ``k`` at least as often as anyone."""
    method, regime = "bucklin-k-approval-sketch", "P regime (t<=1, Bucklin)"
    votes, base, pair_at, k = _prepare(inst)
    if inst.profile.is_complete:
        return complete_check(inst)
    c = inst.target
    at_k = [i for i, pa in enumerate(pair_at) if pa and pa[0] == k]
    row = list(base[k])
    row[c] = 0
    got = _depth_flow(at_k, pair_at, row, base[k][c])
    if got is None:
        return SolveResult(False, None, method, regime)
    return SolveResult(True, _complete(votes, pair_at, got), method, regime)
