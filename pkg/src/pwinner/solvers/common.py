"""Shared pieces of the Possible Winner solvers."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

from ..flow import FlowNetwork, max_flow
from ..orders import LinearOrder, PossibleWinnerInstance, is_extension, linear_extensions
from ..rules import winners

DEFAULT_BUDGET = 10**7


def default_budget() -> int:
    env = os.environ.get("PWINNER_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class SolveResult:
    answer: bool
    witness: tuple[LinearOrder, ...] | None
    method: str
    regime: str = ""

    @property
    def label(self) -> str:
        return "YES" if self.answer else "NO"


def witness_ok(inst: PossibleWinnerInstance, witness: Sequence[LinearOrder], unique: bool = False) -> bool:
    votes = inst.profile.votes
    if len(witness) != len(votes):
        return False
    if not all(is_extension(w, v) for w, v in zip(witness, votes)):
        return False
    win = winners(inst.rule, list(witness), inst.m)
    if unique:
        return win == frozenset({inst.target})
    return inst.target in win


def first_extension(v) -> LinearOrder:
    return next(iter(linear_extensions(v)))


def complete_check(inst: PossibleWinnerInstance) -> SolveResult:
    votes = inst.profile.linear_votes()
    ok = inst.target in winners(inst.rule, votes, inst.m)
    return SolveResult(ok, tuple(votes) if ok else None, "complete-check", "complete profile")


def unit_flow(units: Sequence[tuple[Sequence[int], int]], caps: dict[int, int]):
    """Distribute units to candidates.

    ``units`` lists ``(S, k)``: choose ``k`` distinct members of ``S``, each
    receiving one point.  Candidate ``x`` may receive at most ``caps[x]``
    points in total.  Returns one chosen list per unit group, or ``None`` when
    no distribution exists.
    """
    need = sum(k for _, k in units)
    if need == 0:
        return [[] for _ in units]
    net = FlowNetwork.with_terminals()
    cand_node: dict[int, int] = {}
    for x in sorted({x for S, k in units if k for x in S}):
        cand_node[x] = net.add_node(("cand", x))
        net.add_edge(cand_node[x], net.sink, max(0, caps.get(x, 0)))
    member_edges = []
    for S, k in units:
        if not k:
            member_edges.append([])
            continue
        g = net.add_node("unit")
        net.add_edge(net.source, g, k)
        member_edges.append([(x, net.add_edge(g, cand_node[x], 1)) for x in S])
    value, flows = max_flow(net)
    if value < need:
        return None
    return [[x for x, e in edges if flows[e]] for edges in member_edges]
