"""The gadget record, its score-table audit, and construction helpers."""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from ..builders import MarginTarget, build_margin_profile
from ..errors import CompletionFailed, TableMismatch
from ..orders import (CandidateSet, LinearOrder, PartialOrder, PossibleWinnerInstance, Profile,
                      from_ranking_minus, is_extension)
from ..rules import copeland_scores, margin_matrix, maximin_scores, positional_scores, top_counts, winners

_OPS = {"==": operator.eq, "<": operator.lt, "<=": operator.le}


@dataclass(frozen=True)
class TableRow:
    """``stat(label) op value`` on the complete profile P ∪ Q."""

    stat: str  # "score" | "copeland" | "maximin" | "top<k>"
    label: str
    op: str
    value: object

    def describe(self) -> str:
        return f"{self.stat}({self.label}) {self.op} {self.value}"


@dataclass(frozen=True)
class Gadget:
    kind: str
    source: object
    instance: PossibleWinnerInstance
    base: Profile  # the uncut votes P followed by the helper votes Q (or W)
    role_map: dict = field(compare=False)
    regime: tuple[str, int]
    table: tuple[TableRow, ...] = ()
    notes: dict = field(default_factory=dict, compare=False)

    @property
    def candidates(self) -> CandidateSet:
        return self.instance.profile.candidates

    def idx(self, label: str) -> int:
        return self.candidates.index(label)


def stat_values(g: Gadget, stat: str, votes: Sequence[LinearOrder] | None = None) -> list:
    """Per-candidate statistic on ``votes`` (default: the gadget's base profile)."""
    if votes is None:
        votes = g.base.linear_votes()
    m = g.candidates.m
    rule = g.instance.rule
    if stat == "score":
        return positional_scores(rule.scores, votes)
    if stat == "copeland":
        q = rule.alpha.denominator
        return [Fraction(s, q) for s in copeland_scores(margin_matrix(votes, m), rule.alpha)]
    if stat == "maximin":
        return maximin_scores(margin_matrix(votes, m))
    if stat.startswith("top"):
        k = int(stat[3:])
        return [int(a) for a in top_counts(votes, m)[:, k]]
    raise ValueError(f"unknown statistic {stat!r}")


def audit_table(g: Gadget, rows: Iterable[TableRow] | None = None) -> list[str]:
    """Rows that fail on the base profile, described as text (empty when all hold)."""
    rows = g.table if rows is None else rows
    cache: dict[str, list] = {}
    bad = []
    for r in rows:
        if r.stat not in cache:
            cache[r.stat] = stat_values(g, r.stat)
        got = cache[r.stat][g.idx(r.label)]
        if not _OPS[r.op](got, r.value):
            bad.append(f"{r.describe()} fails: got {got}")
    return bad


def require_table(g: Gadget) -> Gadget:
    bad = audit_table(g)
    if bad:
        raise TableMismatch(f"{g.kind}: " + "; ".join(bad[:5]) + (" ..." if len(bad) > 5 else ""))
    return g


def ranking(labels: Sequence[str], cs: CandidateSet) -> list[int]:
    return [cs.index(a) for a in labels]


def in_order(cs: CandidateSet, exclude: Iterable[int] = ()) -> list[int]:
    """All candidates except ``exclude`` in the fixed construction order."""
    ex = set(exclude)
    return [i for i in range(cs.m) if i not in ex]


def cut(rank: Sequence[int], pairs) -> PartialOrder:
    return from_ranking_minus(rank, pairs)


def margin_helper(cs: CandidateSet, target: np.ndarray, partial_base: Sequence[LinearOrder]) -> Profile:
    """Complete votes Q with ``D_P + D_Q == target`` exactly (McGarvey blocks)."""
    m = cs.m
    DP = margin_matrix(list(partial_base), m).D if partial_base else np.zeros((m, m), dtype=np.int64)
    need = np.asarray(target, dtype=np.int64) - DP
    return build_margin_profile(cs, MarginTarget.from_matrix(need))


def assemble(kind, source, cs, rule, target_label, partial, base_p, helper, role_map, regime,
             table, notes=None) -> Gadget:
    prof = Profile(cs, tuple(partial) + tuple(helper))
    base = Profile(cs, tuple(base_p) + tuple(helper))
    inst = PossibleWinnerInstance(prof, cs.index(target_label), rule)
    g = Gadget(kind, source, inst, base, role_map, regime, tuple(table), notes or {})
    limit = regime[1]
    worst = max((v.n_undetermined for v in partial), default=0)
    if worst > limit:
        raise TableMismatch(f"{kind}: a vote has {worst} undetermined pairs, bound is {limit}")
    return require_table(g)


def finish_completion(g: Gadget, chosen: dict[int, Sequence[int]]) -> Profile:
    """Complete profile: vote ``i`` in ``chosen`` gets that ranking, the rest keep the base order."""
    votes = list(g.base.votes)
    for i, r in chosen.items():
        votes[i] = LinearOrder(tuple(r))
    for w, v in zip(votes, g.instance.profile.votes):
        if not is_extension(w, v):
            raise CompletionFailed("constructed vote does not extend its partial vote")
    if g.instance.target not in winners(g.instance.rule, votes, g.candidates.m):
        raise CompletionFailed(f"{g.kind}: target does not co-win the forward completion")
    return Profile(g.candidates, tuple(votes))


Completer = Callable[[Gadget, object], Profile]
Extractor = Callable[[Gadget, Profile], object]
REGISTRY: dict[str, tuple[Completer, Extractor]] = {}


def register(kind: str, complete: Completer, extract: Extractor):
    REGISTRY[kind] = (complete, extract)
