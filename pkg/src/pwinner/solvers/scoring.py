"""Flow algorithms for scoring rules with few undetermined pairs per vote.

For a Borda-like rule (every nonzero difference equal to 1 after normalization)
and a vote with at most three undetermined pairs, the achievable score vectors
of the vote factor into a fixed part plus independent *unit groups*: choose
``k`` members of a candidate set ``S``, each gaining one point.  Every group
becomes a flow node with capacity ``k`` and unit edges to ``S``.  The
factorisation is verified by enumeration for every vote, so a vote that does
not factor is reported instead of being approximated.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..analysis import classify
from ..errors import PreconditionViolated
from ..orders import LinearOrder, PossibleWinnerInstance, linear_extensions, push_up, undetermined_pairs
from ..rules import ScoreVector, normalize, positional_scores, two_one_zero
from .common import SolveResult, complete_check, unit_flow

_MAX_EXTENSIONS = 20_000


@dataclass
class VoteGroups:
    base: list[int]                      # score each candidate surely gets
    groups: list[tuple[tuple[int, ...], int]]   # (S, k)
    table: dict[frozenset, LinearOrder]  # bonus set -> an extension realising it


def decompose_vote(v, sv: ScoreVector) -> VoteGroups | None:
    """Factor a partial vote's achievable score vectors into unit groups.

    Returns ``None`` when the vote does not factor (e.g. a candidate whose score
    can vary by more than one).
    """
    m = sv.m
    exts = []
    for w in linear_extensions(v):
        exts.append(w)
        if len(exts) > _MAX_EXTENSIONS:
            return None
    scores = [[sv.scores[p] for p in w.positions] for w in exts]
    lo = [min(col) for col in zip(*scores)]
    hi = [max(col) for col in zip(*scores)]
    if any(h - l > 1 for l, h in zip(lo, hi)):
        return None
    varying = [x for x in range(m) if hi[x] > lo[x]]
    # components of the incomparability graph, restricted to varying candidates
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in undetermined_pairs(v):
        parent[find(x)] = find(y)
    comps: dict[int, list[int]] = {}
    for x in varying:
        comps.setdefault(find(x), []).append(x)
    bonus_sets = []
    table: dict[frozenset, LinearOrder] = {}
    for w, sc in zip(exts, scores):
        b = frozenset(x for x in varying if sc[x] > lo[x])
        bonus_sets.append(b)
        table.setdefault(b, w)
    base = list(lo)
    groups = []
    n_combos = 1
    for comp in comps.values():
        cs = set(comp)
        fam = {b & cs for b in bonus_sets}
        forced = frozenset.intersection(*fam)
        free = sorted(frozenset.union(*fam) - forced)
        sizes = {len(b) - len(forced) for b in fam}
        if len(sizes) != 1:
            return None
        k = sizes.pop()
        want = {forced | frozenset(t) for t in combinations(free, k)}
        if want != fam:
            return None
        for x in forced:
            base[x] += 1
        if k:
            groups.append((tuple(free), k))
        n_combos *= len(fam)
    if len(table) != n_combos:
        return None  # components do not vary independently
    return VoteGroups(base, groups, table)


def _solve_by_groups(inst: PossibleWinnerInstance, method: str, regime: str, raise_target: bool) -> SolveResult:
    sv = normalize(inst.rule.scores.scores)
    c = inst.target
    m = inst.m
    votes = inst.profile.votes
    fixed_idx = [i for i, v in enumerate(votes) if v.is_complete]
    fixed = positional_scores(sv, [votes[i].to_linear() for i in fixed_idx]) if fixed_idx else [0] * m
    decomp: dict[int, VoteGroups] = {}
    for i, v in enumerate(votes):
        if v.is_complete:
            continue
        # with one pair per vote raising c only settles that pair; with more
        # pairs the transitive closure could also settle pairs between rivals
        vv = push_up(v, c) if raise_target else v
        if vv.is_complete:
            lin = vv.to_linear()
            decomp[i] = VoteGroups([sv.scores[p] for p in lin.positions], [], {frozenset(): lin})
            continue
        g = decompose_vote(vv, sv)
        if g is None:
            raise PreconditionViolated(f"vote {i} does not factor into unit groups")
        decomp[i] = g
    s_base = list(fixed)
    for g in decomp.values():
        for x in range(m):
            s_base[x] += g.base[x]
    # the target takes a unit from every group it belongs to
    s_c = s_base[c]
    units = []
    owners = []
    for i, g in decomp.items():
        for S, k in g.groups:
            if c in S:
                s_c += 1
                S = tuple(x for x in S if x != c)
                k -= 1
            units.append((S, k))
            owners.append(i)
    if any(s_base[x] > s_c for x in range(m) if x != c):
        return SolveResult(False, None, method, regime)
    caps = {x: s_c - s_base[x] for x in range(m) if x != c}
    chosen = unit_flow(units, caps)
    if chosen is None:
        return SolveResult(False, None, method, regime)
    bonus: dict[int, set[int]] = {i: set() for i in decomp}
    for i, g in decomp.items():
        for S, k in g.groups:
            if c in S:
                bonus[i].add(c)
    for i, pick in zip(owners, chosen):
        bonus[i].update(pick)
    witness = []
    for i, v in enumerate(votes):
        if v.is_complete:
            witness.append(v.to_linear())
        else:
            witness.append(decomp[i].table[frozenset(bonus[i])])
    return SolveResult(True, tuple(witness), method, regime)


def _check_scoring(inst, max_pairs: int, banned: set[str]):
    if inst.rule.kind != "scoring":
        raise PreconditionViolated("scoring rule required")
    label = classify(inst.rule.scores).label
    if label in banned:
        raise PreconditionViolated(f"rule class {label} is outside this solver's regime")
    t = inst.profile.max_undetermined
    if t > max_pairs:
        raise PreconditionViolated(f"a vote has {t} undetermined pairs (limit {max_pairs})")


def solve_scoring_t1(inst: PossibleWinnerInstance) -> SolveResult:
    """Borda-like rule, at most one undetermined pair per vote."""
    _check_scoring(inst, 1, {"Differentiating"})
    if inst.profile.is_complete:
        return complete_check(inst)
    return _solve_by_groups(inst, "flow-scoring-t1", "P regime (t<=1, Thm 1)", raise_target=True)


def solve_scoring_t2(inst: PossibleWinnerInstance) -> SolveResult:
    """Rule without the <1,1> pattern, at most two undetermined pairs per vote."""
    _check_scoring(inst, 2, {"Differentiating", "OneOneContaminated"})
    if inst.profile.is_complete:
        return complete_check(inst)
    return _solve_by_groups(inst, "flow-scoring-t2", "P regime (t<=2, Thm 2)", raise_target=False)


def solve_scoring_t3(inst: PossibleWinnerInstance) -> SolveResult:
    """Rule without <1,1> and <1,0,1>, at most three undetermined pairs per vote."""
    _check_scoring(inst, 3, {"Differentiating", "OneOneContaminated", "OneZeroOneContaminated"})
    if inst.profile.is_complete:
        return complete_check(inst)
    return _solve_by_groups(inst, "flow-scoring-t3", "P regime (t<=3, Thm 3)", raise_target=False)


def _lex_extension(v, top: int, bottom: int) -> LinearOrder:
    """Lexicographically first extension with ``top`` first and ``bottom`` last."""
    m = v.m
    rest_mask = ((1 << m) - 1) & ~(1 << top) & ~(1 << bottom)
    above = v.above
    ranking = [top]
    remaining = rest_mask
    while remaining:
        for x in range(m):
            if remaining >> x & 1 and not above[x] & remaining:
                ranking.append(x)
                remaining &= ~(1 << x)
                break
    ranking.append(bottom)
    return LinearOrder(tuple(ranking))


def top_bottom_sets(v) -> tuple[list[int], list[int]]:
    """Candidates that can be ranked first, and those that can be ranked last."""
    A = [x for x in range(v.m) if not v.above[x]]
    B = [x for x in range(v.m) if not v.below[x]]
    return A, B


def solve_rule_2110(inst: PossibleWinnerInstance) -> SolveResult:
    """Rule (2,1,...,1,0) with at most m-2 undetermined pairs per vote."""
    method, regime = "flow-2110", "P regime (t<=m-2, Thm 4)"
    m = inst.m
    if inst.rule.kind != "scoring" or m < 3 or normalize(inst.rule.scores.scores) != two_one_zero(m):
        raise PreconditionViolated("rule (2,1,...,1,0) required")
    t = inst.profile.max_undetermined
    if t > m - 2:
        raise PreconditionViolated(f"a vote has {t} undetermined pairs (limit m-2 = {m - 2})")
    if inst.profile.is_complete:
        return complete_check(inst)
    c = inst.target
    votes = inst.profile.votes
    s_base = [0] * m
    complete = [v.to_linear() for v in votes if v.is_complete]
    if complete:
        s_base = positional_scores(two_one_zero(m), complete)
    s_c_extra = 0
    units, owners = [], []
    ab = {}
    for i, v in enumerate(votes):
        if v.is_complete:
            continue
        A, B = top_bottom_sets(v)
        assert not set(A) & set(B), "top and bottom sets intersect"
        ab[i] = (v, A, B)
        for x in range(m):
            s_base[x] += 0 if x in B else 1
        a_set, a_k = A, 1
        b_set, b_k = B, len(B) - 1
        # c always takes a slot it can take: it costs no other candidate anything extra
        if c in A:
            s_c_extra += 1
            a_set, a_k = [], 0
        if c in B and len(B) > 1:
            s_c_extra += 1
            b_set, b_k = [x for x in B if x != c], b_k - 1
        units += [(tuple(a_set), a_k), (tuple(b_set), b_k)]
        owners += [(i, "a"), (i, "b")]
    s_c = s_base[c] + s_c_extra
    if any(s_base[x] > s_c for x in range(m) if x != c):
        return SolveResult(False, None, method, regime)
    chosen = unit_flow(units, {x: s_c - s_base[x] for x in range(m) if x != c})
    if chosen is None:
        return SolveResult(False, None, method, regime)
    picks: dict[tuple[int, str], list[int]] = dict(zip(owners, chosen))
    witness = []
    for i, v in enumerate(votes):
        if v.is_complete:
            witness.append(v.to_linear())
            continue
        v, A, B = ab[i]
        top = c if c in A else picks[(i, "a")][0]
        raised = set(picks[(i, "b")]) | ({c} if c in B and len(B) > 1 else set())
        (bottom,) = [x for x in B if x not in raised]
        witness.append(_lex_extension(v, top, bottom))
    return SolveResult(True, tuple(witness), method, regime)
