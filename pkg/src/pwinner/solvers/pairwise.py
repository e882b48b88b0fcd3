"""Flow algorithms for Copeland (alpha in {0, 1}) and maximin with one undetermined pair per vote.

After raising the target as high as possible, every undetermined pair avoids
the target, and each partial vote belongs to exactly one pair group
``V[{x, y}]``.  Fixing ``k`` of those votes as ``x > y`` moves ``D(x, y)`` to
``D0 - |V| + 2k``, so each group is decided independently.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..errors import PreconditionViolated, UnsupportedAlpha
from ..flow import FlowNetwork, max_flow
from ..orders import PossibleWinnerInstance, fix_pair, push_up, undetermined_pairs
from .common import SolveResult, complete_check, first_extension, unit_flow


class _PairView:
    """Margins with every undetermined pair counted as zero, plus the pair groups."""

    def __init__(self, inst: PossibleWinnerInstance):
        self.m, self.c = inst.m, inst.target
        self.votes = [push_up(v, self.c) for v in inst.profile.votes]
        self.groups: dict[tuple[int, int], list[int]] = {}
        D = np.zeros((self.m, self.m), dtype=np.int64)
        for i, v in enumerate(self.votes):
            pairs = undetermined_pairs(v)
            if len(pairs) > 1:
                raise PreconditionViolated(f"vote {i} has {len(pairs)} undetermined pairs (limit 1)")
            for x in range(self.m):
                for y in range(self.m):
                    if v.prefers(x, y):
                        D[x, y] += 1
                        D[y, x] -= 1
            for p in pairs:
                self.groups.setdefault(p, []).append(i)
        self.D0 = D

    def range(self, x: int, y: int) -> tuple[int, int]:
        """Smallest and largest achievable D(x, y)."""
        k = len(self.groups.get((min(x, y), max(x, y)), ()))
        return int(self.D0[x, y]) - k, int(self.D0[x, y]) + k

    def witness(self, wins_for: dict[tuple[int, int], int]):
        """Completion giving ``wins_for[(x, y)]`` votes of the group the order x > y."""
        chosen = {}
        for (x, y), idx in self.groups.items():
            k = wins_for.get((x, y), len(idx))
            for j, i in enumerate(idx):
                chosen[i] = (x, y) if j < k else (y, x)
        out = []
        for i, v in enumerate(self.votes):
            if i in chosen:
                a, b = chosen[i]
                v = fix_pair(v, a, b)
            out.append(first_extension(v))
        return tuple(out)


def solve_copeland_t1(inst: PossibleWinnerInstance) -> SolveResult:
    method, regime = "flow-copeland-t1", "P regime (t<=1, Copeland alpha in {0,1})"
    rule = inst.rule
    if rule.kind != "copeland":
        raise PreconditionViolated("Copeland rule required")
    if rule.alpha not in (Fraction(0), Fraction(1)):
        raise UnsupportedAlpha(f"alpha {rule.alpha} is not 0 or 1")
    if inst.profile.max_undetermined > 1:
        raise PreconditionViolated("a vote has more than one undetermined pair")
    if inst.profile.is_complete:
        return complete_check(inst)
    a = int(rule.alpha)
    view = _PairView(inst)
    m, c = view.m, view.c
    # outcome -> ((points to x, points to y), votes of the group set to x > y)
    points = [0] * m
    units, unit_pairs = [], []
    decided: dict[tuple[int, int], int] = {}
    for x in range(m):
        for y in range(x + 1, m):
            lo, hi = view.range(x, y)
            size = (hi - lo) // 2
            opts = {}
            if hi > 0:
                opts["x"] = ((1, 0), size)
            if lo < 0:
                opts["y"] = ((0, 1), 0)
            if lo <= 0 <= hi and (hi % 2 == 0):
                opts["tie"] = ((a, a), (-lo) // 2)
            if "tie" in opts and a == 0:
                pick = "tie"
            elif "x" in opts and "y" in opts:
                # pairs touching c are fixed after raising c, so this is a free point
                units.append(((x, y), 1))
                unit_pairs.append((x, y))
                continue
            else:
                pick = next(k for k in ("x", "y", "tie") if k in opts)
            (px, py), k = opts[pick]
            points[x] += px
            points[y] += py
            decided[(x, y)] = k
    s_c = points[c]
    if any(points[x] > s_c for x in range(m) if x != c):
        return SolveResult(False, None, method, regime)
    chosen = unit_flow(units, {x: s_c - points[x] for x in range(m) if x != c})
    if chosen is None:
        return SolveResult(False, None, method, regime)
    for (x, y), pick in zip(unit_pairs, chosen):
        lo, hi = view.range(x, y)
        decided[(x, y)] = (hi - lo) // 2 if pick == [x] else 0
    return SolveResult(True, view.witness(decided), method, regime)


def solve_maximin_t1(inst: PossibleWinnerInstance) -> SolveResult:
    method, regime = "flow-maximin-t1", "P regime (t<=1, maximin)"
    if inst.rule.kind != "maximin":
        raise PreconditionViolated("maximin rule required")
    if inst.profile.max_undetermined > 1:
        raise PreconditionViolated("a vote has more than one undetermined pair")
    if inst.profile.is_complete:
        return complete_check(inst)
    view = _PairView(inst)
    m, c = view.m, view.c
    others = [x for x in range(m) if x != c]
    s_c = min(int(view.D0[c, y]) for y in others) if others else 0
    if s_c >= 0:
        # a weak Condorcet winner co-wins every completion
        return SolveResult(True, view.witness({}), method, regime)
    # candidates already at or below s(c) whatever the completion
    done = {x for x in others if any(view.range(x, y)[1] <= s_c for y in range(m) if y != x)}
    units, unit_pairs = [], []
    for x in others:
        for y in others:
            if x < y and view.groups.get((x, y)):
                S = []
                if x not in done and view.range(x, y)[0] <= s_c:
                    S.append(x)
                if y not in done and view.range(y, x)[0] <= s_c:
                    S.append(y)
                units.append(tuple(S))
                unit_pairs.append((x, y))
    need = [x for x in others if x not in done]
    # every candidate outside ``done`` must be pushed down by one pair
    chosen = _cover(units, need)
    if chosen is None:
        return SolveResult(False, None, method, regime)
    decided = {}
    for (x, y), pick in zip(unit_pairs, chosen):
        if pick == [x]:
            decided[(x, y)] = 0  # y above x everywhere in the group
        elif pick == [y]:
            decided[(x, y)] = len(view.groups[(x, y)])
    return SolveResult(True, view.witness(decided), method, regime)


def _cover(units, need: list[int]):
    """Each pair serves at most one of its candidates; every candidate in ``need`` must be served."""
    net = FlowNetwork.with_terminals()
    node = {x: net.add_node(("cand", x)) for x in need}
    for x in need:
        net.add_edge(node[x], net.sink, 1)
    edges = []
    for S in units:
        g = net.add_node("pair")
        net.add_edge(net.source, g, 1)
        edges.append([(x, net.add_edge(g, node[x], 1)) for x in S if x in node])
    value, flows = max_flow(net)
    if value < len(need):
        return None
    return [[x for x, e in es if flows[e]] for es in edges]
