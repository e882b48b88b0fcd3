"""Exact depth-first search with bound pruning.

Uses the same effect encoding as the brute-force solver.  At each node the
remaining votes bound every statistic from both sides (per-coordinate suffix
minima and maxima of the effects), and the branch is cut when some rival beats
the target even under the most favourable bounds.  Sound for every rule here,
so the answer is exact; it is only faster than plain enumeration.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..errors import BudgetExceeded
from ..orders import PossibleWinnerInstance
from .brute import Evaluator, vote_effects
from .common import SolveResult


class _Bounds:
    def __init__(self, ev: Evaluator):
        self.ev = ev
        self.m, self.c = ev.m, ev.c
        if ev.rule.kind in ("copeland", "maximin"):
            self.iu = ev.iu

    def _beaten(self, low: np.ndarray, high: np.ndarray) -> bool:
        others = np.delete(low, self.c)
        if not others.size:
            return False
        best = others.max()
        return bool(best >= high[self.c] if self.ev.unique else best > high[self.c])

    def _margins(self, lo: np.ndarray, hi: np.ndarray, diag: int):
        i, j = self.iu
        Dlo = np.full((self.m, self.m), diag, dtype=np.int64)
        Dhi = Dlo.copy()
        Dlo[i, j], Dlo[j, i] = lo, -hi
        Dhi[i, j], Dhi[j, i] = hi, -lo
        return Dlo, Dhi

    def prune(self, lo: np.ndarray, hi: np.ndarray) -> bool:
        """True when no completion inside [lo, hi] can make the target a winner."""
        kind = self.ev.rule.kind
        if kind == "scoring":
            return self._beaten(lo, hi)
        if kind == "copeland":
            a = Fraction(self.ev.rule.alpha)
            q, p = a.denominator, a.numerator
            Dlo, Dhi = self._margins(lo, hi, diag=-1)

            def pts(D):
                return (q * (D > 0) + p * (D == 0)).sum(axis=1)

            return self._beaten(pts(Dlo), pts(Dhi))
        if kind == "maximin":
            Dlo, Dhi = self._margins(lo, hi, diag=np.iinfo(np.int64).max // 2)
            return self._beaten(Dlo.min(axis=1), Dhi.min(axis=1))
        return False


def solve_search(inst: PossibleWinnerInstance, budget: int | None = None, unique: bool = False) -> SolveResult:
    """Exact search; ``budget`` caps the number of visited nodes (None: unlimited)."""
    prof = inst.profile
    ev = Evaluator(inst.rule, prof.m, prof.n, inst.target, unique)
    bounds = _Bounds(ev)
    fixed = np.zeros(ev.dim, dtype=np.int64)
    idx, effs, reps = [], [], []
    for i, v in enumerate(prof.votes):
        if v.is_complete:
            fixed += ev.effect(v.to_linear())
            continue
        E, R = vote_effects(ev, v)
        if len(E) == 1:
            fixed += E[0]
            idx.append(i)
            effs.append(np.zeros_like(E))
            reps.append(R)
            continue
        idx.append(i)
        effs.append(E)
        reps.append(R)
    K = len(effs)
    suf_lo = np.zeros((K + 1, ev.dim), dtype=np.int64)
    suf_hi = np.zeros((K + 1, ev.dim), dtype=np.int64)
    for k in range(K - 1, -1, -1):
        suf_lo[k] = suf_lo[k + 1] + effs[k].min(axis=0)
        suf_hi[k] = suf_hi[k + 1] + effs[k].max(axis=0)
    choice = [0] * K
    visited = 0
    # effects add up, so different choice prefixes often reach the same total;
    # a failed (depth, total) state fails again whatever prefix led to it
    dead: set[tuple[int, bytes]] = set()

    def dfs(k: int, tot: np.ndarray) -> bool:
        nonlocal visited
        visited += 1
        if budget is not None and visited > budget:
            raise BudgetExceeded(visited, budget)
        if k == K:
            return bool(ev.accept(tot[None, :])[0])
        key = (k, tot.tobytes())
        if key in dead:
            return False
        if bounds.prune(tot + suf_lo[k], tot + suf_hi[k]):
            dead.add(key)
            return False
        for j, e in enumerate(effs[k]):
            choice[k] = j
            if dfs(k + 1, tot + e):
                return True
        dead.add(key)
        return False

    method = "search"
    if not dfs(0, fixed):
        return SolveResult(False, None, method)
    witness = [None] * prof.n
    for i, v in enumerate(prof.votes):
        if v.is_complete:
            witness[i] = v.to_linear()
    for i, R, j in zip(idx, reps, choice):
        witness[i] = R[j]
    return SolveResult(True, tuple(witness), method)
