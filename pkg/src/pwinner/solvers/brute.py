"""Exhaustive search over all completions.

Each extension of a vote is reduced to its additive *effect* on the rule's
statistic (positional scores, pairwise margins or top-l counts).  Extensions
with identical effects are interchangeable, so only distinct effects are
enumerated.  Completions are visited in lexicographic order (votes in profile
order, extensions in lexicographic order of their rankings), and the first
accepted one is the witness, independent of ``jobs``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from ..errors import BudgetExceeded
from ..orders import LinearOrder, PossibleWinnerInstance, linear_extensions
from ..rules import RuleSpec
from .common import SolveResult, default_budget

_CHUNK_CELLS = 4_000_000


class Evaluator:
    """Effect encoding and vectorised winner test for one rule."""

    def __init__(self, rule: RuleSpec, m: int, n: int, target: int, unique: bool = False):
        self.rule, self.m, self.n, self.c, self.unique = rule, m, n, target, unique
        if rule.kind == "scoring":
            self.dim = m
            self.sv = np.array(rule.scores.scores, dtype=np.int64)
        elif rule.kind in ("copeland", "maximin"):
            self.iu = np.triu_indices(m, 1)
            self.dim = len(self.iu[0])
        else:
            self.dim = m * m

    def effect(self, w: LinearOrder) -> np.ndarray:
        m = self.m
        if self.rule.kind == "scoring":
            e = np.zeros(m, dtype=np.int64)
            e[list(w.ranking)] = self.sv
            return e
        pos = np.array(w.positions)
        if self.rule.kind in ("copeland", "maximin"):
            i, j = self.iu
            return np.where(pos[i] < pos[j], 1, -1).astype(np.int64)
        # bucklin: T[x, l] = 1 when x sits within the top l+1
        return (pos[:, None] <= np.arange(m)[None, :]).astype(np.int64).ravel()

    def _margins(self, tot: np.ndarray) -> np.ndarray:
        B = tot.shape[0]
        D = np.zeros((B, self.m, self.m), dtype=np.int64)
        i, j = self.iu
        D[:, i, j] = tot
        D[:, j, i] = -tot
        return D

    def accept(self, tot: np.ndarray) -> np.ndarray:
        c = self.c
        kind = self.rule.kind
        if kind == "scoring":
            sc = tot
        elif kind == "copeland":
            D = self._margins(tot)
            a = Fraction(self.rule.alpha)
            wins = (D > 0).sum(axis=2)
            ties = (D == 0).sum(axis=2) - 1
            sc = a.denominator * wins + a.numerator * ties
        elif kind == "maximin":
            D = self._margins(tot)
            big = np.iinfo(np.int64).max
            D[:, np.arange(self.m), np.arange(self.m)] = big
            sc = D.min(axis=2)
        else:
            T = tot.reshape(-1, self.m, self.m)
            maj = 2 * T.max(axis=1) > self.n
            depth = maj.argmax(axis=1)
            sc = T[np.arange(T.shape[0]), :, depth]
        others = np.delete(sc, c, axis=1)
        best_other = others.max(axis=1) if others.shape[1] else np.full(sc.shape[0], -np.inf)
        if self.unique:
            return sc[:, c] > best_other
        return sc[:, c] >= best_other


def vote_effects(ev: Evaluator, v) -> tuple[np.ndarray, list[LinearOrder]]:
    """Distinct effects of a vote's extensions, each with its first extension."""
    seen: dict[bytes, int] = {}
    effs, reps = [], []
    for w in linear_extensions(v):
        e = ev.effect(w)
        key = e.tobytes()
        if key not in seen:
            seen[key] = len(effs)
            effs.append(e)
            reps.append(w)
    return np.array(effs), reps


def _inner_table(effs: list[np.ndarray]) -> np.ndarray:
    table = np.zeros((1, effs[0].shape[1] if effs else 0), dtype=np.int64)
    for E in effs:
        table = (table[:, None, :] + E[None, :, :]).reshape(-1, E.shape[1])
    return table


def _scan(ev, fixed, outer_effs, inner, start, stop):
    """First accepted (outer_index, inner_row) for outer combos in [start, stop)."""
    radices = [len(E) for E in outer_effs]
    for flat in range(start, stop):
        idx = _unflatten(flat, radices)
        tot = fixed.copy()
        for E, i in zip(outer_effs, idx):
            tot += E[i]
        ok = np.flatnonzero(ev.accept(tot[None, :] + inner))
        if ok.size:
            return flat, int(ok[0])
    return None


def _unflatten(flat: int, radices: list[int]) -> list[int]:
    out = []
    for r in reversed(radices):
        flat, i = divmod(flat, r)
        out.append(i)
    return out[::-1]


def solve_bruteforce(inst: PossibleWinnerInstance, budget: int | None = None, unique: bool = False,
                     jobs: int = 1) -> SolveResult:
    budget = default_budget() if budget is None else budget
    prof = inst.profile
    m = prof.m
    ev = Evaluator(inst.rule, m, prof.n, inst.target, unique)
    fixed = np.zeros(ev.dim, dtype=np.int64)
    partial_idx, effs, reps = [], [], []
    for i, v in enumerate(prof.votes):
        if v.is_complete:
            fixed += ev.effect(v.to_linear())
            continue
        E, R = vote_effects(ev, v)
        if len(E) == 1:
            fixed += E[0]
        partial_idx.append(i)
        effs.append(E)
        reps.append(R)
    size = math.prod(len(E) for E in effs)
    if size > budget:
        raise BudgetExceeded(size, budget)
    # split into outer (python loop) and inner (one numpy table)
    split = len(effs)
    rows = 1
    while split > 0 and rows * len(effs[split - 1]) * max(1, ev.dim) <= _CHUNK_CELLS:
        split -= 1
        rows *= len(effs[split])
    # single-effect votes were folded into ``fixed``; neutralise them here
    outer = [np.zeros_like(E) if len(E) == 1 else E for E in effs[:split]]
    inner_effs = [np.zeros_like(E) if len(E) == 1 else E for E in effs[split:]]
    inner = _inner_table(inner_effs) if inner_effs else np.zeros((1, ev.dim), dtype=np.int64)
    n_outer = math.prod(len(E) for E in outer)
    found = None
    if jobs > 1 and n_outer > 1:
        bounds = np.linspace(0, n_outer, min(jobs, n_outer) + 1).astype(int)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = [pool.submit(_scan, ev, fixed, outer, inner, int(a), int(b))
                    for a, b in zip(bounds, bounds[1:])]
            hits = [f.result() for f in futs]
        hits = [h for h in hits if h is not None]
        found = min(hits) if hits else None
    else:
        found = _scan(ev, fixed, outer, inner, 0, n_outer)
    method = "brute-force"
    if found is None:
        return SolveResult(False, None, method)
    flat, row = found
    choice = _unflatten(flat, [len(E) for E in outer]) + _unflatten(row, [len(E) for E in inner_effs])
    witness = [None] * prof.n
    for i, v in enumerate(prof.votes):
        if v.is_complete:
            witness[i] = v.to_linear()
    for i, R, k in zip(partial_idx, reps, choice):
        witness[i] = R[k]
    return SolveResult(True, tuple(witness), method)
