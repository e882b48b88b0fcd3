"""Complete profiles with prescribed scores or pairwise margins.

Score targets are realised with blocks of ``m`` cyclic rotations.  In a block
built around an adjacent pair (dummy, candidate) every candidate collects the
full sum of the score vector; swapping the pair in the rotation where it sits on
slots ``j+1, j`` moves exactly one score difference from the dummy to the
candidate (or back).  Margin targets use the classic two-vote block
``x > y > rest`` plus ``reversed(rest) > x > y``, which adds 2 to ``D(x, y)``
and nothing else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Mapping, Sequence

import numpy as np

from .errors import InfeasibleTarget, ParityError
from .orders import CandidateSet, LinearOrder, Profile
from .rules import ScoreVector, margin_matrix, positional_scores


@dataclass(frozen=True)
class ScoreTarget:
    """Named candidates ``named[i]`` should score ``lam + offsets[i]``; dummies stay below."""

    named: tuple[int, ...]
    offsets: tuple[int, ...]
    dummies: tuple[int, ...]
    dummy_margin: int = 1  # dummies end at most lam - dummy_margin

    def __post_init__(self):
        object.__setattr__(self, "named", tuple(self.named))
        object.__setattr__(self, "offsets", tuple(int(x) for x in self.offsets))
        object.__setattr__(self, "dummies", tuple(self.dummies))
        if not self.dummies:
            raise InfeasibleTarget("at least one dummy candidate is required")
        if len(self.named) != len(self.offsets):
            raise ValueError("one offset per named candidate")
        if set(self.named) & set(self.dummies):
            raise ValueError("a candidate cannot be both named and dummy")
        if self.dummy_margin < 1:
            raise ValueError("dummy_margin must be at least 1")


@dataclass(frozen=True)
class ScoreBuild:
    profile: Profile
    lam: int


def _subset_sum(values: Sequence[int], target: int) -> list[int] | None:
    """Indices of a subset of ``values`` summing to ``target`` (each used once)."""
    reach = {0: []}
    for i, v in enumerate(values):
        if v == 0:
            continue
        for s, idx in list(reach.items()):
            t = s + v
            if t <= target and t not in reach:
                reach[t] = idx + [i]
    return reach.get(target)


def _bezout(values: Sequence[int]) -> list[int]:
    """Integer coefficients ``e`` with ``sum(e_i * values_i) == gcd(values)``."""
    coef = [0] * len(values)
    g = 0
    for i, v in enumerate(values):
        if v == 0:
            continue
        if g == 0:
            g, coef[i] = v, 1
            continue
        # extended Euclid on (g, v)
        old_r, r, old_s, s, old_t, t = g, v, 1, 0, 0, 1
        while r:
            qt = old_r // r
            old_r, r = r, old_r - qt * r
            old_s, s = s, old_s - qt * s
            old_t, t = t, old_t - qt * t
        coef = [c * old_s for c in coef]
        coef[i] = old_t
        g = old_r
    return coef


def _decompose(b: int, diffs: Sequence[int]) -> list[int]:
    """Signed multiplicities ``k`` with ``sum(k_j * diffs_j) == b``."""
    top = sum(diffs)
    q, r = divmod(b, top)
    k = [q] * len(diffs)
    if r:
        idx = _subset_sum(diffs, r)
        if idx is not None:
            for i in idx:
                k[i] += 1
        else:
            g = reduce(math.gcd, [d for d in diffs if d], 0)
            if r % g:
                raise InfeasibleTarget(f"offset {b} is not a multiple of gcd {g}")
            e = _bezout(diffs)
            k = [ki + (r // g) * ei for ki, ei in zip(k, e)]
    return k


def _rotation_block(sigma: Sequence[int], swaps: set[int]) -> list[LinearOrder]:
    """Rotations of ``sigma``; in rotation ``r`` the first two entries sit on
    top positions ``r, r+1`` and are exchanged when ``r`` is in ``swaps``."""
    m = len(sigma)
    votes = []
    for r in range(m):
        ranking = [0] * m
        for idx, x in enumerate(sigma):
            ranking[(r + idx) % m] = x
        if r in swaps:
            ranking[r], ranking[r + 1] = ranking[r + 1], ranking[r]
        votes.append(LinearOrder(tuple(ranking)))
    return votes


def build_score_profile(sv: ScoreVector, target: ScoreTarget, candidates: CandidateSet | None = None) -> ScoreBuild:
    m = sv.m
    if candidates is None:
        candidates = CandidateSet.of_size(m)
    if candidates.m != m:
        raise ValueError("score vector length must equal the number of candidates")
    if sorted(target.named + target.dummies) != list(range(m)):
        raise ValueError("named and dummy candidates must partition the candidate set")
    top = sv.scores
    total = sum(top)
    # diff_at[r] = top[r] - top[r+1], the gain of moving from top slot r+1 to r
    diff_at = [top[r] - top[r + 1] for r in range(m - 1)]
    k_named = len(target.named)
    M = target.dummy_margin
    sum_x = sum(target.offsets)
    s = -((sum_x - M) // (k_named + 1))  # ceil((M - sum_x) / (k+1))
    if len(target.dummies) > 1 or k_named == 0:
        s = max(s, M)
    main = target.dummies[0]
    votes: list[LinearOrder] = []
    for c, x in zip(target.named, target.offsets):
        k = _decompose(x + s, diff_at)
        rest = [y for y in range(m) if y not in (c, main)]
        for u in range(max(0, max(k))):
            votes += _rotation_block([main, c] + rest, {r for r in range(m - 1) if k[r] > u})
        for u in range(max(0, -min(k))):
            votes += _rotation_block([c, main] + rest, {r for r in range(m - 1) if -k[r] > u})
    blocks = len(votes) // m
    while blocks * total + s < 0 or not votes:
        votes += _rotation_block(list(range(m)), set())
        blocks += 1
    lam = blocks * total + s
    prof = Profile(candidates, tuple(votes))
    got = positional_scores(sv, votes)
    for c, x in zip(target.named, target.offsets):
        if got[c] != lam + x:
            raise InfeasibleTarget(f"audit failed for candidate {c}: {got[c]} != {lam + x}")
    for d in target.dummies:
        if got[d] > lam - M:
            raise InfeasibleTarget(f"audit failed for dummy {d}: {got[d]} > {lam - M}")
    return ScoreBuild(prof, lam)


@dataclass(frozen=True)
class MarginTarget:
    """Prescribed margins ``D(x, y)`` on some ordered pairs.

    ``parity`` is only consulted when ``entries`` is empty.
    """

    m: int
    entries: Mapping[tuple[int, int], int] = field(default_factory=dict)
    parity: int = 0

    def __post_init__(self):
        norm: dict[tuple[int, int], int] = {}
        for (x, y), val in dict(self.entries).items():
            if x == y:
                raise ValueError("diagonal margins are always 0")
            key, v = ((x, y), int(val)) if x < y else ((y, x), -int(val))
            if key in norm and norm[key] != v:
                raise ValueError(f"inconsistent margins for pair {key}")
            norm[key] = v
        object.__setattr__(self, "entries", norm)
        pars = {v % 2 for v in norm.values()}
        if len(pars) > 1:
            raise ParityError("specified margins mix even and odd values")
        if pars:
            object.__setattr__(self, "parity", pars.pop())

    @classmethod
    def from_matrix(cls, M) -> "MarginTarget":
        M = np.asarray(M)
        m = M.shape[0]
        if not np.array_equal(M, -M.T):
            raise ValueError("margin matrix must be antisymmetric")
        return cls(m, {(x, y): int(M[x, y]) for x in range(m) for y in range(x + 1, m)})

    def full_matrix(self) -> np.ndarray:
        """Target with the defaults filled in: +1 toward the smaller id when odd, 0 when even."""
        M = np.zeros((self.m, self.m), dtype=np.int64)
        for x in range(self.m):
            for y in range(x + 1, self.m):
                v = self.entries.get((x, y), self.parity)
                M[x, y], M[y, x] = v, -v
        return M


def mcgarvey_block(x: int, y: int, m: int) -> tuple[LinearOrder, LinearOrder]:
    """Two votes adding exactly +2 to D(x, y) and 0 to every other margin."""
    rest = [z for z in range(m) if z not in (x, y)]
    return LinearOrder(tuple([x, y] + rest)), LinearOrder(tuple(rest[::-1] + [x, y]))


def build_margin_profile(candidates: CandidateSet, target: MarginTarget) -> Profile:
    m = candidates.m
    if target.m != m:
        raise ValueError("target size differs from candidate count")
    M = target.full_matrix()
    votes: list[LinearOrder] = []
    base = np.zeros_like(M)
    if target.parity % 2:
        votes.append(LinearOrder(tuple(range(m))))
        base = np.triu(np.ones_like(M), 1)
        base = base - base.T
    need = M - base
    for x in range(m):
        for y in range(x + 1, m):
            k = int(need[x, y]) // 2
            a, b = (x, y) if k > 0 else (y, x)
            blk = mcgarvey_block(a, b, m)
            for _ in range(abs(k)):
                votes.extend(blk)
    prof = Profile(candidates, tuple(votes))
    if votes:
        got = margin_matrix(votes, m).D
    else:
        got = np.zeros_like(M)
    if not np.array_equal(got, M):
        raise InfeasibleTarget("margin audit failed")
    return prof
