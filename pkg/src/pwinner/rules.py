"""Voting rules on complete profiles: scoring rules, Copeland^alpha, maximin, Bucklin.

All arithmetic is exact.  Copeland scores are returned as integers in units of
``1/q`` where ``alpha = p/q``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import DegenerateRule
from .orders import LinearOrder


@dataclass(frozen=True)
class ScoreVector:
    """Scores ``(alpha_m, ..., alpha_1)``, top position first."""

    scores: tuple[int, ...]

    def __post_init__(self):
        s = tuple(int(a) for a in self.scores)
        object.__setattr__(self, "scores", s)
        if len(s) < 1:
            raise DegenerateRule("empty score vector")
        if any(a < b for a, b in zip(s, s[1:])):
            raise ValueError(f"score vector {s} is not nonincreasing")
        if len(s) > 1 and s[0] == s[-1]:
            raise DegenerateRule(f"score vector {s} has all entries equal")

    @property
    def m(self) -> int:
        return len(self.scores)

    @property
    def is_normalized(self) -> bool:
        pos = [a for a in self.scores if a > 0]
        return self.scores[-1] == 0 and (not pos or reduce(math.gcd, pos) == 1)

    def at(self, position: int) -> int:
        """Score of 0-based position counted from the top."""
        return self.scores[position]

    def __len__(self):
        return len(self.scores)

    def __iter__(self):
        return iter(self.scores)


def normalize(raw: Sequence[int]) -> ScoreVector:
    raw = [int(a) for a in raw]
    if any(a < b for a, b in zip(raw, raw[1:])):
        raise ValueError(f"score vector {raw} is not nonincreasing")
    if len(raw) > 1 and raw[0] == raw[-1]:
        raise DegenerateRule(f"score vector {tuple(raw)} has all entries equal")
    low = raw[-1]
    shifted = [a - low for a in raw]
    g = reduce(math.gcd, [a for a in shifted if a > 0], 0) or 1
    return ScoreVector(tuple(a // g for a in shifted))


def plurality(m: int) -> ScoreVector:
    return normalize([1] + [0] * (m - 1))


def veto(m: int) -> ScoreVector:
    return normalize([1] * (m - 1) + [0])


def k_approval(m: int, k: int) -> ScoreVector:
    if not 0 < k < m:
        raise DegenerateRule(f"{k}-approval needs 0 < k < m={m}")
    return normalize([1] * k + [0] * (m - k))


def k_veto(m: int, k: int) -> ScoreVector:
    if not 0 < k < m:
        raise DegenerateRule(f"{k}-veto needs 0 < k < m={m}")
    return normalize([0] * (m - k) + [-1] * k)


def borda(m: int) -> ScoreVector:
    return normalize(list(range(m - 1, -1, -1)))


def two_one_zero(m: int) -> ScoreVector:
    """The vector (2, 1, ..., 1, 0)."""
    if m < 3:
        raise DegenerateRule("(2,1,...,1,0) needs m >= 3")
    return normalize([2] + [1] * (m - 2) + [0])


@dataclass(frozen=True)
class RuleSpec:
    kind: str  # "scoring" | "copeland" | "maximin" | "bucklin"
    scores: ScoreVector | None = None
    alpha: Fraction | None = None
    name: str | None = None  # preferred spelling for serialisation, e.g. "borda"

    def __post_init__(self):
        if self.kind not in ("scoring", "copeland", "maximin", "bucklin"):
            raise ValueError(f"unknown rule kind {self.kind!r}")
        if self.kind == "scoring" and self.scores is None:
            raise ValueError("scoring rule needs a score vector")
        if self.kind == "copeland":
            a = Fraction(self.alpha)
            if not 0 <= a <= 1:
                raise ValueError(f"Copeland alpha {a} outside [0, 1]")
            object.__setattr__(self, "alpha", a)

    @classmethod
    def scoring(cls, sv, name=None) -> "RuleSpec":
        if not isinstance(sv, ScoreVector):
            sv = normalize(sv)
        return cls("scoring", scores=sv, name=name)

    @classmethod
    def copeland(cls, alpha) -> "RuleSpec":
        return cls("copeland", alpha=Fraction(alpha))

    @classmethod
    def maximin(cls) -> "RuleSpec":
        return cls("maximin")

    @classmethod
    def bucklin(cls) -> "RuleSpec":
        return cls("bucklin")

    @classmethod
    def named(cls, name: str, m: int, k: int | None = None) -> "RuleSpec":
        """Named scoring rules at a fixed number of candidates."""
        makers = {
            "plurality": lambda: plurality(m),
            "veto": lambda: veto(m),
            "borda": lambda: borda(m),
            "kapproval": lambda: k_approval(m, k),
            "kveto": lambda: k_veto(m, k),
            "twoonezero": lambda: two_one_zero(m),
        }
        if name not in makers:
            raise ValueError(f"unknown scoring rule {name!r}")
        label = f"{name} {k}" if k is not None else name
        return cls("scoring", scores=makers[name](), name=label)

    def describe(self) -> str:
        if self.kind == "scoring":
            return self.name or "scoring " + " ".join(map(str, self.scores.scores))
        if self.kind == "copeland":
            return f"copeland {self.alpha.numerator}/{self.alpha.denominator}"
        return self.kind


@dataclass(frozen=True, eq=False)
class MarginMatrix:
    D: np.ndarray
    n: int

    def __getitem__(self, xy):
        return int(self.D[xy])

    @property
    def m(self) -> int:
        return self.D.shape[0]

    def __eq__(self, other):
        return isinstance(other, MarginMatrix) and self.n == other.n and np.array_equal(self.D, other.D)


def _ranks(votes: Sequence[LinearOrder], m: int | None = None) -> np.ndarray:
    if len(votes) == 0:
        return np.zeros((0, m or 0), dtype=np.int64)
    return np.array([v.ranking for v in votes], dtype=np.int64)


def positional_scores(sv: ScoreVector, votes: Sequence[LinearOrder]) -> list[int]:
    m = sv.m
    R = _ranks(votes, m)
    if R.size == 0:
        return [0] * m
    if R.shape[1] != m:
        raise ValueError("score vector length differs from candidate count")
    weights = np.broadcast_to(np.array(sv.scores, dtype=np.int64), R.shape)
    out = np.zeros(m, dtype=np.int64)
    np.add.at(out, R.ravel(), weights.ravel())
    return [int(a) for a in out]


def position_matrix(votes: Sequence[LinearOrder], m: int) -> np.ndarray:
    """``P[v, x]`` is the 0-based position of candidate ``x`` in vote ``v``."""
    R = _ranks(votes, m)
    P = np.empty_like(R)
    rows = np.arange(R.shape[0])[:, None]
    P[rows, R] = np.arange(m)[None, :]
    return P


def margin_matrix(votes: Sequence[LinearOrder], m: int | None = None) -> MarginMatrix:
    if m is None:
        m = votes[0].m
    P = position_matrix(votes, m)
    wins = np.zeros((m, m), dtype=np.int64)
    step = max(1, 2_000_000 // max(1, m * m))
    for lo in range(0, P.shape[0], step):
        chunk = P[lo:lo + step]
        wins += (chunk[:, :, None] < chunk[:, None, :]).sum(axis=0)
    return MarginMatrix(wins - wins.T, len(votes))


def copeland_scores(D: MarginMatrix, alpha) -> list[int]:
    """Copeland^alpha scores times ``q`` (alpha = p/q)."""
    a = Fraction(alpha)
    p, q = a.numerator, a.denominator
    M = D.D
    off = ~np.eye(M.shape[0], dtype=bool)
    wins = ((M > 0) & off).sum(axis=1)
    ties = ((M == 0) & off).sum(axis=1)
    return [int(q * w + p * t) for w, t in zip(wins, ties)]


def maximin_scores(D: MarginMatrix) -> list[int]:
    M = D.D.astype(np.int64).copy()
    m = M.shape[0]
    if m < 2:
        raise ValueError("maximin needs at least two candidates")
    np.fill_diagonal(M, np.iinfo(np.int64).max)
    return [int(a) for a in M.min(axis=1)]


def top_counts(votes: Sequence[LinearOrder], m: int) -> np.ndarray:
    """``T[x, l]`` = number of votes placing ``x`` within the top ``l`` (l = 0..m)."""
    P = position_matrix(votes, m)
    H = np.zeros((m, m), dtype=np.int64)
    np.add.at(H, (np.broadcast_to(np.arange(m), P.shape).ravel(), P.ravel()), 1)
    T = np.zeros((m, m + 1), dtype=np.int64)
    T[:, 1:] = np.cumsum(H, axis=1)
    return T


def bucklin_from_counts(T: np.ndarray, n: int) -> tuple[int, frozenset[int]]:
    m = T.shape[0]
    for depth in range(1, m + 1):
        col = T[:, depth]
        if 2 * col.max() > n:
            best = col.max()
            return depth, frozenset(int(x) for x in np.flatnonzero(col == best))
    raise ValueError("no majority depth (empty profile?)")


def bucklin_winners(votes: Sequence[LinearOrder], m: int | None = None) -> tuple[int, frozenset[int]]:
    if m is None:
        m = votes[0].m
    return bucklin_from_counts(top_counts(votes, m), len(votes))


def _argmax(scores) -> frozenset[int]:
    best = max(scores)
    return frozenset(i for i, s in enumerate(scores) if s == best)


def rule_scores(rule: RuleSpec, votes: Sequence[LinearOrder], m: int | None = None) -> list:
    """Per-candidate score used to rank candidates (not defined for Bucklin)."""
    if m is None:
        m = votes[0].m
    if rule.kind == "scoring":
        return positional_scores(rule.scores, votes)
    D = margin_matrix(votes, m)
    if rule.kind == "copeland":
        return copeland_scores(D, rule.alpha)
    if rule.kind == "maximin":
        return maximin_scores(D)
    raise ValueError("Bucklin has no single score; use bucklin_winners")


def winners(rule: RuleSpec, votes: Sequence[LinearOrder], m: int | None = None) -> frozenset[int]:
    if m is None:
        m = votes[0].m
    if m == 1:
        return frozenset({0})
    if len(votes) == 0:
        return frozenset(range(m))
    if rule.kind == "bucklin":
        return bucklin_winners(votes, m)[1]
    return _argmax(rule_scores(rule, votes, m))
