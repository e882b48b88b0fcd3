"""Candidates, linear and partial orders, and profiles.

Orders are stored as bitmasks: ``below[x]`` has bit ``y`` set when ``x`` is
preferred to ``y``.  Every :class:`PartialOrder` is transitively closed, so
comparability questions are single mask lookups.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import CycleError, PairDeterminedError


@dataclass(frozen=True)
class CandidateSet:
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("candidate labels must be unique")
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})

    @classmethod
    def of_size(cls, m: int) -> "CandidateSet":
        if m <= 26:
            return cls(tuple(string.ascii_lowercase[:m]))
        return cls(tuple(f"c{i}" for i in range(m)))

    @property
    def m(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def index(self, label: str) -> int:
        return self._index[label]

    def label(self, i: int) -> str:
        return self.labels[i]

    def __contains__(self, label):
        return label in self._index


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _close(below: list[int], m: int) -> list[int]:
    """Warshall closure in place; raises CycleError on a cycle."""
    for k in range(m):
        bk = 1 << k
        bel_k = below[k]
        for i in range(m):
            if below[i] & bk:
                below[i] |= bel_k
        # a cycle through k shows up as k below itself
    for i in range(m):
        if below[i] >> i & 1:
            raise CycleError(f"candidate {i} is (transitively) preferred to itself")
    return below


@dataclass(frozen=True)
class PartialOrder:
    """Strict, transitively closed relation over ``m`` candidates."""

    m: int
    below: tuple[int, ...]

    @cached_property
    def above(self) -> tuple[int, ...]:
        up = [0] * self.m
        for x in range(self.m):
            for y in _bits(self.below[x]):
                up[y] |= 1 << x
        return tuple(up)

    @cached_property
    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((x, y) for x in range(self.m) for y in _bits(self.below[x]))

    def prefers(self, x: int, y: int) -> bool:
        return bool(self.below[x] >> y & 1)

    def comparable(self, x: int, y: int) -> bool:
        return bool((self.below[x] >> y | self.below[y] >> x) & 1)

    @cached_property
    def n_undetermined(self) -> int:
        total = self.m * (self.m - 1) // 2
        return total - sum(b.bit_count() for b in self.below)

    @property
    def is_complete(self) -> bool:
        return self.n_undetermined == 0

    def to_linear(self) -> "LinearOrder":
        if not self.is_complete:
            raise ValueError("order is not complete")
        return LinearOrder(tuple(sorted(range(self.m), key=lambda x: -self.below[x].bit_count())))

    def as_partial(self) -> "PartialOrder":
        return self

    def cover_pairs(self) -> list[tuple[int, int]]:
        """Transitive reduction (Hasse edges), sorted."""
        out = []
        for x in range(self.m):
            for y in _bits(self.below[x]):
                # (x, y) is a cover if no z sits strictly between them
                if not (self.below[x] & self.above[y]):
                    out.append((x, y))
        return sorted(out)


@dataclass(frozen=True)
class LinearOrder:
    """Complete order given by a ranking, best first."""

    ranking: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.ranking) != list(range(len(self.ranking))):
            raise ValueError(f"ranking {self.ranking} is not a permutation")

    @property
    def m(self) -> int:
        return len(self.ranking)

    @cached_property
    def positions(self) -> tuple[int, ...]:
        """0-based position of each candidate, 0 = top."""
        pos = [0] * self.m
        for i, x in enumerate(self.ranking):
            pos[x] = i
        return tuple(pos)

    @cached_property
    def below(self) -> tuple[int, ...]:
        bel = [0] * self.m
        acc = 0
        for x in reversed(self.ranking):
            bel[x] = acc
            acc |= 1 << x
        return tuple(bel)

    def prefers(self, x: int, y: int) -> bool:
        return self.positions[x] < self.positions[y]

    n_undetermined = 0
    is_complete = True

    def as_partial(self) -> PartialOrder:
        return PartialOrder(self.m, self.below)

    def to_linear(self) -> "LinearOrder":
        return self


Vote = PartialOrder | LinearOrder


def close_and_validate(pairs: Iterable[tuple[int, int]], m: int) -> PartialOrder:
    """Transitive closure of ``pairs`` over ``m`` candidates."""
    below = [0] * m
    for x, y in pairs:
        if not (0 <= x < m and 0 <= y < m):
            raise ValueError(f"pair ({x}, {y}) out of range for m={m}")
        if x == y:
            raise CycleError(f"reflexive pair ({x}, {x})")
        below[x] |= 1 << y
    return PartialOrder(m, tuple(_close(below, m)))


def from_ranking_minus(ranking: Sequence[int], removed: Iterable[tuple[int, int]]) -> PartialOrder:
    """The linear order ``ranking`` with the listed pairs made undetermined.

    Pairs may be given in either orientation.  The remaining relation must
    already be transitively closed, as in every construction that uses this.
    """
    lin = LinearOrder(tuple(ranking))
    below = list(lin.below)
    for x, y in removed:
        if lin.prefers(y, x):
            x, y = y, x
        below[x] &= ~(1 << y)
    closed = _close(list(below), lin.m)
    if tuple(closed) != tuple(below):
        raise ValueError("removing these pairs leaves a relation that is not transitive")
    return PartialOrder(lin.m, tuple(below))


def undetermined_pairs(v: Vote, m: int | None = None) -> set[tuple[int, int]]:
    """Unordered incomparable pairs, each reported as ``(small, large)``."""
    if isinstance(v, LinearOrder):
        return set()
    m = v.m if m is None else m
    full = (1 << m) - 1
    out = set()
    for x in range(m):
        free = full & ~v.below[x] & ~v.above[x] & ~((1 << (x + 1)) - 1)
        out.update((x, y) for y in _bits(free))
    return out


def linear_extensions(v: Vote) -> Iterator[LinearOrder]:
    """All linear extensions, in lexicographic order of the ranking."""
    if isinstance(v, LinearOrder):
        yield v
        return
    m = v.m
    above = v.above
    prefix: list[int] = []

    def rec(remaining: int):
        if not remaining:
            yield LinearOrder(tuple(prefix))
            return
        for x in _bits(remaining):
            if not above[x] & remaining:
                prefix.append(x)
                yield from rec(remaining & ~(1 << x))
                prefix.pop()

    yield from rec((1 << m) - 1)


def push_up(v: Vote, c: int) -> PartialOrder:
    """Place ``c`` as high as possible: only forced candidates stay above it."""
    p = v.as_partial()
    below = list(p.below)
    full = (1 << p.m) - 1
    below[c] |= full & ~p.above[c] & ~(1 << c)
    return PartialOrder(p.m, tuple(_close(below, p.m)))


def fix_pair(v: Vote, x: int, y: int) -> PartialOrder:
    p = v.as_partial()
    if p.comparable(x, y):
        raise PairDeterminedError(f"pair ({x}, {y}) is already ordered")
    below = list(p.below)
    below[x] |= 1 << y
    return PartialOrder(p.m, tuple(_close(below, p.m)))


def is_extension(w: LinearOrder, v: Vote) -> bool:
    wb = w.below
    return all(vb & ~wb[x] == 0 for x, vb in enumerate(v.below))


@dataclass(frozen=True)
class Profile:
    candidates: CandidateSet
    votes: tuple[Vote, ...]

    def __post_init__(self):
        object.__setattr__(self, "votes", tuple(self.votes))
        m = self.candidates.m
        for v in self.votes:
            if v.m != m:
                raise ValueError(f"vote over {v.m} candidates in a profile of {m}")

    @property
    def m(self) -> int:
        return self.candidates.m

    @property
    def n(self) -> int:
        return len(self.votes)

    @property
    def max_undetermined(self) -> int:
        return max((v.n_undetermined for v in self.votes), default=0)

    @property
    def is_complete(self) -> bool:
        return all(v.is_complete for v in self.votes)

    def linear_votes(self) -> list[LinearOrder]:
        return [v.to_linear() for v in self.votes]


@dataclass(frozen=True)
class PossibleWinnerInstance:
    profile: Profile
    target: int
    rule: object = field(repr=True)

    def __post_init__(self):
        if not 0 <= self.target < self.profile.m:
            raise ValueError("target is not a candidate")

    @property
    def m(self) -> int:
        return self.profile.m
