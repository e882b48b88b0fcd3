"""Random instances for testing and experiments."""

from __future__ import annotations

import random
from .orders import CandidateSet, LinearOrder, PossibleWinnerInstance, Profile, from_ranking_minus
from .rules import RuleSpec


def random_partial_vote(m: int, max_pairs: int, rng: random.Random, tries: int = 20):
    """A random ranking with up to ``max_pairs`` pairs made undetermined."""
    ranking = list(range(m))
    rng.shuffle(ranking)
    k = rng.randint(0, max_pairs)
    if k == 0 or m < 2:
        return LinearOrder(tuple(ranking))
    for _ in range(tries):
        # pairs at nearby positions keep the relation transitive more often
        removed = set()
        for _ in range(k):
            i = rng.randrange(m - 1)
            j = min(m - 1, i + rng.choice((1, 1, 1, 2, 3)))
            removed.add((ranking[i], ranking[j]))
        try:
            v = from_ranking_minus(ranking, removed)
        except ValueError:
            continue
        if v.n_undetermined <= max_pairs:
            return v
    # adjacent pairs never break transitivity as long as they are disjoint
    removed = [(ranking[i], ranking[i + 1]) for i in range(0, m - 1, 2)][:k]
    return from_ranking_minus(ranking, removed)


def random_instance(rule: RuleSpec, m: int, n: int, max_pairs: int, rng: random.Random,
                    complete_frac: float = 0.3) -> PossibleWinnerInstance:
    votes = []
    for _ in range(n):
        if rng.random() < complete_frac:
            votes.append(random_partial_vote(m, 0, rng))
        else:
            votes.append(random_partial_vote(m, max_pairs, rng))
    return PossibleWinnerInstance(Profile(CandidateSet.of_size(m), tuple(votes)), rng.randrange(m), rule)


def random_ranking(m: int, rng: random.Random) -> LinearOrder:
    r = list(range(m))
    rng.shuffle(r)
    return LinearOrder(tuple(r))

