import itertools
import os
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from pwinner.orders import CandidateSet, LinearOrder, PossibleWinnerInstance, Profile, from_ranking_minus

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# naive oracle -------------------------------------------------------------------
# Deliberately independent of pwinner.rules: plain Python loops over rankings.

def naive_scores(kind, votes, m, scores=None, alpha=None):
    if kind == "scoring":
        s = [0] * m
        for v in votes:
            for pos, x in enumerate(v):
                s[x] += scores[pos]
        return s
    D = [[0] * m for _ in range(m)]
    for v in votes:
        for i, x in enumerate(v):
            for y in v[i + 1:]:
                D[x][y] += 1
                D[y][x] -= 1
    if kind == "copeland":
        a = Fraction(alpha)
        return [sum(1 if D[x][y] > 0 else a if D[x][y] == 0 else 0 for y in range(m) if y != x)
                for x in range(m)]
    if kind == "maximin":
        return [min(D[x][y] for y in range(m) if y != x) for x in range(m)]
    raise ValueError(kind)


def naive_winners(rule, votes, m):
    votes = [tuple(v) for v in votes]
    if m == 1:
        return {0}
    if not votes:
        return set(range(m))
    if rule.kind == "bucklin":
        n = len(votes)
        for depth in range(1, m + 1):
            cnt = [sum(x in v[:depth] for v in votes) for x in range(m)]
            if 2 * max(cnt) > n:
                return {x for x in range(m) if cnt[x] == max(cnt)}
    sc = naive_scores(rule.kind, votes, m,
                      rule.scores.scores if rule.scores is not None else None, rule.alpha)
    return {x for x in range(m) if sc[x] == max(sc)}


def naive_extensions(v, m):
    """All permutations consistent with the vote, by filtering every permutation."""
    out = []
    for perm in itertools.permutations(range(m)):
        pos = {x: i for i, x in enumerate(perm)}
        if all(pos[x] < pos[y] for x in range(m) for y in range(m) if v.prefers(x, y)):
            out.append(perm)
    return out


def naive_possible_winner(inst):
    m = inst.m
    exts = [naive_extensions(v, m) for v in inst.profile.votes]
    return any(inst.target in naive_winners(inst.rule, combo, m) for combo in itertools.product(*exts))


# strategies -----------------------------------------------------------------------

@st.composite
def partial_votes(draw, m=None, max_m=6, max_removed=4):
    if m is None:
        m = draw(st.integers(1, max_m))
    ranking = draw(st.permutations(range(m)))
    pairs = [(ranking[i], ranking[j]) for i in range(m) for j in range(i + 1, min(m, i + 3))]
    removed = draw(st.lists(st.sampled_from(pairs), max_size=max_removed, unique=True)) if pairs else []
    try:
        return from_ranking_minus(ranking, removed)
    except ValueError:
        return LinearOrder(tuple(ranking))


@st.composite
def linear_profiles(draw, min_m=2, max_m=6, min_n=1, max_n=8):
    m = draw(st.integers(min_m, max_m))
    n = draw(st.integers(min_n, max_n))
    votes = [LinearOrder(tuple(draw(st.permutations(range(m))))) for _ in range(n)]
    return m, votes


def make_instance(rule, votes, target, m):
    return PossibleWinnerInstance(Profile(CandidateSet.of_size(m), tuple(votes)), target, rule)


@pytest.fixture
def rng():
    return random.Random(20261015)


# acceptance report ----------------------------------------------------------------

ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}


def record(criterion: int, name: str, ok: bool, detail: str = ""):
    ACCEPTANCE.setdefault(criterion, []).append((name, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for c in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[c]
        ok = all(p[1] for p in parts)
        failed = [f"{n}: {d}" for n, p_ok, d in parts if not p_ok]
        passed = [f"{n} ({d})" if d else n for n, p_ok, d in parts if p_ok]
        line = f"criterion {c}: {'PASS' if ok else 'FAIL'}"
        if failed:
            line += " | failing: " + "; ".join(failed)
        tr.write_line(line)
        for p in passed:
            tr.write_line(f"    ok  {p}")
