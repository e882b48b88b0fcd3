import math

import pytest
from hypothesis import given, strategies as st

from pwinner.analysis import (P010, P101, P11, classify, classify_rule, contains_pattern, delta_max,
                              delta_min, difference_vector, is_differentiating_at, monotone_pattern_check,
                              smooth_step_check)
from pwinner.errors import SmoothnessViolation
from pwinner.rules import RuleSpec, ScoreVector, borda, k_approval, k_veto, normalize, plurality, two_one_zero, veto

SV = lambda *s: ScoreVector(tuple(s))  # noqa: E731


def test_difference_vectors():
    assert tuple(difference_vector(SV(3, 2, 1, 0))) == (1, 1, 1)
    assert contains_pattern(difference_vector(SV(2, 1, 1, 0)), P101)
    assert contains_pattern(difference_vector(SV(1, 1, 0, 0)), P010)


def test_deltas():
    assert (delta_min(SV(3, 1, 0)), delta_max(SV(3, 1, 0))) == (1, 2)
    assert delta_min(borda(5)) == delta_max(borda(5)) == 1
    assert delta_min(k_approval(5, 2)) == delta_max(k_approval(5, 2)) == 1


def test_differentiating():
    assert is_differentiating_at(SV(3, 1, 0))
    assert not is_differentiating_at(borda(4))


@given(st.lists(st.integers(0, 1), min_size=1, max_size=8).filter(any))
def test_zero_one_steps_never_differentiate(steps):
    vals = [0]
    for s in reversed(steps):
        vals.append(vals[-1] + s)
    sv = ScoreVector(tuple(reversed(vals)))
    assert not is_differentiating_at(sv)


def test_patterns():
    assert contains_pattern(difference_vector(borda(3)), P11)
    for m in range(4, 9):
        assert not contains_pattern(difference_vector(two_one_zero(m)), P11)
    assert contains_pattern((0, 1, 0), P010)


def test_smooth_steps():
    assert smooth_step_check(borda(3), borda(4))
    assert smooth_step_check(k_approval(4, 2), (1, 1, 0, 0, 0))
    assert smooth_step_check(k_approval(4, 2), (1, 1, 1, 0, 0))
    assert not smooth_step_check((2, 1, 0), (2, 1, 1, 0))


def test_smooth_step_enumeration_oracle():
    # enumerate every insertion slot that turns (2,1,0) into (2,1,1,0); each one
    # is interior and sits between unequal neighbours, so none is admissible
    prev, nxt = (2, 1, 0), (2, 1, 1, 0)
    slots = [k for k in range(len(nxt)) if nxt[:k] + nxt[k + 1:] == prev]
    assert slots == [1, 2]
    assert all(0 < k < len(prev) and prev[k - 1] != prev[k] for k in slots)
    assert not smooth_step_check(prev, nxt)


@pytest.mark.parametrize("sv, label, thr", [
    (borda(4), "OneOneContaminated", 2),
    (k_approval(5, 2), "ZeroOneZeroContaminated", 4),
    (SV(2, 1, 1, 0), "OneZeroOneContaminated", 3),
    (SV(2, 1, 1, 1, 0), "TwoOneOneZero", 4),
    (SV(1, 0, 0), "PluralityLike", math.inf),
    (SV(1, 1, 0), "VetoLike", math.inf),
    (SV(3, 1, 0), "Differentiating", 1),
])
def test_classify_fixtures(sv, label, thr):
    rc = classify(sv)
    assert (rc.label, rc.hard_threshold) == (label, thr)


def test_classify_rule_pairwise():
    assert classify_rule(RuleSpec.copeland(0)).hard_threshold == 2
    assert classify_rule(RuleSpec.copeland(1)).hard_threshold == 2
    assert classify_rule(RuleSpec.copeland("1/4")).hard_threshold == 1
    assert classify_rule(RuleSpec.maximin()).hard_threshold == 2
    assert classify_rule(RuleSpec.bucklin()).hard_threshold == 2


@given(st.lists(st.integers(0, 4), min_size=2, max_size=7))
def test_classify_is_total(steps):
    vals = [0]
    for s in steps:
        vals.append(vals[-1] + s)
    raw = tuple(reversed(vals))
    if raw[0] == raw[-1]:
        return
    rc = classify(normalize(raw))
    assert rc.hard_threshold >= 1


def test_monotone_borda():
    assert monotone_pattern_check([borda(m) for m in range(2, 9)], "11") == (3, True)


def test_monotone_k_approval():
    fam = [k_approval(m, 2) for m in range(3, 9)]
    first, persists = monotone_pattern_check(fam, "010")
    # frozen from a direct per-m scan of the difference vectors
    scan = [m for m in range(3, 9) if m >= 4 and contains_pattern(difference_vector(k_approval(m, 2)), P010)]
    assert (first, persists) == (scan[0], True) == (4, True)


def test_monotone_differentiating_family():
    fam = [SV(3, 1, 0)]
    for _ in range(5):
        fam.append(ScoreVector(fam[-1].scores + (0,)))
    assert all(delta_max(sv) != delta_min(sv) for sv in fam)
    assert monotone_pattern_check(fam, "differentiating") == (3, True)


def test_non_smooth_family_rejected():
    with pytest.raises(SmoothnessViolation):
        monotone_pattern_check([SV(2, 1, 0), SV(5, 1, 1, 0)], "11")


def test_veto_family_has_no_hardness():
    for m in range(3, 8):
        assert classify(veto(m)).hard_threshold == math.inf
        assert classify(plurality(m)).hard_threshold == math.inf
        assert classify(k_veto(m + 2, 2)).label == "ZeroOneZeroContaminated"
