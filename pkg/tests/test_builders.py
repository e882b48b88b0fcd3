import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from pwinner.builders import MarginTarget, ScoreTarget, build_margin_profile, build_score_profile, mcgarvey_block
from pwinner.errors import InfeasibleTarget, ParityError
from pwinner.orders import CandidateSet
from pwinner.rules import ScoreVector, borda, k_approval, margin_matrix, normalize, positional_scores


def audit_scores(sv, tgt, build):
    got = positional_scores(sv, list(build.profile.votes))
    for c, x in zip(tgt.named, tgt.offsets):
        assert got[c] == build.lam + x
    for d in tgt.dummies:
        assert got[d] <= build.lam - tgt.dummy_margin
    assert build.profile.is_complete


def test_zero_offsets():
    sv = borda(4)
    tgt = ScoreTarget((0, 1, 2), (0, 0, 0), (3,))
    audit_scores(sv, tgt, build_score_profile(sv, tgt))


def test_small_target_with_one_dummy():
    sv = borda(4)
    tgt = ScoreTarget((0, 1, 2), (2, 0, -1), (3,))
    b = build_score_profile(sv, tgt)
    audit_scores(sv, tgt, b)


def test_offsets_relative_to_a_reference_candidate():
    # targets written against one named candidate w: e_j = w + d, b_i = w + 1 - d
    sv = ScoreVector((5, 3, 2, 1, 0, 0))
    d = 1
    tgt = ScoreTarget((0, 1, 2, 3), (0, d, 1 - d, 1 - d), (4, 5))
    b = build_score_profile(sv, tgt)
    got = positional_scores(sv, list(b.profile.votes))
    assert got[1] == got[0] + d and got[2] == got[0] + 1 - d
    audit_scores(sv, tgt, b)


def test_needs_a_dummy():
    with pytest.raises(InfeasibleTarget):
        ScoreTarget((0, 1), (0, 0), ())


@st.composite
def score_cases(draw):
    m = draw(st.integers(3, 6))
    steps = draw(st.lists(st.integers(0, 3), min_size=m - 1, max_size=m - 1))
    assume(any(steps))
    vals = [0]
    for s in steps:
        vals.append(vals[-1] + s)
    sv = normalize(tuple(reversed(vals)))
    k = draw(st.integers(1, m - 1))
    named = tuple(range(k))
    offsets = tuple(draw(st.lists(st.integers(-3, 3), min_size=k, max_size=k)))
    return sv, ScoreTarget(named, offsets, tuple(range(k, m)))


@given(score_cases())
def test_score_builder_audit(case):
    sv, tgt = case
    audit_scores(sv, tgt, build_score_profile(sv, tgt))


def test_zero_margins():
    cs = CandidateSet(("a", "b", "c"))
    prof = build_margin_profile(cs, MarginTarget(3))
    D = margin_matrix(list(prof.votes), 3).D if prof.votes else np.zeros((3, 3))
    assert not D.any()


def test_single_mcgarvey_block():
    a, b, c = 0, 1, 2
    v1, v2 = mcgarvey_block(a, b, 3)
    assert v1.ranking == (a, b, c) and v2.ranking == (c, a, b)
    D = margin_matrix([v1, v2], 3).D
    assert D[a, b] == 2 and D[a, c] == 0 and D[b, c] == 0
    prof = build_margin_profile(CandidateSet.of_size(3), MarginTarget(3, {(a, b): 2}))
    assert [v.ranking for v in prof.votes] == [(a, b, c), (c, a, b)]


def test_unit_margins_between_groups():
    # D(x, y) = D(x, z) = 1 for x in X, y in Y, z in Z with odd parity elsewhere
    m = 6
    X, Y, Z = (0, 1), (2, 3), (4, 5)
    ent = {(x, o): 1 for x in X for o in Y + Z}
    prof = build_margin_profile(CandidateSet.of_size(m), MarginTarget(m, ent))
    D = margin_matrix(list(prof.votes), m).D
    assert all(D[x, o] == 1 for x in X for o in Y + Z)
    assert prof.n % 2 == 1


def test_mixed_parity_raises():
    with pytest.raises(ParityError):
        MarginTarget(3, {(0, 1): 2, (1, 2): 1})


@st.composite
def margin_cases(draw):
    m = draw(st.integers(2, 6))
    parity = draw(st.integers(0, 1))
    vals = st.integers(-3, 3).map(lambda k: 2 * k + parity)
    M = np.zeros((m, m), dtype=np.int64)
    for x in range(m):
        for y in range(x + 1, m):
            v = draw(vals)
            M[x, y], M[y, x] = v, -v
    return m, M


@given(margin_cases())
def test_margin_builder_audit(case):
    m, M = case
    prof = build_margin_profile(CandidateSet.of_size(m), MarginTarget.from_matrix(M))
    got = margin_matrix(list(prof.votes), m).D if prof.votes else np.zeros((m, m), dtype=np.int64)
    assert np.array_equal(got, M)


def test_k_approval_builder():
    sv = k_approval(5, 2)
    tgt = ScoreTarget((0, 1, 2), (1, -2, 3), (3, 4))
    audit_scores(sv, tgt, build_score_profile(sv, tgt))
