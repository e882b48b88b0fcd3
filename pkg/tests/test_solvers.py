import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import make_instance, naive_possible_winner, partial_votes
from pwinner.errors import BudgetExceeded, PreconditionViolated
from pwinner.generate import random_instance
from pwinner.orders import LinearOrder, PartialOrder, close_and_validate, from_ranking_minus
from pwinner.rules import RuleSpec, borda, k_approval, normalize, plurality, two_one_zero
from pwinner.solvers import (dispatch, poly_solver, solve_bruteforce, solve_bucklin_t1, solve_bucklin_t1_sketch,
                             solve_copeland_t1, solve_exact, solve_maximin_t1, solve_rule_2110,
                             solve_scoring_t1, solve_scoring_t2, solve_scoring_t3, solve_search, witness_ok)
from pwinner.solvers.scoring import decompose_vote, top_bottom_sets

L = lambda *r: LinearOrder(tuple(r))  # noqa: E731
BORDA4 = RuleSpec.scoring(borda(4))


def test_complete_profile_yes_and_no():
    yes = make_instance(BORDA4, [L(3, 0, 1, 2), L(3, 1, 0, 2)], 3, 4)
    r = solve_bruteforce(yes)
    assert r.answer and witness_ok(yes, r.witness)
    assert dispatch(yes).method == "complete-check"
    no = make_instance(BORDA4, [L(0, 1, 2, 3)], 3, 4)
    assert not solve_bruteforce(no).answer
    assert not dispatch(no).answer


def test_borda_two_partial_votes_against_naive():
    v1 = from_ranking_minus([0, 1, 2, 3], [(1, 2), (2, 3)])
    v2 = from_ranking_minus([1, 3, 0, 2], [(1, 3), (0, 2)])
    for target in range(4):
        inst = make_instance(BORDA4, [v1, v2, L(2, 0, 3, 1)], target, 4)
        assert solve_bruteforce(inst).answer == naive_possible_winner(inst)


RULE_POOL = [
    lambda m: RuleSpec.scoring(borda(m)),
    lambda m: RuleSpec.scoring(plurality(m)),
    lambda m: RuleSpec.copeland(Fraction(1, 2)),
    lambda m: RuleSpec.copeland(0),
    lambda m: RuleSpec.maximin(),
    lambda m: RuleSpec.bucklin(),
]


@given(st.integers(2, 4), st.data())
def test_bruteforce_and_search_match_naive(m, data):
    rule = data.draw(st.sampled_from(RULE_POOL))(m)
    n = data.draw(st.integers(1, 4))
    votes = [data.draw(partial_votes(m=m, max_removed=3)) for _ in range(n)]
    inst = make_instance(rule, votes, data.draw(st.integers(0, m - 1)), m)
    truth = naive_possible_winner(inst)
    for solver in (solve_bruteforce, solve_search):
        r = solver(inst)
        assert r.answer == truth
        if r.answer:
            assert witness_ok(inst, r.witness)


def test_bruteforce_parallel_is_deterministic():
    rng = random.Random(3)
    for _ in range(20):
        inst = random_instance(RuleSpec.scoring(borda(5)), 5, 6, 3, rng)
        a, b = solve_bruteforce(inst), solve_bruteforce(inst, jobs=2)
        assert a.answer == b.answer and a.witness == b.witness


def test_budget_exceeded():
    m = 6
    v = PartialOrder(m, (0,) * m)  # nothing known
    inst = make_instance(RuleSpec.scoring(borda(m)), [v] * 3, 0, m)
    with pytest.raises(BudgetExceeded):
        solve_bruteforce(inst, budget=10)
    assert solve_exact(inst, budget=10).answer


def check_against_brute(solver, mk, trials, rng):
    for _ in range(trials):
        inst = mk(rng)
        a, b = solver(inst), solve_bruteforce(inst)
        assert a.answer == b.answer, inst
        if a.answer:
            assert witness_ok(inst, a.witness)


def scoring_maker(rulefn, t, ms=(2, 6)):
    def mk(rng):
        m = rng.randint(*ms)
        return random_instance(RuleSpec.scoring(rulefn(m)), m, rng.randint(1, 8), t, rng)
    return mk


def test_t1_borda(rng):
    check_against_brute(solve_scoring_t1, scoring_maker(borda, 1), 150, rng)


def test_t1_plurality(rng):
    check_against_brute(solve_scoring_t1, scoring_maker(plurality, 1), 100, rng)


def test_t1_complete_reduces_to_winner_check():
    inst = make_instance(BORDA4, [L(0, 1, 2, 3)], 0, 4)
    assert solve_scoring_t1(inst).method == "complete-check"


def test_t1_rejects_differentiating_rule():
    inst = make_instance(RuleSpec.scoring((3, 1, 0)), [L(0, 1, 2)], 0, 3)
    with pytest.raises(PreconditionViolated):
        solve_scoring_t1(inst)


def test_t2_k_approval(rng):
    check_against_brute(solve_scoring_t2, scoring_maker(lambda m: k_approval(m, max(1, m // 2)), 2, (3, 6)),
                        120, rng)


def test_t2_rejects_borda(rng):
    inst = random_instance(BORDA4, 4, 3, 2, rng)
    with pytest.raises(PreconditionViolated):
        solve_scoring_t2(inst)


def test_t3_plurality_veto(rng):
    check_against_brute(solve_scoring_t3, scoring_maker(plurality, 3, (3, 6)), 120, rng)


def test_t3_rejects_three_two_two_zero(rng):
    # (3,2,2,0) has steps 1, 0, 2, so it is differentiating and hard already at t=1
    inst = random_instance(RuleSpec.scoring((3, 2, 2, 0)), 4, 3, 1, rng)
    with pytest.raises(PreconditionViolated):
        solve_scoring_t3(inst)


@pytest.mark.parametrize("raw", [(2, 1, 1, 1, 0), (1, 1, 0, 0, 0), (1, 1, 1, 0, 0, 0)])
def test_t3_pattern_free_rules(raw, rng):
    sv = normalize(raw)
    m = sv.m
    check_against_brute(solve_scoring_t3,
                        lambda r: random_instance(RuleSpec.scoring(sv), m, r.randint(1, 7), 3, r), 80, rng)


def test_multi_pair_counterexample_for_raising_target():
    # 2-approval on 4 candidates; raising the target in vote 1 would over-constrain
    sv = k_approval(4, 2)
    votes = [PartialOrder(4, b) for b in [(0, 8, 11, 0), (10, 0, 10, 0), (0, 13, 1, 1), (0, 13, 1, 0)]]
    votes = [close_and_validate([(x, y) for x in range(4) for y in range(4) if v.prefers(x, y)], 4) for v in votes]
    inst = make_instance(RuleSpec.scoring(sv), votes, 3, 4)
    truth = naive_possible_winner(inst)
    assert truth is True
    assert solve_bruteforce(inst).answer is True
    assert solve_scoring_t3(inst).answer is True


def test_2110(rng):
    def mk(r):
        m = r.randint(3, 6)
        return random_instance(RuleSpec.scoring(two_one_zero(m)), m, r.randint(1, 7), m - 2, r)
    check_against_brute(solve_rule_2110, mk, 150, rng)


def test_2110_vote_with_free_candidate():
    # b free against everyone: b can be first and can be last, others cannot
    m = 5
    b = 2
    rank = [0, 1, 3, 4]
    pairs = [(x, y) for i, x in enumerate(rank) for y in rank[i + 1:]]
    v = close_and_validate(pairs, m)
    A, B = top_bottom_sets(v)
    assert A == [0, b] and B == [b, 4]
    assert v.n_undetermined == m - 1


def test_copeland_t1(rng):
    for a in (0, 1):
        def mk(r):
            m = r.randint(2, 6)
            return random_instance(RuleSpec.copeland(a), m, r.randint(1, 8), 1, r)
        check_against_brute(solve_copeland_t1, mk, 100, rng)


def test_copeland_condorcet_target():
    m = 4
    v = from_ranking_minus([0, 1, 2, 3], [(1, 2)])
    inst = make_instance(RuleSpec.copeland(1), [v, L(0, 2, 1, 3), L(0, 3, 2, 1)], 0, m)
    assert solve_copeland_t1(inst).answer


def test_maximin_t1(rng):
    def mk(r):
        m = r.randint(2, 6)
        return random_instance(RuleSpec.maximin(), m, r.randint(1, 8), 1, r)
    check_against_brute(solve_maximin_t1, mk, 150, rng)


def test_bucklin_t1(rng):
    def mk(r):
        m = r.randint(2, 6)
        return random_instance(RuleSpec.bucklin(), m, r.randint(1, 8), 1, r)
    check_against_brute(solve_bucklin_t1, mk, 150, rng)


def test_bucklin_unanimous_top():
    v = from_ranking_minus([0, 1, 2, 3], [(2, 3)])
    inst = make_instance(RuleSpec.bucklin(), [v, L(0, 2, 1, 3), L(0, 3, 1, 2)], 0, 4)
    assert solve_bucklin_t1(inst).answer


def test_bucklin_sketch_misses_early_majority():
    # b has a strict majority at depth 1 in every completion
    a, b, c = 0, 1, 2
    v = close_and_validate([(a, b), (c, b)], 3)
    inst = make_instance(RuleSpec.bucklin(), [L(b, c, a), v, L(b, c, a)], c, 3)
    assert naive_possible_winner(inst) is False
    assert solve_bucklin_t1(inst).answer is False
    assert solve_bucklin_t1_sketch(inst).answer is True


def test_dispatch_routing(rng):
    inst = random_instance(RuleSpec.scoring(borda(4)), 4, 4, 1, rng)
    assert poly_solver(inst) in (solve_scoring_t1, None)
    t1 = make_instance(BORDA4, [from_ranking_minus([0, 1, 2, 3], [(1, 2)])], 0, 4)
    assert dispatch(t1).method == "flow-scoring-t1"
    t2 = make_instance(BORDA4, [from_ranking_minus([0, 1, 2, 3], [(0, 1), (2, 3)])], 0, 4)
    r = dispatch(t2)
    assert r.method == "brute-force" and r.regime == "NP-hard regime (Thm 2)"
    mm = make_instance(RuleSpec.maximin(), [from_ranking_minus([0, 1, 2], [(1, 2)])], 0, 3)
    assert poly_solver(mm) is solve_maximin_t1


def test_decompose_single_pair_vote():
    v = from_ranking_minus([0, 1, 2, 3], [(1, 2)])
    g = decompose_vote(v, borda(4))
    assert g is not None


def test_unique_winner_variant():
    inst = make_instance(RuleSpec.scoring(borda(2)), [L(0, 1), L(1, 0)], 0, 2)
    assert solve_bruteforce(inst).answer
    assert not solve_bruteforce(inst, unique=True).answer
