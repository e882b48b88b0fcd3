import random
from fractions import Fraction as F

import pytest

from pwinner.errors import (AlphaOutOfRange, ExtractionFailed, InvalidSolution, InvalidSourceInstance,
                            NoDifferentiatingPositions, OccurrenceCapViolated, PatternAbsent, TableMismatch)
from pwinner.gadgets import (MulticoloredGraph, Sat3B2, ThreeDM, audit_table, extract_solution,
                             gadget_2110, gadget_bucklin, gadget_copeland_3dm, gadget_copeland_sat_high,
                             gadget_copeland_sat_low, gadget_maximin, gadget_scoring_101, gadget_scoring_11,
                             gadget_scoring_differentiating, mis_solve, random_3dm, random_3dm_no,
                             random_multicolored, random_regular_3dm_yes, random_sat3b2, random_unsat_sat3b2,
                             sat_solve, stat_values, tdm_solve, witness_completion)
from pwinner.gadgets.copeland import g_size
from pwinner.gadgets.maximin import lam_for
from pwinner.orders import Profile, is_extension
from pwinner.rules import borda, margin_matrix, normalize, winners
from pwinner.solvers import solve_exact, witness_ok


def diff_rule(m):
    # steps 2m+1, then all 1: D > d with the two steps far apart
    return normalize([3 * m] + [m - i for i in range(1, m)])


def rule_101(m):
    return normalize([2] * (m - 4) + [1, 1, 0, 0])


SAT_YES = Sat3B2(3, ((1, 2, -3), (1, -2, 3), (-1, 2, 3), (-1, -2, -3)))
TDM_YES = ThreeDM(2, ((0, 0, 0), (1, 1, 1), (0, 1, 0), (1, 0, 1)))
TDM_NO = ThreeDM(2, ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)))  # parity blocks any matching


def roundtrip(g, sol, validator):
    comp = witness_completion(g, sol)
    assert comp.is_complete
    assert all(is_extension(w, v) for w, v in zip(comp.votes, g.instance.profile.votes))
    assert g.instance.target in winners(g.instance.rule, list(comp.votes), g.candidates.m)
    back = extract_solution(g, comp)
    validator(back)
    return back


def test_fixture_sources():
    assert sat_solve(SAT_YES) is not None
    assert tdm_solve(TDM_YES) is not None and tdm_solve(TDM_NO) is None


# differentiating ---------------------------------------------------------------------

def test_differentiating_table_and_bounds():
    g = gadget_scoring_differentiating(SAT_YES, diff_rule)
    assert audit_table(g) == []
    assert g.candidates.m == 2 * 3 + 4 + 2
    assert all(v.n_undetermined <= 1 for v in g.instance.profile.votes)
    s = stat_values(g, "score")
    D, d = g.role_map["D"], g.role_map["d"]
    w = s[g.idx("w")]
    for i in range(1, 4):
        assert s[g.idx(f"b{i}'")] == w + 1 - d - D
        assert s[g.idx(f"b{i}")] == w + 1 - d
    for j in range(1, 5):
        assert s[g.idx(f"e{j}")] == w + d


def test_differentiating_equivalence_and_roundtrip():
    g = gadget_scoring_differentiating(SAT_YES, diff_rule)
    assert solve_exact(g.instance).answer
    roundtrip(g, sat_solve(SAT_YES), SAT_YES.check)
    unsat = random_unsat_sat3b2(3, random.Random(1))
    assert not solve_exact(gadget_scoring_differentiating(unsat, diff_rule).instance).answer


def test_differentiating_needs_positions():
    with pytest.raises(NoDifferentiatingPositions):
        gadget_scoring_differentiating(SAT_YES, borda)


# <1,1> and <1,0,1> ----------------------------------------------------------------

def test_scoring_11_table():
    g = gadget_scoring_11(TDM_YES, borda)
    assert audit_table(g) == []
    assert g.candidates.m == 3 * 2 + 2
    partial = [v for v in g.instance.profile.votes if not v.is_complete]
    assert len(partial) == TDM_YES.t and all(v.n_undetermined == 2 for v in partial)
    s = stat_values(g, "score")
    c = s[g.idx("c")]
    for a in (1, 2):
        assert s[g.idx(f"x{a}")] == c + 2
        assert s[g.idx(f"y{a}")] == c - 1
        assert s[g.idx(f"z{a}")] == c - 1


def test_scoring_11_forward_flips_y_z_x():
    g = gadget_scoring_11(TDM_YES, borda)
    sel = tdm_solve(TDM_YES)
    comp = witness_completion(g, sel)
    for k in sel:
        info = g.role_map["triples"][k]
        r = comp.votes[info["vote"]].ranking
        x, y, z = (g.idx(info[s]) for s in "xyz")
        assert r.index(y) < r.index(z) < r.index(x)
        assert r.index(x) == r.index(z) + 1
    assert extract_solution(g, comp) == tuple(sorted(sel))


def test_scoring_11_equivalence():
    assert solve_exact(gadget_scoring_11(TDM_YES, borda).instance).answer
    assert not solve_exact(gadget_scoring_11(TDM_NO, borda).instance).answer


def test_scoring_101_table():
    g = gadget_scoring_101(TDM_YES, rule_101)
    assert audit_table(g) == []
    partial = [v for v in g.instance.profile.votes if not v.is_complete]
    assert all(v.n_undetermined == 3 for v in partial)
    s = stat_values(g, "score")
    assert all(s[g.idx(f"x{a}")] == s[g.idx("c")] + 2 for a in (1, 2))
    assert solve_exact(g.instance).answer
    assert not solve_exact(gadget_scoring_101(TDM_NO, rule_101).instance).answer
    roundtrip(g, tdm_solve(TDM_YES), TDM_YES.check)


def test_pattern_absent():
    with pytest.raises(PatternAbsent):
        gadget_scoring_11(TDM_YES, lambda m: normalize([1, 1] + [0] * (m - 2)))
    with pytest.raises(PatternAbsent):
        gadget_scoring_101(TDM_YES, borda)


# (2,1,...,1,0) ----------------------------------------------------------------------

def test_2110_table_and_pairs():
    g = gadget_2110(SAT_YES)
    assert audit_table(g) == []
    m = g.candidates.m
    assert m == 4 * 3 + 4 + 2
    s = stat_values(g, "score")
    w = s[g.idx("w")]
    for i in range(1, 4):
        assert s[g.idx(f"b{i}")] == w - 2 and s[g.idx(f"b{i}'")] == w - 2
        assert s[g.idx(f"w{i}")] == w + 1
        info = g.role_map["variables"][f"x{i}"]
        for key in ("a_vote", "b_vote"):
            assert g.instance.profile.votes[info[key]].n_undetermined == m - 1
    assert all(v.n_undetermined <= m - 1 for v in g.instance.profile.votes)


def test_2110_equivalence():
    g = gadget_2110(SAT_YES)
    assert solve_exact(g.instance).answer
    roundtrip(g, sat_solve(SAT_YES), SAT_YES.check)
    unsat = random_unsat_sat3b2(3, random.Random(2))
    assert not solve_exact(gadget_2110(unsat).instance).answer


# Copeland 3DM ---------------------------------------------------------------------------

def test_copeland_3dm_table():
    g = gadget_copeland_3dm(TDM_YES)
    assert audit_table(g) == []
    s = stat_values(g, "copeland")
    m0 = 2
    assert s[g.idx("c")] == 10 * m0
    assert all(s[g.idx(f"x{a}")] == 10 * m0 + 2 for a in (1, 2))
    assert all(s[g.idx(f"{p}{a}")] == 10 * m0 - 1 for p in "yz" for a in (1, 2))
    assert all(s[g.idx(f"g{i}")] < 9 * m0 for i in range(1, 10 * m0 + 1))
    assert g.instance.profile.n % 2 == 1
    D = margin_matrix(g.base.linear_votes(), g.candidates.m)
    assert all(D[g.idx(f"x{a}"), g.idx(f"{p}{b}")] == 1 for a in (1, 2) for b in (1, 2) for p in "yz")


def test_copeland_3dm_alpha_irrelevant():
    for a in (F(0), F(1, 3), F(1)):
        g = gadget_copeland_3dm(TDM_YES, a)
        assert audit_table(g) == []


def test_copeland_3dm_forward_moves_x_last():
    g = gadget_copeland_3dm(TDM_YES)
    sel = tdm_solve(TDM_YES)
    comp = witness_completion(g, sel)
    for k in sel:
        info = g.role_map["triples"][k]
        assert comp.votes[info["vote"]].ranking[-1] == g.idx(info["x"])
    assert extract_solution(g, comp) == tuple(sorted(sel))
    assert not solve_exact(gadget_copeland_3dm(TDM_NO).instance).answer


# Copeland^alpha ---------------------------------------------------------------------------

@pytest.mark.parametrize("alpha, high", [(F(1, 4), False), (F(1, 2), False), (F(1, 2), True), (F(3, 4), True)])
def test_copeland_alpha_tables(alpha, high):
    gen = gadget_copeland_sat_high if high else gadget_copeland_sat_low
    g = gen(SAT_YES, alpha)
    assert audit_table(g) == []
    n, mc = 3, 4
    s = stat_values(g, "copeland")
    base = (2 * n + mc) * alpha + n + F(3 * mc * n, 4)
    assert s[g.idx("c")] == base
    cj = (2 * n + mc + 1) * alpha + n + F(3 * mc * n, 4) if high else (2 * n + mc - 1) * alpha + n + F(3 * mc * n, 4) + 1
    assert all(s[g.idx(f"c{j}")] == cj for j in range(1, mc + 1))
    assert all(v.n_undetermined <= 1 for v in g.instance.profile.votes)
    roundtrip(g, sat_solve(SAT_YES), SAT_YES.check)


def test_copeland_alpha_out_of_range():
    with pytest.raises(AlphaOutOfRange):
        gadget_copeland_sat_low(SAT_YES, F(3, 4))
    with pytest.raises(AlphaOutOfRange):
        gadget_copeland_sat_high(SAT_YES, F(1, 4))
    with pytest.raises(AlphaOutOfRange):
        gadget_copeland_sat_low(SAT_YES, F(0))


def test_copeland_alpha_unenlarged_g_too_small_at_n3():
    assert g_size(3, 4) == 14
    with pytest.raises(TableMismatch, match="too small"):
        gadget_copeland_sat_low(SAT_YES, F(1, 4), g_count=3 * 4)


def test_copeland_alpha_unenlarged_g_fits_at_n6():
    f = random_sat3b2(6, random.Random(6), planted=(True,) * 6)
    assert g_size(6, 8) == 48
    g = gadget_copeland_sat_high(f, F(3, 4), g_count=48)
    assert audit_table(g) == []


def test_copeland_high_three_quarters_rejects_unsat():
    unsat = random_unsat_sat3b2(3, random.Random(5))
    assert not solve_exact(gadget_copeland_sat_high(unsat, F(3, 4)).instance).answer


def _half_flips(g, comp):
    """Literals with exactly one of their two votes reversed (d above the literal)."""
    out = []
    for name, info in g.role_map["variables"].items():
        d = g.idx(info["d"])
        for key, lab in (("pos_votes", "pos"), ("neg_votes", "neg")):
            flips = [comp[v].prefers(d, g.idx(info[lab])) for v in info[key]]
            if sum(flips) == 1:
                out.append((name, lab))
    return out


@pytest.mark.parametrize("alpha, high", [(F(1, 4), False), (F(1, 2), False), (F(1, 2), True)])
def test_copeland_alpha_half_flip_counterexample(alpha, high):
    # on an unsatisfiable formula the target still co-wins once a literal has
    # one of its two votes reversed: the literal loses 1 - alpha >= alpha while
    # d_i only gains 2 alpha <= 1, so the reduction is unsound at these alpha
    unsat = random_unsat_sat3b2(3, random.Random(5))
    assert sat_solve(unsat) is None
    gen = gadget_copeland_sat_high if high else gadget_copeland_sat_low
    g = gen(unsat, alpha)
    r = solve_exact(g.instance)
    assert r.answer is True
    assert witness_ok(g.instance, r.witness)
    assert _half_flips(g, r.witness)
    with pytest.raises(ExtractionFailed):
        extract_solution(g, r.witness)


# maximin ---------------------------------------------------------------------------

def test_lambda():
    assert [lam_for(d) for d in (1, 2, 3)] == [4, 8, 10]


def test_maximin_table():
    src = random_multicolored(3, 2, 2, random.Random(1), planted=True)
    g = gadget_maximin(src)
    assert audit_table(g) == []
    lam, d = lam_for(2), 2
    D = margin_matrix(g.base.linear_votes(), g.candidates.m)
    c = g.idx("c")
    for a, b in src.edges:
        assert D[g.idx(f"e{a + 1}_{b + 1}"), c] == lam
    s = stat_values(g, "maximin")
    assert s[c] == -lam
    assert all(s[g.idx(f"u{v + 1}")] == -(lam + 2 * d) for v in range(src.n_vertices))
    assert all(s[g.idx(f"g{i}")] == -(lam - 2 * d) for i in range(1, 4))
    assert all(v.n_undetermined <= 2 for v in g.instance.profile.votes)


def test_maximin_k2_forward_witness():
    src = random_multicolored(2, 2, 1, random.Random(3), planted=True)
    g = gadget_maximin(src)
    pick = mis_solve(src)
    assert pick is not None
    assert roundtrip(g, pick, src.check) is not None


def test_maximin_equivalence_small():
    rng = random.Random(4)
    for planted in (True, False):
        src = random_multicolored(3, 2, 2, rng, planted=planted)
        assert solve_exact(gadget_maximin(src).instance).answer == (mis_solve(src) is not None)


# Bucklin ---------------------------------------------------------------------------

def test_bucklin_table():
    src = random_regular_3dm_yes(3, random.Random(1))
    g = gadget_bucklin(src)
    t, m0 = src.t, src.m
    assert audit_table(g) == []
    assert g.instance.profile.n == 8 * t + 1
    top1 = stat_values(g, f"top{3 * m0 - 1}")
    top2 = stat_values(g, f"top{3 * m0 - 2}")
    assert top1[g.idx("c")] == 4 * t + 2 and top2[g.idx("c")] == 3 * t + 2
    assert all(top1[g.idx(f"x{a}")] == 4 * t + 3 for a in range(1, m0 + 1))
    assert all(v.n_undetermined <= 2 for v in g.instance.profile.votes)


def test_bucklin_m2_table_and_forward():
    src = random_regular_3dm_yes(2, random.Random(2))
    g = gadget_bucklin(src)
    assert audit_table(g) == [] and g.instance.profile.n == 8 * src.t + 1
    roundtrip(g, tdm_solve(src), src.check)


def test_bucklin_equivalence_m3():
    rng = random.Random(3)
    yes = random_regular_3dm_yes(3, rng)
    no = random_3dm_no(3, 0, rng, regular=True)
    assert solve_exact(gadget_bucklin(yes).instance).answer
    assert not solve_exact(gadget_bucklin(no).instance).answer


def test_bucklin_occurrence_cap():
    with pytest.raises(OccurrenceCapViolated):
        gadget_bucklin(TDM_YES)  # elements occur twice, not three times
    four = ThreeDM(1, ((0, 0, 0),) * 4)
    with pytest.raises(OccurrenceCapViolated):
        gadget_bucklin(four)


# forward/reverse error paths --------------------------------------------------------

def test_invalid_solution_rejected():
    g = gadget_scoring_11(TDM_YES, borda)
    with pytest.raises(InvalidSolution):
        witness_completion(g, (0,))
    g = gadget_2110(SAT_YES)
    bad = next(tau for tau in __import__("itertools").product((False, True), repeat=3)
               if not SAT_YES.satisfies(tau))
    with pytest.raises(InvalidSolution):
        witness_completion(g, bad)


def test_extraction_fails_loudly_on_base_profile():
    g = gadget_copeland_3dm(TDM_YES)
    with pytest.raises(ExtractionFailed):
        extract_solution(g, Profile(g.candidates, g.base.votes))


def test_sources_validate():
    with pytest.raises(InvalidSourceInstance):
        Sat3B2(3, ((1, 1, 1), (-1, -1, 2), (2, -2, -2), (3, 3, -3)))
    with pytest.raises(InvalidSourceInstance):
        ThreeDM(2, ((0, 0, 2),))
    with pytest.raises(InvalidSourceInstance):
        MulticoloredGraph(((0, 1), (2, 3)), ((0, 1), (2, 3)))


def test_random_sources():
    rng = random.Random(9)
    f = random_sat3b2(3, rng, planted=(True, False, True))
    assert f.satisfies((True, False, True))
    tdm = random_3dm(3, 6, rng)
    assert tdm_solve(tdm) is not None
    assert sat_solve(random_unsat_sat3b2(3, rng)) is None
