"""Gadgets for positional scoring rules.

* ``gadget_scoring_differentiating``: (3,B2)-SAT, one undetermined pair per vote.
* ``gadget_scoring_11`` / ``gadget_scoring_101``: 3DM, two or three pairs per vote.
* ``gadget_2110``: (3,B2)-SAT for (2,1,...,1,0), up to m-1 pairs per vote.

The helper votes W are built by ``build_score_profile`` so that every named
candidate ends at a prescribed offset from the reference candidate (``w`` or
``c``) once the uncut votes P are added; dummies stay strictly below it.
"""

from __future__ import annotations

from typing import Callable

from ..builders import ScoreTarget, build_score_profile
from ..errors import ExtractionFailed, NoDifferentiatingPositions, PatternAbsent
from ..orders import CandidateSet, LinearOrder, Profile
from ..rules import RuleSpec, ScoreVector, normalize, positional_scores, two_one_zero
from .base import Gadget, TableRow, assemble, cut, finish_completion, in_order, register
from .sources import Sat3B2, ThreeDM

SvArg = ScoreVector | Callable[[int], ScoreVector] | RuleSpec


def resolve_sv(sv: SvArg, m: int) -> ScoreVector:
    """The normalised score vector of length ``m`` (a family is called with ``m``)."""
    if isinstance(sv, RuleSpec):
        sv = sv.scores
    if callable(sv) and not isinstance(sv, ScoreVector):
        sv = sv(m)
    if not isinstance(sv, ScoreVector):
        sv = normalize(sv)
    if sv.m != m:
        raise ValueError(f"score vector has length {sv.m}, the gadget needs {m} candidates")
    return normalize(sv.scores)


def from_bottom(sv: ScoreVector, j: int) -> int:
    """alpha_j with alpha_1 the last position."""
    return sv.scores[sv.m - j]


def score_helper(sv: ScoreVector, cs: CandidateSet, base_p, offsets: dict[int, int], dummies):
    """Votes W with s_{P+W}(x) = lam + offsets[x] and dummies below lam."""
    sp = positional_scores(sv, list(base_p))
    named = tuple(sorted(offsets))
    margin = max(sp[d] for d in dummies) + 1
    st = ScoreTarget(named, tuple(offsets[x] - sp[x] for x in named), tuple(dummies), margin)
    build = build_score_profile(sv, st, cs)
    return list(build.profile.votes), build.lam


def _literal_labels(lit: int) -> str:
    return f"b{abs(lit)}" if lit > 0 else f"b{abs(lit)}'"


# Differentiating rules ----------------------------------------------------------

def differentiating_positions(sv: ScoreVector) -> tuple[int, int, int, int]:
    """``(p, q, D, d)`` with alpha_p - alpha_{p-1} = D > d = alpha_q - alpha_{q-1} >= 1 and |p-q| > 1."""
    m = sv.m
    diff = {j: from_bottom(sv, j) - from_bottom(sv, j - 1) for j in range(2, m + 1)}
    for p in range(2, m + 1):
        for q in range(2, m + 1):
            if abs(p - q) > 1 and diff[p] > diff[q] >= 1:
                return p, q, diff[p], diff[q]
    raise NoDifferentiatingPositions(f"no positions p, q with |p-q|>1 and D > d >= 1 in {sv.scores}")


def gadget_scoring_differentiating(sat: Sat3B2, sv: SvArg) -> Gadget:
    n, t = sat.n, sat.t
    labels = [lab for i in range(1, n + 1) for lab in (f"b{i}", f"b{i}'")]
    labels += [f"e{j}" for j in range(1, t + 1)] + ["w", "g"]
    cs = CandidateSet(tuple(labels))
    m = cs.m
    sv = resolve_sv(sv, m)
    p, q, D, d = differentiating_positions(sv)
    I = cs.index
    partial, base_p = [], []
    role = {"target": "w", "dummy": "g", "p": p, "q": q, "D": D, "d": d, "variables": {}, "clauses": {}}
    for i in range(1, n + 1):
        b, b2 = I(f"b{i}"), I(f"b{i}'")
        others = in_order(cs, (b, b2))
        rank = others[:m - p] + [b, b2] + others[m - p:]
        role["variables"][f"x{i}"] = {"pos": f"b{i}", "neg": f"b{i}'", "vote": len(partial)}
        partial.append(cut(rank, [(b, b2)]))
        base_p.append(LinearOrder(tuple(rank)))
    for j, cl in enumerate(sat.clauses, 1):
        e = I(f"e{j}")
        votes = []
        for lit in cl:
            ls = I(_literal_labels(lit))
            others = in_order(cs, (e, ls))
            rank = others[:m - q] + [e, ls] + others[m - q:]
            votes.append(len(partial))
            partial.append(cut(rank, [(e, ls)]))
            base_p.append(LinearOrder(tuple(rank)))
        role["clauses"][f"c{j}"] = {"candidate": f"e{j}", "literals": list(cl), "votes": votes}
    off = {I("w"): 0}
    for i in range(1, n + 1):
        off[I(f"b{i}")] = 1 - d
        off[I(f"b{i}'")] = 1 - d - D
    for j in range(1, t + 1):
        off[I(f"e{j}")] = d
    W, lam = score_helper(sv, cs, base_p, off, [I("g")])
    table = [TableRow("score", cs.label(x), "==", lam + o) for x, o in off.items()]
    table.append(TableRow("score", "g", "<", lam))
    rule = RuleSpec.scoring(sv)
    return assemble("scoring_differentiating", sat, cs, rule, "w", partial, base_p, W, role,
                    ("scoring, differentiating", 1), table, {"lam": lam})


def _complete_differentiating(g: Gadget, tau) -> Profile:
    sat: Sat3B2 = g.source
    sat.check(tau)
    chosen = {}
    for i in range(1, sat.n + 1):
        info = g.role_map["variables"][f"x{i}"]
        if tau[i - 1]:
            chosen[info["vote"]] = _swap(g, info["vote"], g.idx(info["pos"]), g.idx(info["neg"]))
    for j, cl in enumerate(sat.clauses, 1):
        info = g.role_map["clauses"][f"c{j}"]
        k = next(k for k, lit in enumerate(cl) if tau[abs(lit) - 1] == (lit > 0))
        v = info["votes"][k]
        chosen[v] = _swap(g, v, g.idx(info["candidate"]), g.idx(_literal_labels(cl[k])))
    return finish_completion(g, chosen)


def _extract_differentiating(g: Gadget, comp: Profile):
    sat: Sat3B2 = g.source
    tau = []
    for i in range(1, sat.n + 1):
        info = g.role_map["variables"][f"x{i}"]
        w = comp.votes[info["vote"]]
        tau.append(bool(w.prefers(g.idx(info["neg"]), g.idx(info["pos"]))))
    tau = tuple(tau)
    if not sat.satisfies(tau):
        raise ExtractionFailed("assignment read from the (b_i, b_i') pairs does not satisfy the formula")
    return tau


def _swap(g: Gadget, vote: int, a: int, b: int) -> list[int]:
    """The base ranking of ``vote`` with candidates ``a`` and ``b`` exchanged."""
    r = list(g.base.votes[vote].ranking)
    ia, ib = r.index(a), r.index(b)
    r[ia], r[ib] = r[ib], r[ia]
    return r


# <1,1> and <1,0,1> contaminated rules ---------------------------------------------

def pattern_index(sv: ScoreVector, pattern: tuple[int, ...]) -> int:
    """Smallest ``i`` with alpha_{i+k+1} - alpha_{i+k} = pattern[k] for every k."""
    m = sv.m
    for i in range(1, m - len(pattern) + 1):
        if all(from_bottom(sv, i + k + 1) - from_bottom(sv, i + k) == pk for k, pk in enumerate(pattern)):
            return i
    raise PatternAbsent(f"pattern {pattern} does not occur in {sv.scores}")


def _tdm_labels(m: int) -> list[str]:
    return [f"{p}{a}" for p in "xyz" for a in range(1, m + 1)]


def _gadget_tdm_scoring(tdm: ThreeDM, sv: SvArg, with_d_in_block: bool) -> Gadget:
    m0 = tdm.m
    cs = CandidateSet(tuple(_tdm_labels(m0) + ["c", "d"]))
    m = cs.m
    sv = resolve_sv(sv, m)
    pattern = (1, 0, 1) if with_d_in_block else (1, 1)
    i = pattern_index(sv, pattern)
    I = cs.index
    dd = I("d")
    partial, base_p = [], []
    role = {"target": "c", "dummy": "d", "i": i, "triples": []}
    for (a, b, c_) in tdm.triples:
        x, y, z = I(f"x{a + 1}"), I(f"y{b + 1}"), I(f"z{c_ + 1}")
        block = [x, y, dd, z] if with_d_in_block else [x, y, z]
        pool = in_order(cs, block)
        Cs = pool[:i - 1]
        front = [u for u in pool if u not in Cs]
        rank = front + block + Cs
        removed = [(x, y), (x, z)] + ([(x, dd)] if with_d_in_block else [])
        role["triples"].append({"x": cs.label(x), "y": cs.label(y), "z": cs.label(z), "vote": len(partial)})
        partial.append(cut(rank, removed))
        base_p.append(LinearOrder(tuple(rank)))
    off = {I("c"): 0}
    for a in range(1, m0 + 1):
        off[I(f"x{a}")] = 2
        off[I(f"y{a}")] = -1
        off[I(f"z{a}")] = -1
    W, lam = score_helper(sv, cs, base_p, off, [dd])
    table = [TableRow("score", cs.label(x), "==", lam + o) for x, o in off.items()]
    table.append(TableRow("score", "d", "<", lam))
    kind = "scoring_101" if with_d_in_block else "scoring_11"
    bound = 3 if with_d_in_block else 2
    rule = RuleSpec.scoring(sv)
    return assemble(kind, tdm, cs, rule, "c", partial, base_p, W, role,
                    (f"scoring, {'<1,0,1>' if with_d_in_block else '<1,1>'}-contaminated", bound),
                    table, {"lam": lam})


def gadget_scoring_11(tdm: ThreeDM, sv: SvArg) -> Gadget:
    return _gadget_tdm_scoring(tdm, sv, with_d_in_block=False)


def gadget_scoring_101(tdm: ThreeDM, sv: SvArg) -> Gadget:
    return _gadget_tdm_scoring(tdm, sv, with_d_in_block=True)


def _complete_tdm_scoring(g: Gadget, sel) -> Profile:
    tdm: ThreeDM = g.source
    tdm.check(sel)
    chosen = {}
    for k in sel:
        info = g.role_map["triples"][k]
        x = g.idx(info["x"])
        r = [u for u in g.base.votes[info["vote"]].ranking]
        # x drops below the rest of its block: y > z > x (or y > d > z > x)
        z = g.idx(info["z"])
        r.remove(x)
        r.insert(r.index(z) + 1, x)
        chosen[info["vote"]] = r
    return finish_completion(g, chosen)


def _extract_tdm_scoring(g: Gadget, comp: Profile):
    tdm: ThreeDM = g.source
    sel = tuple(k for k, info in enumerate(g.role_map["triples"])
                if comp.votes[info["vote"]].prefers(g.idx(info["z"]), g.idx(info["x"])))
    if not tdm.is_matching(sel):
        raise ExtractionFailed(f"triples with x below z {sel} are not a perfect matching")
    return sel


# (2,1,...,1,0) ----------------------------------------------------------------

def gadget_2110(sat: Sat3B2) -> Gadget:
    n, t = sat.n, sat.t
    labels = [lab for i in range(1, n + 1) for lab in (f"w{i}", f"d{i}", f"b{i}", f"b{i}'")]
    labels += [f"e{j}" for j in range(1, t + 1)] + ["w", "g"]
    cs = CandidateSet(tuple(labels))
    m = cs.m
    sv = two_one_zero(m)
    I = cs.index
    partial, base_p = [], []
    role = {"target": "w", "dummies": ["g"] + [f"d{i}" for i in range(1, n + 1)], "variables": {}, "clauses": {}}
    for i in range(1, n + 1):
        wi, di = I(f"w{i}"), I(f"d{i}")
        info = {"pos": f"b{i}", "neg": f"b{i}'", "w": f"w{i}", "d": f"d{i}"}
        for key, lab in (("a_vote", f"b{i}"), ("b_vote", f"b{i}'")):
            b = I(lab)
            rank = [wi] + in_order(cs, (wi, b, di)) + [di, b]
            info[key] = len(partial)
            partial.append(cut(rank, [(b, y) for y in range(m) if y != b]))
            base_p.append(LinearOrder(tuple(rank)))
        role["variables"][f"x{i}"] = info
    for j, cl in enumerate(sat.clauses, 1):
        e = I(f"e{j}")
        votes = []
        for lit in cl:
            ls = I(_literal_labels(lit))
            rank = in_order(cs, (e, ls)) + [e, ls]
            votes.append(len(partial))
            partial.append(cut(rank, [(e, ls)]))
            base_p.append(LinearOrder(tuple(rank)))
        role["clauses"][f"c{j}"] = {"candidate": f"e{j}", "literals": list(cl), "votes": votes}
    off = {I("w"): 0}
    for i in range(1, n + 1):
        off[I(f"w{i}")] = 1
        off[I(f"b{i}")] = -2
        off[I(f"b{i}'")] = -2
    for j in range(1, t + 1):
        off[I(f"e{j}")] = 1
    dummies = [I("g")] + [I(f"d{i}") for i in range(1, n + 1)]
    W, lam = score_helper(sv, cs, base_p, off, dummies)
    table = [TableRow("score", cs.label(x), "==", lam + o) for x, o in off.items()]
    table += [TableRow("score", cs.label(x), "<", lam) for x in dummies]
    rule = RuleSpec.scoring(sv, name="twoonezero")
    return assemble("2110", sat, cs, rule, "w", partial, base_p, W, role,
                    ("scoring, (2,1,...,1,0)", m - 1), table, {"lam": lam})


def _complete_2110(g: Gadget, tau) -> Profile:
    sat: Sat3B2 = g.source
    sat.check(tau)
    chosen = {}
    for i in range(1, sat.n + 1):
        info = g.role_map["variables"][f"x{i}"]
        # the false literal's candidate goes to the top of its vote: b > w_i > ... > d_i
        key, lab = ("b_vote", info["neg"]) if tau[i - 1] else ("a_vote", info["pos"])
        v, b = info[key], g.idx(lab)
        r = [u for u in g.base.votes[v].ranking if u != b]
        chosen[v] = [b] + r
    for j, cl in enumerate(sat.clauses, 1):
        info = g.role_map["clauses"][f"c{j}"]
        k = next(k for k, lit in enumerate(cl) if tau[abs(lit) - 1] == (lit > 0))
        v = info["votes"][k]
        chosen[v] = _swap(g, v, g.idx(info["candidate"]), g.idx(_literal_labels(cl[k])))
    return finish_completion(g, chosen)


def _extract_2110(g: Gadget, comp: Profile):
    sat: Sat3B2 = g.source
    tau = []
    for i in range(1, sat.n + 1):
        info = g.role_map["variables"][f"x{i}"]
        top = comp.votes[info["a_vote"]].ranking[0]
        tau.append(top != g.idx(info["pos"]))
    tau = tuple(tau)
    if not sat.satisfies(tau):
        raise ExtractionFailed("assignment read from the a-votes does not satisfy the formula")
    return tau


register("scoring_differentiating", _complete_differentiating, _extract_differentiating)
register("scoring_11", _complete_tdm_scoring, _extract_tdm_scoring)
register("scoring_101", _complete_tdm_scoring, _extract_tdm_scoring)
register("2110", _complete_2110, _extract_2110)
