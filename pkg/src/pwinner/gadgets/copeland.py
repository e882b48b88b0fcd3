"""Gadgets for Copeland^alpha.

``gadget_copeland_3dm`` (3DM, two pairs per vote, odd margins) and the two
(3,B2)-SAT gadgets with one pair per vote and even margins, one for
alpha in (0, 1/2] and one for alpha in [1/2, 1).

Pairwise margins of P ∪ Q are written down as a full target matrix and Q is
realised with McGarvey blocks.  Margins the constructions leave open are
fixed here and compensated inside G so the score tables stay exact; see the
module-level helpers for the exact choices.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..errors import AlphaOutOfRange, ExtractionFailed, TableMismatch
from ..orders import CandidateSet, LinearOrder, Profile
from ..rules import RuleSpec
from .base import Gadget, TableRow, assemble, cut, finish_completion, in_order, margin_helper, register
from .sources import Sat3B2, ThreeDM


def _set(T: np.ndarray, a: int, b: int, v: int):
    T[a, b], T[b, a] = v, -v


def _cyclic_g(T: np.ndarray, G: list[int], win: int, tie_default: int):
    """g_j beats g_i when 1 <= (j - i) mod N <= (N-1)//2; opposite pairs get ``tie_default``."""
    N = len(G)
    h = (N - 1) // 2
    for a in range(N):
        for b in range(a + 1, N):
            k = (b - a) % N
            if 1 <= k <= h:
                _set(T, G[b], G[a], win)
            elif 1 <= (a - b) % N <= h:
                _set(T, G[a], G[b], win)
            else:
                _set(T, G[a], G[b], tie_default)


# Copeland, 3DM --------------------------------------------------------------------

def gadget_copeland_3dm(tdm: ThreeDM, alpha=Fraction(1, 2)) -> Gadget:
    """Odd margins everywhere; undetermined margins point toward the earlier candidate.

    Wins inside X, inside Y, inside Z and from Y over Z are not in the table;
    each candidate gives up as many wins against G as it collects there.
    """
    m0 = tdm.m
    labels = [f"{p}{a}" for p in "xyz" for a in range(1, m0 + 1)] + ["c"] + [f"g{i}" for i in range(1, 10 * m0 + 1)]
    cs = CandidateSet(tuple(labels))
    m, I = cs.m, cs.index
    X = [I(f"x{a}") for a in range(1, m0 + 1)]
    Y = [I(f"y{a}") for a in range(1, m0 + 1)]
    Z = [I(f"z{a}") for a in range(1, m0 + 1)]
    G = [I(f"g{i}") for i in range(1, 10 * m0 + 1)]
    c = I("c")
    T = np.zeros((m, m), dtype=np.int64)
    # defaults: +1 toward the candidate built first
    for a in range(m):
        for b in range(a + 1, m):
            _set(T, a, b, 1)
    for x in X:
        for y in Y + Z:
            _set(T, x, y, 1)
    for u in X + Y + Z:
        _set(T, u, c, 1)
    for g in G:
        _set(T, c, g, 1)
    _cyclic_g(T, G, 1, 1)
    internal = {u: int(sum(T[u, v] > 0 for v in X + Y + Z if v != u and not (u in X and v in Y + Z)))
                for u in X + Y + Z}
    for x in X:
        k = 8 * m0 + 1 - internal[x]
        for i, g in enumerate(G):
            _set(T, x, g, 1 if i < k else -1)
    for u in Y + Z:
        k = 10 * m0 - 2 - internal[u]
        for i, g in enumerate(G):
            _set(T, u, g, 1 if i < k else -1)
    partial, base_p = [], []
    role = {"target": "c", "triples": [], "internal_wins": {cs.label(u): w for u, w in internal.items()}}
    for (a, b, cc) in tdm.triples:
        x, y, z = X[a], Y[b], Z[cc]
        rank = in_order(cs, (x, y, z)) + [x, y, z]
        role["triples"].append({"x": cs.label(x), "y": cs.label(y), "z": cs.label(z), "vote": len(partial)})
        partial.append(cut(rank, [(x, y), (x, z)]))
        base_p.append(LinearOrder(tuple(rank)))
    Q = margin_helper(cs, T, base_p).votes
    table = [TableRow("copeland", "c", "==", Fraction(10 * m0))]
    table += [TableRow("copeland", cs.label(x), "==", Fraction(10 * m0 + 2)) for x in X]
    table += [TableRow("copeland", cs.label(u), "==", Fraction(10 * m0 - 1)) for u in Y + Z]
    table += [TableRow("copeland", cs.label(g), "<", Fraction(9 * m0)) for g in G]
    return assemble("copeland_3dm", tdm, cs, RuleSpec.copeland(alpha), "c", partial, base_p, Q, role,
                    ("copeland", 2), table)


def _complete_cop3dm(g: Gadget, sel) -> Profile:
    tdm: ThreeDM = g.source
    tdm.check(sel)
    chosen = {}
    for k in sel:
        info = g.role_map["triples"][k]
        x = g.idx(info["x"])
        r = [u for u in g.base.votes[info["vote"]].ranking if u != x]
        chosen[info["vote"]] = r + [x]
    return finish_completion(g, chosen)


def _extract_cop3dm(g: Gadget, comp: Profile):
    tdm: ThreeDM = g.source
    sel = tuple(k for k, info in enumerate(g.role_map["triples"])
                if comp.votes[info["vote"]].prefers(g.idx(info["z"]), g.idx(info["x"])))
    if not tdm.is_matching(sel):
        raise ExtractionFailed(f"triples with x last {sel} are not a perfect matching")
    return sel


# Copeland^alpha, one pair per vote -------------------------------------------------

def g_size(n: int, m: int) -> int:
    """Size of G: n*m as in the construction, enlarged when the G-subsets of d_i do not fit.

    With d-d pairs tied, d_i needs (n+m+1) ties and 3nm/4 - m + n - 2 wins
    inside G, i.e. |G| >= 3nm/4 + 2n - 1, which fails for n = 3.
    """
    return max(n * m, 3 * n * m // 4 + 2 * n - 1)


def _sat_alpha(sat: Sat3B2, alpha, high: bool, g_count: int | None = None) -> Gadget:
    a = Fraction(alpha)
    if high and not (Fraction(1, 2) <= a < 1):
        raise AlphaOutOfRange(f"alpha {a} not in [1/2, 1)")
    if not high and not (0 < a <= Fraction(1, 2)):
        raise AlphaOutOfRange(f"alpha {a} not in (0, 1/2]")
    n, mc = sat.n, sat.t
    if (3 * n * mc) % 4:
        raise AlphaOutOfRange("3nm/4 must be an integer")
    q3 = 3 * n * mc // 4
    N = g_size(n, mc) if g_count is None else g_count
    labels = [f"x{i}" for i in range(1, n + 1)] + [f"x{i}'" for i in range(1, n + 1)]
    labels += [f"d{i}" for i in range(1, n + 1)] + [f"c{j}" for j in range(1, mc + 1)] + ["c"]
    labels += [f"g{i}" for i in range(1, N + 1)]
    cs = CandidateSet(tuple(labels))
    m, I = cs.m, cs.index
    Xp = [I(f"x{i}") for i in range(1, n + 1)]
    Xn = [I(f"x{i}'") for i in range(1, n + 1)]
    Dd = [I(f"d{i}") for i in range(1, n + 1)]
    Cl = [I(f"c{j}") for j in range(1, mc + 1)]
    G = [I(f"g{i}") for i in range(1, N + 1)]
    c = I("c")
    T = np.zeros((m, m), dtype=np.int64)  # unspecified margins are 0

    def g_roles(u, wins, ties, start):
        """u beats ``wins`` members of G, ties ``ties`` of them, loses to the rest.

        Windows start at a per-candidate offset so the G-candidates share the
        losses evenly and stay below the target.
        """
        if wins + ties > N:
            raise TableMismatch(f"|G| = {N} is too small: {cs.label(u)} needs {wins} wins and {ties} ties in G")
        for k in range(N):
            g = G[(start + k) % N]
            if k < wins:
                _set(T, u, g, 2)
            elif k < wins + ties:
                _set(T, u, g, 0)
            else:
                _set(T, g, u, 2)

    start = 0
    step = 1
    lits = Xp + Xn
    for u in lits:
        for dj in Dd:
            _set(T, u, dj, 2)
        if high:
            g_roles(u, q3, 0, start)
        else:
            for cj in Cl:
                _set(T, cj, u, 2)
            g_roles(u, q3, mc, start)
        start += step
    g_roles(c, n + q3, 0, start)
    start += step
    for dj in Dd:
        _set(T, dj, c, 2)
    for cj in Cl:
        for dk in Dd:
            _set(T, dk, cj, 2)
        if high:
            # ties one g outside its winning window
            g_roles(cj, q3 + n, 1, start)
        else:
            g_roles(cj, q3 - n + 1, 2 * n - 1, start)
        start += step
    for dj in Dd:
        # d-d pairs stay tied (n-1 ties), so d_i ties n-1 fewer members of G
        g_roles(dj, q3 - mc + n - 2, 2 * n + mc - (n - 1), start)
        start += step
    _cyclic_g(T, G, 2, 0)

    partial, base_p = [], []
    role = {"target": "c", "variables": {}, "clauses": {}, "G": N, "high": high}
    for i in range(n):
        info = {"pos": cs.label(Xp[i]), "neg": cs.label(Xn[i]), "d": cs.label(Dd[i])}
        for key, lit in (("pos_votes", Xp[i]), ("neg_votes", Xn[i])):
            vs = []
            for _ in range(2):
                rank = [lit, Dd[i]] + in_order(cs, (lit, Dd[i]))
                vs.append(len(partial))
                partial.append(cut(rank, [(lit, Dd[i])]))
                base_p.append(LinearOrder(tuple(rank)))
            info[key] = vs
        role["variables"][f"x{i + 1}"] = info
    for j, cl in enumerate(sat.clauses):
        vs = []
        for lit in cl:
            ls = Xp[lit - 1] if lit > 0 else Xn[-lit - 1]
            rank = [Cl[j], ls] + in_order(cs, (Cl[j], ls))
            vs.append(len(partial))
            partial.append(cut(rank, [(Cl[j], ls)]))
            base_p.append(LinearOrder(tuple(rank)))
        role["clauses"][f"c{j + 1}"] = {"candidate": cs.label(Cl[j]), "literals": list(cl), "votes": vs}
    Q = margin_helper(cs, T, base_p).votes
    base_score = (2 * n + mc) * a + n + q3
    table = [TableRow("copeland", "c", "==", base_score)]
    table += [TableRow("copeland", cs.label(u), "==", base_score) for u in lits]
    cj_score = (2 * n + mc + 1) * a + n + q3 if high else (2 * n + mc - 1) * a + n + q3 + 1
    table += [TableRow("copeland", cs.label(u), "==", cj_score) for u in Cl]
    table += [TableRow("copeland", cs.label(u), "==", base_score - 1) for u in Dd]
    table += [TableRow("copeland", cs.label(g), "<", base_score) for g in G]
    kind = "copeland_sat_high" if high else "copeland_sat_low"
    return assemble(kind, sat, cs, RuleSpec.copeland(a), "c", partial, base_p, Q, role,
                    (f"copeland alpha={a}", 1), table, {"g_bound_unenlarged": q3})


def gadget_copeland_sat_low(sat: Sat3B2, alpha=Fraction(1, 4), g_count: int | None = None) -> Gadget:
    """alpha in (0, 1/2].  ``g_count`` overrides |G| (``n*m`` reproduces the unenlarged size)."""
    return _sat_alpha(sat, alpha, high=False, g_count=g_count)


def gadget_copeland_sat_high(sat: Sat3B2, alpha=Fraction(3, 4), g_count: int | None = None) -> Gadget:
    """alpha in [1/2, 1).  ``g_count`` as for the low variant."""
    return _sat_alpha(sat, alpha, high=True, g_count=g_count)


def _complete_sat_alpha(g: Gadget, tau) -> Profile:
    sat: Sat3B2 = g.source
    sat.check(tau)
    chosen = {}
    for i in range(sat.n):
        info = g.role_map["variables"][f"x{i + 1}"]
        # the true literal drops below d_i in both of its votes
        key, lab = ("pos_votes", info["pos"]) if tau[i] else ("neg_votes", info["neg"])
        for v in info[key]:
            r = list(g.base.votes[v].ranking)
            r[0], r[1] = r[1], r[0]
            chosen[v] = r
    for j, cl in enumerate(sat.clauses):
        info = g.role_map["clauses"][f"c{j + 1}"]
        k = next(k for k, lit in enumerate(cl) if tau[abs(lit) - 1] == (lit > 0))
        v = info["votes"][k]
        r = list(g.base.votes[v].ranking)
        r[0], r[1] = r[1], r[0]
        chosen[v] = r
    return finish_completion(g, chosen)


def _extract_sat_alpha(g: Gadget, comp: Profile):
    sat: Sat3B2 = g.source
    tau = []
    for i in range(sat.n):
        info = g.role_map["variables"][f"x{i + 1}"]
        x, d = g.idx(info["pos"]), g.idx(info["d"])
        tau.append(all(comp.votes[v].prefers(d, x) for v in info["pos_votes"]))
    tau = tuple(tau)
    if not sat.satisfies(tau):
        raise ExtractionFailed("assignment read from the (x_i, d_i) votes does not satisfy the formula")
    return tau


register("copeland_3dm", _complete_cop3dm, _extract_cop3dm)
register("copeland_sat_low", _complete_sat_alpha, _extract_sat_alpha)
register("copeland_sat_high", _complete_sat_alpha, _extract_sat_alpha)
