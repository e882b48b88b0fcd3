"""Bucklin gadget from 3DM with every element in exactly three triples (two pairs per vote).

Each triple (x, y, z) gives the vote ``U - {x,y,z} > x > y > z > others``
with x free against y and z, so x sits at position 3m - 2 and can only be
pushed out of the top 3m - 1 by ``y > z > x``.  The helper votes Q fix the
top-(3m-1) and top-(3m-2) counts so that c wins at depth 3m - 1 exactly
when the pushed-down triples form a perfect matching.
"""

from __future__ import annotations

from ..errors import ExtractionFailed, OccurrenceCapViolated
from ..orders import CandidateSet, LinearOrder, Profile
from ..rules import RuleSpec
from .base import Gadget, TableRow, assemble, cut, finish_completion, register
from .sources import ThreeDM


def gadget_bucklin(tdm: ThreeDM) -> Gadget:
    """Needs f_a = 3 for every element (hence t = 3m); anything else raises OccurrenceCapViolated.

    "others" lists the unused G candidates first, so a filled top slot never
    goes to X, Y, Z or c.
    """
    occ = tdm.occurrences()
    if any(f > 3 for f in occ.values()):
        raise OccurrenceCapViolated(f"an element occurs {max(occ.values())} times; the cap is 3")
    if any(f != 3 for f in occ.values()):
        raise OccurrenceCapViolated("every element must occur in exactly 3 triples (t = 3m)")
    m0, t = tdm.m, tdm.t
    labels = [f"{p}{a}" for p in "xyz" for a in range(1, m0 + 1)] + ["c"]
    labels += [f"g{i}_{j}" for i in (1, 2, 3) for j in range(1, 3 * m0 + 1)]
    cs = CandidateSet(tuple(labels))
    I = cs.index
    X = [I(f"x{a}") for a in range(1, m0 + 1)]
    Y = [I(f"y{a}") for a in range(1, m0 + 1)]
    Z = [I(f"z{a}") for a in range(1, m0 + 1)]
    c = I("c")
    G = {i: [I(f"g{i}_{j}") for j in range(1, 3 * m0 + 1)] for i in (1, 2, 3)}
    Gall = G[1] + G[2] + G[3]
    U = X + Y + Z

    def vote(*parts) -> LinearOrder:
        head = [u for p in parts for u in p]
        used = set(head)
        tail = [g for g in Gall if g not in used] + [u for u in range(cs.m) if u not in used and u not in Gall]
        return LinearOrder(tuple(head + tail))

    def Gs(i, j):
        return G[i][:j]

    partial, base_p = [], []
    role = {"target": "c", "triples": [], "depth": 3 * m0 - 1}
    for (a, b, cc) in tdm.triples:
        x, y, z = X[a], Y[b], Z[cc]
        lo = vote([u for u in U if u not in (x, y, z)], [x, y, z])
        role["triples"].append({"x": cs.label(x), "y": cs.label(y), "z": cs.label(z), "vote": len(partial)})
        partial.append(cut(lo.ranking, [(x, y), (x, z)]))
        base_p.append(lo)
    f = {u: occ[(p, k)] for p, S in (("x", X), ("y", Y), ("z", Z)) for k, u in enumerate(S)}
    Q = []
    for z in Z:
        Q += [vote([c], Gs(1, 3 * m0 - 4), [z])] * (f[z] - 1)
        Q += [vote([c], Gs(1, 3 * m0 - 3), [z])]
    for y in Y:
        Q += [vote(Gs(1, 3 * m0 - 3), [y, c])] * f[y]
    for x in X:
        Q += [vote([u for u in X if u != x], Y, Gs(2, m0 - 1), [x])] * 3
    Q += [vote(X, Y, Gs(2, m0))] * (t - 3 * m0)
    Q += [vote(Z, Gs(2, 2 * m0))] * (t - 1)
    Q += [vote(Z, X, Gs(2, m0))]
    Q += [vote([c], X, Y, Gs(2, m0))] * t
    Q += [vote([c], Y, Z, Gs(3, m0))] * (t - 1)
    Q += [vote([c], Z, X, Gs(3, m0))]
    Q += [vote(Z, X, Gs(3, m0))] * (t - 2)
    Q += [vote([c], Z, X, Gs(3, m0))] * 2
    Q += [vote(Z, X, Gs(3, m0))]
    k1, k2 = f"top{3 * m0 - 1}", f"top{3 * m0 - 2}"
    # at m = 2 prefixes such as c > Z > X are longer than 3m - 2, so the
    # top-(3m-2) counts of X, Y, Z are only upper bounds
    op2 = "<=" if m0 == 2 else "=="
    table = [TableRow(k1, "c", "==", 4 * t + 2), TableRow(k2, "c", "==", 3 * t + 2)]
    for u in X:
        table += [TableRow(k1, cs.label(u), "==", 4 * t + 3), TableRow(k2, cs.label(u), op2, 4 * t)]
    for u in Y:
        table += [TableRow(k1, cs.label(u), "<=", 4 * t + 2), TableRow(k2, cs.label(u), op2, 4 * t - 1)]
    for u in Z:
        table += [TableRow(k1, cs.label(u), "==", 4 * t + 1), TableRow(k2, cs.label(u), op2, 4 * t)]
    for u in Gall:
        table += [TableRow(k1, cs.label(u), "<", 4 * t), TableRow(k2, cs.label(u), "<", 4 * t)]
    return assemble("bucklin", tdm, cs, RuleSpec.bucklin(), "c", partial, base_p, Q, role,
                    ("bucklin", 2), table, {"n_votes": len(partial) + len(Q)})


def _complete(g: Gadget, sel) -> Profile:
    tdm: ThreeDM = g.source
    tdm.check(sel)
    chosen = {}
    for k in sel:
        info = g.role_map["triples"][k]
        x = g.idx(info["x"])
        r = list(g.base.votes[info["vote"]].ranking)
        p = r.index(x)
        # x > y > z  becomes  y > z > x
        r[p], r[p + 1], r[p + 2] = r[p + 1], r[p + 2], x
        chosen[info["vote"]] = r
    return finish_completion(g, chosen)


def _extract(g: Gadget, comp: Profile):
    tdm: ThreeDM = g.source
    depth = g.role_map["depth"]
    sel = tuple(k for k, info in enumerate(g.role_map["triples"])
                if comp.votes[info["vote"]].ranking.index(g.idx(info["x"])) >= depth)
    if not tdm.is_matching(sel):
        raise ExtractionFailed(f"triples with x outside the top {depth} {sel} are not a perfect matching")
    return sel


register("bucklin", _complete, _extract)
