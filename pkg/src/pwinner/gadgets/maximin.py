"""Maximin gadget from d-multicoloured independent set (two pairs per vote).

Candidates are the vertices, the edges, c, and a pair g_i > g_i' per colour.
Each vertex u of colour i gets d votes ``... > g_i > g_i' > u`` with u free
against both g's; each edge e = uv gets one vote per endpoint
``... > e > g' > u`` with u free against e and g'.
"""

from __future__ import annotations

import numpy as np

from ..errors import ExtractionFailed
from ..orders import CandidateSet, LinearOrder, Profile
from ..rules import RuleSpec
from .base import Gadget, TableRow, assemble, cut, finish_completion, in_order, margin_helper, register
from .sources import MulticoloredGraph


def lam_for(d: int) -> int:
    """Smallest even integer above 3d."""
    return 3 * d // 2 * 2 + 2


def gadget_maximin(g: MulticoloredGraph) -> Gadget:
    d, k = g.d, g.k
    lam = lam_for(d)
    vlab = [f"u{v + 1}" for v in range(g.n_vertices)]
    elab = [f"e{a + 1}_{b + 1}" for a, b in g.edges]
    glab = [s for i in range(1, k + 1) for s in (f"g{i}", f"g{i}'")]
    cs = CandidateSet(tuple(vlab + elab + ["c"] + glab))
    m, I = cs.m, cs.index
    V = [I(s) for s in vlab]
    E = [I(s) for s in elab]
    c = I("c")
    gi = [I(f"g{i}") for i in range(1, k + 1)]
    gp = [I(f"g{i}'") for i in range(1, k + 1)]
    col = [g.color(v) for v in range(g.n_vertices)]

    T = np.zeros((m, m), dtype=np.int64)

    def put(a, b, v):
        T[a, b], T[b, a] = v, -v

    for e in E:
        put(e, c, lam)
        for x in gp:
            put(e, x, lam)
    for v, u in enumerate(V):
        put(u, gi[col[v]], lam - 2 * d)
        put(gp[col[v]], u, lam + 2 * d)
    for j, (a, b) in enumerate(g.edges):
        put(V[a], E[j], lam - 2)
        put(V[b], E[j], lam - 2)

    partial, base_p = [], []
    role = {"target": "c", "vertex_votes": {}, "edge_votes": {}, "lambda": lam, "d": d}
    for v, u in enumerate(V):
        a, b = gi[col[v]], gp[col[v]]
        rank = in_order(cs, (u, a, b)) + [a, b, u]
        idx = []
        for _ in range(d):
            idx.append(len(partial))
            partial.append(cut(rank, [(a, u), (b, u)]))
            base_p.append(LinearOrder(tuple(rank)))
        role["vertex_votes"][vlab[v]] = idx
    for j, (a0, b0) in enumerate(g.edges):
        e = E[j]
        ent = {}
        for v in (a0, b0):
            u, x = V[v], gp[col[v]]
            rank = in_order(cs, (u, x, e)) + [e, x, u]
            ent[vlab[v]] = len(partial)
            partial.append(cut(rank, [(e, u), (x, u)]))
            base_p.append(LinearOrder(tuple(rank)))
        role["edge_votes"][elab[j]] = ent
    Q = margin_helper(cs, T, base_p).votes
    table = [TableRow("maximin", "c", "==", -lam)]
    table += [TableRow("maximin", s, "==", -(lam + 2 * d)) for s in vlab]
    table += [TableRow("maximin", s, "==", -(lam - 2)) for s in elab]
    table += [TableRow("maximin", cs.label(x), "==", -(lam - 2 * d)) for x in gi]
    table += [TableRow("maximin", cs.label(x), "==", -lam) for x in gp]
    return assemble("maximin", g, cs, RuleSpec.maximin(), "c", partial, base_p, Q, role,
                    ("maximin", 2), table)


def _complete(gd: Gadget, pick) -> Profile:
    src: MulticoloredGraph = gd.source
    src.check(pick)
    chosen_set = set(pick)
    chosen = {}
    for v in pick:
        u = gd.idx(f"u{v + 1}")
        for i in gd.role_map["vertex_votes"][f"u{v + 1}"]:
            r = [x for x in gd.base.votes[i].ranking if x != u]
            chosen[i] = r[:-2] + [u] + r[-2:]
    for j, (a, b) in enumerate(src.edges):
        v = a if a not in chosen_set else b
        i = gd.role_map["edge_votes"][f"e{a + 1}_{b + 1}"][f"u{v + 1}"]
        u = gd.idx(f"u{v + 1}")
        r = [x for x in gd.base.votes[i].ranking if x != u]
        chosen[i] = r[:-2] + [u] + r[-2:]
    return finish_completion(gd, chosen)


def _extract(gd: Gadget, comp: Profile):
    src: MulticoloredGraph = gd.source
    pick = []
    for i, part in enumerate(src.parts):
        gi = gd.idx(f"g{i + 1}")
        good = [v for v in part
                if all(comp.votes[k].prefers(gd.idx(f"u{v + 1}"), gi)
                       for k in gd.role_map["vertex_votes"][f"u{v + 1}"])]
        if not good:
            raise ExtractionFailed(f"no vertex of colour {i + 1} is above g{i + 1} in all its votes")
        pick.append(good[0])
    pick = tuple(pick)
    if not src.is_independent(pick):
        raise ExtractionFailed(f"vertices {pick} read from the completion are not independent")
    return pick


register("maximin", _complete, _extract)
