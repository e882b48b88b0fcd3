"""Source problems of the hardness reductions, with validators, exact
brute-force solvers and random generators.

Literals are signed 1-based variable numbers, as in DIMACS: ``3`` is x3 and
``-3`` its negation.  A 3DM triple ``(i, j, k)`` names x_i, y_j and z_k
(0-based).  Graph vertices are ``0..|V|-1``.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass

from ..errors import InvalidSolution, InvalidSourceInstance

Assignment = tuple[bool, ...]


# (3,B2)-SAT ------------------------------------------------------------------

@dataclass(frozen=True)
class Sat3B2:
    """3-CNF where every variable occurs exactly twice positively and twice negatively.

    A clause may repeat a literal; the occurrence count is over all slots.
    """

    n: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(int(l) for l in c) for c in self.clauses))
        self.validate()

    @property
    def t(self) -> int:
        return len(self.clauses)

    def validate(self):
        if self.n < 1:
            raise InvalidSourceInstance("need at least one variable")
        cnt = Counter()
        for j, cl in enumerate(self.clauses):
            if len(cl) != 3:
                raise InvalidSourceInstance(f"clause {j + 1} has {len(cl)} literals, expected 3")
            for lit in cl:
                if lit == 0 or abs(lit) > self.n:
                    raise InvalidSourceInstance(f"clause {j + 1}: literal {lit} out of range")
                cnt[lit] += 1
        for v in range(1, self.n + 1):
            if cnt[v] != 2 or cnt[-v] != 2:
                raise InvalidSourceInstance(
                    f"variable x{v} occurs {cnt[v]} times positively and {cnt[-v]} times negatively (need 2 and 2)")

    def satisfies(self, tau: Assignment) -> bool:
        if len(tau) != self.n:
            return False
        return all(any(tau[abs(l) - 1] == (l > 0) for l in cl) for cl in self.clauses)

    def check(self, tau: Assignment):
        if not self.satisfies(tau):
            raise InvalidSolution("assignment does not satisfy every clause")


def sat_solve(inst: Sat3B2) -> Assignment | None:
    """Exhaustive search over assignments; the first satisfying one, or None."""
    for bits in itertools.product((False, True), repeat=inst.n):
        if inst.satisfies(bits):
            return bits
    return None


def random_sat3b2(n: int, rng: random.Random, planted: Assignment | None = None,
                  distinct: bool = False, tries: int = 10_000) -> Sat3B2:
    """A random (3,B2) formula; with ``planted`` every clause is satisfied by it.

    ``distinct`` asks for three different variables in every clause.
    """
    if (4 * n) % 3:
        raise InvalidSourceInstance("(3,B2) formulas need 3 | n (4n literal slots in 3-literal clauses)")
    slots = [v for v in range(1, n + 1) for _ in range(2)] + [-v for v in range(1, n + 1) for _ in range(2)]
    for _ in range(tries):
        rng.shuffle(slots)
        cls = [tuple(slots[i:i + 3]) for i in range(0, len(slots), 3)]
        if distinct and any(len({abs(l) for l in c}) < 3 for c in cls):
            continue
        f = Sat3B2(n, tuple(cls))
        if planted is None or f.satisfies(planted):
            return f
    raise InvalidSourceInstance("no formula found within the retry limit")


def random_unsat_sat3b2(n: int, rng: random.Random, tries: int = 200_000) -> Sat3B2:
    """A random unsatisfiable (3,B2) formula (repeated literals allowed).

    With three different variables per clause no unsatisfiable formula exists
    at n = 3, and none turned up in random sampling up to n = 12, so repeated
    literals are the only practical source of small NO instances.
    """
    for _ in range(tries):
        f = random_sat3b2(n, rng)
        if sat_solve(f) is None:
            return f
    raise InvalidSourceInstance(f"no unsatisfiable formula found at n={n}")


# Three dimensional matching ----------------------------------------------------

@dataclass(frozen=True)
class ThreeDM:
    """Sets X, Y, Z of size ``m`` and a list of triples (duplicates allowed)."""

    m: int
    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "triples", tuple(tuple(int(a) for a in s) for s in self.triples))
        self.validate()

    @property
    def t(self) -> int:
        return len(self.triples)

    def validate(self):
        if self.m < 1:
            raise InvalidSourceInstance("need m >= 1")
        for k, s in enumerate(self.triples):
            if len(s) != 3 or not all(0 <= a < self.m for a in s):
                raise InvalidSourceInstance(f"triple {k + 1} must take one element of each of X, Y, Z")

    def occurrences(self) -> dict[tuple[str, int], int]:
        cnt = Counter()
        for s in self.triples:
            for part, a in zip("xyz", s):
                cnt[(part, a)] += 1
        return {(p, a): cnt[(p, a)] for p in "xyz" for a in range(self.m)}

    def max_occurrence(self) -> int:
        return max(self.occurrences().values())

    def is_matching(self, sel) -> bool:
        sel = list(sel)
        if len(sel) != self.m or len(set(sel)) != self.m:
            return False
        if not all(0 <= k < self.t for k in sel):
            return False
        return all(len({self.triples[k][p] for k in sel}) == self.m for p in range(3))

    def check(self, sel):
        if not self.is_matching(sel):
            raise InvalidSolution("selected triples are not a perfect matching")


def tdm_solve(inst: ThreeDM) -> tuple[int, ...] | None:
    """Backtracking over X in order; indices of a perfect matching, or None."""
    by_x: list[list[int]] = [[] for _ in range(inst.m)]
    for k, (x, _, _) in enumerate(inst.triples):
        by_x[x].append(k)
    used_y, used_z, chosen = set(), set(), []

    def rec(x: int) -> bool:
        if x == inst.m:
            return True
        for k in by_x[x]:
            _, y, z = inst.triples[k]
            if y in used_y or z in used_z:
                continue
            used_y.add(y), used_z.add(z), chosen.append(k)
            if rec(x + 1):
                return True
            used_y.discard(y), used_z.discard(z), chosen.pop()
        return False

    return tuple(chosen) if rec(0) else None


def random_3dm(m: int, t: int, rng: random.Random, planted: bool = True) -> ThreeDM:
    """``t`` triples; with ``planted`` the first ``m`` (before shuffling) form a matching."""
    triples = []
    if planted:
        if t < m:
            raise InvalidSourceInstance("a planted matching needs t >= m")
        py, pz = list(range(m)), list(range(m))
        rng.shuffle(py), rng.shuffle(pz)
        triples = [(i, py[i], pz[i]) for i in range(m)]
    while len(triples) < t:
        triples.append((rng.randrange(m), rng.randrange(m), rng.randrange(m)))
    rng.shuffle(triples)
    return ThreeDM(m, tuple(triples))


def random_regular_3dm(m: int, rng: random.Random, r: int = 3) -> ThreeDM:
    """Every element in exactly ``r`` triples (configuration model, duplicates allowed)."""
    xs = [a for a in range(m) for _ in range(r)]
    ys, zs = xs[:], xs[:]
    rng.shuffle(ys), rng.shuffle(zs)
    return ThreeDM(m, tuple(zip(xs, ys, zs)))


def random_3dm_no(m: int, t: int, rng: random.Random, regular: bool = False, tries: int = 100_000) -> ThreeDM:
    """A random instance without a perfect matching."""
    for _ in range(tries):
        inst = random_regular_3dm(m, rng) if regular else random_3dm(m, t, rng, planted=False)
        if tdm_solve(inst) is None:
            return inst
    raise InvalidSourceInstance("no NO instance found within the retry limit")


def random_regular_3dm_yes(m: int, rng: random.Random, tries: int = 100_000) -> ThreeDM:
    for _ in range(tries):
        inst = random_regular_3dm(m, rng)
        if tdm_solve(inst) is not None:
            return inst
    raise InvalidSourceInstance("no YES instance found within the retry limit")


# d-Multicolored independent set ------------------------------------------------

@dataclass(frozen=True)
class MulticoloredGraph:
    """A d-regular graph whose vertex set is split into independent colour classes."""

    parts: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(tuple(p) for p in self.parts))
        object.__setattr__(self, "edges", tuple(tuple(sorted(e)) for e in self.edges))
        self.validate()

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def n_vertices(self) -> int:
        return sum(len(p) for p in self.parts)

    @property
    def d(self) -> int:
        deg = self.degrees()
        return deg[0] if deg else 0

    def color(self, u: int) -> int:
        for i, p in enumerate(self.parts):
            if u in p:
                return i
        raise KeyError(u)

    def degrees(self) -> list[int]:
        deg = [0] * self.n_vertices
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def validate(self):
        verts = sorted(u for p in self.parts for u in p)
        if verts != list(range(len(verts))) or not verts:
            raise InvalidSourceInstance("colour classes must partition 0..|V|-1")
        if any(not p for p in self.parts):
            raise InvalidSourceInstance("empty colour class")
        col = {u: i for i, p in enumerate(self.parts) for u in p}
        if len(set(self.edges)) != len(self.edges):
            raise InvalidSourceInstance("parallel edges")
        for u, v in self.edges:
            if u not in col or v not in col or u == v:
                raise InvalidSourceInstance(f"bad edge ({u}, {v})")
            if col[u] == col[v]:
                raise InvalidSourceInstance(f"edge ({u}, {v}) inside colour class {col[u] + 1}")
        if len(set(self.degrees())) > 1:
            raise InvalidSourceInstance("graph is not regular")

    def is_independent(self, pick) -> bool:
        pick = tuple(pick)
        if len(pick) != self.k or any(pick[i] not in self.parts[i] for i in range(self.k)):
            return False
        chosen = set(pick)
        return not any(u in chosen and v in chosen for u, v in self.edges)

    def check(self, pick):
        if not self.is_independent(pick):
            raise InvalidSolution("not one vertex per colour forming an independent set")


def mis_solve(g: MulticoloredGraph) -> tuple[int, ...] | None:
    for pick in itertools.product(*g.parts):
        if g.is_independent(pick):
            return pick
    return None


def random_multicolored(k: int, size: int, d: int, rng: random.Random,
                        planted: bool | None = None, tries: int = 20_000) -> MulticoloredGraph:
    """Random d-regular k-partite graph with ``size`` vertices per class.

    ``planted=True`` keeps one vertex per class pairwise non-adjacent;
    ``planted=False`` insists on a NO instance; ``None`` takes whatever comes.
    """
    parts = tuple(tuple(range(i * size, (i + 1) * size)) for i in range(k))
    col = {u: i for i, p in enumerate(parts) for u in p}
    nv = k * size
    if (nv * d) % 2:
        raise InvalidSourceInstance("n*d must be even for a d-regular graph")
    for _ in range(tries):
        special = {rng.choice(p) for p in parts} if planted else set()
        stubs = [u for u in range(nv) for _ in range(d)]
        rng.shuffle(stubs)
        edges, ok = set(), True
        # greedy pairing with random restarts
        while stubs and ok:
            u = stubs.pop()
            cands = [i for i, v in enumerate(stubs)
                     if col[v] != col[u] and (min(u, v), max(u, v)) not in edges
                     and not (u in special and v in special)]
            if not cands:
                ok = False
                break
            v = stubs.pop(rng.choice(cands))
            edges.add((min(u, v), max(u, v)))
        if not ok:
            continue
        g = MulticoloredGraph(parts, tuple(sorted(edges)))
        if planted is False and mis_solve(g) is not None:
            continue
        return g
    raise InvalidSourceInstance("no graph found within the retry limit")
