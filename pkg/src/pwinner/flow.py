"""Integral maximum flow (Dinic) on small capacitated digraphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


@dataclass
class FlowNetwork:
    """Directed graph with integer capacities.

    Nodes are dense integers; ``labels`` is optional bookkeeping for callers.
    Edges keep insertion order, which fixes the augmentation order.
    """

    labels: list = field(default_factory=list)
    tails: list[int] = field(default_factory=list)
    heads: list[int] = field(default_factory=list)
    caps: list[int] = field(default_factory=list)
    source: int = 0
    sink: int = 1

    @classmethod
    def with_terminals(cls) -> "FlowNetwork":
        net = cls()
        net.source = net.add_node("source")
        net.sink = net.add_node("sink")
        return net

    @property
    def n_nodes(self) -> int:
        return len(self.labels)

    def add_node(self, label=None) -> int:
        self.labels.append(label)
        return len(self.labels) - 1

    def add_edge(self, u: int, v: int, cap: int) -> int:
        if cap < 0 or int(cap) != cap:
            raise ValueError(f"capacity must be a nonnegative integer, got {cap}")
        if not (0 <= u < self.n_nodes and 0 <= v < self.n_nodes):
            raise ValueError("edge endpoint is not a node")
        self.tails.append(u)
        self.heads.append(v)
        self.caps.append(int(cap))
        return len(self.caps) - 1


def max_flow(net: FlowNetwork) -> tuple[int, list[int]]:
    """Return the maximum flow value and the flow on each edge."""
    if net.source == net.sink:
        raise ValueError("source and sink coincide")
    n = net.n_nodes
    # residual graph: arc 2e is edge e, arc 2e+1 its reverse
    adj: list[list[int]] = [[] for _ in range(n)]
    head = []
    res = []
    for e, (u, v, c) in enumerate(zip(net.tails, net.heads, net.caps)):
        adj[u].append(2 * e)
        adj[v].append(2 * e + 1)
        head += [v, u]
        res += [c, 0]
    s, t = net.source, net.sink
    total = 0
    while True:
        level = [-1] * n
        level[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for a in adj[u]:
                if res[a] > 0 and level[head[a]] < 0:
                    level[head[a]] = level[u] + 1
                    q.append(head[a])
        if level[t] < 0:
            break
        it = [0] * n

        def push(u: int, f: int) -> int:
            if u == t:
                return f
            while it[u] < len(adj[u]):
                a = adj[u][it[u]]
                v = head[a]
                if res[a] > 0 and level[v] == level[u] + 1:
                    got = push(v, min(f, res[a]))
                    if got:
                        res[a] -= got
                        res[a ^ 1] += got
                        return got
                it[u] += 1
            return 0

        while True:
            f = push(s, float("inf"))
            if not f:
                break
            total += f
    flows = [net.caps[e] - res[2 * e] for e in range(len(net.caps))]
    return int(total), flows
