import itertools
import random

import pytest
from hypothesis import given, strategies as st

from pwinner.flow import FlowNetwork, max_flow


def brute_min_cut(net: FlowNetwork) -> int:
    inner = [v for v in range(net.n_nodes) if v not in (net.source, net.sink)]
    best = None
    for bits in itertools.product((0, 1), repeat=len(inner)):
        side = {net.source} | {v for v, b in zip(inner, bits) if b}
        cut = sum(c for u, v, c in zip(net.tails, net.heads, net.caps) if u in side and v not in side)
        best = cut if best is None else min(best, cut)
    return best


def random_network(r: random.Random, max_nodes=10) -> FlowNetwork:
    net = FlowNetwork.with_terminals()
    for _ in range(r.randint(0, max_nodes - 2)):
        net.add_node()
    n = net.n_nodes
    for _ in range(r.randint(0, 3 * n)):
        u, v = r.randrange(n), r.randrange(n)
        if u != v:
            net.add_edge(u, v, r.randint(0, 6))
    return net


def check_flow(net, value, flow):
    assert all(0 <= f <= c for f, c in zip(flow, net.caps))
    bal = [0] * net.n_nodes
    for u, v, f in zip(net.tails, net.heads, flow):
        bal[u] -= f
        bal[v] += f
    for x in range(net.n_nodes):
        if x not in (net.source, net.sink):
            assert bal[x] == 0
    assert bal[net.sink] == value == -bal[net.source]


def test_single_edge():
    net = FlowNetwork.with_terminals()
    net.add_edge(net.source, net.sink, 5)
    assert max_flow(net)[0] == 5


def test_two_disjoint_paths():
    net = FlowNetwork.with_terminals()
    for _ in range(2):
        a = net.add_node()
        net.add_edge(net.source, a, 1)
        net.add_edge(a, net.sink, 1)
    assert max_flow(net)[0] == 2


def test_bad_capacity_rejected():
    net = FlowNetwork.with_terminals()
    with pytest.raises(ValueError):
        net.add_edge(net.source, net.sink, -1)
    with pytest.raises(ValueError):
        net.add_edge(net.source, 7, 1)


@given(st.randoms(use_true_random=False))
def test_max_flow_equals_min_cut(r):
    net = random_network(r, max_nodes=8)
    value, flow = max_flow(net)
    check_flow(net, value, flow)
    assert value == brute_min_cut(net)


def test_parallel_and_antiparallel_edges():
    net = FlowNetwork.with_terminals()
    a = net.add_node()
    net.add_edge(net.source, a, 2)
    net.add_edge(net.source, a, 3)
    net.add_edge(a, net.source, 4)
    net.add_edge(a, net.sink, 10)
    value, flow = max_flow(net)
    assert value == 5
    check_flow(net, value, flow)
