"""Independent brute-force oracles and random instance builders for tests.

These deliberately avoid the library's solver machinery: treewidth comes
from exhaustive minimization over elimination orderings (literal
permutations for tiny graphs, suffix-sharing over vertex subsets up to
~16 vertices), so solver bugs cannot hide behind shared code.
"""

from __future__ import annotations

import itertools

from tenseq.graph import Graph
from tenseq.network import TensorNetwork
from tenseq.rng import make_rng


def fill_width_of_order(g: Graph, order) -> int:
    adj = [set(g.neighbors(v)) for v in range(g.n)]
    alive = [True] * g.n
    width = 0
    for v in order:
        higher = [u for u in adj[v] if alive[u]]
        width = max(width, len(higher))
        for i in range(len(higher)):
            for j in range(i + 1, len(higher)):
                a, b = higher[i], higher[j]
                adj[a].add(b)
                adj[b].add(a)
        alive[v] = False
    return width


def treewidth_by_permutations(g: Graph) -> int:
    """Minimum fill-in width over all n! orderings; n <= 8."""
    assert g.n <= 8, "permutation oracle capped at 8 vertices"
    return min(
        fill_width_of_order(g, order)
        for order in itertools.permutations(range(g.n))
    )


def treewidth_by_subset_dp(g: Graph) -> int:
    """Exhaustive minimum over orderings, sharing suffixes by vertex subset.

    Q(S) is the best width eliminating exactly S first; the degree of v
    eliminated after S counts vertices outside S adjacent to v directly or
    through S (the order inside S does not matter).
    """
    assert g.n <= 16, "subset oracle capped at 16 vertices"
    n = g.n
    adj = [0] * n
    for u, v in g.edges():
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    def degree_after(s: int, v: int) -> int:
        # BFS from v through s
        seen = 1 << v
        frontier = adj[v]
        reach = 0
        while frontier:
            reach |= frontier & ~s
            inside = frontier & s & ~seen
            seen |= frontier
            frontier = 0
            m = inside
            while m:
                low = m & -m
                frontier |= adj[low.bit_length() - 1]
                m ^= low
            frontier &= ~seen
        return (reach & ~(1 << v)).bit_count()

    q = {0: 0}
    for size in range(1, n + 1):
        nxt = {}
        for s, best in q.items():
            m = ((1 << n) - 1) & ~s
            while m:
                low = m & -m
                v = low.bit_length() - 1
                m ^= low
                t = s | low
                cand = max(best, degree_after(s, v))
                if nxt.get(t, n) > cand:
                    nxt[t] = cand
        q = nxt
    return q[(1 << n) - 1]


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------

def random_connected_graph(n: int, extra_edges: int, seed: int) -> Graph:
    """Random spanning tree plus ``extra_edges`` random chords."""
    rng = make_rng(seed)
    g = Graph(n)
    order = [int(x) for x in rng.permutation(n)]
    for i in range(1, n):
        g.add_edge(order[i], order[int(rng.integers(i))])
    tries = 0
    while extra_edges > 0 and tries < 50 * extra_edges + 50:
        u, v = int(rng.integers(n)), int(rng.integers(n))
        tries += 1
        if u != v and not g.has_edge(u, v):
            g.add_edge(u, v)
            extra_edges -= 1
    return g


def network_of(g: Graph) -> TensorNetwork:
    net = TensorNetwork()
    for _ in range(g.n):
        net.add_vertex("generic")
    for u, v in g.edges():
        net.add_wire(u, v)
    return net


def random_small_network(seed: int, max_wires: int = 9) -> TensorNetwork:
    """Mixed topology corpus: paths, cycles, cliques, random webs."""
    from tenseq.graph import complete_graph, cycle_graph, path_graph

    rng = make_rng(seed)
    kind = int(rng.integers(4))
    if kind == 0:
        n = int(rng.integers(2, max_wires + 2))
        g = path_graph(n)
    elif kind == 1:
        n = int(rng.integers(3, max_wires + 1))
        g = cycle_graph(n)
    elif kind == 2:
        n = int(rng.integers(2, 5))  # K4 has 6 wires, the largest clique here
        g = complete_graph(n)
    else:
        n = int(rng.integers(3, 8))
        budget = max_wires - (n - 1)
        g = random_connected_graph(n, int(rng.integers(0, budget + 1)), seed + 1)
    assert g.m <= max_wires
    return network_of(g)
