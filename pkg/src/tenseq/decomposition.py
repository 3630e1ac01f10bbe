"""Tree decompositions, elimination orderings, and exact treewidth.

The exact solver is a branch-and-bound over elimination prefixes run as an
iterative deepening on the width budget: for k = lb, lb+1, ... it decides
"is there an elimination ordering of width <= k", and the first yes is
optimal.  Each decision search uses min-fill seeded upper bounds, lower
bound pruning, simplicial / almost-simplicial forced eliminations, and a
memo of eliminated-vertex sets known to fail at the current budget.  The
solver is cooperative: it polls a deadline and a cancellation token every
few hundred expansions and, when stopped, returns its best heuristic
ordering flagged as non-optimal.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .graph import Graph, GraphError, ParseError
from .rng import make_rng

DEFAULT_MEMO_CAP = 1 << 22

# Solver polls deadline/cancel at least this often (node expansions).
_POLL_EVERY = 256

# Run the contraction lower bound at every this-many node expansions.
_MMW_EVERY = 128


class CancelToken:
    """Monotone set-once flag shared between a solver and its dispatcher."""

    __slots__ = ("_set",)

    def __init__(self):
        self._set = False

    def set(self) -> None:
        self._set = True

    def is_set(self) -> bool:
        return self._set


class _Interrupted(Exception):
    pass


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass
class EliminationOrdering:
    """Vertex permutation; ``width`` is its fill-in width when computed."""

    order: list[int]
    width: int | None = None

    def positions(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}


@dataclass
class TreeDecomposition:
    """Bags indexed 0..b-1 with undirected tree edges on bag indices."""

    bags: list[set[int]]
    tree_edges: list[tuple[int, int]]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def node_neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


@dataclass
class TdViolation:
    condition: str
    witness: object
    message: str


@dataclass
class TdReport:
    ok: bool
    violations: list[TdViolation] = field(default_factory=list)

    def first(self) -> TdViolation | None:
        return self.violations[0] if self.violations else None


def validate_td(g: Graph, td: TreeDecomposition) -> TdReport:
    """Check the three decomposition conditions plus tree-ness.

    The report names every violated condition with a concrete witness
    (missing vertex, uncovered edge, vertex with a disconnected bag set).
    """
    viol: list[TdViolation] = []
    b = len(td.bags)
    for a, c in td.tree_edges:
        if not (0 <= a < b and 0 <= c < b):
            viol.append(TdViolation("tree", (a, c), f"tree edge ({a},{c}) out of range"))
            return TdReport(False, viol)
    # tree-ness: connected and acyclic
    if b > 0:
        adj = td.node_neighbors()
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != b:
            viol.append(TdViolation("tree", None, "tree edges do not connect all nodes"))
        if len(td.tree_edges) != b - 1:
            viol.append(
                TdViolation(
                    "tree", None,
                    f"{b} nodes need {b - 1} tree edges, got {len(td.tree_edges)}",
                )
            )
    covered = set().union(*td.bags) if td.bags else set()
    for v in range(g.n):
        if v not in covered:
            viol.append(TdViolation("vertex-coverage", v, f"vertex {v} in no bag"))
            break
    for u, v in g.edges():
        if not any(u in bag and v in bag for bag in td.bags):
            viol.append(
                TdViolation("edge-coverage", (u, v), f"edge ({u},{v}) in no bag")
            )
            break
    if b > 0 and not viol:
        adj = td.node_neighbors()
        for v in range(g.n):
            nodes = [i for i, bag in enumerate(td.bags) if v in bag]
            if not nodes:
                continue
            seen = {nodes[0]}
            stack = [nodes[0]]
            node_set = set(nodes)
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y in node_set and y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) != len(nodes):
                viol.append(
                    TdViolation(
                        "connectivity", v,
                        f"bags containing vertex {v} do not form a subtree",
                    )
                )
                break
    return TdReport(not viol, viol)


# ---------------------------------------------------------------------------
# Fill-in and the eo <-> td conversions
# ---------------------------------------------------------------------------

def _check_permutation(g: Graph, order: list[int]) -> None:
    if sorted(order) != list(range(g.n)):
        raise GraphError("ordering is not a permutation of the vertex set")


def fill_in_width(g: Graph, order) -> tuple[int, Graph]:
    """Simulate elimination along ``order``; return (width, fill-in graph).

    Eliminating a vertex turns its not-yet-eliminated neighbors into a
    clique; the width is the largest count of higher-numbered neighbors
    seen at any elimination.
    """
    seq = order.order if isinstance(order, EliminationOrdering) else list(order)
    _check_permutation(g, seq)
    fill = g.copy()
    adj = [set(fill.neighbors(v)) for v in range(g.n)]
    alive = [True] * g.n
    width = 0
    for v in seq:
        higher = [u for u in adj[v] if alive[u]]
        width = max(width, len(higher))
        for i in range(len(higher)):
            for j in range(i + 1, len(higher)):
                a, b = higher[i], higher[j]
                if b not in adj[a]:
                    adj[a].add(b)
                    adj[b].add(a)
                    fill.add_edge(a, b)
        alive[v] = False
    return width, fill


def eo_to_td(g: Graph, order) -> TreeDecomposition:
    """Tree decomposition from an elimination ordering.

    Bag of v = {v} union its higher-numbered neighbors in the fill-in
    graph; the node of v attaches to the node of its earliest-eliminated
    higher neighbor.  Width equals the ordering's fill-in width.
    """
    seq = order.order if isinstance(order, EliminationOrdering) else list(order)
    _check_permutation(g, seq)
    if g.n == 0:
        raise GraphError("empty graph has no decomposition")
    _, fill = fill_in_width(g, seq)
    pos = {v: i for i, v in enumerate(seq)}
    bags: list[set[int]] = []
    edges: list[tuple[int, int]] = []
    node_of: dict[int, int] = {}
    roots: list[int] = []
    for i, v in enumerate(seq):
        higher = [u for u in fill.neighbors(v) if pos[u] > i]
        bags.append({v, *higher})
        node_of[v] = i
        if higher:
            parent = min(higher, key=lambda u: pos[u])
            # parent vertex is eliminated later, so its node exists afterward;
            # record the edge once both nodes exist
            edges.append((i, parent))
        else:
            roots.append(i)
    tree_edges = [(i, node_of[p]) for i, p in edges]
    # joining component roots with arbitrary edges keeps all conditions valid
    for a, b in zip(roots, roots[1:]):
        tree_edges.append((a, b))
    return TreeDecomposition(bags, tree_edges)


def td_to_eo(g: Graph, td: TreeDecomposition) -> EliminationOrdering:
    """Elimination ordering by leaf-peeling a valid decomposition.

    Repeatedly take a leaf bag and eliminate the vertices it holds
    exclusively (they appear in no other bag by the connectivity
    condition), then delete the leaf.  The resulting ordering's fill-in
    width never exceeds the decomposition's width.
    """
    report = validate_td(g, td)
    if not report.ok:
        v = report.first()
        raise GraphError(f"invalid tree decomposition: {v.condition}: {v.message}")
    bags = [set(b) for b in td.bags]
    adj = {i: set() for i in range(len(bags))}
    for a, b in td.tree_edges:
        adj[a].add(b)
        adj[b].add(a)
    order: list[int] = []
    placed: set[int] = set()
    live = set(range(len(bags)))
    while len(live) > 1:
        leaf = min(i for i in live if len(adj[i]) <= 1)
        parent = next(iter(adj[leaf])) if adj[leaf] else None
        exclusive = bags[leaf] - (bags[parent] if parent is not None else set())
        for v in sorted(exclusive):
            if v not in placed:
                order.append(v)
                placed.add(v)
        live.remove(leaf)
        if parent is not None:
            adj[parent].discard(leaf)
        adj.pop(leaf)
    for i in live:
        for v in sorted(bags[i]):
            if v not in placed:
                order.append(v)
                placed.add(v)
    # isolated vertices missing from every bag cannot occur in a valid td
    width, _ = fill_in_width(g, order)
    return EliminationOrdering(order, width)


# ---------------------------------------------------------------------------
# Heuristics and lower bounds
# ---------------------------------------------------------------------------

def _fill_score(adj: list[int], v: int) -> int:
    nb = adj[v]
    missing = 0
    m = nb
    while m:
        low = m & -m
        u = low.bit_length() - 1
        m ^= low
        missing += (nb & ~adj[u] & ~low).bit_count()
    return missing // 2


def _mask_adj(g: Graph) -> list[int]:
    adj = [0] * g.n
    for u, v in g.edges():
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _eliminate(adj: list[int], alive: int, v: int) -> int:
    """Clique-ify v's live neighborhood in place and return new alive mask."""
    nb = adj[v] & alive
    for u in _bits(nb):
        adj[u] = (adj[u] | nb) & ~(1 << u)
    return alive & ~(1 << v)


def _greedy_order(
    adj: list[int],
    strategy: str,
    rng=None,
    deadline: float | None = None,
    cancel: CancelToken | None = None,
) -> tuple[list[int], int]:
    """Greedy elimination core on bitmask adjacency; mutates ``adj``."""
    n = len(adj)
    alive = (1 << n) - 1
    order: list[int] = []
    width = 0
    for step in range(n):
        if step % 16 == 0:
            if cancel is not None and cancel.is_set():
                raise _Interrupted()
            if deadline is not None and time.monotonic() > deadline:
                raise _Interrupted()
        best_score = None
        ties: list[int] = []
        for v in _bits(alive):
            if strategy == "min-degree":
                score = (adj[v] & alive).bit_count()
            else:
                nb = adj[v] & alive
                missing = 0
                m = nb
                while m:
                    low = m & -m
                    u = low.bit_length() - 1
                    m ^= low
                    missing += (nb & ~adj[u] & ~low & alive).bit_count()
                score = missing // 2
            if best_score is None or score < best_score:
                best_score, ties = score, [v]
            elif score == best_score:
                ties.append(v)
        v = ties[int(rng.integers(len(ties)))] if rng is not None and len(ties) > 1 else ties[0]
        width = max(width, (adj[v] & alive).bit_count())
        alive = _eliminate(adj, alive, v)
        order.append(v)
    return order, width


def heuristic_order(
    g: Graph, strategy: str = "min-fill", seed: int | None = None
) -> EliminationOrdering:
    """Greedy elimination ordering; width upper-bounds the treewidth.

    ``min-fill`` picks the vertex whose elimination adds fewest edges,
    ``min-degree`` the vertex of least degree.  Ties break by vertex id,
    or uniformly by a seeded generator so repeated seeds explore ties.
    """
    if strategy not in ("min-fill", "min-degree"):
        raise GraphError(f"unknown strategy {strategy!r}")
    rng = make_rng(seed) if seed is not None else None
    order, width = _greedy_order(_mask_adj(g), strategy, rng)
    return EliminationOrdering(order, width)


def lower_bound(g: Graph, method: str = "degeneracy") -> int:
    """Treewidth lower bound.

    ``degeneracy``: maximum over a min-degree elimination of the current
    minimum degree.  ``minor-min-width``: repeatedly contract a minimum
    degree vertex into its least-degree neighbor, tracking the largest
    minimum degree seen; contraction keeps the bound valid on minors.
    """
    if g.n == 0:
        return 0
    if method == "degeneracy":
        adj = _mask_adj(g)
        alive = (1 << g.n) - 1
        best = 0
        while alive:
            v = min(_bits(alive), key=lambda x: (adj[x] & alive).bit_count())
            best = max(best, (adj[v] & alive).bit_count())
            alive &= ~(1 << v)
        return best
    if method == "minor-min-width":
        adj = [set(g.neighbors(v)) for v in range(g.n)]
        alive = set(range(g.n))
        best = 0
        while len(alive) > 1:
            v = min(alive, key=lambda x: (len(adj[x]), x))
            deg = len(adj[v])
            best = max(best, deg)
            if deg == 0:
                alive.remove(v)
                continue
            u = min(adj[v], key=lambda x: (len(adj[x]), x))
            # contract v into u
            for w in adj[v]:
                if w != u:
                    adj[w].discard(v)
                    adj[w].add(u)
                    adj[u].add(w)
            adj[u].discard(v)
            for w in list(adj[u]):
                if w == u:
                    adj[u].discard(w)
            alive.remove(v)
            adj[v] = set()
        return best
    raise GraphError(f"unknown lower bound method {method!r}")


def _greedy_clique_bound(adj: list[int], alive: int) -> int:
    """Size-1 of a greedily grown clique; cheap extra lower bound."""
    best = 0
    for seed_v in sorted(_bits(alive), key=lambda v: -(adj[v] & alive).bit_count())[:4]:
        clique = 1 << seed_v
        cand = adj[seed_v] & alive
        while cand:
            v = max(_bits(cand), key=lambda x: (adj[x] & cand).bit_count())
            clique |= 1 << v
            cand &= adj[v]
        best = max(best, clique.bit_count())
    return best - 1


# ---------------------------------------------------------------------------
# Exact treewidth
# ---------------------------------------------------------------------------

@dataclass
class TreewidthResult:
    width: int
    decomposition: TreeDecomposition
    ordering: EliminationOrdering
    optimal: bool
    status: str  # "optimal" | "timeout" | "cancelled"
    lower_bound: int
    elapsed_ms: float
    expansions: int = 0
    memo_degraded: bool = False


def _improve_for_budget(adj: list[int], alive: int, k: int) -> list[int] | None:
    """Add every edge between non-adjacent vertices sharing >= k+1 common
    neighbors; any width-<=k ordering exists for the original graph iff one
    exists for the improved graph.  Returns None when the improvement
    forces a vertex past degree bound n-1... (never fails by itself)."""
    adj = list(adj)
    changed = True
    while changed:
        changed = False
        live = list(_bits(alive))
        for i, u in enumerate(live):
            au = adj[u]
            for v in live[i + 1:]:
                if au >> v & 1:
                    continue
                if (au & adj[v] & alive).bit_count() >= k + 1:
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
                    au = adj[u]
                    changed = True
    return adj


class _ComponentSolver:
    """Decision-style branch and bound over elimination prefixes of one
    connected component, with eliminated-set memoization.

    The width budget descends from the heuristic upper bound: each
    successful decision tightens the bound by at least one, and the single
    failing round certifies optimality.  Eliminations mutate the shared
    adjacency and are undone on backtrack; the fill state is a function of
    the eliminated set, which keeps the failure memo sound.
    """

    def __init__(self, adj: list[int], deadline, cancel, memo_cap: int):
        self.adj0 = adj
        self.n = len(adj)
        self.deadline = deadline
        self.cancel = cancel
        self.memo_cap = memo_cap
        self.memo_degraded = False
        self.expansions = 0
        self._poll = 0

    def _check_now(self):
        if self.cancel is not None and self.cancel.is_set():
            raise _Interrupted()
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise _Interrupted()

    def _check_interrupt(self):
        self._poll += 1
        if self._poll % _POLL_EVERY:
            return
        self._check_now()

    @staticmethod
    def _eliminate_undo(adj, alive, v):
        nb = adj[v] & alive
        undo = []
        m = nb
        while m:
            low = m & -m
            u = low.bit_length() - 1
            m ^= low
            old = adj[u]
            new = (old | nb) & ~low
            if new != old:
                undo.append((u, old))
                adj[u] = new
        return alive & ~(1 << v), undo

    @staticmethod
    def _undo(adj, undo):
        for u, old in undo:
            adj[u] = old

    def _mmw(self, adj, alive, cap) -> int:
        """Minor-min-width on the masked graph, stopping early above cap."""
        adj = list(adj)
        best = 0
        while alive:
            v = min(_bits(alive), key=lambda x: (adj[x] & alive).bit_count())
            nb = adj[v] & alive
            d = nb.bit_count()
            best = max(best, d)
            if best > cap:
                return best
            if d == 0:
                alive &= ~(1 << v)
                continue
            u = min(_bits(nb), key=lambda x: (adj[x] & alive).bit_count())
            merged = (adj[u] | adj[v]) & ~(1 << u) & ~(1 << v)
            adj[u] = merged
            m = merged
            while m:
                low = m & -m
                w = low.bit_length() - 1
                m ^= low
                adj[w] = (adj[w] | (1 << u)) & ~(1 << v)
            alive &= ~(1 << v)
        return best

    def _simplicial_like(self, adj, alive, v, delta, k):
        """0: none, 1: eliminate v now, -1: certified infeasible."""
        nb = adj[v] & alive
        d = nb.bit_count()
        offenders = 0
        m = nb
        while m:
            low = m & -m
            u = low.bit_length() - 1
            m ^= low
            if nb & ~adj[u] & ~low:
                offenders |= low
        if offenders == 0:
            return -1 if d > k else 1
        # almost simplicial: one removal fixes every missing pair; only
        # safe when v is of minimum degree (then deg <= width of the rest)
        if d == delta and d <= k and offenders.bit_count() <= d:
            m = offenders
            while m:
                low = m & -m
                x = low.bit_length() - 1
                m ^= low
                rest = nb & ~low
                ok = True
                mm = rest
                while mm:
                    l2 = mm & -mm
                    u = l2.bit_length() - 1
                    mm ^= l2
                    if rest & ~adj[u] & ~l2:
                        ok = False
                        break
                if ok:
                    return 1
        return 0

    def _dfs(self, adj, alive, k) -> list[int] | None:
        self.expansions += 1
        self._check_interrupt()
        prefix: list[int] = []
        undos: list[list[tuple[int, int]]] = []

        def bail(result):
            for undo in reversed(undos):
                self._undo(adj, undo)
            return result

        # forced reductions, cascading
        while True:
            na = alive.bit_count()
            if na <= k + 1:
                return bail(prefix + sorted(_bits(alive)))
            degs = []
            delta = self.n
            m = alive
            while m:
                low = m & -m
                v = low.bit_length() - 1
                m ^= low
                d = (adj[v] & alive).bit_count()
                degs.append((v, d))
                if d < delta:
                    delta = d
            if delta > k:
                return bail(None)
            fired = False
            for v, d in degs:
                if d > k:
                    continue
                verdict = self._simplicial_like(adj, alive, v, delta, k)
                if verdict == -1:
                    return bail(None)
                if verdict == 1:
                    alive, undo = self._eliminate_undo(adj, alive, v)
                    undos.append(undo)
                    prefix.append(v)
                    fired = True
                    break
            if not fired:
                break
        if alive in self.failed:
            return bail(None)
        # split into independent components once the remainder disconnects
        comps = self._components(adj, alive)
        if len(comps) > 1:
            order: list[int] = []
            for comp in comps:
                sub = self._dfs(adj, comp, k)
                if sub is None:
                    self._record_fail(alive)
                    return bail(None)
                order.extend(sub)
            return bail(prefix + order)
        # periodic contraction bound, amortized over expansions
        if self.expansions % _MMW_EVERY == 0 and self._mmw(adj, alive, k) > k:
            self._record_fail(alive)
            return bail(None)
        # branch: min (degree, fill) first among eliminable vertices
        cands = [(d, v) for v, d in
                 ((v, (adj[v] & alive).bit_count()) for v in _bits(alive))
                 if d <= k]
        cands.sort()
        scored = []
        for d, v in cands:
            nb = adj[v] & alive
            missing = 0
            m = nb
            while m:
                low = m & -m
                u = low.bit_length() - 1
                m ^= low
                missing += (nb & ~adj[u] & ~low & alive).bit_count()
            scored.append((missing // 2, d, v))
        scored.sort()
        for _, _, v in scored:
            alive2, undo = self._eliminate_undo(adj, alive, v)
            sub = self._dfs(adj, alive2, k)
            self._undo(adj, undo)
            if sub is not None:
                return bail(prefix + [v] + sub)
        self._record_fail(alive)
        return bail(None)

    def _record_fail(self, alive):
        if len(self.failed) < self.memo_cap:
            self.failed.add(alive)
        else:
            self.memo_degraded = True

    @staticmethod
    def _components(adj, alive) -> list[int]:
        comps = []
        rest = alive
        while rest:
            seed_bit = rest & -rest
            comp = seed_bit
            frontier = seed_bit
            while frontier:
                nxt = 0
                m = frontier
                while m:
                    low = m & -m
                    nxt |= adj[low.bit_length() - 1]
                    m ^= low
                nxt &= alive & ~comp
                comp |= nxt
                frontier = nxt
            comps.append(comp)
            rest &= ~comp
        return comps

    def _decide(self, k: int) -> list[int] | None:
        """Return an elimination order of width <= k, or None."""
        self.failed: set[int] = set()
        adj = _improve_for_budget(self.adj0, (1 << self.n) - 1, k)
        try:
            return self._dfs(adj, (1 << self.n) - 1, k)
        finally:
            self.failed = set()

    def solve(self) -> tuple[int, list[int], bool]:
        """Return (width, order, optimal).

        width n-1 with the identity order is the never-fails fallback; any
        completed heuristic replaces it before the search starts.
        """
        if self.n == 1:
            return 0, [0], True
        ub, ub_order = self.n - 1, list(range(self.n))
        try:
            for strat in ("min-degree", "min-fill"):
                order, width = _greedy_order(
                    list(self.adj0), strat, None, self.deadline, self.cancel
                )
                if width < ub:
                    ub, ub_order = width, order
            full = (1 << self.n) - 1
            lb = max(
                self._mmw(self.adj0, full, self.n),
                _greedy_clique_bound(self.adj0, full),
            )
            # climb the bound on budget-improved graphs: a certificate of
            # width > k on the k-improved graph transfers to the input
            while lb < ub:
                self._check_now()
                imp = _improve_for_budget(self.adj0, full, lb)
                quick = max(
                    self._mmw(imp, full, lb + 1),
                    _greedy_clique_bound(imp, full),
                )
                if quick > lb:
                    lb += 1
                else:
                    break
            self._check_now()
            # budget descends from the heuristic bound; the one failing
            # round is the optimality certificate
            while ub > lb:
                order = self._decide(ub - 1)
                if order is None:
                    return ub, ub_order, True
                g = Graph(self.n)
                for v in range(self.n):
                    for u in _bits(self.adj0[v]):
                        if u > v:
                            g.add_edge(v, u)
                width, _ = fill_in_width(g, order)
                assert width < ub
                ub, ub_order = width, order
            return ub, ub_order, True
        except _Interrupted:
            return ub, ub_order, False


def treewidth_exact(
    g: Graph,
    timeout: float | None = None,
    cancel: CancelToken | None = None,
    memo_cap: int = DEFAULT_MEMO_CAP,
) -> TreewidthResult:
    """Exact treewidth with witness decomposition and ordering.

    Disconnected graphs are solved per component (treewidth is the max) and
    the component decompositions are joined by arbitrary tree edges.  On
    timeout or cancellation the best heuristic ordering found so far is
    returned with ``optimal=False``; the call never raises for time.
    """
    if g.n == 0:
        raise GraphError("treewidth of the empty graph is undefined here")
    start = time.monotonic()
    deadline = start + timeout if timeout is not None else None
    full_order: list[int] = []
    width = 0
    optimal = True
    expansions = 0
    degraded = False
    bare_fallback = False
    for comp in g.components():
        sub, mapping = g.subgraph(comp)
        solver = _ComponentSolver(_mask_adj(sub), deadline, cancel, memo_cap)
        w, order, opt = solver.solve()
        expansions += solver.expansions
        degraded |= solver.memo_degraded
        if not opt and w == sub.n - 1:
            bare_fallback = True
        width = max(width, w)
        optimal &= opt
        full_order.extend(mapping[v] for v in order)
    if bare_fallback:
        # deadline hit before any heuristic finished; emit the trivial
        # single-bag decomposition rather than simulate an unvetted order
        td = TreeDecomposition([set(range(g.n))], [])
        eo = EliminationOrdering(full_order, g.n - 1)
        width = g.n - 1
    else:
        w_check, _ = fill_in_width(g, full_order)
        width = max(width, w_check)  # defensive; equal for exact solutions
        td = eo_to_td(g, full_order)
        eo = EliminationOrdering(full_order, w_check)
    status = "optimal"
    if not optimal:
        status = "cancelled" if (cancel is not None and cancel.is_set()) else "timeout"
    return TreewidthResult(
        width=width,
        decomposition=td,
        ordering=eo,
        optimal=optimal,
        status=status,
        lower_bound=width if optimal else 0,
        elapsed_ms=(time.monotonic() - start) * 1e3,
        expansions=expansions,
        memo_degraded=degraded,
    )


# ---------------------------------------------------------------------------
# PACE .td format
# ---------------------------------------------------------------------------

def write_td(td: TreeDecomposition, n_graph_vertices: int) -> str:
    """Serialize: one solution line, bags in ascending id, then tree edges."""
    lines = [f"s td {len(td.bags)} {td.width + 1} {n_graph_vertices}"]
    for i, bag in enumerate(td.bags, start=1):
        lines.append("b " + " ".join([str(i)] + [str(v + 1) for v in sorted(bag)]))
    for a, b in td.tree_edges:
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


def read_td(text: str) -> TreeDecomposition:
    bags: dict[int, set[int]] = {}
    edges: list[tuple[int, int]] = []
    declared = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if declared is not None:
                raise ParseError("duplicate solution line", lineno)
            if len(parts) != 5 or parts[1] != "td":
                raise ParseError(f"malformed solution line {line!r}", lineno)
            declared = tuple(int(x) for x in parts[2:])
        elif parts[0] == "b":
            if declared is None:
                raise ParseError("bag line before solution line", lineno)
            try:
                bag_id = int(parts[1])
                bags[bag_id] = {int(x) - 1 for x in parts[2:]}
            except ValueError:
                raise ParseError(f"non-integer in bag line {line!r}", lineno) from None
        else:
            if declared is None:
                raise ParseError("edge line before solution line", lineno)
            if len(parts) != 2:
                raise ParseError(f"malformed tree edge {line!r}", lineno)
            edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
    if declared is None:
        raise ParseError("missing solution line", 1)
    if sorted(bags) != list(range(1, len(bags) + 1)):
        raise ParseError("bag ids must be dense 1..num_bags", 1)
    return TreeDecomposition([bags[i] for i in sorted(bags)], edges)
