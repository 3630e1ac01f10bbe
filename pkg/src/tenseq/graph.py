"""Simple undirected graphs on dense integer vertices.

Vertices are always 0..n-1 internally; the PACE text format is 1-indexed
and conversion happens only at the I/O boundary.  Graph values are treated
as immutable once built (nothing here mutates a graph it did not create),
so they are safe to share across threads.
"""

from __future__ import annotations

from .rng import make_rng


class GraphError(ValueError):
    """Invalid graph construction or operation."""


class ParseError(GraphError):
    """Malformed text input; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class Graph:
    """Simple undirected graph: no self-loops, no parallel edges."""

    __slots__ = ("n", "_adj")

    def __init__(self, n: int, edges=()):
        if n < 0:
            raise GraphError(f"vertex count must be >= 0, got {n}")
        self.n = n
        self._adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            self.add_edge(u, v)

    def add_edge(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise GraphError(f"edge ({u},{v}) out of range for n={self.n}")
        if u == v:
            raise GraphError(f"self-loop ({u},{u}) not allowed in a simple graph")
        self._adj[u].add(v)
        self._adj[v].add(u)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def neighbors(self, v: int) -> set[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @property
    def m(self) -> int:
        return sum(len(a) for a in self._adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edge list with u < v, sorted lexicographically."""
        return sorted((u, v) for u in range(self.n) for v in self._adj[u] if u < v)

    def copy(self) -> "Graph":
        g = Graph(self.n)
        g._adj = [set(a) for a in self._adj]
        return g

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            stack, comp = [s], []
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self._adj[v]:
                    if not seen[u]:
                        seen[u] = True
                        stack.append(u)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def subgraph(self, vertices) -> tuple["Graph", list[int]]:
        """Induced subgraph plus the list mapping new ids to old ids."""
        vs = sorted(vertices)
        index = {v: i for i, v in enumerate(vs)}
        g = Graph(len(vs))
        for v in vs:
            for u in self._adj[v]:
                if u in index and v < u:
                    g.add_edge(index[v], index[u])
        return g, vs

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._adj == other._adj
        )

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def grid_graph(rows: int, cols: int) -> Graph:
    g = Graph(rows * cols)
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                g.add_edge(v, v + 1)
            if r + 1 < rows:
                g.add_edge(v, v + cols)
    return g


# ---------------------------------------------------------------------------
# PACE .gr format
# ---------------------------------------------------------------------------

def read_gr(text: str) -> Graph:
    """Parse a PACE-format graph.

    Grammar: optional comment lines ``c ...``; exactly one problem line
    ``p tw <n> <m>``; then ``m`` edge lines ``<u> <v>`` with 1-indexed
    vertices.  Raises :class:`ParseError` with a line number on any
    malformed input.
    """
    g = None
    declared_m = 0
    seen_m = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if g is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "tw":
                raise ParseError(f"malformed problem line {line!r}", lineno)
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"non-integer counts in {line!r}", lineno) from None
            if n < 0 or declared_m < 0:
                raise ParseError("negative counts in problem line", lineno)
            g = Graph(n)
        else:
            if g is None:
                raise ParseError("edge line before problem line", lineno)
            if len(parts) != 2:
                raise ParseError(f"malformed edge line {line!r}", lineno)
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(f"non-integer vertex in {line!r}", lineno) from None
            if not (1 <= u <= g.n and 1 <= v <= g.n):
                raise ParseError(f"vertex index out of range in {line!r}", lineno)
            if u == v:
                raise ParseError(f"self-loop {u} {v}", lineno)
            g.add_edge(u - 1, v - 1)
            seen_m += 1
    if g is None:
        raise ParseError("missing problem line", 1)
    if seen_m != declared_m:
        raise ParseError(
            f"problem line declared {declared_m} edges but {seen_m} were given", 1
        )
    return g


def write_gr(g: Graph) -> str:
    """Serialize in PACE format: edges emitted with u < v, sorted."""
    lines = [f"p tw {g.n} {g.m}"]
    lines.extend(f"{u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Random regular graphs
# ---------------------------------------------------------------------------

_REJECTION_BUDGET = 10_000


def random_regular(r: int, n: int, seed: int) -> Graph:
    """Random simple connected r-regular graph on n vertices.

    Pairing (configuration) model: shuffle r copies of each vertex, pair
    them up, and reject the sample whenever it contains a self-loop or a
    parallel edge, or is disconnected.  Rejected samples advance the seed
    stream, so the output is a deterministic function of (r, n, seed).
    """
    if not 0 <= r < n:
        raise GraphError(f"need 0 <= r < n, got r={r}, n={n}")
    if (r * n) % 2 != 0:
        raise GraphError(f"r*n must be even, got r={r}, n={n}")
    rng = make_rng(seed)
    stubs = [v for v in range(n) for _ in range(r)]
    for _ in range(_REJECTION_BUDGET):
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v:
                ok = False
                break
            e = (u, v) if u < v else (v, u)
            if e in edges:
                ok = False
                break
            edges.add(e)
        if not ok:
            continue
        g = Graph(n, edges)
        if g.is_connected():
            return g
    raise GraphError(
        f"failed to sample a connected {r}-regular graph on {n} vertices "
        f"within {_REJECTION_BUDGET} attempts (seed {seed})"
    )
