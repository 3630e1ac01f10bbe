"""Tensor networks as labeled multigraphs.

A network stores tensors (vertices) and wires (edges between tensors to be
summed over).  Parallel wires are permitted and wire ids are stable: every
transformation refers to wires by id, never by position.  Open legs are
dangling indices that contraction machinery ignores.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .graph import Graph, GraphError

ROLES = (
    "unitary",
    "isometry",
    "operator",
    "state",
    "gate",
    "projector",
    "generic",
)


@dataclass(frozen=True)
class Wire:
    id: int
    u: int
    v: int
    dim: int = 2

    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v)


class TensorNetwork:
    """Multigraph of tensor slots and wires.

    Vertices carry an optional role tag and optional rank annotation; a
    rank annotation, when present, must equal the number of incident wires
    plus open legs (checked by :meth:`validate`).
    """

    def __init__(self):
        self.roles: list[str | None] = []
        self.ranks: list[int | None] = []
        self.wires: dict[int, Wire] = {}
        self.open_legs: list[tuple[int, int]] = []
        self._next_wire = 0

    # -- construction -------------------------------------------------------

    def add_vertex(self, role: str | None = None, rank: int | None = None) -> int:
        if role is not None and role not in ROLES:
            raise GraphError(f"unknown role {role!r}")
        self.roles.append(role)
        self.ranks.append(rank)
        return len(self.roles) - 1

    def add_wire(
        self, u: int, v: int, dim: int = 2, wire_id: int | None = None,
        allow_self_loop: bool = False,
    ) -> int:
        nv = self.n_vertices
        if not (0 <= u < nv and 0 <= v < nv):
            raise GraphError(f"wire ({u},{v}) references missing vertex (n={nv})")
        if u == v and not allow_self_loop:
            raise GraphError(f"self-loop wire at {u} requires allow_self_loop=True")
        if wire_id is None:
            wire_id = self._next_wire
        if wire_id in self.wires:
            raise GraphError(f"wire id {wire_id} already in use")
        self.wires[wire_id] = Wire(wire_id, u, v, dim)
        self._next_wire = max(self._next_wire, wire_id + 1)
        return wire_id

    def add_open_leg(self, v: int, leg_id: int) -> None:
        if not (0 <= v < self.n_vertices):
            raise GraphError(f"open leg on missing vertex {v}")
        self.open_legs.append((v, leg_id))

    # -- queries ------------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.roles)

    @property
    def n_wires(self) -> int:
        return len(self.wires)

    def wire(self, wire_id: int) -> Wire:
        try:
            return self.wires[wire_id]
        except KeyError:
            raise GraphError(f"no wire with id {wire_id}") from None

    def wires_at(self, v: int) -> list[Wire]:
        return [w for w in self.wires.values() if v in (w.u, w.v)]

    def wire_count(self, v: int) -> int:
        """Incident wire count; a self-loop wire counts twice."""
        return sum((w.u == v) + (w.v == v) for w in self.wires.values())

    def leg_count(self, v: int) -> int:
        return self.wire_count(v) + sum(1 for x, _ in self.open_legs if x == v)

    def validate(self) -> None:
        for v, rank in enumerate(self.ranks):
            if rank is not None and rank != self.leg_count(v):
                raise GraphError(
                    f"vertex {v} annotated rank {rank} but has {self.leg_count(v)} legs"
                )

    def components(self) -> list[list[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n_vertices)]
        for w in self.wires.values():
            if w.u != w.v:
                adj[w.u].add(w.v)
                adj[w.v].add(w.u)
        seen = [False] * self.n_vertices
        comps = []
        for s in range(self.n_vertices):
            if seen[s]:
                continue
            stack, comp = [s], []
            seen[s] = True
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n_vertices <= 1 or len(self.components()) == 1

    def __repr__(self):
        return f"TensorNetwork(vertices={self.n_vertices}, wires={self.n_wires})"


def network_from_graph(g: Graph, role: str | None = None) -> TensorNetwork:
    """Network with one tensor per vertex and one wire per edge of ``g``."""
    net = TensorNetwork()
    for _ in range(g.n):
        net.add_vertex(role)
    for u, v in g.edges():
        net.add_wire(u, v)
    return net


# ---------------------------------------------------------------------------
# Line graph
# ---------------------------------------------------------------------------

@dataclass
class LineGraphMap:
    """Simple line graph plus the bijection back to wire ids.

    ``wire_of_vertex[i]`` is the wire id of line-graph vertex ``i`` and
    ``vertex_of_wire`` is its inverse.
    """

    line_graph: Graph
    wire_of_vertex: list[int]
    vertex_of_wire: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.vertex_of_wire:
            self.vertex_of_wire = {w: i for i, w in enumerate(self.wire_of_vertex)}


def line_graph(net: TensorNetwork) -> LineGraphMap:
    """Line graph of a network: one vertex per wire, adjacent iff the wires
    share an endpoint tensor.  Parallel wires share both endpoints and come
    out mutually adjacent; open legs are ignored."""
    if net.n_wires == 0:
        raise GraphError("no contractible wires")
    wire_ids = sorted(net.wires)
    index = {w: i for i, w in enumerate(wire_ids)}
    lg = Graph(len(wire_ids))
    at_vertex: dict[int, list[int]] = {}
    for w in wire_ids:
        wire = net.wires[w]
        for v in set(wire.endpoints()):
            at_vertex.setdefault(v, []).append(index[w])
    for group in at_vertex.values():
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                lg.add_edge(group[i], group[j])
    return LineGraphMap(lg, wire_ids)


@dataclass
class SimplifyReport:
    graph: Graph
    multiplicity: dict[tuple[int, int], int]
    dropped_self_loops: list[int]


def to_simple(net: TensorNetwork) -> SimplifyReport:
    """Collapse parallel wires to single edges and drop self-loop wires.

    The multiplicity sidecar records how many wires each surviving edge
    absorbed; dropped self-loops are reported by wire id.
    """
    g = Graph(net.n_vertices)
    mult: dict[tuple[int, int], int] = {}
    loops = []
    for w in sorted(net.wires):
        wire = net.wires[w]
        if wire.u == wire.v:
            loops.append(w)
            continue
        e = (min(wire.u, wire.v), max(wire.u, wire.v))
        if e not in mult:
            g.add_edge(*e)
        mult[e] = mult.get(e, 0) + 1
    return SimplifyReport(g, mult, loops)


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def network_to_json(net: TensorNetwork, entries: dict | None = None) -> str:
    """Edge-list JSON; ``entries`` optionally maps vertex -> DenseTensor."""
    doc = {
        "vertices": [
            {"id": v, "role": net.roles[v]}
            | ({"rank": net.ranks[v]} if net.ranks[v] is not None else {})
            for v in range(net.n_vertices)
        ],
        "wires": [
            {"id": w.id, "u": w.u, "v": w.v, "dim": w.dim}
            for w in (net.wires[i] for i in sorted(net.wires))
        ],
        "open_legs": [{"vertex": v, "leg": leg} for v, leg in net.open_legs],
    }
    if entries is not None:
        for vdoc in doc["vertices"]:
            t = entries.get(vdoc["id"])
            if t is None:
                continue
            vdoc["legs"] = list(t.legs)
            vdoc["entries"] = [[float(z.real), float(z.imag)] for z in t.data.ravel()]
    return json.dumps(doc, indent=1)


def network_from_json(text: str) -> tuple[TensorNetwork, dict]:
    """Inverse of :func:`network_to_json`.

    Returns the network and a dict of numeric tensors (vertex -> DenseTensor),
    empty when the document carries no entries.
    """
    # imported here to keep structural I/O usable without numerics
    from .executor import DenseTensor
    import numpy as np

    doc = json.loads(text)
    net = TensorNetwork()
    ids = [v["id"] for v in doc["vertices"]]
    if ids != list(range(len(ids))):
        raise GraphError("vertex ids must be dense 0..n-1 in JSON input")
    for v in doc["vertices"]:
        net.add_vertex(v.get("role"), v.get("rank"))
    for w in doc["wires"]:
        net.add_wire(
            w["u"], w["v"], w.get("dim", 2), wire_id=w["id"],
            allow_self_loop=w["u"] == w["v"],
        )
    for leg in doc.get("open_legs", []):
        net.add_open_leg(leg["vertex"], leg["leg"])
    tensors = {}
    for v in doc["vertices"]:
        if "entries" in v:
            legs = tuple(v["legs"])
            dims = tuple(net.wires[w].dim for w in legs)
            data = np.array(
                [complex(re, im) for re, im in v["entries"]], dtype=np.complex128
            ).reshape(dims if dims else ())
            tensors[v["id"]] = DenseTensor(legs, data)
    return net, tensors


def network_hash(net: TensorNetwork) -> str:
    """Stable content hash used to pair artifacts with their instance."""
    payload = json.dumps(
        {
            "roles": net.roles,
            "wires": sorted((w.id, w.u, w.v, w.dim) for w in net.wires.values()),
            "open": sorted(net.open_legs),
        },
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode()).hexdigest()[:16]
