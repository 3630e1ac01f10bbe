"""Contraction sequences and their complexity.

A sequence lists every wire of the network exactly once.  Executing it
merges tensors pairwise; two cost measures fall out of one simulation:

``width``
    The degree of the merged vertex counting every live wire incident to
    it, including wires that have become internal to the merged cluster
    but have not had their own step yet.  This measure is what the
    treewidth of the line graph captures: the optimal value over all
    sequences equals it exactly, and the ordering-to-sequence conversions
    below preserve it step for step.

``max_rank``
    The number of legs of the tensor actually produced at each merge,
    i.e. live wires leaving the merged cluster.  Wires parallel between
    the merged pair are summed in that same step (recorded as skipped),
    so this is the memory/cost figure the dense executor meters.

``max_rank <= width`` always; the two agree whenever no merge ever leaves
a parallel wire behind, which covers most benchmark instances.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .decomposition import (
    EliminationOrdering,
    TreeDecomposition,
    TreewidthResult,
    fill_in_width,
    td_to_eo,
    treewidth_exact,
    validate_td,
)
from .graph import GraphError
from .network import LineGraphMap, TensorNetwork, line_graph, network_hash


@dataclass
class ContractionSequence:
    """Ordered wire ids covering the whole network, with evaluated cost."""

    steps: list[int]
    complexity: int | None = None  # width measure; equals cc for optimal sequences
    max_rank: int | None = None
    skipped: list[int] = field(default_factory=list)
    optimal: bool = False
    network: str | None = None  # instance hash for artifact pairing

    def to_json_dict(self) -> dict:
        return {
            "network": self.network,
            "steps": list(self.steps),
            "skipped": list(self.skipped),
            "complexity": self.complexity,
            "optimal": self.optimal,
        }

    @staticmethod
    def from_json_dict(doc: dict) -> "ContractionSequence":
        return ContractionSequence(
            steps=list(doc["steps"]),
            complexity=doc.get("complexity"),
            max_rank=doc.get("max_rank"),
            skipped=list(doc.get("skipped", [])),
            optimal=bool(doc.get("optimal", False)),
            network=doc.get("network"),
        )


@dataclass
class SequenceEvaluation:
    width: int
    max_rank: int
    skipped: list[int]
    merges: int
    completed: bool
    uncontracted_components: int = 0

    @property
    def complexity(self) -> int:
        return self.width


class _MergeState:
    """Union-find over tensors with per-cluster live wire sets."""

    def __init__(self, net: TensorNetwork):
        self.parent = list(range(net.n_vertices))
        self.incident: list[set[int]] = [set() for _ in range(net.n_vertices)]
        self.endpoint: dict[int, tuple[int, int]] = {}
        for w in net.wires.values():
            self.endpoint[w.id] = (w.u, w.v)
            self.incident[w.u].add(w.id)
            self.incident[w.v].add(w.id)

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def wire_roots(self, wire_id: int) -> tuple[int, int]:
        u, v = self.endpoint[wire_id]
        return self.find(u), self.find(v)

    def union(self, a: int, b: int) -> int:
        # merge smaller incident set into larger
        if len(self.incident[a]) < len(self.incident[b]):
            a, b = b, a
        self.parent[b] = a
        self.incident[a] |= self.incident[b]
        self.incident[b] = set()
        return a

    def external_count(self, root: int) -> int:
        cnt = 0
        for w in self.incident[root]:
            ru, rv = self.wire_roots(w)
            if ru != root or rv != root:
                cnt += 1
        return cnt


def evaluate_sequence(net: TensorNetwork, seq) -> SequenceEvaluation:
    """Simulate a contraction sequence and report both cost measures.

    ``seq`` may be a :class:`ContractionSequence` or a plain wire-id list.
    A step whose wire is already internal to one cluster (a parallel wire
    consumed by an earlier merge) is recorded as skipped.  If the steps do
    not cover some component, the evaluation of the executed prefix is
    returned with ``completed=False``.
    """
    steps = seq.steps if isinstance(seq, ContractionSequence) else list(seq)
    seen = set()
    for w in steps:
        if w not in net.wires:
            raise GraphError(f"sequence references unknown wire {w}")
        if w in seen:
            raise GraphError(f"wire {w} appears twice in sequence")
        seen.add(w)
    state = _MergeState(net)
    width = 0
    max_rank = 0
    skipped: list[int] = []
    merges = 0
    for w in steps:
        ru, rv = state.wire_roots(w)
        if ru == rv:
            # wire internal to an existing cluster: its own step just
            # removes it; the cluster degree after removal still counts
            state.incident[ru].discard(w)
            width = max(width, len(state.incident[ru]))
            skipped.append(w)
            continue
        state.incident[ru].discard(w)
        state.incident[rv].discard(w)
        root = state.union(ru, rv)
        merges += 1
        width = max(width, len(state.incident[root]))
        max_rank = max(max_rank, state.external_count(root))
    leftover = sum(1 for w in net.wires if w not in seen)
    completed = leftover == 0
    # components never touched stay separate; count them for the report
    uncontracted = 0
    if not completed:
        roots = {state.find(v) for v in range(net.n_vertices)}
        live = {w for w in net.wires if w not in seen}
        uncontracted = len(
            {state.find(net.wires[w].u) for w in live}
            | {state.find(net.wires[w].v) for w in live}
        )
        _ = roots
    return SequenceEvaluation(width, max_rank, skipped, merges, completed, uncontracted)


def brute_force_cc(net: TensorNetwork, max_wires: int = 9) -> int:
    """Exact contraction complexity by exhaustive search over wire orders.

    States are memoized on the set of already-processed wires (the merged
    partition is a function of that set).  Hard-capped at ``max_wires``
    wires; the problem is NP-complete and this is the independent oracle,
    not the production path.
    """
    m = net.n_wires
    if m == 0:
        raise GraphError("no contractible wires")
    if m > max_wires:
        raise GraphError(f"brute force capped at {max_wires} wires, got {m}")
    wire_ids = sorted(net.wires)
    idx = {w: i for i, w in enumerate(wire_ids)}

    best: dict[int, int] = {}

    def solve(mask: int) -> int:
        if mask == (1 << m) - 1:
            return 0
        if mask in best:
            return best[mask]
        state = _MergeState(net)
        for i, w in enumerate(wire_ids):
            if mask >> i & 1:
                ru, rv = state.wire_roots(w)
                state.incident[ru].discard(w)
                state.incident[rv].discard(w)
                if ru != rv:
                    state.union(ru, rv)
        result = m + 1
        for i, w in enumerate(wire_ids):
            if mask >> i & 1:
                continue
            ru, rv = state.wire_roots(w)
            if ru == rv:
                degree = len(state.incident[ru]) - 1
            else:
                degree = len(state.incident[ru] | state.incident[rv]) - 1
            result = min(result, max(degree, solve(mask | 1 << i)))
        best[mask] = result
        return result

    _ = idx
    return solve(0)


@dataclass
class ContractionResult:
    cc: int
    sequence: ContractionSequence
    optimal: bool
    solver: TreewidthResult


def td_to_sequence(
    net: TensorNetwork, td: TreeDecomposition, lgm: LineGraphMap
) -> ContractionSequence:
    """Contraction sequence from a line-graph tree decomposition.

    The decomposition turns into an elimination ordering of the line
    graph, and wires are contracted in that order.  The evaluated width
    equals the ordering's fill-in width, hence never exceeds the
    decomposition's width (and matches it when the decomposition is
    optimal).
    """
    report = validate_td(lgm.line_graph, td)
    if not report.ok:
        v = report.first()
        raise GraphError(f"invalid tree decomposition: {v.condition}: {v.message}")
    eo = td_to_eo(lgm.line_graph, td)
    steps = [lgm.wire_of_vertex[x] for x in eo.order]
    ev = evaluate_sequence(net, steps)
    return ContractionSequence(
        steps=steps,
        complexity=ev.width,
        max_rank=ev.max_rank,
        skipped=ev.skipped,
        network=network_hash(net),
    )


def sequence_to_eo(
    net: TensorNetwork, seq, lgm: LineGraphMap
) -> EliminationOrdering:
    """Elimination ordering of the line graph induced by a sequence.

    The wire contracted at step i is eliminated at position i; wires the
    sequence does not mention are appended in id order.  The fill-in
    width of the result equals the sequence's evaluated width.
    """
    steps = list(seq.steps if isinstance(seq, ContractionSequence) else seq)
    mentioned = set(steps)
    steps += [w for w in sorted(net.wires) if w not in mentioned]
    order = [lgm.vertex_of_wire[w] for w in steps]
    width, _ = fill_in_width(lgm.line_graph, order)
    return EliminationOrdering(order, width)


def optimal_cc(
    net: TensorNetwork, timeout: float | None = None, cancel=None
) -> ContractionResult:
    """Optimal contraction complexity via exact line-graph treewidth.

    On solver timeout the best heuristic decomposition is converted
    instead and the result is flagged non-optimal; ``cc`` is then an
    upper bound witnessed by the attached sequence.
    """
    lgm = line_graph(net)
    res = treewidth_exact(lgm.line_graph, timeout=timeout, cancel=cancel)
    seq = td_to_sequence(net, res.decomposition, lgm)
    seq.optimal = res.optimal
    cc = res.width if res.optimal else seq.complexity
    return ContractionResult(cc=cc, sequence=seq, optimal=res.optimal, solver=res)
