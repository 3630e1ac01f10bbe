"""Dense execution of contraction sequences and a state-vector oracle.

The contraction kernel is deliberately transparent about cost: each merge
touches the union of the two tensors' legs, and the multiply-add count is
the product of the touched leg dimensions, exactly the loop count of the
naive index-merge kernel.  The arithmetic itself goes through
numpy.tensordot, which computes the same sums.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .graph import GraphError
from .network import TensorNetwork

DEFAULT_MEMORY_CAP = 1 << 30  # entries of the largest intermediate allowed


class ExecutionError(GraphError):
    pass


@dataclass
class DenseTensor:
    """Complex tensor whose axes are labeled by wire (or open leg) ids."""

    legs: tuple[int, ...]
    data: np.ndarray

    def __post_init__(self):
        self.legs = tuple(self.legs)
        self.data = np.asarray(self.data, dtype=np.complex128)
        if len(set(self.legs)) != len(self.legs):
            raise ExecutionError(f"duplicate leg ids in {self.legs}")
        if self.data.ndim != len(self.legs):
            raise ExecutionError(
                f"tensor with {len(self.legs)} legs has array of rank {self.data.ndim}"
            )


@dataclass
class StepTrace:
    wire: int
    rank: int
    multiply_adds: int


@dataclass
class ExecutionTrace:
    steps: list[StepTrace] = field(default_factory=list)
    max_rank: int = 0
    total_multiply_adds: int = 0
    wall_time_ms: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "max_rank": self.max_rank,
            "total_multiply_adds": self.total_multiply_adds,
            "wall_time_ms": self.wall_time_ms,
            "steps": [
                {"wire": s.wire, "rank": s.rank, "multiply_adds": s.multiply_adds}
                for s in self.steps
            ],
        }


def contract_all(
    net: TensorNetwork,
    tensors: dict[int, DenseTensor],
    seq,
    memory_cap: int = DEFAULT_MEMORY_CAP,
) -> tuple[complex, ExecutionTrace]:
    """Contract a closed numeric network along a sequence.

    Every tensor must carry entries and the network must have no open
    legs.  A merge sums over all wires shared between the two current
    tensors (parallel wires between the pair go in one step).  Returns the
    scalar amplitude and the per-step trace.
    """
    if net.open_legs:
        raise ExecutionError("network has open legs; amplitude requires closure")
    for v in range(net.n_vertices):
        if v not in tensors:
            raise ExecutionError(f"tensor {v} has no entries")
    steps = seq.steps if hasattr(seq, "steps") else list(seq)
    t0 = time.perf_counter()
    parent = list(range(net.n_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    current: dict[int, DenseTensor] = {
        v: DenseTensor(t.legs, t.data) for v, t in tensors.items()
    }
    trace = ExecutionTrace()
    for w in steps:
        wire = net.wire(w)
        ru, rv = find(wire.u), find(wire.v)
        if ru == rv:
            continue  # consumed as a parallel wire of an earlier merge
        a, b = current[ru], current[rv]
        shared = sorted(set(a.legs) & set(b.legs))
        if w not in shared:
            raise ExecutionError(f"wire {w} not present on both tensors at its step")
        axes_a = [a.legs.index(s) for s in shared]
        axes_b = [b.legs.index(s) for s in shared]
        rest_a = [l for l in a.legs if l not in shared]
        rest_b = [l for l in b.legs if l not in shared]
        touched = int(np.prod([d for d in a.data.shape], dtype=np.int64)) * int(
            np.prod([b.data.shape[i] for i in range(b.data.ndim) if i not in axes_b],
                    dtype=np.int64)
        )
        out_size = 1
        for l in rest_a + rest_b:
            out_size *= net.wire(l).dim if l in net.wires else 2
        if out_size > memory_cap:
            raise ExecutionError(
                f"step on wire {w} produces {out_size} entries, over the cap {memory_cap}"
            )
        data = np.tensordot(a.data, b.data, axes=(axes_a, axes_b))
        merged = DenseTensor(tuple(rest_a + rest_b), data)
        parent[rv] = ru
        current.pop(rv, None)
        current[ru] = merged
        trace.steps.append(StepTrace(w, len(merged.legs), touched))
        trace.max_rank = max(trace.max_rank, len(merged.legs))
        trace.total_multiply_adds += touched
    roots = {find(v) for v in range(net.n_vertices)}
    amplitude = complex(1.0)
    for r in roots:
        t = current[r]
        if t.legs:
            raise ExecutionError(
                f"sequence leaves tensor with open wires {t.legs}; component uncontracted"
            )
        amplitude *= complex(t.data)
    trace.wall_time_ms = (time.perf_counter() - t0) * 1e3
    return amplitude, trace


# ---------------------------------------------------------------------------
# State-vector oracle
# ---------------------------------------------------------------------------

ORACLE_QUBIT_CAP = 20


@dataclass
class Circuit:
    """Plain circuit description for the oracle: product initial state,
    gate layers in application order, product terminal projection."""

    n_qubits: int
    layers: list[tuple[np.ndarray, tuple[int, ...]]] = field(default_factory=list)
    initial: list[np.ndarray] | None = None
    terminal: list[np.ndarray] | None = None


def statevector_oracle(circuit: Circuit) -> complex:
    """Amplitude by direct state-vector evolution; capped at 20 qubits."""
    n = circuit.n_qubits
    if n > ORACLE_QUBIT_CAP:
        raise ExecutionError(f"oracle capped at {ORACLE_QUBIT_CAP} qubits, got {n}")
    init = circuit.initial or [np.array([1.0, 0.0]) for _ in range(n)]
    term = circuit.terminal or [np.array([1.0, 0.0]) for _ in range(n)]
    psi = np.ones((), dtype=np.complex128)
    for vec in init:
        psi = np.tensordot(psi, np.asarray(vec, dtype=np.complex128), axes=0)
    psi = psi.reshape((2,) * n) if n else psi
    for mat, qubits in circuit.layers:
        mat = np.asarray(mat, dtype=np.complex128)
        k = len(qubits)
        op = mat.reshape((2,) * (2 * k))
        # contract op input axes with psi qubit axes, then restore axis order
        psi = np.tensordot(op, psi, axes=(list(range(k, 2 * k)), list(qubits)))
        order = list(qubits) + [q for q in range(n) if q not in qubits]
        psi = np.moveaxis(psi, list(range(n)), order)
    for vec in term:
        # contracting the leading axis makes the next qubit the new axis 0
        psi = np.tensordot(np.conj(np.asarray(vec, dtype=np.complex128)), psi, axes=(0, 0))
    return complex(psi)
