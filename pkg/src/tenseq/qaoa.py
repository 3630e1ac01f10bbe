"""QAOA MaxCut circuits as tensor networks.

The circuit for a graph g and p rounds, with amplitude closure:

* per qubit a rank-1 initial |+> tensor and a rank-1 terminal <0| tensor,
* per round: one rank-4 cost tensor per edge of g (sorted edge order),
  then one rank-2 mixing tensor per qubit,
* wires follow each qubit's worldline through the layers in that fixed order.

The cost gate is a single rank-4 tensor exp(-i*gamma*(1 - Z.Z)/2) per edge
rather than a CNOT-Rz-CNOT decomposition; the decomposed form is available
behind ``decompose_cost=True``.  Default angles are arbitrary documented
constants, never ground truth: executor results are checked against the
state-vector oracle at whatever angles the caller picks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .executor import Circuit, DenseTensor
from .graph import Graph, GraphError
from .network import TensorNetwork

DEFAULT_GAMMA = 0.4
DEFAULT_BETA = 0.3


def cost_gate(gamma: float) -> np.ndarray:
    """exp(-i*gamma*(1 - Z.Z)/2), diagonal on the two-qubit basis."""
    phase = np.exp(-1j * gamma)
    return np.diag([1.0, phase, phase, 1.0]).astype(np.complex128)


def mixer_gate(beta: float) -> np.ndarray:
    """exp(-i*beta*X)."""
    c, s = math.cos(beta), math.sin(beta)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)


_CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128
)


def _rz(theta: float) -> np.ndarray:
    return np.diag([np.exp(-1j * theta / 2), np.exp(1j * theta / 2)]).astype(
        np.complex128
    )


@dataclass
class QaoaCircuit:
    """Structural network, numeric tensors, and the layer list the
    state-vector oracle replays."""

    graph: Graph
    p: int
    gamma: float
    beta: float
    network: TensorNetwork
    tensors: dict[int, DenseTensor] = field(default_factory=dict)
    circuit: Circuit | None = None

    @property
    def n_qubits(self) -> int:
        return self.graph.n


class _Builder:
    """Tracks each qubit's worldline frontier and, per tensor, which wire
    is its input/output on which qubit, so legs can be assembled in the
    tensor's own (inputs..., outputs...) qubit order regardless of when
    downstream consumers attach."""

    def __init__(self, net: TensorNetwork):
        self.net = net
        self.frontier: dict[int, int] = {}
        self.qubits_of: dict[int, tuple[int, ...]] = {}
        self.in_leg: dict[int, dict[int, int]] = {}
        self.out_leg: dict[int, dict[int, int]] = {}

    def new_vertex(self, role: str, rank: int, qubits: tuple[int, ...]) -> int:
        v = self.net.add_vertex(role, rank=rank)
        self.qubits_of[v] = qubits
        self.in_leg[v] = {}
        self.out_leg[v] = {}
        return v

    def advance(self, q: int, v: int) -> None:
        prev = self.frontier[q]
        w = self.net.add_wire(prev, v)
        self.out_leg[prev][q] = w
        self.in_leg[v][q] = w
        self.frontier[q] = v

    def legs(self, v: int) -> tuple[int, ...]:
        qs = self.qubits_of[v]
        ins = [self.in_leg[v][q] for q in qs if q in self.in_leg[v]]
        outs = [self.out_leg[v][q] for q in qs if q in self.out_leg[v]]
        return tuple(ins + outs)


def qaoa_maxcut_network(
    g: Graph,
    p: int = 1,
    gamma: float = DEFAULT_GAMMA,
    beta: float = DEFAULT_BETA,
    entries: bool = True,
    decompose_cost: bool = False,
) -> QaoaCircuit:
    """Tensor network of the p-round QAOA MaxCut circuit on ``g``."""
    if p < 1:
        raise GraphError(f"rounds must be >= 1, got {p}")
    if g.n < 1:
        raise GraphError("graph must have at least one vertex")
    net = TensorNetwork()
    b = _Builder(net)
    gates: dict[int, np.ndarray] = {}  # vertex -> unitary in circuit convention
    layers: list[tuple[np.ndarray, tuple[int, ...]]] = []

    plus = np.array([1.0, 1.0], dtype=np.complex128) / math.sqrt(2.0)
    zero = np.array([1.0, 0.0], dtype=np.complex128)
    cost = cost_gate(gamma)
    mix = mixer_gate(beta)

    for q in range(g.n):
        v = b.new_vertex("state", rank=1, qubits=(q,))
        gates[v] = plus
        b.frontier[q] = v

    def place(mat: np.ndarray, qubits: tuple[int, ...]) -> None:
        v = b.new_vertex("gate", rank=2 * len(qubits), qubits=qubits)
        for q in qubits:
            b.advance(q, v)
        gates[v] = mat
        layers.append((mat, qubits))

    for _round in range(p):
        for u, v in g.edges():
            if decompose_cost:
                place(_CNOT, (u, v))
                place(_rz(gamma), (v,))
                place(_CNOT, (u, v))
            else:
                place(cost, (u, v))
        for q in range(g.n):
            place(mix, (q,))

    for q in range(g.n):
        v = b.new_vertex("projector", rank=1, qubits=(q,))
        b.advance(q, v)
        gates[v] = zero

    net.validate()
    qc = QaoaCircuit(
        graph=g, p=p, gamma=gamma, beta=beta, network=net,
        circuit=Circuit(
            n_qubits=g.n,
            layers=layers,
            initial=[plus.copy() for _ in range(g.n)],
            terminal=[zero.copy() for _ in range(g.n)],
        ),
    )
    if entries:
        tensors: dict[int, DenseTensor] = {}
        for v, mat in gates.items():
            legs = b.legs(v)
            if len(legs) == 1:
                tensors[v] = DenseTensor(legs, mat.copy())
            elif len(legs) == 2:
                # legs (in, out): T[i, o] = U[o, i]
                tensors[v] = DenseTensor(legs, mat.T.copy())
            else:
                # legs (in_a, in_b, out_a, out_b); U indexed [out_pair, in_pair]
                t = mat.reshape(2, 2, 2, 2)  # [oa, ob, ia, ib]
                tensors[v] = DenseTensor(legs, np.ascontiguousarray(
                    np.transpose(t, (2, 3, 0, 1))
                ))
        qc.tensors = tensors
    return qc
