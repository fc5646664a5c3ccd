"""Random sequential circuits, serialization and depth scheduling."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, NamedTuple

import numpy as np

from .clifford import (
    TABLE_SIZE,
    CliffordTableau,
    _apply_local,
    identity_tableau,
    two_qubit_table,
)
from .pauli import DimensionError, PauliString

__all__ = [
    "Gate",
    "Circuit",
    "LayeredCircuit",
    "sample_circuit",
    "parallelize",
    "parallelize_asap",
    "depth",
    "circuit_to_tableau",
    "conjugate_through",
    "max_wire_load",
]


class Gate(NamedTuple):
    i: int
    j: int
    clifford_index: int


@dataclass(eq=False)
class Circuit:
    """Ordered two-qubit gates stored column-wise (``qi``, ``qj``, ``cliff``)."""

    n: int
    qi: np.ndarray
    qj: np.ndarray
    cliff: np.ndarray
    seed: int | None = None

    def __post_init__(self):
        self.qi = np.asarray(self.qi, dtype=np.int64)
        self.qj = np.asarray(self.qj, dtype=np.int64)
        self.cliff = np.asarray(self.cliff, dtype=np.int64)
        if not (len(self.qi) == len(self.qj) == len(self.cliff)):
            raise ValueError("gate columns have different lengths")
        if len(self.qi):
            if np.any(self.qi == self.qj):
                raise ValueError("a gate acts twice on the same qubit")
            lo = min(self.qi.min(), self.qj.min())
            hi = max(self.qi.max(), self.qj.max())
            if lo < 0 or hi >= self.n:
                raise ValueError("gate qubit index out of range")
            if self.cliff.min() < 0 or self.cliff.max() >= TABLE_SIZE:
                raise ValueError("clifford index out of range")

    @classmethod
    def from_gates(cls, n: int, gates, seed: int | None = None) -> Circuit:
        gates = list(gates)
        cols = np.array(gates, dtype=np.int64).reshape(-1, 3)
        return cls(n, cols[:, 0], cols[:, 1], cols[:, 2], seed)

    @property
    def gates(self) -> list[Gate]:
        return [Gate(*g) for g in zip(self.qi.tolist(), self.qj.tolist(), self.cliff.tolist())]

    def __len__(self) -> int:
        return len(self.qi)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Circuit):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.qi, other.qi)
            and np.array_equal(self.qj, other.qj)
            and np.array_equal(self.cliff, other.cliff)
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "seed": self.seed,
            "gate_table_checksum": two_qubit_table().checksum,
            "gates": [{"i": g.i, "j": g.j, "c": g.clifford_index} for g in self.gates],
        }

    @classmethod
    def from_dict(cls, d: dict, check_table: bool = True) -> Circuit:
        if check_table and d.get("gate_table_checksum") not in (None, two_qubit_table().checksum):
            raise ValueError("circuit was written against a different gate table")
        gates = [(g["i"], g["j"], g["c"]) for g in d["gates"]]
        return cls.from_gates(d["n"], gates, d.get("seed"))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict()))

    @classmethod
    def load(cls, path: str | Path) -> Circuit:
        return cls.from_dict(json.loads(Path(path).read_text()))


@dataclass
class LayeredCircuit:
    """The gates of ``circuit`` partitioned into layers of disjoint support.

    ``layers`` holds positions into the source circuit's gate sequence.
    """

    circuit: Circuit
    layers: list[list[int]] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.circuit.n

    @property
    def depth(self) -> int:
        return len(self.layers)

    def layer_gates(self) -> list[list[Gate]]:
        gates = self.circuit.gates
        return [[gates[p] for p in layer] for layer in self.layers]

    def layer_sizes(self) -> list[int]:
        return [len(layer) for layer in self.layers]

    def flattened(self) -> Circuit:
        """Circuit obtained by reading the layers in order."""
        order = np.array([p for layer in self.layers for p in layer], dtype=np.int64)
        c = self.circuit
        return Circuit(c.n, c.qi[order], c.qj[order], c.cliff[order], c.seed)


def sample_circuit(n: int, t: int, rng: np.random.Generator) -> Circuit:
    """``t`` gates, each on a uniform ordered pair i != j with a uniform C2 element."""
    if n < 2:
        raise ValueError("need at least two qubits")
    if t < 0:
        raise ValueError("t must be non-negative")
    qi = rng.integers(0, n, size=t)
    qj = rng.integers(0, n - 1, size=t)
    qj += qj >= qi
    cliff = rng.integers(0, TABLE_SIZE, size=t)
    return Circuit(n, qi, qj, cliff)


def parallelize(c: Circuit) -> LayeredCircuit:
    """Greedy leveling: a gate that conflicts with the current layer opens a new one."""
    layers: list[list[int]] = []
    stamp = [-1] * c.n
    cur: list[int] = []
    level = 0
    for pos, (i, j) in enumerate(zip(c.qi.tolist(), c.qj.tolist())):
        if stamp[i] == level or stamp[j] == level:
            layers.append(cur)
            cur = []
            level += 1
        stamp[i] = stamp[j] = level
        cur.append(pos)
    if cur:
        layers.append(cur)
    return LayeredCircuit(c, layers)


def parallelize_asap(c: Circuit) -> LayeredCircuit:
    """Each gate goes to the first layer after the last gate on either of its qubits."""
    last = [0] * c.n
    layers: list[list[int]] = []
    for pos, (i, j) in enumerate(zip(c.qi.tolist(), c.qj.tolist())):
        lev = max(last[i], last[j])
        if lev == len(layers):
            layers.append([])
        layers[lev].append(pos)
        last[i] = last[j] = lev + 1
    return LayeredCircuit(c, layers)


def depth(lc: LayeredCircuit) -> int:
    return lc.depth


def max_wire_load(c: Circuit) -> int:
    """Largest number of gates touching a single qubit (a lower bound on depth)."""
    if not len(c):
        return 0
    return int(np.bincount(np.concatenate([c.qi, c.qj]), minlength=c.n).max())


def circuit_to_tableau(c: Circuit) -> CliffordTableau:
    """Tableau of ``g_t ... g_2 g_1`` (gates applied in list order)."""
    tab = identity_tableau(c.n)
    rows = two_qubit_table().local_images
    xs, zs, phs = tab._xs, tab._zs, tab._phs
    for i, j, g in zip(c.qi.tolist(), c.qj.tolist(), c.cliff.tolist()):
        _apply_local(rows[g], i, j, xs, zs, phs)
    return tab


def conjugate_through(c: Circuit, p: PauliString) -> PauliString:
    """``U p U^dag`` for the circuit unitary, propagating ``p`` gate by gate."""
    if p.n != c.n:
        raise DimensionError(f"circuit acts on {c.n} qubits, Pauli on {p.n}")
    rows = two_qubit_table().local_images
    xs, zs, phs = [p.x], [p.z], [p.phase]
    for i, j, g in zip(c.qi.tolist(), c.qj.tolist(), c.cliff.tolist()):
        _apply_local(rows[g], i, j, xs, zs, phs)
    return PauliString(c.n, xs[0], zs[0], phs[0])
