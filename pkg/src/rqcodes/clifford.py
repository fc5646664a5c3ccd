"""Clifford tableaux and the two-qubit Clifford group.

A :class:`CliffordTableau` stores the signed images ``U X_q U^dag`` and
``U Z_q U^dag`` of the single-qubit generators.  The two-qubit group is
materialized once, by breadth-first closure of {H, S, CNOT} on both qubits,
and sorted into a canonical order so that circuits can refer to gates by
integer index.  Global phases are quotiented out.
"""

from __future__ import annotations

import functools
import hashlib
from collections import deque
from typing import Sequence

import numpy as np

from . import dense
from .pauli import DimensionError, PauliString, mul_phase

__all__ = [
    "CliffordTableau",
    "TwoQubitCliffordTable",
    "TABLE_SIZE",
    "identity_tableau",
    "enumerate_two_qubit_cliffords",
    "two_qubit_table",
    "sample_gate_index",
    "apply_gate",
    "conjugate",
]

TABLE_SIZE = 11520  # |Sp(4, 2)| * 2**4


def _conj_raw(xs, zs, phs, n, x, z, phase):
    """Conjugate the Pauli (x, z, phase) through generator images.

    ``xs, zs, phs`` hold 2n images ordered X_0..X_{n-1}, Z_0..Z_{n-1}.
    """
    ax = az = 0
    aph = phase + (x & z).bit_count()
    for bits, off in ((x, 0), (z, n)):
        while bits:
            low = bits & -bits
            q = low.bit_length() - 1 + off
            bx, bz = xs[q], zs[q]
            aph += phs[q] + mul_phase(ax, az, bx, bz)
            ax ^= bx
            az ^= bz
            bits ^= low
    return ax, az, aph & 3


class CliffordTableau:
    """Clifford unitary on ``n`` qubits, up to global phase."""

    __slots__ = ("n", "_xs", "_zs", "_phs")

    def __init__(self, x_images: Sequence[PauliString], z_images: Sequence[PauliString]):
        n = len(x_images)
        if len(z_images) != n or n < 1:
            raise ValueError("need n X-images and n Z-images")
        imgs = list(x_images) + list(z_images)
        for p in imgs:
            if p.n != n:
                raise DimensionError("image qubit count does not match tableau")
            if not p.is_hermitian:
                raise ValueError(f"generator image {p} is not Hermitian")
        self.n = n
        self._xs = [p.x for p in imgs]
        self._zs = [p.z for p in imgs]
        self._phs = [p.phase for p in imgs]

    @classmethod
    def _from_raw(cls, n, xs, zs, phs) -> CliffordTableau:
        obj = cls.__new__(cls)
        obj.n = n
        obj._xs = list(xs)
        obj._zs = list(zs)
        obj._phs = list(phs)
        return obj

    @property
    def x_images(self) -> tuple[PauliString, ...]:
        return tuple(PauliString(self.n, self._xs[q], self._zs[q], self._phs[q]) for q in range(self.n))

    @property
    def z_images(self) -> tuple[PauliString, ...]:
        n = self.n
        return tuple(PauliString(n, self._xs[q], self._zs[q], self._phs[q]) for q in range(n, 2 * n))

    def conjugate(self, p: PauliString) -> PauliString:
        """Return ``U p U^dag``."""
        if p.n != self.n:
            raise DimensionError(f"tableau acts on {self.n} qubits, Pauli on {p.n}")
        x, z, ph = _conj_raw(self._xs, self._zs, self._phs, self.n, p.x, p.z, p.phase)
        if p.is_hermitian and ph & 1:
            raise AssertionError("conjugation produced a non-Hermitian image")
        return PauliString(self.n, x, z, ph)

    def is_symplectic(self) -> bool:
        n = self.n
        imgs = list(zip(self._xs, self._zs))
        for a in range(2 * n):
            for b in range(a + 1, 2 * n):
                (x1, z1), (x2, z2) = imgs[a], imgs[b]
                anti = ((x1 & z2).bit_count() + (z1 & x2).bit_count()) & 1
                if anti != (b == a + n):
                    return False
        return True

    def then(self, other: CliffordTableau) -> CliffordTableau:
        """Tableau of ``other * self`` (apply ``self`` first)."""
        if other.n != self.n:
            raise DimensionError("tableau sizes differ")
        out = [
            _conj_raw(other._xs, other._zs, other._phs, self.n, x, z, ph)
            for x, z, ph in zip(self._xs, self._zs, self._phs)
        ]
        return CliffordTableau._from_raw(self.n, *zip(*out))

    def key(self) -> tuple:
        return (tuple(self._xs), tuple(self._zs), tuple(self._phs))

    def copy(self) -> CliffordTableau:
        return CliffordTableau._from_raw(self.n, self._xs, self._zs, self._phs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CliffordTableau):
            return NotImplemented
        return self.n == other.n and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        xs = ", ".join(map(str, self.x_images))
        zs = ", ".join(map(str, self.z_images))
        return f"CliffordTableau(n={self.n}, x_images=[{xs}], z_images=[{zs}])"


def identity_tableau(n: int) -> CliffordTableau:
    if n < 1:
        raise ValueError("n must be >= 1")
    xs = [1 << q for q in range(n)] + [0] * n
    zs = [0] * n + [1 << q for q in range(n)]
    return CliffordTableau._from_raw(n, xs, zs, [0] * (2 * n))


def conjugate(tab: CliffordTableau, p: PauliString) -> PauliString:
    return tab.conjugate(p)


def tableau_from_unitary(u: np.ndarray) -> CliffordTableau:
    n = int(np.log2(u.shape[0]))
    xs, zs = dense.pauli_images(u, n)
    return CliffordTableau(xs, zs)


def _canonical_key(tab: CliffordTableau) -> tuple[int, int]:
    # each image packs as x | z << 2 (4 bits); images ordered X0, X1, Z0, Z1
    bits = signs = 0
    for idx in range(4):
        bits |= (tab._xs[idx] | tab._zs[idx] << 2) << (4 * idx)
        signs |= (tab._phs[idx] >> 1) << idx
    return bits, signs


class TwoQubitCliffordTable:
    """All 11,520 two-qubit Cliffords (mod global phase) in canonical order.

    Attributes
    ----------
    entries : list of CliffordTableau
    unitaries : complex array (11520, 4, 4), one representative matrix each
    local_images : list of bytes; ``local_images[g][a]`` packs the image of
        the local Pauli ``a = x0 | x1<<1 | z0<<2 | z1<<3`` as ``b | flip<<4``
        where ``flip`` marks a sign change.
    """

    def __init__(self, entries: list[CliffordTableau], unitaries: np.ndarray):
        self.entries = entries
        self.unitaries = unitaries
        self._index = {t.key(): g for g, t in enumerate(entries)}
        self.local_images = [self._local_row(t) for t in entries]

    @staticmethod
    def _local_row(t: CliffordTableau) -> bytes:
        row = bytearray(16)
        for a in range(16):
            x, z = a & 3, a >> 2
            bx, bz, ph = _conj_raw(t._xs, t._zs, t._phs, 2, x, z, 0)
            assert ph in (0, 2)
            row[a] = bx | bz << 2 | (ph >> 1) << 4
        return bytes(row)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, g: int) -> CliffordTableau:
        return self.entries[g]

    def index_of(self, tab: CliffordTableau) -> int:
        return self._index[tab.key()]

    def named(self, name: str) -> int:
        """Index of a named gate (see ``dense.NAMED_GATES``)."""
        return self.index_from_unitary(dense.NAMED_GATES[name])

    def index_from_unitary(self, u: np.ndarray) -> int:
        return self.index_of(tableau_from_unitary(u))

    def inverse(self, g: int) -> int:
        return self.index_from_unitary(self.unitaries[g].conj().T)

    def canonical_bytes(self) -> bytes:
        out = bytearray()
        for t in self.entries:
            bits, signs = _canonical_key(t)
            out += bits.to_bytes(2, "little") + bytes([signs])
        return bytes(out)

    @functools.cached_property
    def checksum(self) -> str:
        return hashlib.sha256(self.canonical_bytes()).hexdigest()


def enumerate_two_qubit_cliffords() -> TwoQubitCliffordTable:
    """Breadth-first closure of the H, S, CNOT generators on two qubits."""
    gens = [(tableau_from_unitary(m), m) for m in dense.GENERATORS.values()]
    start = identity_tableau(2)
    seen = {start.key(): (start, np.eye(4, dtype=complex))}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        u = seen[t.key()][1]
        for gt, gm in gens:
            nt = t.then(gt)
            k = nt.key()
            if k not in seen:
                seen[k] = (nt, gm @ u)
                queue.append(nt)
    items = sorted(seen.values(), key=lambda tu: _canonical_key(tu[0]))
    entries = [t for t, _ in items]
    unitaries = np.array([u for _, u in items])
    return TwoQubitCliffordTable(entries, unitaries)


@functools.cache
def two_qubit_table() -> TwoQubitCliffordTable:
    """Process-wide shared table, built on first use."""
    return enumerate_two_qubit_cliffords()


def sample_gate_index(rng: np.random.Generator) -> int:
    return int(rng.integers(TABLE_SIZE))


def _check_pair(n: int, i: int, j: int) -> None:
    if i == j:
        raise ValueError(f"gate qubits must differ, got ({i}, {j})")
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"gate qubits ({i}, {j}) out of range for n={n}")


def _apply_local(row: bytes, i: int, j: int, xs: list, zs: list, phs: list) -> None:
    """Rewrite the letters on qubits i, j of every image in place."""
    for idx in range(len(xs)):
        x, z = xs[idx], zs[idx]
        a = ((x >> i) & 1) | ((x >> j) & 1) << 1 | ((z >> i) & 1) << 2 | ((z >> j) & 1) << 3
        if not a:
            continue
        r = row[a]
        d = (r ^ a) & 15
        if d:
            xs[idx] = x ^ ((d & 1) << i) ^ (((d >> 1) & 1) << j)
            zs[idx] = z ^ (((d >> 2) & 1) << i) ^ (((d >> 3) & 1) << j)
        if r & 16:
            phs[idx] ^= 2


def apply_gate(
    tab: CliffordTableau,
    gate_index: int,
    pair: tuple[int, int],
    table: TwoQubitCliffordTable | None = None,
) -> CliffordTableau:
    """Tableau of ``g_{ij} U``: the gate acts after ``tab``."""
    i, j = pair
    _check_pair(tab.n, i, j)
    table = table or two_qubit_table()
    out = tab.copy()
    _apply_local(table.local_images[gate_index], i, j, out._xs, out._zs, out._phs)
    return out
