"""Dense matrix helpers for small qubit counts.

Basis index ``b`` carries qubit ``q`` in bit ``q``, so the matrix of a Pauli
string is ``kron(P_{n-1}, ..., P_1, P_0)``.
"""

from __future__ import annotations

import numpy as np

from .pauli import PauliString

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
S = np.diag([1, 1j])

_LETTER_MATS = {"I": I2, "X": X, "Y": Y, "Z": Z}


def pauli_matrix(p: PauliString) -> np.ndarray:
    m = np.ones((1, 1), dtype=complex)
    for ch in p.letters():
        m = np.kron(_LETTER_MATS[ch], m)
    return (1j ** p.phase) * m


def _permutation_matrix(perm) -> np.ndarray:
    d = len(perm)
    m = np.zeros((d, d), dtype=complex)
    for b, b2 in enumerate(perm):
        m[b2, b] = 1
    return m


# two-qubit generators; gate qubit 0 is bit 0 of the 4-dim basis index
GENERATORS = {
    "H0": np.kron(I2, H),
    "H1": np.kron(H, I2),
    "S0": np.kron(I2, S),
    "S1": np.kron(S, I2),
    "CNOT01": _permutation_matrix([b ^ 2 if b & 1 else b for b in range(4)]),
    "CNOT10": _permutation_matrix([b ^ 1 if b & 2 else b for b in range(4)]),
}

NAMED_GATES = dict(GENERATORS)
NAMED_GATES.update(
    {
        "I": np.eye(4, dtype=complex),
        "CZ": np.diag([1, 1, 1, -1]).astype(complex),
        "SWAP": _permutation_matrix([0, 2, 1, 3]),
        "X0": np.kron(I2, X),
        "X1": np.kron(X, I2),
        "Z0": np.kron(I2, Z),
        "Z1": np.kron(Z, I2),
    }
)


def pauli_images(u: np.ndarray, n: int) -> tuple[list[PauliString], list[PauliString]]:
    """Signed Pauli images ``U X_q U^dag`` and ``U Z_q U^dag`` of a Clifford matrix.

    Brute force over all 4**n Paulis; intended for n <= 3.
    """
    dim = 1 << n
    candidates = [PauliString(n, x, z) for x in range(dim) for z in range(dim)]
    mats = [pauli_matrix(c) for c in candidates]

    def image(p: PauliString) -> PauliString:
        m = u @ pauli_matrix(p) @ u.conj().T
        for c, cm in zip(candidates, mats):
            ov = np.trace(cm @ m) / dim
            if abs(abs(ov) - 1) < 1e-9:
                if abs(ov - 1) < 1e-9:
                    return c
                if abs(ov + 1) < 1e-9:
                    return PauliString(n, c.x, c.z, 2)
                raise ValueError("non-Hermitian image; matrix is not Clifford")
        raise ValueError("image is not a Pauli; matrix is not Clifford")

    xs = [image(PauliString.single(n, q, "X")) for q in range(n)]
    zs = [image(PauliString.single(n, q, "Z")) for q in range(n)]
    return xs, zs


def apply_two_qubit(state: np.ndarray, u: np.ndarray, i: int, j: int, n: int) -> np.ndarray:
    """Apply a 4x4 gate to qubits (i, j) of a batch of states shaped (..., 2**n).

    Gate qubit 0 acts on ``i`` and gate qubit 1 on ``j``.
    """
    lead = state.shape[:-1]
    psi = state.reshape(lead + (2,) * n)
    nl = len(lead)
    ai = nl + n - 1 - i
    aj = nl + n - 1 - j
    # gate tensor indices: (out_j, out_i, in_j, in_i)
    g = u.reshape(2, 2, 2, 2)
    psi = np.tensordot(psi, g, axes=([aj, ai], [2, 3]))
    # tensordot appends (out_j, out_i) at the end; move them back
    psi = np.moveaxis(psi, [-2, -1], [aj, ai])
    return psi.reshape(state.shape)
