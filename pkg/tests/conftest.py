import functools

import numpy as np
import pytest

from rqcodes.clifford import two_qubit_table

# Independent dense oracle: built letter by letter from the 2x2 matrices,
# qubit 0 is the least significant tensor factor.
_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_PHASE = {"+": 1, "-": -1, "+i": 1j, "-i": -1j}


def dense_pauli(text: str) -> np.ndarray:
    for prefix in ("+i", "-i", "+", "-"):
        if text.startswith(prefix):
            coef, letters = _PHASE[prefix], text[len(prefix):]
            break
    else:
        coef, letters = 1, text
    m = np.ones((1, 1), dtype=complex)
    for ch in letters:
        m = np.kron(_MATS[ch], m)
    return coef * m


def dense_to_text(m: np.ndarray, n: int) -> str:
    """Identify ``m`` as phase * Pauli string by brute force over all 4**n strings."""
    import itertools

    for letters in itertools.product("IXYZ", repeat=n):
        s = "".join(letters)
        p = dense_pauli(s)
        ov = np.trace(p.conj().T @ m) / 2**n
        if abs(abs(ov) - 1) < 1e-9:
            for pre, val in _PHASE.items():
                if abs(ov - val) < 1e-9:
                    return pre + s
    raise AssertionError("matrix is not a scaled Pauli string")


def circuit_unitary(c) -> np.ndarray:
    """Dense unitary of a circuit by explicit embedding of each 4x4 gate."""
    n = c.n
    dim = 2**n
    us = two_qubit_table().unitaries
    total = np.eye(dim, dtype=complex)
    for i, j, g in zip(c.qi.tolist(), c.qj.tolist(), c.cliff.tolist()):
        big = np.zeros((dim, dim), dtype=complex)
        for b in range(dim):
            a_in = ((b >> i) & 1) | ((b >> j) & 1) << 1
            rest = b & ~((1 << i) | (1 << j))
            for a_out in range(4):
                b2 = rest | (a_out & 1) << i | ((a_out >> 1) & 1) << j
                big[b2, b] += us[g][a_out, a_in]
        total = big @ total
    return total


@pytest.fixture(scope="session")
def table():
    return two_qubit_table()


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
