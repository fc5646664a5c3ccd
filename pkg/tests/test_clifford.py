import itertools

import numpy as np
import pytest
from scipy.stats import chisquare

from rqcodes.circuits import Circuit, circuit_to_tableau, sample_circuit
from rqcodes.clifford import (
    TABLE_SIZE,
    apply_gate,
    conjugate,
    identity_tableau,
    sample_gate_index,
)
from rqcodes.pauli import DimensionError, PauliString, parse, symplectic_product

from conftest import circuit_unitary, dense_pauli, dense_to_text


def test_identity_tableau():
    t = identity_tableau(1)
    assert [str(p) for p in t.x_images] == ["+X"]
    assert [str(p) for p in t.z_images] == ["+Z"]
    assert conjugate(identity_tableau(3), parse("XIZ")) == parse("XIZ")
    assert identity_tableau(5).is_symplectic()


def test_table_size_and_distinct(table):
    assert len(table) == TABLE_SIZE == 720 * 16
    assert len({e.key() for e in table.entries}) == TABLE_SIZE


def test_table_entries_symplectic(table):
    assert all(e.is_symplectic() for e in table.entries)


def test_table_canonical_order_is_deterministic(table):
    from rqcodes.clifford import _canonical_key, enumerate_two_qubit_cliffords

    keys = [_canonical_key(e) for e in table.entries]
    assert keys == sorted(keys)
    assert enumerate_two_qubit_cliffords().checksum == table.checksum


def test_table_unitaries_realize_tableaux(table):
    """Every stored 4x4 matrix conjugates X_q, Z_q to the tableau's images."""
    us = table.unitaries
    gens = ["XI", "IX", "ZI", "IZ"]  # qubit 0 leftmost
    for g_text, getter in zip(gens, [lambda t: t.x_images[0], lambda t: t.x_images[1],
                                      lambda t: t.z_images[0], lambda t: t.z_images[1]]):
        p = dense_pauli(g_text)
        imgs = np.einsum("gab,bc,gdc->gad", us, p, us.conj())
        expect = np.array([dense_pauli(str(getter(t))) for t in table.entries])
        assert np.allclose(imgs, expect)


def test_uniform_image_counts(table):
    """For nonzero mu, nu on two qubits, exactly 768 gates map mu to +-nu."""
    counts = np.zeros((16, 16), dtype=int)
    for row in table.local_images:
        for a in range(1, 16):
            counts[a, row[a] & 15] += 1
    assert TABLE_SIZE // 15 == 768
    assert np.all(counts[1:, 1:] == 768)
    assert np.all(counts[1:, 0] == 0)


def test_sample_gate_index_uniform():
    rng = np.random.default_rng(1234)
    draws = rng.integers(0, TABLE_SIZE, size=10**6)
    assert sample_gate_index(np.random.default_rng(1)) == int(np.random.default_rng(1).integers(TABLE_SIZE))
    counts = np.bincount(draws, minlength=TABLE_SIZE)
    assert chisquare(counts).pvalue > 1e-3


def test_sample_gate_index_determinism():
    r0 = np.random.default_rng(7)
    a = [sample_gate_index(r0) for _ in range(100)]
    r1 = np.random.default_rng(7)
    b = [sample_gate_index(r1) for _ in range(100)]
    r2 = np.random.default_rng(8)
    c = [sample_gate_index(r2) for _ in range(100)]
    assert a == b
    assert a != c


def _dense_images(u, n):
    xs = [dense_to_text(u @ dense_pauli("I" * q + "X" + "I" * (n - q - 1)) @ u.conj().T, n) for q in range(n)]
    zs = [dense_to_text(u @ dense_pauli("I" * q + "Z" + "I" * (n - q - 1)) @ u.conj().T, n) for q in range(n)]
    return xs, zs


def test_cnot_and_hadamard(table):
    cn = table.named("CNOT01")
    t = apply_gate(identity_tableau(2), cn, (0, 1), table)
    assert [str(p) for p in t.x_images] == ["+XX", "+IX"]
    assert [str(p) for p in t.z_images] == ["+ZI", "+ZZ"]
    assert _dense_images(table.unitaries[cn], 2) == ([str(p) for p in t.x_images], [str(p) for p in t.z_images])
    h = apply_gate(identity_tableau(3), table.named("H0"), (1, 2), table)
    assert str(h.x_images[1]) == "+IZI"
    assert conjugate(t, parse("ZI")) == parse("ZI")


def test_apply_then_inverse(table, rng):
    for g in rng.integers(0, TABLE_SIZE, size=50).tolist():
        tab = apply_gate(identity_tableau(4), g, (3, 1), table)
        back = apply_gate(tab, table.inverse(g), (3, 1), table)
        assert back == identity_tableau(4)


def test_apply_gate_argument_errors(table):
    with pytest.raises(ValueError):
        apply_gate(identity_tableau(3), 0, (1, 1), table)
    with pytest.raises(ValueError):
        apply_gate(identity_tableau(3), 0, (0, 3), table)
    with pytest.raises(DimensionError):
        conjugate(identity_tableau(3), parse("XX"))


def test_conjugate_matches_dense(rng):
    for _ in range(30):
        n = int(rng.integers(2, 5))
        c = sample_circuit(n, int(rng.integers(0, 12)), rng)
        tab = circuit_to_tableau(c)
        u = circuit_unitary(c)
        for _ in range(5):
            p = PauliString(n, int(rng.integers(2**n)), int(rng.integers(2**n)), 2 * int(rng.integers(2)))
            expect = dense_to_text(u @ dense_pauli(str(p)) @ u.conj().T, n)
            assert str(tab.conjugate(p)) == expect


@pytest.mark.parametrize("n", [1, 2, 3])
def test_conjugation_bijective_small_n(n, rng):
    tab = identity_tableau(1) if n == 1 else circuit_to_tableau(sample_circuit(n, 10, rng))
    images = set()
    for x in range(2**n):
        for z in range(2**n):
            img = tab.conjugate(PauliString(n, x, z))
            images.add((img.x, img.z))
    assert len(images) == 4**n


def test_conjugation_preserves_commutation(rng):
    for _ in range(50):
        n = int(rng.integers(2, 12))
        tab = circuit_to_tableau(sample_circuit(n, 30, rng))
        assert tab.is_symplectic()
        p = PauliString(n, int(rng.integers(2**n)), int(rng.integers(2**n)))
        q = PauliString(n, int(rng.integers(2**n)), int(rng.integers(2**n)))
        assert symplectic_product(tab.conjugate(p), tab.conjugate(q)) == symplectic_product(p, q)


def test_gate_only_touches_its_support(table, rng):
    n = 7
    for _ in range(200):
        g = int(rng.integers(TABLE_SIZE))
        i, j = (int(v) for v in rng.choice(n, 2, replace=False))
        p = PauliString(n, int(rng.integers(2**n)), int(rng.integers(2**n)))
        c = Circuit.from_gates(n, [(i, j, g)])
        img = circuit_to_tableau(c).conjugate(p)
        outside = ~((1 << i) | (1 << j)) & (2**n - 1)
        assert img.x & outside == p.x & outside and img.z & outside == p.z & outside
        assert abs(img.weight - p.weight) <= 2
        if p.weight == 1:
            assert img.weight <= 2


def test_named_gates_are_involutions_where_expected(table):
    for name in ("H0", "CNOT01", "CZ", "SWAP"):
        g = table.named(name)
        assert table.inverse(g) == g
    for a, b in itertools.combinations(["H0", "H1", "S0", "S1", "CNOT01", "CNOT10", "CZ"], 2):
        assert table.named(a) != table.named(b)
