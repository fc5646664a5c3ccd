import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rqcodes.pauli import (
    DimensionError,
    PauliParseError,
    PauliString,
    format_pauli,
    multiply,
    parse,
    symplectic_product,
    weight,
)

from conftest import dense_pauli, dense_to_text


def paulis(n_min=1, n_max=6, hermitian=True):
    @st.composite
    def build(draw, n=None):
        n = draw(st.integers(n_min, n_max)) if n is None else n
        x = draw(st.integers(0, 2**n - 1))
        z = draw(st.integers(0, 2**n - 1))
        ph = draw(st.sampled_from([0, 2] if hermitian else [0, 1, 2, 3]))
        return PauliString(n, x, z, ph)

    return build


@st.composite
def pauli_tuple(draw, count, n_max=4, hermitian=True):
    n = draw(st.integers(1, n_max))
    return tuple(draw(paulis(hermitian=hermitian)(n)) for _ in range(count))


def test_weight_examples():
    assert weight(PauliString.identity(5)) == 0
    assert weight(parse("XIZIY")) == 3


def test_weight_matches_letter_loop():
    r = random.Random(5)
    for _ in range(50):
        p = PauliString.random(64, r)
        assert weight(p) == sum(ch != "I" for ch in p.letters())


def test_encoding_table():
    p = parse("XIZ")
    assert p.x_bits == [1, 0, 0] and p.z_bits == [0, 0, 1] and p.phase == 0
    assert format_pauli(p) == "+XIZ"
    y = parse("Y")
    assert (y.x, y.z) == (1, 1)
    m = parse("-ZZ")
    assert m.sign == -1 and m.x_bits == [0, 0] and m.z_bits == [1, 1]
    assert parse("ZZ", sign=-1) == m


@pytest.mark.parametrize("bad", ["", "+", "XQZ", "x y"])
def test_parse_errors(bad):
    with pytest.raises(PauliParseError):
        parse(bad)


def test_roundtrip_hermitian():
    for s in ["+X", "-Y", "+IIII", "-XYZI", "+ZZZZZZZZ"]:
        assert format_pauli(parse(s)) == s


def test_multiply_examples():
    xx = multiply(parse("X"), parse("X"))
    assert xx == PauliString.identity(1)
    xz = multiply(parse("X"), parse("Z"))
    assert xz.phase == 3 and (xz.x, xz.z) == (1, 1)
    assert str(xz) == "-iY"
    # (X (x) Z)(Z (x) Z): qubit 0 carries X*Z = -iY, qubit 1 Z*Z = I
    assert str(multiply(parse("XZ"), parse("ZZ"))) == "-iYI"


def test_multiply_matrix_oracle_exhaustive_two_qubits():
    import itertools

    labels = ["".join(t) for t in itertools.product("IXYZ", repeat=2)]
    for a in labels:
        for b in labels:
            got = multiply(parse(a), parse(b))
            expect = dense_to_text(dense_pauli(a) @ dense_pauli(b), 2)
            assert str(got) == expect, (a, b)


def test_dimension_errors():
    with pytest.raises(DimensionError):
        multiply(parse("X"), parse("XX"))
    with pytest.raises(DimensionError):
        symplectic_product(parse("X"), parse("XX"))


def test_symplectic_examples():
    assert symplectic_product(parse("X"), parse("Z")) == 1
    assert symplectic_product(parse("X"), parse("X")) == 0
    # one anticommuting site: the matrix commutator says they anticommute
    assert symplectic_product(parse("XZ"), parse("ZZ")) == 1
    a, b = dense_pauli("XZ"), dense_pauli("ZZ")
    assert np.allclose(a @ b, -(b @ a))
    # two anticommuting sites cancel
    assert symplectic_product(parse("XX"), parse("ZZ")) == 0
    a, b = dense_pauli("XX"), dense_pauli("ZZ")
    assert np.allclose(a @ b, b @ a)


@settings(max_examples=200, deadline=None)
@given(pauli_tuple(3, hermitian=False))
def test_multiply_associative(trip):
    p, q, r = trip
    assert multiply(multiply(p, q), r) == multiply(p, multiply(q, r))
    lhs = dense_pauli(str(multiply(multiply(p, q), r)))
    assert np.allclose(lhs, dense_pauli(str(p)) @ dense_pauli(str(q)) @ dense_pauli(str(r)))


@settings(max_examples=200, deadline=None)
@given(paulis(1, 40)())
def test_square_is_identity(p):
    sq = multiply(p, p)
    assert sq == PauliString.identity(p.n)


@settings(max_examples=200, deadline=None)
@given(pauli_tuple(2, n_max=40))
def test_symplectic_symmetric_and_weight_subadditive(pair):
    p, q = pair
    assert symplectic_product(p, q) == symplectic_product(q, p)
    assert weight(multiply(p, q)) <= weight(p) + weight(q)


@settings(max_examples=100, deadline=None)
@given(pauli_tuple(2, n_max=3))
def test_symplectic_matches_commutator(pair):
    p, q = pair
    a, b = dense_pauli(str(p)), dense_pauli(str(q))
    commute = np.allclose(a @ b, b @ a)
    assert symplectic_product(p, q) == (0 if commute else 1)
