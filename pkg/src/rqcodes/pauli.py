"""Bit-packed n-qubit Pauli operators.

A Pauli string stores its X and Z components as Python integers used as bit
vectors (qubit ``q`` is bit ``q``), plus a phase exponent ``e`` so that the
operator equals ``i**e`` times the tensor product of Hermitian letters
``I, X, Y, Z``.  Per qubit the letter encoding is::

    (x, z) = (0, 0) -> I    (1, 0) -> X    (1, 1) -> Y    (0, 1) -> Z

In text form qubit 0 is the leftmost letter.
"""

from __future__ import annotations

import random as _random

__all__ = [
    "PauliString",
    "PauliParseError",
    "DimensionError",
    "weight",
    "multiply",
    "symplectic_product",
    "parse",
    "format_pauli",
]

LETTERS = "IXZY"  # indexed by x | z << 1
_SIGNS = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}


class PauliParseError(ValueError):
    pass


class DimensionError(ValueError):
    pass


def mul_phase(x1: int, z1: int, x2: int, z2: int) -> int:
    """Extra power of i picked up when multiplying sigma(x1,z1) * sigma(x2,z2).

    Uses sigma(x, z) = i^{|x&z|} X^x Z^z and Z^z X^x = (-1)^{|z&x|} X^x Z^z.
    """
    x3 = x1 ^ x2
    z3 = z1 ^ z2
    return (
        (x1 & z1).bit_count()
        + (x2 & z2).bit_count()
        + 2 * (z1 & x2).bit_count()
        - (x3 & z3).bit_count()
    ) & 3


class PauliString:
    """Immutable signed Pauli operator on ``n`` qubits."""

    __slots__ = ("n", "x", "z", "phase")

    def __init__(self, n: int, x: int = 0, z: int = 0, phase: int = 0):
        if n < 1:
            raise ValueError("n must be positive")
        mask = (1 << n) - 1
        if x & ~mask or z & ~mask:
            raise ValueError("bits set outside the n-qubit range")
        self.n = n
        self.x = x
        self.z = z
        self.phase = phase & 3

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> PauliString:
        bx, bz = _LETTER_BITS[letter]
        return cls(n, bx << qubit, bz << qubit)

    @classmethod
    def random(cls, n: int, rng: _random.Random | None = None, sign: bool = True) -> PauliString:
        rng = rng or _random
        phase = 2 * rng.getrandbits(1) if sign else 0
        return cls(n, rng.getrandbits(n), rng.getrandbits(n), phase)

    @property
    def x_bits(self) -> list[int]:
        return [(self.x >> q) & 1 for q in range(self.n)]

    @property
    def z_bits(self) -> list[int]:
        return [(self.z >> q) & 1 for q in range(self.n)]

    @property
    def is_hermitian(self) -> bool:
        return self.phase in (0, 2)

    @property
    def sign(self) -> int:
        if not self.is_hermitian:
            raise ValueError(f"{self} is not Hermitian")
        return 1 - self.phase

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def support(self) -> list[int]:
        s = self.x | self.z
        return [q for q in range(self.n) if (s >> q) & 1]

    def letters(self) -> str:
        return "".join(
            LETTERS[((self.x >> q) & 1) | ((self.z >> q) & 1) << 1] for q in range(self.n)
        )

    def unsigned(self) -> PauliString:
        return PauliString(self.n, self.x, self.z, 0)

    def __mul__(self, other: PauliString) -> PauliString:
        return multiply(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliString):
            return NotImplemented
        return (self.n, self.x, self.z, self.phase) == (other.n, other.x, other.z, other.phase)

    def __hash__(self) -> int:
        return hash((self.n, self.x, self.z, self.phase))

    def __str__(self) -> str:
        return format_pauli(self)

    def __repr__(self) -> str:
        return f"PauliString({format_pauli(self)!r})"


def weight(p: PauliString) -> int:
    return p.weight


def _check_dims(p: PauliString, q: PauliString) -> None:
    if p.n != q.n:
        raise DimensionError(f"qubit counts differ: {p.n} != {q.n}")


def multiply(p: PauliString, q: PauliString) -> PauliString:
    """Operator product ``p * q`` with the phase tracked mod 4."""
    _check_dims(p, q)
    phase = p.phase + q.phase + mul_phase(p.x, p.z, q.x, q.z)
    return PauliString(p.n, p.x ^ q.x, p.z ^ q.z, phase)


def symplectic_product(p: PauliString, q: PauliString) -> int:
    """0 if ``p`` and ``q`` commute, 1 if they anticommute."""
    _check_dims(p, q)
    return ((p.x & q.z).bit_count() + (p.z & q.x).bit_count()) & 1


def parse(text: str, sign: int | None = None) -> PauliString:
    """Parse ``"[+|-|+i|-i]LETTERS"``; an explicit ``sign`` (+1/-1) multiplies in."""
    s = text.strip()
    phase = 0
    for prefix, ph in (("+i", 1), ("-i", 3), ("+", 0), ("-", 2)):
        if s.startswith(prefix):
            phase = ph
            s = s[len(prefix):]
            break
    if not s:
        raise PauliParseError(f"empty Pauli string: {text!r}")
    x = z = 0
    for q, ch in enumerate(s.upper()):
        try:
            bx, bz = _LETTER_BITS[ch]
        except KeyError:
            raise PauliParseError(f"invalid Pauli letter {ch!r} in {text!r}") from None
        x |= bx << q
        z |= bz << q
    if sign is not None:
        if sign not in (1, -1):
            raise PauliParseError(f"sign must be +1 or -1, got {sign!r}")
        phase += 0 if sign == 1 else 2
    return PauliString(len(s), x, z, phase)


def format_pauli(p: PauliString) -> str:
    return _SIGNS[p.phase] + p.letters()
