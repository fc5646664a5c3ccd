"""Distance of the stabilizer code defined by a Clifford encoder.

Logical qubits are wires ``0..k-1``; wires ``k..n-1`` start in ``|0>``.  The
code has distance ``d`` when the lightest image ``U nu U^dag`` over all
``nu = nu_A nu_B`` with ``nu_A`` a nonidentity Pauli on the logical wires and
``nu_B`` in ``{I, Z}^(n-k)`` has weight ``d``.

Enumeration indexes ``nu`` by an ``(n + k)``-bit integer: bits ``0..k-1``
select ``X_a``, bits ``k..2k-1`` select ``Z_a`` (``a < k``) and bits
``2k..n+k-1`` select ``Z_b`` on the ancilla wires.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import entr

from . import dense
from .circuits import Circuit
from .clifford import CliffordTableau, two_qubit_table
from .pauli import PauliString

__all__ = [
    "CodeParams",
    "DistanceReport",
    "EnumerationTooLarge",
    "DEFAULT_BUDGET",
    "distance_exact",
    "distance_monte_carlo",
    "encode_states",
    "KLResult",
    "kl_oracle_check",
    "kl_oracle_distance",
    "binary_entropy",
    "gv_rate_bound",
]

DEFAULT_BUDGET = 1 << 26
ORACLE_LIMIT = 8
_BLOCK_BITS = 16


class EnumerationTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got n={self.n}, k={self.k}")

    @property
    def search_size(self) -> int:
        """Number of qualifying ``nu``: (4**k - 1) * 2**(n-k)."""
        return ((1 << (2 * self.k)) - 1) << (self.n - self.k)


@dataclass(frozen=True)
class DistanceReport:
    distance: int
    witness: PauliString
    witness_image: PauliString
    method: str

    def to_dict(self) -> dict:
        return {
            "distance": self.distance,
            "witness": str(self.witness),
            "witness_image": str(self.witness_image),
            "method": self.method,
        }


def nu_from_index(n: int, k: int, idx: int) -> PauliString:
    lowmask = (1 << k) - 1
    x = idx & lowmask
    z = ((idx >> k) & lowmask) | ((idx >> (2 * k)) << k)
    return PauliString(n, x, z)


def _generator_images(tab: CliffordTableau, k: int) -> tuple[list[int], list[int]]:
    n = tab.n
    order = list(range(k)) + [n + a for a in range(k)] + [n + b for b in range(k, n)]
    return [tab._xs[g] for g in order], [tab._zs[g] for g in order]


def _scan_segment(tx, tz, valid_low, gx, gz, low_bits, amask, h_start, h_stop):
    """Minimum image weight over high indices ``h_start..h_stop-1`` (Gray order).

    Each step changes one generator of the high part and XORs it into the
    running image; the low ``low_bits`` generators are covered word-parallel
    by the precomputed block ``tx, tz``.
    """
    gray = h_start ^ (h_start >> 1)
    bx = bz = 0
    for b in range(len(gx) - low_bits):
        if (gray >> b) & 1:
            bx ^= gx[low_bits + b]
            bz ^= gz[low_bits + b]
    best = (math.inf, -1)
    big = np.int64(1 << 40)
    for h in range(h_start, h_stop):
        if h != h_start:
            flip = (h & -h).bit_length() - 1
            gray ^= 1 << flip
            bx ^= gx[low_bits + flip]
            bz ^= gz[low_bits + flip]
        w = np.bitwise_count((tx ^ np.uint64(bx)) | (tz ^ np.uint64(bz))).astype(np.int64)
        high_idx = gray << low_bits
        if not (high_idx & amask):
            w = np.where(valid_low, w, big)
        pos = int(np.argmin(w))
        cand = (int(w[pos]), high_idx | pos)
        if cand < best:
            best = cand
    return best


def distance_exact(
    tab: CliffordTableau,
    k: int,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> DistanceReport:
    """Exact distance by exhaustive enumeration of qualifying ``nu``.

    Ties are broken toward the smallest enumeration index, so the witness does
    not depend on ``workers``.
    """
    n = tab.n
    params = CodeParams(n, k)
    if params.search_size > budget:
        raise EnumerationTooLarge(
            f"{params.search_size} candidates exceed budget {budget}; use monte_carlo"
        )
    if n > 64:
        raise EnumerationTooLarge("exact enumeration supports n <= 64; use monte_carlo")
    gx, gz = _generator_images(tab, k)
    total_bits = n + k
    low_bits = min(total_bits, _BLOCK_BITS)
    tx = np.zeros(1, dtype=np.uint64)
    tz = np.zeros(1, dtype=np.uint64)
    for b in range(low_bits):
        tx = np.concatenate([tx, tx ^ np.uint64(gx[b])])
        tz = np.concatenate([tz, tz ^ np.uint64(gz[b])])
    amask = (1 << (2 * k)) - 1
    valid_low = (np.arange(1 << low_bits, dtype=np.int64) & amask) != 0
    n_high = 1 << (total_bits - low_bits)
    args = (tx, tz, valid_low, gx, gz, low_bits, amask)
    if workers <= 1 or n_high < 2:
        best = _scan_segment(*args, 0, n_high)
    else:
        cuts = np.linspace(0, n_high, min(workers, n_high) + 1).astype(int).tolist()
        with ThreadPoolExecutor(workers) as pool:
            parts = pool.map(lambda ab: _scan_segment(*args, *ab), zip(cuts[:-1], cuts[1:]))
            best = min(parts)
    d, idx = best
    witness = nu_from_index(n, k, idx)
    image = tab.conjugate(witness)
    assert image.weight == d
    return DistanceReport(d, witness, image, "exact")


def _gf2_generator_matrix(tab: CliffordTableau, k: int) -> np.ndarray:
    n = tab.n
    gx, gz = _generator_images(tab, k)
    m = np.zeros((n + k, 2 * n), dtype=np.float64)
    for r, (x, z) in enumerate(zip(gx, gz)):
        for q in range(n):
            m[r, q] = (x >> q) & 1
            m[r, n + q] = (z >> q) & 1
    return m


def distance_monte_carlo(
    tab: CliffordTableau,
    k: int,
    samples: int,
    rng: np.random.Generator,
    chunk: int = 1 << 14,
) -> DistanceReport:
    """Minimum image weight over ``samples`` uniformly drawn qualifying ``nu``.

    An upper estimate: the true distance never exceeds the reported value.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    n = tab.n
    CodeParams(n, k)
    gen = _gf2_generator_matrix(tab, k)
    best_w, best_bits = math.inf, None
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        bits = rng.integers(0, 2, size=(m, n + k), dtype=np.int8)
        bad = ~bits[:, : 2 * k].any(axis=1)
        while bad.any():
            bits[bad, : 2 * k] = rng.integers(0, 2, size=(int(bad.sum()), 2 * k), dtype=np.int8)
            bad = ~bits[:, : 2 * k].any(axis=1)
        img = (bits @ gen).astype(np.int64) & 1
        w = (img[:, :n] | img[:, n:]).sum(axis=1)
        pos = int(np.argmin(w))
        if w[pos] < best_w:
            best_w, best_bits = int(w[pos]), bits[pos]
        done += m
    idx = sum(int(b) << r for r, b in enumerate(best_bits))
    witness = nu_from_index(n, k, idx)
    return DistanceReport(best_w, witness, tab.conjugate(witness), "monte_carlo")


# --- statevector oracle -----------------------------------------------------


def encode_states(c: Circuit, k: int) -> np.ndarray:
    """Dense codewords ``U |x> |0...0>`` for all ``x`` in ``{0,1}^k``, shape (2**k, 2**n)."""
    n = c.n
    states = np.zeros((1 << k, 1 << n), dtype=complex)
    states[np.arange(1 << k), np.arange(1 << k)] = 1
    us = two_qubit_table().unitaries
    for i, j, g in zip(c.qi.tolist(), c.qj.tolist(), c.cliff.tolist()):
        states = dense.apply_two_qubit(states, us[g], i, j, n)
    return states


def _walsh_hadamard(a: np.ndarray) -> np.ndarray:
    """Unnormalized transform over the last axis: out[z] = sum_b (-1)^{z.b} a[b]."""
    a = a.copy()
    size = a.shape[-1]
    lead = a.shape[:-1]
    h = 1
    while h < size:
        v = a.reshape(lead + (size // (2 * h), 2, h))
        lo = v[..., 0, :].copy()
        hi = v[..., 1, :]
        v[..., 0, :] = lo + hi
        v[..., 1, :] = lo - hi
        h *= 2
    return a


@dataclass(frozen=True)
class KLResult:
    distance: int
    violating_pauli: PauliString | None
    nonreal_mean: bool


def kl_oracle_check(
    c: Circuit,
    k: int,
    d_max: int | None = None,
    limit: int = ORACLE_LIMIT,
    tol: float = 1e-9,
) -> KLResult:
    """Check ``<x|s_mu|y> = C_mu delta_xy`` on dense codewords for all 1 <= w(mu) <= d_max.

    The returned distance is the weight of the lightest violating ``mu``, or
    ``d_max + 1`` when none is found.  ``nonreal_mean`` flags a diagonal mean
    with imaginary part above ``tol`` for some ``mu`` that passed.
    """
    n = c.n
    if n > limit:
        raise ValueError(f"oracle limited to n <= {limit}, got n={n}")
    CodeParams(n, k)
    d_max = n if d_max is None else d_max
    if not 0 <= d_max <= n:
        raise ValueError("need 0 <= d_max <= n")
    psi = encode_states(c, k)
    dim = 1 << n
    kk = 1 << k
    b = np.arange(dim)
    zs = np.arange(dim)
    pop = np.array([int(v).bit_count() for v in range(dim)])
    offdiag = ~np.eye(kk, dtype=bool)
    best_w, best_mu, nonreal = d_max + 1, None, False
    for xm in range(dim):
        shifted = psi[:, b ^ xm].conj()
        prod = shifted[:, None, :] * psi[None, :, :]  # (x, y, b)
        vals = _walsh_hadamard(prod)  # (x, y, z): <x| X^xm Z^z |y>
        vals = vals * (1j ** pop[xm & zs])[None, None, :]
        w = pop[xm | zs]
        in_range = (w >= 1) & (w <= d_max)
        if not in_range.any():
            continue
        diag = np.diagonal(vals, axis1=0, axis2=1)  # (z, x)
        mean = diag.mean(axis=1)
        bad = np.abs(diag - mean[:, None]).max(axis=1) > tol
        if kk > 1:
            bad |= np.abs(vals[offdiag]).max(axis=0) > tol
        bad &= in_range
        nonreal |= bool(np.any((np.abs(mean.imag) > tol) & in_range & ~bad))
        if bad.any():
            cand = np.flatnonzero(bad)
            zbest = int(cand[np.argmin(w[cand])])
            if w[zbest] < best_w:
                best_w, best_mu = int(w[zbest]), PauliString(n, xm, zbest)
    return KLResult(best_w, best_mu, nonreal)


def kl_oracle_distance(c: Circuit, k: int, d_max: int | None = None, limit: int = ORACLE_LIMIT) -> int:
    return kl_oracle_check(c, k, d_max, limit).distance


# --- rate bound -------------------------------------------------------------


def binary_entropy(x):
    """h(x) in bits, with h(0) = h(1) = 0."""
    x = np.asarray(x, dtype=float)
    out = (entr(x) + entr(1 - x)) / np.log(2)
    return float(out) if out.ndim == 0 else out


def gv_rate_bound(delta: float) -> float:
    """Achievable rate 1 - h(delta) - delta log2(3) at relative distance ``delta``."""
    if not 0 <= delta <= 1:
        raise ValueError(f"relative distance must lie in [0, 1], got {delta}")
    return 1.0 - binary_entropy(delta) - delta * math.log2(3)
