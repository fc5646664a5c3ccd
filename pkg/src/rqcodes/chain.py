"""Birth-death chain on Pauli weights under one random two-qubit Clifford gate.

From weight ``l`` on ``n`` qubits a uniformly placed random gate moves to

* ``l - 1`` with probability ``2 l (l - 1) / (5 n (n - 1))``
* ``l + 1`` with probability ``6 l (n - l) / (5 n (n - 1))``
* stays otherwise.

States are ``0..n``; ``0`` is absorbing and unreachable from ``l >= 1``.
Everything here works on the tridiagonal rows directly, in double precision
with log-domain binomials, or in exact rationals when asked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.special import gammaln, logsumexp

from .distance import binary_entropy

__all__ = [
    "WeightDistribution",
    "BoundParams",
    "Theorem2Check",
    "transition_row",
    "transition_arrays",
    "evolve",
    "evolve_rows",
    "stationary",
    "check_theorem2",
    "theorem2_min_c",
    "coefficient_sum",
    "log_coefficient_sum",
    "coefficient_bound",
    "union_bound",
    "log_union_bound",
    "closed_form_failure_bound",
    "log2_closed_form_second_term",
    "gates_for",
]

LOG3 = math.log(3.0)
EXACT_MAX_N = 64


def gates_for(n: int, c: float) -> int:
    """``ceil(c n log2(n)^2)``."""
    return math.ceil(c * n * math.log2(n) ** 2)


@dataclass
class WeightDistribution:
    n: int
    probs: np.ndarray

    def __post_init__(self):
        if len(self.probs) != self.n + 1:
            raise ValueError("probs must be indexed by weight 0..n")
        if self.probs.dtype != object:
            if self.probs.min() < -1e-14:
                raise ValueError("negative probability beyond roundoff")
            self.probs = np.clip(self.probs, 0.0, None)

    @property
    def mass(self) -> float:
        return float(sum(self.probs))

    def tv_distance(self, other: WeightDistribution | np.ndarray) -> float:
        q = other.probs if isinstance(other, WeightDistribution) else np.asarray(other)
        return 0.5 * float(np.abs(np.asarray(self.probs, dtype=float) - np.asarray(q, dtype=float)).sum())

    def as_float(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=float)


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError("the chain needs n >= 2")


def transition_row(n: int, l: int, exact: bool = False):
    """``(p_down, p_stay, p_up)`` out of weight ``l``."""
    _check_n(n)
    if not 1 <= l <= n:
        raise ValueError(f"weight {l} out of range 1..{n}")
    den = 5 * n * (n - 1)
    down = Fraction(2 * l * (l - 1), den)
    up = Fraction(6 * l * (n - l), den)
    stay = 1 - Fraction(2 * l * (3 * n - 2 * l - 1), den)
    if exact:
        return down, stay, up
    return float(down), float(stay), float(up)


def transition_arrays(n: int, exact: bool = False):
    """Down/stay/up probabilities for every state 0..n (state 0 stays put)."""
    _check_n(n)
    rows = [(0, 1, 0)] + [transition_row(n, l, exact) for l in range(1, n + 1)]
    dtype = object if exact else float
    if exact:
        rows[0] = (Fraction(0), Fraction(1), Fraction(0))
    down, stay, up = (np.array(col, dtype=dtype) for col in zip(*rows))
    return down, stay, up


def _step(p: np.ndarray, down, stay, up) -> np.ndarray:
    """One forward step on the last axis: new[m] = p[m]s[m] + p[m-1]u[m-1] + p[m+1]d[m+1]."""
    new = p * stay
    new[..., 1:] += p[..., :-1] * up[:-1]
    new[..., :-1] += p[..., 1:] * down[1:]
    return new


def evolve(n: int, l0: int, t: int, exact: bool = False) -> WeightDistribution:
    """Row ``l0`` of ``P**t``."""
    _check_n(n)
    if not 1 <= l0 <= n:
        raise ValueError(f"start weight {l0} out of range 1..{n}")
    if t < 0:
        raise ValueError("t must be non-negative")
    if exact and n > EXACT_MAX_N:
        raise ValueError(f"exact arithmetic limited to n <= {EXACT_MAX_N}")
    down, stay, up = transition_arrays(n, exact)
    if exact:
        p = np.array([Fraction(0)] * (n + 1), dtype=object)
        p[l0] = Fraction(1)
    else:
        p = np.zeros(n + 1)
        p[l0] = 1.0
    for _ in range(t):
        p = _step(p, down, stay, up)
    return WeightDistribution(n, p)


def evolve_rows(n: int, t: int, p0: np.ndarray | None = None) -> np.ndarray:
    """``P**t`` restricted to start states 1..n, shape (n, n+1); row ``l-1`` is start ``l``."""
    down, stay, up = transition_arrays(n)
    if p0 is None:
        p0 = np.zeros((n, n + 1))
        p0[np.arange(n), np.arange(1, n + 1)] = 1.0
    p = p0
    for _ in range(t):
        p = _step(p, down, stay, up)
    return p


def stationary(n: int, exact: bool = False) -> WeightDistribution:
    """Weight law of a uniform nonidentity Pauli: C(n,m) 3^m / (4^n - 1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if exact:
        den = 4**n - 1
        probs = np.array(
            [Fraction(0)] + [Fraction(math.comb(n, m) * 3**m, den) for m in range(1, n + 1)],
            dtype=object,
        )
        return WeightDistribution(n, probs)
    m = np.arange(n + 1)
    logp = _log_binom(n, m) + m * LOG3 - _log_4n_minus_1(n)
    probs = np.exp(logp)
    probs[0] = 0.0
    return WeightDistribution(n, probs)


def _log_binom(n, k):
    n = np.asarray(n, dtype=float)
    k = np.asarray(k, dtype=float)
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


def _log_4n_minus_1(n: int) -> float:
    return n * math.log(4.0) + math.log1p(-(4.0 ** -n))


# --- bounds -----------------------------------------------------------------


@dataclass
class BoundParams:
    """Free parameters of the failure-probability bounds.

    ``t`` wins over ``c`` when both are given; otherwise ``t = ceil(c n log2(n)^2)``.
    """

    n: int
    k: int = 1
    d: int = 1
    t: int | None = None
    delta: float = 0.1
    eta: float = 0.5
    c: float | None = None

    @property
    def steps(self) -> int:
        if self.t is not None:
            return self.t
        if self.c is None:
            raise ValueError("need either t or c")
        return gates_for(self.n, self.c)


@dataclass
class Theorem2Check:
    params: BoundParams
    t: int
    violations: list[tuple[int, int, float, float]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations


def _theorem2_log_rhs(n: int, delta: float, eta: float) -> np.ndarray:
    """log of the right-hand side for l = 1..n (rows) and m = 0..n (columns)."""
    m = np.arange(n + 1)
    l = np.arange(1, n + 1)
    first = delta * n * math.log(4.0) + _log_binom(n, m) + m * LOG3 - _log_4n_minus_1(n)
    second = -(l * math.log(3.0 - eta) + _log_binom(n, l) + 10 * math.log(n))
    return np.logaddexp(first[None, :], second[:, None])


def _theorem2_violations(rows: np.ndarray, n: int, delta: float, eta: float):
    mmax = (3 * n) // 4
    log_rhs = _theorem2_log_rhs(n, delta, eta)
    with np.errstate(divide="ignore"):
        log_lhs = np.log(rows)
    bad = log_lhs[:, 1 : mmax + 1] > log_rhs[:, 1 : mmax + 1]
    out = []
    for li, mi in zip(*np.nonzero(bad)):
        l, m = int(li) + 1, int(mi) + 1
        out.append((l, m, float(rows[li, m]), float(np.exp(log_rhs[li, m]))))
    return out


def _check_delta_eta(delta: float, eta: float) -> None:
    if not 0 < delta < 0.25:
        raise ValueError("delta must lie in (0, 1/4)")
    if not 0 < eta < 1:
        raise ValueError("eta must lie in (0, 1)")


def check_theorem2(params: BoundParams) -> Theorem2Check:
    """Compare exact ``P^t(l, m)`` with the two-term bound for all l and 1 <= m <= floor(3n/4)."""
    _check_delta_eta(params.delta, params.eta)
    n, t = params.n, params.steps
    rows = evolve_rows(n, t)
    return Theorem2Check(params, t, _theorem2_violations(rows, n, params.delta, params.eta))


def theorem2_min_c(n: int, delta: float, eta: float, c_max: int = 100) -> int | None:
    """Smallest integer ``c <= c_max`` whose step count gives no violations.

    Evolves incrementally from one candidate ``c`` to the next.
    """
    _check_delta_eta(delta, eta)
    rows = None
    t_done = 0
    for c in range(1, c_max + 1):
        t = gates_for(n, c)
        rows = evolve_rows(n, t - t_done, rows)
        t_done = t
        if not _theorem2_violations(rows, n, delta, eta):
            return c
    return None


def log_coefficient_sum(n: int, k: int, l: int) -> float:
    """log of sum_p C(k,p) 3^p C(n-k, l-p), the number of qualifying nu of weight l."""
    if not 0 <= l <= n:
        raise ValueError(f"weight {l} out of range 0..{n}")
    p = np.arange(max(0, l - (n - k)), min(k, l) + 1)
    if not len(p):
        return -math.inf
    terms = _log_binom(k, p) + p * LOG3 + _log_binom(n - k, l - p)
    return float(logsumexp(terms))


def coefficient_sum(n: int, k: int, l: int) -> float:
    return math.exp(log_coefficient_sum(n, k, l))


def coefficient_bound(n: int, k: int, l: int) -> float:
    """(l + 1) 3^(lambda l + 1) C(n, l) with lambda = 3k / (n + 2k)."""
    lam = 3 * k / (n + 2 * k)
    return math.exp(math.log(l + 1) + (lam * l + 1) * LOG3 + float(_log_binom(n, l)))


def _check_union_params(n: int, k: int, d: int, t: int) -> None:
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    if not 1 <= d <= n:
        raise ValueError("need 1 <= d <= n")
    if t < 0:
        raise ValueError("t must be non-negative")


def _low_weight_mass(n: int, d: int, t: int, exact: bool = False) -> np.ndarray:
    """sum_{m=1..d} P^t(l, m) for every start l = 0..n (backward evolution)."""
    down, stay, up = transition_arrays(n, exact)
    if exact:
        v = np.array([Fraction(int(1 <= m <= d)) for m in range(n + 1)], dtype=object)
    else:
        v = ((np.arange(n + 1) >= 1) & (np.arange(n + 1) <= d)).astype(float)
    for _ in range(t):
        new = v * stay
        new[:-1] += up[:-1] * v[1:]
        new[1:] += down[1:] * v[:-1]
        v = new
    return v


def log_union_bound(params: BoundParams) -> float:
    """Natural log of the union bound on Pr[distance <= d]."""
    n, k, d, t = params.n, params.k, params.d, params.steps
    _check_union_params(n, k, d, t)
    mass = _low_weight_mass(n, d, t)
    logs = []
    for l in range(1, n + 1):
        if mass[l] > 0:
            logs.append(log_coefficient_sum(n, k, l) + math.log(mass[l]))
    return float(logsumexp(logs)) if logs else -math.inf


def union_bound(params: BoundParams, exact: bool = False):
    """sum_l [sum_p C(k,p) 3^p C(n-k,l-p)] sum_{m=1..d} P^t(l, m).

    Upper-bounds the probability that the random circuit's code has distance
    at most ``d``.  ``exact=True`` returns a ``Fraction`` (n <= 64).
    """
    if not exact:
        return math.exp(log_union_bound(params))
    n, k, d, t = params.n, params.k, params.d, params.steps
    _check_union_params(n, k, d, t)
    if n > EXACT_MAX_N:
        raise ValueError(f"exact arithmetic limited to n <= {EXACT_MAX_N}")
    mass = _low_weight_mass(n, d, t, exact=True)
    total = Fraction(0)
    for l in range(1, n + 1):
        coef = sum(math.comb(k, p) * 3**p * math.comb(n - k, l - p) for p in range(0, min(k, l) + 1))
        total += coef * mass[l]
    return total


def log2_closed_form_second_term(params: BoundParams) -> float:
    n, k, d = params.n, params.k, params.d
    r = d / n
    return k - n * (1 - binary_entropy(r) - math.log2(3) * r - 3 * params.delta)


def closed_form_failure_bound(params: BoundParams) -> float:
    """1/n^8 + 2^(k - n (1 - h(d/n) - log2(3) d/n - 3 delta))."""
    n = params.n
    if not 0 <= params.d <= n or not 0 <= params.k <= n:
        raise ValueError("need 0 <= k, d <= n")
    e = log2_closed_form_second_term(params)
    second = math.inf if e > 1023 else 2.0**e
    return n ** -8.0 + second
