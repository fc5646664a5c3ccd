"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

The lines are collected in RESULTS and echoed in the terminal summary by
conftest.py, so they show up even without ``-s``.
"""

import contextlib
import json
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from rqcodes.chain import (
    BoundParams,
    _step,
    check_theorem2,
    coefficient_bound,
    coefficient_sum,
    evolve,
    gates_for,
    stationary,
    transition_arrays,
    transition_row,
    union_bound,
)
from rqcodes.circuits import circuit_to_tableau, sample_circuit
from rqcodes.clifford import TABLE_SIZE, enumerate_two_qubit_cliffords
from rqcodes.distance import distance_exact, kl_oracle_distance
from rqcodes.experiments import ExperimentConfig, run_experiment

from test_chain import PINNED_THM2_C, brute_union_bound
from test_distance import five_qubit_encoder

# regression constant for greedy depth / ((t/n) log2 n) over n in 64..512;
# the observed ratio grows slowly with n, see README
PINNED_DEPTH_RATIO = 4.5

RESULTS: list[str] = []


@contextlib.contextmanager
def criterion(num: int, name: str, limit_s: float | None = None):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        if limit_s is not None:
            assert elapsed < limit_s, f"took {elapsed:.1f}s, limit {limit_s}s"
    except BaseException as exc:
        RESULTS.append(f"FAIL [{num}] {name}: {exc}")
        print(RESULTS[-1])
        raise
    RESULTS.append(f"PASS [{num}] {name} ({elapsed:.1f}s)")
    print(RESULTS[-1])


def test_1_gate_table():
    with criterion(1, "two-qubit Clifford table, 11520 entries, 768 per Pauli pair", 10):
        table = enumerate_two_qubit_cliffords()
        assert len(table) == TABLE_SIZE == 11520
        assert len({e.key() for e in table.entries}) == 11520
        counts = np.zeros((16, 16), dtype=int)
        for row in table.local_images:
            for a in range(1, 16):
                counts[a, row[a] & 15] += 1
        assert np.all(counts[1:, 1:] == 768)


def test_2_chain_exactness():
    with criterion(2, "chain rows exact, mass conserved, stationary fixed point", 60):
        for n in range(2, 1025):
            for l in range(1, n + 1):
                row = transition_row(n, l, exact=True)
                assert row[0] + row[1] + row[2] == 1, (n, l)
        n = 256
        arrays = transition_arrays(n)
        p = np.zeros(n + 1)
        p[1] = 1.0
        worst = 0.0
        for step in range(10**6):
            p = _step(p, *arrays)
            if step % 1000 == 999:
                worst = max(worst, abs(p.sum() - 1.0))
        worst = max(worst, abs(p.sum() - 1.0))
        assert worst <= 1e-10, worst
        for n in range(2, 257):
            s = stationary(n).probs
            assert np.abs(_step(s.copy(), *transition_arrays(n)) - s).max() <= 1e-12, n


def test_3_chain_circuit_equivalence():
    with criterion(3, "chain vs circuit weight law, n=6 t=20, TV <= 0.01", 120):
        cfg = ExperimentConfig("chain-eq", n=6, l0=1, t=20, trials=10**5, master_seed=2024, tolerance=0.01)
        report = run_experiment(cfg)
        expect = evolve(6, 1, 20).probs
        hist = np.bincount([r["weight"] for r in report.records], minlength=7) / cfg.trials
        tv = 0.5 * np.abs(hist - expect).sum()
        assert tv == pytest.approx(report.aggregates["tv_distance"], abs=1e-12)
        assert tv <= 0.01, tv


def test_4_distance_oracle_equivalence():
    with criterion(4, "exact distance == Knill-Laflamme oracle, 1200 circuits", 600):
        checked = 0
        for n, k in [(6, 1), (7, 2), (8, 2)]:
            for t in (0, 5, 20, 100):
                rng = np.random.default_rng([n, k, t])
                for _ in range(100):
                    c = sample_circuit(n, t, rng)
                    assert distance_exact(circuit_to_tableau(c), k).distance == kl_oracle_distance(c, k)
                    checked += 1
        assert checked == 1200


def test_5_five_qubit_code(table):
    with criterion(5, "[[5,1,3]] encoder has distance 3 on both routes"):
        c = five_qubit_encoder(table)
        assert distance_exact(circuit_to_tableau(c), 1).distance == 3
        assert kl_oracle_distance(c, 1) == 3


def test_6_union_bound_dominance():
    with criterion(6, "union bound dominates failure rate, n=8 k=2 t=50", 600):
        cfg = ExperimentConfig("distance", n=8, k=2, t=50, trials=10**4, master_seed=77)
        report = run_experiment(cfg)
        dists = np.array([r["distance"] for r in report.records])
        for d in (1, 2, 3):
            p = float(np.mean(dists <= d))
            sigma = math.sqrt(p * (1 - p) / cfg.trials)
            assert p <= union_bound(BoundParams(8, 2, d, 50)) + 3 * sigma, d
        exact = brute_union_bound(10, 2, 2, 300)
        assert exact == union_bound(BoundParams(10, 2, 2, 300), exact=True)
        assert abs(union_bound(BoundParams(10, 2, 2, 300)) - float(exact)) <= 1e-10 * float(exact)
        for d in (1, 3):
            exact = Fraction(brute_union_bound(10, 3, d, 40))
            assert abs(union_bound(BoundParams(10, 3, d, 40)) - float(exact)) <= 1e-10 * float(exact)


def test_7_coefficient_bound():
    with criterion(7, "coefficient bound and Vandermonde identity"):
        for n, k in [(20, 5), (64, 16), (128, 32)]:
            for l in range(n + 1):
                exact = sum(math.comb(k, p) * 3**p * math.comb(n - k, l - p) for p in range(0, min(k, l) + 1) if l - p <= n - k)
                assert sum(math.comb(k, p) * math.comb(n - k, l - p) for p in range(0, l + 1)) == math.comb(n, l)
                assert coefficient_sum(n, k, l) <= coefficient_bound(n, k, l) * (1 + 1e-12)
                lam = Fraction(3 * k, n + 2 * k)
                assert exact <= (l + 1) * 3 ** float(lam * l + 1) * math.comb(n, l) * (1 + 1e-12)


def test_8_theorem2_pinned_c():
    with criterion(8, f"mixing inequality holds at n=64 with pinned c={PINNED_THM2_C}"):
        res = check_theorem2(BoundParams(64, delta=0.1, eta=0.5, c=PINNED_THM2_C))
        assert res.holds and res.violations == []


def test_9_depth_scaling():
    with criterion(9, f"greedy depth ratio <= {PINNED_DEPTH_RATIO}, trivial bounds", 600):
        for n in (64, 128, 256, 512):
            assert n * math.ceil(math.log2(n)) ** 2 == gates_for(n, 1)
        cfg = ExperimentConfig("depth", n_values=[64, 128, 256, 512], c=1.0, trials=200, master_seed=9)
        report = run_experiment(cfg)
        assert len(report.records) == 800
        for rec in report.records:
            assert rec["max_wire_load"] <= rec["depth_greedy"] <= rec["t"]
        ratios = {n: v["greedy_ratio_max"] for n, v in report.aggregates.items()}
        print("greedy ratio max by n:", json.dumps(ratios))
        assert max(ratios.values()) <= PINNED_DEPTH_RATIO, ratios


@pytest.mark.parametrize(
    "setup",
    [
        dict(kind="chain-eq", n=8, t=40, trials=300),
        dict(kind="distance", n=8, k=2, t=50, trials=200),
        dict(kind="depth", n_values=[16, 64], c=1.0, trials=20),
        dict(kind="thm3", n=10, k=1, c=1.0, trials=200, distance_target=3),
    ],
    ids=lambda s: s["kind"],
)
def test_10_reproducibility(setup, tmp_path):
    with criterion(10, f"{setup['kind']} records identical across reruns and worker counts"):
        cfg = ExperimentConfig(master_seed=31337, **setup)
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(cfg.to_dict()))
        base = run_experiment(cfg).records
        for workers in (1, 2, 3):
            loaded = ExperimentConfig.load(path)
            loaded.workers = workers
            assert run_experiment(loaded).records == base
