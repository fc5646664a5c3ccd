"""Ensemble experiments over random circuits.

Every trial draws from its own generator keyed by ``(master_seed, trial_index)``,
so per-trial records do not depend on how trials are split across workers.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.stats import binomtest

from .chain import BoundParams, evolve, gates_for, union_bound
from .circuits import (
    Circuit,
    circuit_to_tableau,
    conjugate_through,
    max_wire_load,
    parallelize,
    parallelize_asap,
    sample_circuit,
)
from .clifford import two_qubit_table
from .distance import distance_exact
from .pauli import PauliString, parse

__all__ = [
    "RNG_ALGORITHM",
    "trial_rng",
    "ExperimentConfig",
    "ExperimentReport",
    "run_chain_equivalence",
    "run_distance_ensemble",
    "run_depth_scaling",
    "run_theorem3_demo",
    "run_experiment",
]

RNG_ALGORITHM = "numpy Philox4x64-10, key from SeedSequence([master_seed, trial_index, *extra]) (v1)"
KINDS = ("chain-eq", "distance", "depth", "thm3")


def trial_rng(master_seed: int, trial_index: int, *extra: int) -> np.random.Generator:
    ss = np.random.SeedSequence([master_seed, trial_index, *extra])
    return np.random.Generator(np.random.Philox(ss))


@dataclass
class ExperimentConfig:
    kind: str
    n: int = 6
    k: int = 1
    t: int | None = None
    c: float | None = None
    d: int | None = None
    trials: int = 1000
    master_seed: int = 0
    workers: int = 1
    output: str | None = None
    emit_csv: str | None = None
    # chain-eq
    l0: int = 1
    start_pauli: str | None = None
    tolerance: float = 0.01
    # depth
    n_values: list[int] | None = None
    # thm3
    distance_target: int = 3
    depth_factor: float = 5.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")

    def steps(self, n: int | None = None) -> int:
        n = self.n if n is None else n
        if self.t is not None:
            return self.t
        if self.c is None:
            raise ValueError("config needs t or c")
        return gates_for(n, self.c)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> ExperimentConfig:
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)

    @classmethod
    def load(cls, path: str | Path) -> ExperimentConfig:
        return cls.from_dict(json.loads(Path(path).read_text()))


@dataclass
class ExperimentReport:
    config: dict
    records: list[dict]
    aggregates: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    passed: bool = True
    metadata: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2))


# --- per-trial work ---------------------------------------------------------


def _start_pauli(cfg: ExperimentConfig) -> PauliString:
    if cfg.start_pauli:
        p = parse(cfg.start_pauli)
        if p.n != cfg.n:
            raise ValueError("start Pauli has the wrong length")
        return p
    if not 1 <= cfg.l0 <= cfg.n:
        raise ValueError("l0 out of range")
    return PauliString(cfg.n, (1 << cfg.l0) - 1, 0)


def _chain_trial(cfg: ExperimentConfig, idx: int) -> dict:
    rng = trial_rng(cfg.master_seed, idx)
    c = sample_circuit(cfg.n, cfg.steps(), rng)
    return {"trial": idx, "weight": conjugate_through(c, _start_pauli(cfg)).weight}


def _distance_trial(cfg: ExperimentConfig, idx: int) -> dict:
    rng = trial_rng(cfg.master_seed, idx)
    c = sample_circuit(cfg.n, cfg.steps(), rng)
    rep = distance_exact(circuit_to_tableau(c), cfg.k)
    return {"trial": idx, "distance": rep.distance, "witness": str(rep.witness)}


def _depth_trials(cfg: ExperimentConfig, idx: int) -> list[dict]:
    out = []
    for n in cfg.n_values or [cfg.n]:
        rng = trial_rng(cfg.master_seed, idx, n)
        t = cfg.steps(n)
        c = sample_circuit(n, t, rng)
        out.append(
            {
                "trial": idx,
                "n": n,
                "t": t,
                "depth_greedy": parallelize(c).depth,
                "depth_asap": parallelize_asap(c).depth,
                "max_wire_load": max_wire_load(c),
            }
        )
    return out


def _thm3_depth_target(cfg: ExperimentConfig) -> float:
    t = cfg.steps()
    return cfg.depth_factor * (t / cfg.n) * math.log2(cfg.n)


def _thm3_trial(cfg: ExperimentConfig, idx: int) -> dict:
    rng = trial_rng(cfg.master_seed, idx)
    c = sample_circuit(cfg.n, cfg.steps(), rng)
    dist = distance_exact(circuit_to_tableau(c), cfg.k).distance
    dep = parallelize(c).depth
    ok = dist >= cfg.distance_target and dep <= _thm3_depth_target(cfg)
    return {"trial": idx, "distance": dist, "depth_greedy": dep, "witness": ok}


_TRIAL_FUNCS = {
    "chain-eq": _chain_trial,
    "distance": _distance_trial,
    "depth": _depth_trials,
    "thm3": _thm3_trial,
}


def _run_chunk(args) -> list[dict]:
    cfg_dict, start, stop = args
    cfg = ExperimentConfig.from_dict(cfg_dict)
    fn = _TRIAL_FUNCS[cfg.kind]
    out: list[dict] = []
    for idx in range(start, stop):
        rec = fn(cfg, idx)
        out.extend(rec if isinstance(rec, list) else [rec])
    return out


def _chunks(start: int, stop: int, size: int):
    return [(a, min(a + size, stop)) for a in range(start, stop, size)]


class _TrialStream:
    """Runs trials in index order, optionally streaming records to a JSONL file."""

    def __init__(self, cfg: ExperimentConfig):
        self.cfg = cfg
        self.path = Path(cfg.output).with_suffix(".trials.jsonl") if cfg.output else None
        self._fh = None

    def __enter__(self):
        if self.path:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self._fh = self.path.open("w")
        return self

    def __exit__(self, *exc):
        if self._fh:
            self._fh.close()

    def _write(self, recs: list[dict]) -> None:
        if self._fh:
            for r in recs:
                self._fh.write(json.dumps(r) + "\n")
            self._fh.flush()

    def run(self, start: int, stop: int, stop_when=None) -> list[dict]:
        cfg = self.cfg
        workers = max(1, cfg.workers)
        size = max(1, math.ceil((stop - start) / (workers * 8)))
        size = min(size, 2000)
        jobs = [(cfg.to_dict(), a, b) for a, b in _chunks(start, stop, size)]
        records: list[dict] = []
        if workers == 1:
            results = map(_run_chunk, jobs)
            return self._collect(results, records, stop_when)
        pool = ProcessPoolExecutor(workers)
        try:
            return self._collect(pool.map(_run_chunk, jobs), records, stop_when)
        finally:
            pool.shutdown(cancel_futures=True)

    def _collect(self, results, records, stop_when):
        for recs in results:
            if stop_when is not None:
                for pos, r in enumerate(recs):
                    if stop_when(r):
                        recs = recs[: pos + 1]
                        self._write(recs)
                        records.extend(recs)
                        return records
            self._write(recs)
            records.extend(recs)
        return records


def _metadata(started: float) -> dict:
    return {
        "rng_algorithm": RNG_ALGORITHM,
        "gate_table_checksum": two_qubit_table().checksum,
        "wall_seconds": round(time.time() - started, 3),
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"),
    }


def _finish(report: ExperimentReport, cfg: ExperimentConfig, csv_tables: dict | None = None):
    if cfg.output:
        Path(cfg.output).parent.mkdir(parents=True, exist_ok=True)
        report.save(cfg.output)
    if cfg.emit_csv and csv_tables:
        out = Path(cfg.emit_csv)
        out.mkdir(parents=True, exist_ok=True)
        for name, (header, rows) in csv_tables.items():
            with (out / f"{name}.csv").open("w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(header)
                w.writerows(rows)
    return report


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    ci = binomtest(successes, trials).proportion_ci(confidence_level=confidence, method="wilson")
    return float(ci.low), float(ci.high)


# --- experiments ------------------------------------------------------------


def run_chain_equivalence(cfg: ExperimentConfig) -> ExperimentReport:
    """Empirical weight of ``U nu U^dag`` versus the exact chain row."""
    started = time.time()
    n, t = cfg.n, cfg.steps()
    start = _start_pauli(cfg)
    with _TrialStream(cfg) as stream:
        records = stream.run(0, cfg.trials)
    counts = np.bincount([r["weight"] for r in records], minlength=n + 1)
    emp = counts / cfg.trials
    exact = evolve(n, start.weight, t).as_float()
    tv = 0.5 * float(np.abs(emp - exact).sum())
    noise = 1.5 * float(np.sqrt(exact * (1 - exact) / cfg.trials).sum())
    report = ExperimentReport(
        config=cfg.to_dict(),
        records=records,
        aggregates={
            "start_pauli": str(start),
            "t": t,
            "histogram": counts.tolist(),
            "empirical": emp.tolist(),
            "tv_distance": tv,
            "tv_noise_3sigma": noise,
        },
        bounds={"exact_chain_row": exact.tolist()},
        passed=tv <= cfg.tolerance,
        metadata=_metadata(started),
    )
    rows = [(w, int(counts[w]), float(emp[w]), float(exact[w])) for w in range(n + 1)]
    return _finish(report, cfg, {"chain_eq": (("weight", "count", "empirical", "exact"), rows)})


def run_distance_ensemble(cfg: ExperimentConfig) -> ExperimentReport:
    """Distance histogram against the exact union bound for each d."""
    started = time.time()
    n, k, t = cfg.n, cfg.k, cfg.steps()
    with _TrialStream(cfg) as stream:
        records = stream.run(0, cfg.trials)
    dists = [r["distance"] for r in records]
    hist = np.bincount(dists, minlength=n + 1)
    d_values = [cfg.d] if cfg.d else list(range(1, max(dists) + 1))
    per_d = {}
    passed = True
    for d in d_values:
        fails = int(sum(x <= d for x in dists))
        p = fails / cfg.trials
        sigma = math.sqrt(p * (1 - p) / cfg.trials)
        ub = union_bound(BoundParams(n, k, d, t))
        ok = p <= ub + 3 * sigma
        passed &= ok
        per_d[str(d)] = {
            "failures": fails,
            "rate": p,
            "wilson_95": wilson_interval(fails, cfg.trials),
            "sigma": sigma,
            "union_bound": ub,
            "dominated": ok,
        }
    report = ExperimentReport(
        config=cfg.to_dict(),
        records=records,
        aggregates={
            "t": t,
            "histogram": hist.tolist(),
            "median_distance": statistics.median(dists),
            "mean_distance": float(np.mean(dists)),
        },
        bounds=per_d,
        passed=passed,
        metadata=_metadata(started),
    )
    rows = [(d, int(hist[d])) for d in range(n + 1)]
    return _finish(report, cfg, {"distance_hist": (("distance", "count"), rows)})


def run_depth_scaling(cfg: ExperimentConfig) -> ExperimentReport:
    """Greedy and ASAP depth over a sweep of n with t = steps(n)."""
    started = time.time()
    with _TrialStream(cfg) as stream:
        records = stream.run(0, cfg.trials)
    per_n = {}
    passed = True
    for n in cfg.n_values or [cfg.n]:
        recs = [r for r in records if r["n"] == n]
        t = recs[0]["t"]
        scale = (t / n) * math.log2(n)
        g = np.array([r["depth_greedy"] for r in recs])
        a = np.array([r["depth_asap"] for r in recs])
        load = np.array([r["max_wire_load"] for r in recs])
        trivial = bool(np.all(g <= t) and np.all(g >= load) and np.all(a >= load) and np.all(a <= g))
        passed &= trivial
        per_n[str(n)] = {
            "t": t,
            "scale": scale,
            "greedy_median": float(np.median(g)),
            "greedy_max": int(g.max()),
            "asap_median": float(np.median(a)),
            "asap_max": int(a.max()),
            "greedy_ratio_max": float(g.max() / scale),
            "greedy_ratio_median": float(np.median(g) / scale),
            "asap_ratio_max": float(a.max() / scale),
            "trivial_bounds_hold": trivial,
        }
    report = ExperimentReport(
        config=cfg.to_dict(),
        records=records,
        aggregates=per_n,
        passed=passed,
        metadata=_metadata(started),
    )
    header = ("n", "t", "greedy_median", "greedy_max", "asap_median", "asap_max", "greedy_ratio_max")
    rows = [(int(n), *(v[h] for h in header[1:])) for n, v in per_n.items()]
    return _finish(report, cfg, {"depth": (header, rows)})


def run_theorem3_demo(cfg: ExperimentConfig) -> ExperimentReport:
    """Search for one circuit with distance and greedy depth both on target."""
    started = time.time()
    depth_target = _thm3_depth_target(cfg)
    with _TrialStream(cfg) as stream:
        records = stream.run(0, cfg.trials, stop_when=lambda r: r["witness"])
    found = bool(records) and records[-1]["witness"]
    agg = {
        "found": found,
        "trials_used": len(records),
        "distance_target": cfg.distance_target,
        "depth_target": depth_target,
        "distance_histogram": np.bincount([r["distance"] for r in records]).tolist(),
    }
    if found:
        w = records[-1]
        c = sample_circuit(cfg.n, cfg.steps(), trial_rng(cfg.master_seed, w["trial"]))
        c.seed = w["trial"]
        agg["witness_circuit"] = c.to_dict()
        agg["witness_distance"] = w["distance"]
        agg["witness_depth"] = w["depth_greedy"]
    report = ExperimentReport(
        config=cfg.to_dict(),
        records=records,
        aggregates=agg,
        passed=found,
        metadata=_metadata(started),
    )
    return _finish(report, cfg)


_RUNNERS = {
    "chain-eq": run_chain_equivalence,
    "distance": run_distance_ensemble,
    "depth": run_depth_scaling,
    "thm3": run_theorem3_demo,
}


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    return _RUNNERS[cfg.kind](cfg)


def replay_witness(report: ExperimentReport | dict, k: int) -> tuple[int, int]:
    """Distance and greedy depth recomputed from an emitted witness circuit."""
    d = report.to_dict() if isinstance(report, ExperimentReport) else report
    c = Circuit.from_dict(d["aggregates"]["witness_circuit"])
    return distance_exact(circuit_to_tableau(c), k).distance, parallelize(c).depth
