"""Command-line entry point: ``python -m rqcodes <subcommand>``."""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import chain
from .circuits import Circuit, circuit_to_tableau, parallelize, parallelize_asap, sample_circuit
from .clifford import two_qubit_table
from .distance import distance_exact, distance_monte_carlo, kl_oracle_distance
from .experiments import ExperimentConfig, run_experiment, trial_rng


def _dump(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, default=str)
    sys.stdout.write("\n")


def cmd_gate_table(args) -> int:
    tb = two_qubit_table()
    _dump({"entries": len(tb), "checksum": tb.checksum})
    return 0


def cmd_sample_circuit(args) -> int:
    c = sample_circuit(args.n, args.t, trial_rng(args.seed, 0))
    c.seed = args.seed
    if args.out:
        c.save(args.out)
    else:
        _dump(c.to_dict())
    return 0


def cmd_parallelize(args) -> int:
    c = Circuit.load(args.inp)
    lc = parallelize_asap(c) if args.asap else parallelize(c)
    _dump(
        {
            "scheduler": "asap" if args.asap else "greedy",
            "n": c.n,
            "gates": len(c),
            "depth": lc.depth,
            "layer_sizes": lc.layer_sizes(),
        }
    )
    return 0


def cmd_distance(args) -> int:
    c = Circuit.load(args.inp)
    tab = circuit_to_tableau(c)
    if args.mc:
        rep = distance_monte_carlo(tab, args.k, args.mc, trial_rng(args.seed, 0))
    else:
        rep = distance_exact(tab, args.k)
    out = rep.to_dict()
    if args.oracle is not None:
        out["oracle_distance"] = kl_oracle_distance(c, args.k, args.oracle)
    _dump(out)
    return 0


def cmd_chain_evolve(args) -> int:
    wd = chain.evolve(args.n, args.l0, args.t, exact=args.exact_rational)
    params = {"n": args.n, "l0": args.l0, "t": args.t, "exact_rational": args.exact_rational}
    if args.format == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(["n", "l0", "t", "weight", "prob"])
        for m, p in enumerate(wd.probs):
            w.writerow([args.n, args.l0, args.t, m, str(p) if args.exact_rational else repr(float(p))])
    else:
        probs = [str(p) for p in wd.probs] if args.exact_rational else wd.as_float().tolist()
        _dump({**params, "probs": probs})
    return 0


def cmd_bound(args) -> int:
    if args.t is None and not args.closed_form:
        raise SystemExit("bound: --t is required unless --closed-form is given")
    p = chain.BoundParams(args.n, args.k, args.d, args.t, delta=args.delta)
    out = {"n": args.n, "k": args.k, "d": args.d, "t": args.t}
    if args.t is not None:
        out["union_bound"] = chain.union_bound(p)
    if args.closed_form:
        out["delta"] = args.delta
        out["closed_form"] = chain.closed_form_failure_bound(p)
        out["log2_closed_form_second_term"] = chain.log2_closed_form_second_term(p)
    _dump(out)
    return 0


def cmd_check_thm2(args) -> int:
    if args.search:
        c = chain.theorem2_min_c(args.n, args.delta, args.eta, args.search)
        _dump({"n": args.n, "delta": args.delta, "eta": args.eta, "min_c": c})
        return 0 if c is not None else 1
    p = chain.BoundParams(args.n, delta=args.delta, eta=args.eta, c=args.c, t=args.t)
    res = chain.check_theorem2(p)
    _dump(
        {
            "n": args.n,
            "delta": args.delta,
            "eta": args.eta,
            "c": args.c,
            "t": res.t,
            "violations": [
                {"l": l, "m": m, "lhs": lhs, "rhs": rhs} for l, m, lhs, rhs in res.violations
            ],
        }
    )
    return 0 if res.holds else 1


_INLINE = ("n", "k", "t", "c", "d", "trials", "master_seed", "workers", "output", "l0", "tolerance",
           "distance_target", "depth_factor")


def cmd_experiment(args) -> int:
    cfg = json.loads(open(args.config).read()) if args.config else {}
    cfg["kind"] = args.kind
    for name in _INLINE:
        v = getattr(args, name)
        if v is not None:
            cfg[name] = v
    if args.n_values:
        cfg["n_values"] = [int(x) for x in args.n_values.split(",")]
    if args.start_pauli:
        cfg["start_pauli"] = args.start_pauli
    if args.emit_csv:
        cfg["emit_csv"] = args.emit_csv
    report = run_experiment(ExperimentConfig.from_dict(cfg))
    summary = report.to_dict()
    if not args.records:
        summary.pop("records")
    _dump(summary)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rqcodes", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gate-table", help="size and checksum of the two-qubit Clifford table")
    s.set_defaults(func=cmd_gate_table)

    s = sub.add_parser("sample-circuit", help="sample a random sequential circuit")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sample_circuit)

    s = sub.add_parser("parallelize", help="layer a circuit and report its depth")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--asap", action="store_true")
    s.set_defaults(func=cmd_parallelize)

    s = sub.add_parser("distance", help="code distance of a circuit encoder")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--k", type=int, required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", help="exhaustive enumeration (default)")
    g.add_argument("--mc", type=int, metavar="SAMPLES")
    s.add_argument("--oracle", type=int, metavar="D_MAX")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_distance)

    s = sub.add_parser("chain-evolve", help="row of P^t for the weight chain")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--l0", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--exact-rational", action="store_true")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.set_defaults(func=cmd_chain_evolve)

    s = sub.add_parser("bound", help="union bound on Pr[distance <= d]")
    for name in ("n", "k", "d"):
        s.add_argument(f"--{name}", type=int, required=True)
    s.add_argument("--t", type=int, help="circuit size; optional with --closed-form")
    s.add_argument("--closed-form", action="store_true")
    s.add_argument("--delta", type=float, default=0.01)
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("check-thm2", help="check the P^t(l, m) bound numerically")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--delta", type=float, required=True)
    s.add_argument("--eta", type=float, required=True)
    s.add_argument("--c", type=float)
    s.add_argument("--t", type=int)
    s.add_argument("--search", type=int, metavar="C_MAX", help="find the smallest integer c <= C_MAX")
    s.set_defaults(func=cmd_check_thm2)

    s = sub.add_parser("experiment", help="run an ensemble experiment")
    s.add_argument("kind", choices=("chain-eq", "distance", "depth", "thm3"))
    s.add_argument("--config")
    for name in ("n", "k", "t", "d", "trials", "master_seed", "workers", "l0", "distance_target"):
        s.add_argument(f"--{name.replace('_', '-')}", dest=name, type=int)
    for name in ("c", "tolerance", "depth_factor"):
        s.add_argument(f"--{name.replace('_', '-')}", dest=name, type=float)
    s.add_argument("--output")
    s.add_argument("--n-values")
    s.add_argument("--start-pauli")
    s.add_argument("--emit-csv", metavar="DIR")
    s.add_argument("--records", action="store_true", help="include per-trial records in stdout")
    s.set_defaults(func=cmd_experiment)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
