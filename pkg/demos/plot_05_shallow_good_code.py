"""
Finding a shallow circuit with good distance
============================================

Draw circuits with c n log2(n)^2 gates until one both reaches a target
distance and has greedy depth within the target.  The winning circuit is
written out so it can be reloaded and checked on its own.
"""

import json
import tempfile
from pathlib import Path

from rqcodes.experiments import ExperimentConfig, replay_witness, run_experiment

cfg = ExperimentConfig("thm3", n=14, k=1, c=1.0, trials=200, distance_target=3, master_seed=5)
report = run_experiment(cfg)
agg = report.aggregates
print("found:", agg["found"], "after", agg["trials_used"], "trials")
if agg["found"]:
    print("distance", agg["witness_distance"], "depth", agg["witness_depth"], "target depth", agg["depth_target"])
    print("replayed:", replay_witness(report, cfg.k))
    out = Path(tempfile.mkdtemp()) / "witness.json"
    out.write_text(json.dumps(agg["witness_circuit"]))
    print("witness circuit written to", out)
