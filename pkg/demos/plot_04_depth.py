"""
Parallelizing a random circuit
==============================

Greedy leveling keeps filling the current layer until a gate touches a
busy qubit and then opens a new one.  ASAP scheduling places each gate
in the earliest layer after the last gate on either of its qubits.  Both
are compared to the scale (t/n) log2 n.
"""

import math

import numpy as np

from rqcodes.circuits import max_wire_load, parallelize, parallelize_asap, sample_circuit
from rqcodes.chain import gates_for

rng = np.random.default_rng(3)
print(" n      t   greedy   asap   load   greedy/scale   asap/scale")
for n in (32, 64, 128, 256):
    t = gates_for(n, 1)
    c = sample_circuit(n, t, rng)
    g, a = parallelize(c).depth, parallelize_asap(c).depth
    scale = t / n * math.log2(n)
    print(f"{n:3d} {t:6d} {g:8d} {a:6d} {max_wire_load(c):6d} {g / scale:14.2f} {a / scale:12.2f}")
