"""
Distance of the code prepared by a random circuit
=================================================

Logical qubits enter on wires 0..k-1 and the remaining wires start in |0>.
The distance is the smallest weight of U nu U^dag over Paulis nu that act
nontrivially on the logical wires and as I or Z on the ancillas.  The
exact search is compared with a dense statevector check of the
Knill-Laflamme conditions.
"""

import numpy as np

from rqcodes.circuits import circuit_to_tableau, parallelize, sample_circuit
from rqcodes.distance import distance_exact, distance_monte_carlo, kl_oracle_distance

rng = np.random.default_rng(11)
n, k = 8, 2

for t in (0, 10, 40, 160):
    c = sample_circuit(n, t, rng)
    rep = distance_exact(circuit_to_tableau(c), k)
    print(f"t={t:4d}  depth={parallelize(c).depth:3d}  distance={rep.distance}"
          f"  oracle={kl_oracle_distance(c, k)}  witness={rep.witness_image}")

# larger n: exhaustive search gets expensive, sampling gives an upper bound
c = sample_circuit(40, 4000, rng)
tab = circuit_to_tableau(c)
mc = distance_monte_carlo(tab, 4, 20000, rng)
print("n=40 k=4 sampled upper bound on distance:", mc.distance)
