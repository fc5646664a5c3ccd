"""
The weight Markov chain and the union bound
===========================================

Under one random gate the weight of a Pauli moves by at most one step, and
its law depends only on the current weight.  Evolving this chain gives the
exact probability that a fixed logical Pauli ends at low weight, and
summing over Paulis gives an upper bound on the chance that the random
code has small distance.
"""

import numpy as np

from rqcodes.chain import BoundParams, closed_form_failure_bound, evolve, stationary, union_bound

n = 20
s = stationary(n)
for t in (0, 50, 200, 800, 3200):
    p = evolve(n, 1, t)
    print(f"t={t:5d}  TV to stationary = {p.tv_distance(s):.3e}")

# exact rationals at small n
print("one step from weight 1 at n=2:", evolve(2, 1, 1, exact=True).probs.tolist())

# union bound on Pr[distance <= d] for an n=30, k=3 code as the circuit grows
for t in (100, 400, 1600, 6400):
    print(f"t={t:5d}", [f"{union_bound(BoundParams(30, 3, d, t)):.3g}" for d in (1, 2, 3, 4)])

# the closed form is informative only far out in n
for n in (256, 1024, 4096):
    print(n, closed_form_failure_bound(BoundParams(n, k=n // 20, d=n // 40, delta=0.01)))

print(np.round(stationary(8).as_float(), 4))
