"""
Pauli strings and two-qubit Clifford gates
==========================================

Pauli strings are stored as two integer bit masks plus a phase exponent.
A Clifford tableau records where each X_q and Z_q is sent, which is all
that is needed to push any Pauli through a circuit.
"""

import numpy as np

from rqcodes import PauliString, parse, two_qubit_table
from rqcodes.circuits import Circuit, circuit_to_tableau

# multiplication keeps track of the phase: X * Z = -iY
x, z = parse("X"), parse("Z")
print("X * Z =", x * z)
print("weight of XIZY:", parse("XIZY").weight)

# the gate set is the full two-qubit Clifford group modulo phase
table = two_qubit_table()
print("gates in the table:", len(table))
print("table checksum:", table.checksum[:16], "...")

# a CNOT copies X forward and Z backward
cx = table.named("CNOT01")
c = Circuit.from_gates(2, [(0, 1, cx)])
tab = circuit_to_tableau(c)
for p in ("XI", "IX", "ZI", "IZ"):
    print(p, "->", tab.conjugate(parse(p)))

# every nonidentity two-qubit Pauli is hit equally often over the table
counts = np.zeros(16, dtype=int)
for row in table.local_images:
    counts[row[1] & 15] += 1
print("images of X on qubit 0, by target Pauli:", counts[1:].tolist())
