"""Stabilizer codes from short random Clifford circuits.

Bit-packed Pauli algebra, the two-qubit Clifford group, random circuit
sampling and layering, exact code distances with a statevector oracle, and
the Pauli-weight Markov chain with its failure-probability bounds.
"""

from .pauli import PauliString, multiply, parse, symplectic_product, weight
from .clifford import CliffordTableau, apply_gate, conjugate, identity_tableau, two_qubit_table
from .circuits import Circuit, Gate, LayeredCircuit, circuit_to_tableau, parallelize, parallelize_asap, sample_circuit
from .distance import DistanceReport, distance_exact, distance_monte_carlo, gv_rate_bound, kl_oracle_distance
from .chain import BoundParams, WeightDistribution, evolve, stationary, union_bound

__version__ = "0.1.0"
