"""
Chain metrization and Frink's bounds
====================================

The chain distance is the cheapest way to walk between two points through
intermediate stops.  When K <= 2 it never drops below rho / (2K).
"""

from quasimetric import chain_metrize, chain_oracle, frink_check, sigma_bound, validate_space
from quasimetric.harness import GeneratorSpec, generate_space

# A direct edge of length 3 against a two-step detour of length 2.
Q = validate_space([[0, 1, 3], [1, 0, 1], [3, 1, 0]], labels="ABC")
result = chain_metrize(Q)
print(result.d.matrix())
print("witness A -> C:", [Q.labels[i] for i in result.witness(0, 2)])

# Brute-force enumeration of chains agrees with the shortest-path closure.
print("oracle agrees:", chain_oracle(Q, Q.n - 2) == result.d.matrix())

# K = 3 here, so the theorem does not apply, although the bounds happen to hold.
print(frink_check(Q))

# Random Euclidean points are metric, hence K <= 2, and the bounds are
# guaranteed.
E = generate_space(GeneratorSpec("euclidean-metric", n=10, seed=7))
print(frink_check(E))

# The proof weighs inner chain edges twice.  For K <= 2 the weighted sum
# always dominates the direct distance.
print(sigma_bound(E, [0, 3, 5, 8, 1]))
