"""
The dyadic counterexample
=========================

Dyadic rationals with edge lengths a**level give a space that is nearly
metric (every triangle within a factor (1-a)/a) yet whose chain distance
between 0 and 1 shrinks like (2a)**N.
"""

from fractions import Fraction

from quasimetric import dyadic
from quasimetric.harness import collapse_experiment, ratio_experiment

params = dyadic.DyadicParams(Fraction(2, 5))
z = dyadic.DyadicPoint.of(Fraction(11, 64))

# Left and right paths of 11/64 between them visit every lower level once.
print([str(w) for w in dyadic.path(z, "left")])
print([str(w) for w in dyadic.path(z, "right")])

# The tent over z, as CSV ready for any plotting tool.
print(dyadic.tent_csv(z))

# Distance to both endpoints adds up to tau(level).
print(dyadic.rho(z, dyadic.ZERO, params) + dyadic.rho(z, dyadic.ONE, params), params.tau(6))

# Every triangle is within the factor (1 - a)/a = 3/2 of the triangle inequality.
C, triple = ratio_experiment(params, 6)
print("max ratio at depth 6:", C, float(C), [str(p) for p in triple])

# But chains through finer and finer points make 0 and 1 collapse together.
for row in collapse_experiment(params, 8):
    print(row.depth, row.d01, float(row.d01))
