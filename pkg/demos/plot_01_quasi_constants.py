"""
Quasi-metric constants of small spaces
======================================

Build a few finite spaces, measure how far they are from being metric, and
watch the snowflake transform turn a metric into a 2**p-quasi-metric.
"""

from fractions import Fraction

from quasimetric import classify, quasi_constant, snowflake, validate_space

# Three collinear points at 0, 1 and 3: a metric, but not an ultrametric.
line = validate_space([[0, 1, 3], [1, 0, 2], [3, 2, 0]], labels="ABC")
print(classify(line))

# K is the smallest constant with rho(x,z) <= K max(rho(x,y), rho(y,z)).
# Here the long side 3 against the longer short side 2 gives K = 3/2.
K, (x, y, z) = quasi_constant(line)
print("K =", K, "attained at", line.labels[x], line.labels[y], line.labels[z])

# Squaring distances breaks the triangle inequality (9 > 1 + 4) but K stays
# below 2**2.
squared = snowflake(line, 2)
print(squared.matrix())
print(classify(squared))

# Entries written as p/q stay exact; any decimal switches to float mode with
# an absolute tolerance of 1e-9.
exact = validate_space([[0, Fraction(1, 3)], [Fraction(1, 3), 0]])
floaty = validate_space([[0, 0.5], [0.5, 0]])
print(exact.exact, floaty.exact)
