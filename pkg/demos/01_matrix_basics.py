"""Row-stochastic matrices: validation, products, powers, row spread.

Everything downstream is built from one invariant: every matrix has
nonnegative entries and unit row sums.  This walkthrough builds a couple
of small matrices, multiplies them, and watches the row-spread coefficient
contract under repeated application, which is the mechanism behind every
consensus result in the package.
"""

import numpy as np

from beliefdyn import (delta_coefficient, matrix_power, multiply,
                       validate_stochastic)

p = validate_stochastic([[0.9, 0.1], [0.2, 0.8]])
print("a lazy switcher vs. an eager one:")
print(p)

print("\ntwo steps of the chain (P @ P):")
print(multiply(p, p))

print("\nrow spread delta(P^n): 0 means the rows agree, i.e. the starting")
print("state no longer matters:")
for n in (1, 2, 4, 8, 16, 32):
    print(f"  n={n:2d}  delta={delta_coefficient(matrix_power(p, n)):.3e}")

print("\nthe rows converge to the stationary distribution (2/3, 1/3):")
print(matrix_power(p, 64))

print("\nvalidation rejects anything that is not a probability table:")
for bad in ([[0.6, 0.5], [0.5, 0.5]], [[1.2, -0.2], [0.5, 0.5]]):
    try:
        validate_stochastic(bad)
    except ValueError as exc:
        print(f"  rejected: {exc}")
