"""
Ordered exponentials
====================

E' = E gamma with E(0) = 1.  Piecewise-constant paths give products of
exponentials; a group element is recovered from its log-derivative path;
the float solver approaches the exact answer as the grid refines.
"""
from fractions import Fraction

from freelie import (LieSeries, PiecewiseConstPath, exp, log_derivative_path, mul,
                     ordered_exp_pc, ordered_exp_poly, volterra_solve)

X1, X2 = LieSeries.generator(1, 2, 4), LieSeries.generator(2, 2, 4)
path = PiecewiseConstPath([0, Fraction(1, 2), 1], [X1, X2])
E = ordered_exp_pc(path, 1)
print("two pieces:", E == mul(exp(X1.expand() / 2), exp(X2.expand() / 2)))

g = mul(exp(X1.expand()), exp(X2.expand()))
gamma = log_derivative_path(g)
print("t-coefficients of the path:", len(gamma.t_coeffs))
print("round trip:", ordered_exp_poly(gamma, 1) == g)

for steps in (16, 64, 256, 1024):
    err = volterra_solve(path, 1.0, steps).max_abs_diff(E)
    print(f"{steps:5d} steps: max error {err:.2e}")
