"""
Evaluating at matrices
======================

Substituting strictly upper triangular matrices for the letters makes every
long word vanish, so truncation loses nothing.
"""
from fractions import Fraction

import numpy as np

from freelie import GradedSeries, eval_series, exp, heisenberg_preimage, heisenberg_target, mul

H = heisenberg_target()
w1 = GradedSeries.generator(1, 2, 3)
w2 = GradedSeries.generator(2, 2, 3)

r = eval_series(mul(exp(w1), exp(w2)), H)
print(r.value)
print("exact:", r.nilpotent_exact, "nilpotency index:", r.nilpotency_index)

# every unipotent 3x3 matrix is hit
U = np.array([[1, Fraction(2), Fraction(-1, 3)], [0, 1, Fraction(5)], [0, 0, 1]], dtype=object)
z = heisenberg_preimage(U)
print("preimage coords:", z.items())
print("hits U:", (eval_series(exp(z.expand()), H).value == U).all())
