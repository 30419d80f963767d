"""
Alternating words in ln(exp(t w1) exp(t w2))
============================================

The coefficients of (12)^m and (21)^m, next to the closed form -t^(2m)/(2m)
that a term-by-term reading of the logarithm would suggest.
"""
from fractions import Fraction

from freelie.cli import counterexample_rows

for t in (Fraction(1), Fraction(1, 2), Fraction(2)):
    for r in counterexample_rows(t, 6):
        print(f"t={t} m={r['m']}: (12)^m {r['coef_12']}, (21)^m {r['coef_21']},"
              f" closed form {r['predicted_each']}")
