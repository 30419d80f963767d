"""
Truncated series in noncommuting letters
=========================================

Series live in a fixed truncation degree and carry exact rational
coefficients unless asked otherwise.
"""
from fractions import Fraction

from freelie import GradedSeries, circ, exp, ln, m_xi, mul, xi_norm

N = 4
w1 = GradedSeries.generator(1, 2, N)
w2 = GradedSeries.generator(2, 2, N)

# letters do not commute
print("w1 w2 - w2 w1 =", mul(w1, w2) - mul(w2, w1))

# exp and ln are finite sums once the degree is capped
g = mul(exp(w1), exp(w2))
print("exp(w1) exp(w2) has", len(g.terms), "terms")
print("ln undoes exp:", ln(exp(w1 + w2)) == w1 + w2)

# reversing words with a sign per letter inverts group elements
print("circ(g) g == 1:", mul(circ(g), g) == GradedSeries.one(2, N))

# weighted l1 norms scale degree j by xi**j
x = w1 + mul(w1, w2) * Fraction(1, 3)
for xi in (Fraction(1, 2), 1, 2):
    print(f"xi={xi}: |x| = {xi_norm(x, xi)}, |M_xi x|_1 = {xi_norm(m_xi(x, xi), 1)}")
