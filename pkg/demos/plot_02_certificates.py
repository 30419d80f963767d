"""
Lie elements and group elements
===============================

A series is a Lie element when its coproduct is z(x)1 + 1(x)z and a group
element when the shuffle system holds.  Both tests return a certificate
listing the equations that fail.
"""
from fractions import Fraction

from freelie import GradedSeries, exp, is_grouplike, is_primitive, lie_bracket, shuffle_defect

w1 = GradedSeries.generator(1, 2, 4)
w2 = GradedSeries.generator(2, 2, 4)

z = lie_bracket(w1, w2) + w1
print("bracket is primitive:", is_primitive(z).verdict)
print("square is not:", is_primitive(w1 * w1).verdict)

g = exp(z)
print("exp(z) is group-like:", is_grouplike(g).verdict)

# nudge one coefficient and watch the certificate point at it
bad = g + GradedSeries(2, 4, {(1, 2): Fraction(1, 1000)})
cert = is_grouplike(bad)
print(f"{cert.n_violations} violated equations, first few:")
for v in cert.violations[:3]:
    print("  ", v.alpha, v.beta, v.defect, "recomputed:", shuffle_defect(bad, v.alpha, v.beta))
