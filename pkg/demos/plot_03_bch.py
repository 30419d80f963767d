"""
Campbell-Hausdorff coordinates
==============================

``bch`` returns the Lie element z with exp(x) exp(y) = exp(z), written in
the Lyndon basis.
"""
from freelie import LieSeries, bch, lyndon_words, witt_dimension

N = 5
x = LieSeries.generator(1, 2, N)
y = LieSeries.generator(2, 2, N)
for w, c in bch(x, y).items():
    print("".join(map(str, w)).ljust(6), c)

# the basis has Witt-many elements in each degree
print([witt_dimension(2, d) for d in range(1, N + 1)])
print([sum(len(w) == d for w in lyndon_words(2, N)) for d in range(1, N + 1)])
