"""
Cofactors of a unitriangular matrix
===================================

Above the diagonal a cofactor of a lower unitriangular matrix is a signed
sum over decreasing index chains.  Compare with a determinant computed the
slow way, and count the chain terms.
"""

import math
import random

from gendawson.triangular import (
    UniTriangular,
    chain_term_counts,
    cofactor_chains,
    cofactor_closed_form,
    cofactor_oracle,
    format_matrix,
)

rng = random.Random(1)
k = 6
m = UniTriangular(tuple(tuple(rng.randint(-4, 4) for _ in range(r)) for r in range(k)))
print(format_matrix(m))

for i in range(1, k):
    row = [cofactor_closed_form(m, i, n) for n in range(1, k - i + 1)]
    oracle = [cofactor_oracle(m, i, i + n) for n in range(1, k - i + 1)]
    print(f"row {i}: {row}  {'ok' if row == oracle else 'MISMATCH'}")

print("\nchains for n=4:")
for chain in cofactor_chains(4):
    print("  ", " > ".join(map(str, chain)))

for n in range(1, 9):
    counts = chain_term_counts(n)
    print(n, [counts[s] for s in range(1, n + 1)], "binomials:",
          [math.comb(n - 1, n - s) for s in range(1, n + 1)])
