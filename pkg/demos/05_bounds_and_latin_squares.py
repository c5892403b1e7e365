"""
How many MUBs, and the Latin square route
=========================================

Known bounds on M(n) for small n, and the block construction in dimension d^2.
"""

import numpy as np

from mubdesigns import construction_mols, mub_count_bounds, mols

print(" n   lower  upper  rule")
for n in range(2, 21):
    b = mub_count_bounds(n)
    print(f"{n:>2}   {b.lower:>5}  {b.upper:>5}  {b.lower_rule}")

# for square n the Latin-square route gives a second lower bound
b = mub_count_bounds(36)
print("n=36:", tuple(b), *b.notes, sep="\n  ")

# two orthogonal Latin squares of order 3
for sq in mols(3):
    print(np.array(sq.grid))

# each symbol marks d positions; one Hadamard spreads a block basis over them
fam = construction_mols(3)
print(f"d=3 -> {len(fam)} bases in C^{fam.dim}, residual {fam.residual:.1e}")

# any Hadamard works, not only the Fourier matrix
h = np.array([[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]])
fam = construction_mols(4, hadamard=h)
print(f"d=4 with a real Hadamard -> {len(fam)} bases in C^{fam.dim}, residual {fam.residual:.1e}")
