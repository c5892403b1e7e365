"""
Building complete sets of mutually unbiased bases
==================================================

Four routes to d+1 bases, picked by the arithmetic of d.
"""

import numpy as np

from mubdesigns import (
    construction_gr,
    construction_pauli,
    construction_wf,
    field_ctx,
    maximal_mubs,
    mub_check,
)

# odd prime powers: quadratic phases over GF(q). q = 9 needs GF(3^2)
ctx = field_ctx(3, 2)
print("GF(9) modulus (low degree first):", ctx.modulus)
print("trace of every element:", ctx.trace_table)

fam = construction_wf(9)
print(f"q=9: {len(fam)} bases, worst residual {fam.residual:.1e}")

# one vector of the first non-standard basis, scaled so the phases are easy to read
v = fam.bases[1].vectors[4] * 3
print("3 * B1[4] phases / (2 pi / 3):", np.round(np.angle(v) / (2 * np.pi / 3)) % 3)

# powers of two: Galois ring GR(4, n), every amplitude is a power of i
fam = construction_gr(3)
phases = np.round(np.angle(fam.bases[2].vectors * np.sqrt(8)) / (np.pi / 2)) % 4
print("d=8, basis 2 as exponents of i:")
print(phases.astype(int))

# primes: eigenbases of the commuting Weyl-Heisenberg classes
fam = construction_pauli(5, seed=0)
print(f"p=5 via simultaneous diagonalisation: residual {fam.residual:.1e}")

# maximal_mubs dispatches on d
for d in (2, 3, 4, 5, 7, 8, 9, 16, 25):
    fam = maximal_mubs(d)
    check = mub_check(fam.bases)
    print(f"d={d:>2}: {fam.provenance['construction']:>5}  bases={len(fam):>2}  ok={check.ok}")

# composite dimensions without a prime-power factorisation are refused
try:
    maximal_mubs(6)
except ValueError as err:
    print("d=6:", err)
