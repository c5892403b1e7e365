"""
Recovering bases from a shuffled union
======================================

A 2-design with angles {0, 1/d} and d(d+1) points splits uniquely into
mutually unbiased bases. Shuffle a union, strip the labels, get the bases back.
"""

import numpy as np

from mubdesigns import PreconditionError, builtin_sic, intersection_count, maximal_mubs, partition_into_mubs

d = 5
X = maximal_mubs(d).union()
perm = np.random.default_rng(3).permutation(len(X))
shuffled = X.take(perm).relabel(None)

fam = partition_into_mubs(shuffled)
print(f"{len(fam)} bases recovered, residual {fam.residual:.1e}")
for group in fam.provenance["groups"]:
    print("  indices", group, "came from", {X.labels[perm[i]] for i in group})

# two orthogonal vectors share d-2 further orthogonal partners: the rest of their basis
i, j = fam.provenance["groups"][0][:2]
print("common orthogonal partners:", intersection_count(shuffled, i, j), "= d - 2 =", d - 2)

# a SIC is a 2-design but fails the size and angle preconditions
try:
    partition_into_mubs(builtin_sic(3))
except PreconditionError as err:
    print("SIC:", err)
