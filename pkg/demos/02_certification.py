"""
Certifying projective designs
=============================

Welch sums, angle sets and subdegrees for three sets in C^3.
"""

import numpy as np

from mubdesigns import VectorSet, angle_set, certify, design_order, maximal_mubs, standard_basis, subdegrees
from mubdesigns.designs import random_unit_vectors

mubs = maximal_mubs(3).union()
basis = standard_basis(3)
noise = VectorSet(random_unit_vectors(12, 3, np.random.default_rng(7)))

# the Welch profile: S_k against its lower bound, k = 0..3
for name, X in [("mub union", mubs), ("standard basis", basis), ("random", noise)]:
    prof = design_order(X)
    rows = "  ".join(f"k={r.k}: {r.residual:.1e}" for r in prof.rows)
    print(f"{name:>15}: t={prof.order}   {rows}")

# a complete MUB set in C^d has two angles, 0 and 1/d
a = angle_set(mubs)
print("angles:", np.round(a.values, 12), "multiplicities:", a.multiplicities)

# every vector sees d-1 orthogonal partners and d^2 unbiased ones
s = subdegrees(mubs)
print("subdegrees:", {round(k, 6): v for k, v in s.table().items()}, "regular:", s.regular)

# the full report, including the pointwise check on random probes
rep = certify(mubs, probes=100, seed=0)
print("design order", rep.order, "| MUB union", rep.mub_union, "| tight frame", rep.frame.tight)
print("pointwise residuals:", {k: f"{v:.1e}" for k, v in rep.probe_residuals.items()})
