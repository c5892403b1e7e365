"""
SIC-POVMs and tight frames
==========================

Weyl-Heisenberg orbits of stored fiducials, and frame bounds as a 1-design test.
"""

import numpy as np

from mubdesigns import VectorSet, builtin_sic, frame_bounds, maximal_mubs, sic_check, weyl_heisenberg_orbit

for d in (2, 3):
    X = builtin_sic(d)
    rep = sic_check(X)
    ov = np.abs(X.gram()) ** 2
    print(f"d={d}: {len(X)} vectors, off-diagonal overlaps in [{ov[ov < 0.99].min():.6f}, {ov[ov < 0.99].max():.6f}]",
          f"target {1 / (d + 1):.6f}, SIC={rep.is_sic}, t={rep.design.order}")

# a generic fiducial gives a tight frame but not a SIC
rng = np.random.default_rng(1)
z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
orbit = weyl_heisenberg_orbit(z / np.linalg.norm(z))
A, B = frame_bounds(orbit)
print(f"random fiducial: SIC = {sic_check(orbit).is_sic} | frame bounds A={A:.10f} B={B:.10f}")

# uniform tight frames have A = B = |F|/d
F = maximal_mubs(4).union()
A, B = frame_bounds(F)
print(f"MUB union d=4: A={A:.12f} B={B:.12f} |F|/d={len(F) / F.dim}")

# repeating a vector breaks tightness
A, B = frame_bounds(VectorSet(np.array([[1, 0], [1, 0], [0, 1]])))
print(f"{{e1, e1, e2}}: A={A:g} B={B:g}")
