"""Built-in vector sets: SIC fiducials and hand-written MUBs in dimensions 3 and 4."""

from __future__ import annotations

import math
from functools import cache

import numpy as np

from .algebra import root_of_unity
from .constructions import clock, shift
from .designs import sic_check
from .vectors import VectorSet, standard_basis

# Weyl-Heisenberg covariant fiducials. d=2: Bloch vector (1,1,1)/sqrt(3).
# d=3: the real fiducial of Zauner's d=3 family.
SIC_FIDUCIALS = {
    2: (
        math.sqrt((3 + math.sqrt(3)) / 6),
        complex(math.cos(math.pi / 4), math.sin(math.pi / 4)) * math.sqrt((3 - math.sqrt(3)) / 6),
    ),
    3: (0.0, 1 / math.sqrt(2), -1 / math.sqrt(2)),
}


def weyl_heisenberg_orbit(fiducial) -> VectorSet:
    """The d^2 vectors X^a Z^b |f>, a outer, b inner."""
    f = np.asarray(fiducial, dtype=complex)
    d = f.size
    x, z = shift(d), clock(d)
    vecs = [np.linalg.matrix_power(x, a) @ np.linalg.matrix_power(z, b) @ f for a in range(d) for b in range(d)]
    return VectorSet(np.array(vecs))


@cache
def builtin_sic(d: int) -> VectorSet:
    """Weyl-Heisenberg orbit of the stored fiducial, verified before it is returned."""
    if d not in SIC_FIDUCIALS:
        raise ValueError(f"no built-in SIC fiducial for d={d} (available: {sorted(SIC_FIDUCIALS)})")
    orbit = weyl_heisenberg_orbit(SIC_FIDUCIALS[d])
    report = sic_check(orbit)
    if not report.is_sic:
        raise ArithmeticError(f"stored d={d} fiducial fails the SIC check ({report.max_deviation:.3e})")
    return orbit


# Exponents of w_3 for the three non-standard bases in C^3.
_D3_PHASES = (
    ((0, 0, 0), (0, 1, 2), (0, 2, 1)),
    ((0, 1, 1), (0, 2, 0), (0, 0, 2)),
    ((0, 2, 2), (0, 1, 0), (0, 0, 1)),
)

# Powers of i for the four non-standard bases in C^4: "+" = 0, "i" = 1, "-" = 2, "-i" = 3.
_D4_PHASES = (
    ((0, 0, 0, 0), (0, 0, 2, 2), (0, 2, 2, 0), (0, 2, 0, 2)),
    ((0, 2, 3, 3), (0, 2, 1, 1), (0, 0, 1, 3), (0, 0, 3, 1)),
    ((0, 3, 3, 2), (0, 3, 1, 0), (0, 1, 1, 2), (0, 1, 3, 0)),
    ((0, 3, 2, 3), (0, 3, 0, 1), (0, 1, 0, 3), (0, 1, 2, 1)),
)


def reference_bases(d: int) -> list[VectorSet]:
    """Hand-entered maximal MUB sets for d = 3 and d = 4, standard basis first."""
    table = {3: (_D3_PHASES, 3), 4: (_D4_PHASES, 4)}
    if d not in table:
        raise ValueError(f"no reference bases for d={d}")
    phases, order = table[d]
    out = [standard_basis(d)]
    for basis in phases:
        out.append(VectorSet(np.array([[root_of_unity(m, order) for m in v] for v in basis]) / math.sqrt(d)))
    return out
