"""Mutually unbiased bases, complex projective designs and Welch-bound certificates."""

__version__ = "0.1.0"

from .algebra import (
    FieldCtx,
    FieldElement,
    LatinSquare,
    RingCtx,
    RingElement,
    field_ctx,
    field_trace,
    fourier_hadamard,
    mols,
    ring_ctx,
    ring_trace,
    two_adic_decompose,
)
from .constructions import (
    construction_gr,
    construction_mols,
    construction_pauli,
    construction_wf,
    maximal_mubs,
    pauli_classes,
    simultaneous_diagonalize,
)
from .data import builtin_sic, reference_bases, weyl_heisenberg_orbit
from .designs import (
    AngleSet,
    DesignReport,
    angle_set,
    certify,
    design_order,
    frame_bounds,
    intersection_count,
    mub_check,
    mub_count_bounds,
    per_point_welch_check,
    sic_check,
    subdegrees,
    welch_bound,
    welch_sum,
)
from .partition import (
    OrthogonalityGraph,
    PartitionError,
    PreconditionError,
    StructureError,
    orthogonality_graph,
    partition_into_mubs,
)
from .vectors import MubFamily, UnitVector, VectorSet, standard_basis
