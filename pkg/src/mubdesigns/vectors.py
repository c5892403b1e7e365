"""Unit vectors, vector sets and MUB families."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

NORM_TOL = 1e-12


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class UnitVector:
    """A unit vector in C^d, compared modulo a global phase."""

    amps: np.ndarray

    def __post_init__(self):
        amps = _frozen(self.amps)
        if amps.ndim != 1 or amps.size < 1:
            raise ValueError("a unit vector needs a non-empty 1-d amplitude array")
        if abs(np.linalg.norm(amps) - 1) > NORM_TOL:
            raise ValueError(f"vector norm {np.linalg.norm(amps)!r} is not 1")
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self) -> int:
        return self.amps.size

    def overlap(self, other: UnitVector) -> float:
        """Squared modulus of the inner product."""
        return float(abs(np.vdot(self.amps, other.amps)) ** 2)

    def equivalent(self, other: UnitVector, tol: float = 1e-12) -> bool:
        return self.dim == other.dim and abs(1 - self.overlap(other)) <= tol


@dataclass(frozen=True, eq=False)
class VectorSet:
    """An ordered collection of unit vectors in C^d, stored as the rows of ``vectors``.

    ``labels`` optionally tags each vector with the basis it belongs to.
    """

    vectors: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        vecs = _frozen(self.vectors)
        if vecs.ndim != 2 or vecs.shape[0] < 1 or vecs.shape[1] < 1:
            raise ValueError(f"expected a non-empty (count, dim) array, got shape {vecs.shape}")
        norms = np.linalg.norm(vecs, axis=1)
        bad = np.flatnonzero(np.abs(norms - 1) > NORM_TOL)
        if bad.size:
            raise ValueError(f"vector {bad[0]} has norm {norms[bad[0]]!r}, expected 1")
        object.__setattr__(self, "vectors", vecs)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != vecs.shape[0]:
                raise ValueError(f"{len(labels)} labels for {vecs.shape[0]} vectors")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_vectors(cls, vectors: Sequence, labels=None, normalize: bool = False) -> VectorSet:
        """Build from any sequence of amplitude lists, rescaling to unit norm on request."""
        arr = np.array([getattr(v, "amps", v) for v in vectors], dtype=complex)
        if normalize:
            arr = arr / np.linalg.norm(arr, axis=1, keepdims=True)
        return cls(arr, labels)

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return self.vectors.shape[0]

    def __getitem__(self, i: int) -> UnitVector:
        return UnitVector(self.vectors[i])

    def __iter__(self) -> Iterator[UnitVector]:
        return (UnitVector(v) for v in self.vectors)

    def gram(self) -> np.ndarray:
        """Matrix of inner products <x_i|x_j>."""
        return self.vectors.conj() @ self.vectors.T

    def overlaps(self) -> np.ndarray:
        """Matrix of squared overlaps |<x_i|x_j>|^2."""
        g = self.gram()
        return g.real**2 + g.imag**2

    def take(self, indices) -> VectorSet:
        indices = list(indices)
        labels = None if self.labels is None else tuple(self.labels[i] for i in indices)
        return VectorSet(self.vectors[indices], labels)

    def relabel(self, label: str | None) -> VectorSet:
        return VectorSet(self.vectors, None if label is None else (label,) * len(self))

    def groups(self) -> dict[str, list[int]]:
        """Vector indices per label, in first-seen order."""
        if self.labels is None:
            raise ValueError("vector set carries no labels")
        out: dict[str, list[int]] = {}
        for i, lab in enumerate(self.labels):
            out.setdefault(lab, []).append(i)
        return out

    @staticmethod
    def concat(sets: Sequence[VectorSet]) -> VectorSet:
        if len({s.dim for s in sets}) != 1:
            raise ValueError("cannot concatenate vector sets of different dimensions")
        labels = None
        if all(s.labels is not None for s in sets):
            labels = tuple(lab for s in sets for lab in s.labels)
        return VectorSet(np.vstack([s.vectors for s in sets]), labels)


def standard_basis(d: int) -> VectorSet:
    return VectorSet(np.eye(d, dtype=complex))


@dataclass(frozen=True, eq=False)
class MubFamily:
    """A list of mutually unbiased orthonormal bases of C^d.

    Construction validates the defining conditions at ``tol``; the largest
    deviation found is kept in ``residual``.
    """

    bases: tuple[VectorSet, ...]
    provenance: dict = field(default_factory=dict)
    tol: float = 1e-10
    residual: float = field(init=False, default=0.0)

    def __post_init__(self):
        bases = tuple(self.bases)
        if not bases:
            raise ValueError("a MUB family needs at least one basis")
        d = bases[0].dim
        for b in bases:
            if b.dim != d or len(b) != d:
                raise ValueError(f"every basis must hold {d} vectors of dimension {d}")
        object.__setattr__(self, "bases", bases)
        worst, where = mub_residual(bases)
        if worst > self.tol:
            raise ValueError(f"not mutually unbiased: residual {worst:.3e} at {where}")
        object.__setattr__(self, "residual", worst)

    @property
    def dim(self) -> int:
        return self.bases[0].dim

    def __len__(self) -> int:
        return len(self.bases)

    def labels(self) -> list[str]:
        start = int(self.provenance.get("label_offset", 0))
        return [f"B{i + start}" for i in range(len(self.bases))]

    def union(self) -> VectorSet:
        """All vectors in basis order, labelled by basis."""
        return VectorSet.concat([b.relabel(lab) for b, lab in zip(self.bases, self.labels())])


def mub_residual(bases: Sequence[VectorSet]) -> tuple[float, tuple[int, int]]:
    """Worst deviation from orthonormality / unbiasedness and the basis pair where it occurs."""
    d = bases[0].dim
    worst, where = 0.0, (0, 0)
    eye = np.eye(d)
    for i, b in enumerate(bases):
        r = float(np.max(np.abs(b.gram() - eye)))
        if r > worst:
            worst, where = r, (i, i)
        for j in range(i + 1, len(bases)):
            ov = np.abs(b.vectors.conj() @ bases[j].vectors.T) ** 2
            r = float(np.max(np.abs(ov - 1 / d)))
            if r > worst:
                worst, where = r, (i, j)
    return worst, where
