"""Recover the d + 1 bases hidden in a 2-design with angle set {0, 1/d}."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .designs import DESIGN_TOL, GRAM_TOL, ORTHO_TOL, design_order, mub_check
from .vectors import MubFamily, VectorSet


class PartitionError(ValueError):
    """Input does not meet the hypotheses of the partition theorem."""


class PreconditionError(PartitionError):
    pass


class StructureError(PartitionError):
    """Hypotheses hold numerically but the orthogonality structure is broken.

    ``witness`` holds the offending vector indices.
    """

    def __init__(self, message: str, witness: tuple[int, ...]):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class OrthogonalityGraph:
    """Vertices are vectors; i ~ j when |<x_i|x_j>|^2 <= tol."""

    size: int
    adjacency: np.ndarray
    tol: float

    @property
    def edges(self) -> list[tuple[int, int]]:
        i, j = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(i.tolist(), j.tolist()))

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def neighbours(self, i: int) -> list[int]:
        return np.flatnonzero(self.adjacency[i]).tolist()

    def components(self) -> list[list[int]]:
        seen = np.zeros(self.size, dtype=bool)
        out = []
        for s in range(self.size):
            if seen[s]:
                continue
            comp, stack = [], [s]
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.neighbours(v):
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            out.append(sorted(comp))
        return out


def orthogonality_graph(X: VectorSet, tol: float = ORTHO_TOL) -> OrthogonalityGraph:
    adj = X.overlaps() <= tol
    np.fill_diagonal(adj, False)
    adj.setflags(write=False)
    return OrthogonalityGraph(len(X), adj, tol)


def _check_angles(X: VectorSet, tol: float) -> None:
    d, n = X.dim, len(X)
    ov = X.overlaps()
    off = ~np.eye(n, dtype=bool)
    bad = off & (ov > tol) & (np.abs(ov - 1 / d) > tol)
    if bad.any():
        i, j = (int(v) for v in np.argwhere(bad)[0])
        raise PreconditionError(
            f"angle set is not {{0, 1/{d}}}: |<x_{i}|x_{j}>|^2 = {ov[i, j]:.12g}"
        )


def partition_into_mubs(
    X: VectorSet,
    tol: float = ORTHO_TOL,
    design_tol: float = DESIGN_TOL,
    gram_tol: float = GRAM_TOL,
) -> MubFamily:
    """Split a 2-design of d(d+1) unit vectors with angle set {0, 1/d} into d + 1 MUBs.

    Vectors are taken in input order. Each unassigned x is grouped with every
    vector orthogonal to it, and the group must have exactly d members. The
    group B_x is then checked to equal B_y for each member y. Bases come out in
    first-seen order with their vectors in input order.
    """
    d, n = X.dim, len(X)
    if n != d * (d + 1):
        raise PreconditionError(f"expected d(d+1) = {d * (d + 1)} vectors in C^{d}, got {n}")
    _check_angles(X, tol)
    prof = design_order(X, 2, design_tol)
    if prof.order < 2:
        k = next(r.k for r in prof.rows if abs(r.residual) > design_tol)
        raise PreconditionError(
            f"not a 2-design: Welch residual {prof.residual(k):.3e} at k={k} exceeds {design_tol:g}"
        )

    graph = orthogonality_graph(X, tol)
    assigned = np.full(n, -1)
    groups: list[list[int]] = []
    for x in range(n):
        if assigned[x] >= 0:
            continue
        members = sorted([x] + graph.neighbours(x))
        if len(members) != d:
            raise StructureError(f"vector {x} is orthogonal to {len(members) - 1} others, expected {d - 1}", (x,))
        for y in members:
            other = sorted([y] + graph.neighbours(y))
            if other != members:
                extra = sorted(set(other) ^ set(members))
                raise StructureError(f"B_{x} != B_{y}: they differ in {extra}", (x, y, *extra))
            if assigned[y] >= 0:
                raise StructureError(f"vector {y} already belongs to basis {assigned[y]}", (x, y))
        assigned[members] = len(groups)
        groups.append(members)

    bases = [X.take(g).relabel(None) for g in groups]
    check = mub_check(bases, gram_tol)
    if not check.ok:
        i, j = check.pair
        raise StructureError(
            f"recovered bases {i} and {j} are not mutually unbiased (residual {check.residual:.3e})",
            (groups[i][0], groups[j][0]),
        )
    return MubFamily(tuple(bases), {"construction": "partition", "groups": groups}, tol=gram_tol)
