"""Families of mutually unbiased bases.

Four routes are provided:

* :func:`construction_wf` -- quadratic phases over GF(q), q odd;
* :func:`construction_gr` -- Z_4 phases over the Teichmüller set of GR(4,n);
* :func:`pauli_classes` + :func:`simultaneous_diagonalize` -- eigenbases of the
  commuting classes of the Weyl-Heisenberg group in prime dimension;
* :func:`construction_mols` -- block vectors from mutually orthogonal Latin
  squares and a complex Hadamard matrix, in square dimension.

:func:`maximal_mubs` picks the right one for a prime power.
"""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from .algebra import (
    LatinSquare,
    field_ctx,
    fourier_hadamard,
    is_hadamard,
    is_prime,
    mols,
    prime_power,
    ring_ctx,
    roots_of_unity,
)
from .vectors import MubFamily, VectorSet, standard_basis


def construction_wf(q: int) -> MubFamily:
    """q + 1 MUBs in C^q for an odd prime power q.

    Basis ``a`` holds the vectors ``q^(-1/2) (w_p^tr(a x^2 + b x))_x`` for
    b in GF(q); components and b follow the field enumeration order.
    """
    pp = prime_power(q)
    if pp is None or pp[0] == 2:
        raise ValueError(f"q={q} is not an odd prime power")
    p, n = pp
    ctx = field_ctx(p, n)
    idx = np.arange(q)
    tr = ctx.trace_table
    squares = ctx.mul_index(idx, idx)
    linear = tr[ctx.mul_index(idx[:, None], idx[None, :])]  # [b, x] -> tr(b x)
    scale = 1 / np.sqrt(q)
    bases = [standard_basis(q)]
    for a in range(q):
        quad = tr[ctx.mul_index(a, squares)]
        bases.append(VectorSet(scale * roots_of_unity(quad[None, :] + linear, p)))
    return MubFamily(tuple(bases), {"construction": "wf", "q": q, "p": p, "n": n})


def construction_gr(n: int) -> MubFamily:
    """2^n + 1 MUBs in C^(2^n) built over the Galois ring GR(4,n).

    Vectors are ``2^(-n/2) (i^tr((a + 2b) x))_x`` with a, b, x running over the
    Teichmüller set in the order (0, 1, xi, xi^2, ...).
    """
    ctx = ring_ctx(n)
    q = 2**n
    # Teichmüller index i >= 1 stands for xi^(i-1); products stay in the set.
    idx = np.arange(q)
    prod = np.where(
        (idx[:, None] == 0) | (idx[None, :] == 0),
        0,
        1 + (idx[:, None] - 1 + idx[None, :] - 1) % (q - 1),
    )
    tr = ctx.teichmuller_trace[prod]  # [a, x] -> tr(a x)
    scale = 2 ** (-n / 2)
    bases = [standard_basis(q)]
    for a in range(q):
        phases = tr[a][None, :] + 2 * tr  # rows b
        bases.append(VectorSet(scale * roots_of_unity(phases, 4)))
    return MubFamily(tuple(bases), {"construction": "gr", "n": n})


# -- Weyl-Heisenberg classes -------------------------------------------------

def shift(d: int) -> np.ndarray:
    """X with X|j> = |j+1 mod d>."""
    return np.roll(np.eye(d, dtype=complex), 1, axis=0)


def clock(d: int) -> np.ndarray:
    """Z with Z|j> = w^j |j>."""
    return np.diag(roots_of_unity(np.arange(d), d))


def _same_up_to_phase(u: np.ndarray, v: np.ndarray, tol: float = 1e-9) -> bool:
    d = u.shape[0]
    return abs(abs(np.trace(u.conj().T @ v)) - d) <= tol * d


def pauli_classes(p: int) -> list[list[np.ndarray]]:
    """The p + 1 commuting classes {U^k : 0 <= k < p} for U = Z and U = X Z^a.

    The first member of every class is the identity. Classes are returned with
    the Z class first, then X Z^a for a = 0..p-1.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    x, z = shift(p), clock(p)
    gens = [z] + [x @ np.linalg.matrix_power(z, a) for a in range(p)]
    classes = [[np.linalg.matrix_power(g, k) for k in range(p)] for g in gens]
    for cls in classes:
        for u, v in itertools.combinations(cls, 2):
            if np.max(np.abs(u @ v - v @ u)) > 1e-12:
                raise ArithmeticError("class members do not commute")  # pragma: no cover
    for ci, cj in itertools.combinations(classes, 2):
        for u in ci[1:]:
            if any(_same_up_to_phase(u, v) for v in cj[1:]):
                raise ArithmeticError("classes share a non-identity element")  # pragma: no cover
    return classes


def _canonical_phase(vecs: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Rotate each row so its first non-negligible amplitude is real positive."""
    out = vecs.copy()
    for row in out:
        k = int(np.argmax(np.abs(row) > tol))
        row *= np.conj(row[k]) / abs(row[k])
    return out


def _eigenbasis(members: Sequence[np.ndarray], rng: np.random.Generator, attempts: int, tol: float):
    d = members[0].shape[0]
    for u, v in itertools.combinations(members, 2):
        if np.max(np.abs(u @ v - v @ u)) > tol:
            raise ValueError("class members fail to commute")
    for _ in range(attempts):
        c_re = rng.standard_normal(len(members))
        c_im = rng.standard_normal(len(members))
        h = sum(
            a * (u + u.conj().T) / 2 + b * (u - u.conj().T) / 2j
            for a, b, u in zip(c_re, c_im, members)
        )
        evals, evecs = np.linalg.eigh(h)
        if np.min(np.diff(evals)) < 1e-6 * max(1.0, np.max(np.abs(evals))):
            continue
        vecs = evecs.T  # rows are eigenvectors
        ok = True
        for u in members:
            m = vecs.conj() @ u @ vecs.T
            if np.max(np.abs(m - np.diag(np.diag(m)))) > tol:
                ok = False
                break
        if not ok:
            continue
        # order by the eigenvalue phase of the first non-identity member
        ref = members[1] if len(members) > 1 else members[0]
        angles = np.angle(np.einsum("ij,jk,ik->i", vecs.conj(), ref, vecs))
        turns = np.mod(np.round(angles / (2 * np.pi) * 1e6), 1e6)
        order = np.lexsort((np.arange(d), turns))
        return _canonical_phase(vecs[order])
    raise ValueError(f"no non-degenerate combination found in {attempts} attempts")


def simultaneous_diagonalize(
    classes: Sequence[Sequence[np.ndarray]],
    seed: int = 0,
    attempts: int = 5,
    tol: float = 1e-9,
) -> MubFamily:
    """Common eigenbasis of each commuting class.

    Each basis diagonalises a seeded random combination of the Hermitian and
    anti-Hermitian parts of the class members. It is then checked against every
    member, ordered by the eigenvalue phase of the class's second element, and
    phase-canonicalised.
    """
    rng = np.random.default_rng(seed)
    bases = tuple(VectorSet(_eigenbasis(list(cls), rng, attempts, tol)) for cls in classes)
    return MubFamily(bases, {"construction": "pauli", "seed": seed})


def construction_pauli(p: int, seed: int = 0) -> MubFamily:
    fam = simultaneous_diagonalize(pauli_classes(p), seed=seed)
    return MubFamily(fam.bases, {"construction": "pauli", "p": p, "seed": seed})


# -- Latin squares -------------------------------------------------------------

def row_square(d: int) -> list[list[int]]:
    return [[i + 1] * d for i in range(d)]


def column_square(d: int) -> list[list[int]]:
    return [list(range(1, d + 1)) for _ in range(d)]


def block_indices(square, symbol: int) -> list[int]:
    """0-based positions ``i + j*d`` of ``symbol``, traversing the grid column by column."""
    d = len(square)
    return [i + j * d for j in range(d) for i in range(d) if square[i][j] == symbol]


def _block_basis(square, h: np.ndarray) -> np.ndarray:
    d = len(square)
    vecs = np.zeros((d * d, d * d), dtype=complex)
    row = 0
    for alpha in range(1, d + 1):
        s = block_indices(square, alpha)
        if len(s) != d:
            raise ValueError(f"symbol {alpha} occurs {len(s)} times, expected {d}")
        for j in range(d):
            vecs[row, s] = h[:, j] / np.sqrt(d)
            row += 1
    return vecs


def construction_mols(
    d: int | None = None,
    hadamard: np.ndarray | None = None,
    squares: Sequence | None = None,
) -> MubFamily:
    """w + 2 MUBs in C^(d^2) from w mutually orthogonal Latin squares of order d.

    The bases come from the w squares, the row square and the column square.
    Each symbol of each square picks d positions; every basis vector spreads
    one column of the Hadamard matrix over those positions.

    The standard basis is not part of the family: its overlap with any block
    vector is 1/d, not 1/d^2.
    """
    if squares is None:
        if d is None:
            raise ValueError("give either an order d or a list of Latin squares")
        squares = mols(d)
    squares = [s if isinstance(s, LatinSquare) else LatinSquare(tuple(map(tuple, s))) for s in squares]
    if not squares:
        raise ValueError("at least one Latin square is required")
    order = squares[0].order
    if d is not None and d != order:
        raise ValueError(f"squares have order {order}, expected {d}")
    d = order
    for i, j in itertools.combinations(range(len(squares)), 2):
        if not squares[i].is_orthogonal_to(squares[j]):
            raise ValueError(f"Latin squares {i} and {j} are not orthogonal")
    h = fourier_hadamard(d) if hadamard is None else np.asarray(hadamard, dtype=complex)
    if h.shape != (d, d) or not is_hadamard(h):
        raise ValueError(f"matrix is not a complex Hadamard matrix of order {d}")
    grids = [s.grid for s in squares] + [row_square(d), column_square(d)]
    bases = tuple(VectorSet(_block_basis(g, h)) for g in grids)
    return MubFamily(
        bases,
        {"construction": "mols", "d": d, "w": len(squares), "label_offset": 1},
    )


def maximal_mubs(d: int) -> MubFamily:
    """d + 1 MUBs in C^d for a prime power d."""
    pp = prime_power(d)
    if pp is None:
        hint = "construction_mols only covers square dimensions, and never with d + 1 bases"
        root = int(round(d**0.5))
        if root * root == d and prime_power(root):
            hint = f"construction_mols({root}) gives a partial family of {root + 1} bases"
        raise ValueError(f"dimension {d} is not a prime power, no maximal MUB construction is known; {hint}")
    p, n = pp
    return construction_gr(n) if p == 2 else construction_wf(d)
