import cmath
import itertools
import math

import numpy as np
import pytest

import oracles
from mubdesigns import (
    construction_gr,
    construction_mols,
    construction_wf,
    maximal_mubs,
    pauli_classes,
    reference_bases,
    simultaneous_diagonalize,
)
from mubdesigns.algebra import fourier_hadamard, mols
from mubdesigns.constructions import block_indices, clock, construction_pauli, shift

W3 = cmath.exp(2j * math.pi / 3)


def as_lists(family):
    return [b.vectors.tolist() for b in family.bases]


def test_wf_q3_first_basis():
    fam = construction_wf(3)
    assert len(fam) == 4
    s = 3**-0.5
    expected = [[s, s, s], [s, s * W3, s * W3**2], [s, s * W3**2, s * W3]]
    assert np.allclose(fam.bases[1].vectors, expected, atol=1e-15)


def test_wf_q3_second_basis_first_vector():
    v = construction_wf(3).bases[2].vectors[0]
    assert np.allclose(v, np.array([1, W3, W3]) / math.sqrt(3), atol=1e-15)


def test_wf_q3_matches_hand_entered_bases():
    fam = construction_wf(3)
    assert oracles.bases_match(as_lists(fam), [b.vectors.tolist() for b in reference_bases(3)], 1e-12)


@pytest.mark.parametrize("q", [3, 5, 9])
def test_wf_full_gram_check(q):
    fam = construction_wf(q)
    assert len(fam) == q + 1
    assert oracles.mub_residual(as_lists(fam)) < 1e-12


@pytest.mark.parametrize("q", [2, 4, 6, 15])
def test_wf_rejects(q):
    with pytest.raises(ValueError):
        construction_wf(q)


def test_gr_n1_by_hand():
    fam = construction_gr(1)
    s = 2**-0.5
    assert np.array_equal(fam.bases[0].vectors, np.eye(2))
    assert np.allclose(fam.bases[1].vectors, [[s, s], [s, -s]], atol=1e-16)
    assert np.allclose(fam.bases[2].vectors, [[s, 1j * s], [s, -1j * s]], atol=1e-16)


def test_gr_n2_matches_hand_entered_bases():
    fam = construction_gr(2)
    assert len(fam) == 5
    assert oracles.bases_match(as_lists(fam), [b.vectors.tolist() for b in reference_bases(4)], 1e-12)
    first = fam.bases[1].vectors * 2
    assert np.allclose(first[0], [1, 1, 1, 1]) and np.allclose(first[1], [1, 1, -1, -1])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gr_full_gram_check(n):
    fam = construction_gr(n)
    assert len(fam) == 2**n + 1
    assert oracles.mub_residual(as_lists(fam)) < 1e-12


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_gr_phases_are_fourth_roots(n):
    fam = construction_gr(n)
    scaled = np.vstack([b.vectors for b in fam.bases[1:]]) * math.sqrt(2**n)
    dist = np.min(np.abs(scaled[..., None] - np.array([1, 1j, -1, -1j])), axis=-1)
    assert dist.max() < 1e-12


def test_gr_against_direct_ring_formula():
    # evaluate i^tr((a + 2b) x) element by element with the ring arithmetic
    from mubdesigns.algebra import ring_ctx, ring_trace

    ctx = ring_ctx(3)
    T = ctx.teichmuller_elements()
    fam = construction_gr(3)
    for ai, a in enumerate(T):
        for bi, b in enumerate(T):
            direct = [1j ** ring_trace((a + 2 * b) * x) for x in T]
            assert np.allclose(fam.bases[1 + ai].vectors[bi] * 8**0.5, direct, atol=1e-14)


@pytest.mark.parametrize("d", [3, 5, 7, 9, 4, 8])
def test_amplitudes_have_exact_modulus(d):
    fam = maximal_mubs(d)
    amps = np.abs(np.vstack([b.vectors for b in fam.bases[1:]]))
    assert np.max(np.abs(amps - d**-0.5)) < 1e-14


@pytest.mark.parametrize("d", [2, 3, 4, 5, 7, 8, 9])
def test_family_size(d):
    fam = maximal_mubs(d)
    assert len(fam) == d + 1
    assert len(fam.union()) == d * (d + 1)


def test_maximal_mubs_six():
    with pytest.raises(ValueError, match="construction_mols"):
        maximal_mubs(6)


def test_determinism():
    a = np.vstack([b.vectors for b in construction_wf(9).bases])
    b = np.vstack([b.vectors for b in construction_wf(9).bases])
    assert a.tobytes() == b.tobytes()
    c = construction_pauli(5, seed=3).union().vectors
    assert c.tobytes() == construction_pauli(5, seed=3).union().vectors.tobytes()


# -- Weyl-Heisenberg route -------------------------------------------------------

def same_up_to_phase(u, v):
    return abs(abs(np.trace(u.conj().T @ v)) - len(u)) < 1e-9


def test_pauli_classes_p2():
    classes = pauli_classes(2)
    x = np.array([[0, 1], [1, 0]])
    z = np.diag([1, -1])
    assert len(classes) == 3
    for cls, gen in zip(classes, [z, x, x @ z]):
        assert len(cls) == 2
        assert np.allclose(cls[0], np.eye(2))
        assert same_up_to_phase(cls[1], gen)


@pytest.mark.parametrize("p", [3, 5])
def test_pauli_classes_commute_within_not_across(p):
    classes = pauli_classes(p)
    assert len(classes) == p + 1 and all(len(c) == p for c in classes)
    for cls in classes:
        for u, v in itertools.combinations(cls, 2):
            assert np.max(np.abs(u @ v - v @ u)) < 1e-12
    for ci, cj in itertools.combinations(classes, 2):
        for u, v in itertools.product(ci[1:], cj[1:]):
            assert np.max(np.abs(u @ v - v @ u)) > 1e-3
            assert not same_up_to_phase(u, v)


def test_pauli_classes_rejects_composite():
    with pytest.raises(ValueError):
        pauli_classes(4)


def test_diagonalize_z_class_gives_standard_basis():
    z = clock(3)
    fam = simultaneous_diagonalize([[np.eye(3), z, z @ z]])
    assert np.allclose(fam.bases[0].vectors, np.eye(3), atol=1e-12)


def test_diagonalize_x_class_gives_fourier_vectors():
    x = shift(3)
    fam = simultaneous_diagonalize([[np.eye(3), x, x @ x]])
    vecs = fam.bases[0].vectors
    w = cmath.exp(2j * math.pi / 3)
    for v in vecs:
        lam = np.vdot(v, x @ v)
        assert min(abs(lam - w**k) for k in range(3)) < 1e-12
        assert np.allclose(x @ v, lam * v, atol=1e-12)
        assert np.allclose(np.abs(v), 3**-0.5)
    # phases canonicalised: first amplitude real positive
    assert np.allclose(vecs[:, 0].imag, 0) and np.all(vecs[:, 0].real > 0)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_pauli_route_is_mub(p):
    fam = construction_pauli(p)
    assert len(fam) == p + 1
    assert oracles.mub_residual(as_lists(fam)) < 1e-10


def test_diagonalize_rejects_noncommuting():
    x, z = shift(3), clock(3)
    with pytest.raises(ValueError, match="commute"):
        simultaneous_diagonalize([[np.eye(3), x, z]])


def test_diagonalize_degenerate_class_errors():
    with pytest.raises(ValueError, match="non-degenerate"):
        simultaneous_diagonalize([[np.eye(3), np.eye(3)]])


# -- Latin squares ---------------------------------------------------------------

def test_block_indices_column_traversal():
    square = [[1, 2, 3], [2, 3, 1], [3, 1, 2]]
    # symbol 1 sits at (0,0), (2,1), (1,2): 0 + 0, 2 + 3, 1 + 6
    assert block_indices(square, 1) == [0, 5, 7]


def test_mols_d3():
    fam = construction_mols(3)
    assert len(fam) == 4 and fam.dim == 9
    assert oracles.mub_residual(as_lists(fam)) < 1e-10


def test_mols_d2():
    fam = construction_mols(2)
    assert len(fam) == 3 and fam.dim == 4
    assert oracles.mub_residual(as_lists(fam)) < 1e-10


@pytest.mark.parametrize("d", [2, 3, 4])
def test_mols_vectors_have_d_entries(d):
    fam = construction_mols(d)
    for b in fam.bases:
        nz = np.abs(b.vectors) > 1e-15
        assert np.all(nz.sum(axis=1) == d)
        assert np.allclose(np.abs(b.vectors[nz]), d**-0.5, atol=1e-15)


def test_mols_standard_basis_is_not_unbiased():
    fam = construction_mols(3)
    ov = np.abs(fam.bases[0].vectors) ** 2
    assert np.isclose(ov.max(), 1 / 3)  # 1/d, not the 1/d^2 unbiasedness needs


def test_mols_custom_hadamard():
    h = np.array([[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]])
    assert not np.allclose(h, fourier_hadamard(4))
    fam = construction_mols(4, hadamard=h)
    assert len(fam) == 5
    assert oracles.mub_residual(as_lists(fam)) < 1e-10


def test_mols_rejects_bad_hadamard():
    with pytest.raises(ValueError, match="Hadamard"):
        construction_mols(3, hadamard=np.ones((3, 3)))


def test_mols_rejects_nonorthogonal_squares():
    s = mols(3)[0]
    with pytest.raises(ValueError, match="not orthogonal"):
        construction_mols(squares=[s, s])


def test_mols_user_squares():
    squares = [[[1, 2, 3], [2, 3, 1], [3, 1, 2]]]
    fam = construction_mols(squares=squares)
    assert len(fam) == 3


def test_mols_non_prime_power_requires_squares():
    with pytest.raises(ValueError, match="supply your own"):
        construction_mols(6)
