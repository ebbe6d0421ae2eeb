import numpy as np
import pytest

from sepkit import (
    DensityMatrix,
    IndexPermutation,
    all_permutations,
    apply_permutation,
    conjugation_parity,
    frobenius_norm,
    ginibre_random,
    max_entangled,
    partial_transpose,
    partial_transpose_permutation,
    random_pure_product,
    realign_pair,
    realignment_permutation,
    trace_norm,
)
from sepkit.errors import InvalidInputError

REALIGN_2 = IndexPermutation(2, (2, 4, 1, 3))
PT_B = IndexPermutation(2, (1, 2, 4, 3))


def test_identity_permutation_is_noop():
    rho = ginibre_random((2, 3), 0)
    out = apply_permutation(rho, IndexPermutation.identity(2))
    assert np.array_equal(out.mat, rho.mat)
    assert out.row_dims == (2, 3) and out.col_dims == (2, 3)


def test_swap_34_equals_partial_transpose_entrywise():
    for seed in range(5):
        rho = ginibre_random((2, 2), seed)
        out = apply_permutation(rho, PT_B)
        assert np.array_equal(out.mat, partial_transpose(rho, (2,)).mat)


def test_realignment_matrix_layout():
    # R[(k,l),(i,j)] = rho[(i,k),(j,l)]
    rho = ginibre_random((2, 2), 7)
    r = apply_permutation(rho, REALIGN_2).mat
    t = rho.mat.reshape(2, 2, 2, 2)
    for k in range(2):
        for l in range(2):
            for i in range(2):
                for j in range(2):
                    assert r[2 * k + l, 2 * i + j] == t[i, k, j, l]


def test_realignment_norm_matches_textbook_reshuffle():
    for seed in range(10):
        rho = ginibre_random((3, 3), seed)
        ours = trace_norm(apply_permutation(rho, REALIGN_2).mat)
        textbook = rho.mat.reshape(3, 3, 3, 3).transpose(0, 2, 1, 3).reshape(9, 9)
        assert abs(ours - trace_norm(textbook)) < 1e-10


def test_realign_pair_definitional_on_two_parts():
    rho = ginibre_random((2, 2), 3)
    assert np.array_equal(realign_pair(rho, 1, 2).mat, apply_permutation(rho, REALIGN_2).mat)


def test_realign_pair_keeps_norm_on_products():
    for seed in range(10):
        rho = random_pure_product((2, 2, 2), seed)
        for s, t in [(1, 2), (1, 3), (2, 3)]:
            assert abs(trace_norm(realign_pair(rho, s, t).mat) - 1.0) < 1e-10


def test_realign_pair_rejects_equal_subsystems():
    with pytest.raises(InvalidInputError):
        realign_pair(ginibre_random((2, 2), 0), 1, 1)


def test_contraction_on_pure_products_all_permutations():
    taus = list(all_permutations(2))
    for seed in range(20):
        rho = random_pure_product((2, 3), seed)
        norms = [trace_norm(apply_permutation(rho, tau).mat) for tau in taus]
        assert np.abs(np.array(norms) - 1.0).max() < 1e-10


def test_apply_permutation_is_linear():
    rho1 = ginibre_random((2, 2), 1)
    rho2 = ginibre_random((2, 2), 2)
    # alpha + beta = 1 keeps unit trace; negative weight exercises true linearity
    alpha, beta = 2.0, -1.0
    combo = DensityMatrix.unchecked((2, 2), alpha * rho1.mat + beta * rho2.mat)
    for tau in [REALIGN_2, PT_B, IndexPermutation(2, (3, 1, 4, 2))]:
        lhs = apply_permutation(combo, tau).mat
        rhs = alpha * apply_permutation(rho1, tau).mat + beta * apply_permutation(rho2, tau).mat
        assert np.abs(lhs - rhs).max() < 1e-12


def test_composition_matches_sequential_application():
    rng = np.random.default_rng(5)
    taus = list(all_permutations(2))
    for _ in range(10):
        rho = ginibre_random((2, 2), int(rng.integers(1000)))
        tau1 = taus[rng.integers(len(taus))]
        tau2 = taus[rng.integers(len(taus))]
        mid = apply_permutation(rho, tau1)
        seq = apply_permutation(DensityMatrix.unchecked((2, 2), mid.mat), tau2).mat
        combined = apply_permutation(rho, tau1.then(tau2)).mat
        assert np.array_equal(seq, combined)


def test_frobenius_norm_invariant_under_any_permutation():
    rho = ginibre_random((2, 2), 11)
    for tau in all_permutations(2):
        assert abs(frobenius_norm(apply_permutation(rho, tau).mat) - frobenius_norm(rho.mat)) < 1e-12


def test_rectangular_output_for_unequal_dims():
    rho = ginibre_random((2, 3), 13)
    out = apply_permutation(rho, REALIGN_2)
    assert out.mat.shape == (int(np.prod(out.row_dims)), int(np.prod(out.col_dims)))
    assert sorted(out.row_dims + out.col_dims) == [2, 2, 3, 3]
    assert out.mat.shape != (6, 6)  # genuinely rectangular
    assert abs(frobenius_norm(out.mat) - frobenius_norm(rho.mat)) < 1e-12


def test_conjugation_parity_values():
    assert conjugation_parity(IndexPermutation.identity(2)) == (False, False, False, False)
    assert conjugation_parity(PT_B) == (False, False, True, True)
    # slots whose image changes ket/bra parity: tau(1)=2 and tau(4)=3 move, 2->4 and 3->1 stay
    assert conjugation_parity(REALIGN_2) == (True, False, False, True)


def test_partial_transpose_permutation_builder():
    tau = partial_transpose_permutation(3, (2,))
    assert tau.mapping == (1, 2, 4, 3, 5, 6)
    tau_all = partial_transpose_permutation(2, (1, 2))
    assert tau_all.mapping == (2, 1, 4, 3)
    with pytest.raises(InvalidInputError):
        partial_transpose_permutation(2, (3,))


def test_realignment_permutation_builder():
    assert realignment_permutation(2, 1, 2).mapping == (2, 4, 1, 3)
    tau = realignment_permutation(3, 2, 3)
    assert tau.mapping == (1, 2, 4, 6, 3, 5)


def test_one_line_notation_round_trip():
    tau = IndexPermutation(2, (2, 4, 1, 3))
    assert tau.one_line() == "2413"
    assert IndexPermutation.from_one_line("2413") == tau
    assert IndexPermutation.from_one_line("2,4,1,3") == tau
    big = IndexPermutation.identity(5)
    assert big.one_line() == "1,2,3,4,5,6,7,8,9,10"
    assert IndexPermutation.from_one_line(big.one_line()) == big


def test_cycle_notation_parsing():
    assert IndexPermutation.parse("(34)", n_parts=2) == PT_B
    assert IndexPermutation.parse("(12)(34)", n_parts=2).mapping == (2, 1, 4, 3)
    assert IndexPermutation.parse("(1 3)(2 4)", n_parts=2).mapping == (3, 4, 1, 2)
    assert IndexPermutation.parse("2413", n_parts=2) == REALIGN_2


def test_permutation_validation():
    with pytest.raises(InvalidInputError):
        IndexPermutation(2, (1, 2, 3, 3))
    with pytest.raises(InvalidInputError):
        IndexPermutation.from_one_line("241")
    with pytest.raises(InvalidInputError):
        apply_permutation(ginibre_random((2, 2, 2), 0), REALIGN_2)
    with pytest.raises(InvalidInputError):
        IndexPermutation.parse("(34)")  # cycle notation needs the part count


def test_inverse_and_identity_checks():
    tau = REALIGN_2
    assert tau.then(tau.inverse()).is_identity()
    assert tau.inverse().mapping == (3, 1, 4, 2)
    assert IndexPermutation.identity(3).is_identity()


def test_all_permutations_count_and_order():
    taus = [tau.one_line() for tau in all_permutations(2)]
    assert len(taus) == 24
    assert taus == sorted(taus)
    assert taus[0] == "1234"
