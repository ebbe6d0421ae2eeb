import numpy as np
import pytest

from sepkit import (
    DensityMatrix,
    HermitianOperator,
    frobenius_norm,
    inv_sqrt_on_support,
    kron,
    max_entangled,
    partial_trace,
    partial_transpose,
    support_projector,
    trace_norm,
)
from sepkit.errors import InvalidInputError, NotPSDError, SizeLimitError

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)


def ginibre_mat(dim, seed):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    raw = g @ g.conj().T
    return raw / raw.trace().real


def haar_unitary(dim, seed):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def test_kron_identities():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    assert np.array_equal(kron(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])), np.diag([0.0, 1.0, 0.0, 0.0]))


def test_kron_sigma_x_pair_is_index_reversal():
    got = kron(SIGMA_X, SIGMA_X)
    # brute-force entrywise oracle: (sigma_x (x) sigma_x)[ab, cd] = X[a,c] X[b,d]
    expected = np.zeros((4, 4), dtype=complex)
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    expected[2 * a + b, 2 * c + d] = SIGMA_X[a, c] * SIGMA_X[b, d]
    assert np.array_equal(got, expected)
    # permutation matrix swapping basis indices 0<->3 and 1<->2
    assert np.array_equal(got, np.fliplr(np.eye(4)))


def test_kron_size_limit():
    with pytest.raises(SizeLimitError):
        kron(np.eye(100), np.eye(100), max_dim=4096)


def test_trace_norm_basics():
    assert trace_norm(np.eye(2)) == pytest.approx(2.0, abs=1e-12)
    assert trace_norm(np.diag([1.0, -1.0])) == pytest.approx(2.0, abs=1e-12)
    rng = np.random.default_rng(0)
    u = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    v = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    u /= np.linalg.norm(u)
    v /= np.linalg.norm(v)
    assert trace_norm(np.outer(u, v.conj())) == pytest.approx(1.0, abs=1e-12)


def test_trace_norm_unitary_invariance():
    for seed in range(20):
        m = ginibre_mat(6, seed) - np.eye(6) / 7  # generic, not PSD
        u = haar_unitary(6, 100 + seed)
        v = haar_unitary(6, 200 + seed)
        assert abs(trace_norm(u @ m @ v) - trace_norm(m)) < 1e-10


def test_trace_norm_dominates_frobenius():
    rng = np.random.default_rng(3)
    for seed in range(10):
        m = rng.standard_normal((4, 7)) + 1j * rng.standard_normal((4, 7))
        assert trace_norm(m) >= frobenius_norm(m) - 1e-12
    # equality on rank-one samples
    for seed in range(10):
        u = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        v = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        m = np.outer(u, v.conj())
        assert abs(trace_norm(m) - frobenius_norm(m)) < 1e-10


def test_trace_norm_of_density_matrices_is_one():
    for seed in range(10):
        assert abs(trace_norm(ginibre_mat(8, seed)) - 1.0) < 1e-10


def test_trace_norm_rejects_nonfinite():
    with pytest.raises(InvalidInputError):
        trace_norm(np.array([[np.nan, 0], [0, 1]]))


def test_frobenius_norm_values():
    assert frobenius_norm(np.eye(2) / 2) == pytest.approx(1 / np.sqrt(2), abs=1e-12)
    v = np.array([1, 1j, -1]) / np.sqrt(3)
    assert frobenius_norm(np.outer(v, v.conj())) == pytest.approx(1.0, abs=1e-12)
    assert frobenius_norm(np.zeros((3, 2))) == 0.0


def test_partial_trace_product_factorization():
    sigma_a = ginibre_mat(2, 1)
    sigma_b = ginibre_mat(3, 2)
    op = HermitianOperator((2, 3), np.kron(sigma_a, sigma_b))
    reduced = partial_trace(op, keep=(2,))
    assert reduced.dims == (3,)
    assert np.abs(reduced.mat - sigma_b).max() < 1e-12
    kept_a = partial_trace(op, keep=(1,))
    assert np.abs(kept_a.mat - sigma_a).max() < 1e-12


def test_partial_trace_maximally_entangled_marginal():
    for d in (2, 3):
        marginal = partial_trace(max_entangled(d).as_hermitian(), keep=(2,))
        assert np.abs(marginal.mat - np.eye(d) / d).max() < 1e-12


def test_partial_trace_of_projector_witness_reduction():
    # entrywise summation oracle: Tr_A(I/2) - Tr_A(P_+) = I - I/2 = I/2
    w = np.eye(4) / 2 - max_entangled(2).mat
    reduced = partial_trace(HermitianOperator((2, 2), w), keep=(2,))
    assert np.abs(reduced.mat - np.eye(2) / 2).max() < 1e-12


def test_partial_trace_composes():
    rho = HermitianOperator((2, 2, 3), ginibre_mat(12, 9))
    step = partial_trace(partial_trace(rho, keep=(2, 3)), keep=(2,))
    direct = partial_trace(rho, keep=(3,))
    assert np.abs(step.mat - direct.mat).max() < 1e-12
    assert abs(direct.mat.trace() - rho.mat.trace()) < 1e-12


def test_partial_trace_argument_errors():
    op = HermitianOperator((2, 2), np.eye(4) / 4)
    with pytest.raises(InvalidInputError):
        partial_trace(op, keep=())
    with pytest.raises(InvalidInputError):
        partial_trace(op, keep=(3,))


def test_partial_transpose_separable_invariance():
    rho = DensityMatrix((2, 3), np.kron(ginibre_mat(2, 4), ginibre_mat(3, 5)))
    pt = partial_transpose(rho, (2,))
    assert np.linalg.eigvalsh(pt.mat).min() > -1e-12
    assert abs(trace_norm(pt.mat) - 1.0) < 1e-10


def test_partial_transpose_maximally_entangled_spectrum():
    pt = partial_transpose(max_entangled(2), (2,))
    eig = np.sort(np.linalg.eigvalsh(pt.mat))
    assert np.abs(eig - np.array([-0.5, 0.5, 0.5, 0.5])).max() < 1e-12
    assert abs(trace_norm(pt.mat) - 2.0) < 1e-12


def test_partial_transpose_involution_and_invariants():
    for seed in range(5):
        rho = DensityMatrix((2, 2), ginibre_mat(4, 20 + seed))
        pt = partial_transpose(rho, (2,))
        assert np.abs(pt.mat - pt.mat.conj().T).max() <= 1e-12
        assert abs(pt.mat.trace() - 1.0) <= 1e-12
        again = partial_transpose(DensityMatrix.unchecked(rho.dims, pt.mat), (2,))
        assert np.array_equal(again.mat, rho.mat)


def test_partial_transpose_argument_error():
    with pytest.raises(InvalidInputError):
        partial_transpose(max_entangled(2), (5,))


def test_support_projector_cases():
    eye = HermitianOperator((3,), np.eye(3))
    assert np.abs(support_projector(eye).mat - np.eye(3)).max() < 1e-12
    diag = HermitianOperator((2,), np.diag([1.0, 0.0]))
    assert np.abs(support_projector(diag).mat - np.diag([1.0, 0.0])).max() < 1e-12
    nearly = HermitianOperator((2,), np.diag([1.0, 1e-15]))
    assert np.abs(support_projector(nearly, rank_tol=1e-10).mat - np.diag([1.0, 0.0])).max() < 1e-12


def test_support_projector_idempotent_on_random_psd():
    for seed in range(5):
        op = HermitianOperator((4,), ginibre_mat(4, 40 + seed))
        p = support_projector(op).mat
        assert np.abs(p @ p - p).max() < 1e-10


def test_support_projector_rejects_negative():
    with pytest.raises(NotPSDError):
        support_projector(HermitianOperator((2,), np.diag([1.0, -0.5])))


def test_inv_sqrt_on_support():
    assert np.abs(inv_sqrt_on_support(HermitianOperator((2,), np.eye(2))).mat - np.eye(2)).max() < 1e-12
    got = inv_sqrt_on_support(HermitianOperator((2,), np.diag([4.0, 0.0])))
    assert np.abs(got.mat - np.diag([0.5, 0.0])).max() < 1e-12


def test_inv_sqrt_times_op_times_inv_sqrt_is_support():
    for seed in range(8):
        rng = np.random.default_rng(60 + seed)
        g = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
        op = HermitianOperator((5,), g @ g.conj().T)  # rank <= 3 PSD
        s = inv_sqrt_on_support(op).mat
        p = support_projector(op).mat
        assert np.abs(s @ op.mat @ s - p).max() < 1e-9


def test_eigen_backend_residual_contract():
    # backend qualification: residual <= 1e-10 * lambda_max on Hermitian 64x64
    rng = np.random.default_rng(11)
    g = rng.standard_normal((64, 64)) + 1j * rng.standard_normal((64, 64))
    h = (g + g.conj().T) / 2
    w, v = np.linalg.eigh(h)
    residual = np.abs(h @ v - v * w).max()
    assert residual <= 1e-10 * np.abs(w).max()


def test_density_matrix_validation():
    with pytest.raises(InvalidInputError):
        DensityMatrix((2, 2), np.eye(4))  # trace 4
    with pytest.raises(InvalidInputError):
        DensityMatrix((2,), np.array([[0.5, 0.5], [0.0, 0.5]]))  # not Hermitian
    with pytest.raises(NotPSDError):
        DensityMatrix((2,), np.diag([1.5, -0.5]))
    with pytest.raises(InvalidInputError):
        DensityMatrix((2, 2), np.eye(8) / 8)  # shape mismatch
    with pytest.raises(InvalidInputError):
        DensityMatrix((1, 4), np.eye(4) / 4)  # dims must be >= 2
    bad = np.eye(4) / 4
    bad[0, 0] = np.inf
    with pytest.raises(InvalidInputError):
        DensityMatrix((2, 2), bad)


def test_unchecked_constructor_skips_validation():
    # intentionally invalid payload (not PSD, wrong trace); used for intermediates
    op = DensityMatrix.unchecked((2,), np.diag([2.0, -1.0]))
    assert op.dims == (2,)
    assert op.mat[1, 1] == -1.0


def test_operators_are_immutable():
    rho = max_entangled(2)
    with pytest.raises(ValueError):
        rho.mat[0, 0] = 9.0


def test_hermitian_operator_validation():
    with pytest.raises(InvalidInputError):
        HermitianOperator((2,), np.array([[0, 1], [0, 0]], dtype=complex))
    op = HermitianOperator((2, 2), np.diag([1.0, -1.0, 2.0, -2.0]))  # no trace/PSD constraint
    assert op.n_parts == 2 and op.dim == 4
