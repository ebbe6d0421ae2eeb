"""Dense complex linear algebra for multipartite operators.

Conventions used by every module in this package:

* An n-partite operator over subsystem dimensions ``dims = (d_1, ..., d_n)``
  is stored as a dense D x D complex matrix, D = d_1 * ... * d_n.
* Row and column indices are row-major multi-indices over ``dims`` with
  subsystem 1 most significant.
* Subsystems are numbered 1..n in all public interfaces.
* The trace norm of a (possibly rectangular) matrix is the sum of its
  singular values; for Hermitian input it equals the sum of absolute
  eigenvalues.
"""

import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, NotPSDError, NumericalError, SizeLimitError

#: Tolerances for constructor validation; double-precision eigen/SVD accuracy
#: leaves orders of magnitude of headroom at the supported dimensions.
EPS_HERM = 1e-9
EPS_TRACE = 1e-9
EPS_PSD = 1e-9

#: Rank cutoff for spectral support decisions, relative to the top eigenvalue.
DEFAULT_RANK_TOL = 1e-10

#: Hard cap on operator dimension (rows or columns).
MAX_DIM = 4096


def as_complex_matrix(entries) -> np.ndarray:
    """Coerce input to a 2-D complex array, rejecting NaN/Inf entries."""
    mat = np.asarray(entries, dtype=complex)
    if mat.ndim != 2:
        raise InvalidInputError(f"expected a 2-D matrix, got array of shape {mat.shape}")
    if not np.isfinite(mat).all():
        raise InvalidInputError("matrix entries must be finite (no NaN/Inf)")
    return mat


def _matrix_fingerprint(mat: np.ndarray) -> str:
    digest = hashlib.sha1(np.ascontiguousarray(mat).tobytes()).hexdigest()[:12]
    rows, cols = mat.shape
    return f"matrix[{rows}x{cols}, fro={np.linalg.norm(mat):.6g}, sha1={digest}]"


def _frozen_copy(mat: np.ndarray) -> np.ndarray:
    out = np.array(mat, dtype=complex, order="C")
    out.setflags(write=False)
    return out


def _validate_dims(dims) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 2 for d in dims):
        raise InvalidInputError(f"subsystem dimensions must all be >= 2, got {dims}")
    return dims


def hermiticity_defect(mat: np.ndarray) -> float:
    """Max entrywise deviation from mat == mat^dagger."""
    return float(np.abs(mat - mat.conj().T).max())


@dataclass(frozen=True)
class HermitianOperator:
    """Hermitian operator on a multipartite space; no trace or positivity constraint."""

    dims: tuple[int, ...]
    mat: np.ndarray

    def __post_init__(self):
        dims = _validate_dims(self.dims)
        mat = as_complex_matrix(self.mat)
        total = int(np.prod(dims))
        if mat.shape != (total, total):
            raise InvalidInputError(
                f"matrix shape {mat.shape} does not match dims {dims} (expected {total}x{total})"
            )
        defect = hermiticity_defect(mat)
        if defect > EPS_HERM:
            raise InvalidInputError(f"matrix is not Hermitian: defect {defect:.3e} > {EPS_HERM}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "mat", _frozen_copy(mat))

    @classmethod
    def unchecked(cls, dims, mat) -> "HermitianOperator":
        """Skip validation; for freshly computed intermediates only."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "dims", tuple(int(d) for d in dims))
        object.__setattr__(obj, "mat", _frozen_copy(mat))
        return obj

    @property
    def n_parts(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


@dataclass(frozen=True)
class DensityMatrix:
    """Unit-trace PSD Hermitian operator with a subsystem-dimension signature."""

    dims: tuple[int, ...]
    mat: np.ndarray

    def __post_init__(self):
        dims = _validate_dims(self.dims)
        mat = as_complex_matrix(self.mat)
        total = int(np.prod(dims))
        if mat.shape != (total, total):
            raise InvalidInputError(
                f"matrix shape {mat.shape} does not match dims {dims} (expected {total}x{total})"
            )
        defect = hermiticity_defect(mat)
        if defect > EPS_HERM:
            raise InvalidInputError(f"state is not Hermitian: defect {defect:.3e} > {EPS_HERM}")
        trace = mat.trace()
        if abs(trace - 1.0) > EPS_TRACE:
            raise InvalidInputError(f"state trace {trace:.12g} differs from 1 by more than {EPS_TRACE}")
        lam_min = float(np.linalg.eigvalsh(mat)[0])
        if lam_min < -EPS_PSD:
            raise NotPSDError(f"state has negative eigenvalue {lam_min:.3e} < -{EPS_PSD}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "mat", _frozen_copy(mat))

    @classmethod
    def unchecked(cls, dims, mat) -> "DensityMatrix":
        """Skip validation; for freshly computed intermediates only."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "dims", tuple(int(d) for d in dims))
        object.__setattr__(obj, "mat", _frozen_copy(mat))
        return obj

    @property
    def n_parts(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def as_hermitian(self) -> HermitianOperator:
        return HermitianOperator.unchecked(self.dims, self.mat)


def kron(a, b, max_dim: int = MAX_DIM) -> np.ndarray:
    """Kronecker (tensor) product; dimensions multiply."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows > max_dim or cols > max_dim:
        raise SizeLimitError(f"kron output {rows}x{cols} exceeds max dimension {max_dim}")
    return np.kron(a, b)


def trace_norm(m) -> float:
    """Sum of singular values; rectangular inputs allowed."""
    m = as_complex_matrix(m)
    try:
        sv = np.linalg.svd(m, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge on {_matrix_fingerprint(m)}") from exc
    return float(sv.sum())


def frobenius_norm(m) -> float:
    """sqrt of the sum of squared entry moduli."""
    return float(np.linalg.norm(as_complex_matrix(m)))


def _normalize_subsystems(subsystems, n_parts: int, what: str = "subsystem set") -> tuple[int, ...]:
    subs = sorted({int(s) for s in subsystems})
    if not subs:
        raise InvalidInputError(f"{what} must be nonempty")
    if subs[0] < 1 or subs[-1] > n_parts:
        raise InvalidInputError(f"{what} {subs} out of range for {n_parts} subsystems (1-based)")
    return tuple(subs)


def _partial_trace_mat(mat: np.ndarray, dims: tuple[int, ...], keep: tuple[int, ...]) -> np.ndarray:
    n = len(dims)
    tensor = mat.reshape(dims + dims)
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    ket = list(letters[:n])
    bra = list(letters[n : 2 * n])
    out = []
    for s in range(1, n + 1):
        if s in keep:
            out.append((ket[s - 1], bra[s - 1]))
        else:
            bra[s - 1] = ket[s - 1]  # repeated index contracts that subsystem
    spec = "".join(ket) + "".join(bra) + "->" + "".join(k for k, _ in out) + "".join(b for _, b in out)
    kept_total = int(np.prod([dims[s - 1] for s in keep]))
    return np.einsum(spec, tensor).reshape(kept_total, kept_total)


def partial_trace(op, keep) -> HermitianOperator:
    """Trace out every subsystem not in ``keep`` (1-based indices)."""
    keep = _normalize_subsystems(keep, op.n_parts, "keep set")
    reduced = _partial_trace_mat(op.mat, op.dims, keep)
    return HermitianOperator(tuple(op.dims[s - 1] for s in keep), reduced)


def _partial_transpose_mat(mat: np.ndarray, dims: tuple[int, ...], subsystems: tuple[int, ...]) -> np.ndarray:
    n = len(dims)
    tensor = mat.reshape(dims + dims)
    axes = list(range(2 * n))
    for s in subsystems:
        axes[s - 1], axes[n + s - 1] = axes[n + s - 1], axes[s - 1]
    total = mat.shape[0]
    return tensor.transpose(axes).reshape(total, total)


def partial_transpose(rho: DensityMatrix, subsystems) -> HermitianOperator:
    """Transpose the ket/bra indices of the listed subsystems (1-based)."""
    subs = _normalize_subsystems(subsystems, rho.n_parts, "subsystem set")
    return HermitianOperator.unchecked(rho.dims, _partial_transpose_mat(rho.mat, rho.dims, subs))


def _psd_eigh(op: HermitianOperator, rank_tol: float):
    """Eigendecompose a PSD-within-tolerance operator; returns (w, v, cutoff)."""
    w, v = np.linalg.eigh(op.mat)
    if w[0] < -EPS_PSD:
        raise NotPSDError(f"operator has negative eigenvalue {w[0]:.3e} < -{EPS_PSD}")
    cutoff = rank_tol * max(float(w[-1]), 0.0)
    return w, v, cutoff


def support_projector(op: HermitianOperator, rank_tol: float = DEFAULT_RANK_TOL) -> HermitianOperator:
    """Orthogonal projector onto the span of eigenvectors above rank_tol * lambda_max."""
    w, v, cutoff = _psd_eigh(op, rank_tol)
    sel = v[:, w > cutoff]
    return HermitianOperator(op.dims, sel @ sel.conj().T)


def inv_sqrt_on_support(op: HermitianOperator, rank_tol: float = DEFAULT_RANK_TOL) -> HermitianOperator:
    """Spectral lambda -> lambda^(-1/2) above the rank cutoff, 0 below."""
    w, v, cutoff = _psd_eigh(op, rank_tol)
    inv = np.where(w > cutoff, 1.0 / np.sqrt(np.where(w > cutoff, w, 1.0)), 0.0)
    return HermitianOperator(op.dims, (v * inv) @ v.conj().T)


def sqrt_psd(op: HermitianOperator) -> HermitianOperator:
    """Principal square root; eigenvalues negative within tolerance are clamped to 0."""
    w, v, _ = _psd_eigh(op, 0.0)
    root = np.sqrt(np.clip(w, 0.0, None))
    return HermitianOperator(op.dims, (v * root) @ v.conj().T)
