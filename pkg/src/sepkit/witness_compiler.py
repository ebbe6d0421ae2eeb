"""Compiles an entanglement witness into a trace-preserving positive map.

Given a Hermitian W on C^d (x) C^d with nonnegative expectation on product
states, the compiler builds a trace-preserving positive map taking M_d to
M_{2d} (system factor times a one-qubit flag) whose partial application
breaks positivity exactly on the states W detects. The construction:

1. rescale W so its reduction has top eigenvalue at most 1;
2. pad the reduction's kernel: W' = W + I (x) P_perp;
3. normalize to identity reduction: W'' = (I (x) S) W' (I (x) S) with
   S the inverse square root of the now full-rank reduction;
4. read W'' as the Choi matrix of a unital positive map G, take its
   trace-preserving dual;
5. build the measurement branch V = sqrt(W'_B) P_B with complement V'
   satisfying V^dag V + V'^dag V' = I, writing the branch outcome on the
   flag qubit;
6. compose: the map applies the V/V' measurement, then the dual of G on
   the system factor, leaving the flag untouched.

Choi matrices follow the input-first convention C = sum_ij |i><j| (x)
L(|i><j|), so applying the map is L(X) = Tr_in[(X^T (x) I) C].
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConstructionError, InvalidInputError, NumericalError
from .state_zoo import ginibre_random, max_entangled, random_pure_product
from .tensor_core import (
    DensityMatrix,
    HermitianOperator,
    inv_sqrt_on_support,
    partial_trace,
    sqrt_psd,
    support_projector,
    trace_norm,
)

#: Residual bounds certified by CompiledMap.
TP_RESIDUAL_TOL = 1e-8
REDUCTION_TOL = 1e-8


@dataclass(frozen=True)
class Witness:
    """Hermitian operator on d (x) d expected to be nonnegative on products.

    Product nonnegativity is spot-checked, never proven; violations are
    reported as warnings so that arbitrary Hermitian inputs stay usable.
    """

    op: HermitianOperator

    def __post_init__(self):
        if self.op.n_parts != 2 or self.op.dims[0] != self.op.dims[1]:
            raise InvalidInputError(f"witness must live on d (x) d, got dims {self.op.dims}")

    @property
    def d(self) -> int:
        return self.op.dims[0]


@dataclass(frozen=True)
class CompiledMap:
    """Choi representation of the compiled map, with audit intermediates.

    ``choi`` carries dims (d_in, d_out). ``intermediates`` retains the
    construction chain (w_prime, w_dprime, p_b, v, v_prime, gamma_choi,
    gamma_dual) as plain arrays for inspection; they play no role in
    ``detect``/``apply``.
    """

    choi: HermitianOperator
    d_in: int
    d_out: int
    trace_preserving_residual: float
    witness_scale: float
    reduction_residual: float
    completeness_residual: float
    intermediates: dict

    def apply(self, x: np.ndarray) -> np.ndarray:
        return apply_choi(self.choi, x, self.d_in, self.d_out)


def witness_expectation(w: Witness, rho: DensityMatrix) -> float:
    """Tr(W rho); negative values certify entanglement of rho."""
    if rho.dims != w.op.dims:
        raise InvalidInputError(f"state dims {rho.dims} do not match witness dims {w.op.dims}")
    value = complex(np.trace(w.op.mat @ rho.mat))
    if abs(value.imag) > 1e-12:
        raise NumericalError(f"witness expectation has imaginary part {value.imag:.3e}")
    return value.real


def _choi_mat(choi) -> np.ndarray:
    return choi.mat if isinstance(choi, HermitianOperator) else np.asarray(choi, dtype=complex)


def apply_choi(choi, x: np.ndarray, d_in: int, d_out: int) -> np.ndarray:
    """Evaluate the map encoded by a Choi matrix: L(X) = Tr_in[(X^T (x) I) C]."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (d_in, d_in):
        raise InvalidInputError(f"map input must be {d_in}x{d_in}, got {x.shape}")
    c = _choi_mat(choi).reshape(d_in, d_out, d_in, d_out)
    return np.einsum("ij,imjn->mn", x, c)


def dual_map(choi, d_in: int, d_out: int) -> HermitianOperator:
    """Choi matrix of the adjoint map: Tr[L(X) Y] = Tr[X L_dual(Y)] for all X, Y."""
    c = _choi_mat(choi).reshape(d_in, d_out, d_in, d_out)
    dual = c.transpose(3, 2, 1, 0).reshape(d_in * d_out, d_in * d_out)
    return HermitianOperator.unchecked((d_out, d_in), dual)


def product_expectation_spot_check(w: Witness, samples: int = 64, seed: int = 0) -> float:
    """Minimum Tr(W sigma_A (x) sigma_B) over sampled pure products."""
    low = np.inf
    for k in range(samples):
        probe = random_pure_product(w.op.dims, seed + k)
        low = min(low, float(np.trace(w.op.mat @ probe.mat).real))
    return low


def compile_witness(w: Witness, rank_tol: float = 1e-10) -> CompiledMap:
    """Run the construction chain; see the module docstring for the steps."""
    d = w.d
    spot = product_expectation_spot_check(w)
    if spot < -TP_RESIDUAL_TOL:
        warnings.warn(
            f"witness expectation {spot:.3e} < 0 on a sampled product state; "
            "it is not a valid entanglement witness and the compiled map may not be positive",
            stacklevel=2,
        )

    w_b = partial_trace(w.op, keep=(2,))
    lam_max = float(np.linalg.eigvalsh(w_b.mat)[-1])
    scale = 1.0 / lam_max if lam_max > 1.0 else 1.0
    w_mat = w.op.mat * scale
    w_b = HermitianOperator.unchecked((d,), w_b.mat * scale)

    p_b = support_projector(w_b, rank_tol)
    p_perp = np.eye(d) - p_b.mat
    w_prime = HermitianOperator.unchecked((d, d), w_mat + np.kron(np.eye(d), p_perp))

    w_prime_b = partial_trace(w_prime, keep=(2,))
    s = inv_sqrt_on_support(w_prime_b, rank_tol)
    i_s = np.kron(np.eye(d), s.mat)
    w_dprime = HermitianOperator.unchecked((d, d), i_s @ w_prime.mat @ i_s)

    reduction = partial_trace(w_dprime, keep=(2,))
    reduction_residual = float(np.abs(reduction.mat - np.eye(d)).max())
    if reduction_residual > REDUCTION_TOL:
        raise NumericalError(
            f"normalized witness reduction differs from identity by {reduction_residual:.3e}"
        )

    gamma_choi = w_dprime  # Choi matrix of the unital positive map, M_d -> M_d
    gamma_dual = dual_map(gamma_choi, d, d)

    v = sqrt_psd(w_prime_b).mat @ p_b.mat
    gap = np.eye(d) - v.conj().T @ v
    gap_min = float(np.linalg.eigvalsh((gap + gap.conj().T) / 2)[0])
    if gap_min < -TP_RESIDUAL_TOL:
        raise ConstructionError(
            f"I - V^dag V has eigenvalue {gap_min:.3e} after rescaling; witness is invalid"
        )
    v_prime = sqrt_psd(HermitianOperator.unchecked((d,), (gap + gap.conj().T) / 2)).mat
    completeness_residual = float(
        np.abs(v.conj().T @ v + v_prime.conj().T @ v_prime - np.eye(d)).max()
    )

    # Flag basis: |0> marks the V branch, |1> the V' branch; output = system (x) flag.
    flag0 = np.zeros((2, 2))
    flag0[0, 0] = 1.0
    flag1 = np.zeros((2, 2))
    flag1[1, 1] = 1.0
    d_out = 2 * d
    choi = np.zeros((d * d_out, d * d_out), dtype=complex)
    for i in range(d):
        for j in range(d):
            unit = np.zeros((d, d), dtype=complex)
            unit[i, j] = 1.0
            image = np.kron(apply_choi(gamma_dual, v @ unit @ v.conj().T, d, d), flag0)
            image += np.kron(apply_choi(gamma_dual, v_prime @ unit @ v_prime.conj().T, d, d), flag1)
            choi += np.kron(unit, image)

    tr_out = np.einsum("imjm->ij", choi.reshape(d, d_out, d, d_out))
    tp_residual = float(np.abs(tr_out - np.eye(d)).max())

    return CompiledMap(
        choi=HermitianOperator((d, d_out), choi),
        d_in=d,
        d_out=d_out,
        trace_preserving_residual=tp_residual,
        witness_scale=scale,
        reduction_residual=reduction_residual,
        completeness_residual=completeness_residual,
        intermediates={
            "w_prime": w_prime.mat,
            "w_dprime": w_dprime.mat,
            "p_b": p_b.mat,
            "v": v,
            "v_prime": v_prime,
            "gamma_choi": gamma_choi.mat,
            "gamma_dual": gamma_dual.mat,
        },
    )


def detect(cmap: CompiledMap, rho: DensityMatrix) -> tuple[float, float]:
    """Apply id (x) map to a d (x) d state; return the flag-0 maximally
    entangled expectation and the output trace norm.

    A negative expectation forces a norm above 1: the output has unit trace,
    so any negative spectral weight pushes the absolute-eigenvalue sum past 1.
    """
    d = cmap.d_in
    if rho.dims != (d, d):
        raise InvalidInputError(f"state dims {rho.dims} do not match map input dimension {d}")
    c = cmap.choi.mat.reshape(d, cmap.d_out, d, cmap.d_out)
    r = rho.mat.reshape(d, d, d, d)
    out = np.einsum("aibj,imjn->ambn", r, c).reshape(d * cmap.d_out, d * cmap.d_out)
    flag0 = np.zeros((2, 2))
    flag0[0, 0] = 1.0
    observable = np.kron(max_entangled(d).mat, flag0)
    expectation = float(np.trace(out @ observable).real)
    return expectation, trace_norm(out)


def positivity_spot_check(cmap: CompiledMap, samples: int = 16, seed: int = 0) -> float:
    """Minimum output eigenvalue of the map over sampled input states."""
    low = np.inf
    for k in range(samples):
        probe = ginibre_random((cmap.d_in,), seed + k)
        out = cmap.apply(probe.mat)
        low = min(low, float(np.linalg.eigvalsh((out + out.conj().T) / 2)[0]))
    return low
