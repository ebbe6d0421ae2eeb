"""Constructors for named states and random ensembles.

Basis convention: |0> = (1, 0), |1> = (0, 1); |+->  = (|0> +- |1>)/sqrt(2).
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .tensor_core import DensityMatrix, _validate_dims

__all__ = [
    "max_entangled",
    "max_correlated",
    "upb_shifts3",
    "ginibre_random",
    "random_pure_product",
    "pure_product",
    "convex_mixture",
    "StateSpec",
    "parse_builtin",
    "BUILTIN_KINDS",
]


def _projector(vec: np.ndarray) -> np.ndarray:
    return np.outer(vec, vec.conj())


def max_entangled(d: int) -> DensityMatrix:
    """Projector onto (1/sqrt(d)) sum_i |i,i> on a d x d system."""
    d = int(d)
    if d < 2:
        raise InvalidInputError(f"maximally entangled state needs d >= 2, got {d}")
    psi = np.eye(d, dtype=complex).reshape(d * d) / np.sqrt(d)
    return DensityMatrix((d, d), _projector(psi))


def max_correlated(dims) -> DensityMatrix:
    """Projector onto (1/sqrt(m)) sum_{i<m} |i,i,...,i>, m = min(dims).

    Coincides with ``max_entangled`` for equal bipartite dimensions; serves
    as the deterministic entangled probe for arbitrary signatures.
    """
    dims = _validate_dims(dims)
    m = min(dims)
    psi = np.zeros(int(np.prod(dims)), dtype=complex)
    for i in range(m):
        vec = np.ones(1, dtype=complex)
        for d in dims:
            e = np.zeros(d, dtype=complex)
            e[i] = 1.0
            vec = np.kron(vec, e)
        psi += vec
    psi /= np.sqrt(m)
    return DensityMatrix(dims, _projector(psi))


def upb_shifts3() -> DensityMatrix:
    """Three-qubit bound entangled state: normalized complement of the Shifts UPB.

    The four product vectors |0,1,+>, |1,+,0>, |+,0,1>, |-,-,-> are pairwise
    orthogonal; the complement projector has rank 4 and is divided by 4 to
    reach unit trace.
    """
    zero = np.array([1.0, 0.0], dtype=complex)
    one = np.array([0.0, 1.0], dtype=complex)
    plus = (zero + one) / np.sqrt(2.0)
    minus = (zero - one) / np.sqrt(2.0)
    vectors = [
        np.kron(np.kron(zero, one), plus),
        np.kron(np.kron(one, plus), zero),
        np.kron(np.kron(plus, zero), one),
        np.kron(np.kron(minus, minus), minus),
    ]
    complement = np.eye(8, dtype=complex) - sum(_projector(v) for v in vectors)
    return DensityMatrix((2, 2, 2), complement / 4.0)


def ginibre_random(dims, seed: int) -> DensityMatrix:
    """G G^dagger normalized to unit trace, G a square complex Gaussian matrix."""
    dims = _validate_dims(dims)
    total = int(np.prod(dims))
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((total, total)) + 1j * rng.standard_normal((total, total))
    raw = g @ g.conj().T
    return DensityMatrix.unchecked(dims, raw / raw.trace().real)


def _random_unit_vector(d: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_pure_product(dims, seed: int) -> DensityMatrix:
    """Projector onto a tensor product of independent Haar-random unit vectors."""
    dims = _validate_dims(dims)
    rng = np.random.default_rng(seed)
    vec = np.ones(1, dtype=complex)
    for d in dims:
        vec = np.kron(vec, _random_unit_vector(d, rng))
    return DensityMatrix.unchecked(dims, _projector(vec))


def pure_product(vectors) -> DensityMatrix:
    """Projector onto the tensor product of the given per-subsystem kets."""
    factors = [np.asarray(v, dtype=complex).reshape(-1) for v in vectors]
    dims = _validate_dims([f.size for f in factors])
    vec = np.ones(1, dtype=complex)
    for f in factors:
        norm = np.linalg.norm(f)
        if norm == 0:
            raise InvalidInputError("product factor must be a nonzero vector")
        vec = np.kron(vec, f / norm)
    return DensityMatrix(dims, _projector(vec))


def convex_mixture(states, weights) -> DensityMatrix:
    """Weighted sum of density matrices with a common dimension signature."""
    states = list(states)
    weights = np.asarray(list(weights), dtype=float)
    if not states or len(states) != len(weights):
        raise InvalidInputError("need equally many states and weights, at least one each")
    if (weights < -1e-12).any() or abs(weights.sum() - 1.0) > 1e-9:
        raise InvalidInputError(f"weights must be nonnegative and sum to 1, got {weights.tolist()}")
    dims = states[0].dims
    for st in states[1:]:
        if st.dims != dims:
            raise InvalidInputError(f"dimension signature mismatch: {st.dims} vs {dims}")
    mixed = sum(w * st.mat for st, w in zip(states, weights))
    return DensityMatrix(dims, mixed)


BUILTIN_KINDS = ("pure_product", "max_entangled", "upb_shifts3", "ginibre_random", "convex_mixture")


@dataclass(frozen=True)
class StateSpec:
    """Declarative recipe for a state, parseable from CLI arguments and JSON.

    Parameter use by kind:
      pure_product    dims + seed (random factors), or vectors = per-part kets
      max_entangled   dims = (d, d)
      upb_shifts3     no parameters
      ginibre_random  dims + seed
      convex_mixture  vectors = per-component tuples of per-part kets, weights
    """

    kind: str
    dims: tuple[int, ...] = ()
    vectors: tuple = ()
    weights: tuple[float, ...] = ()
    seed: int = 0

    def __post_init__(self):
        if self.kind not in BUILTIN_KINDS:
            raise InvalidInputError(f"unknown state kind {self.kind!r}; expected one of {BUILTIN_KINDS}")
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))

    def build(self) -> DensityMatrix:
        if self.kind == "max_entangled":
            if len(self.dims) != 2 or self.dims[0] != self.dims[1]:
                raise InvalidInputError(f"max_entangled needs dims (d, d), got {self.dims}")
            return max_entangled(self.dims[0])
        if self.kind == "upb_shifts3":
            return upb_shifts3()
        if self.kind == "ginibre_random":
            return ginibre_random(self.dims, self.seed)
        if self.kind == "pure_product":
            if self.vectors:
                return pure_product([_decode_vector(v) for v in self.vectors])
            return random_pure_product(self.dims, self.seed)
        # convex_mixture of explicit product states
        if not self.vectors or len(self.vectors) != len(self.weights):
            raise InvalidInputError("convex_mixture needs matching vectors and weights")
        components = [pure_product([_decode_vector(v) for v in comp]) for comp in self.vectors]
        return convex_mixture(components, self.weights)

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.dims:
            out["dims"] = list(self.dims)
        if self.vectors:
            if self.kind == "convex_mixture":
                out["vectors"] = [[_encode_vector(v) for v in comp] for comp in self.vectors]
            else:
                out["vectors"] = [_encode_vector(v) for v in self.vectors]
        if self.weights:
            out["weights"] = list(self.weights)
        if self.seed:
            out["seed"] = self.seed
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "StateSpec":
        if "kind" not in data:
            raise InvalidInputError("state spec needs a 'kind' field")
        return cls(
            kind=data["kind"],
            dims=tuple(data.get("dims", ())),
            vectors=tuple(tuple(v) if isinstance(v, list) else v for v in data.get("vectors", ())),
            weights=tuple(data.get("weights", ())),
            seed=int(data.get("seed", 0)),
        )


def _decode_vector(entries) -> np.ndarray:
    """Kets in JSON are sequences of [re, im] pairs (plain reals also accepted)."""
    out = []
    for entry in entries:
        if isinstance(entry, (list, tuple)):
            re, im = entry
            out.append(complex(re, im))
        else:
            out.append(complex(entry))
    return np.asarray(out, dtype=complex)


def _encode_vector(vec) -> list:
    return [[float(np.real(x)), float(np.imag(x))] for x in np.asarray(vec, dtype=complex)]


def parse_builtin(text: str, seed: int = 0) -> StateSpec:
    """Parse CLI builtin syntax NAME[:params], e.g. "upb3", "maxent:3", "product:2,2"."""
    name, _, params = text.partition(":")
    name = name.strip().lower()
    if name == "upb3":
        return StateSpec("upb_shifts3")
    if name == "maxent":
        try:
            d = int(params)
        except ValueError:
            raise InvalidInputError(f"maxent needs a dimension, e.g. maxent:2; got {text!r}") from None
        return StateSpec("max_entangled", dims=(d, d))
    if name in ("product", "ginibre"):
        try:
            dims = tuple(int(tok) for tok in params.split(","))
        except ValueError:
            raise InvalidInputError(f"{name} needs dims, e.g. {name}:2,2; got {text!r}") from None
        kind = "pure_product" if name == "product" else "ginibre_random"
        return StateSpec(kind, dims=dims, seed=seed)
    raise InvalidInputError(f"unknown builtin {text!r}; expected upb3, maxent:d, product:dims or ginibre:dims")
