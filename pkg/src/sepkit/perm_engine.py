"""Index-permutation maps on multipartite operators.

An n-partite operator has 2n tensor slots, numbered 1..2n: slot 2s-1 is the
ket index of subsystem s and slot 2s its bra index. A permutation tau of
{1..2n} defines a linear map: the index occupying input slot s moves to
output slot tau(s). The output matrix collects the odd output slots as a
row-major row multi-index and the even output slots as the column
multi-index, so unequal slot dimensions simply yield a rectangular matrix.

Under this convention tau = (34) on two parts reproduces the partial
transpose of the second subsystem, and tau = [1234 -> 2413] assembles the
operator R with R[(k,l),(i,j)] = rho[(i,k),(j,l)], whose trace norm equals
the textbook realignment's.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .tensor_core import DensityMatrix

__all__ = [
    "IndexPermutation",
    "PermutedOperator",
    "apply_permutation",
    "realign_pair",
    "conjugation_parity",
    "partial_transpose_permutation",
    "realignment_permutation",
    "all_permutations",
]


@dataclass(frozen=True)
class IndexPermutation:
    """Permutation of the 2n tensor slots of an n-partite operator (1-based)."""

    n_parts: int
    mapping: tuple[int, ...]  # mapping[s-1] = tau(s)

    def __post_init__(self):
        n = int(self.n_parts)
        mapping = tuple(int(m) for m in self.mapping)
        if n < 1:
            raise InvalidInputError("n_parts must be >= 1")
        if sorted(mapping) != list(range(1, 2 * n + 1)):
            raise InvalidInputError(f"mapping {mapping} is not a bijection on 1..{2 * n}")
        object.__setattr__(self, "n_parts", n)
        object.__setattr__(self, "mapping", mapping)

    @classmethod
    def identity(cls, n_parts: int) -> "IndexPermutation":
        return cls(n_parts, tuple(range(1, 2 * n_parts + 1)))

    @classmethod
    def from_one_line(cls, text: str) -> "IndexPermutation":
        """Parse one-line notation: "2413" (single-digit slots) or "2,4,1,3"."""
        text = text.strip()
        if "," in text:
            slots = [int(tok) for tok in text.split(",")]
        else:
            if not text.isdigit():
                raise InvalidInputError(f"cannot parse one-line permutation {text!r}")
            slots = [int(ch) for ch in text]
        if len(slots) % 2:
            raise InvalidInputError(f"one-line notation {text!r} has odd slot count")
        return cls(len(slots) // 2, tuple(slots))

    @classmethod
    def from_cycles(cls, text: str, n_parts: int) -> "IndexPermutation":
        """Parse cycle notation like "(34)" or "(1 2)(3,4)"; fixed slots omitted."""
        mapping = list(range(1, 2 * n_parts + 1))
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise InvalidInputError(f"cannot parse cycle notation {text!r}")
        for cycle_text in body[1:-1].split(")("):
            cycle_text = cycle_text.replace(",", " ")
            if " " in cycle_text.strip():
                cycle = [int(tok) for tok in cycle_text.split()]
            else:
                cycle = [int(ch) for ch in cycle_text.strip()]
            if len(cycle) < 2:
                raise InvalidInputError(f"cycle {cycle_text!r} too short")
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                if not 1 <= a <= 2 * n_parts:
                    raise InvalidInputError(f"cycle entry {a} out of range for {n_parts} parts")
                mapping[a - 1] = b
        return cls(n_parts, tuple(mapping))

    @classmethod
    def parse(cls, text: str, n_parts: int | None = None) -> "IndexPermutation":
        """Parse either cycle or one-line notation."""
        if text.strip().startswith("("):
            if n_parts is None:
                raise InvalidInputError("cycle notation requires the part count")
            return cls.from_cycles(text, n_parts)
        tau = cls.from_one_line(text)
        if n_parts is not None and tau.n_parts != n_parts:
            raise InvalidInputError(f"permutation {text!r} is for {tau.n_parts} parts, expected {n_parts}")
        return tau

    def one_line(self) -> str:
        """Canonical serialization: compact digits for <= 9 slots, else comma-joined."""
        if 2 * self.n_parts <= 9:
            return "".join(str(m) for m in self.mapping)
        return ",".join(str(m) for m in self.mapping)

    def inverse(self) -> "IndexPermutation":
        inv = [0] * (2 * self.n_parts)
        for s, t in enumerate(self.mapping, start=1):
            inv[t - 1] = s
        return IndexPermutation(self.n_parts, tuple(inv))

    def then(self, after: "IndexPermutation") -> "IndexPermutation":
        """Composite mapping: apply self first, then ``after``."""
        if after.n_parts != self.n_parts:
            raise InvalidInputError("cannot compose permutations with different part counts")
        return IndexPermutation(
            self.n_parts, tuple(after.mapping[t - 1] for t in self.mapping)
        )

    def is_identity(self) -> bool:
        return all(t == s for s, t in enumerate(self.mapping, start=1))

    def __str__(self) -> str:
        return self.one_line()


@dataclass(frozen=True)
class PermutedOperator:
    """Result of a slot permutation: row/column dimension signatures plus the matrix."""

    row_dims: tuple[int, ...]
    col_dims: tuple[int, ...]
    mat: np.ndarray

    def __post_init__(self):
        rows = int(np.prod(self.row_dims))
        cols = int(np.prod(self.col_dims))
        if self.mat.shape != (rows, cols):
            raise InvalidInputError(
                f"matrix shape {self.mat.shape} does not match row dims {self.row_dims} "
                f"x col dims {self.col_dims}"
            )


def _slot_dim(slot: int, dims: tuple[int, ...]) -> int:
    return dims[(slot + 1) // 2 - 1]


def _slot_to_axis(slot: int, n: int) -> int:
    # numpy tensor axes after reshape(dims + dims): kets 0..n-1, bras n..2n-1
    part = (slot + 1) // 2
    return part - 1 if slot % 2 else n + part - 1


def apply_permutation(rho: DensityMatrix, tau: IndexPermutation) -> PermutedOperator:
    """Relocate tensor slots according to tau and reassemble the matrix."""
    n = rho.n_parts
    if tau.n_parts != n:
        raise InvalidInputError(f"permutation has {tau.n_parts} parts, state has {n}")
    dims = rho.dims
    tensor = rho.mat.reshape(dims + dims)
    slot_order = tensor.transpose([_slot_to_axis(s, n) for s in range(1, 2 * n + 1)])
    inv = tau.inverse().mapping
    permuted = slot_order.transpose([inv[t - 1] - 1 for t in range(1, 2 * n + 1)])
    out_dims = [_slot_dim(inv[t - 1], dims) for t in range(1, 2 * n + 1)]
    row_axes = list(range(0, 2 * n, 2))
    col_axes = list(range(1, 2 * n, 2))
    row_dims = tuple(out_dims[a] for a in row_axes)
    col_dims = tuple(out_dims[a] for a in col_axes)
    mat = permuted.transpose(row_axes + col_axes).reshape(int(np.prod(row_dims)), int(np.prod(col_dims)))
    return PermutedOperator(row_dims, col_dims, np.ascontiguousarray(mat))


def partial_transpose_permutation(n_parts: int, subsystems) -> IndexPermutation:
    """The tau swapping ket and bra slots of each listed subsystem (1-based)."""
    subs = sorted({int(s) for s in subsystems})
    if not subs or subs[0] < 1 or subs[-1] > n_parts:
        raise InvalidInputError(f"subsystems {subs} out of range for {n_parts} parts")
    mapping = list(range(1, 2 * n_parts + 1))
    for s in subs:
        mapping[2 * s - 2], mapping[2 * s - 1] = mapping[2 * s - 1], mapping[2 * s - 2]
    return IndexPermutation(n_parts, tuple(mapping))


def realignment_permutation(n_parts: int, s: int, t: int) -> IndexPermutation:
    """The tau realigning subsystems s and t (1-based) and fixing all other slots.

    On the four slots of the pair it acts as the bipartite [1234 -> 2413]
    pattern: ket_s -> bra_s, bra_s -> bra_t, ket_t -> ket_s, bra_t -> ket_t.
    """
    s, t = int(s), int(t)
    if s == t:
        raise InvalidInputError("realignment needs two distinct subsystems")
    for idx in (s, t):
        if not 1 <= idx <= n_parts:
            raise InvalidInputError(f"subsystem {idx} out of range for {n_parts} parts")
    mapping = list(range(1, 2 * n_parts + 1))
    mapping[2 * s - 2] = 2 * s      # ket_s -> bra_s slot
    mapping[2 * s - 1] = 2 * t      # bra_s -> bra_t slot
    mapping[2 * t - 2] = 2 * s - 1  # ket_t -> ket_s slot
    mapping[2 * t - 1] = 2 * t - 1  # bra_t -> ket_t slot
    return IndexPermutation(n_parts, tuple(mapping))


def realign_pair(rho: DensityMatrix, s: int, t: int) -> PermutedOperator:
    """Apply the realignment map to subsystems s, t while fixing the rest."""
    return apply_permutation(rho, realignment_permutation(rho.n_parts, s, t))


def conjugation_parity(tau: IndexPermutation) -> tuple[bool, ...]:
    """Per slot, whether tau moves it between ket and bra parity.

    A flagged slot picks up complex conjugation when the map is written on
    pure product operators; this is diagnostic only and does not affect
    trace norms.
    """
    return tuple((s % 2) != (t % 2) for s, t in enumerate(tau.mapping, start=1))


def all_permutations(n_parts: int):
    """All (2n)! slot permutations in lexicographic one-line order."""
    for mapping in itertools.permutations(range(1, 2 * n_parts + 1)):
        yield IndexPermutation(n_parts, mapping)
