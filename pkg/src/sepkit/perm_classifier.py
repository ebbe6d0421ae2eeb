"""Empirical equivalence classes of permutation criteria.

Two slot permutations are grouped together when they produce the same trace
norm on every probe state (within a tolerance). On bipartite systems this
reproduces the three known classes: trivial (norm-preserving), partial
transpose, and realignment. For more parts the class count is an
experimental output.
"""

from dataclasses import dataclass

import numpy as np

from .criteria import _check_perm_budget
from .errors import InvalidInputError
from .perm_engine import IndexPermutation, all_permutations, apply_permutation
from .state_zoo import ginibre_random, max_correlated, random_pure_product
from .tensor_core import DensityMatrix, _validate_dims, trace_norm

#: Componentwise fingerprint tolerance; class gaps are O(0.1), so spurious
#: merging would need every probe to collide by ten orders of magnitude.
MATCH_TOL = 1e-8


@dataclass(frozen=True)
class Fingerprint:
    """Trace norms of one permutation map across the probe states."""

    tau: IndexPermutation
    norms: tuple[float, ...]


@dataclass(frozen=True)
class PermutationClass:
    representative: IndexPermutation  # lexicographically smallest one-line member
    members: tuple[IndexPermutation, ...]


@dataclass(frozen=True)
class EquivalenceClasses:
    dims: tuple[int, ...]
    classes: tuple[PermutationClass, ...]
    probe_count: int
    match_tol: float
    seed: int

    def class_of(self, tau: IndexPermutation) -> PermutationClass:
        for cls in self.classes:
            if tau in cls.members:
                return cls
        raise InvalidInputError(f"permutation {tau} not covered by this classification")

    def to_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "probe_count": self.probe_count,
            "match_tol": self.match_tol,
            "seed": self.seed,
            "class_count": len(self.classes),
            "classes": [
                {
                    "representative": cls.representative.one_line(),
                    "size": len(cls.members),
                    "members": [m.one_line() for m in cls.members],
                }
                for cls in self.classes
            ],
        }


def fingerprint(tau: IndexPermutation, probes) -> Fingerprint:
    probes = list(probes)
    if not probes:
        raise InvalidInputError("fingerprint needs at least one probe state")
    dims = probes[0].dims
    for p in probes:
        if p.dims != dims:
            raise InvalidInputError(f"probe dims {p.dims} differ from {dims}")
    if tau.n_parts != len(dims):
        raise InvalidInputError(f"permutation is for {tau.n_parts} parts, probes have {len(dims)}")
    return Fingerprint(tau, tuple(trace_norm(apply_permutation(p, tau).mat) for p in probes))


def build_probes(dims, probe_count: int, seed: int) -> list[DensityMatrix]:
    """Deterministic probe ensemble: one maximally correlated state, three
    random pure products, and Ginibre-induced full-rank states for the rest.

    Probe i depends only on (dims, seed, i), so growing the count extends
    the list without changing earlier probes.
    """
    dims = _validate_dims(dims)
    probes = [max_correlated(dims)]
    for k in range(3):
        probes.append(random_pure_product(dims, seed * 7919 + k))
    for k in range(probe_count - len(probes)):
        probes.append(ginibre_random(dims, seed * 7919 + 100 + k))
    return probes[:probe_count]


def classify(
    dims,
    probe_count: int = 32,
    seed: int = 0,
    match_tol: float = MATCH_TOL,
    force: bool = False,
) -> EquivalenceClasses:
    """Partition all (2n)! permutations by fingerprint equality on the probes.

    Deterministic for a given seed. Greedy grouping against the first-seen
    (hence lexicographically smallest) member of each class keeps the
    partition well defined even though tolerance matching is not transitive.
    """
    dims = _validate_dims(dims)
    if probe_count < 8:
        raise InvalidInputError(f"probe_count must be >= 8, got {probe_count}")
    _check_perm_budget(len(dims), force)
    probes = build_probes(dims, probe_count, seed)
    reps: list[tuple[np.ndarray, IndexPermutation, list[IndexPermutation]]] = []
    for tau in all_permutations(len(dims)):
        norms = np.array(fingerprint(tau, probes).norms)
        for rep_norms, _, members in reps:
            if np.abs(rep_norms - norms).max() <= match_tol:
                members.append(tau)
                break
        else:
            reps.append((norms, tau, [tau]))
    classes = tuple(
        PermutationClass(rep, tuple(members)) for _, rep, members in reps
    )
    return EquivalenceClasses(dims, classes, probe_count, match_tol, seed)
