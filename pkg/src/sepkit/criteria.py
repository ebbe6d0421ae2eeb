"""Separability criteria: trace-norm contraction tests and verdict aggregation.

Every criterion here evaluates ||L(rho)|| for a slot-permutation map L and
compares against 1 + detect_tol. A norm above the threshold certifies
entanglement; a norm below it certifies nothing (the criteria are necessary
conditions only).
"""

import math
from dataclasses import dataclass, field

from .errors import BudgetError, InvalidInputError
from .perm_engine import (
    IndexPermutation,
    all_permutations,
    apply_permutation,
    partial_transpose_permutation,
    realignment_permutation,
)
from .tensor_core import DensityMatrix, trace_norm

#: A criterion fires only when the norm exceeds 1 + DETECT_TOL, so SVD noise
#: on separable states can never produce a false positive.
DETECT_TOL = 1e-8

#: Default cap on sweep size: (2n)! for n <= 3.
PERM_BUDGET = 720

FAMILIES = ("ppt", "realign", "perms", "all")


@dataclass(frozen=True)
class CriterionResult:
    """One criterion's trace norm and its comparison against the threshold."""

    name: str
    norm: float
    threshold: float
    detected: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "detected", self.norm > self.threshold)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "norm": self.norm,
            "threshold": self.threshold,
            "detected": self.detected,
        }


@dataclass(frozen=True)
class AnalysisReport:
    """Sweep output: per-criterion results plus the aggregate verdict.

    ``e_value`` is the maximum trace norm over the evaluated permutation
    criteria; ``verdict`` is "entangled" iff any criterion fired and
    "undetected" otherwise.
    """

    label: str
    dims: tuple[int, ...]
    criteria: tuple[CriterionResult, ...]
    e_value: float = field(init=False)
    verdict: str = field(init=False)

    def __post_init__(self):
        if not self.criteria:
            raise InvalidInputError("a report needs at least one criterion result")
        object.__setattr__(self, "criteria", tuple(sorted(self.criteria, key=lambda c: c.name)))
        object.__setattr__(self, "e_value", max(c.norm for c in self.criteria))
        detected = any(c.detected for c in self.criteria)
        object.__setattr__(self, "verdict", "entangled" if detected else "undetected")

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "dims": list(self.dims),
            "criteria": [c.to_dict() for c in self.criteria],
            "e_value": self.e_value,
            "verdict": self.verdict,
        }


def _subset_name(subsystems) -> str:
    return "{" + ",".join(str(s) for s in sorted(subsystems)) + "}"


def evaluate_permutation(
    rho: DensityMatrix, tau: IndexPermutation, detect_tol: float = DETECT_TOL
) -> CriterionResult:
    norm = trace_norm(apply_permutation(rho, tau).mat)
    return CriterionResult(f"perm@{tau.one_line()}", norm, 1.0 + detect_tol)


def evaluate_ppt(rho: DensityMatrix, subsystems, detect_tol: float = DETECT_TOL) -> CriterionResult:
    """Peres test as a norm criterion: transpose the listed subsystems (1-based)."""
    tau = partial_transpose_permutation(rho.n_parts, subsystems)
    norm = trace_norm(apply_permutation(rho, tau).mat)
    return CriterionResult(f"PPT@{_subset_name(subsystems)}", norm, 1.0 + detect_tol)


def evaluate_realign_pair(
    rho: DensityMatrix, s: int, t: int, detect_tol: float = DETECT_TOL
) -> CriterionResult:
    tau = realignment_permutation(rho.n_parts, s, t)
    norm = trace_norm(apply_permutation(rho, tau).mat)
    return CriterionResult(f"realign@{_subset_name((s, t))}", norm, 1.0 + detect_tol)


def _check_perm_budget(n_parts: int, force: bool, budget: int = PERM_BUDGET) -> None:
    count = math.factorial(2 * n_parts)
    if count > budget and not force:
        raise BudgetError(
            f"{count} slot permutations for {n_parts} parts exceeds the budget of {budget}; "
            "pass force=True (CLI: --force) to run anyway"
        )


def _ppt_subsets(n_parts: int):
    """Nonempty proper subsystem subsets, one per complement pair.

    Transposing a subset and its complement give equal norms, so only the
    subsets avoiding subsystem 1 are enumerated.
    """
    rest = list(range(2, n_parts + 1))
    for bits in range(1, 2 ** len(rest)):
        yield tuple(s for k, s in enumerate(rest) if bits >> k & 1)


def sweep_multipartite(
    rho: DensityMatrix,
    family,
    detect_tol: float = DETECT_TOL,
    label: str = "state",
    force: bool = False,
) -> AnalysisReport:
    """Evaluate a criterion family and assemble the verdict report.

    ``family`` is "ppt" (every subsystem subset up to complement symmetry),
    "realign" (every unordered pair), "perms" (every slot permutation,
    budget permitting), "all" (the union), or an explicit iterable of
    IndexPermutation.
    """
    n = rho.n_parts
    results: list[CriterionResult] = []
    if isinstance(family, str):
        if family not in FAMILIES:
            raise InvalidInputError(f"unknown criterion family {family!r}; expected one of {FAMILIES}")
        if family in ("ppt", "all"):
            if n == 1:
                raise InvalidInputError("PPT criteria need at least two subsystems")
            for subset in _ppt_subsets(n):
                results.append(evaluate_ppt(rho, subset, detect_tol))
        if family in ("realign", "all"):
            if n == 1:
                raise InvalidInputError("realignment criteria need at least two subsystems")
            for s in range(1, n + 1):
                for t in range(s + 1, n + 1):
                    results.append(evaluate_realign_pair(rho, s, t, detect_tol))
        if family in ("perms", "all"):
            _check_perm_budget(n, force)
            for tau in all_permutations(n):
                results.append(evaluate_permutation(rho, tau, detect_tol))
    else:
        taus = list(family)
        if not taus:
            raise InvalidInputError("custom criterion family must not be empty")
        for tau in taus:
            results.append(evaluate_permutation(rho, tau, detect_tol))
    return AnalysisReport(label, rho.dims, tuple(results))


def e_value(rho: DensityMatrix, force: bool = False) -> float:
    """Maximum trace norm over all (2n)! slot permutations; >= 1 always."""
    _check_perm_budget(rho.n_parts, force)
    return max(trace_norm(apply_permutation(rho, tau).mat) for tau in all_permutations(rho.n_parts))
