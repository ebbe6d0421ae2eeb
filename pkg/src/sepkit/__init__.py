"""sepkit: entanglement detection for multipartite mixed states.

Evaluates trace-norm contraction separability criteria (partial transpose,
realignment, arbitrary index permutations) against dense density matrices,
classifies the permutation criteria into empirical equivalence classes, and
compiles entanglement witnesses into trace-preserving positive maps.
"""

from .criteria import (
    DETECT_TOL,
    AnalysisReport,
    CriterionResult,
    e_value,
    evaluate_permutation,
    evaluate_ppt,
    evaluate_realign_pair,
    sweep_multipartite,
)
from .errors import (
    BudgetError,
    ConstructionError,
    InvalidInputError,
    NotPSDError,
    NumericalError,
    SepkitError,
    SizeLimitError,
)
from .perm_classifier import EquivalenceClasses, Fingerprint, PermutationClass, classify, fingerprint
from .perm_engine import (
    IndexPermutation,
    PermutedOperator,
    all_permutations,
    apply_permutation,
    conjugation_parity,
    partial_transpose_permutation,
    realign_pair,
    realignment_permutation,
)
from .state_zoo import (
    StateSpec,
    convex_mixture,
    ginibre_random,
    max_correlated,
    max_entangled,
    parse_builtin,
    pure_product,
    random_pure_product,
    upb_shifts3,
)
from .tensor_core import (
    DensityMatrix,
    HermitianOperator,
    frobenius_norm,
    inv_sqrt_on_support,
    kron,
    partial_trace,
    partial_transpose,
    support_projector,
    trace_norm,
)
from .witness_compiler import (
    CompiledMap,
    Witness,
    apply_choi,
    compile_witness,
    detect,
    dual_map,
    positivity_spot_check,
    product_expectation_spot_check,
    witness_expectation,
)

__version__ = "0.1.0"
