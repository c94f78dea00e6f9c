"""cuspsym: symmetric structures on cusp cycles and equivariant anticanonical
pairs, decided by exact integer combinatorics."""

from .cycles import (
    CuspValidation,
    CycleWord,
    InvalidCuspError,
    QuotientGraph,
    Reflection,
    RunDecomposition,
    SymmetricStructure,
    canonicalize,
    dual,
    find_reflections,
    induced_dual_reflection,
    multiplicity,
    neg_self_intersection,
    quotient_resolution_graph,
    run_decompose,
    validate_cusp,
)
from .lattice import (
    FinAbGroup,
    SmithForm,
    class_group_of_quotient,
    cokernel,
    fan_from_cycle,
    fans_equivalent,
    pi1_complement,
    smith_normal_form,
)
from .pairs import (
    BudgetExceededError,
    CornerPair,
    Decision,
    InteriorDouble,
    InteriorPair,
    OrbitMismatchError,
    PairCycle,
    ScanFailure,
    ScanResult,
    SEED,
    ToricModel,
    ToricWitness,
    apply_equivariant_step,
    brute_force_reachability,
    canonicalize_pair,
    charge,
    corner_blowup,
    decide_equivariant_pair,
    dominates_with_parity,
    enumerate_equivariant_toric,
    interior_blowup,
    replay_witness,
    scan_length,
)
from .sl2 import (
    InvolutionDatum,
    Mat2Z,
    boundary_lattice_vectors,
    build_involution_datum,
    check_identity_mod2,
    is_hyperbolic,
    matrix_of_cycle,
    symmetric_word,
)

__version__ = "0.1.0"
