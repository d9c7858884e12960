"""Integer matrix groups and the sphere-product self-maps they induce.

The package splits into exact integer machinery (matrices, permutations,
group membership, generator words) and floating-point machinery (algebra
elements, mapping degrees, torus windings). Everything exact stays exact:
determinants, decompositions and rewrites are computed over Python ints
and re-verified by multiplication before they are returned.
"""

from .intmat import (
    IntMatrix,
    MatrixFormatError,
    ResidueMatrix,
    elementary_matrix,
    format_matrix,
    hyperbolic_check,
    parse_matrices,
    parse_matrix,
    tau_matrix,
)
from .permutation import Permutation
from .subgroups import (
    CosetCertificate,
    K_CLASSES,
    K_EVEN,
    K_HOPF,
    K_ODD,
    MembershipCheck,
    NotInGroupError,
    coset_certificate,
    count_hR_even,
    hR_member,
    in_W2,
    in_congruence,
    is_signed_permutation,
    k_to_class,
    mod2_class,
    pre_dot,
    random_sln,
)
from .words import (
    E,
    GeneratorSymbol,
    GeneratorWord,
    J,
    JR,
    NEG,
    P,
    TAU,
    WordLengthError,
    congruence_generators,
    conjugate_rewrite,
    decompose_gamma2,
    decompose_gamma_n,
    decompose_sln,
    is_congruence_word,
    jrange_expand,
    parse_word,
    random_congruence_word,
    rewrite_table_audit,
    search_congruence_word,
    symbol_matrix,
    word_to_matrix,
    word_to_str,
)
from .obstruction import (
    ObstructionReport,
    ObstructionVerdict,
    classify,
    cross_consistency,
    whitehead_coeffs,
)
from .finitegrp import (
    FiniteGroupTable,
    GroupSizeLimitError,
    IndexCheckReport,
    conjugacy_classes,
    coset_representatives,
    elementary_generators_mod,
    enumerate_group,
    find_normality_violation,
    index_check,
    is_normal,
    normal_subgroups,
    power_subgroup,
    representative_matrix,
    sl_order,
)
from .spheres import (
    AlgebraElement,
    CollisionWitness,
    PhaseAmbiguityError,
    antipodal_map,
    complex_unit,
    compose_maps,
    degree_estimate,
    degree_estimate_details,
    induced_matrix_on_torus,
    octonion_unit,
    p_a_eval,
    p_a_torus_map,
    p_ij_eval,
    p_word_torus_map,
    psi_eval,
    psi_map,
    quaternion,
    quaternion_collision_witness,
    reflection_shear_torus_map,
    slot_conjugation_torus_map,
    tangent_frame,
    uniform_sphere_samples,
)
from .ledger import LedgerEntry, LedgerResult, all_entries, run_ledger

__version__ = "0.1.0"
