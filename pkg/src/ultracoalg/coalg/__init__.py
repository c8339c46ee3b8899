from .catalog import (
    coalgebra_by_name,
    corrupt_antipode,
    corrupt_comult,
    direct_sum_coalgebra,
    dual_algebra,
    ground_coalgebra,
    group_algebra,
    grouplike_line,
    matrix_coalgebra,
    matrix_label,
    perturbed,
    summand_inclusion,
    summand_projection,
    tensor_coalgebra,
)
from .mahler import (
    binom,
    evaluation_functional,
    expand_function,
    mahler_coalgebra,
    mahler_coefficients,
    mahler_expand,
    mahler_hopf,
    mahler_reconstruct,
    mahler_space,
)
from .structures import (
    DEFAULT_TOL,
    Algebra,
    Coalgebra,
    HopfAlgebra,
    MembershipCertificate,
    algebra_morphism_report,
    check_algebra,
    check_coalgebra,
    check_hopf,
    coalgebra_morphism_report,
    convolve,
    convolve_endo,
    dual_coalgebra_membership,
    evaluate,
    is_closed_subcoalgebra,
    quotient_by_coideal,
    require_coalgebra_morphism,
    subcoalgebra_generated,
)
