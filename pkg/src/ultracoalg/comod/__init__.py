from .catalog import (
    cofree,
    column,
    comodule_by_name,
    comodule_catalog,
    direct_sum,
    find_grouplike,
    flip_side,
    left_regular,
    regular,
    row,
    trivial,
)
from .cotensor import (
    CotensorProduct,
    FrobeniusResult,
    Induced,
    SimplicityCertificate,
    TensorIdentityResult,
    cotensor,
    cotensor_map,
    cotensor_unit,
    counit_projection,
    counit_projection_report,
    cyclic_subcomodule,
    dual_compatibility,
    frobenius,
    frobenius_backward,
    frobenius_forward,
    hom_space,
    induce,
    maximal_subcomodule,
    op_from_hom_vector,
    pushed_left,
    pushed_right,
    random_combination,
    restrict,
    restrict_to_tensor,
    simplicity_certificate,
    tensor_comodule,
    tensor_identity,
)
from .structures import (
    LEFT,
    RIGHT,
    Comodule,
    ComoduleMorphism,
    RationalityResult,
    action_op,
    check_comodule,
    comodule_morphism_defect,
    comodule_morphism_report,
    dual_action,
    induced_action,
    module_action_report,
    rationality,
    require_comodule_morphism,
)
