from .modules import (
    BaseChange,
    Module,
    base_change,
    check_module,
    free_module,
    module_morphism_report,
    restrict_scalars,
    tensor_relations,
)
from .structures import (
    AdmissibleStructure,
    CoadmissibleStructure,
    StructureReport,
    admissible_roundtrip,
    check_admissible,
    check_coadmissible,
    coadmissible_roundtrip,
    corrupted,
    dualize_admissible,
    dualize_coadmissible,
    enlarge_level,
    induction_preserves_admissibility,
    power_admissible,
    regular_admissible,
    window_stability,
    with_grouplike_line,
)
