from .systems import (
    DEFAULT_WINDOW,
    CTSystem,
    NFSystem,
    SystemReport,
    check_ct,
    check_nf,
    constant_ct,
    ct_by_name,
    ct_catalog,
    ct_equivalence,
    ct_roundtrip,
    dualize_ct,
    dualize_nf,
    identity_map,
    levelwise_isomorphism,
    mahler_ct,
    matrix_ct,
    pairing_report,
    tensor_ct,
)
