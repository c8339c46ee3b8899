from .backend import BACKEND
from .echelon import (
    Subspace,
    echelon,
    image,
    in_span,
    kernel,
    kernel_subspace,
    rank,
    restrict_op,
    same_span,
)
from .space import (
    CompactnessMargin,
    Op,
    TruncatedSpace,
    Vec,
    compactness_margin,
    compose,
    compose_all,
    direct_sum_op,
    direct_sum_space,
    dual_op,
    dual_space,
    flip,
    injection,
    join_labels,
    label_str,
    operator_norm,
    pair,
    permute_op,
    projection,
    scalar_space,
    split_label,
    tensor_margin,
    tensor_op,
    tensor_ops,
    tensor_space,
    tensor_spaces,
    vector_norm,
)

__all__ = [
    "BACKEND", "CompactnessMargin", "Op", "Subspace", "TruncatedSpace", "Vec",
    "compactness_margin", "compose", "compose_all", "direct_sum_op", "direct_sum_space",
    "dual_op", "dual_space", "echelon", "flip", "image", "in_span", "injection", "join_labels",
    "kernel", "kernel_subspace", "label_str", "operator_norm", "pair", "permute_op", "projection",
    "rank", "restrict_op", "same_span", "scalar_space", "split_label", "tensor_margin",
    "tensor_op", "tensor_ops", "tensor_space", "tensor_spaces", "vector_norm",
]
