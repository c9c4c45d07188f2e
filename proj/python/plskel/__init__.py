"""Exact piecewise-linear skeletons and decision boundaries of ReLU networks."""

from ._plskel import (
    DecisionMap,
    Error,
    Hyperrectangle,
    InputError,
    InvalidGeometry,
    Network,
    OutOfDomain,
    Skeleton,
    StructuralError,
    UnsupportedDimension,
    apply_relu,
    corpus_network,
    count_activation_regions,
    count_linear_regions,
    extract_decision_map,
    extract_skeletons,
    initial_skeleton,
    merge_activations,
    render_svg,
)

__all__ = [
    "DecisionMap",
    "Error",
    "Hyperrectangle",
    "InputError",
    "InvalidGeometry",
    "Network",
    "OutOfDomain",
    "Skeleton",
    "StructuralError",
    "UnsupportedDimension",
    "apply_relu",
    "corpus_network",
    "count_activation_regions",
    "count_linear_regions",
    "extract_decision_map",
    "extract_skeletons",
    "initial_skeleton",
    "merge_activations",
    "render_svg",
]
