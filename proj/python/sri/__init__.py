"""Exact Shapley attribution and synergy/redundancy/independence decomposition.

The heavy lifting lives in the compiled extension ``sri._sri``; this package
re-exports its public surface.
"""

from ._sri import (
    DEMO_MODEL,
    MAX_FEATURES,
    BackgroundSet,
    Dataset,
    DimensionError,
    DomainError,
    ModelExpr,
    ParseError,
    SriError,
    SriResult,
    __version__,
    coalition_value,
    decompose_all,
    evaluate,
    explain_dataset,
    generate_demo_dataset,
    interaction_values,
    load_csv,
    orthogonalize_interaction,
    parse_model,
    run_demo,
    sample_background,
    shap_values,
)

__all__ = [
    "DEMO_MODEL",
    "MAX_FEATURES",
    "BackgroundSet",
    "Dataset",
    "DimensionError",
    "DomainError",
    "ModelExpr",
    "ParseError",
    "SriError",
    "SriResult",
    "__version__",
    "coalition_value",
    "decompose_all",
    "evaluate",
    "explain_dataset",
    "generate_demo_dataset",
    "interaction_values",
    "load_csv",
    "orthogonalize_interaction",
    "parse_model",
    "run_demo",
    "sample_background",
    "shap_values",
]
