"""Finite-model toolkit: cores, graph parameters, EP sentences, circuits,
and colored subgraph-isomorphism reductions."""

from ._hompres import (
    BoundError,
    Formula,
    Graph,
    ParseError,
    Structure,
    compile_fo,
    core,
    find_homomorphism,
    hom_equivalent,
    hpt_pipeline,
    hpt_reduction,
    is_core,
    is_hom_preserved,
    longest_path,
    min_cores,
    minor_contains,
    model_table,
    selftest,
    sub_formula_measures,
    sub_solve,
    tree_depth,
    tree_width,
)

__all__ = [
    "BoundError",
    "Formula",
    "Graph",
    "ParseError",
    "Structure",
    "compile_fo",
    "core",
    "find_homomorphism",
    "hom_equivalent",
    "hpt_pipeline",
    "hpt_reduction",
    "is_core",
    "is_hom_preserved",
    "longest_path",
    "min_cores",
    "minor_contains",
    "model_table",
    "selftest",
    "sub_formula_measures",
    "sub_solve",
    "tree_depth",
    "tree_width",
]
