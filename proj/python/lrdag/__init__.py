"""Low-rank causal DAG learning: rank bounds, generators, simulation and fitting."""

from ._lrdag import (
    Dag,
    GraphError,
    acyclicity,
    assign_weights,
    dag_from_matrix,
    fit,
    gen_erdos_renyi,
    gen_rank_specified,
    gen_scale_free,
    levels,
    max_rank,
    min_head_tail_cover,
    numeric_rank,
    rank_bounds,
    shd,
    simulate_linear,
    tpr_fdr,
)

__all__ = [
    "Dag",
    "GraphError",
    "acyclicity",
    "assign_weights",
    "dag_from_matrix",
    "fit",
    "gen_erdos_renyi",
    "gen_rank_specified",
    "gen_scale_free",
    "levels",
    "max_rank",
    "min_head_tail_cover",
    "numeric_rank",
    "rank_bounds",
    "shd",
    "simulate_linear",
    "tpr_fdr",
]
