"""Optimal surveillance-run planning over weighted transition systems.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from optrun._core import (
    BuchiAutomaton,
    CycleResult,
    Formula,
    Mission,
    ParseError,
    PlanResult,
    PlanStats,
    ProductAutomaton,
    RunLasso,
    TransitionSystem,
    TranslationLimitError,
    WeightedDigraph,
    __version__,
    atoms_of,
    brute_min_s_bottleneck,
    brute_optimal_cost,
    build_product,
    lasso_satisfies,
    load_mission,
    min_bottleneck_cycle,
    optimal_run,
    parse_ltl,
    run_cost,
    run_times,
    run_word,
    s_bottleneck_length,
    suffix_cost,
    to_nnf,
    translate,
)

__all__ = [
    "BuchiAutomaton",
    "CycleResult",
    "Formula",
    "Mission",
    "ParseError",
    "PlanResult",
    "PlanStats",
    "ProductAutomaton",
    "RunLasso",
    "TransitionSystem",
    "TranslationLimitError",
    "WeightedDigraph",
    "__version__",
    "atoms_of",
    "brute_min_s_bottleneck",
    "brute_optimal_cost",
    "build_product",
    "lasso_satisfies",
    "load_mission",
    "min_bottleneck_cycle",
    "optimal_run",
    "parse_ltl",
    "run_cost",
    "run_times",
    "run_word",
    "s_bottleneck_length",
    "suffix_cost",
    "to_nnf",
    "translate",
]
