"""critsat: degrees of freedom of random 2-SAT at the critical density.

Sample critical random formulas, fix a chosen number of variables, run the
round-based unit propagation that fixing induces, and measure how the
probability of remaining satisfiable responds as the number of fixed
variables crosses n^(1/3).
"""

from .errors import (
    ClauseWidthError,
    CritsatError,
    DimacsSyntaxError,
    DuplicateVariable,
    InconsistentFixedSet,
    InvalidSpec,
    LengthMismatch,
    TooLarge,
    VariableOrderViolation,
    VariableOutOfRange,
)
from .formula import (
    EMPTY_FIXED_SET,
    Assignment,
    Clause,
    CnfFormula,
    FixedSet,
    apply_fixed,
    canonicalize_clause,
    evaluate,
    fixed_set,
    make_clause,
    parse_dimacs,
    write_dimacs,
)
from .harness import (
    DistributionReport,
    SweepConfig,
    SweepRow,
    SweepTable,
    TrajectoryConfig,
    TrajectoryStats,
    emit_plot,
    export_table,
    f_of,
    load_table,
    run_distribution_check,
    run_figure2_sweep,
    run_trajectory_study,
    run_window_study,
)
from .oracles import (
    BudgetRegime,
    CategoryProbs,
    GwConfig,
    GwSurvival,
    RoundBudget,
    clause_category_probs,
    enumerate_category_counts,
    gw_generation,
    gw_survival,
    gw_survival_exact,
    one_sat_bound,
    rounds_budget,
)
from .propagation import (
    CouplingResult,
    Partition,
    PropagationTrace,
    RoundRecord,
    TraceVerdict,
    induced_fixed_set,
    partition_clauses,
    propagate,
    propagation_round,
    relabel_coupling,
    substitute_fixed,
)
from .sampling import (
    RngStream,
    SampleSpec,
    canonical_fixed_set,
    derive_stream,
    sample_clause,
    sample_fixed_set,
    sample_formula,
)
from .solve import (
    BruteForceResult,
    Verdict,
    brute_force_models,
    brute_force_sat,
    solve_1sat,
    solve_2sat,
)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "BruteForceResult",
    "BudgetRegime",
    "CategoryProbs",
    "Clause",
    "ClauseWidthError",
    "CnfFormula",
    "CouplingResult",
    "CritsatError",
    "DimacsSyntaxError",
    "DistributionReport",
    "DuplicateVariable",
    "EMPTY_FIXED_SET",
    "FixedSet",
    "GwConfig",
    "GwSurvival",
    "InconsistentFixedSet",
    "InvalidSpec",
    "LengthMismatch",
    "Partition",
    "PropagationTrace",
    "RngStream",
    "RoundBudget",
    "RoundRecord",
    "SampleSpec",
    "SweepConfig",
    "SweepRow",
    "SweepTable",
    "TooLarge",
    "TraceVerdict",
    "TrajectoryConfig",
    "TrajectoryStats",
    "VariableOrderViolation",
    "VariableOutOfRange",
    "Verdict",
    "apply_fixed",
    "brute_force_models",
    "brute_force_sat",
    "canonical_fixed_set",
    "canonicalize_clause",
    "clause_category_probs",
    "derive_stream",
    "emit_plot",
    "enumerate_category_counts",
    "evaluate",
    "export_table",
    "f_of",
    "fixed_set",
    "gw_generation",
    "gw_survival",
    "gw_survival_exact",
    "induced_fixed_set",
    "load_table",
    "make_clause",
    "one_sat_bound",
    "parse_dimacs",
    "partition_clauses",
    "propagate",
    "propagation_round",
    "relabel_coupling",
    "rounds_budget",
    "run_distribution_check",
    "run_figure2_sweep",
    "run_trajectory_study",
    "run_window_study",
    "sample_clause",
    "sample_fixed_set",
    "sample_formula",
    "solve_1sat",
    "solve_2sat",
    "substitute_fixed",
    "write_dimacs",
]
