"""floodlab: Flood-It game engine, exact solvers, kernelization and
hardness-reduction toolkit."""

from .core import (
    ColoredInstance,
    DisconnectedGraphError,
    FloodItError,
    IllegalMoveError,
    InputError,
    Move,
    QuotientState,
    SetMove,
    Solution,
    apply_move,
    apply_set_move,
    component,
    is_flooded,
    validate_sequence,
)
from .kernel import TwinPartition, check_unplayed_twin_lemma, kernelize, \
    rule_ft, rule_tt, twin_partition
from .reductions import (
    MCSCInstance,
    ReductionLayout,
    cover_to_flooding,
    find_nonmonotone_witness,
    flooding_to_cover,
    mcsc_to_floodit,
    monotonicity_delta,
    tight_path,
)
from .solver import (
    DecisionResult,
    SearchBudget,
    SolveResult,
    approx_free,
    decide_free_at_most,
    free_to_fixed,
    greedy_fixed,
    lower_bound,
    module_heuristic,
    project_subset_fixed,
    solve_fixed_exact,
    solve_free_exact,
)

__version__ = "0.1.0"
