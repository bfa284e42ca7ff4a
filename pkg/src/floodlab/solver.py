"""Exact and approximate Flood-It solvers for all four game modes.

Exact search is iterative deepening DFS over move depth with lower-bound
pruning and an exact-coloring transposition table.  Plain-move enumeration is
one representative vertex per monochromatic component times every initially
used color other than the component's; non-merging moves are searched too
unless the (optimality-voiding) prune_nonmerging flag is set.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .core import (
    ColoredInstance,
    DisconnectedGraphError,
    FloodItError,
    InputError,
    Move,
    QuotientState,
    SetMove,
    Solution,
    apply_set_move,
    component,
    effective_set,
    is_flooded,
    validate_sequence,
    _coloring_key,
)


@dataclass(frozen=True)
class SearchBudget:
    """Limits for a solver call; unlimited where None."""

    max_depth: int | None = None
    max_expanded_states: int | None = None
    time_limit: float | None = None

    def has_any_limit(self):
        return (self.max_depth is not None or self.max_expanded_states is not None
                or self.time_limit is not None)


@dataclass(frozen=True)
class SolveResult:
    """Outcome of an exact solve.

    status "optimal": value = OPT and solution is a validated witness of that
    length.  "bound_proved": the search proved OPT >= value but ran out of
    depth budget before finding a witness.  "budget_exhausted": state/time
    budget died first; [lower, upper] is the best known interval and solution,
    if present, is a (possibly non-optimal) witness for upper.
    """

    status: str
    value: int | None
    solution: Solution | None
    expanded: int
    lower: int | None = None
    upper: int | None = None


@dataclass(frozen=True)
class DecisionResult:
    """Outcome of a bounded decision: status is "yes", "no" or "unknown"."""

    status: str
    solution: Solution | None
    expanded: int


class _BudgetExceeded(Exception):
    pass


class _Tracker:
    def __init__(self, budget):
        self.expanded = 0
        self.max_expanded = budget.max_expanded_states if budget else None
        self.deadline = None
        if budget and budget.time_limit is not None:
            self.deadline = time.monotonic() + budget.time_limit

    def tick(self):
        self.expanded += 1
        if self.max_expanded is not None and self.expanded > self.max_expanded:
            raise _BudgetExceeded
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise _BudgetExceeded


def _components_fast(adjacency, coloring):
    n = len(coloring)
    comp_of = [-1] * n
    comps = []
    for start in range(n):
        if comp_of[start] >= 0:
            continue
        cid = len(comps)
        target = coloring[start]
        members = [start]
        comp_of[start] = cid
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adjacency[v]:
                if comp_of[w] < 0 and coloring[w] == target:
                    comp_of[w] = cid
                    members.append(w)
                    stack.append(w)
        comps.append(members)
    return comp_of, comps


def _lb_from_comps(comps, coloring):
    per_color = {}
    for members in comps:
        c = coloring[members[0]]
        per_color[c] = per_color.get(c, 0) + 1
    bonus = 1 if all(count >= 2 for count in per_color.values()) else 0
    return len(per_color) - 1 + bonus


def lower_bound(state):
    """(#distinct colors present - 1), plus 1 when every present color's
    vertex set is disconnected; always <= OPT_Free of the state."""
    return _lb_from_comps([list(c) for c in state.components], state.coloring)


def _require_connected(instance):
    if not instance.is_connected():
        raise DisconnectedGraphError(
            "solver needs a connected graph; this one is disconnected")


def _neighbor_colors(adjacency, coloring, members):
    member_set = set(members)
    seen = set()
    for v in members:
        for w in adjacency[v]:
            if w not in member_set:
                seen.add(coloring[w])
    return seen


def _decide_free(instance, k, tracker, tt, prune_nonmerging=False):
    """Depth-k-bounded DFS; returns a Move list or None.  tt persists across
    iterative-deepening rounds: tt[key] = largest remaining budget that
    already failed from that exact coloring."""
    adjacency = instance.adjacency
    used = instance.used_colors()
    path = []

    def dfs(coloring, remaining):
        comp_of, comps = _components_fast(adjacency, coloring)
        if len(comps) == 1:
            return True
        if _lb_from_comps(comps, coloring) > remaining:
            return False
        key = _coloring_key(coloring)
        if tt.get(key, -1) >= remaining:
            return False
        tracker.tick()
        for members in comps:
            current = coloring[members[0]]
            allowed = used
            if prune_nonmerging:
                allowed = _neighbor_colors(adjacency, coloring, members)
            for c in allowed:
                if c == current:
                    continue
                child = list(coloring)
                for v in members:
                    child[v] = c
                path.append(Move(members[0], c))
                if dfs(tuple(child), remaining - 1):
                    return True
                path.pop()
        tt[key] = remaining
        return False

    if dfs(tuple(instance.coloring), k):
        return list(path)
    return None


def _decide_fixed(instance, pivot, k, tracker, tt):
    adjacency = instance.adjacency
    used = instance.used_colors()
    path = []

    def dfs(coloring, remaining):
        comp_of, comps = _components_fast(adjacency, coloring)
        if len(comps) == 1:
            return True
        if _lb_from_comps(comps, coloring) > remaining:
            return False
        key = _coloring_key(coloring)
        if tt.get(key, -1) >= remaining:
            return False
        tracker.tick()
        members = comps[comp_of[pivot]]
        current = coloring[pivot]
        for c in used:
            if c == current:
                continue
            child = list(coloring)
            for v in members:
                child[v] = c
            path.append(Move(pivot, c))
            if dfs(tuple(child), remaining - 1):
                return True
            path.pop()
        tt[key] = remaining
        return False

    if dfs(tuple(instance.coloring), k):
        return list(path)
    return None


def decide_free_at_most(instance, k, budget=None, prune_nonmerging=False):
    """Decide whether OPT_Free(instance) <= k; yes comes with a witness."""
    if k < 0:
        raise InputError("k must be nonnegative")
    _require_connected(instance)
    tracker = _Tracker(budget)
    try:
        moves = _decide_free(instance, k, tracker, {}, prune_nonmerging)
    except _BudgetExceeded:
        return DecisionResult("unknown", None, tracker.expanded)
    if moves is None:
        return DecisionResult("no", None, tracker.expanded)
    return DecisionResult("yes", Solution("free", moves), tracker.expanded)


def _solve(instance, decide, lo, hi, hi_solution, budget, mode, pivot):
    """Shared iterative-deepening driver; decide(depth, tracker, tt)."""
    tracker = _Tracker(budget)
    tt = {}
    depth_cap = budget.max_depth if budget and budget.max_depth is not None else None
    best_no = lo - 1
    try:
        for depth in range(lo, hi + 1):
            if depth_cap is not None and depth > depth_cap:
                return SolveResult("bound_proved", best_no + 1, None,
                                   tracker.expanded, lower=best_no + 1, upper=hi)
            moves = decide(depth, tracker, tt)
            if moves is not None:
                solution = Solution(mode, moves)
                report = validate_sequence(instance, solution, pivot)
                assert report.valid and report.length == depth
                return SolveResult("optimal", depth, solution, tracker.expanded,
                                   lower=depth, upper=depth)
            best_no = depth
    except _BudgetExceeded:
        return SolveResult("budget_exhausted", None, hi_solution, tracker.expanded,
                           lower=best_no + 1, upper=hi)
    # the seed witness is optimal: every depth below its length failed
    report = validate_sequence(instance, hi_solution, pivot)
    assert report.valid and report.length == hi
    return SolveResult("optimal", hi, hi_solution, tracker.expanded,
                       lower=hi, upper=hi)


def solve_free_exact(instance, budget=None, prune_nonmerging=False):
    """Exact OPT_Free with a witness; iterative deepening seeded by
    lower_bound below and the twin-partition flooding bound above."""
    _require_connected(instance)
    state = QuotientState.initial(instance)
    if is_flooded(state):
        return SolveResult("optimal", 0, Solution("free"), 0, lower=0, upper=0)
    from .kernel import twin_partition
    seed = module_heuristic(instance, twin_partition(instance))
    lo = lower_bound(state)
    hi = len(seed)

    def decide(depth, tracker, tt):
        return _decide_free(instance, depth, tracker, tt, prune_nonmerging)

    return _solve(instance, decide, lo, hi, seed, budget, "free", instance.pivot)


def solve_fixed_exact(instance, pivot, budget=None):
    """Exact OPT_Fixed for the given pivot; branching over colors only."""
    _require_connected(instance)
    if not 0 <= pivot < instance.vertex_count:
        raise InputError(f"invalid pivot {pivot}")
    state = QuotientState.initial(instance)
    if is_flooded(state):
        return SolveResult("optimal", 0, Solution("fixed"), 0, lower=0, upper=0)
    seed = greedy_fixed(instance, pivot)
    lo = lower_bound(state)
    hi = len(seed)

    def decide(depth, tracker, tt):
        return _decide_fixed(instance, pivot, depth, tracker, tt)

    return _solve(instance, decide, lo, hi, seed, budget, "fixed", pivot)


def greedy_fixed(instance, pivot):
    """Pivot-only greedy: play the color that maximizes the resulting pivot
    component, breaking ties toward the smallest color id."""
    _require_connected(instance)
    if not 0 <= pivot < instance.vertex_count:
        raise InputError(f"invalid pivot {pivot}")
    adjacency = instance.adjacency
    used = instance.used_colors()
    coloring = list(instance.coloring)
    moves = []
    while True:
        comp_of, comps = _components_fast(adjacency, coloring)
        if len(comps) == 1:
            break
        members = comps[comp_of[pivot]]
        current = coloring[pivot]
        best_color = None
        best_size = -1
        for c in used:
            if c == current:
                continue
            trial = list(coloring)
            for v in members:
                trial[v] = c
            size = len(component(instance, trial, pivot))
            if size > best_size:
                best_size = size
                best_color = c
        for v in members:
            coloring[v] = best_color
        moves.append(Move(pivot, best_color))
    return Solution("fixed", moves)


def cycling_fixed(instance, pivot):
    """Pivot-only color cycling; length <= (c_max - 1) * OPT_Fixed(pivot)."""
    _require_connected(instance)
    adjacency = instance.adjacency
    coloring = list(instance.coloring)
    moves = []
    while True:
        comp_of, comps = _components_fast(adjacency, coloring)
        if len(comps) == 1:
            break
        # one block: every color except the block-start color, ascending;
        # skipping that one keeps blocks at c_max - 1 moves (its components
        # are already maximal) and yields the (c_max-1) * OPT_Fixed bound
        block_start = coloring[pivot]
        for c in range(1, instance.c_max + 1):
            if c == block_start:
                continue
            if len(set(coloring)) == 1:
                break
            members = component(instance, coloring, pivot)
            for v in members:
                coloring[v] = c
            moves.append(Move(pivot, c))
    return Solution("fixed", moves)


def approx_free(instance, budget=None):
    """Free-mode approximation via pivot strategies.

    Runs greedy_fixed from one representative vertex of every initial
    monochromatic component and keeps the shortest result; a color-cycling
    candidate from the same representatives backstops the certified
    2(c_max-1) * OPT_Free bound.  With a budget, exact fixed solves are tried
    first and used when they finish.
    """
    _require_connected(instance)
    state = QuotientState.initial(instance)
    if is_flooded(state):
        return Solution("free")
    reps = [members[0] for members in state.components]
    best = None
    for rep in reps:
        candidates = []
        if budget is not None:
            exact = solve_fixed_exact(instance, rep, budget)
            if exact.status == "optimal":
                candidates.append(exact.solution)
        if not candidates:
            candidates.append(greedy_fixed(instance, rep))
        candidates.append(cycling_fixed(instance, rep))
        for cand in candidates:
            if best is None or len(cand) < len(best):
                best = cand
    free_moves = [Move(m.vertex, m.color) for m in best.moves]
    solution = Solution("free", free_moves)
    report = validate_sequence(instance, solution, instance.pivot)
    assert report.valid
    return solution


def _check_twin_partition(instance, partition):
    classes = [tuple(sorted(c)) for c in partition.classes]
    seen = sorted(v for c in classes for v in c)
    if seen != list(range(instance.vertex_count)):
        raise InputError("partition classes do not partition the vertex set")
    nbr = [set(a) for a in instance.adjacency]
    for cls in classes:
        for i, u in enumerate(cls):
            for v in cls[i + 1:]:
                if nbr[u] != nbr[v] and nbr[u] | {u} != nbr[v] | {v}:
                    raise InputError(
                        f"vertices {u} and {v} share a class but are not twins")
    return classes


def module_heuristic(instance, partition):
    """Flooding sequence from a twin partition: recolor one vertex per class
    to a chosen class color, then cycle the remaining colors from it.
    Length <= |partition| + c_max - 2."""
    _require_connected(instance)
    classes = _check_twin_partition(instance, partition)
    state = QuotientState.initial(instance)
    if is_flooded(state):
        return Solution("free")
    adjacency = instance.adjacency
    coloring = list(instance.coloring)
    base_class = classes[0]
    c = coloring[base_class[0]]
    moves = []
    for cls in classes[1:]:
        u = cls[0]
        if coloring[u] == c:
            continue
        for v in component(instance, coloring, u):
            coloring[v] = c
        moves.append(Move(u, c))
    anchor = next(v for v in range(instance.vertex_count) if coloring[v] == c)
    # recoloring never introduces colors, so one ascending pass suffices
    for other in sorted(set(coloring)):
        if other == c or other not in coloring:
            continue
        for v in component(instance, coloring, anchor):
            coloring[v] = other
        moves.append(Move(anchor, other))
    solution = Solution("free", moves)
    report = validate_sequence(instance, solution, instance.pivot)
    if not report.valid:
        raise FloodItError("module heuristic produced an invalid sequence")
    bound = len(classes) + len(set(instance.coloring)) - 2
    assert len(moves) <= max(bound, 0)
    return solution


# ---------------------------------------------------------------------------
# Free -> Fixed solution transformation (factor-2 conversion)


def _canonical_set_moves(instance, pivot, solution):
    if solution.mode not in ("free", "subset-free"):
        raise InputError("conversion input must be a free or subset-free solution")
    report = validate_sequence(instance, solution, pivot)
    if not report.valid:
        raise InputError(
            f"input solution is invalid at move {report.first_illegal_index}: "
            f"{report.reason}")
    state = QuotientState.initial(instance)
    out = []
    for mv in solution.moves:
        sm = SetMove(frozenset(effective_set(state, mv)), mv.color)
        out.append(sm)
        state = apply_set_move(state, sm, pivot)
    return out, report.bad_moves


def _replay_states(instance, pivot, start, seq):
    """Colorings/states before each move of seq; raises IllegalMoveError."""
    states = [start]
    for mv in seq:
        states.append(apply_set_move(states[-1], mv, pivot))
    return states


def _seq_valid(instance, pivot, start, seq):
    try:
        states = _replay_states(instance, pivot, start, seq)
    except (InputError, FloodItError):
        return False
    return is_flooded(states[-1])


def _strip_noops(instance, pivot, start, seq):
    out = []
    state = start
    for mv in seq:
        if all(state.coloring[v] == mv.color for v in mv.vertices):
            continue
        out.append(mv)
        state = apply_set_move(state, mv, pivot)
    return out


def _bad_count(pivot, seq):
    return sum(1 for mv in seq if pivot not in mv.vertices)


def _pivot_comp(state, pivot):
    return frozenset(state.components[state.component_of[pivot]])


def _find_case2(instance, pivot, start, seq):
    """First move recoloring a component adjacent to the pivot's component to
    the pivot's color; returns (index, pivot_comp, moved_set_color) or None."""
    state = start
    for i, mv in enumerate(seq):
        if pivot not in mv.vertices:
            pc = _pivot_comp(state, pivot)
            if mv.color == state.coloring[pivot]:
                adjacent = any(u in mv.vertices
                               for v in pc for u in instance.adjacency[v])
                if adjacent:
                    s_color = state.coloring[min(mv.vertices)]
                    return i, pc, s_color
        state = apply_set_move(state, mv, pivot)
    return None


def _rewrite_case2(instance, pivot, start, seq, found):
    i, pc, s_color = found
    states = _replay_states(instance, pivot, start, seq[:i])
    pivot_color = states[-1].coloring[pivot]
    merged = SetMove(pc | seq[i].vertices, pivot_color)
    return list(seq[:i]) + [SetMove(pc, s_color), merged] + list(seq[i + 1:])


def _rewrite_case3(instance, pivot, start, seq):
    """The literal hoist: first qualifying good move inside the initial pivot
    component whose color matches a current boundary vertex u; u's initial
    color is played on the initial pivot component first and moves touching u
    get the initial pivot component unioned in."""
    states = _replay_states(instance, pivot, start, seq)
    p0 = _pivot_comp(start, pivot)
    boundary = sorted({u for v in p0 for u in instance.adjacency[v]} - set(p0))
    if not boundary:
        return None
    for i, mv in enumerate(seq):
        if pivot not in mv.vertices or not mv.vertices <= p0:
            continue
        before = states[i].coloring
        candidates = [u for u in boundary if before[u] == mv.color]
        if not candidates:
            continue
        touching = [u for u in candidates
                    if any(w in mv.vertices for w in instance.adjacency[u])]
        u = min(touching) if touching else min(candidates)
        first = SetMove(p0, start.coloring[u])
        rewritten = [first]
        for j in range(i):
            sj = seq[j]
            if u in sj.vertices:
                comp_u = frozenset(component(instance, states[j].coloring, u))
                rewritten.append(SetMove(comp_u | p0, sj.color))
            else:
                rewritten.append(sj)
        rewritten.extend(seq[i + 1:])
        return rewritten
    return None


def _promote_subset_moves(instance, pivot, start, seq):
    """Replace every pivot-containing move's set by the full current pivot
    component; returns the candidate or None when the replay breaks."""
    out = []
    state = start
    try:
        for mv in seq:
            if pivot in mv.vertices:
                mv = SetMove(_pivot_comp(state, pivot), mv.color)
            out.append(mv)
            state = apply_set_move(state, mv, pivot)
    except (InputError, FloodItError):
        return None
    if not is_flooded(state):
        return None
    return out


def _minimize(instance, pivot, start, seq):
    seq = list(seq)
    changed = True
    while changed:
        changed = False
        for idx in range(len(seq)):
            cand = seq[:idx] + seq[idx + 1:]
            if _seq_valid(instance, pivot, start, cand):
                seq = cand
                changed = True
                break
    return seq


def _search_fixed_tail(instance, pivot, start, limit):
    """Bounded exact search for a pivot color sequence flooding `start` in at
    most `limit` moves; returns full-component set-moves or None."""
    shifted = instance.with_coloring(start.coloring)
    tracker = _Tracker(None)
    tt = {}
    for depth in range(0, limit + 1):
        moves = _decide_fixed(shifted, pivot, depth, tracker, tt)
        if moves is not None:
            out = []
            state = start
            for mv in moves:
                sm = SetMove(_pivot_comp(state, pivot), mv.color)
                out.append(sm)
                state = apply_set_move(state, sm, pivot)
            return out
    return None


def free_to_fixed(instance, pivot, solution):
    """Transform a valid (subset-)free solution into a subset-fixed one of
    length at most |S| + b(S).

    Follows the factor-2 proof's induction: keep a pivot-containing first
    move; replace the first outside merge into the pivot component by the two
    pivot moves (Comp(p), col(S)) then (Comp(p) u S, col(p)); otherwise hoist
    the first pivot-extending good move to the front.  Every hoist is replay
    validated; degenerate inputs (wasted recolors, splitting subset moves)
    fall back to validity-preserving repairs that never grow |S| or b(S).
    """
    if not 0 <= pivot < instance.vertex_count:
        raise InputError(f"invalid pivot {pivot}")
    seq, _ = _canonical_set_moves(instance, pivot, solution)
    budget = len(seq) + _bad_count(pivot, seq)
    state = QuotientState.initial(instance)
    out = []
    guard = 0
    while seq:
        guard += 1
        if guard > 4 * (budget + 2) ** 2:
            raise FloodItError("conversion failed to make progress")
        seq = _strip_noops(instance, pivot, state, seq)
        if not seq:
            break
        first = seq[0]
        if pivot in first.vertices:
            out.append(first)
            state = apply_set_move(state, first, pivot)
            seq = seq[1:]
            continue
        found = _find_case2(instance, pivot, state, seq)
        if found is not None:
            seq = _rewrite_case2(instance, pivot, state, seq, found)
            continue
        cand = _rewrite_case3(instance, pivot, state, seq)
        if cand is not None and _seq_valid(instance, pivot, state, cand):
            seq = cand
            continue
        promoted = _promote_subset_moves(instance, pivot, state, seq)
        if promoted is not None and promoted != seq:
            seq = promoted
            continue
        reduced = _minimize(instance, pivot, state, seq)
        if len(reduced) < len(seq):
            seq = reduced
            continue
        tail = _search_fixed_tail(instance, pivot, state,
                                  len(seq) + _bad_count(pivot, seq))
        if tail is None:
            raise FloodItError("no bounded fixed completion exists")
        out.extend(tail)
        seq = []
    if len(out) > budget:
        raise FloodItError("conversion exceeded its length budget")
    converted = Solution("subset-fixed", out)
    report = validate_sequence(instance, converted, pivot)
    if not report.valid:
        raise FloodItError(
            f"conversion produced an invalid solution at move "
            f"{report.first_illegal_index}: {report.reason}")
    return converted


def project_subset_fixed(instance, pivot, solution):
    """Flatten a subset-fixed solution to plain pivot moves with the same
    color sequence; validity and exact length are preserved."""
    if solution.mode != "subset-fixed":
        raise InputError("projection input must be a subset-fixed solution")
    report = validate_sequence(instance, solution, pivot)
    if not report.valid:
        raise InputError(
            f"input solution is invalid at move {report.first_illegal_index}: "
            f"{report.reason}")
    moves = [Move(pivot, mv.color) for mv in solution.moves]
    projected = Solution("fixed", moves)
    check = validate_sequence(instance, projected, pivot)
    if not check.valid:
        raise FloodItError("projection produced an invalid fixed solution")
    return projected
