"""Game-semantics tests: components, moves, set-moves, validation."""

import pytest
from hypothesis import given, settings, strategies as st

from floodlab.core import (
    ColoredInstance,
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
    replay,
    validate_sequence,
)
from floodlab.generators import random_connected_graph

from conftest import complete_instance, cycle_instance, path_instance
from oracles import naive_apply_move, uf_component_of, uf_components


def test_component_isolated_color():
    inst = path_instance([1, 2, 1])
    assert component(inst, inst.coloring, 1) == (1,)


def test_component_constant_coloring_is_everything():
    inst = cycle_instance([1, 1, 1, 1])
    for u in range(4):
        assert component(inst, inst.coloring, u) == (0, 1, 2, 3)


def test_component_matches_union_find_oracle():
    for seed in range(1000):
        inst = random_connected_graph(4 + seed % 27, 1 + seed % 4, seed=seed)
        for u in range(inst.vertex_count):
            mine = set(component(inst, inst.coloring, u))
            assert mine == uf_component_of(inst.adjacency, inst.coloring, u)


def test_component_rejects_bad_vertex():
    inst = path_instance([1, 2])
    with pytest.raises(InputError):
        component(inst, inst.coloring, 7)


def test_components_partition_vertices():
    for seed in range(200):
        inst = random_connected_graph(3 + seed % 28, 1 + seed % 3, seed=1000 + seed)
        state = QuotientState.initial(inst)
        seen = sorted(v for comp in state.components for v in comp)
        assert seen == list(range(inst.vertex_count))
        assert uf_components(inst.adjacency, inst.coloring) == \
            {frozenset(c) for c in state.components}


def test_quotient_invariants():
    for seed in range(120):
        inst = random_connected_graph(3 + seed % 10, 1 + seed % 3, seed=2000 + seed)
        state = QuotientState.initial(inst)
        for cid, nbrs in enumerate(state.component_adjacency):
            assert cid not in nbrs
            for other in nbrs:
                # adjacent components always differ in color (maximality)
                assert state.component_color[other] != state.component_color[cid]
                assert cid in state.component_adjacency[other]


def test_canonical_key_tracks_coloring_exactly():
    inst = path_instance([1, 2, 1])
    a = QuotientState.initial(inst)
    b = QuotientState.from_coloring(inst, (1, 2, 1))
    c = QuotientState.from_coloring(inst, (1, 2, 2))
    assert a.canonical_key == b.canonical_key
    assert a.canonical_key != c.canonical_key


def test_apply_move_on_monochromatic_stays_monochromatic():
    inst = cycle_instance([2, 2, 2, 2])
    state = QuotientState.initial(inst)
    assert is_flooded(state)
    after = apply_move(state, Move(0, 1))
    assert is_flooded(after)


def test_apply_move_path_merge():
    inst = path_instance([1, 2, 1])
    after = apply_move(QuotientState.initial(inst), Move(1, 1))
    assert after.coloring == (1, 1, 1)
    assert is_flooded(after)


def test_apply_move_matches_naive_oracle():
    import random
    rng = random.Random(99)
    for seed in range(300):
        inst = random_connected_graph(15, 3, seed=3000 + seed)
        state = QuotientState.initial(inst)
        v = rng.randrange(15)
        c = rng.randint(1, inst.c_max)
        after = apply_move(state, Move(v, c))
        assert after.coloring == naive_apply_move(inst.adjacency, inst.coloring, v, c)


def test_apply_move_same_color_is_legal_noop():
    inst = path_instance([1, 2, 1])
    state = QuotientState.initial(inst)
    after = apply_move(state, Move(0, 1))
    assert after.coloring == state.coloring


def test_apply_move_idempotent_when_repeated():
    for seed in range(100):
        inst = random_connected_graph(8, 3, seed=4000 + seed)
        state = QuotientState.initial(inst)
        move = Move(seed % 8, 1 + seed % inst.c_max)
        once = apply_move(state, move)
        twice = apply_move(once, move)
        assert once.coloring == twice.coloring


def test_plain_moves_never_increase_component_count():
    for seed in range(150):
        inst = random_connected_graph(9, 3, seed=5000 + seed)
        state = QuotientState.initial(inst)
        for v in range(inst.vertex_count):
            for c in inst.used_colors():
                after = apply_move(state, Move(v, c))
                assert len(after.components) <= len(state.components)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_apply_move_oracle_property(data):
    seed = data.draw(st.integers(0, 10_000))
    inst = random_connected_graph(3 + seed % 12, 1 + seed % 4, seed=seed)
    v = data.draw(st.integers(0, inst.vertex_count - 1))
    c = data.draw(st.integers(1, inst.c_max))
    state = QuotientState.initial(inst)
    after = apply_move(state, Move(v, c))
    assert after.coloring == naive_apply_move(inst.adjacency, inst.coloring, v, c)


def test_set_move_full_component_equals_plain_move():
    inst = path_instance([1, 1, 2, 1])
    state = QuotientState.initial(inst)
    comp = frozenset(component(inst, inst.coloring, 0))
    via_set = apply_set_move(state, SetMove(comp, 2))
    via_plain = apply_move(state, Move(0, 2))
    assert via_set.coloring == via_plain.coloring


def test_set_move_pivot_subset_splits_component():
    inst = path_instance([1, 1, 2], pivot=0)
    state = QuotientState.initial(inst)
    after = apply_set_move(state, SetMove(frozenset({0}), 2), pivot=0)
    assert after.coloring == (2, 1, 2)
    assert len(after.components) == 3


def test_set_move_random_subsets_match_recolor_oracle():
    import random
    rng = random.Random(7)
    checked = 0
    for seed in range(400):
        inst = random_connected_graph(8, 3, seed=6000 + seed)
        pivot = rng.randrange(8)
        state = QuotientState.initial(inst)
        comp = sorted(component(inst, inst.coloring, pivot))
        if len(comp) < 2:
            continue
        size = rng.randint(1, len(comp) - 1)
        subset = {pivot}
        # grow a connected pivot-containing subset
        while len(subset) < size:
            frontier = [u for v in subset for u in inst.adjacency[v]
                        if u in set(comp) - subset]
            if not frontier:
                break
            subset.add(rng.choice(sorted(frontier)))
        c = rng.randint(1, inst.c_max)
        after = apply_set_move(state, SetMove(frozenset(subset), c), pivot=pivot)
        from oracles import naive_recolor
        assert after.coloring == naive_recolor(inst.adjacency, inst.coloring,
                                               subset, c)
        checked += 1
    assert checked > 100


def test_set_move_rejections_name_the_clause():
    inst = path_instance([1, 1, 2], pivot=2)
    state = QuotientState.initial(inst)
    with pytest.raises(IllegalMoveError) as err:
        apply_set_move(state, SetMove(frozenset({0, 2}), 1), pivot=2)
    assert err.value.clause == "monochromatic"
    inst2 = path_instance([1, 2, 1], pivot=0)
    state2 = QuotientState.initial(inst2)
    with pytest.raises(IllegalMoveError) as err:
        apply_set_move(state2, SetMove(frozenset({0, 2}), 2), pivot=0)
    assert err.value.clause == "connected"
    inst3 = path_instance([1, 1, 1], pivot=None, c_max=2)
    state3 = QuotientState.initial(inst3)
    with pytest.raises(IllegalMoveError) as err:
        apply_set_move(state3, SetMove(frozenset({0}), 2))
    assert err.value.clause == "form"


def test_is_flooded_cases():
    single = ColoredInstance(1, ((),), (1,), 1)
    assert is_flooded(QuotientState.initial(single))
    assert not is_flooded(QuotientState.initial(path_instance([1, 2, 1])))


def test_disconnected_graphs_are_never_flooded():
    inst = ColoredInstance(2, ((), ()), (1, 1), 1)
    assert not is_flooded(QuotientState.initial(inst))


def test_validate_empty_sequence_on_flooded_instance():
    inst = cycle_instance([1, 1, 1])
    report = validate_sequence(inst, Solution("free"))
    assert report.valid and report.length == 0


def test_validate_p5_fixed_alternation():
    inst = path_instance([1, 2, 1, 2, 1], pivot=0)
    moves = [Move(0, 2), Move(0, 1), Move(0, 2), Move(0, 1)]
    report = validate_sequence(inst, Solution("fixed", moves))
    assert report.valid and report.length == 4


def test_validate_p5_free_odd_distance():
    inst = path_instance([1, 2, 1, 2, 1], pivot=0)
    moves = [Move(1, 1), Move(3, 1)]
    report = validate_sequence(inst, Solution("free", moves))
    assert report.valid and report.length == 2
    assert report.bad_moves == 2


def test_validate_reports_first_illegal_move():
    inst = path_instance([1, 2, 1], pivot=0)
    bad = Solution("fixed", [Move(0, 2), Move(2, 1)])
    report = validate_sequence(inst, bad)
    assert not report.valid
    assert report.first_illegal_index == 1


def test_validate_rejects_non_flooding():
    inst = path_instance([1, 2, 1, 3])
    report = validate_sequence(inst, Solution("free", [Move(1, 1)]))
    assert not report.valid
    assert report.reason == "final coloring is not constant"


def test_validated_solutions_replay_to_flooded_states():
    for seed in range(60):
        inst = random_connected_graph(7, 3, seed=7000 + seed)
        from floodlab.solver import solve_free_exact
        solution = solve_free_exact(inst).solution
        assert validate_sequence(inst, solution).valid
        assert is_flooded(replay(inst, solution))


def test_fixed_mode_requires_pivot():
    inst = path_instance([1, 2, 1])
    with pytest.raises(InputError):
        validate_sequence(inst, Solution("fixed", [Move(0, 2)]))


def test_set_moves_rejected_outside_subset_modes():
    inst = path_instance([1, 2, 1], pivot=0)
    sol = Solution("free", [SetMove(frozenset({1}), 1)])
    report = validate_sequence(inst, sol)
    assert not report.valid and "subset modes" in report.reason
    fixed = Solution("fixed", [SetMove(frozenset({0}), 2)])
    assert not validate_sequence(inst, fixed, 0).valid


def test_subset_fixed_rejects_pivot_free_sets():
    inst = path_instance([1, 2, 1], pivot=0)
    sol = Solution("subset-fixed", [SetMove(frozenset({1}), 1)])
    report = validate_sequence(inst, sol, 0)
    assert not report.valid
    assert report.first_illegal_index == 0


def test_subset_fixed_accepts_plain_pivot_moves():
    inst = path_instance([1, 2, 1], pivot=1)
    sol = Solution("subset-fixed", [Move(1, 1)])
    assert validate_sequence(inst, sol, 1).valid


def test_instance_validation_errors():
    with pytest.raises(InputError):
        ColoredInstance(2, ((1,), ()), (1, 1), 1)  # asymmetric
    with pytest.raises(InputError):
        ColoredInstance(1, ((0,),), (1,), 1)  # self-loop
    with pytest.raises(InputError):
        ColoredInstance(2, ((1,), (0,)), (1, 5), 2)  # color out of range
    with pytest.raises(InputError):
        ColoredInstance(2, ((1,), (0,)), (1, 1), 1, pivot=9)
    with pytest.raises(InputError):
        SetMove(frozenset(), 1)
    with pytest.raises(InputError):
        Solution("weird", [])
