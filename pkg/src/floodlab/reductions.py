"""Constructive generators and verifiers: the multicolored-set-cover
reduction, the tight 2-colored path family, and monotonicity experiments."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (
    ColoredInstance,
    FloodItError,
    InputError,
    Move,
    QuotientState,
    Solution,
    apply_move,
    component,
    is_flooded,
    validate_sequence,
)
from .solver import decide_free_at_most, solve_fixed_exact, solve_free_exact


class ExtractionError(FloodItError):
    """flooding_to_cover met a solution violating a proof claim; the claim
    name is carried so this can be flagged as a bug signal."""

    def __init__(self, message, claim):
        super().__init__(message)
        self.claim = claim


@dataclass(frozen=True)
class MCSCInstance:
    """Universe {0..universe_size-1} plus k collections of subsets; a
    solution picks one set per collection so the union covers the universe."""

    universe_size: int
    collections: tuple[tuple[frozenset[int], ...], ...]

    def __post_init__(self):
        if self.universe_size < 0:
            raise InputError("universe size must be nonnegative")
        object.__setattr__(self, "collections", tuple(
            tuple(frozenset(s) for s in coll) for coll in self.collections))
        for coll in self.collections:
            for s in coll:
                for e in s:
                    if not 0 <= e < self.universe_size:
                        raise InputError(f"element {e} outside the universe")

    @property
    def k(self):
        return len(self.collections)

    def is_cover(self, selection):
        if len(selection) != self.k:
            return False
        covered = set()
        for i, idx in enumerate(selection):
            if not 0 <= idx < len(self.collections[i]):
                return False
            covered |= self.collections[i][idx]
        return len(covered) == self.universe_size

    def satisfiable(self):
        if any(not coll for coll in self.collections):
            return False
        for selection in itertools.product(
                *(range(len(coll)) for coll in self.collections)):
            if self.is_cover(selection):
                return True
        return False


@dataclass(frozen=True)
class ReductionLayout:
    """Vertex bookkeeping for the set-cover reduction graph."""

    k: int
    padding: int
    set_vertices: tuple[tuple[int, ...], ...]   # per collection, per set
    l_vertices: tuple[tuple[int, ...], ...]     # per collection, `padding` many
    leaf_vertices: dict[int, tuple[int, ...]]   # l-vertex -> k leaves, colors 1..k
    element_vertices: tuple[int, ...]
    special_vertex: int

    def to_json(self):
        return {
            "k": self.k,
            "padding": self.padding,
            "set_vertices": [list(g) for g in self.set_vertices],
            "l_vertices": [list(g) for g in self.l_vertices],
            "leaf_vertices": {str(v): list(g) for v, g in self.leaf_vertices.items()},
            "element_vertices": list(self.element_vertices),
            "special_vertex": self.special_vertex,
        }

    @staticmethod
    def from_json(obj):
        return ReductionLayout(
            k=obj["k"],
            padding=obj["padding"],
            set_vertices=tuple(tuple(g) for g in obj["set_vertices"]),
            l_vertices=tuple(tuple(g) for g in obj["l_vertices"]),
            leaf_vertices={int(v): tuple(g) for v, g in obj["leaf_vertices"].items()},
            element_vertices=tuple(obj["element_vertices"]),
            special_vertex=obj["special_vertex"],
        )


def mcsc_to_floodit(mcsc, padding=None):
    """Build the flood instance whose OPT_Free is at most 2k exactly when the
    set-cover instance is solvable.

    Set vertices of collection i are colored i and form an independent set;
    each collection gets `padding` fresh vertices colored k+1 joined
    completely to its set vertices, each carrying k leaves colored 1..k;
    element vertices (colored k+1) join the sets containing them; a special
    k+1-colored vertex joins every set vertex.
    """
    k = mcsc.k
    if k < 1:
        raise InputError("need at least one collection")
    for i, coll in enumerate(mcsc.collections):
        if not coll:
            raise InputError(f"collection {i} is empty: no set can be selected")
    if padding is None:
        padding = 3 * k
    if padding < 1:
        raise InputError("padding must be at least 1")

    edges = []
    colors = []

    def new_vertex(color):
        colors.append(color)
        return len(colors) - 1

    set_vertices = tuple(
        tuple(new_vertex(i + 1) for _ in coll)
        for i, coll in enumerate(mcsc.collections))
    l_vertices = []
    leaf_vertices = {}
    for i in range(k):
        group = []
        for _ in range(padding):
            lv = new_vertex(k + 1)
            group.append(lv)
            for sv in set_vertices[i]:
                edges.append((lv, sv))
            leaves = tuple(new_vertex(c) for c in range(1, k + 1))
            leaf_vertices[lv] = leaves
            for leaf in leaves:
                edges.append((lv, leaf))
        l_vertices.append(tuple(group))
    element_vertices = tuple(new_vertex(k + 1) for _ in range(mcsc.universe_size))
    for i, coll in enumerate(mcsc.collections):
        for j, subset in enumerate(coll):
            for e in subset:
                edges.append((element_vertices[e], set_vertices[i][j]))
    special = new_vertex(k + 1)
    for group in set_vertices:
        for sv in group:
            edges.append((special, sv))

    n = len(colors)
    adjacency = [set() for _ in range(n)]
    for a, b in edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    instance = ColoredInstance(n, tuple(tuple(sorted(s)) for s in adjacency),
                               tuple(colors), k + 1)
    layout = ReductionLayout(k, padding, set_vertices, tuple(l_vertices),
                             leaf_vertices, element_vertices, special)
    return instance, layout


def cover_to_flooding(mcsc, layout, cover):
    """The constructive 2k-move solution for a valid cover: recolor each
    chosen set vertex to k+1, then cycle colors 1..k on the special vertex."""
    k = layout.k
    if not mcsc.is_cover(cover):
        raise InputError(f"selection {list(cover)} does not cover the universe")
    moves = [Move(layout.set_vertices[i][cover[i]], k + 1) for i in range(k)]
    moves += [Move(layout.special_vertex, c) for c in range(1, k + 1)]
    solution = Solution("free", moves)
    instance, _ = mcsc_to_floodit(mcsc, layout.padding)
    report = validate_sequence(instance, solution)
    if not report.valid:
        raise FloodItError("constructive cover sequence failed to flood")
    return solution


def flooding_to_cover(mcsc, layout, solution):
    """Extract a cover from any valid solution of length <= 2k at the full
    3k padding: for each collection, the set whose vertex is recolored to
    k+1 by a single-vertex move among the first k moves."""
    k = layout.k
    if layout.padding != 3 * k:
        raise InputError("cover extraction needs the full 3k padding")
    instance, _ = mcsc_to_floodit(mcsc, layout.padding)
    if len(solution.moves) > 2 * k:
        raise InputError(
            f"solution has {len(solution.moves)} moves, extraction needs <= {2 * k}")
    report = validate_sequence(instance, solution)
    if not report.valid:
        raise InputError(f"solution does not flood the reduction instance: "
                         f"{report.reason}")

    vertex_group = {}
    for i, group in enumerate(layout.set_vertices):
        for j, sv in enumerate(group):
            vertex_group[sv] = (i, j)

    from .core import apply_set_move, effective_set
    chosen = {}
    state = QuotientState.initial(instance)
    for mv in solution.moves[:k]:
        played = sorted(effective_set(state, mv))
        if len(played) == 1 and mv.color == k + 1 and played[0] in vertex_group:
            i, j = vertex_group[played[0]]
            chosen.setdefault(i, j)
        if isinstance(mv, Move):
            state = apply_move(state, mv)
        else:
            state = apply_set_move(state, mv)
    missing = [i for i in range(k) if i not in chosen]
    if missing:
        raise ExtractionError(
            f"collections {missing} never had a set vertex recolored to {k + 1} "
            f"by a single-vertex move among the first {k} moves",
            claim="every group receives color k+1 in the first k moves")
    cover = tuple(chosen[i] for i in range(k))
    if not mcsc.is_cover(cover):
        raise ExtractionError(
            f"extracted selection {list(cover)} leaves the universe uncovered",
            claim="color k+1 vertices dominate every element")
    return cover


def tight_path(n):
    """P_{2n+1}, properly 2-colored, pivot at endpoint 0: the family where
    the fixed optimum is exactly twice the free optimum."""
    if n < 1:
        raise InputError("n must be at least 1")
    count = 2 * n + 1
    adjacency = tuple(
        tuple(sorted(u for u in (v - 1, v + 1) if 0 <= u < count))
        for v in range(count))
    coloring = tuple(1 if v % 2 == 0 else 2 for v in range(count))
    return ColoredInstance(count, adjacency, coloring, 2, pivot=0)


def _path_with_pendant(path_len, pendant_at, coloring):
    """Path 0..path_len-1 plus pendant vertex path_len attached inside it;
    the palette stays 1..3 regardless of the colors present."""
    n = path_len + 1
    adjacency = [set() for _ in range(n)]
    for v in range(path_len - 1):
        adjacency[v].add(v + 1)
        adjacency[v + 1].add(v)
    adjacency[pendant_at].add(path_len)
    adjacency[path_len].add(pendant_at)
    return ColoredInstance(n, tuple(tuple(sorted(s)) for s in adjacency),
                           tuple(coloring), 3)


@dataclass(frozen=True)
class WitnessResult:
    found: bool
    instance: ColoredInstance | None = None
    move: Move | None = None
    opt_before: int | None = None
    opt_after: int | None = None


def find_nonmonotone_witness(max_path_len, opt_before=3):
    """First 3-colored path-plus-pendant whose free optimum strictly
    increases under a single move, among instances with the requested
    starting optimum (3 by default, the known minimal pattern).

    Deterministic order: path length, then lexicographic colorings over
    {1,2,3}, then pendant position, then (vertex, color) move order.
    Passing opt_before=None drops the filter; the unconstrained first hit is
    a smaller 2 -> 3 witness on five vertices.
    """
    if max_path_len < 4:
        raise InputError("max_path_len must be at least 4")
    for path_len in range(4, max_path_len + 1):
        n = path_len + 1
        for coloring in itertools.product((1, 2, 3), repeat=n):
            if len(set(coloring)) != 3:
                continue
            for pendant_at in range(1, path_len - 1):
                instance = _path_with_pendant(path_len, pendant_at, coloring)
                opt = solve_free_exact(instance).value
                if opt_before is not None and opt != opt_before:
                    continue
                for v in range(n):
                    for c in (1, 2, 3):
                        if c == coloring[v]:
                            continue
                        move = Move(v, c)
                        after = apply_move(QuotientState.initial(instance), move)
                        if is_flooded(after):
                            continue
                        shifted = instance.with_coloring(after.coloring)
                        if decide_free_at_most(shifted, opt).status == "no":
                            opt_after = solve_free_exact(shifted).value
                            return WitnessResult(True, instance, move,
                                                 opt, opt_after)
    return WitnessResult(False)


def monotonicity_delta(instance, move, mode, pivot=None, budget=None):
    """OPT(after move) - OPT(before) in the chosen mode."""
    if mode not in ("free", "fixed"):
        raise InputError(f"mode must be free or fixed, got {mode!r}")
    if mode == "fixed":
        if pivot is None:
            pivot = instance.pivot
        if pivot is None:
            raise InputError("fixed-mode delta needs a pivot")
        if move.vertex != pivot:
            raise InputError("fixed-mode delta is defined for pivot moves")
    after = apply_move(QuotientState.initial(instance), move)
    shifted = instance.with_coloring(after.coloring)
    if mode == "free":
        before = solve_free_exact(instance, budget)
        afterwards = solve_free_exact(shifted, budget)
    else:
        before = solve_fixed_exact(instance, pivot, budget)
        afterwards = solve_fixed_exact(shifted, pivot, budget)
    if before.status != "optimal" or afterwards.status != "optimal":
        raise FloodItError("budget exhausted before both optima were known")
    return afterwards.value - before.value
