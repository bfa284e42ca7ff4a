"""Flood-It game semantics: colored graphs, moves and flooding validation.

Vertices are dense 0-based ints, colors are 1-based ints.  Everything here is
an immutable value; operations are pure functions returning fresh states, so
instances and states can be shared freely across threads.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field


class FloodItError(Exception):
    """Base class for all floodlab errors."""


class InputError(FloodItError):
    """Malformed instance, solution or argument."""

    code = "input"


class IllegalMoveError(InputError):
    """A move that violates the game rules; `clause` names the broken rule."""

    code = "illegal-move"

    def __init__(self, message, clause):
        super().__init__(message)
        self.clause = clause


class DisconnectedGraphError(InputError):
    """Solvers only accept connected graphs."""

    code = "disconnected"


MODES = ("free", "fixed", "subset-free", "subset-fixed")


@dataclass(frozen=True)
class Move:
    """A plain move (u, c): recolor the monochromatic component of u to c."""

    vertex: int
    color: int


@dataclass(frozen=True)
class SetMove:
    """A set-move (S, c): recolor exactly the vertices of S to c.

    Legal only if S is monochromatic and connected at application time and is
    either a full monochromatic component or a pivot-containing subset of the
    pivot's component.
    """

    vertices: frozenset[int]
    color: int

    def __post_init__(self):
        if not self.vertices:
            raise InputError("set-move needs a nonempty vertex set")


@dataclass(frozen=True)
class Solution:
    """An ordered move sequence in one of the four game modes."""

    mode: str
    moves: tuple = ()
    bad_move_count: int | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise InputError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        object.__setattr__(self, "moves", tuple(self.moves))

    def __len__(self):
        return len(self.moves)


@dataclass(frozen=True)
class ColoredInstance:
    """An undirected simple graph with a vertex coloring and optional pivot."""

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]
    coloring: tuple[int, ...]
    c_max: int
    pivot: int | None = None

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise InputError("vertex_count must be nonnegative")
        object.__setattr__(self, "adjacency", tuple(tuple(a) for a in self.adjacency))
        object.__setattr__(self, "coloring", tuple(self.coloring))
        if len(self.adjacency) != n:
            raise InputError("adjacency must list neighbors for every vertex")
        if len(self.coloring) != n:
            raise InputError("coloring must assign a color to every vertex")
        if self.c_max < 1:
            raise InputError("c_max must be positive")
        for v, nbrs in enumerate(self.adjacency):
            prev = -1
            for u in nbrs:
                if not 0 <= u < n:
                    raise InputError(f"vertex {v} lists invalid neighbor {u}")
                if u == v:
                    raise InputError(f"self-loop at vertex {v}")
                if u <= prev:
                    raise InputError(f"neighbor list of {v} not sorted/duplicate-free")
                prev = u
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if v not in self.adjacency[u]:
                    raise InputError(f"edge {v}-{u} is not symmetric")
        for v, c in enumerate(self.coloring):
            if not 1 <= c <= self.c_max:
                raise InputError(f"vertex {v} has color {c} outside [1, {self.c_max}]")
        if self.pivot is not None and not 0 <= self.pivot < n:
            raise InputError(f"pivot {self.pivot} is not a valid vertex id")

    @property
    def edge_count(self):
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self):
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if v < u:
                    yield (v, u)

    def used_colors(self):
        """Distinct colors present in the initial coloring, ascending."""
        return tuple(sorted(set(self.coloring)))

    def is_connected(self):
        n = self.vertex_count
        if n <= 1:
            return True
        seen = bytearray(n)
        stack = [0]
        seen[0] = 1
        count = 1
        while stack:
            v = stack.pop()
            for u in self.adjacency[v]:
                if not seen[u]:
                    seen[u] = 1
                    count += 1
                    stack.append(u)
        return count == n

    def with_pivot(self, pivot):
        return ColoredInstance(self.vertex_count, self.adjacency, self.coloring,
                               self.c_max, pivot)

    def with_coloring(self, coloring):
        return ColoredInstance(self.vertex_count, self.adjacency, tuple(coloring),
                               self.c_max, self.pivot)


def _check_vertex(instance, v):
    if not isinstance(v, int) or not 0 <= v < instance.vertex_count:
        raise InputError(f"invalid vertex id {v!r}")


def _check_color(instance, c):
    if not isinstance(c, int) or not 1 <= c <= instance.c_max:
        raise InputError(f"color {c!r} outside [1, {instance.c_max}]")


def component(instance, coloring, u):
    """Comp(coloring, u): the maximal connected set containing u in which
    every vertex has coloring[u]'s color.  Returns a sorted tuple."""
    _check_vertex(instance, u)
    target = coloring[u]
    adjacency = instance.adjacency
    seen = {u}
    stack = [u]
    while stack:
        v = stack.pop()
        for w in adjacency[v]:
            if w not in seen and coloring[w] == target:
                seen.add(w)
                stack.append(w)
    return tuple(sorted(seen))


def _coloring_key(coloring):
    # Exact-coloring canonical key; two states over the same instance share a
    # key iff their colorings are identical.
    return array("H", coloring).tobytes()


def _quotient(instance, coloring):
    """Monochromatic components of `coloring`: (component_of, components).
    Component ids are ordered by smallest contained vertex."""
    n = instance.vertex_count
    adjacency = instance.adjacency
    comp_of = [-1] * n
    components = []
    for start in range(n):
        if comp_of[start] >= 0:
            continue
        cid = len(components)
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
        members.sort()
        components.append(tuple(members))
    return comp_of, components


@dataclass(frozen=True)
class QuotientState:
    """Contraction of a coloring into monochromatic components.

    `canonical_key` identifies the exact coloring (not the quotient shape), so
    it is safe as a transposition key and nothing more.
    """

    instance: ColoredInstance = field(compare=False, repr=False)
    coloring: tuple[int, ...]
    component_of: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    component_color: tuple[int, ...]
    component_adjacency: tuple[tuple[int, ...], ...]
    canonical_key: bytes

    @staticmethod
    def from_coloring(instance, coloring):
        coloring = tuple(coloring)
        if len(coloring) != instance.vertex_count:
            raise InputError("coloring length does not match instance")
        comp_of, components = _quotient(instance, coloring)
        k = len(components)
        nbr_sets = [set() for _ in range(k)]
        for v, nbrs in enumerate(instance.adjacency):
            cv = comp_of[v]
            for u in nbrs:
                cu = comp_of[u]
                if cu != cv:
                    nbr_sets[cv].add(cu)
        return QuotientState(
            instance=instance,
            coloring=coloring,
            component_of=tuple(comp_of),
            components=tuple(components),
            component_color=tuple(coloring[members[0]] for members in components),
            component_adjacency=tuple(tuple(sorted(s)) for s in nbr_sets),
            canonical_key=_coloring_key(coloring),
        )

    @staticmethod
    def initial(instance):
        return QuotientState.from_coloring(instance, instance.coloring)

    def component_of_vertex(self, v):
        return self.components[self.component_of[v]]


def is_flooded(state):
    """True iff exactly one monochromatic component exists."""
    return len(state.components) == 1


def apply_move(state, move):
    """Recolor the component of move.vertex to move.color; recoloring to the
    current color is a legal no-op."""
    instance = state.instance
    _check_vertex(instance, move.vertex)
    _check_color(instance, move.color)
    comp = state.components[state.component_of[move.vertex]]
    new_coloring = list(state.coloring)
    for v in comp:
        new_coloring[v] = move.color
    return QuotientState.from_coloring(instance, new_coloring)


def _set_is_connected(instance, vertices):
    it = iter(vertices)
    start = next(it)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in instance.adjacency[v]:
            if u in vertices and u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(vertices)


def check_set_move(state, move, pivot=None):
    """Raise IllegalMoveError unless `move` is a legal set-move for `state`.

    Legal forms: the full monochromatic component of some vertex, or a
    connected monochromatic set with pivot in S subseteq Comp(coloring, pivot).
    """
    instance = state.instance
    _check_color(instance, move.color)
    vertices = move.vertices
    for v in vertices:
        _check_vertex(instance, v)
    colors = {state.coloring[v] for v in vertices}
    if len(colors) != 1:
        raise IllegalMoveError(
            f"set {sorted(vertices)} is not monochromatic (colors {sorted(colors)})",
            clause="monochromatic")
    if not _set_is_connected(instance, vertices):
        raise IllegalMoveError(
            f"set {sorted(vertices)} does not induce a connected subgraph",
            clause="connected")
    rep = min(vertices)
    full = set(component(instance, state.coloring, rep))
    if vertices == full:
        return
    if pivot is not None and pivot in vertices:
        pivot_comp = set(component(instance, state.coloring, pivot))
        if vertices <= pivot_comp:
            return
    raise IllegalMoveError(
        f"set {sorted(vertices)} is neither a full monochromatic component nor a "
        "pivot-containing subset of the pivot's component",
        clause="form")


def apply_set_move(state, move, pivot=None):
    """Recolor exactly move.vertices to move.color after legality checks."""
    check_set_move(state, move, pivot)
    new_coloring = list(state.coloring)
    for v in move.vertices:
        new_coloring[v] = move.color
    return QuotientState.from_coloring(state.instance, new_coloring)


def effective_set(state, move):
    """The vertex set a move recolors: Comp(col, u) for plain moves, the
    frozen set for set-moves."""
    if isinstance(move, Move):
        return frozenset(state.components[state.component_of[move.vertex]])
    return move.vertices


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    length: int
    bad_moves: int | None = None
    first_illegal_index: int | None = None
    reason: str | None = None


def _move_legal_for_mode(state, move, mode, pivot):
    if isinstance(move, Move):
        _check_vertex(state.instance, move.vertex)
        _check_color(state.instance, move.color)
        if mode in ("fixed", "subset-fixed") and move.vertex != pivot:
            return f"move plays vertex {move.vertex}, fixed mode must play the pivot {pivot}"
        return None
    if mode in ("free", "fixed"):
        return "set-moves are only legal in subset modes"
    try:
        check_set_move(state, move, pivot)
    except IllegalMoveError as exc:
        return str(exc)
    if mode == "subset-fixed" and pivot not in move.vertices:
        return f"set-move excludes the pivot {pivot}"
    return None


def validate_sequence(instance, solution, pivot=None):
    """Replay `solution` from the instance's initial coloring.

    Valid iff every move is legal for solution.mode and the final state is
    flooded.  `bad_moves` counts moves whose played set excludes the pivot
    (None when no pivot is known in a free-mode replay).
    """
    if pivot is None:
        pivot = instance.pivot
    if solution.mode in ("fixed", "subset-fixed") and pivot is None:
        raise InputError(f"mode {solution.mode} needs a pivot")
    state = QuotientState.initial(instance)
    bad = 0
    for index, move in enumerate(solution.moves):
        problem = _move_legal_for_mode(state, move, solution.mode, pivot)
        if problem is not None:
            return ValidationReport(False, len(solution.moves), None, index, problem)
        played = effective_set(state, move)
        if pivot is not None and pivot not in played:
            bad += 1
        if isinstance(move, Move):
            state = apply_move(state, move)
        else:
            state = apply_set_move(state, move, pivot)
    if not is_flooded(state):
        return ValidationReport(False, len(solution.moves), None, None,
                                "final coloring is not constant")
    return ValidationReport(True, len(solution.moves),
                            bad if pivot is not None else None)


def replay(instance, solution, pivot=None):
    """Replay a solution assumed valid; returns the final QuotientState."""
    if pivot is None:
        pivot = instance.pivot
    state = QuotientState.initial(instance)
    for move in solution.moves:
        if isinstance(move, Move):
            state = apply_move(state, move)
        else:
            state = apply_set_move(state, move, pivot)
    return state
