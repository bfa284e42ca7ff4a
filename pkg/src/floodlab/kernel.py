"""Twin partitions and the two safe vertex-removal reduction rules.

Rule TT removes one of two same-colored true twins; rule FT removes a vertex
from a same-colored false-twin class once it reaches nd(G) + c_max members.
Exhaustive application yields a kernel of at most
nd * c_max * (nd + c_max - 1) vertices.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .core import ColoredInstance, InputError, Move, Solution, validate_sequence


@dataclass(frozen=True)
class TwinPartition:
    """Partition of V into maximal twin classes; nd is the class count."""

    classes: tuple[tuple[int, ...], ...]
    kinds: tuple[str, ...]  # per class: true-twin | false-twin | singleton

    @property
    def nd(self):
        return len(self.classes)


def twin_partition(instance):
    """Group vertices by equal open or closed neighborhoods.

    Twinhood (N(u)=N(v) or N[u]=N[v]) is an equivalence relation and a class
    never mixes the two kinds, so grouping by both signatures and merging
    gives the unique minimal partition.
    """
    n = instance.vertex_count
    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    open_sig = {}
    closed_sig = {}
    for v in range(n):
        nbrs = instance.adjacency[v]
        open_sig.setdefault(frozenset(nbrs), []).append(v)
        closed_sig.setdefault(frozenset(nbrs) | {v}, []).append(v)
    for group in list(open_sig.values()) + list(closed_sig.values()):
        for v in group[1:]:
            union(group[0], v)

    by_root = {}
    for v in range(n):
        by_root.setdefault(find(v), []).append(v)
    classes = sorted((tuple(sorted(g)) for g in by_root.values()), key=lambda c: c[0])
    kinds = []
    for cls in classes:
        if len(cls) == 1:
            kinds.append("singleton")
        elif cls[1] in instance.adjacency[cls[0]]:
            kinds.append("true-twin")
        else:
            kinds.append("false-twin")
    return TwinPartition(tuple(classes), tuple(kinds))


def _remove_vertex(instance, victim):
    """Drop a vertex, compacting ids: every id above the victim shifts down."""
    n = instance.vertex_count

    def shift(v):
        return v - 1 if v > victim else v

    adjacency = tuple(
        tuple(shift(u) for u in instance.adjacency[v] if u != victim)
        for v in range(n) if v != victim)
    coloring = tuple(c for v, c in enumerate(instance.coloring) if v != victim)
    pivot = instance.pivot
    if pivot is not None:
        pivot = None if pivot == victim else shift(pivot)
    c_max = max(coloring) if coloring else 1
    return ColoredInstance(n - 1, adjacency, coloring, c_max, pivot)


def _rule_tt_verbose(instance):
    partition = twin_partition(instance)
    best = None
    for cls, kind in zip(partition.classes, partition.kinds):
        if kind != "true-twin":
            continue
        per_color = {}
        for v in cls:
            per_color.setdefault(instance.coloring[v], []).append(v)
        for group in per_color.values():
            if len(group) >= 2:
                candidate = min(group)
                if best is None or candidate < best:
                    best = candidate
    if best is None:
        return instance, False, None
    return _remove_vertex(instance, best), True, best


def rule_tt(instance):
    """Remove the smallest vertex that has a same-colored true twin;
    returns (instance, applied)."""
    reduced, applied, _ = _rule_tt_verbose(instance)
    return reduced, applied


def _rule_ft_verbose(instance):
    partition = twin_partition(instance)
    nd = partition.nd
    c_max = len(set(instance.coloring))
    threshold = nd + c_max
    best = None
    for cls, kind in zip(partition.classes, partition.kinds):
        if kind != "false-twin":
            continue
        per_color = {}
        for v in cls:
            per_color.setdefault(instance.coloring[v], []).append(v)
        for group in per_color.values():
            if len(group) >= threshold:
                candidate = min(group)
                if best is None or candidate < best:
                    best = candidate
    if best is None:
        return instance, False, None
    return _remove_vertex(instance, best), True, best


def rule_ft(instance):
    """Remove the smallest vertex of a same-colored false-twin class with at
    least nd(G) + c_max members, both measured on the current graph;
    returns (instance, applied)."""
    reduced, applied, _ = _rule_ft_verbose(instance)
    return reduced, applied


def graph_hash(instance):
    payload = json.dumps(
        {"vertices": instance.vertex_count,
         "edges": sorted(instance.edges()),
         "colors": list(instance.coloring)},
        separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class KernelResult:
    kernel: ColoredInstance
    trace: tuple[dict, ...]


def kernelize(instance):
    """Apply TT to a fixpoint, then FT, looping until neither applies.

    The certificate |V| <= nd * c_max * (nd + c_max - 1), with nd and c_max
    measured on the kernel, is checked before returning.
    """
    trace = []
    current = instance
    while True:
        applied_any = False
        while True:
            current, applied, removed = _rule_tt_verbose(current)
            if not applied:
                break
            applied_any = True
            trace.append({"rule": "TT", "removed": removed, "hash": graph_hash(current)})
        current, applied, removed = _rule_ft_verbose(current)
        if applied:
            applied_any = True
            trace.append({"rule": "FT", "removed": removed, "hash": graph_hash(current)})
        if not applied_any:
            break
    nd = twin_partition(current).nd
    c_max = len(set(current.coloring)) if current.vertex_count else 1
    bound = nd * c_max * (nd + c_max - 1)
    if current.vertex_count > bound:
        raise AssertionError(
            f"kernel has {current.vertex_count} vertices, certificate allows {bound}")
    return KernelResult(current, tuple(trace))


def check_unplayed_twin_lemma(instance, x, y, moves):
    """True iff a plain-move sequence avoiding the same-colored false twins
    x and y floods the graph exactly when it floods the graph minus x."""
    n = instance.vertex_count
    if not (0 <= x < n and 0 <= y < n) or x == y:
        raise InputError("x and y must be distinct valid vertices")
    nx = frozenset(instance.adjacency[x])
    ny = frozenset(instance.adjacency[y])
    if nx != ny or y in instance.adjacency[x]:
        raise InputError(f"vertices {x} and {y} are not false twins")
    if instance.coloring[x] != instance.coloring[y]:
        raise InputError(f"vertices {x} and {y} do not share a color")
    for mv in moves:
        if mv.vertex in (x, y):
            raise InputError(f"sequence plays the twin vertex {mv.vertex}")

    def shift(v):
        return v - 1 if v > x else v

    full = Solution("free", moves)
    reduced_instance = _remove_vertex(instance, x)
    reduced = Solution("free", [Move(shift(mv.vertex), mv.color) for mv in moves])
    on_full = validate_sequence(instance, full).valid
    on_reduced = validate_sequence(reduced_instance, reduced).valid
    return on_full == on_reduced
