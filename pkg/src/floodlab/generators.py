"""Seeded instance generators; an identical spec yields a bit-identical
instance."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .core import ColoredInstance, InputError
from .reductions import MCSCInstance, mcsc_to_floodit, tight_path, \
    find_nonmonotone_witness

KINDS = ("grid", "random-graph", "tight-path", "reduction", "witness")


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown generator kind {self.kind!r}")

    @staticmethod
    def from_json(obj):
        if not isinstance(obj, dict) or "kind" not in obj:
            raise InputError("generator spec needs a 'kind' field")
        params = {k: v for k, v in obj.items() if k not in ("kind", "seed")}
        return GeneratorSpec(obj["kind"], params, obj.get("seed", 0))


def random_grid(rows, cols, colors, seed):
    if rows < 1 or cols < 1 or colors < 1:
        raise InputError("grid needs positive dimensions and colors")
    rng = random.Random(seed)
    cells = [[str(rng.randint(1, colors)) for _ in range(cols)] for _ in range(rows)]
    return ["".join(row) for row in cells]


def random_connected_graph(n, colors, seed, extra_edge_prob=0.35, pivot=None):
    """Random spanning tree plus extra edges, randomly colored."""
    if n < 1 or colors < 1:
        raise InputError("need positive vertex and color counts")
    rng = random.Random(seed)
    adjacency = [set() for _ in range(n)]
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        other = order[rng.randrange(i)]
        adjacency[order[i]].add(other)
        adjacency[other].add(order[i])
    for a in range(n):
        for b in range(a + 1, n):
            if b not in adjacency[a] and rng.random() < extra_edge_prob:
                adjacency[a].add(b)
                adjacency[b].add(a)
    raw = [rng.randint(1, colors) for _ in range(n)]
    dense = {c: i + 1 for i, c in enumerate(sorted(set(raw)))}
    coloring = tuple(dense[c] for c in raw)
    return ColoredInstance(n, tuple(tuple(sorted(s)) for s in adjacency),
                           coloring, len(dense), pivot)


def random_mcsc(k, universe, sets_per_collection, seed):
    rng = random.Random(seed)
    collections = []
    for _ in range(k):
        coll = []
        for _ in range(sets_per_collection):
            size = rng.randint(1, max(1, universe))
            coll.append(frozenset(rng.sample(range(universe), size)))
        collections.append(tuple(coll))
    return MCSCInstance(universe, tuple(collections))


def build(spec):
    """Materialize a GeneratorSpec; returns (instance, sidecar-or-None)."""
    p = spec.params
    if spec.kind == "grid":
        rows = random_grid(p.get("rows", 4), p.get("cols", 4),
                           p.get("colors", 3), spec.seed)
        from .serialize import load_instance
        obj = {"grid": rows}
        if "pivot" in p:
            obj["pivot"] = p["pivot"]
        instance, _ = load_instance(obj)
        return instance, {"grid": rows}
    if spec.kind == "random-graph":
        instance = random_connected_graph(
            p.get("n", 8), p.get("colors", 3), spec.seed,
            p.get("extra_edge_prob", 0.35), p.get("pivot"))
        return instance, None
    if spec.kind == "tight-path":
        return tight_path(p.get("n", 2)), None
    if spec.kind == "reduction":
        if "collections" in p:
            mcsc = MCSCInstance(p["universe"], tuple(
                tuple(frozenset(s) for s in coll) for coll in p["collections"]))
        else:
            mcsc = random_mcsc(p.get("k", 2), p.get("universe", 3),
                               p.get("sets_per_collection", 2), spec.seed)
        instance, layout = mcsc_to_floodit(mcsc, p.get("padding"))
        sidecar = {"layout": layout.to_json(),
                   "mcsc": {"universe": mcsc.universe_size,
                            "collections": [[sorted(s) for s in coll]
                                            for coll in mcsc.collections]}}
        return instance, sidecar
    if spec.kind == "witness":
        result = find_nonmonotone_witness(p.get("max_path_len", 8))
        if not result.found:
            raise InputError("no non-monotone witness within the requested range")
        sidecar = {"move": {"v": result.move.vertex, "c": result.move.color},
                   "opt_before": result.opt_before,
                   "opt_after": result.opt_after}
        return result.instance, sidecar
    raise InputError(f"unknown generator kind {spec.kind!r}")
