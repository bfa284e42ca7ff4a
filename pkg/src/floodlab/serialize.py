"""JSON wire formats for instances and solutions.

Instance format: {"vertices": n, "edges": [[a,b],...], "colors": [c1..cn],
"pivot": p?} or the grid shorthand {"grid": ["121","212",...], "pivot": p?}
expanded row-major with 4-neighbor adjacency.  Sparse palettes are renumbered
to dense 1..c_max and the mapping is reported.
"""

from __future__ import annotations

import hashlib
import json

from .core import ColoredInstance, InputError, Move, SetMove, Solution, MODES

_GRID_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


class MalformedJSONError(InputError):
    code = "malformed-json"


class AsymmetricEdgeError(InputError):
    code = "asymmetric-edge"


class ColorRangeError(InputError):
    code = "color-range"


def _grid_to_graph(rows):
    if not rows or any(not isinstance(r, str) or not r for r in rows):
        raise MalformedJSONError("grid must be a nonempty list of nonempty strings")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise MalformedJSONError("grid rows must share one width")
    height = len(rows)
    colors = []
    for r in rows:
        for ch in r.lower():
            if ch not in _GRID_DIGITS or ch == "0":
                raise ColorRangeError(f"grid cell {ch!r} is not a color digit/letter")
            colors.append(_GRID_DIGITS.index(ch))
    edges = []
    for i in range(height):
        for j in range(width):
            v = i * width + j
            if j + 1 < width:
                edges.append((v, v + 1))
            if i + 1 < height:
                edges.append((v, v + width))
    return height * width, edges, colors


def load_instance(obj):
    """Build a validated instance from a decoded JSON object.

    Returns (instance, color_map) where color_map maps each original color id
    to its dense 1-based id.
    """
    if not isinstance(obj, dict):
        raise MalformedJSONError("instance JSON must be an object")
    pivot = obj.get("pivot")
    if pivot is not None and not isinstance(pivot, int):
        raise MalformedJSONError("pivot must be an integer vertex id")
    if "grid" in obj:
        n, edges, raw_colors = _grid_to_graph(obj["grid"])
    else:
        try:
            n = obj["vertices"]
            edges = obj.get("edges", [])
            raw_colors = obj["colors"]
        except KeyError as exc:
            raise MalformedJSONError(f"missing instance field {exc}") from None
        if not isinstance(n, int) or n < 0:
            raise MalformedJSONError("vertices must be a nonnegative integer")
        if not isinstance(raw_colors, list) or len(raw_colors) != n:
            raise MalformedJSONError("colors must list one color per vertex")
        for e in edges:
            if (not isinstance(e, (list, tuple)) or len(e) != 2
                    or not all(isinstance(x, int) for x in e)):
                raise MalformedJSONError(f"edge {e!r} is not a vertex pair")
    for c in raw_colors:
        if not isinstance(c, int) or c < 1:
            raise ColorRangeError(f"color {c!r} is not a positive integer")

    adjacency = [set() for _ in range(n)]
    for a, b in edges:
        if not (0 <= a < n and 0 <= b < n):
            raise MalformedJSONError(f"edge [{a},{b}] references a missing vertex")
        if a == b:
            raise AsymmetricEdgeError(f"self-loop [{a},{b}] is not allowed")
        adjacency[a].add(b)
        adjacency[b].add(a)

    palette = sorted(set(raw_colors))
    color_map = {c: i + 1 for i, c in enumerate(palette)}
    coloring = tuple(color_map[c] for c in raw_colors)
    c_max = len(palette) if palette else 1
    try:
        instance = ColoredInstance(n, tuple(tuple(sorted(s)) for s in adjacency),
                                   coloring, c_max, pivot)
    except InputError:
        raise
    return instance, color_map


def parse_instance(data):
    """Parse instance bytes/str; grid shorthand expands row-major with
    4-neighbor adjacency."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedJSONError(f"invalid JSON: {exc}") from None
    instance, _ = load_instance(obj)
    return instance


def dump_instance(instance):
    obj = {
        "vertices": instance.vertex_count,
        "edges": [[a, b] for a, b in instance.edges()],
        "colors": list(instance.coloring),
    }
    if instance.pivot is not None:
        obj["pivot"] = instance.pivot
    return obj


def load_solution(obj):
    if not isinstance(obj, dict):
        raise MalformedJSONError("solution JSON must be an object")
    mode = obj.get("mode")
    if mode not in MODES:
        raise MalformedJSONError(f"mode must be one of {MODES}, got {mode!r}")
    moves = []
    for raw in obj.get("moves", []):
        if not isinstance(raw, dict) or "c" not in raw:
            raise MalformedJSONError(f"move {raw!r} needs a color field 'c'")
        if "v" in raw:
            moves.append(Move(raw["v"], raw["c"]))
        elif "set" in raw:
            moves.append(SetMove(frozenset(raw["set"]), raw["c"]))
        else:
            raise MalformedJSONError(f"move {raw!r} needs 'v' or 'set'")
    return Solution(mode, moves, obj.get("bad_move_count"))


def dump_solution(solution):
    moves = []
    for mv in solution.moves:
        if isinstance(mv, Move):
            moves.append({"v": mv.vertex, "c": mv.color})
        else:
            moves.append({"set": sorted(mv.vertices), "c": mv.color})
    obj = {"mode": solution.mode, "moves": moves}
    if solution.bad_move_count is not None:
        obj["bad_move_count"] = solution.bad_move_count
    return obj


def parse_solution(data):
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedJSONError(f"invalid JSON: {exc}") from None
    return load_solution(obj)


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def instance_digest(instance):
    return hashlib.sha256(canonical_json(dump_instance(instance)).encode()).hexdigest()
