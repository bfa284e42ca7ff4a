import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from floodlab.core import ColoredInstance


def path_instance(colors, pivot=None, c_max=None):
    n = len(colors)
    adjacency = tuple(
        tuple(sorted(u for u in (v - 1, v + 1) if 0 <= u < n)) for v in range(n))
    return ColoredInstance(n, adjacency, tuple(colors),
                           c_max or max(colors), pivot)


def cycle_instance(colors, pivot=None):
    n = len(colors)
    adjacency = tuple(
        tuple(sorted({(v - 1) % n, (v + 1) % n})) for v in range(n))
    return ColoredInstance(n, adjacency, tuple(colors), max(colors), pivot)


def star_instance(center_color, leaf_colors, pivot=None):
    n = 1 + len(leaf_colors)
    adjacency = [tuple(range(1, n))] + [(0,)] * len(leaf_colors)
    colors = (center_color,) + tuple(leaf_colors)
    return ColoredInstance(n, tuple(adjacency), colors, max(colors), pivot)


def complete_instance(colors, pivot=None):
    n = len(colors)
    adjacency = tuple(
        tuple(u for u in range(n) if u != v) for v in range(n))
    return ColoredInstance(n, adjacency, tuple(colors), max(colors), pivot)
