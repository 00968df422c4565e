"""Graphs shipped with the package (``edgereg/data/*.edges``)."""

from __future__ import annotations

import os
from importlib import resources

from .combinatorics import VwcLabeling
from .graph import Graph, parse_graph

FIXTURE_NAMES = ("c4", "c5", "g_ex", "g_b", "nine", "w_c4")

DESCRIPTIONS = {
    "c4": "4-cycle",
    "c5": "5-cycle",
    "g_ex": "very well-covered graph on x1..x4, y1..y4 whose colon by x1x2 has squares",
    "g_b": "bipartite very well-covered graph, matching plus x1y2, x1y3, x2y3",
    "nine": "9-vertex well-covered graph that is not very well-covered",
    "w_c4": "whiskered 4-cycle",
}


def fixture_text(name: str) -> str:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
    return resources.files("edgereg").joinpath("data", f"{name}.edges").read_text(encoding="utf-8")


def fixture(name: str) -> Graph:
    return parse_graph(fixture_text(name))


def paired_labeling(h: int) -> VwcLabeling:
    """The labeling ``(x_i, y_i)`` used by the x/y-named fixtures."""
    return VwcLabeling(tuple((f"x{i}", f"y{i}") for i in range(1, h + 1)))


def write_fixtures(directory: str) -> list[str]:
    """Copy every fixture to ``directory`` as ``<name>.edges``; returns the paths."""
    from .io import atomic_write

    os.makedirs(directory, exist_ok=True)
    paths = []
    for name in FIXTURE_NAMES:
        path = os.path.join(directory, f"{name}.edges")
        atomic_write(path, fixture_text(name))
        paths.append(path)
    return paths
