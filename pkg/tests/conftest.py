from __future__ import annotations

import itertools
import sys

from hypothesis import strategies as st

from edgeideal.graph_core import SimpleGraph


def make_graph(n: int, edges) -> SimpleGraph:
    names = [f"x{i}" for i in range(n)]
    return SimpleGraph(names, [(names[a], names[b]) for a, b in edges])


def path(*names: str) -> SimpleGraph:
    return SimpleGraph(names, list(zip(names, names[1:])))


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 8) -> SimpleGraph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return make_graph(n, [p for p, keep in zip(pairs, chosen) if keep])


@st.composite
def relabelled(draw, g: SimpleGraph) -> SimpleGraph:
    perm = draw(st.permutations(list(g.vertices)))
    return g.relabel(dict(zip(g.vertices, perm)))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "LINES", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
