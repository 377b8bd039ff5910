"""Exact combinatorial invariants by branch and bound.

``matching_number``, ``induced_matching_number`` and ``independence_number``
are all maximum independent sets of a conflict graph (edges sharing a vertex,
edges sharing a vertex or joined by an edge, adjacent vertices).  The
independence domination number i(G) is a separate minimisation.

Witnesses are the lexicographically least optimal sets in vertex/edge index
order: after the optimum is known each element is tried in turn and kept if
an optimal solution extending the current choice still exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph_core import SimpleGraph, _bits


@dataclass(frozen=True)
class WitnessedValue:
    value: int
    witness: tuple

    def to_dict(self) -> dict:
        return {"value": self.value, "witness": [list(w) if isinstance(w, tuple) else w for w in self.witness]}


# maximum independent set on a bitmask conflict graph ----------------------


def _max_independent(conf: Sequence[int], cand: int, floor: int = -1) -> int:
    """Size of a maximum independent set of ``conf`` inside ``cand``.

    Returns a value ``<= floor`` (not necessarily exact) when no set larger
    than ``floor`` exists; callers use ``floor`` only to prune.
    """
    best = floor

    def rec(cand: int, size: int) -> None:
        nonlocal best
        # Forced moves: a vertex with at most one neighbour in cand is in some
        # maximum independent set.
        while cand:
            picked = False
            for v in _bits(cand):
                if (conf[v] & cand).bit_count() <= 1:
                    cand &= ~(conf[v] | (1 << v))
                    size += 1
                    picked = True
                    break
            if not picked:
                break
        if not cand:
            if size > best:
                best = size
            return
        if size + cand.bit_count() <= best:
            return
        if size + _clique_cover_bound(conf, cand) <= best:
            return
        v = max(_bits(cand), key=lambda u: (conf[u] & cand).bit_count())
        rec(cand & ~(conf[v] | (1 << v)), size + 1)
        rec(cand & ~(1 << v), size)

    rec(cand, 0)
    return best


def _clique_cover_bound(conf: Sequence[int], cand: int) -> int:
    cliques: list[int] = []
    for v in _bits(cand):
        for k, c in enumerate(cliques):
            if c & ~conf[v] == 0:
                cliques[k] = c | (1 << v)
                break
        else:
            cliques.append(1 << v)
    return len(cliques)


def _lex_least_max_set(conf: Sequence[int]) -> tuple[int, list[int]]:
    n = len(conf)
    everything = (1 << n) - 1
    target = _max_independent(conf, everything)
    chosen: list[int] = []
    cand = everything
    size = 0
    for x in range(n):
        if size == target:
            break
        if not cand >> x & 1:
            continue
        later = cand & ~((1 << (x + 1)) - 1) & ~conf[x]
        if size + 1 + _max_independent(conf, later, target - size - 2) >= target:
            chosen.append(x)
            size += 1
            cand = later
        else:
            cand &= ~(1 << x)
    return target, chosen


# conflict graphs -----------------------------------------------------------


def _edge_pairs(g: SimpleGraph) -> list[tuple[int, int]]:
    return [(i, j) for i in range(g.order) for j in _bits(g._adj[i]) if i < j]


def _matching_conflicts(pairs: list[tuple[int, int]], adj: Sequence[int], induced: bool) -> list[int]:
    conf = [0] * len(pairs)
    for a, (i, j) in enumerate(pairs):
        reach = (1 << i) | (1 << j)
        if induced:
            reach |= adj[i] | adj[j]
        for b, (k, l) in enumerate(pairs):
            if a != b and (reach >> k & 1 or reach >> l & 1):
                conf[a] |= 1 << b
    return conf


def matching_number(g: SimpleGraph) -> WitnessedValue:
    pairs = _edge_pairs(g)
    value, chosen = _lex_least_max_set(_matching_conflicts(pairs, g._adj, induced=False))
    return WitnessedValue(value, tuple((g.vertices[pairs[k][0]], g.vertices[pairs[k][1]]) for k in chosen))


def induced_matching_number(g: SimpleGraph) -> WitnessedValue:
    pairs = _edge_pairs(g)
    value, chosen = _lex_least_max_set(_matching_conflicts(pairs, g._adj, induced=True))
    return WitnessedValue(value, tuple((g.vertices[pairs[k][0]], g.vertices[pairs[k][1]]) for k in chosen))


def independence_number(g: SimpleGraph) -> WitnessedValue:
    value, chosen = _lex_least_max_set(list(g._adj))
    return WitnessedValue(value, tuple(g.vertices[k] for k in chosen))


def _alpha_masks(adj: Sequence[int], mask: int) -> int:
    """Independence number of the subgraph induced on ``mask`` (value only)."""
    return max(_max_independent(adj, mask), 0)


# independence domination ---------------------------------------------------


def _min_independent_dominating(adj: Sequence[int], n: int, forced: int, forbidden: int, ceiling: int) -> int:
    """Minimum size of an independent dominating set containing ``forced`` and
    avoiding ``forbidden``; a value ``>= ceiling`` means none smaller exists."""
    everything = (1 << n) - 1
    closed = [adj[v] | (1 << v) for v in range(n)]
    if any(adj[v] & forced for v in _bits(forced)):
        return ceiling
    dominated = 0
    for v in _bits(forced):
        dominated |= closed[v]
    avail = everything & ~dominated & ~forbidden
    best = ceiling

    def rec(size: int, dominated: int, avail: int) -> None:
        nonlocal best
        undominated = everything & ~dominated
        if not undominated:
            if size < best:
                best = size
            return
        if size + 1 >= best:
            return
        options = None
        for u in _bits(undominated):
            opts = closed[u] & avail
            if not opts:
                return
            if options is None or opts.bit_count() < options.bit_count():
                options = opts
                if opts.bit_count() == 1:
                    break
        reach = max((closed[c] & undominated).bit_count() for c in _bits(avail))
        need = -(-undominated.bit_count() // reach)
        if size + need >= best:
            return
        for c in _bits(options):
            rec(size + 1, dominated | closed[c], avail & ~closed[c])
            avail &= ~(1 << c)

    rec(forced.bit_count(), dominated, avail)
    return best


def independence_domination(g: SimpleGraph) -> WitnessedValue:
    """i(G): least size of an independent set A with A ∪ N(A) = V(G).

    Isolated vertices end up in A automatically since only they dominate
    themselves.
    """
    n = g.order
    adj = g._adj
    ceiling = n + 1
    target = _min_independent_dominating(adj, n, 0, 0, ceiling)
    forced = forbidden = 0
    for x in range(n):
        if forced.bit_count() == target:
            break
        if forced >> x & 1 or any(adj[x] >> v & 1 for v in _bits(forced)):
            continue
        trial = _min_independent_dominating(adj, n, forced | (1 << x), forbidden, target + 1)
        if trial == target:
            forced |= 1 << x
        else:
            forbidden |= 1 << x
    return WitnessedValue(target, tuple(g.vertices[k] for k in _bits(forced)))


# witness checks -------------------------------------------------------------


def is_matching(g: SimpleGraph, edges: Sequence[Sequence[str]]) -> bool:
    used: set[str] = set()
    for u, v in edges:
        if not g.has_edge(u, v) or u in used or v in used:
            return False
        used.update((u, v))
    return True


def is_induced_matching(g: SimpleGraph, edges: Sequence[Sequence[str]]) -> bool:
    if not is_matching(g, edges):
        return False
    for a in range(len(edges)):
        for b in range(a + 1, len(edges)):
            if any(g.has_edge(x, y) for x in edges[a] for y in edges[b]):
                return False
    return True


def is_independent(g: SimpleGraph, vs: Sequence[str]) -> bool:
    vs = list(vs)
    return all(not g.has_edge(vs[a], vs[b]) for a in range(len(vs)) for b in range(a + 1, len(vs)))


def is_independent_dominating(g: SimpleGraph, vs: Sequence[str]) -> bool:
    if not is_independent(g, vs):
        return False
    covered = set(vs)
    for v in vs:
        covered.update(g.neighbors(v))
    return covered == set(g.vertices)
