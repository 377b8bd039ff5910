"""Finite simple graphs with string-labelled vertices.

Vertices keep their declaration order; internally every vertex has a dense
index and adjacency is stored as one integer bitmask per vertex.  The bitmask
helpers at the bottom of this module (``_components_of_mask`` and friends) are
shared by the search and recursion code in the other modules.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


class GraphError(ValueError):
    """Raised for invalid graph construction or malformed graph files."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class SimpleGraph:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)
    _adj: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, vertices: Iterable[str], edges: Iterable[Sequence[str]] = ()):
        verts = tuple(str(v) for v in vertices)
        index: dict[str, int] = {}
        for v in verts:
            if v in index:
                raise GraphError(f"duplicate vertex {v!r}")
            index[v] = len(index)
        adj = [0] * len(verts)
        edge_set = set()
        for e in edges:
            u, v = tuple(e)
            if u == v:
                raise GraphError(f"loop edge at {u!r}")
            if u not in index or v not in index:
                missing = u if u not in index else v
                raise GraphError(f"edge endpoint {missing!r} is not a declared vertex")
            adj[index[u]] |= 1 << index[v]
            adj[index[v]] |= 1 << index[u]
            edge_set.add(frozenset((u, v)))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(edge_set))
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_adj", tuple(adj))

    @classmethod
    def _from_masks(cls, vertices: Sequence[str], adj: Sequence[int]) -> SimpleGraph:
        edges = [
            (vertices[i], vertices[j])
            for i in range(len(vertices))
            for j in _bits(adj[i])
            if i < j
        ]
        return cls(vertices, edges)

    # basic queries ------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def size(self) -> int:
        return len(self.edges)

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def has_edge(self, u: str, v: str) -> bool:
        return bool(self._adj[self.index(u)] >> self.index(v) & 1)

    def degree(self, v: str) -> int:
        return self._adj[self.index(v)].bit_count()

    def edge_list(self) -> list[tuple[str, str]]:
        """Edges as ``(u, v)`` pairs with ``u`` before ``v`` in vertex order, sorted by index."""
        pairs = []
        for i in range(self.order):
            for j in _bits(self._adj[i]):
                if i < j:
                    pairs.append((i, j))
        return [(self.vertices[i], self.vertices[j]) for i, j in pairs]

    def neighbors(self, v: str) -> list[str]:
        return [self.vertices[j] for j in _bits(self._adj[self.index(v)])]

    def mask_of(self, vs: Iterable[str]) -> int:
        mask = 0
        for v in vs:
            mask |= 1 << self.index(v)
        return mask

    def labels_of(self, mask: int) -> list[str]:
        return [self.vertices[i] for i in _bits(mask)]

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    # serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": sorted(sorted(e) for e in self.edge_list()),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_text(self) -> str:
        lines = ["vertices: " + " ".join(self.vertices)]
        lines.append("edges: " + "  ".join(f"{u} {v}" for u, v in self.edge_list()))
        return "\n".join(line.rstrip() for line in lines) + "\n"

    def relabel(self, mapping: dict[str, str]) -> SimpleGraph:
        return SimpleGraph(
            [mapping[v] for v in self.vertices],
            [(mapping[u], mapping[v]) for u, v in self.edge_list()],
        )


def graph_from_dict(data: dict) -> SimpleGraph:
    if not isinstance(data, dict) or "vertices" not in data:
        raise GraphError("graph JSON needs a 'vertices' list")
    edges = data.get("edges", [])
    for e in edges:
        if len(e) != 2:
            raise GraphError(f"edge {e!r} does not have two endpoints")
    return SimpleGraph(data["vertices"], edges)


_HEADER = re.compile(r"^\s*(vertices|edges)\s*:(.*)$")


def parse_graph(text: str) -> SimpleGraph:
    """Parse the ``vertices: ...`` / ``edges: ...`` text format.

    Vertex order is declaration order.  Each error carries the offending line
    number in ``GraphError.line``.
    """
    vertices: list[str] = []
    seen: dict[str, int] = {}
    edges: list[tuple[str, str, int]] = []
    got_vertices = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        match = _HEADER.match(line)
        if match is None:
            raise GraphError(f"malformed line {raw.strip()!r}", lineno)
        key, rest = match.group(1), match.group(2).split()
        if key == "vertices":
            got_vertices = True
            for v in rest:
                if v in seen:
                    raise GraphError(f"duplicate vertex {v!r}", lineno)
                seen[v] = lineno
                vertices.append(v)
        else:
            if len(rest) % 2:
                raise GraphError("edges line has an odd number of endpoints", lineno)
            for u, v in zip(rest[::2], rest[1::2]):
                if u == v:
                    raise GraphError(f"loop edge at {u!r}", lineno)
                edges.append((u, v, lineno))
    if not got_vertices:
        raise GraphError("missing 'vertices:' line")
    for u, v, lineno in edges:
        for x in (u, v):
            if x not in seen:
                raise GraphError(f"edge endpoint {x!r} is not a declared vertex", lineno)
    return SimpleGraph(vertices, [(u, v) for u, v, _ in edges])


def induced_subgraph(g: SimpleGraph, w: Iterable[str]) -> SimpleGraph:
    mask = g.mask_of(w)
    return _induced_from_mask(g, mask)


def _induced_from_mask(g: SimpleGraph, mask: int) -> SimpleGraph:
    keep = list(_bits(mask))
    pos = {old: new for new, old in enumerate(keep)}
    adj = []
    for old in keep:
        row = 0
        for j in _bits(g._adj[old] & mask):
            row |= 1 << pos[j]
        adj.append(row)
    return SimpleGraph._from_masks([g.vertices[i] for i in keep], adj)


def neighborhood(g: SimpleGraph, v: str, closed: bool = False) -> frozenset[str]:
    i = g.index(v)
    mask = g._adj[i] | ((1 << i) if closed else 0)
    return frozenset(g.labels_of(mask))


def connected_components(g: SimpleGraph) -> list[SimpleGraph]:
    return [_induced_from_mask(g, c) for c in _components_of_mask(g._adj, g.full_mask)]


def is_connected(g: SimpleGraph) -> bool:
    return g.order > 0 and len(_components_of_mask(g._adj, g.full_mask)) == 1


def is_forest(g: SimpleGraph) -> bool:
    return g.size == g.order - len(_components_of_mask(g._adj, g.full_mask))


# canonical form -------------------------------------------------------------


def canonical_key(g: SimpleGraph) -> bytes:
    """Exact isomorphism-invariant key.

    The key embeds the adjacency matrix of the graph under a canonical vertex
    order, so equal keys mean isomorphic graphs with no hashing involved.
    """
    return _canonical_key_masks(g._adj, g.full_mask)


def _canonical_key_masks(adj: Sequence[int], mask: int) -> bytes:
    verts = list(_bits(mask))
    k = len(verts)
    pos = {v: i for i, v in enumerate(verts)}
    local = [0] * k
    for v in verts:
        row = 0
        for u in _bits(adj[v] & mask):
            row |= 1 << pos[u]
        local[pos[v]] = row
    rows = _canonical_rows(local)
    width = max(1, (k + 7) // 8)
    return k.to_bytes(2, "big") + b"".join(r.to_bytes(width, "big") for r in rows)


def _canonical_rows(adj: list[int]) -> tuple[int, ...]:
    n = len(adj)
    if n == 0:
        return ()
    degrees = [a.bit_count() for a in adj]
    cells = _refine([sorted(range(n), key=lambda v: degrees[v])], adj, degrees)
    best: list = [None, None, None]  # rows, leaf order, path
    gens: list[list[int]] = []

    def leaf(order: list[int], path: list[int]) -> Optional[int]:
        where = {v: i for i, v in enumerate(order)}
        rows = []
        for v in order:
            row = 0
            for u in _bits(adj[v]):
                row |= 1 << (n - 1 - where[u])
            rows.append(row)
        cand = tuple(rows)
        if best[0] is None or cand > best[0]:
            best[:] = [cand, order, list(path)]
            return None
        if cand == best[0]:
            # the two leaves differ by an automorphism fixing their common prefix;
            # everything left below the point where the paths split is its image
            gamma = [0] * n
            for a, b in zip(best[1], order):
                gamma[a] = b
            gens.append(gamma)
            common = 0
            for a, b in zip(best[2], path):
                if a != b:
                    break
                common += 1
            return common
        return None

    def orbit_root(path: list[int]) -> list[int]:
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gamma in gens:
            if all(gamma[p] == p for p in path):
                for x in range(n):
                    a, b = find(x), find(gamma[x])
                    if a != b:
                        parent[a] = b
        return [find(x) for x in range(n)]

    def search(cells: list[list[int]], path: list[int]) -> Optional[int]:
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            return leaf([c[0] for c in cells], path)
        reps: list[int] = []
        for v in cells[target]:
            if any(_twins(adj, v, r) for r in reps):
                continue
            if reps:
                root = orbit_root(path)
                if any(root[v] == root[r] for r in reps):
                    continue
            reps.append(v)
            rest = [u for u in cells[target] if u != v]
            split = cells[:target] + [[v], rest] + cells[target + 1:]
            jump = search(_refine(split, adj, degrees), path + [v])
            if jump is not None and jump < len(path):
                return jump
        return None

    search(cells, [])
    assert best[0] is not None
    return best[0]


def _twins(adj: list[int], u: int, v: int) -> bool:
    mu, mv = 1 << u, 1 << v
    return (adj[u] & ~mv) == (adj[v] & ~mu)


def _refine(cells: list[list[int]], adj: list[int], degrees: list[int]) -> list[list[int]]:
    # Equitable refinement: split cells by neighbour counts into every cell.
    # The splitting only looks at cell positions and counts, so it commutes
    # with relabelling.
    while True:
        cell_masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            cell_masks.append(m)
        new_cells: list[list[int]] = []
        for c in cells:
            if len(c) == 1:
                new_cells.append(c)
                continue
            sig = {v: tuple((adj[v] & cm).bit_count() for cm in cell_masks) for v in c}
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                groups.setdefault(sig[v], []).append(v)
            for key in sorted(groups):
                new_cells.append(groups[key])
        if len(new_cells) == len(cells):
            return new_cells
        cells = new_cells


# bitmask helpers ------------------------------------------------------------


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _components_of_mask(adj: Sequence[int], mask: int) -> list[int]:
    """Connected components of the subgraph induced on ``mask``, ordered by least vertex."""
    comps = []
    remaining = mask
    while remaining:
        low = remaining & -remaining
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj[v]
            nxt &= mask & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        remaining &= ~comp
    return comps
