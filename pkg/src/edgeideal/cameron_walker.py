"""Cameron–Walker graphs in normal form.

A Cameron–Walker graph is described by a connected bipartite core on
v_1..v_m and w_1..w_n, s_i >= 1 leaves hanging at each v_i and t_j >= 0
pendant triangles at each w_j.  Vertex labels produced by ``build_cw``:

    v{i}, w{j}, x{i}_{k}        (leaf k at v_i)
    y{j}_{l}_1, y{j}_{l}_2      (triangle l at w_j)

A w_j with t_j = 0 and a single core neighbour is indistinguishable from a
leaf of that neighbour.  ``normalize_cw`` rewrites such w's as leaves, and
``recognize_cw`` always returns that normal form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .graph_core import SimpleGraph, _bits, _components_of_mask, is_connected
from .invariants import induced_matching_number, matching_number


class CWError(ValueError):
    pass


@dataclass(frozen=True)
class CWStructure:
    m: int
    n: int
    s: tuple[int, ...]
    t: tuple[int, ...]
    bip: frozenset[tuple[int, int]]

    def __init__(self, m: int, n: int, s, t, bip):
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "s", tuple(int(x) for x in s))
        object.__setattr__(self, "t", tuple(int(x) for x in t))
        object.__setattr__(self, "bip", frozenset((int(i), int(j)) for i, j in bip))

    def validate(self, allow_star: bool = False) -> None:
        if self.m < 1 or self.n < 1:
            raise CWError("need m >= 1 and n >= 1")
        if len(self.s) != self.m or len(self.t) != self.n:
            raise CWError("s must have m entries and t must have n entries")
        if any(x < 1 for x in self.s):
            raise CWError("every s_i must be >= 1")
        if any(x < 0 for x in self.t):
            raise CWError("every t_j must be >= 0")
        for i, j in self.bip:
            if not (1 <= i <= self.m and 1 <= j <= self.n):
                raise CWError(f"bipartite edge ({i}, {j}) out of range")
        if not self._bip_connected():
            raise CWError("bipartite part is disconnected")
        if self.is_star() and not allow_star:
            raise CWError("m = 1 with no triangles is a star graph, not Cameron-Walker")

    def _bip_connected(self) -> bool:
        # vertices 0..m-1 are v's, m..m+n-1 are w's
        adj = [0] * (self.m + self.n)
        for i, j in self.bip:
            a, b = i - 1, self.m + j - 1
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return len(_components_of_mask(adj, (1 << (self.m + self.n)) - 1)) == 1

    def is_star(self) -> bool:
        return self.m == 1 and all(x == 0 for x in self.t)

    @property
    def order(self) -> int:
        return self.m + self.n + sum(self.s) + 2 * sum(self.t)

    def w_neighbors(self, j: int) -> frozenset[int]:
        """N_{G_bip}(w_j) as a set of v indices."""
        return frozenset(i for i, jj in self.bip if jj == j)

    def is_complete_bipartite(self) -> bool:
        return len(self.bip) == self.m * self.n

    def to_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "s": list(self.s), "t": list(self.t), "bip": sorted([list(e) for e in self.bip])}

    @classmethod
    def from_dict(cls, data: dict) -> CWStructure:
        try:
            return cls(data["m"], data["n"], data["s"], data["t"], [tuple(e) for e in data["bip"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise CWError(f"malformed Cameron-Walker spec: {exc}") from None


def v_label(i: int) -> str:
    return f"v{i}"


def w_label(j: int) -> str:
    return f"w{j}"


def x_label(i: int, k: int) -> str:
    return f"x{i}_{k}"


def y_label(j: int, l: int, side: int) -> str:
    return f"y{j}_{l}_{side}"


def build_cw(spec: CWStructure, allow_star: bool = False) -> SimpleGraph:
    spec.validate(allow_star=allow_star)
    vertices = [x_label(i, k) for i in range(1, spec.m + 1) for k in range(1, spec.s[i - 1] + 1)]
    vertices += [v_label(i) for i in range(1, spec.m + 1)]
    vertices += [w_label(j) for j in range(1, spec.n + 1)]
    vertices += [
        y_label(j, l, side)
        for j in range(1, spec.n + 1)
        for l in range(1, spec.t[j - 1] + 1)
        for side in (1, 2)
    ]
    edges = [(v_label(i), w_label(j)) for i, j in sorted(spec.bip)]
    edges += [(v_label(i), x_label(i, k)) for i in range(1, spec.m + 1) for k in range(1, spec.s[i - 1] + 1)]
    for j in range(1, spec.n + 1):
        for l in range(1, spec.t[j - 1] + 1):
            a, b = y_label(j, l, 1), y_label(j, l, 2)
            edges += [(w_label(j), a), (w_label(j), b), (a, b)]
    return SimpleGraph(vertices, edges)


def normalize_cw(spec: CWStructure) -> CWStructure:
    """Rewrite every w_j with t_j = 0 and one core neighbour as a leaf of that neighbour."""
    s = list(spec.s)
    keep = []
    for j in range(1, spec.n + 1):
        nbrs = spec.w_neighbors(j)
        if spec.t[j - 1] == 0 and len(nbrs) == 1:
            (i,) = nbrs
            s[i - 1] += 1
        else:
            keep.append(j)
    renum = {j: k + 1 for k, j in enumerate(keep)}
    bip = [(i, renum[j]) for i, j in spec.bip if j in renum]
    return CWStructure(spec.m, len(keep), s, [spec.t[j - 1] for j in keep], bip)


# recognition ----------------------------------------------------------------


@dataclass(frozen=True)
class CWRecognition:
    """Outcome of ``recognize_cw``.

    ``tag`` is "cameron_walker", "star", "star_triangle" or None.  For a
    structure, ``labels`` maps each ``build_cw`` label to the vertex of the
    input graph playing that role.
    """

    tag: Optional[str]
    structure: Optional[CWStructure] = None
    labels: dict[str, str] = field(default_factory=dict)
    reason: str = ""

    def to_dict(self) -> dict:
        d: dict = {"tag": self.tag}
        if self.structure is not None:
            d["structure"] = self.structure.to_dict()
            d["labels"] = dict(self.labels)
        if self.reason:
            d["reason"] = self.reason
        return d


def recognize_cw(g: SimpleGraph, include_star_as_cw: bool = False) -> CWRecognition:
    if g.size == 0 or not is_connected(g):
        return CWRecognition(None, reason="not a connected graph with edges")
    if induced_matching_number(g).value != matching_number(g).value:
        return CWRecognition(None, reason="im(G) < m(G)")
    n = g.order
    adj = g._adj
    deg = [a.bit_count() for a in adj]
    centers = [v for v in range(n) if deg[v] == n - 1]

    if g.size == n - 1 and centers:
        c = centers[0]
        if include_star_as_cw and n >= 3:
            others = [v for v in range(n) if v != c]
            w, leaves = others[-1], others[:-1]
            labels = {v_label(1): g.vertices[c], w_label(1): g.vertices[w]}
            labels.update({x_label(1, k + 1): g.vertices[x] for k, x in enumerate(leaves)})
            return CWRecognition("star", CWStructure(1, 1, [len(leaves)], [0], [(1, 1)]), labels)
        return CWRecognition("star")
    if centers and n % 2 == 1 and all(deg[v] == 2 for v in range(n) if v != centers[0]):
        return CWRecognition("star_triangle")

    leaves = [v for v in range(n) if deg[v] == 1]
    triangles: dict[int, list[tuple[int, int]]] = {}
    in_triangle = 0
    for a in range(n):
        if deg[a] != 2 or in_triangle >> a & 1:
            continue
        for b in _bits(adj[a]):
            if b > a and deg[b] == 2:
                (apex,) = [x for x in _bits(adj[a]) if x != b]
                if adj[b] >> apex & 1 and deg[apex] > 2:
                    triangles.setdefault(apex, []).append((a, b))
                    in_triangle |= (1 << a) | (1 << b)
    leaf_mask = sum(1 << x for x in leaves)
    v_mask = 0
    for x in leaves:
        v_mask |= adj[x]
    core = ((1 << n) - 1) & ~leaf_mask & ~in_triangle
    w_mask = core & ~v_mask

    def fail(why: str) -> CWRecognition:
        return CWRecognition(None, reason=why)

    if v_mask & ~core or not v_mask or not w_mask:
        return fail("leaf/triangle decomposition does not give both core sides")
    if any(apex not in _bits(w_mask) for apex in triangles):
        return fail("pendant triangle at a leaf-bearing vertex")
    for v in _bits(v_mask):
        if adj[v] & v_mask or adj[v] & in_triangle:
            return fail("core is not bipartite between leaf-bearing and other vertices")
    for w in _bits(w_mask):
        if adj[w] & w_mask or adj[w] & leaf_mask:
            return fail("core is not bipartite between leaf-bearing and other vertices")
        if not adj[w] & v_mask:
            return fail("core vertex with no core neighbour")
    if len(_components_of_mask(adj, core)) != 1:
        return fail("core is disconnected")

    vs = list(_bits(v_mask))
    ws = list(_bits(w_mask))
    vpos = {v: i + 1 for i, v in enumerate(vs)}
    wpos = {w: j + 1 for j, w in enumerate(ws)}
    s = [(adj[v] & leaf_mask).bit_count() for v in vs]
    t = [len(triangles.get(w, [])) for w in ws]
    bip = [(vpos[v], wpos[w]) for v in vs for w in _bits(adj[v] & w_mask)]
    spec = CWStructure(len(vs), len(ws), s, t, bip)
    if spec.is_star():
        return fail("star")
    labels: dict[str, str] = {}
    for v in vs:
        i = vpos[v]
        labels[v_label(i)] = g.vertices[v]
        for k, x in enumerate(_bits(adj[v] & leaf_mask), start=1):
            labels[x_label(i, k)] = g.vertices[x]
    for w in ws:
        j = wpos[w]
        labels[w_label(j)] = g.vertices[w]
        for l, (a, b) in enumerate(sorted(triangles.get(w, [])), start=1):
            labels[y_label(j, l, 1)] = g.vertices[a]
            labels[y_label(j, l, 2)] = g.vertices[b]
    return CWRecognition("cameron_walker", spec, labels)


# closed forms -----------------------------------------------------------------


@dataclass(frozen=True)
class CWFlags:
    cohen_macaulay: bool
    cor_main_t_le_1: bool
    complete_bipartite: bool
    depth2_case: Optional[str]
    h_deg_equals_reg: bool

    def to_dict(self) -> dict:
        return {
            "cohen_macaulay": self.cohen_macaulay,
            "cor_main_t_le_1": self.cor_main_t_le_1,
            "complete_bipartite": self.complete_bipartite,
            "depth2_case": self.depth2_case,
            "h_deg_equals_reg": self.h_deg_equals_reg,
        }


@dataclass(frozen=True)
class CWReport:
    dim_and_deg_h: int
    reg: int
    i_lower: int
    i_upper: int
    a_invariant: int
    flags: CWFlags
    star_equality: bool
    failing_V: Optional[tuple[int, ...]]

    def to_dict(self) -> dict:
        return {
            "dim": self.dim_and_deg_h,
            "deg_h": self.dim_and_deg_h,
            "reg": self.reg,
            "i_lower": self.i_lower,
            "i_upper": self.i_upper,
            "a_invariant": self.a_invariant,
            "flags": self.flags.to_dict(),
            "star_equality": self.star_equality,
            "failing_V": None if self.failing_V is None else [v_label(i) for i in self.failing_V],
        }


def cw_dim(spec: CWStructure) -> int:
    return sum(spec.s) + sum(max(t, 1) for t in spec.t)


def cw_reg(spec: CWStructure) -> int:
    return sum(spec.t) + spec.m


def cw_i_bounds(spec: CWStructure) -> tuple[int, int]:
    lower = spec.m + sum(1 for t in spec.t if t > 0)
    upper = min(sum(spec.s) + spec.n, sum(spec.t) + spec.m)
    return lower, upper


def cw_invariants(spec: CWStructure) -> CWReport:
    spec.validate(allow_star=True)
    lower, upper = cw_i_bounds(spec)
    holds, failing = theorem_main_check(spec)
    return CWReport(cw_dim(spec), cw_reg(spec), lower, upper, 0, classify_special(spec), holds, failing)


def _lex_subsets(m: int) -> Iterator[tuple[int, ...]]:
    """All subsets of {1..m} in lexicographic order of their sorted tuples (empty first)."""

    def rec(prefix: tuple[int, ...], start: int):
        yield prefix
        for a in range(start, m + 1):
            yield from rec(prefix + (a,), a + 1)

    yield from rec((), 1)


def inequality_sides(spec: CWStructure, V: tuple[int, ...]) -> tuple[int, int]:
    """Both sides of sum_{v_i in V} s_i + #{j : N(w_j) ⊆ V} >= sum_{N(w_j) ⊆ V} t_j + |V|."""
    vs = set(V)
    inside = [j for j in range(1, spec.n + 1) if spec.w_neighbors(j) <= vs]
    lhs = sum(spec.s[i - 1] for i in vs) + len(inside)
    rhs = sum(spec.t[j - 1] for j in inside) + len(vs)
    return lhs, rhs


def theorem_main_check(spec: CWStructure, exhaustive: bool = False) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Evaluate the subset inequality over V ⊆ {v_1..v_m}.

    Only V containing some N(w_j) can fail, so by default the others are
    skipped; ``exhaustive=True`` checks every subset.  Returns whether the
    inequality holds everywhere, and otherwise the least failing V.
    """
    nbhds = [spec.w_neighbors(j) for j in range(1, spec.n + 1)]
    for V in _lex_subsets(spec.m):
        vs = set(V)
        if not exhaustive and not any(nb <= vs for nb in nbhds):
            continue
        lhs, rhs = inequality_sides(spec, V)
        if lhs < rhs:
            return False, V
    return True, None


def classify_special(spec: CWStructure) -> CWFlags:
    norm = normalize_cw(spec)
    depth2 = None
    if norm.m == 2 and all(t == 0 for t in norm.t):
        depth2 = "e1"
    elif norm.m == 1 and norm.n == 1 and norm.t[0] == 1:
        depth2 = "e2"
    elif norm.m == 1 and norm.n == 1 and norm.t[0] >= 2 and norm.s[0] == 1:
        depth2 = "e3"
    return CWFlags(
        cohen_macaulay=all(x == 1 for x in spec.s) and all(x == 1 for x in spec.t),
        cor_main_t_le_1=all(x <= 1 for x in spec.t),
        complete_bipartite=spec.is_complete_bipartite(),
        depth2_case=depth2,
        h_deg_equals_reg=all(x == 1 for x in spec.s) and all(x >= 1 for x in spec.t),
    )


# constructions ------------------------------------------------------------------


def construct_de(d: int, e: int) -> CWStructure:
    """A Cameron-Walker spec with dim d, depth e and the equality (*) (d >= e >= 2)."""
    if e < 2 or d < e:
        raise CWError(f"need d >= e >= 2, got d={d}, e={e}")
    if d > e:
        return CWStructure(e, 1, [1] * (e - 1) + [d - e], [0], [(i, 1) for i in range(1, e + 1)])
    return CWStructure(d - 1, 1, [1] * (d - 1), [1], [(i, 1) for i in range(1, d)])


def construct_dre(d: int, r: int, e: int) -> Optional[CWStructure]:
    """A spec with dim = deg h = d, reg r and depth e, or None when none exists (e = 2, 2 < r < d)."""
    if not d >= r >= e >= 2:
        raise CWError(f"need d >= r >= e >= 2, got d={d}, r={r}, e={e}")
    if e == 2:
        if r == 2:
            return CWStructure(1, 1, [d - 1], [1], [(1, 1)])
        if r == d:
            return CWStructure(1, 1, [1], [d - 1], [(1, 1)])
        return None
    if d > r:
        m = e - 1
        bip = [(1, 1)] + [(i, 2) for i in range(1, m + 1)]
        return CWStructure(m, 2, [1] * (m - 1) + [d - r], [r - e + 1, 0], bip)
    m = e - 1
    return CWStructure(m, 1, [1] * m, [d - e + 1], [(i, 1) for i in range(1, m + 1)])


# corpus -------------------------------------------------------------------------


def connected_bipartite_classes(m: int, n: int) -> list[frozenset[tuple[int, int]]]:
    """One edge set per isomorphism class (sides fixed) of connected bipartite graphs
    with parts {1..m} and {1..n} and no isolated vertex."""
    all_pairs = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    perms_v = list(itertools.permutations(range(1, m + 1)))
    perms_w = list(itertools.permutations(range(1, n + 1)))
    seen: set[tuple] = set()
    out = []
    for k in range(len(all_pairs) + 1):
        for edges in itertools.combinations(all_pairs, k):
            probe = CWStructure(m, n, [1] * m, [1] * n, edges)
            if not probe._bip_connected():
                continue
            form = min(
                tuple(sorted((pv[i - 1], pw[j - 1]) for i, j in edges)) for pv in perms_v for pw in perms_w
            )
            if form in seen:
                continue
            seen.add(form)
            out.append(frozenset(form))
    return out


def _decorated_form(spec: CWStructure, perms_v, perms_w) -> tuple:
    best = None
    for pv in perms_v:
        for pw in perms_w:
            s = [0] * spec.m
            t = [0] * spec.n
            for i in range(spec.m):
                s[pv[i] - 1] = spec.s[i]
            for j in range(spec.n):
                t[pw[j] - 1] = spec.t[j]
            form = (tuple(s), tuple(t), tuple(sorted((pv[i - 1], pw[j - 1]) for i, j in spec.bip)))
            if best is None or form < best:
                best = form
    return best


def cw_corpus(
    max_m: int = 3,
    max_n: int = 3,
    max_s: int = 3,
    max_t: int = 3,
    max_vertices: int = 16,
) -> list[CWStructure]:
    """Every valid spec in the given ranges, one per isomorphism class of the
    decorated bipartite part (core plus the s and t labels)."""
    out = []
    for m in range(1, max_m + 1):
        for n in range(1, max_n + 1):
            perms_v = list(itertools.permutations(range(1, m + 1)))
            perms_w = list(itertools.permutations(range(1, n + 1)))
            seen: set[tuple] = set()
            for bip in connected_bipartite_classes(m, n):
                for s in itertools.product(range(1, max_s + 1), repeat=m):
                    for t in itertools.product(range(0, max_t + 1), repeat=n):
                        spec = CWStructure(m, n, s, t, bip)
                        if spec.is_star() or spec.order > max_vertices:
                            continue
                        form = _decorated_form(spec, perms_v, perms_w)
                        if form in seen:
                            continue
                        seen.add(form)
                        out.append(CWStructure(m, n, form[0], form[1], form[2]))
    return out


EXAMPLE_SPEC = CWStructure(3, 4, [3, 1, 3], [0, 1, 2, 2], [(1, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 4)])
