"""Graded Betti numbers of S/I(G) through Hochster's formula.

    beta_{i,j} = sum over |W| = j of dim H~_{j-i-1}(Ind(G_W); K)

Reduced homology of independence complexes is computed exactly from boundary
matrix ranks.  Three exact shortcuts keep the subset sum tractable:

* an isolated vertex of G_W makes Ind(G_W) a cone, so W contributes nothing;
* Ind of a disjoint union is the join of the pieces, and reduced Poincare
  polynomials multiply under joins;
* fold lemma: if N(u) is contained in N(w) for u != w then Ind(G) and
  Ind(G - w) are homotopy equivalent.

What is left after folding is a small connected graph whose homology is
cached per (canonical key, field).
"""

from __future__ import annotations

import itertools
import os
import threading
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .graph_core import (
    SimpleGraph,
    _bits,
    _canonical_key_masks,
    _components_of_mask,
)
from .hilbert import h_polynomial
from .invariants import independence_number, is_induced_matching
from .polynomial import IntPolynomial

DEFAULT_CUTOFF = 18


class CutoffExceeded(RuntimeError):
    def __init__(self, order: int, cutoff: int):
        self.order = order
        self.cutoff = cutoff
        super().__init__(f"graph has {order} vertices, Betti cutoff is {cutoff}")


class InternalConsistencyError(RuntimeError):
    """Two independent evaluations of the same quantity disagreed."""


def default_cutoff() -> int:
    raw = os.environ.get("EIL_CUTOFF")
    return int(raw) if raw else DEFAULT_CUTOFF


# fields -------------------------------------------------------------------------


@dataclass(frozen=True)
class Field:
    """Coefficient field: the rationals (``p is None``) or GF(p)."""

    p: Optional[int] = None

    @classmethod
    def parse(cls, spec: str | int | None | Field) -> Field:
        if isinstance(spec, Field):
            return spec
        if spec is None:
            return cls()
        text = str(spec).strip().lower()
        if text in ("q", "qq", "rationals", "0"):
            return cls()
        if text.startswith("gf(") and text.endswith(")"):
            text = text[3:-1]
        if text.startswith("prime "):
            text = text[6:]
        try:
            p = int(text)
        except ValueError:
            raise ValueError(f"invalid field spec {spec!r}") from None
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"invalid field spec {spec!r}: {p} is not prime")
        return cls(p)

    @property
    def label(self) -> str:
        return "Q" if self.p is None else "Fp"

    def __str__(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"


QQ = Field()


# simplicial complexes ---------------------------------------------------------------


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple[str, ...]
    facets: tuple[frozenset[str], ...]

    def __post_init__(self):
        vs = set(self.vertices)
        for f in self.facets:
            if not f <= vs:
                raise ValueError(f"facet {sorted(f)} uses unknown vertices")
        for a, b in itertools.permutations(self.facets, 2):
            if a <= b:
                raise ValueError("facets must be pairwise non-contained")

    @property
    def dimension(self) -> Optional[int]:
        if not self.facets:
            return None
        return max(len(f) for f in self.facets) - 1

    def faces(self) -> list[list[tuple[str, ...]]]:
        """Faces grouped by size (index 0 is the empty face), each sorted by vertex order."""
        order = {v: i for i, v in enumerate(self.vertices)}
        seen: set[tuple[str, ...]] = set()
        for f in self.facets:
            ordered = sorted(f, key=order.__getitem__)
            for k in range(len(ordered) + 1):
                for sub in itertools.combinations(ordered, k):
                    seen.add(sub)
        top = max((len(f) for f in seen), default=-1)
        by_size: list[list[tuple[str, ...]]] = [[] for _ in range(top + 1)]
        for f in seen:
            by_size[len(f)].append(f)
        for group in by_size:
            group.sort(key=lambda f: [order[v] for v in f])
        return by_size

    def f_vector(self) -> list[int]:
        return [len(group) for group in self.faces()]


def independence_complex(g: SimpleGraph) -> SimplicialComplex:
    """Ind(g), given by its facets (the maximal independent sets of g)."""
    facets = [frozenset(g.labels_of(m)) for m in _maximal_independent_sets(g._adj, g.full_mask)]
    return SimplicialComplex(g.vertices, tuple(facets))


def _maximal_independent_sets(adj: Sequence[int], mask: int) -> list[int]:
    # Bron-Kerbosch with pivoting on the complement graph.
    comp = [(~adj[v]) & mask & ~(1 << v) for v in range(len(adj))]
    out: list[int] = []

    def bk(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        pivot = max(_bits(p | x), key=lambda u: (comp[u] & p).bit_count())
        for v in _bits(p & ~comp[pivot]):
            bk(r | (1 << v), p & comp[v], x & comp[v])
            p &= ~(1 << v)
            x |= 1 << v

    if mask == 0:
        return [0]
    bk(0, mask, 0)
    return sorted(out)


# exact rank ------------------------------------------------------------------


def _rank(rows: Iterable[dict[int, int]], fld: Field) -> int:
    """Rank of a sparse integer matrix over Q (fraction-free) or GF(p)."""
    pivots: dict[int, dict[int, int]] = {}
    p = fld.p
    rank = 0
    for row in rows:
        r = {c: v for c, v in row.items() if (v % p if p else v)}
        if p:
            r = {c: v % p for c, v in r.items()}
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                if p:
                    inv = pow(r[c], -1, p)
                    r = {k: v * inv % p for k, v in r.items()}
                pivots[c] = r
                rank += 1
                break
            if p:
                a = r[c]
                for k, v in piv.items():
                    nv = (r.get(k, 0) - a * v) % p
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
            else:
                a, b = piv[c], r[c]
                new: dict[int, int] = {}
                for k in set(r) | set(piv):
                    nv = a * r.get(k, 0) - b * piv.get(k, 0)
                    if nv:
                        new[k] = nv
                if new:
                    from math import gcd

                    gg = 0
                    for v in new.values():
                        gg = gcd(gg, v)
                    if gg > 1:
                        new = {k: v // gg for k, v in new.items()}
                r = new
    return rank


def _homology_from_faces(by_size: list[list[tuple]], fld: Field) -> list[int]:
    """dim H~_k for k = -1 .. top, from faces grouped by size (size 0 = empty face)."""
    if not by_size:
        return []
    index = [{f: i for i, f in enumerate(group)} for group in by_size]
    ranks = [0] * (len(by_size) + 1)
    # ranks[k] = rank of the boundary map from faces of size k to size k-1
    for k in range(1, len(by_size)):
        rows = []
        lower = index[k - 1]
        for f in by_size[k]:
            row = {}
            for pos in range(len(f)):
                sub = f[:pos] + f[pos + 1:]
                row[lower[sub]] = -1 if pos % 2 else 1
            rows.append(row)
        ranks[k] = _rank(rows, fld)
    return [len(by_size[k]) - ranks[k] - ranks[k + 1] for k in range(len(by_size))]


def reduced_homology_dims(c: SimplicialComplex, field_spec: str | Field | None = None) -> list[int]:
    """[dim H~_{-1}, dim H~_0, ..., dim H~_{dim c}] over the chosen field.

    The void complex (no faces at all) gives ``[]``; the complex {empty set}
    gives ``[1]``.
    """
    fld = Field.parse(field_spec)
    if not c.facets:
        return []
    return _homology_from_faces(c.faces(), fld)


# Hochster ---------------------------------------------------------------------

# Reduced Poincare polynomials are tuples P with P[e] = dim H~_{e-1}.
Poly = tuple[int, ...]

_RESIDUAL_CACHE: dict[tuple[bytes, Optional[int]], Poly] = {}
_RESIDUAL_LOCK = threading.Lock()


def _poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _trim(values: Sequence[int]) -> Poly:
    out = list(values)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _independent_faces(adj: Sequence[int], mask: int) -> list[list[tuple[int, ...]]]:
    by_size: list[list[tuple[int, ...]]] = [[()]]

    def extend(face: tuple[int, ...], allowed: int) -> None:
        for v in _bits(allowed):
            nf = face + (v,)
            while len(by_size) <= len(nf):
                by_size.append([])
            by_size[len(nf)].append(nf)
            extend(nf, allowed & ~adj[v] & ~((1 << (v + 1)) - 1))

    extend((), mask)
    return by_size


def _residual_poly(adj: Sequence[int], mask: int, fld: Field) -> Poly:
    key = (_canonical_key_masks(adj, mask), fld.p)
    with _RESIDUAL_LOCK:
        hit = _RESIDUAL_CACHE.get(key)
    if hit is not None:
        return hit
    dims = _homology_from_faces(_independent_faces(adj, mask), fld)
    poly = _trim(dims)
    with _RESIDUAL_LOCK:
        _RESIDUAL_CACHE[key] = poly
    return poly


class _IndHomology:
    """Per-graph memo of reduced Poincare polynomials of Ind(G_W), keyed by W."""

    def __init__(self, adj: Sequence[int], fld: Field, fold: bool = True):
        self.adj = adj
        self.fld = fld
        self.fold = fold
        self.memo: dict[int, Poly] = {0: (1,)}

    def __call__(self, mask: int) -> Poly:
        hit = self.memo.get(mask)
        if hit is not None:
            return hit
        result = self._compute(mask)
        self.memo[mask] = result
        return result

    def _compute(self, mask: int) -> Poly:
        adj = self.adj
        for v in _bits(mask):
            if not adj[v] & mask:
                return ()
        comps = _components_of_mask(adj, mask)
        if len(comps) > 1:
            out: Poly = (1,)
            for c in comps:
                out = _poly_mul(out, self(c))
                if not out:
                    return ()
            return out
        if self.fold:
            w = self._fold_target(mask)
            if w is not None:
                return self(mask & ~(1 << w))
            return _residual_poly(adj, mask, self.fld)
        return _trim(_homology_from_faces(_independent_faces(adj, mask), self.fld))

    def _fold_target(self, mask: int) -> Optional[int]:
        adj = self.adj
        for u in sorted(_bits(mask), key=lambda v: (adj[v] & mask).bit_count()):
            cand = mask & ~(1 << u)
            for x in _bits(adj[u] & mask):
                cand &= adj[x]
                if not cand:
                    break
            if cand:
                return (cand & -cand).bit_length() - 1
        return None


def _nonisolated_masks(adj: Sequence[int], n: int) -> np.ndarray:
    """All W such that G_W has no isolated vertex, in increasing order."""
    masks = np.arange(1 << n, dtype=np.int64)
    bad = np.zeros(1 << n, dtype=bool)
    for v in range(n):
        bad |= ((masks >> v) & 1).astype(bool) & ((masks & adj[v]) == 0)
    return masks[~bad]


@dataclass
class BettiTable:
    entries: dict[tuple[int, int], int]
    field: Field
    n: int

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries.get(ij, 0)

    @property
    def projdim(self) -> int:
        return max(i for i, _ in self.entries)

    @property
    def reg(self) -> int:
        return max(j - i for i, j in self.entries)

    def alternating_numerator(self) -> IntPolynomial:
        """sum_i (-1)^i sum_j beta_{i,j} t^j, the K-polynomial numerator over (1-t)^n."""
        coeffs = [0] * (max(j for _, j in self.entries) + 1)
        for (i, j), b in self.entries.items():
            coeffs[j] += -b if i % 2 else b
        return IntPolynomial(coeffs)

    def extremal_positions(self) -> list[tuple[int, int]]:
        out = []
        for (i, j) in sorted(self.entries):
            dominated = any(
                (a, b) != (i, j) and a >= i and b - a >= j - i for (a, b) in self.entries
            )
            if not dominated:
                out.append((i, j))
        return out

    def to_dict(self) -> dict:
        d = {"field": self.field.label, "entries": [[i, j, b] for (i, j), b in sorted(self.entries.items())]}
        if self.field.p is not None:
            d["characteristic"] = self.field.p
        return d

    def render(self) -> str:
        """Macaulay2-style display: columns are homological degree i, rows are j - i."""
        cols = range(self.projdim + 1)
        rows = range(self.reg + 1)
        totals = [sum(b for (i, _), b in self.entries.items() if i == c) for c in cols]
        cells = [[str(self[(c, c + r)]) if self[(c, c + r)] else "." for c in cols] for r in rows]
        width = max(len(x) for x in [str(c) for c in cols] + [str(t) for t in totals] + sum(cells, []))
        label_w = max(len("total:"), len(f"{self.reg}:"))

        def line(label: str, items: Sequence[str]) -> str:
            return label.rjust(label_w) + " " + " ".join(x.rjust(width) for x in items)

        out = [line("", [str(c) for c in cols]), line("total:", [str(t) for t in totals])]
        out += [line(f"{r}:", cells[r]) for r in rows]
        return "\n".join(x.rstrip() for x in out)


def betti_table(
    g: SimpleGraph,
    field_spec: str | Field | None = None,
    cutoff: Optional[int] = None,
    fold: bool = True,
) -> BettiTable:
    fld = Field.parse(field_spec)
    limit = default_cutoff() if cutoff is None else cutoff
    if g.order > limit:
        raise CutoffExceeded(g.order, limit)
    adj = g._adj
    ind = _IndHomology(adj, fld, fold=fold)
    entries: dict[tuple[int, int], int] = {(0, 0): 1}
    for w in _nonisolated_masks(adj, g.order).tolist():
        if w == 0:
            continue
        poly = ind(w)
        j = w.bit_count()
        for e, c in enumerate(poly):
            if c:
                key = (j - e, j)
                entries[key] = entries.get(key, 0) + c
    return BettiTable(entries, fld, g.order)


# report -------------------------------------------------------------------------


@dataclass
class HomologicalReport:
    projdim: int
    depth: int
    reg: int
    dim: int
    deg_h: int
    a_invariant: int
    star_equality: bool
    extremal_betti_positions: list[tuple[int, int]]
    betti: BettiTable = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "projdim": self.projdim,
            "depth": self.depth,
            "reg": self.reg,
            "dim": self.dim,
            "deg_h": self.deg_h,
            "a_invariant": self.a_invariant,
            "star_equality": self.star_equality,
            "extremal_betti_positions": [list(p) for p in self.extremal_betti_positions],
        }


def homological_report(
    g: SimpleGraph,
    field_spec: str | Field | None = None,
    cutoff: Optional[int] = None,
    table: Optional[BettiTable] = None,
) -> HomologicalReport:
    if table is None:
        table = betti_table(g, field_spec, cutoff)
    p, r = table.projdim, table.reg
    e = g.order - p
    d = independence_number(g).value
    s = h_polynomial(g, d).degree
    by_degrees = s - r == d - e
    by_corner = table[(p, p + r)] != 0
    if by_degrees != by_corner:
        raise InternalConsistencyError(
            f"(s - r == d - e) is {by_degrees} but beta_(p,p+r) != 0 is {by_corner}"
        )
    if s - r > d - e:
        raise InternalConsistencyError(f"s - r = {s - r} exceeds d - e = {d - e}")
    return HomologicalReport(p, e, r, d, s, s - d, by_corner, table.extremal_positions(), table)


# non-vanishing witnesses ------------------------------------------------------------


@dataclass(frozen=True)
class StarWitness:
    """Vertex-disjoint stars (center, leaves) whose marked edges form an induced matching."""

    stars: tuple[tuple[str, tuple[str, ...]], ...]
    edges: tuple[tuple[str, str], ...]

    @property
    def i(self) -> int:
        return sum(len(leaves) for _, leaves in self.stars)

    @property
    def ell(self) -> int:
        return len(self.stars)

    def is_valid(self, g: SimpleGraph) -> bool:
        used: set[str] = set()
        for (center, leaves), edge in zip(self.stars, self.edges):
            if not leaves:
                return False
            block = {center, *leaves}
            if len(block) != 1 + len(leaves) or used & block:
                return False
            used |= block
            if not all(g.has_edge(center, x) for x in leaves):
                return False
            if center not in edge or (set(edge) - {center}) - set(leaves):
                return False
        return len(self.stars) == len(self.edges) and is_induced_matching(g, list(self.edges))

    def to_dict(self) -> dict:
        return {
            "stars": [{"center": c, "leaves": list(l)} for c, l in self.stars],
            "edges": [list(e) for e in self.edges],
        }


def _induced_matchings(g: SimpleGraph, size: int):
    pairs = [(i, j) for i in range(g.order) for j in _bits(g._adj[i]) if i < j]
    adj = g._adj
    reach = [adj[i] | adj[j] | (1 << i) | (1 << j) for i, j in pairs]

    def rec(start: int, chosen: list[int], blocked: int):
        if len(chosen) == size:
            yield list(chosen)
            return
        for k in range(start, len(pairs)):
            i, j = pairs[k]
            if blocked >> i & 1 or blocked >> j & 1:
                continue
            chosen.append(k)
            yield from rec(k + 1, chosen, blocked | reach[k])
            chosen.pop()

    for chosen in rec(0, [], 0):
        yield [pairs[k] for k in chosen]


def kimura_witness(g: SimpleGraph, i: int, ell: int) -> Optional[StarWitness]:
    """Search for stars B_1..B_ell with sum of edge counts i and an induced matching
    e_1..e_ell, e_k in B_k.  Such stars force beta_{i, i+ell} != 0."""
    if ell < 1 or i < ell:
        return None
    adj = g._adj
    for matching in _induced_matchings(g, ell):
        covered = 0
        for a, b in matching:
            covered |= (1 << a) | (1 << b)
        for sides in itertools.product((0, 1), repeat=ell):
            centers = [edge[s] for edge, s in zip(matching, sides)]
            spare = 0
            for c in centers:
                spare |= adj[c]
            spare &= ~covered
            if i - ell > spare.bit_count():
                continue
            leaves = [[edge[1 - s]] for edge, s in zip(matching, sides)]
            need = i - ell
            for u in _bits(spare):
                if not need:
                    break
                k = next(k for k, c in enumerate(centers) if adj[c] >> u & 1)
                leaves[k].append(u)
                need -= 1
            names = g.vertices
            return StarWitness(
                tuple((names[c], tuple(names[x] for x in sorted(ls))) for c, ls in zip(centers, leaves)),
                tuple((names[a], names[b]) for a, b in matching),
            )
    return None
