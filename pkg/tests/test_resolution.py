from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings

from conftest import graphs, path
from edgeideal.cameron_walker import CWStructure, build_cw
from edgeideal.families import Family, family_graph
from edgeideal.graph_core import SimpleGraph, induced_subgraph, is_forest
from edgeideal.hilbert import k_polynomial
from edgeideal.invariants import induced_matching_number, matching_number
from edgeideal.resolution import (
    CutoffExceeded,
    Field,
    SimplicialComplex,
    betti_table,
    homological_report,
    independence_complex,
    kimura_witness,
    reduced_homology_dims,
)

K3 = SimpleGraph("abc", [("a", "b"), ("b", "c"), ("a", "c")])


def plain_hochster(g: SimpleGraph, field: str) -> dict:
    """Hochster's formula summed over every W, with no shortcuts."""
    out = {(0, 0): 1}
    for j in range(1, g.order + 1):
        for w in itertools.combinations(g.vertices, j):
            dims = reduced_homology_dims(independence_complex(induced_subgraph(g, w)), field)
            for k, b in enumerate(dims):
                if b:
                    # dims[k] is H~_{k-1}; beta_{i,j} with j - i - 1 = k - 1
                    key = (j - k, j)
                    out[key] = out.get(key, 0) + b
    return out


def test_field_parsing():
    assert Field.parse("q") == Field() and Field.parse(None).p is None
    assert Field.parse("2").p == 2 and Field.parse("GF(3)").p == 3
    with pytest.raises(ValueError):
        Field.parse("4")
    with pytest.raises(ValueError):
        Field.parse("reals")


def test_independence_complex_examples():
    assert sorted(map(sorted, independence_complex(K3).facets)) == [["a"], ["b"], ["c"]]
    assert independence_complex(SimpleGraph("abcd")).dimension == 3
    c5 = independence_complex(family_graph(Family("cycle", 5)))
    assert len(c5.facets) == 5 and all(len(f) == 2 for f in c5.facets)


def test_reduced_homology_examples():
    points = SimplicialComplex(("a", "b", "c"), tuple(frozenset(x) for x in "abc"))
    assert reduced_homology_dims(points) == [0, 2]
    hollow = SimplicialComplex(("a", "b", "c"), (frozenset("ab"), frozenset("bc"), frozenset("ac")))
    assert reduced_homology_dims(hollow) == [0, 0, 1]
    assert reduced_homology_dims(SimplicialComplex((), (frozenset(),))) == [1]


def test_betti_examples():
    assert betti_table(SimpleGraph("ab", [("a", "b")])).entries == {(0, 0): 1, (1, 2): 1}
    assert betti_table(K3).entries == {(0, 0): 1, (1, 2): 3, (2, 3): 2}
    p3 = betti_table(path("a", "b", "c"))
    assert p3.entries == {(0, 0): 1, (1, 2): 2, (2, 3): 1}
    assert (p3.projdim, p3.reg) == (2, 1)


def test_betti_serialization():
    d = betti_table(K3, "2").to_dict()
    assert d == {"field": "Fp", "entries": [[0, 0, 1], [1, 2, 3], [2, 3, 2]], "characteristic": 2}
    assert "total:" in betti_table(K3).render()


def test_report_examples():
    r = homological_report(K3)
    assert (r.projdim, r.depth, r.reg, r.dim, r.deg_h, r.star_equality) == (2, 1, 1, 1, 1, True)
    r = homological_report(path("a", "b", "c", "d"))
    assert (r.projdim, r.depth, r.reg, r.dim, r.deg_h, r.star_equality) == (2, 2, 1, 2, 1, True)
    r = homological_report(build_cw(CWStructure(1, 1, [1], [2], [(1, 1)])))
    assert (r.deg_h, r.reg, r.dim, r.depth, r.star_equality) == (3, 3, 3, 2, False)


def test_cutoff():
    with pytest.raises(CutoffExceeded):
        betti_table(path(*[f"p{i}" for i in range(6)]), cutoff=5)


def test_cutoff_env(monkeypatch):
    monkeypatch.setenv("EIL_CUTOFF", "3")
    with pytest.raises(CutoffExceeded):
        betti_table(path("a", "b", "c", "d"))


def test_kimura_examples():
    p3 = path("a", "b", "c")
    w = kimura_witness(p3, 2, 1)
    assert w is not None and w.stars == (("b", ("a", "c")),) and w.is_valid(p3)
    for s in range(1, 5):
        g = family_graph(Family("gs", s))
        w = kimura_witness(g, s + 2, 1)
        assert w is not None and w.stars[0][0] == f"x{s + 3}" and w.is_valid(g)
    for ell in range(1, 4):
        g = family_graph(Family("path", 3 * ell))
        w = kimura_witness(g, 2 * ell, ell)
        assert w is not None and w.ell == ell and w.i == 2 * ell and w.is_valid(g)
    assert kimura_witness(p3, 3, 1) is None


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7))
def test_against_plain_hochster(g):
    for field in ("q", "2"):
        assert betti_table(g, field).entries == plain_hochster(g, field)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=9))
def test_shortcuts_and_fields_agree(g):
    base = betti_table(g)
    assert betti_table(g, fold=False).entries == base.entries
    assert betti_table(g, "2").entries == base.entries
    assert base.alternating_numerator() == k_polynomial(g).numerator


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=9))
def test_regularity_sandwich(g):
    reg = betti_table(g).reg
    assert induced_matching_number(g).value <= reg <= matching_number(g).value
    if is_forest(g):
        assert reg == induced_matching_number(g).value


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_witnesses_force_nonzero_betti(g):
    tables = [betti_table(g, "q"), betti_table(g, "2")]
    for i in range(1, g.order + 1):
        for ell in range(1, i + 1):
            w = kimura_witness(g, i, ell)
            if w is not None:
                assert w.is_valid(g)
                assert all(t[(i, i + ell)] for t in tables)
