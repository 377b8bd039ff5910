from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import path
from edgeideal.cameron_walker import (
    EXAMPLE_SPEC,
    CWError,
    CWStructure,
    build_cw,
    classify_special,
    connected_bipartite_classes,
    construct_de,
    construct_dre,
    cw_corpus,
    cw_invariants,
    inequality_sides,
    normalize_cw,
    recognize_cw,
    theorem_main_check,
)
from edgeideal.families import Family, family_graph
from edgeideal.graph_core import SimpleGraph, canonical_key
from edgeideal.hilbert import h_polynomial
from edgeideal.invariants import independence_domination, independence_number, induced_matching_number

CORPUS = cw_corpus(max_vertices=12)


def same_graph(a: SimpleGraph, b: SimpleGraph) -> bool:
    return set(a.vertices) == set(b.vertices) and set(map(frozenset, a.edge_list())) == set(
        map(frozenset, b.edge_list())
    )


def test_build_p3():
    g = build_cw(CWStructure(1, 1, [1], [0], [(1, 1)]), allow_star=True)
    assert same_graph(g, path("x1_1", "v1", "w1"))


def test_build_small_and_example():
    g = build_cw(CWStructure(1, 1, [1], [1], [(1, 1)]))
    assert (g.order, g.size) == (5, 5)
    assert build_cw(EXAMPLE_SPEC).order == 24


def test_invalid_specs():
    with pytest.raises(CWError):
        build_cw(CWStructure(2, 1, [1, 1], [1], [(1, 1)]))  # v2 isolated
    with pytest.raises(CWError):
        build_cw(CWStructure(1, 1, [0], [1], [(1, 1)]))
    with pytest.raises(CWError):
        build_cw(CWStructure(1, 1, [2], [0], [(1, 1)]))  # a star


def test_recognition_examples():
    assert recognize_cw(family_graph(Family("cycle", 5))).tag is None
    assert recognize_cw(SimpleGraph("abc", [("a", "b"), ("b", "c"), ("a", "c")])).tag == "star_triangle"
    assert recognize_cw(family_graph(Family("star", 3))).tag == "star"
    rec = recognize_cw(family_graph(Family("star", 3)), include_star_as_cw=True)
    assert rec.tag == "star" and rec.structure is not None


def test_round_trip_on_corpus():
    rng = random.Random(7)
    for spec in CORPUS:
        g = build_cw(spec)
        perm = list(g.vertices)
        rng.shuffle(perm)
        h = g.relabel(dict(zip(g.vertices, perm)))
        rec = recognize_cw(h)
        assert rec.tag == "cameron_walker"
        assert same_graph(build_cw(rec.structure).relabel(rec.labels), h)
        norm = normalize_cw(spec)
        assert (rec.structure.m, rec.structure.n) == (norm.m, norm.n)
        assert sorted(rec.structure.s) == sorted(norm.s) and sorted(rec.structure.t) == sorted(norm.t)


def test_invariants_do_not_depend_on_representation():
    for spec in CORPUS:
        norm = normalize_cw(spec)
        assert canonical_key(build_cw(norm)) == canonical_key(build_cw(spec))
        a, b = cw_invariants(spec), cw_invariants(norm)
        assert (a.dim_and_deg_h, a.reg, a.star_equality) == (b.dim_and_deg_h, b.reg, b.star_equality)


def test_cw_invariants_examples():
    r = cw_invariants(CWStructure(2, 1, [1, 1], [1], [(1, 1), (2, 1)]))
    assert (r.dim_and_deg_h, r.reg, r.i_lower, r.i_upper, r.a_invariant) == (3, 3, 3, 3, 0)
    r = cw_invariants(EXAMPLE_SPEC)
    assert (r.dim_and_deg_h, r.reg) == (13, 8)
    r = cw_invariants(CWStructure(1, 1, [1], [2], [(1, 1)]))
    assert (r.dim_and_deg_h, r.reg, r.i_lower, r.i_upper) == (3, 3, 2, 2)


def test_example_fails_at_v2():
    holds, failing = theorem_main_check(EXAMPLE_SPEC)
    assert not holds and failing == (2,)
    assert inequality_sides(EXAMPLE_SPEC, (2,)) == (2, 3)
    assert theorem_main_check(EXAMPLE_SPEC, exhaustive=True) == (False, (2,))
    assert cw_invariants(EXAMPLE_SPEC).to_dict()["failing_V"] == ["v2"]


def test_example_closed_forms_against_computation():
    g = build_cw(EXAMPLE_SPEC)
    dim = independence_number(g).value
    assert dim == h_polynomial(g, dim).degree == 13
    assert induced_matching_number(g).value == 8
    depth = independence_domination(g).value
    # (*) fails: deg h - reg < dim - depth
    assert 13 - 8 < dim - depth


def test_restricted_search_agrees_with_exhaustive():
    for spec in cw_corpus(max_vertices=16):
        assert theorem_main_check(spec) == theorem_main_check(spec, exhaustive=True)


def test_t_at_most_one_always_holds():
    for spec in CORPUS:
        if all(t <= 1 for t in spec.t):
            assert theorem_main_check(spec)[0]


def test_complete_bipartite_rule():
    for spec in CORPUS:
        if spec.is_complete_bipartite():
            assert theorem_main_check(spec)[0] == (sum(spec.s) + spec.n >= sum(spec.t) + spec.m)


def test_classify_examples():
    f = classify_special(CWStructure(2, 1, [1, 1], [1], [(1, 1), (2, 1)]))
    assert f.cohen_macaulay and f.h_deg_equals_reg
    f = classify_special(CWStructure(1, 1, [2], [1], [(1, 1)]))
    assert f.depth2_case == "e2" and not f.h_deg_equals_reg
    f = classify_special(CWStructure(2, 2, [1, 1], [0, 0], [(1, 1), (2, 1), (2, 2)]))
    assert f.depth2_case == "e1"
    assert classify_special(CWStructure(1, 1, [1], [2], [(1, 1)])).depth2_case == "e3"


def test_normal_form_absorbs_leaf_w():
    # w2 hangs off v1 with no triangles: it is just another leaf of v1
    spec = CWStructure(1, 2, [1], [1, 0], [(1, 1), (1, 2)])
    assert normalize_cw(spec) == CWStructure(1, 1, [2], [1], [(1, 1)])
    assert classify_special(spec).depth2_case == "e2"


def test_constructions():
    assert construct_de(5, 3) == CWStructure(3, 1, [1, 1, 2], [0], [(1, 1), (2, 1), (3, 1)])
    assert construct_de(4, 4) == CWStructure(3, 1, [1, 1, 1], [1], [(1, 1), (2, 1), (3, 1)])
    with pytest.raises(CWError):
        construct_de(2, 3)
    assert construct_dre(5, 3, 3) == CWStructure(2, 2, [1, 2], [1, 0], [(1, 1), (1, 2), (2, 2)])
    assert construct_dre(4, 4, 3) == CWStructure(2, 1, [1, 1], [2], [(1, 1), (2, 1)])
    assert construct_dre(5, 3, 2) is None


def test_bipartite_class_counts():
    counts = {(m, n): len(connected_bipartite_classes(m, n)) for m in range(1, 4) for n in range(1, 4)}
    assert counts[(1, 1)] == 1 and counts[(2, 2)] == 2 and counts[(2, 3)] == 4 and counts[(3, 3)] == 13


def test_corpus_is_large_and_unique():
    corpus = cw_corpus()
    assert len(corpus) >= 200
    assert all(s.order <= 16 and not s.is_star() for s in corpus)
    forms = {(s.m, s.n, tuple(s.s), tuple(s.t), tuple(sorted(s.bip))) for s in corpus}
    assert len(forms) == len(corpus)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS), st.randoms(use_true_random=False))
def test_recognition_is_relabelling_invariant(spec, rnd):
    g = build_cw(spec)
    perm = list(g.vertices)
    rnd.shuffle(perm)
    rec = recognize_cw(g.relabel(dict(zip(g.vertices, perm))))
    assert canonical_key(build_cw(rec.structure)) == canonical_key(g)


def test_dict_round_trip():
    assert CWStructure.from_dict(EXAMPLE_SPEC.to_dict()) == EXAMPLE_SPEC
