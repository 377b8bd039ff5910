from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs, path
from edgeideal.cameron_walker import CWStructure, build_cw
from edgeideal.families import Family, family_graph
from edgeideal.graph_core import SimpleGraph, connected_components
from edgeideal.hilbert import (
    HilbertSeries,
    a_invariant,
    h_polynomial,
    independent_set_counts,
    k_polynomial,
    k_polynomial_random_pivot,
    series_from_face_counts,
    star_series,
    star_triangle_series,
)
from edgeideal.invariants import independence_number
from edgeideal.polynomial import IntPolynomial


def P(*c):
    return IntPolynomial(c)


def test_single_edge():
    g = SimpleGraph("ab", [("a", "b")])
    assert k_polynomial(g) == HilbertSeries(P(1, 0, -1), 2)
    assert k_polynomial(g).reduced() == HilbertSeries(P(1, 1), 1)
    assert k_polynomial(g).coefficients(4) == [1, 2, 2, 2]


def test_h_polynomial_examples():
    p4 = path("a", "b", "c", "d")
    assert h_polynomial(p4) == P(1, 2) and a_invariant(p4) == -1
    assert h_polynomial(family_graph(Family("cycle", 5))) == P(1, 3, 1)
    cw = build_cw(CWStructure(1, 1, [1], [1], [(1, 1)]))
    assert h_polynomial(cw) == P(1, 3, 1) and a_invariant(cw) == 0
    assert a_invariant(family_graph(Family("startriangle", 2))) == -1


def test_closed_forms():
    assert star_series(1) == HilbertSeries(P(1, 1), 1)
    assert star_triangle_series(1) == HilbertSeries(P(1, 2), 1)
    assert star_triangle_series(2) == HilbertSeries(P(1, 3), 2)
    k3 = SimpleGraph("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    assert k_polynomial(k3).coefficients(4) == [1, 3, 3, 3]
    with pytest.raises(ValueError):
        star_series(0)


@pytest.mark.parametrize("k", range(1, 9))
def test_recursion_matches_closed_forms(k):
    assert k_polynomial(family_graph(Family("star", k))) == star_series(k)
    assert k_polynomial(family_graph(Family("startriangle", k))) == star_triangle_series(k)


def test_empty_and_edgeless():
    assert h_polynomial(SimpleGraph([])) == P(1)
    edgeless = SimpleGraph("abc")
    assert k_polynomial(edgeless) == HilbertSeries(P(1), 3)
    assert h_polynomial(edgeless) == P(1)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=9))
def test_face_count_oracle(g):
    series = k_polynomial(g)
    assert series == series_from_face_counts(independent_set_counts(g), g.order)
    dim = independence_number(g).value
    assert series.numerator.multiplicity_of_one() == g.order - dim
    reduced = series.reduced()
    assert reduced.numerator == h_polynomial(g) and reduced.pole_order == dim
    assert h_polynomial(g)[0] == 1


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=9), st.integers(0, 2**32))
def test_pivot_choice_does_not_matter(g, seed):
    assert k_polynomial_random_pivot(g, random.Random(seed)) == k_polynomial(g)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=9), st.randoms(use_true_random=False))
def test_relabelling_invariance(g, rnd):
    perm = list(g.vertices)
    rnd.shuffle(perm)
    h = g.relabel(dict(zip(g.vertices, perm)))
    assert k_polynomial(h) == k_polynomial(g) and h_polynomial(h) == h_polynomial(g)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=10))
def test_product_rule(g):
    parts = connected_components(g)
    h = IntPolynomial([1])
    for c in parts:
        h = h * h_polynomial(c)
    assert h == h_polynomial(g)
    assert sum(independence_number(c).value for c in parts) == independence_number(g).value


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=10))
def test_a_invariant_nonpositive(g):
    assert a_invariant(g) <= 0
