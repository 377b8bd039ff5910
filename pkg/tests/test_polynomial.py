from __future__ import annotations

from hypothesis import given
from hypothesis import strategies as st

from edgeideal.polynomial import IntPolynomial

coeffs = st.lists(st.integers(-10**30, 10**30), max_size=8)


def test_zero_polynomial_has_no_degree():
    assert IntPolynomial().degree is None
    assert IntPolynomial([0, 0]).is_zero()
    assert IntPolynomial([3, 0, 0]).degree == 0


def test_binomial_rows():
    assert IntPolynomial.one_minus_x_pow(3).to_list() == [1, -3, 3, -1]
    assert IntPolynomial.one_plus_x_pow(2).to_list() == [1, 2, 1]
    assert IntPolynomial.one_minus_x_pow(0) == 1


def test_divmod_and_multiplicity():
    p = IntPolynomial([1, 2]) * IntPolynomial.one_minus_x_pow(3)
    assert p.multiplicity_of_one() == 3
    q, r = p.divmod(IntPolynomial([1, -1]))
    assert r.is_zero() and q == IntPolynomial([1, 2]) * IntPolynomial.one_minus_x_pow(2)


def test_str_uses_t():
    assert str(IntPolynomial([1, -3, 0, 1])) == "1 - 3t + t^3"
    assert str(IntPolynomial()) == "0"


def test_shift():
    assert IntPolynomial([1, 1]).shift(2).to_list() == [0, 0, 1, 1]


@given(coeffs, coeffs, coeffs)
def test_ring_laws(a, b, c):
    p, q, r = IntPolynomial(a), IntPolynomial(b), IntPolynomial(c)
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)
    assert p - p == IntPolynomial()


@given(coeffs, st.integers(-5, 5))
def test_evaluation_is_a_homomorphism(a, x):
    p = IntPolynomial(a)
    assert (p * p)(x) == p(x) ** 2


@given(coeffs, st.integers(0, 6))
def test_division_by_monic_power(a, k):
    p = IntPolynomial(a)
    d = IntPolynomial.one_minus_x_pow(k)
    q, r = (p * d).divmod(d)
    assert q == p and r.is_zero()
