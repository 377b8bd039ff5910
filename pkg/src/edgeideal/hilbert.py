"""Hilbert series and h-polynomials of S/I(G).

The recursion deletes a vertex v that lies on an edge:

    H(G) = H(G - v) + t/(1 - t) * H(G - N[v])

Over the common denominator (1 - t)^|V| this is

    N_G = (1 - t) N_{G-v} + t (1 - t)^{deg v} N_{G-N[v]},

which is what ``k_polynomial`` evaluates, one connected component at a time,
memoised on the canonical key of each component.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from typing import Optional, Sequence

from .graph_core import SimpleGraph, _bits, _canonical_key_masks, _components_of_mask
from .invariants import independence_number
from .polynomial import IntPolynomial


class HilbertConsistencyError(RuntimeError):
    """An exact-division or non-vanishing check failed; this is a bug, never input error."""


@dataclass(frozen=True)
class HilbertSeries:
    numerator: IntPolynomial
    pole_order: int

    def reduced(self) -> HilbertSeries:
        """Cancel every factor (1 - t) shared by numerator and denominator."""
        num, k = self.numerator, self.pole_order
        factor = IntPolynomial([1, -1])
        while k > 0 and not num.is_zero() and num(1) == 0:
            num, rem = num.divmod(factor)
            if not rem.is_zero():
                raise HilbertConsistencyError("division by (1 - t) left a remainder")
            k -= 1
        return HilbertSeries(num, k)

    def over_pole(self, k: int) -> HilbertSeries:
        """The same series written over (1 - t)^k, k >= pole_order."""
        if k < self.pole_order:
            raise ValueError("cannot lower the pole order this way")
        return HilbertSeries(self.numerator * IntPolynomial.one_minus_x_pow(k - self.pole_order), k)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HilbertSeries):
            return NotImplemented
        k = max(self.pole_order, other.pole_order)
        return self.over_pole(k).numerator == other.over_pole(k).numerator

    def __hash__(self) -> int:
        r = self.reduced()
        return hash((r.numerator, r.pole_order))

    def coefficients(self, count: int) -> list[int]:
        """First ``count`` values of the Hilbert function."""
        # 1/(1-t)^k has coefficients binom(i + k - 1, k - 1)
        from math import comb

        k = self.pole_order
        out = []
        for i in range(count):
            if k == 0:
                out.append(self.numerator[i])
            else:
                out.append(sum(self.numerator[a] * comb(i - a + k - 1, k - 1) for a in range(i + 1)))
        return out

    def to_dict(self) -> dict:
        return {"numerator": self.numerator.to_list(), "pole_order": self.pole_order}


# recursion --------------------------------------------------------------------

_CACHE: dict[bytes, IntPolynomial] = {}
_CACHE_LOCK = threading.Lock()


def clear_cache() -> None:
    with _CACHE_LOCK:
        _CACHE.clear()


def _pivot_max_degree(adj: Sequence[int], mask: int) -> int:
    return max(_bits(mask), key=lambda v: ((adj[v] & mask).bit_count(), -v))


def _numerator(adj: Sequence[int], mask: int, pivot=_pivot_max_degree, memo: bool = True) -> IntPolynomial:
    """Numerator of H over (1 - t)^|mask| for the subgraph induced on mask."""
    result = IntPolynomial([1])
    for comp in _components_of_mask(adj, mask):
        result = result * _component_numerator(adj, comp, pivot, memo)
    return result


def _component_numerator(adj: Sequence[int], comp: int, pivot, memo: bool) -> IntPolynomial:
    if comp & (comp - 1) == 0:
        return IntPolynomial([1])
    key = None
    if memo:
        key = _canonical_key_masks(adj, comp)
        with _CACHE_LOCK:
            hit = _CACHE.get(key)
        if hit is not None:
            return hit
    v = pivot(adj, comp)
    deg = (adj[v] & comp).bit_count()
    rest = comp & ~(1 << v)
    far = comp & ~(adj[v] | (1 << v))
    num = _numerator(adj, rest, pivot, memo) * IntPolynomial([1, -1])
    num = num + (_numerator(adj, far, pivot, memo) * IntPolynomial.one_minus_x_pow(deg)).shift(1)
    if key is not None:
        with _CACHE_LOCK:
            _CACHE[key] = num
    return num


def k_polynomial(g: SimpleGraph) -> HilbertSeries:
    """Hilbert series of S/I(g) written over (1 - t)^|V(g)|."""
    return HilbertSeries(_numerator(g._adj, g.full_mask), g.order)


def k_polynomial_random_pivot(g: SimpleGraph, rng: random.Random) -> HilbertSeries:
    """The same recursion with a random non-isolated pivot at every step and no memo."""

    def pivot(adj: Sequence[int], mask: int) -> int:
        return rng.choice([v for v in _bits(mask) if adj[v] & mask])

    return HilbertSeries(_numerator(g._adj, g.full_mask, pivot, memo=False), g.order)


def h_polynomial(g: SimpleGraph, dim: Optional[int] = None) -> IntPolynomial:
    """h-polynomial: the K-polynomial divided by (1 - t)^(n - dim) exactly."""
    if dim is None:
        dim = independence_number(g).value
    series = k_polynomial(g)
    num = series.numerator
    factor = IntPolynomial([1, -1])
    for _ in range(g.order - dim):
        num, rem = num.divmod(factor)
        if not rem.is_zero():
            raise HilbertConsistencyError(f"K-polynomial not divisible by (1 - t)^{g.order - dim}")
    if num(1) == 0:
        raise HilbertConsistencyError("h-polynomial vanishes at t = 1; dimension is wrong")
    return num


def a_invariant(g: SimpleGraph) -> int:
    dim = independence_number(g).value
    h = h_polynomial(g, dim)
    return h.degree - dim


# closed forms -------------------------------------------------------------------


def star_series(s: int) -> HilbertSeries:
    """(1 + t(1 - t)^(s-1)) / (1 - t)^s for the star with s leaves."""
    if s < 1:
        raise ValueError("star needs s >= 1")
    return HilbertSeries(1 + IntPolynomial.one_minus_x_pow(s - 1).shift(1), s)


def star_triangle_series(t: int) -> HilbertSeries:
    """((1 + t)^k + t(1 - t)^(k-1)) / (1 - t)^k for k triangles sharing a vertex."""
    if t < 1:
        raise ValueError("star triangle needs t >= 1")
    num = IntPolynomial.one_plus_x_pow(t) + IntPolynomial.one_minus_x_pow(t - 1).shift(1)
    return HilbertSeries(num, t)


# brute-force oracle ---------------------------------------------------------------


def independent_set_counts(g: SimpleGraph) -> list[int]:
    """f-vector of the independence complex, shifted: entry k counts independent k-sets."""
    n = g.order
    adj = g._adj
    counts = [0] * (n + 1)
    for mask in range(1 << n):
        if all(not (adj[v] & mask) for v in _bits(mask)):
            counts[mask.bit_count()] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


def series_from_face_counts(counts: Sequence[int], n: int) -> HilbertSeries:
    """H = sum_k f_{k-1} t^k / (1 - t)^k, placed over (1 - t)^n."""
    num = IntPolynomial()
    for k, f in enumerate(counts):
        if f:
            num = num + (IntPolynomial.one_minus_x_pow(n - k) * f).shift(k)
    return HilbertSeries(num, n)
