from __future__ import annotations

import math
import random
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from afgrid.errors import DomainError
from afgrid.poly import (INF, NEG_INF, GridSpec, SparsePoly, degrees, evaluate, evaluate_on_grid,
                         extremal_polylinear, format_poly, grid_from_json, grid_reduce,
                         hasse_derivative, is_reduced, leading_coeff_chain, multiplicities_on_grid,
                         multiplicity, multiplicity_sum, parse_poly, restrict_to_line, taylor_shift,
                         vanishes_on_grid, zero_census)
from afgrid.ring import GF, integers_mod


def P(text, ring, n=None):
    return parse_poly(text, ring, n)


def naive_eval(f, x):
    """Reference evaluation: plain powers and sums, term by term."""
    ring = f.ring
    acc = 0
    for mono, c in f.terms.items():
        v = c
        for xi, e in zip(x, mono):
            for _ in range(e):
                v = ring.mul(v, xi)
        acc = ring.add(acc, v)
    return acc


def substitute_shift(f, x):
    """Reference ``f(t + x)`` by expanding products of ``t_i + x_i``."""
    ring, n = f.ring, f.nvars
    out = SparsePoly.zero(ring, n)
    for mono, c in f.terms.items():
        term = SparsePoly.constant(ring, n, c)
        for i, e in enumerate(mono):
            lin = SparsePoly.variable(ring, n, i) + SparsePoly.constant(ring, n, x[i])
            for _ in range(e):
                term = term * lin
        out = out + term
    return out


def random_poly(rng, ring, n, deg, density=0.6):
    terms = {}
    for mono in product(range(deg + 1), repeat=n):
        if sum(mono) <= deg and rng.random() < density:
            terms[mono] = rng.randrange(ring.size)
    return SparsePoly(ring, n, terms)


GF3, GF5 = GF(3), GF(5)
A33 = GridSpec.full(GF3, 2)


def test_degrees_examples():
    assert degrees(P("t1^2*t2 + t3", GF3)) == (3, (2, 1, 1))
    assert degrees(SparsePoly.constant(GF5, 2, 5 % 5 or 3)) == (0, (0, 0))
    assert degrees(SparsePoly.zero(GF3, 2)) == (NEG_INF, (NEG_INF, NEG_INF))


def test_evaluate_examples():
    assert evaluate(P("t1*t2", GF3), (2, 2)) == 1
    assert evaluate(P("t1 + t2", integers_mod(6)), (3, 3)) == 0
    f = P("t1^3 + 2*t1", GF3)
    assert all(evaluate(f, (x,)) == 0 for x in range(3))


def test_zero_census_examples():
    S = GridSpec.from_lists(GF5, [[0, 1, 2]] * 2)
    assert zero_census(P("t1*t2", GF5), S).zeros == 5
    assert zero_census(SparsePoly.constant(GF3, 2), A33).zeros == 0
    c = zero_census(P("t1 - t2", GF3), A33, collect_points=True)
    assert c.zeros == 3 and c.zero_points == ((0, 0), (1, 1), (2, 2))


def test_grid_reduce_examples():
    assert format_poly(grid_reduce(P("t1^3", GF3, 2), A33)) == "t1"
    f = P("t1^2*t2 + 2*t1", GF3)
    assert grid_reduce(f, A33) == f
    # {0,1} inside Z/m behaves like a subset of the integers for t^2
    A = GridSpec.from_lists(integers_mod(7), [[0, 1]])
    assert format_poly(grid_reduce(P("t1^2", A.ring, 1), A)) == "t1"


@pytest.mark.parametrize("grid", [
    A33,
    GridSpec.from_lists(GF5, [[0, 1, 3], [2, 4]]),
    GridSpec.from_lists(integers_mod(6), [[0, 1], [2, 3]]),
    GridSpec.from_lists(GF(4), [[0, 1, 3], [0, 2, 3]]),
], ids=["gf3sq", "gf5", "z6", "gf4"])
def test_reduction_preserves_values_and_is_idempotent(grid):
    rng = random.Random(11)
    for _ in range(40):
        f = random_poly(rng, grid.ring, grid.n, 6, 0.4)
        g = grid_reduce(f, grid)
        assert is_reduced(g, grid)
        assert grid_reduce(g, grid) == g
        if not f.is_zero and not g.is_zero:
            assert degrees(g)[0] <= degrees(f)[0]
        for x in grid.points():
            assert naive_eval(f, x) == naive_eval(g, x)
        assert grid_reduce(f, grid, order=list(range(grid.n))[::-1]) == g


def test_vanishes_examples():
    A = GridSpec.from_lists(GF5, [[1, 2, 4]])
    phi = P("t1 - 1", GF5, 1) * P("t1 - 2", GF5, 1) * P("t1 - 4", GF5, 1)
    assert vanishes_on_grid(phi, A)
    assert not vanishes_on_grid(P("t1", GF5, 1), A)


def test_vanishing_iff_reduction_is_zero_exhaustive():
    rng = random.Random(3)
    for _ in range(200):
        f = random_poly(rng, GF3, 2, 5, 0.5)
        pointwise = all(naive_eval(f, x) == 0 for x in A33.points())
        assert vanishes_on_grid(f, A33) == pointwise == grid_reduce(f, A33).is_zero


def test_cats_on_condition_d_grids_exhaustive():
    # every nonzero reduced polynomial is nonzero somewhere on the grid
    grids = [A33, GridSpec.from_lists(integers_mod(6), [[0, 1], [1, 2]]),
             GridSpec.from_lists(GF(4), [[0, 1, 2], [1, 3]])]
    for A in grids:
        monos = list(product(*(range(a) for a in A.sizes)))
        for coeffs in product(range(A.ring.size), repeat=len(monos)):
            if not any(coeffs):
                continue
            f = SparsePoly(A.ring, A.n, dict(zip(monos, coeffs)))
            assert evaluate_on_grid(f, A).any()


def test_non_condition_d_grid_allows_vanishing_reduced_poly():
    A = GridSpec.from_lists(integers_mod(4), [[0, 2]])
    f = P("2*t1", A.ring, 1)
    assert is_reduced(f, A) and not f.is_zero
    assert not evaluate_on_grid(f, A).any()
    assert vanishes_on_grid(f, A)


def test_hasse_examples():
    assert format_poly(hasse_derivative(P("t1^3", GF5, 1), (1,))) == "3*t1^2"
    assert hasse_derivative(P("t1^2", GF(2), 1), (1,)).is_zero
    assert format_poly(hasse_derivative(P("t1*t2", GF3), (1, 1))) == "1"


def test_multiplicity_examples():
    f = P("t1*t2", GF3)
    assert multiplicity(f, (0, 0)) == 2
    assert multiplicity(f, (1, 1)) == 0
    g = P("t1^3 - 2*t1^2 + t1", GF5, 1)  # (t-1)^2 t
    assert multiplicity(g, (1,)) == 2
    assert multiplicity(SparsePoly.zero(GF3, 2), (0, 0)) == INF


def test_multiplicity_sum_examples():
    for q in (3, 4, 5):
        A = GridSpec.full(GF(q), 2)
        for d1, d2 in product(range(q), repeat=2):
            f = SparsePoly.monomial(A.ring, (d1, d2))
            assert multiplicity_sum(f, A) == q * d1 + q * d2
    assert multiplicity_sum(SparsePoly.constant(GF3, 2), A33) == 0
    g = P("t1^3 - 2*t1^2 + t1", GF5, 1)
    A = GridSpec.from_lists(GF5, [[0, 1, 2]])
    assert multiplicity_sum(g, A) == 3
    assert list(multiplicities_on_grid(g, GridSpec.full(GF5, 1))) == [1, 2, 0, 0, 0]


def test_restrict_examples():
    assert format_poly(restrict_to_line(P("t1*t2", GF3), (0, 0), (1, 1))) == "t1^2"
    c = SparsePoly.constant(GF3, 2, 2)
    assert format_poly(restrict_to_line(c, (1, 2), (2, 1))) == "2"
    assert format_poly(restrict_to_line(P("t1^2*t2", GF3), (1, 0), (0, 1))) == "t1"


def test_extremal_polylinear_examples():
    f = extremal_polylinear(A33, (2, 2), 2)
    assert format_poly(f) == "t1^2 + 2*t1"  # t1 (t1 - 1)
    assert zero_census(f, A33).nonzeros == 3
    assert extremal_polylinear(A33, (2, 2), 0) == SparsePoly.constant(GF3, 2)
    g = extremal_polylinear(A33, (2, 2), 4)
    assert zero_census(g, A33).nonzeros == 1


def test_chain_examples():
    assert leading_coeff_chain(P("t1*t2", GF3)).degrees == (1, 1)
    ch = leading_coeff_chain(P("t1^2*t2 + t1", GF3))
    assert ch.degrees == (2, 1)
    assert format_poly(ch.polys[0]) == "t1^2"
    assert leading_coeff_chain(SparsePoly.constant(GF3, 3, 2)).degrees == (0, 0, 0)
    with pytest.raises(DomainError):
        leading_coeff_chain(SparsePoly.zero(GF3, 2))


def test_text_round_trip():
    gf9 = GF(9)
    for text in ("t1^2*t2 + 2*t1 + 1", "0", "[1,2]*t1*t3 + [0,1]"):
        ring = gf9 if "[" in text else GF3
        f = P(text, ring, 3)
        assert P(format_poly(f), ring, 3) == f
    with pytest.raises(DomainError):
        P("t1 ^ x", GF3)


def test_grid_json_round_trip():
    A = GridSpec.from_lists(GF(4), [[0, 1], [2, 3]])
    assert grid_from_json(str(A)) == A


def test_taylor_identity_examples():
    f = P("t1^2*t2 + 2*t2", GF3)
    x = (1, 2)
    direct = substitute_shift(f, x)
    assert taylor_shift(f, x) == direct
    for J, c in direct.terms.items():
        assert evaluate(hasse_derivative(f, J), x) == c


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_derivative_of_derivative(seed):
    rng = random.Random(seed)
    f = random_poly(rng, GF(5), 2, 5)
    I = (rng.randrange(3), rng.randrange(3))
    J = (rng.randrange(3), rng.randrange(3))
    lhs = hasse_derivative(hasse_derivative(f, I), J)
    IJ = tuple(i + j for i, j in zip(I, J))
    c = GF(5).from_int(math.prod(math.comb(a + b, a) for a, b in zip(I, J)))
    assert lhs == hasse_derivative(f, IJ).scale(c)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_evaluation_is_a_homomorphism(seed):
    rng = random.Random(seed)
    ring = [GF3, GF(4), integers_mod(6)][seed % 3]
    f, g = random_poly(rng, ring, 2, 3), random_poly(rng, ring, 2, 3)
    x = (rng.randrange(ring.size), rng.randrange(ring.size))
    assert evaluate(f + g, x) == ring.add(evaluate(f, x), evaluate(g, x))
    assert evaluate(f * g, x) == ring.mul(evaluate(f, x), evaluate(g, x))
    assert evaluate(f, x) == naive_eval(f, x)


def test_grid_multiplicities_match_pointwise():
    rng = random.Random(5)
    for ring in (GF3, GF(4)):
        A = GridSpec.full(ring, 2)
        for _ in range(20):
            f = random_poly(rng, ring, 2, 4)
            if f.is_zero:
                continue
            got = multiplicities_on_grid(f, A)
            want = [multiplicity(f, x) for x in A.points()]
            assert list(got) == want
