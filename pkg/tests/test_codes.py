from __future__ import annotations

import csv
import io
from itertools import product

import numpy as np
import pytest

from afgrid import codes as C
from afgrid.bins import BinProfile, min_product
from afgrid.bounds import klp_min_weight
from afgrid.errors import CapExceededError, DomainError
from afgrid.poly import GridSpec, evaluate, parse_poly
from afgrid.ring import GF, integers_mod


def naive_min_weight(spec):
    """Every nonzero message, one at a time, in plain Python."""
    gen = C.generator_matrix(spec)
    ring = spec.ring
    rows = [[int(v) for v in r] for r in gen.rows]
    best = None
    for msg in product(range(ring.size), repeat=len(rows)):
        if not any(msg):
            continue
        word = [0] * spec.length
        for m, r in zip(msg, rows):
            if m:
                word = [ring.add(w, ring.mul(m, v)) for w, v in zip(word, r)]
        wt = sum(1 for v in word if v)
        best = wt if best is None else min(best, wt)
    return best


def small_specs():
    for q, n in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1), (4, 2)]:
        for d in range(n * (q - 1) + 1):
            yield C.grm(q, n, d)
    g = GridSpec.from_lists(GF(5), [[0, 1, 2], [1, 3]])
    for d in range(4):
        yield C.agc(g, d)
    g = GridSpec.from_lists(GF(4), [[0, 1, 2, 3], [0, 1, 2]])
    for b in [(1, 1), (2, 1), (2, 2), (3, 1)]:
        room = sum(a - x for a, x in zip(g.sizes, b))
        for d in range(room + 1):
            yield C.gagc(g, d, b)


def test_basis_examples():
    g3 = GridSpec.full(GF(3), 2)
    assert C.monomial_basis(C.agc(g3, 1)) == [(0, 0), (0, 1), (1, 0)]
    for q, n in [(2, 3), (3, 2), (4, 2)]:
        assert C.dimension(C.grm(q, n, n * (q - 1))) == q**n
    assert sorted(C.monomial_basis(C.gagc(g3, 2, (2, 2)))) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_generator_examples():
    g3 = GridSpec.full(GF(3), 2)
    gm = C.generator_matrix(C.agc(g3, 0))
    assert gm.rows.shape == (1, 9) and (gm.rows == 1).all()
    g2 = GridSpec.full(GF(2), 2)
    gm = C.generator_matrix(C.agc(g2, 1))
    assert gm.rows.tolist() == [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1]]
    gm = C.generator_matrix(C.grm(3, 2, 1))
    assert gm.rows.shape == (3, 9) and C.rank(GF(3), gm.rows) == 3


def test_generator_csv():
    gm = C.generator_matrix(C.agc(GridSpec.full(GF(2), 2), 1))
    text = gm.to_csv(GF(2))
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["monomial", "(0,0)", "(0,1)", "(1,0)", "(1,1)"]
    assert text.splitlines()[1:] == ["1,1,1,1,1", "t2,0,1,0,1", "t1,0,0,1,1"]


def test_min_weight_examples():
    assert C.min_weight_bruteforce(C.grm(3, 2, 2)).weight == 3
    assert C.min_weight_formula(C.grm(3, 2, 2)) == 3
    g3 = GridSpec.full(GF(3), 2)
    assert C.min_weight_bruteforce(C.agc(g3, 1)).weight == 6
    assert C.min_weight_formula(C.agc(g3, 1)) == 6
    g = GridSpec.from_lists(GF(5), [[0, 1, 2, 4], [1, 3, 4]])
    assert C.min_weight_formula(C.agc(g, 5)) == 1
    assert C.min_weight_bruteforce(C.agc(g, 5)).weight == 1


def test_bruteforce_witness_examples():
    g2 = GridSpec.full(GF(2), 2)
    r = C.min_weight_bruteforce(C.agc(g2, 1))
    assert r.weight == 2
    assert r.witness == (0, 0, 1, 1)  # table of t1, first in lex message order
    assert sum(1 for v in r.witness if v) == 2
    r0 = C.min_weight_bruteforce(C.agc(GridSpec.full(GF(3), 2), 0))
    assert r0.weight == 9 and set(r0.witness) == {1}
    g3 = GridSpec.full(GF(3), 2)
    assert C.min_weight_bruteforce(C.gagc(g3, 2, (2, 2))).weight == 4
    assert min_product(BinProfile((3, 3), (2, 2), 4)) == 4


def test_witness_is_a_codeword():
    for spec in [C.grm(3, 2, 2), C.grm(4, 2, 3), C.agc(GridSpec.from_lists(GF(5), [[0, 1, 2], [1, 3]]), 2)]:
        r = C.min_weight_bruteforce(spec)
        assert C.encode(spec, r.message) == r.witness
        assert sum(1 for v in r.witness if v) == r.weight


def test_encode_examples():
    spec = C.agc(GridSpec.full(GF(3), 1), 1)
    assert C.monomial_basis(spec) == [(0,), (1,)]
    assert C.encode(spec, [0, 0]) == (0, 0, 0)
    assert C.encode(spec, [0, 1]) == (0, 1, 2)
    assert C.encode(spec, [1, 1]) == (1, 2, 0)
    with pytest.raises(DomainError):
        C.encode(spec, [1])


def test_encode_matches_polynomial_evaluation():
    ring = GF(4)
    spec = C.grm(4, 2, 3)
    basis = C.monomial_basis(spec)
    rng = np.random.default_rng(2)
    msg = [int(x) for x in rng.integers(0, 4, len(basis))]
    from afgrid.poly import SparsePoly
    f = SparsePoly(ring, 2, dict(zip(basis, msg)))
    want = tuple(evaluate(f, x) for x in spec.grid.points())
    assert C.encode(spec, msg) == want


def test_formula_matches_naive_enumeration():
    for spec in small_specs():
        if spec.ring.size ** C.dimension(spec) > 5000:
            continue
        assert C.min_weight_formula(spec) == naive_min_weight(spec), spec


def test_formula_matches_bruteforce_small_specs():
    for spec in small_specs():
        assert C.min_weight_bruteforce(spec).weight == C.min_weight_formula(spec), spec


def test_formula_matches_bruteforce_gf3_cube():
    for d in range(7):
        spec = C.grm(3, 3, d)
        assert C.min_weight_bruteforce(spec).weight == C.min_weight_formula(spec)


def test_klp_consistency():
    for q, n in [(2, 3), (3, 2), (3, 3), (4, 2), (5, 2)]:
        for d in range(1, n * (q - 1) + 1):
            assert C.min_weight_formula(C.grm(q, n, d)) == klp_min_weight(n, q, d).value


def test_prefill_monotonicity():
    g = GridSpec.from_lists(GF(5), [[0, 1, 2, 3], [0, 2, 4]])
    for b in product(range(1, 5), range(1, 4)):
        room = sum(a - x for a, x in zip(g.sizes, b))
        for d in range(room + 1):
            assert C.min_weight_formula(C.gagc(g, d, b)) >= C.min_weight_formula(C.agc(g, d))


def test_rank_equals_dimension():
    for spec in small_specs():
        gm = C.generator_matrix(spec)
        assert C.rank(spec.ring, gm.rows) == len(gm.basis)


def test_rank_over_z6_subset_grid():
    g = GridSpec.from_lists(integers_mod(6), [[0, 1], [1, 2]])
    spec = C.agc(g, 2)
    assert C.min_weight_bruteforce(spec).weight == C.min_weight_formula(spec) == 1
    assert C.min_weight_bruteforce(C.agc(g, 1)).weight == naive_min_weight(C.agc(g, 1)) == 2


def test_dual_route_matches_direct():
    for spec in [C.grm(3, 2, 2), C.grm(4, 2, 2), C.grm(4, 2, 3), C.grm(2, 3, 1)]:
        direct = C.weight_distribution(spec, method="direct")
        dual = C.weight_distribution(spec, method="dual")
        assert direct == dual
        assert sum(direct) == spec.ring.size ** C.dimension(spec)
        assert C.min_weight_bruteforce(spec, method="dual").weight == C.min_weight_formula(spec)


def test_macwilliams_of_repetition_code():
    # the even-weight code of length 3 has the repetition code as its dual
    assert C.macwilliams([1, 0, 3, 0], 2) == [1, 0, 0, 1]


def test_cap_enforced():
    with pytest.raises(CapExceededError):
        C.min_weight_bruteforce(C.grm(4, 3, 3), cap=10**4)
    with pytest.raises(CapExceededError):
        C.generator_matrix(C.grm(3, 3, 1), cap=10)


def test_exact_route_small_and_frame():
    r = C.min_weight_exact(C.grm(3, 2, 2))
    assert (r.weight, r.method) == (3, "direct")
    for d, cap, method in [(6, 300, "frame"), (7, 300, "dual")]:
        spec = C.grm(4, 3, d)
        r = C.min_weight_exact(spec, cap=cap)
        assert r.method == method
        assert r.weight == C.min_weight_formula(spec)
        if r.witness is not None:
            assert sum(1 for v in r.witness if v) == r.weight


def test_spec_validation():
    g = GridSpec.full(GF(3), 2)
    with pytest.raises(DomainError):
        C.agc(g, 5)
    with pytest.raises(DomainError):
        C.gagc(g, 1, (4, 1))
    with pytest.raises(DomainError):
        C.agc(GridSpec.from_lists(integers_mod(4), [[0, 2]]), 0)


def test_nullspace_is_orthogonal():
    ring = GF(4)
    gm = C.generator_matrix(C.grm(4, 2, 2))
    H = C.nullspace(ring, gm.rows)
    assert len(H) == 16 - C.dimension(C.grm(4, 2, 2))
    assert not ring.matmul(gm.rows, H.T).any()


def test_orbit_search_matches_enumeration():
    cases = [GridSpec.from_lists(GF(5), [[0, 1, 2, 3, 4], [0, 1, 2]]),
             GridSpec.from_lists(GF(4), [[0, 1, 2, 3], [1, 2, 3]]),
             GridSpec.from_lists(GF(3), [[0, 1, 2], [0, 1], [0, 1, 2]])]
    for A in cases:
        for d in range(1, sum(a - 1 for a in A.sizes) + 1):  # built for small weights
            spec = C.agc(A, d)
            G = C.generator_matrix(spec).rows
            w, word = C._orbit_search(A.ring, spec, G, 2**22)
            assert w == C.min_weight_bruteforce(spec).weight
            assert np.count_nonzero(word) == w
            assert C.rank(A.ring, np.vstack([G, word[None, :]])) == len(G)


def test_automorphisms_preserve_code():
    A = GridSpec.from_lists(GF(4), [[0, 1, 2, 3], [0, 1, 2]])
    spec = C.agc(A, 2)
    G = C.generator_matrix(spec).rows
    group = C._automorphisms(A.ring, spec, G, 10**5)
    assert len({g.tobytes() for g in group}) == len(group)
    for g in group[:: max(1, len(group) // 25)]:
        assert C.rank(A.ring, np.vstack([G, G[:, g]])) == len(G)
