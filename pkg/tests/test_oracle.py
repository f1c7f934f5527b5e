from __future__ import annotations

import json
from itertools import product

import pytest

from afgrid import bounds as B
from afgrid import oracle as O
from afgrid.errors import CapExceededError, DomainError
from afgrid.poly import GridSpec, SparsePoly, degrees, evaluate, format_poly, parse_poly, zero_census
from afgrid.ring import GF, integers_mod


def naive_min_nonzeros_by_degree(A):
    """Every reduced polynomial, evaluated point by point."""
    ring = A.ring
    monos = [m for m in product(*(range(a) for a in A.sizes))]
    pts = list(A.points())
    best = {}
    for coeffs in product(range(ring.size), repeat=len(monos)):
        if not any(coeffs):
            continue
        f = SparsePoly(ring, A.n, dict(zip(monos, coeffs)))
        d = degrees(f)[0]
        nz = sum(1 for x in pts if evaluate(f, x))
        best[d] = min(best.get(d, nz), nz)
    return best


def test_af_on_gf2_square():
    A = GridSpec.full(GF(2), 2)
    fam = O.FamilySpec(A, 2)
    assert fam.size == 16 and fam.mode == "exhaustive"
    r = O.verify("af", fam)
    assert r.ok and r.checked == 15 and r.skipped == 1
    assert sorted(e["key"]["d"] for e in r.tight) == [0, 1, 2]


def test_af_tight_values_match_naive_scan():
    for A in [GridSpec.full(GF(2), 2), GridSpec.full(GF(3), 2),
              GridSpec.from_lists(GF(5), [[0, 1, 2], [1, 4]])]:
        naive = naive_min_nonzeros_by_degree(A)
        r = O.verify("af", O.FamilySpec(A, sum(a - 1 for a in A.sizes)))
        assert r.ok
        observed = {w["key"]["d"]: w["observed"] for w in r.witnesses}
        assert observed == naive
        for d, v in naive.items():
            assert v == B.alon_furedi_nonzeros(A.sizes, d).value


def test_gaf_tight_witness_is_a_product_of_linear_factors():
    A = GridSpec.full(GF(3), 2)
    r = O.verify("gaf", O.FamilySpec(A, 2, per_var_caps=(1, 1), prefills=((2, 2),)))
    assert r.ok
    tight = {e["key"]["d"]: e["poly"] for e in r.tight}
    assert tight[2] == "t1*t2"
    f = parse_poly(tight[2], A.ring, 2)
    assert zero_census(f, A).nonzeros == B.generalized_af_nonzeros((3, 3), (2, 2), 2).value == 4


def test_schwartz_on_subset_grid():
    A = GridSpec.from_lists(GF(5), [[0, 1, 2]] * 2)
    r = O.verify("schwartz", O.FamilySpec(A, 2))
    assert r.ok
    w = next(w for w in r.witnesses if w["key"]["chain"] == [1, 1])
    assert w["bound"] == 6
    assert zero_census(parse_poly("t1*t2", A.ring, 2), A).zeros == 5 <= 6


def test_suite_all_has_no_violations():
    for A in [GridSpec.full(GF(2), 3), GridSpec.full(GF(3), 2), GridSpec.full(GF(4), 2),
              GridSpec.from_lists(integers_mod(6), [[0, 1], [2, 3, 4]])]:
        fam = O.FamilySpec.auto(A, sum(a - 1 for a in A.sizes), count=3000)
        for r in O.verify_suite("all", fam):
            assert r.ok, (str(A), r.theorem_id, r.violations[:2])
            if r.theorem_id not in ("gaf", "dkss"):  # those count per prefill / per fiber
                assert r.checked + r.skipped == (fam.size if fam.mode == "exhaustive" else fam.count)


def test_witnesses_replay():
    A = GridSpec.from_lists(GF(5), [[0, 1, 3], [2, 4]])
    fam = O.FamilySpec(A, 3)
    for r in O.verify_suite("all", fam):
        for e in r.witnesses:
            assert O.replay(r, e) == e["observed"], (r.theorem_id, e)


def test_threads_merge_identically():
    A = GridSpec.full(GF(3), 2)
    fam = O.FamilySpec(A, 4)
    one = [r.to_json() for r in O.verify_suite("all", fam, threads=1)]
    many = [r.to_json() for r in O.verify_suite("all", fam, threads=6)]
    assert json.dumps(one) == json.dumps(many)


def test_random_mode_is_seeded():
    A = GridSpec.full(GF(5), 2)
    fam = O.FamilySpec.auto(A, 8, seed=9, count=4000)
    assert fam.mode == "random"
    a = O.verify("af", fam).to_json()
    b = O.verify("af", fam).to_json()
    assert a == b and a["seed"] == 9
    c = O.verify("af", O.FamilySpec.auto(A, 8, seed=10, count=4000)).to_json()
    assert c["seed"] == 10


def test_non_condition_d_grid_claims_nothing():
    A = GridSpec.from_lists(integers_mod(4), [[0, 2]])
    w = O.vanishing_witness(A)
    assert format_poly(w) == "2*t1"
    r = O.verify("af", O.FamilySpec(A, 1))
    assert r.checked == 0 and r.ok and r.notes
    assert O.vanishing_witness(GridSpec.full(GF(3), 2)) is None


def test_family_validation():
    A = GridSpec.full(GF(3), 2)
    with pytest.raises(CapExceededError):
        O.FamilySpec(A, 4, cap=100)
    with pytest.raises(DomainError):
        O.FamilySpec(A, 2, per_var_caps=(3, 0))
    with pytest.raises(DomainError):
        O.verify("nope", O.FamilySpec(A, 1))
    with pytest.raises(DomainError):
        O.verify_suite("nope", O.FamilySpec(A, 1))
    assert O.FamilySpec(A, 1).monomials == [(0, 0), (0, 1), (1, 0)]


def test_sharpness_scan_examples():
    A = GridSpec.full(GF(3), 2)
    rep = O.sharpness_scan("af", A)
    assert rep.all_equal and [r.degree for r in rep.rows] == [0, 1, 2, 3, 4]
    assert rep.rows[0].poly == "1" and rep.rows[0].observed == 9
    rep = O.sharpness_scan("gdmlz", A)
    row = next(r for r in rep.rows if r.degree == [1, 1])
    assert row.equal and row.bound == 4
    rep = O.sharpness_scan("gaf", GridSpec.from_lists(GF(5), [[0, 1, 2, 3], [0, 2, 4]]), (2, 1))
    assert rep.all_equal
    with pytest.raises(DomainError):
        O.sharpness_scan("sz", A)


def test_find_extremal_examples():
    f, v = O.find_extremal(GridSpec.full(GF(2), 2), 1)
    assert v == 2 == B.alon_furedi_nonzeros((2, 2), 1).value
    assert degrees(f)[0] == 1
    f, v = O.find_extremal(GridSpec.full(GF(3), 2), 2, "max_multiplicity_sum")
    assert v >= 6 and O.is_polylinear(f)
    f, v = O.find_extremal(GridSpec.full(GF(3), 2), 0, "max_multiplicity_sum")
    assert v == 0 and degrees(f)[0] == 0


def test_is_polylinear():
    ring = GF(3)
    assert O.is_polylinear(parse_poly("t1*t2 + t2", ring, 2))  # (t1 + 1) t2
    assert not O.is_polylinear(parse_poly("t1 + t2", ring, 2))
    assert not O.is_polylinear(parse_poly("t1^2 + 1", ring, 2))  # irreducible over GF(3)


def test_petrov_compare_examples():
    A = GridSpec.full(GF(3), 2)
    ring = A.ring
    g, rec = O.petrov_compare(parse_poly("t1*t2", ring, 2), A)
    assert rec.holds and rec.zeros_g >= 5
    g, rec = O.petrov_compare(parse_poly("t1 + t2", ring, 2), A)
    assert rec.zeros_f == 3 and rec.zeros_g >= 3


def test_dkss_lemma_examples():
    A = GridSpec.full(GF(3), 2)
    rep = O.dkss_lemma_check(parse_poly("t1*t2^2", A.ring, 2), A)
    assert rep["violations"] == 0
    row = next(r for r in rep["rows"] if r["point"] == [0])
    assert row["rhs"] == 5 and row["lhs"] <= 5
    rep = O.dkss_lemma_check(parse_poly("t2^2 + t2", A.ring, 2), A)
    assert rep["violations"] == 0


def test_dkss_random_cube():
    A = GridSpec.full(GF(3), 3)
    fam = O.FamilySpec(A, 6, mode="random", seed=4, count=600)
    r = O.verify("dkss", fam)
    assert r.ok and r.checked > 0


def test_multiplicity_gap_records():
    assert O.multiplicity_af_gap(3, 2, 2)["verdict"] == "exceeds"
    rec = O.multiplicity_af_gap(3, 1, 1)
    assert rec["multiplicity_sum"] == rec["af_zero_count"] == 6
