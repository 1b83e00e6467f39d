import random

import pytest
from hypothesis import given, settings, strategies as st

from dastacked import monomial as mono
from dastacked.generators import random_monomial
from dastacked.groebner import verify_reduced_gb
from dastacked.stacked import delta

from conftest import load
from oracles import anick_chains


def sets_for(name, n_max=8):
    spec = load(name)
    return spec, mono.overlap_sets_for(spec.algebra, spec.relations, n_max)


def fmt(spec, sets, n):
    return [spec.quiver.format_path(p) for p in sets[n].paths]


def test_overlaps_of_two_relations():
    spec = load("monomial_line_11")
    q = spec.quiver
    p = q.path([2, 3, 4, 5])
    r = q.path([4, 5, 6, 7])
    (u, v, proper), = mono.overlaps(p, r)
    assert len(u) == 2 and len(v) == 2 and proper
    assert mono.overlaps(q.path([0, 1]), q.path([0, 1])) == []
    assert mono.overlaps(q.path([0, 1]), q.path([5, 6])) == []


def test_line_11_sets():
    spec, sets = sets_for("monomial_line_11")
    assert [len(s) for s in sets] == [11, 10, 4, 3, 2, 1, 0]
    assert fmt(spec, sets, 3) == ["a1.a2.a3.a4.a5.a6", "a3.a4.a5.a6.a7.a8", "a5.a6.a7.a8.a9.a10"]
    assert fmt(spec, sets, 4) == ["a1.a2.a3.a4.a5.a6.a7.a8", "a3.a4.a5.a6.a7.a8.a9.a10"]
    assert fmt(spec, sets, 5) == ["a1.a2.a3.a4.a5.a6.a7.a8.a9.a10"]
    assert sets[1].paths == [spec.quiver.arrow(a) for a in range(10)]


def test_tip_minimal_drops_superpaths():
    spec = load("monomial_line_11")
    q = spec.quiver
    with pytest.warns(UserWarning):
        kept = mono.tip_minimal([q.path([0, 1, 2, 3]), q.path([1, 2]), q.path([1, 2])])
    assert kept == [q.path([1, 2])]


def test_non_monomial_rejected():
    spec = load("stacked_4_2_cycle")
    with pytest.raises(mono.NotMonomial):
        mono.overlap_sets_for(spec.algebra, spec.relations, 4)


@pytest.mark.parametrize("name", ["monomial_line_11", "monomial_line_13", "mixed_lengths", "late_failure"])
def test_sets_match_chain_oracle(name):
    spec, sets = sets_for(name)
    for n, s in enumerate(sets):
        # [DERIVED] occurrence-scanning enumeration of every path
        expect = sorted(anick_chains(spec, n, spec.quiver.num_vertices))
        got = sorted((p.source, p.arrows) for p in s.paths)
        assert got == expect, n


def test_classification():
    assert mono.classify_stacked_monomial(sets_for("monomial_line_11")[1]).describe() \
        == "DAStacked D=4 A=2, global dimension 5"
    cls = mono.classify_stacked_monomial(sets_for("mixed_lengths")[1])
    assert cls.verdict == "NotStacked" and cls.witness["n"] == 2
    cls = mono.classify_stacked_monomial(sets_for("late_failure")[1])
    assert cls.verdict == "NotStacked" and cls.witness["n"] == 4


def test_quadratic_line_is_koszul():
    spec = random_monomial(random.Random(3), kind="line", lengths=(2,))
    assert len(spec.relations) == 8
    sets = mono.overlap_sets_for(spec.algebra, spec.relations, 8)
    cls = mono.classify_stacked_monomial(sets)
    assert cls.verdict == "Koszul" and (cls.D, cls.A) == (2, 1)


def test_resolution_from_sets():
    spec, sets = sets_for("monomial_line_11")
    r = mono.monomial_resolution(spec.algebra, sets)
    assert r.ranks() == [11, 10, 4, 3, 2, 1, 0]
    assert [sorted(set(r.degrees(n))) for n in range(6)] == [[0], [1], [4], [6], [8], [10]]
    assert r.check() == []


def test_vertex_idempotents():
    spec, sets = sets_for("monomial_line_11")
    for n in range(1, 6):
        for i, e in enumerate(sets[n].elements):
            for v in range(11):
                k = mono.ext_product(sets, 0, v, n, i)
                assert k == (i if v == e.path.target else None)


def test_tier_one_products_vanish():
    _, sets = sets_for("monomial_line_11")
    for i in range(10):
        for j in range(10):
            assert mono.ext_product(sets, 1, j, 1, i) is None


def test_r5_factorization():
    _, sets = sets_for("monomial_line_11")
    rep = mono.check_R5_factorization(sets)
    assert rep.ok and rep.pairs[0]["R2R3"] and rep.pairs[0]["R3R2"]
    _, sets13 = sets_for("monomial_line_13")
    rep = mono.check_R5_factorization(sets13)
    assert rep.ok and len(rep.pairs) == 2
    # [DERIVED] enumeration of R^2 x R^3 concatenations landing in R^5
    for k in rep.pairs:
        assert len(rep.pairs[k]["R2R3"]) == 1 and len(rep.pairs[k]["R3R2"]) == 1
    _, sets_short = sets_for("mixed_lengths")
    assert mono.check_R5_factorization(sets_short).ok


def test_generation_in_low_degrees():
    for name in ["monomial_line_11", "monomial_line_13"]:
        _, sets = sets_for(name)
        for n in range(4, len(sets)):
            for k in range(len(sets[n])):
                assert any(mono.ext_product(sets, n - 2, j, 2, i) == k
                           for i in range(len(sets[2])) for j in range(len(sets[n - 2])))


def test_delta_lengths():
    for name in ["monomial_line_11", "monomial_line_13"]:
        spec, sets = sets_for(name)
        cls = mono.classify_stacked_monomial(sets)
        for n, s in enumerate(sets):
            assert all(p.length == delta(n, cls.D, cls.A) for p in s.paths)


def test_presentation_line_11():
    spec, sets = sets_for("monomial_line_11")
    pres = mono.build_ext_presentation(spec.algebra, sets, mono.classify_stacked_monomial(sets))
    Q = pres.quiver
    assert Q.num_vertices == 11
    tiers = [sum(1 for lab, _, _ in Q.arrows if lab[0] == t) for t in "abc"]
    assert tiers == [10, 4, 3]
    expected = ([f"a{i}.a{i - 1}" for i in range(2, 11)]
             + ["a5.b1", "a7.b2", "a9.b3", "b2.a2", "b3.a4", "b4.a6", "a7.c1", "a9.c2", "c2.a2", "c3.a4",
                "b4.c1 - c3.b1"])
    assert sorted(r.format() for r in pres.relations) == sorted(expected)
    check = verify_reduced_gb(pres.relations)
    assert check.ok
    assert pres.flags


def test_presentation_refuses_with_nonzero_ext6():
    spec, sets = sets_for("monomial_line_13")
    cls = mono.classify_stacked_monomial(sets)
    assert (cls.D, cls.A) == (4, 2)
    with pytest.raises(mono.RegimeError):
        mono.build_ext_presentation(spec.algebra, sets, cls)


@settings(deadline=None, max_examples=60)
@given(st.randoms(use_true_random=False))
def test_concatenation_associative(rng):
    spec = random_monomial(rng)
    sets = mono.overlap_sets_for(spec.algebra, spec.relations, 7)
    top = len(sets) - 1
    for _ in range(30):
        n1, n2, n3 = (rng.randint(0, 3) for _ in range(3))
        if n1 + n2 + n3 > top or not (sets[n1].elements and sets[n2].elements and sets[n3].elements):
            continue
        i, j, k = (rng.randrange(len(sets[n])) for n in (n1, n2, n3))
        # (f.g).h against f.(g.h) with f in degree n3, g in n2, h in n1
        gh = mono.ext_product(sets, n2, j, n1, i)
        left = None if gh is None else mono.ext_product(sets, n3, k, n1 + n2, gh)
        fg = mono.ext_product(sets, n3, k, n2, j)
        right = None if fg is None else mono.ext_product(sets, n2 + n3, fg, n1, i)
        assert left == right
