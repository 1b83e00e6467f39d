import pytest
from hypothesis import given, settings, strategies as st

from dastacked import monomial as mono
from dastacked.algebra import reduce
from dastacked.groebner import (BoundTooSmall, complete_to_gb, koszul_certificate, nontip_counts,
                                nontips, overlap_differences, overlap_paths, verify_reduced_gb)
from dastacked.parser import parse_expression

from conftest import load
from helpers import random_element, random_ideal_element
from oracles import quotient_dims


def delta_spec():
    spec = load("monomial_line_11")
    sets = mono.overlap_sets_for(spec.algebra, spec.relations, 8)
    cls = mono.classify_stacked_monomial(sets)
    pres = mono.build_ext_presentation(spec.algebra, sets, cls)
    return pres.algebra, pres.relations


def find(spec, text):
    x = parse_expression(spec.algebra, text)
    return next(i for i, h in enumerate(spec.relations) if h.terms == x.terms)


def test_overlap_difference_single_step():
    spec = load("stacked_6_2_ext_candidate")
    a = spec.relations[find(spec, "al13.be6")]
    h1 = spec.relations[find(spec, "be6.ga3 - ga8.be3")]
    (od,) = overlap_differences(a, h1)
    assert od.value.format() == "al13.ga8.be3"
    assert reduce(od.value, spec.relations).is_zero()


def test_binomial_has_no_overlaps():
    alg, H = delta_spec()
    h = next(x for x in H if not x.is_monomial())
    assert h.format() == "b4.c1 - c3.b1"
    for g in H:
        assert overlap_differences(h, g) == [] and overlap_differences(g, h) == []


def test_monomial_overlaps_cancel():
    alg, H = delta_spec()
    a5a4 = parse_expression(alg, "a5.a4")
    a4a3 = parse_expression(alg, "a4.a3")
    (od,) = overlap_differences(a5a4, a4a3)
    assert od.value.is_zero()


def test_overlap_paths_need_proper_alignment():
    q = load("loop_self_overlap").quiver
    xx = q.path([0, 0])
    assert overlap_paths(xx, xx, q) == [(q.arrow(0), q.arrow(0))]
    xy = q.path([0, 1])
    assert overlap_paths(xy, xy, q) == []


def test_verify_listed_bases():
    alg, H = delta_spec()
    assert verify_reduced_gb(H).ok
    spec = load("stacked_6_2_ext_candidate")
    assert verify_reduced_gb(spec.relations).ok


def test_verify_detects_deleted_monomial():
    spec = load("stacked_6_2_ext_candidate")
    k = find(spec, "ga8.ga7")
    H = spec.relations[:k] + spec.relations[k + 1:]
    res = verify_reduced_gb(H)
    assert not res.ok
    h3 = next(i for i, h in enumerate(H) if h.format() == "be6.ga8 - ga8.be8")
    g = next(i for i, h in enumerate(H) if h.format() == "ga8.ga2")
    hits = [d for c, d in res.failures if c == "iii" and d["h1"] == h3 and d["h2"] == g]
    assert hits and hits[0]["normal_form"].format() == "-ga8.ga7.be2"


def test_verify_conditions_i_and_ii():
    spec = load("stacked_4_2_cycle")
    alg = spec.algebra
    two = parse_expression(alg, "2*a1.a2")
    assert verify_reduced_gb([two]).failures[0][0] == "i"
    res = verify_reduced_gb([parse_expression(alg, "a1.a2"), parse_expression(alg, "a1.a2.a3")])
    assert ("ii" in {c for c, _ in res.failures})


def test_verify_self_overlap_on_loop():
    spec = load("loop_self_overlap")
    res = verify_reduced_gb(spec.relations)
    assert not res.ok
    (cond, d), = res.failures
    assert cond == "iii" and d["h1"] == d["h2"] == 0
    assert d["normal_form"].format() == "-x.y.x + x.y.y"


def test_complete_loop_matches_oracle():
    spec = load("loop_self_overlap")
    G = complete_to_gb(spec.relations, degree_bound=6)
    assert G.status == "DegreeBounded"
    assert nontip_counts(G, spec.quiver, 6) == quotient_dims(spec, 6, strict=False)


def test_complete_monomial_unchanged():
    spec = load("monomial_line_11")
    G = complete_to_gb(spec.relations)
    assert G.verified
    assert sorted(g.format() for g in G.elements) == sorted(r.format() for r in spec.relations)


def test_complete_delta_unchanged():
    alg, H = delta_spec()
    G = complete_to_gb(H, degree_bound=6)
    assert G.verified
    assert {g.format() for g in G.elements} == {h.format() for h in H}


def test_complete_cycle_dimension():
    spec = load("stacked_4_2_cycle")
    G = complete_to_gb(spec.relations, degree_bound=12)
    assert verify_reduced_gb(G.elements).ok
    counts = nontip_counts(G, spec.quiver, 12)
    oracle = quotient_dims(spec)
    assert counts[:len(oracle)] == oracle and not any(counts[len(oracle):])
    # [DERIVED] independent span computation; see notes on the frozen value
    assert sum(counts) == 52


def test_bound_too_small():
    spec = load("stacked_4_2_cycle")
    with pytest.raises(BoundTooSmall):
        complete_to_gb(spec.relations, degree_bound=3)


def test_completion_rejects_inhomogeneous():
    spec = load("stacked_4_2_cycle")
    with pytest.raises(ValueError):
        complete_to_gb([parse_expression(spec.algebra, "a1.a2 - a7.a8 + a1.a2.a3.a4 - a7.a8.a3.a4")
                        + parse_expression(spec.algebra, "a7")])


def test_nontips():
    spec = load("stacked_6_2_ext_candidate")
    q = spec.quiver
    assert nontips(spec.relations, 0) == [q.trivial(v) for v in range(17)]
    assert len(nontips(spec.relations, 1)) == 34
    # [DERIVED] brute-force count of 2-step paths avoiding every tip
    brute = sum(1 for p in q.paths_of_length(2)
                if not any(p.arrows == h.tip().arrows for h in spec.relations))
    assert brute == 16 and len(nontips(spec.relations, 2)) == 16


def test_koszul_certificates():
    alg, H = delta_spec()
    assert koszul_certificate(alg.quiver, H, alg.order).verdict == "Koszul"
    spec = load("stacked_6_2_ext_candidate")
    assert koszul_certificate(spec.quiver, spec.relations, spec.order).verdict == "Koszul"
    assert koszul_certificate(load("hereditary").quiver, []).verdict == "Koszul"
    sq = load("commutative_square")
    assert koszul_certificate(sq.quiver, sq.relations).verdict == "Koszul"
    loop = load("loop_self_overlap")
    assert koszul_certificate(loop.quiver, loop.relations).verdict == "Inconclusive"
    with pytest.raises(ValueError):
        cyc = load("stacked_4_2_cycle")
        koszul_certificate(cyc.quiver, cyc.relations)


@pytest.mark.parametrize("name", ["stacked_4_2_cycle", "stacked_4_2_cycle_f7", "stacked_6_2",
                                  "commutative_square", "monomial_line_11", "late_failure",
                                  "mixed_lengths", "monomial_line_13", "hereditary"])
def test_nontip_dimension_matches_oracle(name):
    spec = load(name)
    oracle = quotient_dims(spec)
    G = complete_to_gb(spec.relations, degree_bound=len(oracle) + 2) if spec.relations else None
    counts = nontip_counts(G.elements if G else [], spec.quiver, len(oracle) + 1)
    assert counts == oracle + [0, 0]


@settings(deadline=None, max_examples=40)
@given(st.sampled_from(["stacked_4_2_cycle", "stacked_6_2", "commutative_square"]),
       st.randoms(use_true_random=False))
def test_confluence_and_membership(name, rng):
    spec = load(name)
    G = complete_to_gb(spec.relations)
    assert G.verified and verify_reduced_gb(G.elements).ok
    shuffled = list(G.elements)
    rng.shuffle(shuffled)
    a = random_element(spec.algebra, rng)
    assert reduce(a, G.elements).terms == reduce(a, shuffled).terms
    x = random_ideal_element(spec.algebra, spec.relations, rng)
    assert reduce(x, G.elements).is_zero()


def test_completion_then_verification_agree():
    for name in ["stacked_4_2_cycle", "stacked_6_2", "commutative_square", "monomial_line_13"]:
        G = complete_to_gb(load(name).relations)
        if G.verified:
            assert verify_reduced_gb(G.elements).ok
