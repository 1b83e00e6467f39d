import pytest

from dastacked.cli import RunConfig, run
from dastacked.hat import RegimeError, hat_dims, hat_grading, match_classes, verify_ext_presentation
from dastacked.parser import parse_algebra, serialize_algebra
from dastacked.resolution import resolve_algebra
from dastacked.stacked import classify_degrees
from dastacked.yoneda import Yoneda

from conftest import fixture_path, load


def resolved(name, h):
    spec = load(name)
    r = resolve_algebra(spec.algebra, spec.relations, h)
    return r, classify_degrees([r.degrees(n) for n in range(len(r.generators))], r.terminated)


@pytest.fixture(scope="module")
def six_two():
    return resolved("stacked_6_2", 9)


def test_hat_dims():
    # [DERIVED] 17 | 18+8+8 | 8+8 | ...
    assert hat_dims([17, 18, 8, 8, 8, 8, 8, 8, 8, 8]) == [17, 34, 16, 16, 16]
    assert hat_dims([11, 10, 4, 3, 2, 1, 0, 0, 0]) == [11, 17, 3, 0]
    assert hat_dims([4, 4, 1, 0]) == [4, 5]


def test_hat_grading_six_two(six_two):
    r, cls = six_two
    rep = hat_grading(r.ranks(), cls, Yoneda(r))
    assert rep.dims == [17, 34, 16, 16, 16]
    assert rep.closure.ok


def test_hat_grading_refused_for_2A_with_ext6():
    r, cls = resolved("stacked_4_2_cycle", 8)
    with pytest.raises(RegimeError):
        hat_grading(r.ranks(), cls)


def test_hat_grading_line_11():
    r, cls = resolved("monomial_line_11", 8)
    assert hat_grading(r.ranks(), cls, terminated=True).dims == [11, 17, 3]


def test_low_gldim_grading():
    r, cls = resolved("commutative_square", 5)
    assert hat_grading(r.ranks(), cls, terminated=True).dims == [4, 5]


def test_candidate_six_two_passes(six_two):
    r, _ = six_two
    cand = load("stacked_6_2_ext_candidate")
    rep = verify_ext_presentation(r, cand)
    assert rep.ok, [c for c in rep.checks if not c.ok]
    assert rep.nontip_counts[2] == 16
    assert rep.nontip_counts == [17, 34, 16, 16, 16]


def test_class_matching(six_two):
    r, _ = six_two
    cand = load("stacked_6_2_ext_candidate")
    arrows, vmap = match_classes(r, cand)
    assert sorted({arrows[lab][0] for lab in arrows}) == [1, 2, 3]
    assert len(set(vmap.values())) == 17


def test_candidate_missing_relation_fails_b(six_two):
    r, _ = six_two
    cand = load("stacked_6_2_ext_candidate")
    text = serialize_algebra(cand).replace("RELATION ga8.ga7\n", "")
    rep = verify_ext_presentation(r, parse_algebra(text))
    b = next(c for c in rep.checks if c.name.startswith("b"))
    assert not b.ok and "first mismatch at hat degree 2" in b.detail
    # one extra nontip path in hat degree 2
    assert rep.nontip_counts[2] == 17


def test_candidate_wrong_relation_fails_c(six_two):
    r, _ = six_two
    cand = load("stacked_6_2_ext_candidate")
    text = serialize_algebra(cand).replace("RELATION be6.ga3 - ga8.be3", "RELATION be6.ga3 + ga8.be3")
    rep = verify_ext_presentation(r, parse_algebra(text))
    c = next(c for c in rep.checks if c.name.startswith("c"))
    assert not c.ok


def test_emitted_delta_presentation_verifies():
    code, rep = run(RunConfig("ext", str(fixture_path("monomial_line_11"))))
    assert code == 0
    cand = parse_algebra(rep["tables"]["presentation"])
    r, _ = resolved("monomial_line_11", 8)
    v = verify_ext_presentation(r, cand)
    assert v.ok and v.hat_dims[:3] == [11, 17, 3]
