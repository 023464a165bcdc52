import json

import pytest

from asymih.arcs import arc_limit, escape_cone_check
from asymih.asymptotic import (CANDIDATE, CERTIFIED, NON_PROPER, PROPER, TARGET_VARS,
                               NotGenericallyFinite, certify_point, critical_values,
                               fiber_resultants, is_proper, jelonek_candidates, jelonek_set,
                               uniruled_witness)
from asymih.gaussrat import GaussRat, ONE, ZERO
from asymih.parse import parse_map, parse_poly

from corpus_maps import NON_PROPER_MAPS, PROPER_MAPS, automorphisms


def T(text):
    return parse_poly(text, TARGET_VARS)


def pt(a, b):
    return (GaussRat(a), GaussRat(b))


def test_fiber_resultants_for_blowup():
    rx, ry = fiber_resultants(parse_map("F=(x, x*y)"))
    # eliminating y leaves x - y1; eliminating x leaves y1*y - y2
    assert rx.leading_coeff_in("x").is_constant()
    assert ry.leading_coeff_in("y").with_vars(TARGET_VARS) in (T("y1"), -T("y1"))


@pytest.mark.parametrize("map_text, expected", [
    ("F=(x, y)", []),
    ("F=(x, x*y)", ["y1"]),
    ("F=(x^2, y)", []),
])
def test_candidates(map_text, expected):
    S = jelonek_candidates(parse_map(map_text))
    assert sorted(str(c.poly) for c in S.components) == expected
    assert all(c.status == CANDIDATE for c in S.components)


def test_candidates_reject_degenerate_maps():
    with pytest.raises(NotGenericallyFinite):
        jelonek_candidates(parse_map("F=(x + y, (x + y)^2)"))


def test_certify_point_examples():
    F = parse_map("F=(x, x*y)")
    w = certify_point(F, pt(0, 1))
    assert w is not None and str(w.arc) == "(1) t^1, (1) t^-1"
    assert arc_limit(F, w.arc) == pt(0, 1)
    assert certify_point(parse_map("F=(x, y)"), pt(2, 3)) is None
    assert certify_point(F, pt(1, 1), max_exp=6) is None


@pytest.mark.parametrize("map_text, expected", list(NON_PROPER_MAPS.items()))
def test_non_proper_maps_match_hand_elimination(map_text, expected):
    F = parse_map(map_text)
    S = jelonek_set(F)
    certified = sorted(str(c.poly) for c in S.by_status(CERTIFIED))
    assert certified == sorted(str(T(e)) for e in expected)
    assert is_proper(F) == NON_PROPER


@pytest.mark.parametrize("map_text", PROPER_MAPS)
def test_proper_maps(map_text):
    assert is_proper(parse_map(map_text)) == PROPER


@pytest.mark.parametrize("F", automorphisms(), ids=str)
def test_automorphism_compositions_are_proper(F):
    assert is_proper(F) == PROPER


def all_corpus_maps():
    return [parse_map(m) for m in list(NON_PROPER_MAPS) + PROPER_MAPS] + automorphisms()


@pytest.mark.parametrize("F", all_corpus_maps(), ids=str)
def test_soundness_conservativity_purity(F):
    cand = {str(c.poly) for c in jelonek_candidates(F).components}
    S = jelonek_set(F)
    for c in S.components:
        assert str(c.poly) in cand
        if c.status == CERTIFIED:
            assert c.witnesses
            assert c.is_curve()
            for w in c.witnesses:
                assert w.verify(F)
                assert min(w.arc.exponents) < 0
                assert escape_cone_check(F, w.arc)
                assert c.contains(w.target)


def test_jelonek_report_is_deterministic():
    F = parse_map("F=(x*y, x*y^2)")
    a = json.dumps(jelonek_set(F, seed=7).to_json())
    b = json.dumps(jelonek_set(F, seed=7).to_json())
    assert a == b


def test_samples_must_be_positive():
    with pytest.raises(ValueError):
        jelonek_set(parse_map("F=(x, x*y)"), samples=0)


def test_uniruled_line_and_parabola():
    F = parse_map("F=(x, x*y)")
    S = jelonek_set(F)
    s = parse_poly("s", ("s",))
    phi = uniruled_witness(S, T("y1"), pt(0, 5))
    assert phi[0].is_zero() and phi[1](GaussRat(0)) == GaussRat(5)
    assert phi[1].degree() == 1
    P = jelonek_set(parse_map("F=(x + x^2*y^2, x*y)"))
    phi = uniruled_witness(P, T("y2^2 - y1"), pt(1, 1))
    h = T("y2^2 - y1")
    assert h.subs({"y1": phi[0], "y2": phi[1]}).is_zero()
    assert (phi[0](GaussRat(0)), phi[1](GaussRat(0))) == pt(1, 1)
    assert max(p.degree() for p in phi) >= 1


def test_uniruled_unknown_and_errors():
    S = jelonek_set(parse_map("F=(x, x*y)"))
    with pytest.raises(ValueError):
        uniruled_witness(S, T("y1"), pt(1, 5))
    from asymih.asymptotic import Component
    hyperbola = Component((T("y1*y2 - 1"),), CERTIFIED)
    assert uniruled_witness(S, hyperbola, pt(1, 1)) is None
    cubic = Component((T("y2^2 - y1^3"),), CERTIFIED)
    assert uniruled_witness(S, cubic, pt(1, 1)) is None


def test_critical_values_examples():
    assert critical_values(parse_map("F=(x, y)")).is_empty()
    K = critical_values(parse_map("F=(x^2, y)"))
    assert [str(c.poly) for c in K.by_status(CERTIFIED)] == ["y1"]
    K = critical_values(parse_map("F=(x, x*y)"))
    certified = K.by_status(CERTIFIED)
    assert len(certified) == 1 and certified[0].contains(pt(0, 0))
    assert set(map(str, certified[0].equations)) == {"y1", "y2"}
    with pytest.raises(NotGenericallyFinite):
        critical_values(parse_map("F=(x + y, (x + y)^2)"))
