import json

import pytest

from generic_tor.bertini import (
    GateError,
    bad_locus,
    build_family,
    check_vanishing,
    double_complex_route,
    generic_freeness_certificate,
    ideal_intersection,
    monte_carlo_density,
    sample_for_trial,
    tensor_presentations,
    tor_translate,
    validate_scenario,
    verify_bad_locus,
)
from generic_tor.fields import GF
from generic_tor.group import GroupElement
from generic_tor.groebner import ideal_gb
from generic_tor.hilbert import TPoly
from generic_tor.poly import Ring
from generic_tor.resolutions import Presentation
from generic_tor.scenario import ScenarioError, corpus_names, load_corpus, scenario_from_dict

ONE_MINUS_T = TPoly.from_list([1, -1])
T_ONE_MINUS_T = TPoly.from_list([0, 1, -1])
X4 = ["x0", "x1", "x2", "x3"]


def scenario(**over):
    doc = {
        "name": "test",
        "field": {"type": "Fp", "p": 32003},
        "ring": {"vars": X4},
        "E": {"ideal": ["x3"]},
        "F": {"ideal": ["x3"]},
        "i_max": 3,
    }
    doc.update(over)
    return scenario_from_dict(doc)


def plane_family(matrix=None, params=("t",), **over):
    if matrix is None:
        matrix = [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["t", "0", "0", "1"]]
    return scenario(group={"type": "parametric", "params": list(params), "matrix": matrix}, **over)


# ----------------------------------------------------------------- validation


def test_validation_accepts_planes():
    assert validate_scenario(load_corpus("planes-P3")).name == "planes-P3"


def test_validation_rejects_nilpotent_relation():
    s = scenario_from_dict({
        "ring": {"vars": ["e"]}, "x_relations": ["e^2"], "E": {"ideal": []}, "F": {"ideal": []},
    })
    with pytest.raises(ScenarioError, match="non-reduced"):
        validate_scenario(s)


def test_validation_rejects_ungraded_module():
    s = scenario(E={"ideal": ["x3 - 1"]})
    with pytest.raises(ScenarioError, match="not homogeneous"):
        validate_scenario(s)
    # the same module is fine once the grading is dropped
    validate_scenario(scenario(E={"ideal": ["x3 - 1"]}, ring={"vars": X4, "graded": False}))


def test_validation_rejects_singular_parametric_group():
    s = plane_family([["t", "t", "0", "0"], ["t", "t", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]])
    with pytest.raises(ScenarioError, match="zero determinant"):
        validate_scenario(s)


def test_validation_rejects_unit_ideal_relations():
    s = scenario_from_dict({"ring": {"vars": ["x", "y"], "graded": False}, "x_relations": ["x", "x + 1"],
                            "E": {"ideal": []}, "F": {"ideal": []}})
    with pytest.raises(ScenarioError):
        validate_scenario(s)


# ------------------------------------------------------------- vanishing


def test_check_vanishing_planes():
    s = load_corpus("planes-P3")
    rep = check_vanishing(s, GroupElement.identity(s.field, 4))
    assert not rep.verdict and rep.k_polynomials[1] == T_ONE_MINUS_T
    _, g = sample_for_trial(s, 0)
    rep = check_vanishing(s, g)
    assert rep.verdict and rep.k_polynomials[0] == ONE_MINUS_T * ONE_MINUS_T
    assert rep.zero[1:] == [True] * s.i_max


def test_check_vanishing_free_E():
    s = scenario(E={"free": 1})
    for g in (GroupElement.identity(s.field, 4), sample_for_trial(s, 3)[1]):
        assert check_vanishing(s, g).verdict


def test_verdict_matches_flags():
    s = load_corpus("lines-P3")
    rep = check_vanishing(s, GroupElement.identity(s.field, 4))
    assert rep.verdict == all(rep.zero[1:])
    assert json.loads(json.dumps(rep.as_dict()))["verdict"] == rep.verdict


@pytest.mark.parametrize("name", [n for n in corpus_names() if n != "gr24-schubert-sigma1"])
def test_route_consistency(name):
    s = load_corpus(name)
    for t in range(2):
        vals, g = sample_for_trial(s, t)
        direct = [h.signature() for h in tor_translate(s, g)]
        dc = [h.signature() for h in double_complex_route(s, g, vals, full=not s.parametric)]
        assert direct == dc


def test_tensor_presentations_is_sum_of_ideals():
    R = Ring(("x", "y"))
    T = tensor_presentations(Presentation.cyclic(R, ["x"]), Presentation.cyclic(R, ["y"]))
    assert ideal_gb(R, [p for row in T.map.matrix for p in row]) == ideal_gb(R, [R("x"), R("y")])


# --------------------------------------------------------------- density


def test_density_small_runs():
    s = load_corpus("planes-P3")
    rep = monte_carlo_density(s, 5)
    assert rep.density == 1.0 and rep.failing == []
    again = monte_carlo_density(s, 5)
    assert json.dumps(rep.as_dict()) == json.dumps(again.as_dict())
    pinned = s.with_overrides(pin="identity")
    rep = monte_carlo_density(pinned, 3)
    assert rep.density == 0.0 and len(rep.failing) == 3
    assert monte_carlo_density(scenario(F={"free": 1}), 3).density == 1.0
    with pytest.raises(ValueError):
        monte_carlo_density(s, 0)


# ---------------------------------------------------------- certificates


def test_certificate_ax_minus_one():
    R = Ring(("a", "x"), GF(32003))
    cert = generic_freeness_certificate(Presentation.cyclic(R, ["a*x - 1"]), ["a"])
    A = cert.A
    assert A.variables == ("a",)
    assert ideal_gb(A, [A("a")]).contains(cert.f)
    assert cert.rank == 1
    assert cert.numerator_at([1]) == cert.numerator_at([2]) == cert.generic_numerator
    assert cert.numerator_at([0]) != cert.numerator_at([1])
    assert all(cert.check([v]) for v in range(0, 12))


def test_certificate_x_squared_minus_a():
    R = Ring(("a", "x"), GF(32003))
    cert = generic_freeness_certificate(Presentation.cyclic(R, ["x^2 - a"]), ["a"])
    assert cert.f.is_constant() and cert.rank == 2
    assert cert.numerator_at([0]) == cert.numerator_at([1]) == cert.generic_numerator


def test_certificate_free_family():
    R = Ring(("a", "x"), GF(32003))
    cert = generic_freeness_certificate(Presentation.free(R, [0, 0]), ["a"])
    assert cert.f.is_constant() and cert.rank is None


def test_certificate_zero_module():
    R = Ring(("a", "x"), GF(32003))
    cert = generic_freeness_certificate(Presentation.cyclic(R, ["1"]), ["a"])
    assert cert.f.is_constant() and cert.rank == 0


def test_certificate_soundness_on_families():
    for name in ("plane-family-1param", "lines-family-1param"):
        s = load_corpus(name)
        fam = build_family(s)
        cert = generic_freeness_certificate(fam.family_module(), fam.params, fam.ideal)
        assert all(cert.check([v]) for v in range(10))


# --------------------------------------------------------------- bad locus


def test_bad_locus_plane_family():
    s = load_corpus("plane-family-1param")
    rep = bad_locus(s)
    assert str(rep) == "(t)" and rep.exact
    checks = verify_bad_locus(s, rep, [[0], [1], [5]])
    assert checks == [(True, False), (False, True), (False, True)]


def test_bad_locus_lines_family():
    s = load_corpus("lines-family-1param")
    rep = bad_locus(s)
    assert str(rep) == "(t)"
    assert all(on != verdict for on, verdict in verify_bad_locus(s, rep, [[0], [2], [7]]))


def test_bad_locus_free_side_is_empty():
    rep = bad_locus(plane_family(E={"free": 1}))
    assert rep.empty and str(rep) == "empty"


def test_bad_locus_two_parameters():
    s = plane_family([["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["a", "b", "0", "1"]],
                     params=("a", "b"))
    rep = bad_locus(s)
    A = Ring(("a", "b"), s.field)
    gb = ideal_gb(A, rep.generators)
    assert gb == ideal_gb(A, [A("a"), A("b")])
    assert all(on != verdict for on, verdict in verify_bad_locus(s, rep, [[0, 0], [1, 0], [0, 3], [2, 5]]))


def test_bad_locus_gate():
    m = [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["a", "b", "c", "1"]]
    m[2][0] = "d"
    s = plane_family(m, params=("a", "b", "c", "d"))
    with pytest.raises(GateError, match="parameters"):
        bad_locus(s)
    with pytest.raises(GateError):
        bad_locus(load_corpus("planes-P3"))


def test_ideal_intersection():
    R = Ring(("x", "y"))
    I = ideal_intersection(R, [R("x")], [R("y")])
    assert ideal_gb(R, I) == ideal_gb(R, [R("x*y")])
