import pytest

from conftest import fixture_job
from genlink.core import Ring, deg_x
from genlink.errors import DomainError, HypothesisError
from genlink.groebner import buchberger, normal_form
from genlink.linkage import (build_l2_matrix, build_theorem_matrix, colon_matches_minors,
                             extension_only_elements, first_link_matrix, link_by_colon,
                             theorem1_pipeline, verify_minors_gb, x_leading_image)
from genlink.matrixops import PolyMatrix, homogenize_columns, signed_maximal_minors
from genlink.monomial import MonomialIdeal
from genlink.resolution import minimal_presentation

ABCD = Ring(("a", "b", "c", "d"))
XY = Ring(("x", "y"))
BC = PolyMatrix.parse(ABCD, [["-d", "0"], ["c", "-a*c"], ["0", "b"]])


def presentation(name):
    job = fixture_job(name)
    M = MonomialIdeal(job.ring, job.ideal)
    return M, minimal_presentation(M)


def same_up_to_sign(f, g):
    return f == g or f == -g


def same_ideal(F, G, order):
    GF, GG = buchberger(F, order), buchberger(G, order)
    return all(not normal_form(f, GG) for f in F) and all(not normal_form(g, GF) for g in G)


@pytest.mark.parametrize("name", ["acad_bd", "bc_bd_acd", "path_4gen"])
def test_matrix_shapes(name):
    M, phi = presentation(name)
    m = len(M.gens)
    phi = homogenize_columns(phi)
    assert build_theorem_matrix(phi).link_matrix.shape == (m + 1, m)
    assert build_l2_matrix(phi).link_matrix.shape == (m + 2, m + 1)


def test_level1_minors_of_acad_bd():
    phi = PolyMatrix.parse(ABCD, [["0", "-d"], ["-b", "c"], ["a", "0"]])
    pkg = build_theorem_matrix(phi)
    R = pkg.ring
    assert same_up_to_sign(pkg.deltas[0], R.poly("a*c*Y14 - a*Y12*Z12 - b*Y13*Z12 - c*Y13*Z11"))
    assert same_up_to_sign(pkg.deltas[3], R.poly("a*c*Y11 + a*d*Y12 + b*d*Y13"))


def test_koszul_link():
    pkg = build_theorem_matrix(minimal_presentation(MonomialIdeal.parse(XY, ["x", "y"])))
    assert same_up_to_sign(pkg.deltas[2], pkg.ring.poly("x*Y11 + y*Y12"))


def test_complete_intersection_link_has_pure_y_element():
    L = link_by_colon(MonomialIdeal.parse(XY, ["x", "y"]), 1)
    R = L.ring
    assert any(not any(m[R.index(n)] for n in XY.names for m in g.terms) for g in L.gens)
    assert R.poly("Y12*Y21 - Y11*Y22") in [g for g in L.gens] or \
        R.poly("Y11*Y22 - Y12*Y21") in [g for g in L.gens]


@pytest.mark.parametrize("name", ["acad_bd", "bc_bd_acd", "twisted_cubic"])
@pytest.mark.parametrize("level", [1, 2])
def test_beta_parts_have_low_x_degree(name, level):
    _, phi = presentation(name)
    phi = homogenize_columns(phi)
    pkg = (build_theorem_matrix if level == 1 else build_l2_matrix)(phi)
    d = max(pkg.base_ideal.degrees())
    for f, b, g in zip(pkg.f_parts(), pkg.betas(), pkg.deltas):
        assert f + b == g
        assert all(deg_x(m, pkg.ring) < d for m in b.terms)
        assert all(deg_x(m, pkg.ring) == d for m in f.terms)
        assert g.is_homogeneous() and g.degree() == d + level


@pytest.mark.parametrize("name", ["acad_bd", "twisted_cubic", "bc_bd_acd"])
def test_first_round_colon_equals_minors(name):
    M, phi = presentation(name)
    same, minors, L1 = colon_matches_minors(M, phi)
    assert same
    assert len(minors) == len(M.gens) + 1


def test_second_round_colon_equals_l2_minors():
    M, phi = presentation("acad_bd")
    Ap, _ = first_link_matrix(phi)
    gens = list(signed_maximal_minors(Ap).signed)
    pkg = build_l2_matrix(phi)
    fresh = [(["Y11", "Y12", "Y13"], ["Y21", "Y22", "Y23"]),
             (["Z11", "Z12", "Y14", "Y24"], ["Z21", "Z22", "Y15", "Y25"])]
    L2 = link_by_colon(M, 2, generators=gens, fresh=fresh)
    mine = [g.embed(L2.ring) for g in pkg.deltas]
    assert same_ideal(mine, list(L2.gens), L2.order)


def test_link_by_colon_argument_checks():
    M = MonomialIdeal.parse(XY, ["x", "y"])
    with pytest.raises(DomainError):
        link_by_colon(M, 3)
    with pytest.raises(DomainError):
        link_by_colon(M, 1, fresh=[(["U1"], ["U2"])])


@pytest.mark.parametrize("name", ["acad_bd", "bc_bd_acd", "path_4gen"])
def test_no_extension_only_minors(name):
    _, phi = presentation(name)
    pkg = build_l2_matrix(homogenize_columns(phi))
    assert extension_only_elements(pkg) == []


def test_naive_weights_on_bc_show_leading_anomaly():
    for build in (build_theorem_matrix, build_l2_matrix):
        v = verify_minors_gb(build(BC, z_weights=(1, 1)))
        assert v.s_pairs_ok
        assert v.hilbert_ok is None
        (anomaly,) = v.leading_anomalies
        assert anomaly["minor"] == 1
        assert anomaly["expected"] == "b*c" and anomaly["x_leading"] == "a*c"


def test_x_leading_image():
    _, phi = presentation("acad_bd")
    assert x_leading_image(build_l2_matrix(phi)).to_strings() == ["a*c", "a*d", "b*d"]
    assert x_leading_image(build_l2_matrix(BC, z_weights=(1, 1))).to_strings() == ["a*c", "b*d"]
    h = homogenize_columns(BC)
    assert x_leading_image(build_l2_matrix(h)).to_strings() == ["b^2*c", "b^2*d", "a*c*d"]


def test_z_weight_checks():
    with pytest.raises(DomainError):
        build_theorem_matrix(BC, z_weights=(1,))
    with pytest.raises(DomainError):
        build_theorem_matrix(BC)
    with pytest.raises(DomainError):
        build_theorem_matrix(PolyMatrix.parse(XY, [["x", "y"]]))


def test_pipeline_verdicts():
    rep = theorem1_pipeline(MonomialIdeal.parse(ABCD, ["a*c", "a*d", "b*d"]))
    assert rep.verdict == "in(P) = I·S"
    assert not rep.radical_required and not rep.homogenization_required
    rep = theorem1_pipeline(MonomialIdeal.parse(ABCD, ["b*c", "b*d", "a*c*d"]))
    assert rep.verdict == "sqrt(in(P)) = sqrt(I)·S"
    assert rep.homogenization_required and not rep.in_equals_I and rep.radicals_equal
    rep = theorem1_pipeline(MonomialIdeal.parse(XY, ["x^2", "x*y", "y^2"]))
    assert rep.radical_required
    assert rep.x_leading.to_strings() == ["x", "y"]
    assert set(rep.timings) >= {"radical", "presentation", "link", "verify_gb"}


def test_pipeline_rejects_non_cm():
    R = Ring(("a", "b", "c", "d", "e"))
    with pytest.raises(HypothesisError) as exc:
        theorem1_pipeline(MonomialIdeal.parse(R, ["a*d", "a*c*e", "b*c*d", "b*c*e"]))
    assert exc.value.stage == "cm"
    with pytest.raises(HypothesisError) as exc:
        theorem1_pipeline(MonomialIdeal.parse(ABCD, ["a"]))
    assert exc.value.stage == "codim"
