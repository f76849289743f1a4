import itertools

import pytest
from hypothesis import HealthCheck, given, settings

from conftest import fixture_job
from strategies import monomial_lists
from genlink.core import Ring
from genlink.errors import DomainError, HypothesisError
from genlink.groebner import hilbert_function_truncated
from genlink.matrixops import PolyMatrix, signed_maximal_minors
from genlink.monomial import MonomialIdeal, codim, is_cm_codim2, radical
from genlink.resolution import (GradedResolutionSummary, closed_form_numerator_link,
                                hilbert_series_from_twists, minimal_presentation,
                                minimalize_syzygies, module_contains, pairwise_syzygies,
                                second_syzygies_vanish, syzygy_obstruction)
from genlink.series import HilbertSeries

ABCD = Ring(("a", "b", "c", "d"))
XY = Ring(("x", "y"))
PROPS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
CM_FIXTURES = ["acad_bd", "bc_bd_acd", "twisted_cubic", "path_4gen"]


def ideal(ring, *texts):
    return MonomialIdeal.parse(ring, texts)


def kills(col, M):
    return not sum((c * f for c, f in zip(col, M.polys())), M.ring.zero())


def columns_match_up_to_scaling(mine: PolyMatrix, theirs: PolyMatrix) -> bool:
    left = list(theirs.columns())
    for col in mine.columns():
        for k, other in enumerate(left):
            piv = next(i for i, x in enumerate(other) if x)
            if not col[piv]:
                continue
            c = col[piv].leading_coefficient() / other[piv].leading_coefficient()
            if all(x == y * c for x, y in zip(col, other)):
                del left[k]
                break
        else:
            return False
    return not left


def test_pairwise_syzygies_of_acad_bd():
    M = ideal(ABCD, "a*c", "a*d", "b*d")
    syz = dict(pairwise_syzygies(M))
    assert [str(f) for f in syz[(0, 1)]] == ["d", "-c", "0"]
    assert [str(f) for f in syz[(1, 2)]] == ["0", "b", "-a"]
    for col in syz.values():
        assert kills(col, M)
    kept = minimalize_syzygies(M)
    assert [p for p, _ in kept] == [(0, 1), (1, 2)]


def test_koszul_pair():
    M = ideal(XY, "x", "y")
    (pair, col), = pairwise_syzygies(M)
    assert [str(f) for f in col] == ["y", "-x"]
    assert second_syzygies_vanish([col])
    with pytest.raises(DomainError):
        pairwise_syzygies(ideal(XY, "x"))


@PROPS
@given(monomial_lists(3, top=3, max_size=5))
def test_every_syzygy_kills_generators(A):
    M = MonomialIdeal(Ring(("x", "y", "z")), A)
    if len(M.gens) < 2:
        return
    for _, col in pairwise_syzygies(M):
        assert kills(col, M)
    for _, col in minimalize_syzygies(M):
        assert kills(col, M)


def test_presentation_of_bc():
    phi = minimal_presentation(ideal(ABCD, "b*c", "b*d", "a*c*d"))
    ref = PolyMatrix.parse(ABCD, [["-d", "0"], ["c", "-a*c"], ["0", "b"]])
    assert columns_match_up_to_scaling(phi, ref)


def test_presentation_of_koszul():
    phi = minimal_presentation(ideal(XY, "x", "y"))
    assert phi.to_strings() == [["y"], ["-x"]]
    assert [str(f) for f in signed_maximal_minors(phi).signed] == ["x", "y"]
    assert [str(f) for f in signed_maximal_minors(phi).minors] == ["-x", "y"]


@pytest.mark.parametrize("name", CM_FIXTURES)
def test_hilbert_burch_roundtrip(name):
    job = fixture_job(name)
    M = MonomialIdeal(job.ring, job.ideal)
    phi = minimal_presentation(M)
    assert phi.shape == (len(M.gens), len(M.gens) - 1)
    assert list(signed_maximal_minors(phi).signed) == M.polys()
    for col in phi.columns():
        assert kills(col, M)


def test_hilbert_burch_failure_carries_obstruction():
    M = ideal(Ring(("a", "b", "c", "d", "e")), "a*d", "a*c*e", "b*c*d", "b*c*e")
    with pytest.raises(HypothesisError) as exc:
        minimal_presentation(M)
    assert exc.value.obstruction["reason"] == "4 minimal syzygies, expected 3"
    with pytest.raises(HypothesisError):
        minimal_presentation(ideal(ABCD, "a", "b", "c"))


def test_syzygy_freeness_examples():
    assert syzygy_obstruction(ideal(ABCD, "a*c", "a*d", "b*d")) is None
    assert syzygy_obstruction(ideal(Ring(("a", "b", "c", "d", "e")),
                                    "a*d", "a*c*e", "b*c*d", "b*c*e")) is not None


def test_module_membership():
    M = ideal(ABCD, "a*c", "a*d", "b*d")
    syz = dict(pairwise_syzygies(M))
    # the (1,3) syzygy is b*(1,2) + c*(2,3)
    assert module_contains(syz[(0, 2)], [syz[(0, 1)], syz[(1, 2)]])
    assert not module_contains(syz[(0, 1)], [syz[(1, 2)]])


def test_closed_form_numerators():
    lvl = closed_form_numerator_link(3, 2, (1, 1), r=4)
    assert lvl.numerator == {0: 1, 3: -4, 4: 3}
    assert closed_form_numerator_link(2, 1, (1,), r=2).numerator == {0: 1, 2: -3, 3: 2}
    with pytest.raises(DomainError):
        closed_form_numerator_link(1, 1, (), r=1)


def test_series_of_acad_bd():
    M = ideal(ABCD, "a*c", "a*d", "b*d")
    phi = minimal_presentation(M)
    summary = GradedResolutionSummary.from_presentation(M, phi)
    assert summary.a == (2, 2, 2) and summary.b == (3, 3)
    assert summary.column_degrees() == (1, 1)
    H = hilbert_series_from_twists(summary, ABCD)
    assert H.numerator == {0: 1, 2: -3, 3: 2}
    assert H.expand(8) == hilbert_function_truncated(M, 8)


def test_zero_ideal_series():
    H = HilbertSeries.from_weights({0: 1}, ABCD.weights)
    assert H.expand(4) == [1, 4, 10, 20, 35]
    assert H.dimension() == 4


@pytest.mark.parametrize("name", CM_FIXTURES + ["xsq_xy_ysq"])
def test_series_from_twists_matches_counts(name):
    job = fixture_job(name)
    M = MonomialIdeal(job.ring, job.ideal)
    phi = minimal_presentation(M)
    H = hilbert_series_from_twists(GradedResolutionSummary.from_presentation(M, phi), M.ring)
    assert H.expand(10) == hilbert_function_truncated(M, 10)


@pytest.mark.parametrize("name", ["acad_bd", "twisted_cubic", "xsq_xy_ysq"])
def test_equigenerated_column_degrees(name):
    job = fixture_job(name)
    M = MonomialIdeal(job.ring, job.ideal)
    phi = minimal_presentation(M)
    s = GradedResolutionSummary.from_presentation(M, phi)
    d = s.a[0]
    assert s.column_degrees() == tuple(b - d for b in s.b)
    assert tuple(phi.column_degrees) == s.column_degrees()


def test_random_cm_ideals_regenerate():
    import random
    rng = random.Random(11)
    found = 0
    for _ in range(400):
        gens = [tuple(rng.randint(0, 2) for _ in range(4)) for _ in range(rng.randint(2, 4))]
        M = MonomialIdeal(ABCD, [g for g in gens if any(g)])
        if len(M.gens) < 2 or codim(M) != 2 or not is_cm_codim2(M):
            continue
        found += 1
        phi = minimal_presentation(M)
        assert list(signed_maximal_minors(phi).signed) == M.polys()
        assert is_cm_codim2(radical(M))
    assert found >= 10
