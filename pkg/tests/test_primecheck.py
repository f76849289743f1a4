import random

import pytest
import sympy
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conftest import fixture_job
from strategies import polys
from genlink import gfpoly
from genlink.core import Ring
from genlink.errors import DomainError
from genlink.groebner import buchberger, normal_form
from genlink.linkage import build_l2_matrix, build_theorem_matrix
from genlink.matrixops import PolyMatrix
from genlink.primecheck import (Specialization, artinian_degree, dehomogenize,
                                eliminate_to_hypersurface, homogenize_t, irreducible,
                                noether_normalize_search, prime_certificate, specialize,
                                specialize_random, vanishing_leading_coefficients,
                                zero_divisor_probe)

ABCD = Ring(("a", "b", "c", "d"))
AB = Ring(("a", "b"))
X = Ring(("x",))
XY = Ring(("x", "y"))
R3 = Ring(("x", "y", "z"))
PROPS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

# the specialized basis of the worked example (fixture bc_specialized)
SPECIALIZED = [
    "a*c*d - 807/440*a*c - 3777/1375*c - 12123/5500*d - 51429/220000",
    "b^2*d - 807/440*b^2 - 139/22*d - 27993/22000",
    "b^2*c + 137/88*b^2 - 103/22*a*c - 139/22*c + 10633/22000",
]


@pytest.fixture(scope="module")
def homogenized():
    return buchberger(homogenize_t([ABCD.poly(s) for s in SPECIALIZED]).gens)


def test_homogenize_t_example():
    H = homogenize_t([AB.poly("a*b + a + 1")])
    assert [str(g) for g in H.gens] == ["a*b + a*t + t^2"]
    assert dehomogenize(H, ring=AB) == [AB.poly("a*b + a + 1")]
    with pytest.raises(DomainError):
        homogenize_t([Ring(("a", "t")).poly("a + t")])


def test_homogenized_example_is_cubic(homogenized):
    H = homogenize_t([ABCD.poly(s) for s in SPECIALIZED])
    assert all(g.is_homogeneous() and g.degree() == 3 for g in H.gens)


@PROPS
@given(polys(R3, top=4, max_terms=5))
def test_dehomogenize_roundtrip(f):
    if not f:
        return
    assert dehomogenize(homogenize_t([f]), ring=R3) == [f]


def test_artinian_degree_examples(homogenized):
    assert artinian_degree([XY.poly("x^2"), XY.poly("y^3")]) == 6
    assert artinian_degree([R3.poly("x"), R3.poly("y")], ["z"]) == 1
    with pytest.raises(DomainError, match="z"):
        artinian_degree([R3.poly("x"), R3.poly("y")])
    assert artinian_degree(homogenized.gens, ["a", "c", "b + d"]) == 7


def test_artinian_degree_by_enumeration():
    # <x^2, y^3> has standard monomials x^i y^j with i < 2, j < 3
    assert artinian_degree([XY.poly("x^2"), XY.poly("y^3")]) == len([(i, j) for i in range(2) for j in range(3)])


def test_noether_search_examples(homogenized):
    assert noether_normalize_search([X.zero()]) == [[("x",)]]
    found = noether_normalize_search(homogenized.gens, within=["a", "b", "c", "d"], limit=2)
    assert found[0] == [("a",), ("c",), ("b", "d")]
    assert len(found) == 2
    # the degree does not depend on the normalization chosen
    degs = {artinian_degree(homogenized.gens, [" + ".join(f) for f in z]) for z in found}
    assert degs == {7}
    with pytest.raises(DomainError):
        noether_normalize_search([XY.poly("x + 1")])


def test_eliminate_to_hypersurface(homogenized):
    f = eliminate_to_hypersurface(homogenized.gens, ["a", "b", "c", "d"])
    assert f.degree() == 7
    assert not normal_form(f.embed(homogenized.ring), homogenized)
    g = XY.poly("x^2 - y")
    assert eliminate_to_hypersurface([g], ["x", "y"]) == g


def test_irreducible_examples():
    assert irreducible(X.poly("x")).verdict is True
    assert irreducible(X.poly("x^2 - 1")).verdict is False
    assert irreducible(XY.poly("x^2 + y^2 + 1")).verdict is True
    assert irreducible(XY.poly("x*y + x")).verdict is False
    with pytest.raises(DomainError):
        irreducible(X.poly("3"))


def _random_irreducible(rng, ring):
    while True:
        coeffs = [rng.randint(-5, 5) for _ in range(rng.randint(2, 5))]
        if not coeffs[-1]:
            continue
        x = sympy.Symbol(ring.names[0])
        p = sympy.Poly(list(reversed(coeffs)), x)
        if p.degree() >= 1 and p.is_irreducible:
            return ring.poly(str(p.as_expr()).replace("**", "^"))


def test_products_of_irreducibles_are_never_certified():
    rng = random.Random(3)
    for _ in range(40):
        f = _random_irreducible(rng, X) * _random_irreducible(rng, X)
        assert irreducible(f).verdict is not True
    for _ in range(6):
        g = _random_irreducible(rng, X).subs({"x": XY.poly("x + 2*y")}, XY)
        h = _random_irreducible(rng, X).subs({"x": XY.poly("x*y - 1")}, XY)
        assert irreducible(g * h).verdict is not True


def test_certified_irreducibles_agree_with_sympy():
    rng = random.Random(8)
    x = sympy.Symbol("x")
    for _ in range(60):
        coeffs = [rng.randint(-6, 6) for _ in range(rng.randint(2, 7))]
        if not coeffs[-1]:
            continue
        f = X.poly(str(sympy.Poly(list(reversed(coeffs)), x).as_expr()).replace("**", "^"))
        if f.is_constant():
            continue
        w = irreducible(f)
        if w.verdict is not None:
            expected = sympy.Poly(list(reversed(coeffs)), x).is_irreducible
            assert w.verdict == expected


def test_certificate_examples():
    c = prime_certificate([XY.poly("x")])
    assert c.verdict == "certified_prime" and c.degree_l == 1
    assert c.hypersurface == c.hypersurface.ring.poly("x")
    c = prime_certificate([XY.poly("x*y")])
    assert c.verdict == "failed" and c.stage == "irreducible"


def test_worked_example_certificate():
    c = prime_certificate([ABCD.poly(s) for s in SPECIALIZED])
    assert c.verdict == "certified_prime"
    assert c.degree_l == 7 and c.hypersurface.degree() == 7
    assert c.noether_description() == "k[a,c,b+d]"
    d = c.to_dict()
    assert d["witness"]["verdict"] is True


def test_zero_divisor_probe():
    assert zero_divisor_probe([XY.poly("x*y")], 3) is not None
    assert zero_divisor_probe([XY.poly("x^2 + y^2")], 4) is None
    assert zero_divisor_probe([ABCD.poly(s) for s in SPECIALIZED], 7) is None


def _bc_package(level=2):
    job = fixture_job("bc_specialized")
    build = build_l2_matrix if level == 2 else build_theorem_matrix
    return job, build(job.phi)


def test_specialize_worked_example():
    job, pkg = _bc_package()
    s = Specialization(dict(job.values))
    G = specialize(pkg.deltas, s, job.ring)
    assert sorted(str(g) for g in G.gens) == sorted(SPECIALIZED)


def test_specialization_must_be_total():
    job, pkg = _bc_package()
    vals = dict(job.values)
    vals.pop("Z22")
    with pytest.raises(DomainError, match="Z22"):
        specialize(pkg.deltas, Specialization(vals), job.ring)
    with pytest.raises(DomainError):
        specialize(pkg.deltas, Specialization({**job.values, "a": 1}), job.ring)
    with pytest.raises(DomainError):
        Specialization.from_values(["Y11", "Y12"], [1])


def test_random_specialization_is_deterministic():
    job, pkg = _bc_package()
    s1, G1 = specialize_random(pkg.deltas, 17, job.ring)
    s2, G2 = specialize_random(pkg.deltas, 17, job.ring)
    assert s1.assignments == s2.assignments
    assert [g.terms for g in G1.gens] == [g.terms for g in G2.gens]


def test_all_zero_specialization_is_degenerate():
    job, pkg = _bc_package(level=1)
    ext = [n for n in pkg.ring.names if n not in job.ring.names]
    zero = Specialization.from_values(ext, [0] * len(ext))
    # every leading coefficient dies and the last minor maps to zero
    assert vanishing_leading_coefficients(pkg.deltas, zero, job.ring) == list(range(len(pkg.deltas)))
    assert not pkg.deltas[-1].subs(zero.assignments, job.ring)
    assert list(specialize(pkg.deltas, zero, job.ring).gens) == []


def _sympy_coeffs(expr, p):
    x = sympy.Symbol("x")
    return [int(c) for c in reversed(sympy.Poly(expr, x, modulus=p).all_coeffs())]


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_gfpoly_against_sympy(p):
    rng = random.Random(p)
    x = sympy.Symbol("x")
    for _ in range(25):
        f = gfpoly.reduce([rng.randrange(p) for _ in range(rng.randint(2, 8))], p)
        g = gfpoly.reduce([rng.randrange(p) for _ in range(rng.randint(2, 6))], p)
        if len(f) < 2 or len(g) < 2:
            continue
        F = sympy.Poly(list(reversed(f)), x, modulus=p)
        Gs = sympy.Poly(list(reversed(g)), x, modulus=p)
        assert gfpoly.reduce(gfpoly.mul(f, g, p), p) == [c % p for c in _sympy_coeffs((F * Gs).as_expr(), p)]
        q, r = gfpoly.divmod_(f, g, p)
        Q, R = sympy.div(F, Gs)
        assert [c % p for c in q] == [c % p for c in reversed(Q.all_coeffs())] or (not q and Q.is_zero)
        assert [c % p for c in r] == [c % p for c in reversed(R.all_coeffs())] or (not r and R.is_zero)
        if gfpoly.is_squarefree(f, p):
            _, facs = F.factor_list()
            assert gfpoly.factor_degrees(f, p) == sorted(h.degree() for h, _ in facs)
