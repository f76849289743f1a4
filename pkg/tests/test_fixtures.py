"""Snapshot files under fixtures/*/expected, each checked against an oracle
that does not go through the code path that wrote it."""

import importlib.util
import itertools
import pathlib

import pytest

from conftest import FIXTURES, fixture_job
from genlink.core import MultiPoly
from genlink.groebner import buchberger, normal_form
from genlink.monomial import MonomialIdeal

TOOLS = pathlib.Path(__file__).resolve().parent.parent / "tools" / "regen_fixtures.py"
_spec = importlib.util.spec_from_file_location("regen_fixtures", TOOLS)
regen = importlib.util.module_from_spec(_spec)
_spec.loader.exec_module(regen)


def expected(name, fname):
    return (FIXTURES / name / "expected" / f"{fname}.txt").read_text().splitlines()


def ideal_of(name):
    job = fixture_job(name)
    return job, MonomialIdeal(job.ring, job.ideal)


def matrix_lines(ring, lines):
    return [[ring.poly(x) for x in ln.split(", ")] for ln in lines]


def leibniz(rows):
    """Determinant by the permutation expansion."""
    n = len(rows)
    ring = rows[0][0].ring
    acc = ring.zero()
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        term = ring.one() * (-1) ** inv
        for i, j in enumerate(perm):
            term = term * rows[i][j]
        acc = acc + term
    return acc


def signed_minors(rows):
    # rows numbered from 1: delta_i = (-1)^i det(without row i)
    return [leibniz(rows[:i] + rows[i + 1:]) * (-1) ** (i + 1) for i in range(len(rows))]


def up_to_sign(f, g):
    return f == g or f == -g


def snapshot_cases():
    for name, steps in regen.PLAN.items():
        for command, extra, keys in steps:
            yield pytest.param(name, command, extra, keys, id=f"{name}-{command}{''.join(extra)}")


@pytest.mark.parametrize("name,command,extra,keys", list(snapshot_cases()))
def test_snapshot_text(name, command, extra, keys):
    for fname, text in regen.snapshot(name, command, extra, keys).items():
        assert (FIXTURES / name / "expected" / f"{fname}.txt").read_text() == text


@pytest.mark.parametrize("name", ["acad_bd", "xsq_xy_ysq"])
def test_radical_snapshot(name):
    job, M = ideal_of(name)
    # brute force: supports of the generators, then drop non-minimal ones
    supports = {tuple(min(1, x) for x in g) for g in M.gens}
    minimal = [s for s in supports
               if not any(t != s and all(a <= b for a, b in zip(t, s)) for t in supports)]
    got = [job.ring.poly(s) for s in expected(name, "radical.radical")]
    assert sorted(next(iter(g.terms)) for g in got) == sorted(minimal)


@pytest.mark.parametrize("name", ["acad_bd", "bc_bd_acd", "twisted_cubic", "path_4gen"])
def test_presentation_snapshot(name):
    job, M = ideal_of(name)
    rows = matrix_lines(job.ring, expected(name, "presentation.phi"))
    gens = M.polys()
    for j in range(len(rows[0])):
        assert not sum((rows[i][j] * gens[i] for i in range(len(gens))), job.ring.zero())
    for g, h in zip(signed_minors(rows), gens):
        assert up_to_sign(g, h)


@pytest.mark.parametrize("name", ["acad_bd", "bc_bd_acd"])
def test_homogenize_snapshot(name):
    job, _ = ideal_of(name)
    phi = matrix_lines(job.ring, expected(name, "presentation.phi"))
    h = matrix_lines(job.ring, expected(name, "homogenize.h_phi"))
    for j in range(len(h[0])):
        col = [h[i][j] for i in range(len(h)) if h[i][j]]
        assert len({f.degree() for f in col}) == 1
        assert [bool(r[j]) for r in h] == [bool(r[j]) for r in phi]
    minors = [job.ring.poly(s) for s in expected(name, "homogenize.minors")]
    assert minors == signed_minors(h)


def _link_rows(ring, phi, level):
    m = len(phi)
    v = ring.var
    rows = [list(phi[i]) + [v(f"Y{k}{i + 1}") for k in range(1, level + 1)] for i in range(m)]
    for r in range(1, level + 1):
        rows.append([v(f"Z{r}{j}") for j in range(1, m)] +
                    [v(f"Y{k}{m + r}") for k in range(1, level + 1)])
    return rows


@pytest.mark.parametrize("name,level,hfile", [("acad_bd", 1, "presentation.phi"),
                                              ("acad_bd", 2, "presentation.phi"),
                                              ("bc_bd_acd", 2, "homogenize.h_phi")])
def test_link_minors_snapshot(name, level, hfile):
    job, _ = ideal_of(name)
    m = len(job.ideal)
    names = [f"Y{k}{j}" for k in range(1, level + 1) for j in range(1, m + level + 1)]
    names += [f"Z{r}{j}" for r in range(1, level + 1) for j in range(1, m)]
    ring = job.ring.extend(names)
    phi = [[f.embed(ring) for f in row] for row in matrix_lines(job.ring, expected(name, hfile))]
    mine = signed_minors(_link_rows(ring, phi, level))
    got = [ring.poly(s) for s in expected(name, f"link{level}.minors")]
    assert got == mine


def test_link2_f_parts_snapshot():
    job, M = ideal_of("acad_bd")
    lines = expected("acad_bd", "link2.minors")
    ring = job.ring.extend([f"Y{k}{j}" for k in (1, 2) for j in range(1, 6)] +
                           [f"Z{r}{j}" for r in (1, 2) for j in (1, 2)])
    base = set(job.ring.names)
    for full, part in zip(lines, expected("acad_bd", "link2.f_parts")):
        f = ring.poly(full)
        keep = {mono: c for mono, c in f.terms.items()
                if sum(e for n, e in zip(ring.names, mono) if n in base) == 2}
        assert MultiPoly(ring, keep) == ring.poly(part)


def test_first_colon_snapshot():
    job, M = ideal_of("acad_bd")
    got = expected("acad_bd", "link1colon.gb")
    ring = job.ring.extend([f"Y{k}{j}" for k in (1, 2) for j in (1, 2, 3)])
    gens = [g.embed(ring) for g in M.polys()]
    alphas = [sum((ring.var(f"Y{k}{j + 1}") * g for j, g in enumerate(gens)), ring.zero())
              for k in (1, 2)]
    A = buchberger(alphas)
    # every listed element multiplies I into <alpha_1, alpha_2>
    for s in got:
        h = ring.poly(s)
        assert all(not normal_form(h * g, A) for g in gens)
    assert all(ring.poly(s) for s in got)


def test_hilbert_snapshot():
    job, M = ideal_of("acad_bd")
    counts = [sum(1 for e in itertools.product(range(d + 1), repeat=4)
                  if sum(e) == d and e not in M) for d in range(11)]
    assert [int(x) for x in expected("acad_bd", "hilbert10.expansion")] == counts


@pytest.mark.parametrize("name", ["acad_bd", "bc_bd_acd", "xsq_xy_ysq", "twisted_cubic", "path_4gen"])
def test_pipeline_snapshot(name):
    job, M = ideal_of(name)
    verdict, = expected(name, "pipeline.verdict")
    lead = MonomialIdeal.parse(job.ring, expected(name, "pipeline.x_leading"))
    if verdict == "in(P) = I·S":
        assert lead == M
    else:
        assert verdict == "sqrt(in(P)) = sqrt(I)·S"
        supp = lambda N: {tuple(min(1, x) for x in g) for g in N.gens}
        assert MonomialIdeal(job.ring, list(supp(lead))) == MonomialIdeal(job.ring, list(supp(M)))


def test_non_cm_snapshot():
    assert expected("non_cm_4gen", "pipeline.error") == ["HypothesisError"]
    assert expected("non_cm_4gen", "pipeline.stage") == ["cm"]


def test_specialized_snapshot():
    job = fixture_job("bc_specialized")
    gb = [job.ring.poly(s) for s in expected("bc_specialized", "specialize.gb")]
    G = buchberger(gb)
    assert G.is_reduced and len(G.gens) == 3
    cert = dict(ln.split(": ", 1) for ln in expected("bc_specialized", "prime-check.certificate"))
    assert cert == {"verdict": "certified_prime", "degree_l": "7", "noether": "k[a,c,b+d]",
                    "hypersurface_degree": "7"}
