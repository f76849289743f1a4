"""Generic links of codimension-two perfect ideals.

Two routes produce a link: the minors of the matrices Phi (one extra row and
column) and Phi'' (two of each), and the colon definition
<alpha_1, alpha_2> : I S computed with the Groebner engine.  The colon route is
the expensive oracle for the minors route.

Fresh variables are named Y{i}{j} and Z{i}{j} (``i`` the round, ``j`` the
position).  Blocks: the base ring, then ``link1`` (the variables of the first
round), then ``link2``.  The default order is the inverse block order: base
parts are compared first and ties are broken by weighted grevlex on all
extension variables, listed with every Y before every Z.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .core import MultiPoly, Ring, deg_x, split_base, wgrevlex
from .errors import DomainError, HypothesisError, InvariantViolation
from .groebner import (IdealBasis, Limits, buchberger, hilbert_function_truncated,
                       ideal_colon_ideal, initial_ideal, is_groebner, normal_form)
from .matrixops import (MinorSet, PolyMatrix, homogenize_columns, radical_identity,
                        signed_maximal_minors)
from .monomial import (MonomialIdeal, codim, is_cm_codim2, is_generically_ci, radical)
from .resolution import closed_form_numerator_link, minimal_presentation

__all__ = [
    "LinkPackage", "build_theorem_matrix", "build_l2_matrix", "link_by_colon",
    "verify_minors_gb", "x_leading_image", "theorem1_pipeline", "PipelineReport",
    "GBVerification", "first_link_matrix", "colon_matches_minors", "minimal_generators_of",
    "extension_only_elements", "x_parts_outside",
]


@dataclass
class LinkPackage:
    base_ideal: MonomialIdeal
    phi: PolyMatrix
    link_matrix: PolyMatrix
    ring: Ring
    fresh: dict
    minors: MinorSet
    level: int
    column_degrees: tuple | None = None

    @property
    def deltas(self) -> list[MultiPoly]:
        """Signed minors delta_i = (-1)^i det(matrix without row i)."""
        return list(self.minors.signed)

    @property
    def m(self) -> int:
        return self.phi.nrows

    def f_parts(self) -> list[MultiPoly]:
        """Terms of each delta whose base part has full degree d."""
        d = max(self.base_ideal.degrees())
        return [_filter_terms(g, lambda mono: deg_x(mono, self.ring) >= d) for g in self.deltas]

    def betas(self) -> list[MultiPoly]:
        d = max(self.base_ideal.degrees())
        return [_filter_terms(g, lambda mono: deg_x(mono, self.ring) < d) for g in self.deltas]


def _filter_terms(f: MultiPoly, keep) -> MultiPoly:
    return MultiPoly(f.ring, {m: c for m, c in f.terms.items() if keep(m)}, _clean=True)


def _signed_generators(phi: PolyMatrix) -> MonomialIdeal:
    gens = signed_maximal_minors(phi).signed
    for g in gens:
        if not g.is_monomial():
            raise DomainError(f"signed minor {g} of phi is not a monomial")
    # scalar multiples are allowed; the base ideal only sees the monomials
    return MonomialIdeal(phi.ring, [next(iter(g.terms)) for g in gens])


def _z_weights(phi: PolyMatrix, z_weights):
    if z_weights is not None:
        z_weights = tuple(int(w) for w in z_weights)
        if len(z_weights) != phi.ncols:
            raise DomainError("one Z weight per column of phi")
        return z_weights
    if phi.column_degrees is None:
        degs = phi.infer_column_degrees()
        if degs is None:
            raise DomainError("phi has no column degrees; homogenize it or pass z_weights")
        return degs
    return phi.column_degrees


def build_theorem_matrix(phi: PolyMatrix, z_weights=None) -> LinkPackage:
    """Level-1 matrix: phi with a Y column and a Z row appended.

    ``z_weights`` overrides the column degrees (e.g. all ones for the naive
    weighting of a non-homogeneous phi).
    """
    m = phi.nrows
    if phi.ncols != m - 1:
        raise DomainError("phi must be m x (m-1)")
    e = _z_weights(phi, z_weights)
    base = phi.ring
    ys = [f"Y1{j}" for j in range(1, m + 2)]
    zs = [f"Z1{j}" for j in range(1, m)]
    names = ys + zs
    ring = base.extend(names, [1] * len(ys) + list(e), block="link1",
                       order=_nested_order(base, [ys + zs]))
    P = phi.embed(ring)
    rows = [list(P.rows[i]) + [ring.var(ys[i])] for i in range(m)]
    rows.append([ring.var(z) for z in zs] + [ring.var(ys[m])])
    M = PolyMatrix(ring, rows, check=False)
    return LinkPackage(_signed_generators(phi), phi, M, ring,
                       {"Y": tuple(ys), "Z": tuple(zs), "weights": dict(zip(zs, e)),
                        "blocks": (("link1", tuple(names)),)},
                       signed_maximal_minors(M), 1, e)


def build_l2_matrix(phi: PolyMatrix, z_weights=None) -> LinkPackage:
    """Level-2 matrix Phi'': two Y columns and two Z rows appended to phi."""
    m = phi.nrows
    if phi.ncols != m - 1:
        raise DomainError("phi must be m x (m-1)")
    e = _z_weights(phi, z_weights)
    base = phi.ring
    y1 = [f"Y1{j}" for j in range(1, m + 3)]
    y2 = [f"Y2{j}" for j in range(1, m + 3)]
    z1 = [f"Z1{j}" for j in range(1, m)]
    z2 = [f"Z2{j}" for j in range(1, m)]
    # the first round adds Y1,1..Y1,m+1 and Z1*, the second the rest
    block1 = y1[:m + 1] + z1
    block2 = [y1[m + 1]] + y2 + z2
    weights = {n: 1 for n in y1 + y2}
    weights.update(zip(z1, e))
    weights.update(zip(z2, e))
    # registry lists every Y before every Z; one weighted grevlex covers both blocks
    names = y1 + y2 + z1 + z2
    ring = Ring(base.names + tuple(names), base.weights + tuple(weights[n] for n in names),
                base.blocks + (("link1", tuple(block1)), ("link2", tuple(block2))),
                _nested_order(base, [names]))
    P = phi.embed(ring)
    v = ring.var
    rows = [list(P.rows[i]) + [v(y1[i]), v(y2[i])] for i in range(m)]
    rows.append([v(z) for z in z1] + [v(y1[m]), v(y2[m])])
    rows.append([v(z) for z in z2] + [v(y1[m + 1]), v(y2[m + 1])])
    M = PolyMatrix(ring, rows, check=False)
    return LinkPackage(_signed_generators(phi), phi, M, ring,
                       {"Y": tuple(y1 + y2), "Z": tuple(z1 + z2),
                        "weights": {n: weights[n] for n in z1 + z2},
                        "blocks": (("link1", tuple(block1)), ("link2", tuple(block2)))},
                       signed_maximal_minors(M), 2, e)


def _nested_order(base: Ring, blocks):
    from .core import inverse_block
    order = base.order
    for b in blocks:
        order = inverse_block(order, wgrevlex(b))
    return order


def first_link_matrix(phi: PolyMatrix) -> tuple[PolyMatrix, Ring]:
    """A' = [phi^T; Y1*; Y2*], whose maximal minors generate the first link."""
    m = phi.nrows
    y1 = [f"Y1{j}" for j in range(1, m + 1)]
    y2 = [f"Y2{j}" for j in range(1, m + 1)]
    ring = phi.ring.extend(y1 + y2, block="link1")
    P = phi.embed(ring)
    rows = [list(P.column(j)) for j in range(phi.ncols)]
    rows.append([ring.var(y) for y in y1])
    rows.append([ring.var(y) for y in y2])
    return PolyMatrix(ring, rows, check=False), ring


# -- colon route --------------------------------------------------------------

def _colon_ring(base: Ring, names: Sequence[str], weights: Sequence[int], block: str) -> Ring:
    ring = base.extend(names, weights, block=block)
    return ring.with_order(wgrevlex(ring.names))


def link_by_colon(I, rounds: int = 1, limits: Limits | None = None, generators=None,
                  fresh=None) -> IdealBasis:
    """<alpha_1, alpha_2> : I S with alpha_i = sum_j Y_ij f_j, applied ``rounds`` times.

    ``I`` is a MonomialIdeal, an IdealBasis or a list of polynomials.  Each
    round computes in weighted grevlex on the full ring and returns a reduced
    basis.  For the second round the first-round ideal needs a minimal
    generating set; ``generators`` supplies one (e.g. the minors of A'),
    otherwise one is extracted from the reduced basis.  ``fresh`` names the
    coefficient variables per round as a list of (names_1, names_2) pairs.
    """
    if rounds not in (1, 2):
        raise DomainError("rounds must be 1 or 2")
    gens = _gens_of(I)
    current = gens
    result = None
    for r in range(rounds):
        base = current[0].ring
        k = len(current)
        if fresh is not None and r < len(fresh):
            n1, n2 = fresh[r]
        elif r == 0:
            n1 = [f"Y1{j}" for j in range(1, k + 1)]
            n2 = [f"Y2{j}" for j in range(1, k + 1)]
        else:
            n1 = [f"U1{j}" for j in range(1, k + 1)]
            n2 = [f"U2{j}" for j in range(1, k + 1)]
        n1, n2 = list(n1), list(n2)
        if len(n1) != k or len(n2) != k:
            raise DomainError("need one fresh variable per generator and combination")
        # weights make alpha_i homogeneous when the generators are
        w = [max(1, max(g.degree() for g in current) - g.degree() + 1) for g in current]
        ring = _colon_ring(base, n1 + n2, w + w, f"link{r + 1}")
        emb = [g.embed(ring) for g in current]
        alphas = [sum((ring.var(y) * g for y, g in zip(ns, emb)), ring.zero()) for ns in (n1, n2)]
        result = ideal_colon_ideal(alphas, emb, limits)
        if r + 1 < rounds:
            if generators is not None:
                current = [g.embed(ring) for g in generators]
            else:
                current = minimal_generators_of(result, limits)
    return result


def _gens_of(I) -> list[MultiPoly]:
    if isinstance(I, MonomialIdeal):
        return I.polys()
    if isinstance(I, IdealBasis):
        return list(I.gens)
    return list(I)


def minimal_generators_of(G: IdealBasis, limits: Limits | None = None) -> list[MultiPoly]:
    """Irredundant generators drawn from a basis of a homogeneous ideal."""
    cand = sorted(G.gens, key=lambda g: (g.degree(), len(g.terms)))
    kept: list[MultiPoly] = []
    for g in cand:
        if kept and not normal_form(g, buchberger(kept, G.order, limits)):
            continue
        kept.append(g)
    return kept


def colon_matches_minors(I: MonomialIdeal, phi: PolyMatrix, limits: Limits | None = None):
    """First round: compare the colon ideal with the minors of A'."""
    Ap, ring = first_link_matrix(phi)
    minors = list(signed_maximal_minors(Ap).signed)
    L1 = link_by_colon(I, 1, limits)
    # the colon ring carries the alpha weights; compare there
    gb_minors = buchberger([g.embed(L1.ring) for g in minors], L1.order, limits)
    same = [g.terms for g in gb_minors.gens] == [g.terms for g in L1.gens]
    return same, minors, L1


def x_parts_outside(I: MonomialIdeal, L: IdealBasis, limits: Limits | None = None) -> dict:
    """Recompute L in the inverse block order and compare base parts with I.

    Returns the leading monomials whose base part lies outside I and the
    elements none of whose terms has its base part in I.
    """
    from .core import inverse_block
    base = I.ring
    ring = L.ring
    ext = [n for n in ring.names if n not in base.names]
    order = inverse_block(base.order, wgrevlex(ext)).bind(ring.names)
    G = buchberger(L.gens, order, limits)
    pos = [ring.index(n) for n in base.names]
    leading, clean = [], []
    for g in G.gens:
        lm = g.leading_monomial(order)
        x = tuple(lm[i] for i in pos)
        if x not in I:
            leading.append((g, x))
        if all(tuple(m[i] for i in pos) not in I for m in g.terms):
            clean.append(g)
    return {"basis": G, "leading_outside": leading, "no_term_in_I": clean}


# -- verification -------------------------------------------------------------

@dataclass
class GBVerification:
    s_pairs_ok: bool
    witness: tuple | None
    hilbert_ok: bool | None
    hilbert_counts: list | None = None
    closed_form: list | None = None
    leading_anomalies: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.s_pairs_ok and self.hilbert_ok is not False

    def __bool__(self):
        return self.ok


def verify_minors_gb(pkg: LinkPackage, D: int = 10) -> GBVerification:
    """All S-pairs of the minors reduce to zero; plus the Hilbert series route
    (standard-monomial counts of <in(delta_i)> against the closed form) when
    the generators share one degree."""
    deltas = [g for g in pkg.deltas if g]
    ok, witness = is_groebner(deltas, pkg.ring.order)
    if witness is not None:
        i, j, r = witness
        witness = (i + 1, j + 1, str(r))
    anomalies = []
    lead = [g.leading_monomial(pkg.ring.order) for g in deltas]
    base = pkg.phi.ring
    for i, (g, f) in enumerate(zip(lead[:pkg.m], pkg.base_ideal.gens)):
        xpart = _x_part(g, pkg.ring, base)
        if xpart != f:
            anomalies.append({"minor": i + 1, "expected": base.format_mono(f),
                              "x_leading": base.format_mono(xpart),
                              "leading_term": pkg.ring.format_mono(g)})
    degs = set(pkg.base_ideal.degrees())
    hilbert_ok = counts = closed = None
    if len(degs) == 1 and all(g.is_homogeneous() for g in deltas):
        d = degs.pop()
        m, e = pkg.m, tuple(pkg.column_degrees)
        if pkg.level == 1:
            cf = closed_form_numerator_link(m, d, e, weights=pkg.ring.weights)
        else:
            cf = closed_form_numerator_link(m + 1, d + 1, e + (1,), weights=pkg.ring.weights)
        counts = hilbert_function_truncated(MonomialIdeal(pkg.ring, lead), D)
        closed = cf.expand(D)
        hilbert_ok = counts == closed
    return GBVerification(ok, witness, hilbert_ok, counts, closed, anomalies)


def _x_part(mono: tuple, ring: Ring, base: Ring) -> tuple:
    return tuple(mono[ring.index(n)] for n in base.names)


def x_leading_image(pkg: LinkPackage) -> MonomialIdeal:
    """Base-variable parts of the leading monomials of the minors."""
    base = pkg.phi.ring
    return MonomialIdeal(base, [_x_part(g.leading_monomial(pkg.ring.order), pkg.ring, base)
                                for g in pkg.deltas if g])


def extension_only_elements(pkg: LinkPackage) -> list[MultiPoly]:
    """Minors whose leading monomial has trivial base part.

    The minors form a Groebner basis for the inverse block order, so the link
    meets k[Y, Z] nontrivially exactly when this list is nonempty.
    """
    base = pkg.phi.ring
    return [g for g in pkg.deltas
            if g and not any(_x_part(g.leading_monomial(pkg.ring.order), pkg.ring, base))]


# -- pipeline ------------------------------------------------------------------

@dataclass
class PipelineReport:
    input_ideal: MonomialIdeal
    radical_ideal: MonomialIdeal | None = None
    radical_required: bool = False
    phi: PolyMatrix | None = None
    h_phi: PolyMatrix | None = None
    homogenization_required: bool = False
    radical_identity: dict | None = None
    J: MonomialIdeal | None = None
    generically_ci: bool | None = None
    package: LinkPackage | None = None
    gb: GBVerification | None = None
    extension_free: bool | None = None
    x_leading: MonomialIdeal | None = None
    in_equals_I: bool | None = None
    radicals_equal: bool | None = None
    verdict: str = "failed"
    timings: dict = field(default_factory=dict)

    @property
    def success(self) -> bool:
        return self.verdict != "failed"


def theorem1_pipeline(I: MonomialIdeal, limits: Limits | None = None) -> PipelineReport:
    """radical -> presentation -> h(phi) -> generic CI check -> Phi'' ->
    Groebner verification -> x-leading image -> comparison with I."""
    rep = PipelineReport(I)
    clock = time.perf_counter

    def stage(name, fn):
        t0 = clock()
        out = fn()
        rep.timings[name] = round(clock() - t0, 4)
        return out

    c = codim(I)
    if c != 2:
        raise HypothesisError(f"ideal has codimension {c}, not 2", stage="codim",
                              obstruction={"codim": c})
    rad = stage("radical", lambda: radical(I))
    rep.radical_ideal = rad
    rep.radical_required = rad != I
    if not stage("cm", lambda: is_cm_codim2(rad)):
        from .resolution import syzygy_obstruction
        raise HypothesisError("radical is not Cohen-Macaulay", stage="cm",
                              obstruction=syzygy_obstruction(rad, limits))
    phi = stage("presentation", lambda: minimal_presentation(rad, limits))
    rep.phi = phi
    hphi = stage("homogenize", lambda: homogenize_columns(phi))
    rep.h_phi = hphi
    rep.homogenization_required = hphi.rows != phi.rows
    rep.radical_identity = radical_identity(phi, hphi)
    J = _signed_generators(hphi)
    rep.J = J
    rep.generically_ci = stage("generically_ci", lambda: is_generically_ci(J, hphi))
    if not rep.generically_ci:
        raise HypothesisError("I_{m-1}(h(phi)) is not generically a complete intersection",
                              stage="generically_ci")
    pkg = stage("link", lambda: build_l2_matrix(hphi))
    rep.package = pkg
    rep.gb = stage("verify_gb", lambda: verify_minors_gb(pkg))
    rep.extension_free = not extension_only_elements(pkg)
    lead = stage("x_leading", lambda: x_leading_image(pkg))
    rep.x_leading = lead
    rep.in_equals_I = lead == I
    rep.radicals_equal = radical(lead) == rad
    if not rep.gb.ok or not rep.extension_free:
        rep.verdict = "failed"
    elif rep.in_equals_I:
        rep.verdict = "in(P) = I·S"
    elif rep.radicals_equal:
        rep.verdict = "sqrt(in(P)) = sqrt(I)·S"
    else:
        rep.verdict = "failed"
    return rep
