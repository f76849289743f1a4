"""Syzygies of monomial ideals, Hilbert-Burch presentations and Hilbert series.

Module elements (column vectors of length m) are encoded as polynomials that
are linear in auxiliary position variables ``_e1 .. _em``; a lex block on the
position variables in front of the ring order gives position-over-term.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .core import MultiPoly, QQ, Ring, lex, mono_div, mono_lcm, product_order
from .errors import DomainError, HypothesisError, InvariantViolation
from .groebner import IdealBasis, Limits, buchberger, hilbert_series_monomial, normal_form
from .matrixops import PolyMatrix, determinant, minors_ideal_polys, signed_maximal_minors
from .monomial import MonomialIdeal, codim
from .series import HilbertSeries, poly_add

__all__ = [
    "multigraded_syzygies", "pairwise_syzygies", "minimal_presentation", "minimalize_syzygies",
    "second_syzygies_vanish", "syzygy_obstruction", "GradedResolutionSummary",
    "HilbertSeries", "hilbert_series_from_twists", "closed_form_numerator_link",
    "module_contains",
]


def pairwise_syzygies(M: MonomialIdeal) -> list[tuple[tuple[int, int], list[MultiPoly]]]:
    """All lcm syzygies, pairs (i, j) with i < j in lexicographic order.

    Row i carries +lcm/f_i and row j carries -lcm/f_j.
    """
    m = len(M.gens)
    if m < 2:
        raise DomainError("syzygies need at least two generators")
    ring = M.ring
    out = []
    for i, j in combinations(range(m), 2):
        fi, fj = M.gens[i], M.gens[j]
        l = mono_lcm(fi, fj)
        col = [ring.zero()] * m
        col[i] = MultiPoly(ring, {mono_div(l, fi): QQ(1)}, _clean=True)
        col[j] = MultiPoly(ring, {mono_div(l, fj): QQ(-1)}, _clean=True)
        out.append(((i, j), col))
    return out


def multigraded_syzygies(M: MonomialIdeal) -> PolyMatrix:
    cols = [c for _, c in pairwise_syzygies(M)]
    return PolyMatrix(M.ring, [[c[i] for c in cols] for i in range(len(M.gens))], check=False)


# -- module Groebner machinery -----------------------------------------------

class _ModuleRing:
    """Position-variable encoding of R^m."""

    def __init__(self, ring: Ring, m: int):
        self.base = ring
        self.m = m
        pos = tuple(f"_e{k + 1}" for k in range(m))
        self.pos = pos
        order = product_order(lex(pos), ring.order)
        self.ring = Ring(pos + ring.names, (1,) * m + ring.weights,
                         (("pos", pos),) + ring.blocks, order)

    def encode(self, col: Sequence[MultiPoly]) -> MultiPoly:
        acc = self.ring.zero()
        for k, f in enumerate(col):
            if f:
                acc = acc + f.embed(self.ring) * self.ring.var(self.pos[k])
        return acc

    def decode(self, f: MultiPoly) -> list[MultiPoly]:
        m, n = self.m, self.base.nvars
        parts = [dict() for _ in range(m)]
        for mono, c in f.terms.items():
            k = next(i for i in range(m) if mono[i])
            parts[k][mono[m:]] = c
        return [MultiPoly(self.base, p, _clean=True) for p in parts]

    def position_filter(self):
        m = self.m

        def different(a, b):
            return a[:m] != b[:m]
        return different


def _module_gb(cols, mr: _ModuleRing, limits: Limits | None):
    enc = [mr.encode(c) for c in cols]
    enc = [e for e in enc if e]
    if not enc:
        return None
    return buchberger(enc, mr.ring.order, limits, pair_filter=mr.position_filter())


def module_contains(v: Sequence[MultiPoly], cols: Sequence[Sequence[MultiPoly]],
                    limits: Limits | None = None) -> bool:
    """Whether the column v lies in the submodule generated by ``cols``."""
    ring = v[0].ring
    mr = _ModuleRing(ring, len(v))
    target = mr.encode(v)
    if not target:
        return True
    G = _module_gb(cols, mr, limits)
    if G is None:
        return False
    return not normal_form(target, G)


def _column_degree(col: Sequence[MultiPoly], gens_deg: Sequence[int]) -> int:
    for k, f in enumerate(col):
        if f:
            return f.degree() + gens_deg[k]
    return 0


def minimalize_syzygies(M: MonomialIdeal, limits: Limits | None = None):
    """Greedy irredundant subset of the pairwise syzygies.

    Columns are visited in decreasing lcm degree (pair order breaks ties); a
    column is dropped when the remaining ones generate it.  For a graded module
    an irredundant homogeneous generating set is minimal.
    """
    pairs = pairwise_syzygies(M)
    degs = M.degrees()
    visit = sorted(range(len(pairs)), key=lambda k: -_column_degree(pairs[k][1], degs))
    keep = set(range(len(pairs)))
    for k in visit:
        others = [pairs[q][1] for q in sorted(keep) if q != k]
        if others and module_contains(pairs[k][1], others, limits):
            keep.discard(k)
    return [pairs[k] for k in sorted(keep)]


def _rank_full(cols: Sequence[Sequence[MultiPoly]]) -> bool:
    """Whether the columns are linearly independent over the fraction field."""
    if not cols:
        return True
    ring = cols[0][0].ring
    A = PolyMatrix(ring, [[c[i] for c in cols] for i in range(len(cols[0]))], check=False)
    k = len(cols)
    if k > A.nrows:
        return False
    for rs in combinations(range(A.nrows), k):
        if determinant(A.submatrix(rs, range(k))):
            return True
    return False


def second_syzygies_vanish(S, limits: Limits | None = None) -> bool:
    """S (a PolyMatrix or a list of columns) generates a free module.

    The generators are first minimalized; the module is free exactly when the
    minimal generators are independent, i.e. some maximal minor is nonzero.
    """
    cols = S.columns() if isinstance(S, PolyMatrix) else [list(c) for c in S]
    cols = [c for c in cols if any(c)]
    if len(cols) <= 1:
        return True
    keep = list(range(len(cols)))
    for k in sorted(range(len(cols)), key=lambda q: -max(f.degree() for f in cols[q])):
        others = [cols[q] for q in keep if q != k]
        if others and module_contains(cols[k], others, limits):
            keep.remove(k)
    return _rank_full([cols[q] for q in keep])


def syzygy_obstruction(M: MonomialIdeal, limits: Limits | None = None):
    """``None`` when the syzygy module is free of rank m-1, else evidence."""
    m = len(M.gens)
    if m < 2:
        return {"reason": "fewer than two generators", "generators": m}
    kept = minimalize_syzygies(M, limits)
    cols = [c for _, c in kept]
    if len(cols) != m - 1:
        return {"reason": f"{len(cols)} minimal syzygies, expected {m - 1}",
                "pairs": [p for p, _ in kept],
                "columns": [[str(f) for f in c] for c in cols]}
    if not _rank_full(cols):
        return {"reason": "minimal syzygies are dependent", "pairs": [p for p, _ in kept]}
    return None


def minimal_presentation(M: MonomialIdeal, limits: Limits | None = None) -> PolyMatrix:
    """Hilbert-Burch matrix phi with (-1)^i det(phi without row i) = f_i."""
    if codim(M) != 2:
        raise HypothesisError(f"ideal has codimension {codim(M)}, not 2", stage="presentation")
    m = len(M.gens)
    kept = minimalize_syzygies(M, limits)
    if len(kept) != m - 1 or not _rank_full([c for _, c in kept]):
        raise HypothesisError("ideal is not Cohen-Macaulay of codimension 2",
                              stage="presentation", obstruction=syzygy_obstruction(M, limits))
    ring = M.ring
    rows = [[c[i] for _, c in kept] for i in range(m)]
    phi = PolyMatrix(ring, rows, check=False)
    gens = M.polys()
    signed = signed_maximal_minors(phi).signed
    # the signed minors are a common scalar multiple of the generators
    scale = None
    for s, f in zip(signed, gens):
        c = s.leading_coefficient() / f.leading_coefficient() if s else None
        if c is None or s != f * c or (scale is not None and c != scale):
            raise InvariantViolation(f"Hilbert-Burch check failed: {s} vs {f}")
        scale = c
    if scale != 1:
        phi = phi.scale_column(phi.ncols - 1, 1 / scale)
    degrees = phi.infer_column_degrees()
    if degrees is not None:
        phi = PolyMatrix(ring, phi.rows, degrees)
    if list(signed_maximal_minors(phi).signed) != gens:
        raise InvariantViolation("Hilbert-Burch normalization failed")
    return phi


# -- graded bookkeeping and series -------------------------------------------

@dataclass(frozen=True)
class GradedResolutionSummary:
    a: tuple  # generator degrees
    b: tuple  # syzygy degrees
    length: int = 2

    @classmethod
    def from_presentation(cls, M: MonomialIdeal, phi: PolyMatrix) -> "GradedResolutionSummary":
        a = tuple(M.degrees())
        b = tuple(_column_degree(c, a) for c in phi.columns())
        return cls(a, b, 2 if b else 1)

    def column_degrees(self) -> tuple | None:
        """e_j = b_j - d when the ideal is generated in the single degree d."""
        if len(set(self.a)) != 1:
            return None
        d = self.a[0]
        return tuple(bj - d for bj in self.b)


def hilbert_series_from_twists(summary: GradedResolutionSummary, ring: Ring) -> HilbertSeries:
    num = {0: 1}
    for ai in summary.a:
        num = poly_add(num, {ai: -1})
    for bj in summary.b:
        num = poly_add(num, {bj: 1})
    return HilbertSeries.from_weights(num, ring.weights)


def closed_form_numerator_link(m: int, d: int, e: Sequence[int], r: int | None = None,
                               weights: Sequence[int] | None = None) -> HilbertSeries:
    """1 - (m+1)t^(d+1) + t^(d+2) + sum_j t^(d+e_j+1) over the link ring's weights.

    Without ``weights`` the denominator is (1-t)^(r+m+1) * prod_j (1-t^e_j).
    """
    e = tuple(e)
    if m < 2 or d < 1 or len(e) != m - 1 or any(x < 1 for x in e):
        raise DomainError("closed form needs m >= 2, d >= 1 and m-1 positive column degrees")
    num = {0: 1}
    num = poly_add(num, {d + 1: -(m + 1)})
    num = poly_add(num, {d + 2: 1})
    for ej in e:
        num = poly_add(num, {d + ej + 1: 1})
    if weights is None:
        if r is None:
            raise DomainError("closed form needs r or explicit weights")
        weights = [1] * (r + m + 1) + list(e)
    return HilbertSeries.from_weights(num, weights)


def hilbert_series_of(M: MonomialIdeal) -> HilbertSeries:
    return hilbert_series_monomial(M)
