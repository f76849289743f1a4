"""Buchberger completion, normal forms and ideal calculus over QQ.

Polynomials enter and leave as :class:`MultiPoly`; internally the engine works
on ``(monomial -> coefficient)`` dicts with a heap keyed by the negated order
key so that the largest remaining monomial is always on top.

Pair selection is the normal strategy refined by sugar: pairs are taken in
increasing (sugar, lcm degree, lcm) order, and the Gebauer-Moller update
discards pairs covered by Buchberger's coprime and chain criteria.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .core import (MultiPoly, OrderSpec, QQ, Ring, elimination, grevlex,
                   mono_div, mono_divides, mono_lcm, mono_mul, product_order)
from .errors import ContractError, DomainError, RegistryMismatchError, ResourceLimitError
from .monomial import MonomialIdeal
from .series import HilbertSeries, poly_add, poly_mul

DEFAULT_MAX_PAIRS = 20000


@dataclass(frozen=True)
class Limits:
    """Resource bounds for one completion.  ``None`` disables the degree bound."""

    max_pairs: int = DEFAULT_MAX_PAIRS
    max_degree: int | None = None

    @classmethod
    def from_env(cls, max_pairs=None, max_degree=None) -> "Limits":
        if max_pairs is None:
            max_pairs = int(os.environ.get("MAX_PAIRS", DEFAULT_MAX_PAIRS))
        if max_degree is None and os.environ.get("MAX_DEGREE"):
            max_degree = int(os.environ["MAX_DEGREE"])
        return cls(max_pairs, max_degree)


DEFAULT_LIMITS = Limits()


class IdealBasis:
    """Generators of an ideal together with the order they were computed for."""

    __slots__ = ("gens", "ring", "order", "is_groebner", "is_reduced")

    def __init__(self, gens: Iterable[MultiPoly], ring: Ring | None = None,
                 order: OrderSpec | None = None, is_groebner=False, is_reduced=False):
        gens = [g for g in gens if g]
        if ring is None:
            if not gens:
                raise DomainError("empty basis needs an explicit ring")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise RegistryMismatchError("generators over different registries")
        self.gens = tuple(gens)
        self.ring = ring
        self.order = (order or ring.order).bind(ring.names)
        self.is_groebner = is_groebner
        self.is_reduced = is_reduced

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __repr__(self):
        return f"IdealBasis([{', '.join(map(str, self.gens))}])"

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial(self.order) for g in self.gens]

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.gens)

    def contains(self, f: MultiPoly) -> bool:
        if not self.is_groebner:
            raise ContractError("membership needs a Groebner basis")
        return not normal_form(f, self)

    def to_strings(self) -> list[str]:
        return [g.to_string(self.order) for g in self.gens]


# -- internal representation -----------------------------------------------

def _negkey(ring: Ring, order: OrderSpec):
    key = ring.key(order)
    return lambda m: tuple([-x for x in key(m)])


def _mask(m: tuple) -> int:
    b = 0
    for i, e in enumerate(m):
        if e:
            b |= 1 << i
    return b


class _Poly:
    """Working polynomial: sorted term list plus cached leading data."""

    __slots__ = ("terms", "lm", "lc", "mask", "sugar")

    def __init__(self, terms: list, sugar: int):
        self.terms = terms  # [(mono, coeff)] descending
        self.lm, self.lc = terms[0]
        self.mask = _mask(self.lm)
        self.sugar = sugar


def _sorted_terms(d: dict, key) -> list:
    return [(m, d[m]) for m in sorted(d, key=key, reverse=True)]


def _reduce(d: dict, basis: Sequence[_Poly], neg, full: bool, degree=None) -> tuple[dict, int]:
    """Reduce the term dict ``d`` in place against ``basis``.

    Returns (remainder dict, sugar increase).  With ``full=False`` the loop
    stops at the first irreducible term (top reduction only).
    """
    heap = [(neg(m), m) for m in d]
    heapq.heapify(heap)
    rem: dict = {}
    sugar = 0
    while heap:
        _, m = heapq.heappop(heap)
        c = d.pop(m, None)
        if c is None:
            continue
        mm = _mask(m)
        g = None
        for p in basis:
            if p.mask & ~mm == 0 and mono_divides(p.lm, m):
                g = p
                break
        if g is None:
            rem[m] = c
            if not full:
                rem.update(d)
                return rem, sugar
            continue
        q = mono_div(m, g.lm)
        if degree is not None:
            sugar = max(sugar, degree(q) + g.sugar)
        f = c / g.lc
        for gm, gc in g.terms[1:]:
            nm = tuple([x + y for x, y in zip(gm, q)])
            v = d.get(nm)
            if v is None:
                d[nm] = -f * gc
                heapq.heappush(heap, (neg(nm), nm))
            else:
                v = v - f * gc
                if v:
                    d[nm] = v
                else:
                    del d[nm]
    return rem, sugar


def _to_work(f: MultiPoly, key, degree) -> _Poly | None:
    if not f.terms:
        return None
    return _Poly(_sorted_terms(f.terms, key), max(degree(m) for m in f.terms))


def _monic(p: _Poly) -> _Poly:
    if p.lc == 1:
        return p
    inv = 1 / p.lc
    return _Poly([(m, c * inv) for m, c in p.terms], p.sugar)


def _ring_order(obj, order):
    if isinstance(obj, IdealBasis):
        return obj.ring, (order or obj.order)
    gens = list(obj)
    if not gens:
        raise DomainError("empty generator list")
    return gens[0].ring, order


# -- public single-polynomial operations -----------------------------------

def normal_form(f: MultiPoly, G, order: OrderSpec | None = None) -> MultiPoly:
    """Fully reduced remainder of f modulo G (any generating list)."""
    ring, order = _ring_order(G, order)
    if f.ring != ring:
        raise RegistryMismatchError("polynomial and basis over different registries")
    key = ring.key(order)
    work = [p for p in (_to_work(g, key, ring.degree) for g in G) if p]
    rem, _ = _reduce(dict(f.terms), work, _negkey(ring, order), True)
    return MultiPoly(ring, rem, _clean=True)


def divide(f: MultiPoly, G: Sequence[MultiPoly], order: OrderSpec | None = None):
    """Multivariate division: returns (quotients, remainder) with f = sum q_i g_i + r."""
    ring = f.ring
    key = ring.key(order)
    leads = [g.leading_term(order) for g in G]
    qs = [dict() for _ in G]
    d = dict(f.terms)
    rem: dict = {}
    while d:
        m = max(d, key=key)
        c = d[m]
        for i, (lc, lm) in enumerate(leads):
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                fac = c / lc
                qs[i][q] = qs[i].get(q, 0) + fac
                for gm, gc in G[i].terms.items():
                    nm = mono_mul(gm, q)
                    v = d.get(nm, 0) - fac * gc
                    if v:
                        d[nm] = v
                    else:
                        d.pop(nm, None)
                break
        else:
            rem[m] = c
            del d[m]
    return [MultiPoly(ring, q) for q in qs], MultiPoly(ring, rem)


def exact_quotient(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    (q,), r = divide(f, [g])
    if r:
        raise DomainError(f"{g} does not divide {f}")
    return q


def s_polynomial(f: MultiPoly, g: MultiPoly, order: OrderSpec | None = None) -> MultiPoly:
    if not f or not g:
        raise DomainError("S-polynomial of zero")
    cf, mf = f.leading_term(order)
    cg, mg = g.leading_term(order)
    l = mono_lcm(mf, mg)
    return f.mul_term(1 / cf, mono_div(l, mf)) - g.mul_term(1 / cg, mono_div(l, mg))


# -- Buchberger --------------------------------------------------------------

PairFilter = Callable[[tuple, tuple], bool]


def _update(G: list[int], B: dict, ih: int, polys: list[_Poly]):
    """Gebauer-Moller installation of polys[ih] into (G, B)."""
    mh = polys[ih].lm
    C = list(G)
    D = []
    while C:
        ig = C.pop()
        mg = polys[ig].lm
        lhg = mono_lcm(mh, mg)

        def covered(ip):
            return mono_divides(mono_lcm(mh, polys[ip].lm), lhg)

        if mono_mul(mh, mg) == lhg or (not any(covered(ip) for ip in C)
                                       and not any(covered(jg) for _, jg in D)):
            D.append((ih, ig))
    E = [(ih, ig) for ih_, ig in D if mono_mul(mh, polys[ig].lm) != mono_lcm(mh, polys[ig].lm)]
    for pair in list(B):
        i, j = pair
        mi, mj = polys[i].lm, polys[j].lm
        lij = mono_lcm(mi, mj)
        if mono_divides(mh, lij) and mono_lcm(mi, mh) != lij and mono_lcm(mj, mh) != lij:
            del B[pair]
    G[:] = [ig for ig in G if not mono_divides(mh, polys[ig].lm)]
    G.append(ih)
    return E


def buchberger(gens, order: OrderSpec | None = None, limits: Limits | None = None,
               pair_filter: PairFilter | None = None, reduce: bool = True) -> IdealBasis:
    """Groebner basis of ``gens``; reduced unless ``reduce=False``.

    ``pair_filter(lm_i, lm_j)`` may veto S-pairs known to reduce to zero (the
    module machinery uses it to skip pairs in different positions).
    """
    if isinstance(gens, IdealBasis):
        order = order or gens.order
        gens = gens.gens
    gens = [g for g in gens if g]
    if not gens:
        raise DomainError("buchberger needs at least one nonzero generator")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RegistryMismatchError("generators over different registries")
    order = (order or ring.order).bind(ring.names)
    limits = limits or DEFAULT_LIMITS
    key = ring.key(order)
    neg = _negkey(ring, order)
    deg = ring.degree

    polys: list[_Poly] = []
    G: list[int] = []
    B: dict = {}
    # seed with inter-reduced input, smallest leading monomial first
    work = sorted((p for p in (_to_work(g, key, deg) for g in gens) if p), key=lambda p: key(p.lm))
    for p in work:
        rem, s = _reduce(dict(p.terms), [polys[i] for i in G], neg, True, deg)
        if not rem:
            continue
        h = _monic(_Poly(_sorted_terms(rem, key), max(p.sugar, s)))
        polys.append(h)
        ih = len(polys) - 1
        for pr in _update(G, B, ih, polys):
            B[pr] = _pair_key(pr, polys, deg, key)
        if h.lm == (0,) * ring.nvars:
            break

    processed = 0
    while B:
        pair = min(B, key=B.__getitem__)
        sk = B.pop(pair)
        i, j = pair
        fi, fj = polys[i], polys[j]
        if pair_filter is not None and pair_filter(fi.lm, fj.lm):
            continue
        processed += 1
        if processed > limits.max_pairs:
            raise ResourceLimitError(f"pair bound {limits.max_pairs} exceeded",
                                     pairs=processed - 1, degree=sk[1])
        if limits.max_degree is not None and sk[1] > limits.max_degree:
            raise ResourceLimitError(f"degree bound {limits.max_degree} exceeded",
                                     pairs=processed, degree=sk[1])
        l = mono_lcm(fi.lm, fj.lm)
        qi, qj = mono_div(l, fi.lm), mono_div(l, fj.lm)
        ci, cj = 1 / fi.lc, 1 / fj.lc
        d: dict = {}
        for m, c in fi.terms[1:]:
            d[mono_mul(m, qi)] = c * ci
        for m, c in fj.terms[1:]:
            nm = mono_mul(m, qj)
            v = d.get(nm, 0) - c * cj
            if v:
                d[nm] = v
            else:
                d.pop(nm, None)
        if not d:
            continue
        active = [polys[k] for k in G]
        rem, s = _reduce(d, active, neg, True, deg)
        if not rem:
            continue
        h = _monic(_Poly(_sorted_terms(rem, key), max(sk[0], s)))
        polys.append(h)
        ih = len(polys) - 1
        for pr in _update(G, B, ih, polys):
            B[pr] = _pair_key(pr, polys, deg, key)
        if not any(h.lm):
            break

    basis = [polys[i] for i in G]
    if any(not any(p.lm) for p in basis):
        return IdealBasis([ring.one()], ring, order, True, True)
    out = IdealBasis([_from_work(p, ring) for p in basis], ring, order, True, False)
    return reduce_gb(out) if reduce else out


def _pair_key(pair, polys, deg, key):
    i, j = pair
    mi, mj = polys[i].lm, polys[j].lm
    l = mono_lcm(mi, mj)
    dl = deg(l)
    sugar = max(polys[i].sugar + dl - deg(mi), polys[j].sugar + dl - deg(mj))
    return (sugar, dl, key(l), i, j)


def _from_work(p: _Poly, ring: Ring) -> MultiPoly:
    return MultiPoly(ring, dict(p.terms), _clean=True)


def reduce_gb(G: IdealBasis) -> IdealBasis:
    """Minimal, monic, inter-reduced basis; sorted by descending leading monomial."""
    if not G.is_groebner:
        raise ContractError("reduce_gb needs a Groebner basis")
    ring, order = G.ring, G.order
    key = ring.key(order)
    neg = _negkey(ring, order)
    deg = ring.degree
    work = [_to_work(g, key, deg) for g in G.gens]
    work.sort(key=lambda p: key(p.lm))
    minimal: list[_Poly] = []
    for p in work:
        if not any(mono_divides(q.lm, p.lm) for q in minimal):
            minimal = [q for q in minimal if not mono_divides(p.lm, q.lm)]
            minimal.append(p)
    out = []
    for k, p in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        tail = dict(p.terms[1:])
        rem, _ = _reduce(tail, others, neg, True)
        rem[p.lm] = p.lc
        out.append(_monic(_Poly(_sorted_terms(rem, key), p.sugar)))
    out.sort(key=lambda p: key(p.lm), reverse=True)
    return IdealBasis([_from_work(p, ring) for p in out], ring, order, True, True)


def groebner(gens, order: OrderSpec | None = None, limits: Limits | None = None) -> IdealBasis:
    return buchberger(gens, order, limits)


def is_groebner(gens, order: OrderSpec | None = None):
    """(True, None) or (False, (i, j, remainder)) for the first failing S-pair."""
    if isinstance(gens, IdealBasis):
        order = order or gens.order
        gens = gens.gens
    gens = [g for g in gens if g]
    if not gens:
        return True, None
    ring = gens[0].ring
    order = (order or ring.order).bind(ring.names)
    key = ring.key(order)
    neg = _negkey(ring, order)
    work = [_to_work(g, key, ring.degree) for g in gens]
    for i, j in combinations(range(len(work)), 2):
        a, b = work[i], work[j]
        if mono_mul(a.lm, b.lm) == mono_lcm(a.lm, b.lm):
            continue  # coprime leading monomials
        s = s_polynomial(gens[i], gens[j], order)
        rem, _ = _reduce(dict(s.terms), work, neg, True)
        if rem:
            return False, (i, j, MultiPoly(ring, rem, _clean=True))
    return True, None


def initial_ideal(G: IdealBasis) -> MonomialIdeal:
    if not G.is_groebner:
        raise ContractError("initial_ideal needs a basis flagged as Groebner")
    return MonomialIdeal(G.ring, G.leading_monomials())


def same_ideal(F: Sequence[MultiPoly], G: Sequence[MultiPoly], order: OrderSpec | None = None,
               limits: Limits | None = None) -> bool:
    """Ideal equality via reduced bases."""
    a = buchberger(F, order, limits)
    b = buchberger(G, order, limits)
    return [g.terms for g in a.gens] == [g.terms for g in b.gens]


# -- ideal calculus ----------------------------------------------------------

def _fresh_name(ring: Ring, stem: str) -> str:
    name = stem
    while name in ring.names:
        name += "_"
    return name


def eliminate(I, block: Iterable[str], limits: Limits | None = None,
              rest_order: OrderSpec | None = None) -> IdealBasis:
    """Reduced basis of I intersected with the subring on the other variables."""
    gens = list(I.gens if isinstance(I, IdealBasis) else I)
    if not gens:
        raise DomainError("empty ideal")
    ring = gens[0].ring
    block = tuple(block)
    for v in block:
        ring.index(v)
    rest = [n for n in ring.names if n not in block]
    sub = ring.subring(rest) if rest_order is None else ring.subring(rest, rest_order)
    order = product_order(grevlex(block), sub.order, label=f"elim[{' '.join(block)}]")
    G = buchberger(gens, order, limits)
    kept = [g.restrict(sub) for g in G.gens if not (g.support() & set(block))]
    if not kept:
        return IdealBasis([], sub, sub.order, True, True)
    # elements free of the block form a reduced basis for the restricted order
    return IdealBasis(kept, sub, sub.order, True, True)


def ideal_intersection(I, J, limits: Limits | None = None) -> IdealBasis:
    Ig = list(I.gens if isinstance(I, IdealBasis) else I)
    Jg = list(J.gens if isinstance(J, IdealBasis) else J)
    if not Ig or not Jg:
        ring = (Ig or Jg)[0].ring if (Ig or Jg) else None
        return IdealBasis([], ring, None, True, True)
    ring = Ig[0].ring
    for g in Ig + Jg:
        if g.ring != ring:
            raise RegistryMismatchError("intersection of ideals over different registries")
    t = _fresh_name(ring, "t")
    big = Ring((t,) + ring.names, (1,) + ring.weights,
               (("elim", (t,)),) + ring.blocks,
               product_order(grevlex((t,)), ring.order))
    tv = big.var(t)
    gens = [tv * g.embed(big) for g in Ig] + [(1 - tv) * g.embed(big) for g in Jg]
    G = buchberger(gens, big.order, limits)
    kept = [g.restrict(ring) for g in G.gens if t not in g.support()]
    if not kept:
        return IdealBasis([], ring, ring.order, True, True)
    return buchberger(kept, ring.order, limits)


def ideal_colon_poly(I, f: MultiPoly, limits: Limits | None = None) -> IdealBasis:
    if not f:
        raise DomainError("colon by the zero polynomial")
    Ig = list(I.gens if isinstance(I, IdealBasis) else I)
    if f.is_constant():
        return buchberger(Ig, f.ring.order, limits)
    K = ideal_intersection(Ig, [f], limits)
    if not K.gens:
        return K
    return buchberger([exact_quotient(g, f) for g in K.gens], f.ring.order, limits)


def ideal_colon_ideal(I, J, limits: Limits | None = None) -> IdealBasis:
    Jg = [g for g in (J.gens if isinstance(J, IdealBasis) else J) if g]
    Ig = list(I.gens if isinstance(I, IdealBasis) else I)
    if not Jg:
        return IdealBasis([Ig[0].ring.one()], is_groebner=True, is_reduced=True)
    acc = None
    for g in Jg:
        K = ideal_colon_poly(Ig, g, limits)
        acc = K if acc is None else ideal_intersection(acc, K, limits)
    return acc


# -- Hilbert functions of monomial ideals -----------------------------------

def hilbert_numerator(gens: Sequence[tuple], weights: Sequence[int]) -> dict[int, int]:
    """K-polynomial numerator of k[x]/M for a monomial ideal M.

    Recursive pivot splitting: N(M) = N(M + <x>) + t^w(x) N(M : x) with x the
    variable occurring in most non-pure-power generators.
    """
    weights = tuple(weights)
    mins = frozenset(_minimal(list(gens)))
    return dict(_numer(mins, weights))


def _minimal(ms):
    ms = sorted(set(ms), key=sum)
    out = []
    for m in ms:
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out


@lru_cache(maxsize=100000)
def _numer(gens: frozenset, weights: tuple) -> tuple:
    if not gens:
        return ((0, 1),)
    if any(not any(g) for g in gens):
        return ()
    mixed = [g for g in gens if sum(1 for e in g if e) > 1]
    if not mixed:
        acc = {0: 1}
        for g in gens:
            i = next(k for k, e in enumerate(g) if e)
            acc = poly_mul(acc, {0: 1, weights[i] * g[i]: -1})
        return tuple(sorted(acc.items()))
    counts = [0] * len(weights)
    for g in mixed:
        for k, e in enumerate(g):
            if e:
                counts[k] += 1
    x = max(range(len(weights)), key=lambda k: (counts[k], -k))
    unit = tuple(1 if k == x else 0 for k in range(len(weights)))
    plus = frozenset(_minimal([g for g in gens if not g[x]] + [unit]))
    colon = frozenset(_minimal([tuple(e - 1 if k == x and e else e for k, e in enumerate(g))
                                for g in gens]))
    a = dict(_numer(plus, weights))
    b = {k + weights[x]: v for k, v in _numer(colon, weights)}
    return tuple(sorted(poly_add(a, b).items()))


def hilbert_series_monomial(M: MonomialIdeal) -> HilbertSeries:
    return HilbertSeries.from_weights(hilbert_numerator(M.gens, M.ring.weights), M.ring.weights)


def hilbert_function_truncated(M, D: int) -> list[int]:
    """dim_k (R/M)_n for n = 0..D (weighted degrees)."""
    if isinstance(M, IdealBasis):
        M = initial_ideal(M)
    return hilbert_series_monomial(M).expand(D)
