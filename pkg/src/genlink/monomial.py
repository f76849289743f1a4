"""Monomial ideal combinatorics: generators, radicals, polarization, minimal primes.

Everything here works on exponent tuples; no Gröbner computation is needed
except in :func:`is_generically_ci` when a matrix has non-monomial minors and in
:func:`is_cm_codim2`, which delegates to the syzygy machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import MultiPoly, QQ, Ring, mono_divides, mono_lcm
from .errors import DomainError, RegistryMismatchError


class MonomialIdeal:
    """Divisibility-minimal generating set of a monomial ideal.

    Generators keep the order of their first occurrence in the input, since the
    presentation matrix and its minors are indexed by that order.  Equality
    compares generator sets.
    """

    __slots__ = ("ring", "gens")

    def __init__(self, ring: Ring, monomials: Iterable = ()):
        self.ring = ring
        self.gens = tuple(_minimalize([_as_exponents(m, ring) for m in monomials]))

    @classmethod
    def parse(cls, ring: Ring, texts: Iterable[str]) -> "MonomialIdeal":
        return cls(ring, [ring.poly(t) for t in texts])

    def __eq__(self, other):
        return (isinstance(other, MonomialIdeal) and self.ring == other.ring
                and set(self.gens) == set(other.gens))

    def __hash__(self):
        return hash((self.ring, frozenset(self.gens)))

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __contains__(self, m) -> bool:
        e = _as_exponents(m, self.ring)
        return any(mono_divides(g, e) for g in self.gens)

    def is_unit(self) -> bool:
        return any(not any(g) for g in self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_squarefree(self) -> bool:
        return all(e <= 1 for g in self.gens for e in g)

    def polys(self) -> list[MultiPoly]:
        return [MultiPoly(self.ring, {g: QQ(1)}, _clean=True) for g in self.gens]

    def degrees(self) -> list[int]:
        return [self.ring.degree(g) for g in self.gens]

    def support(self, g) -> tuple[str, ...]:
        return tuple(n for n, e in zip(self.ring.names, g) if e)

    def embed(self, ring: Ring) -> "MonomialIdeal":
        return MonomialIdeal(ring, [p.embed(ring) for p in self.polys()])

    def restrict(self, ring: Ring) -> "MonomialIdeal":
        return MonomialIdeal(ring, [p.restrict(ring) for p in self.polys()])

    def to_strings(self) -> list[str]:
        return [self.ring.format_mono(g) for g in self.gens]

    def __str__(self):
        return "<" + ", ".join(self.to_strings()) + ">"

    __repr__ = __str__


def _as_exponents(m, ring: Ring) -> tuple:
    if isinstance(m, MultiPoly):
        if m.ring != ring:
            raise RegistryMismatchError("monomial is over a different registry")
        if not m.is_monomial():
            raise DomainError(f"{m} is not a monomial")
        return next(iter(m.terms))
    m = tuple(int(e) for e in m)
    if len(m) != ring.nvars:
        raise RegistryMismatchError("monomial length does not match registry")
    if any(e < 0 for e in m):
        raise DomainError("negative exponent")
    return m


def _minimalize(ms: Sequence[tuple]) -> list[tuple]:
    uniq = list(dict.fromkeys(ms))
    return [m for m in uniq if not any(g != m and mono_divides(g, m) for g in uniq)]


def minimal_generators(monomials: Iterable, ring: Ring | None = None) -> MonomialIdeal:
    monomials = list(monomials)
    if ring is None:
        if not monomials or not isinstance(monomials[0], MultiPoly):
            raise DomainError("a registry is needed for bare exponent tuples")
        ring = monomials[0].ring
    return MonomialIdeal(ring, monomials)


def radical(M: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(M.ring, [tuple(1 if e else 0 for e in g) for g in M.gens])


def ideal_sum(M: MonomialIdeal, N: MonomialIdeal) -> MonomialIdeal:
    _same(M, N)
    return MonomialIdeal(M.ring, M.gens + N.gens)


def ideal_product(M: MonomialIdeal, N: MonomialIdeal) -> MonomialIdeal:
    _same(M, N)
    return MonomialIdeal(M.ring, [tuple(a + b for a, b in zip(g, h)) for g in M.gens for h in N.gens])


def intersection(M: MonomialIdeal, N: MonomialIdeal) -> MonomialIdeal:
    _same(M, N)
    return MonomialIdeal(M.ring, [mono_lcm(g, h) for g in M.gens for h in N.gens])


def colon(M: MonomialIdeal, m) -> MonomialIdeal:
    """(M : m) for a single monomial m."""
    e = _as_exponents(m, M.ring)
    return MonomialIdeal(M.ring, [tuple(max(a - b, 0) for a, b in zip(g, e)) for g in M.gens])


def _same(M, N):
    if M.ring != N.ring:
        raise RegistryMismatchError("monomial ideals over different registries")


# -- polarization -----------------------------------------------------------

@dataclass(frozen=True)
class PolarizationMap:
    ideal: MonomialIdeal
    fresh_vars: tuple  # ((new, replaced), ...)
    source: MonomialIdeal

    def depolarize(self) -> MonomialIdeal:
        """Substitute every fresh variable by the variable it replaced."""
        ring = self.source.ring
        back = dict(self.fresh_vars)
        out = []
        for g in self.ideal.gens:
            e = [0] * ring.nvars
            for n, k in zip(self.ideal.ring.names, g):
                if k:
                    e[ring.index(back.get(n, n))] += k
            out.append(tuple(e))
        return MonomialIdeal(ring, out)


def polarize(M: MonomialIdeal, block: str = "polar") -> PolarizationMap:
    """Replace x^k by x * x#1 * ... * x#(k-1); fresh variables go in a new block."""
    ring = M.ring
    top = [max((g[i] for g in M.gens), default=0) for i in range(ring.nvars)]
    fresh = []
    for i, n in enumerate(ring.names):
        for j in range(1, top[i]):
            fresh.append((f"{n}#{j}", n))
    if not fresh:
        return PolarizationMap(M, (), M)
    new_ring = ring.extend([f for f, _ in fresh],
                           [ring.weight_of(n) for _, n in fresh], block=block)
    out = []
    for g in M.gens:
        e = [0] * new_ring.nvars
        for i, n in enumerate(ring.names):
            if g[i]:
                e[i] = 1
                for j in range(1, g[i]):
                    e[new_ring.index(f"{n}#{j}")] = 1
        out.append(tuple(e))
    return PolarizationMap(MonomialIdeal(new_ring, out), tuple(fresh), M)


# -- minimal primes and codimension -----------------------------------------

def minimal_primes_squarefree(M: MonomialIdeal) -> list[tuple[str, ...]]:
    """Inclusion-minimal vertex covers of the generator hypergraph.

    Each cover ``C`` names the prime ``(x : x in C)``; covers are returned in
    registry order, sorted by size then lexicographically by position.
    """
    if not M.is_squarefree():
        raise DomainError("minimal_primes_squarefree needs a square-free ideal")
    if M.is_unit():
        return []
    edges = [frozenset(i for i, e in enumerate(g) if e) for g in M.gens]
    covers: set[frozenset] = set()

    def search(chosen: frozenset):
        for edge in edges:
            if not (edge & chosen):
                # prune: a superset of a known cover is never minimal
                for v in sorted(edge):
                    nxt = chosen | {v}
                    if not any(c <= nxt for c in covers):
                        search(nxt)
                return
        covers.add(chosen)

    search(frozenset())
    minimal = [c for c in covers if not any(o < c for o in covers)]
    names = M.ring.names
    return sorted((tuple(names[i] for i in sorted(c)) for c in minimal),
                  key=lambda t: (len(t), [M.ring.index(n) for n in t]))


def codim(M: MonomialIdeal) -> float:
    """Height of the ideal; ``math.inf`` for the unit ideal, 0 for the zero ideal."""
    if M.is_unit():
        return math.inf
    if M.is_zero():
        return 0
    return min(len(p) for p in minimal_primes_squarefree(radical(M)))


def is_unmixed(M: MonomialIdeal) -> bool:
    """All minimal primes of the radical have the same height."""
    if M.is_unit() or M.is_zero():
        return True
    return len({len(p) for p in minimal_primes_squarefree(radical(M))}) == 1


def is_generically_ci(M: MonomialIdeal, phi=None) -> bool:
    """codim I_{m-2}(phi) >= 3, with phi the presentation of M when omitted."""
    from .matrixops import minors_ideal_polys
    from .resolution import minimal_presentation
    if phi is None:
        phi = minimal_presentation(M)
    m = phi.nrows
    if m < 2:
        raise DomainError("need at least two generators")
    polys = minors_ideal_polys(phi, m - 2)
    return polynomial_codim(polys, phi.ring) >= 3


def polynomial_codim(polys: Sequence[MultiPoly], ring: Ring) -> float:
    """Codimension of the ideal generated by ``polys`` via its initial ideal."""
    polys = [p for p in polys if p]
    if not polys:
        return 0
    if all(p.is_monomial() for p in polys):
        return codim(MonomialIdeal(ring, [next(iter(p.terms)) for p in polys]))
    from .groebner import buchberger, initial_ideal
    return codim(initial_ideal(buchberger(polys)))


def is_cm_codim2(M: MonomialIdeal) -> bool:
    """Hilbert-Burch test: m-1 minimal syzygies and no second syzygies."""
    from .resolution import syzygy_obstruction
    c = codim(M)
    if c != 2:
        raise DomainError(f"is_cm_codim2 expects codimension 2, got {c}")
    return syzygy_obstruction(M) is None


def standard_monomials(M: MonomialIdeal, degree: int) -> list[tuple]:
    """All monomials of weighted degree ``degree`` outside M (brute force)."""
    ring = M.ring
    out = []

    def rec(i, left, acc):
        if i == ring.nvars:
            if left == 0:
                t = tuple(acc)
                if t not in M:
                    out.append(t)
            return
        w = ring.weights[i]
        for k in range(left // w + 1):
            acc.append(k)
            rec(i + 1, left - k * w, acc)
            acc.pop()

    rec(0, degree, [])
    return out
