"""Specialization of link variables and a primality certificate.

The certificate follows the tower argument: if B = k[z] is a Noether
normalization of a Cohen-Macaulay equidimensional A = S/J, l = dim_k S/(J, z),
and J meets k[z, U] in an irreducible f of degree l, then A is a domain.
Cohen-Macaulayness is checked by comparing l with the multiplicity read off
the Hilbert series of in(J); the two agree exactly when z is a regular
sequence.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from . import gfpoly
from .core import QQ, MultiPoly, Ring, grevlex, lex, to_qq
from .errors import DomainError, ResourceLimitError
from .groebner import (IdealBasis, Limits, buchberger, eliminate, hilbert_series_monomial,
                       initial_ideal, normal_form)
from .monomial import MonomialIdeal

__all__ = [
    "Specialization", "PrimeCertificate", "IrreducibilityWitness", "specialize",
    "specialize_random", "vanishing_leading_coefficients", "homogenize_t", "dehomogenize",
    "artinian_degree", "noether_normalize_search", "eliminate_to_hypersurface",
    "irreducible", "prime_certificate", "zero_divisor_probe", "PRIMES",
]


def _primes(count: int, above: int = 2) -> list[int]:
    out = []
    n = max(above + 1, 2)
    while len(out) < count:
        if all(n % p for p in range(2, math.isqrt(n) + 1)):
            out.append(n)
        n += 1
    return out


PRIMES = tuple(_primes(25))


# -- specialization -----------------------------------------------------------

@dataclass(frozen=True)
class Specialization:
    assignments: dict
    seed: int | None = None

    @classmethod
    def from_values(cls, names: Sequence[str], values: Sequence) -> "Specialization":
        names, values = list(names), list(values)
        if len(names) != len(values):
            raise DomainError(f"{len(values)} values for {len(names)} extension variables")
        return cls({n: to_qq(v) for n, v in zip(names, values)})

    @classmethod
    def random(cls, names: Sequence[str], seed: int, rng: random.Random | None = None,
               bound: int = 9) -> "Specialization":
        rng = rng or random.Random(seed)
        vals = {}
        for n in names:
            num = rng.randint(-bound, bound) or 1
            vals[n] = QQ(num) / QQ(rng.randint(1, bound + 1))
        return cls(vals, seed)

    def values_in(self, names: Sequence[str]) -> list:
        return [self.assignments[n] for n in names]


def _extension_split(ring: Ring, base: Ring | None):
    if base is None:
        base = ring.subring(ring.base_vars)
    ext = [n for n in ring.names if n not in set(base.names)]
    return base, ext


def _check_total(s: Specialization, base: Ring, ext: Sequence[str]):
    for n in s.assignments:
        if n in base.names:
            raise DomainError(f"base variable {n} cannot be specialized")
        if n not in ext:
            raise DomainError(f"unknown variable {n} in specialization")
    missing = [n for n in ext if n not in s.assignments]
    if missing:
        raise DomainError(f"extension variables left unassigned: {', '.join(missing)}")


def _gens(G) -> list[MultiPoly]:
    return [g for g in (G.gens if isinstance(G, IdealBasis) else G) if g]


def vanishing_leading_coefficients(G, s: Specialization, base: Ring | None = None) -> list[int]:
    """Indices of generators whose x-leading coefficient dies under ``s``.

    The x-leading coefficient of g is the polynomial in the extension variables
    multiplying the largest base monomial of g.
    """
    gens = _gens(G)
    ring = gens[0].ring
    base, ext = _extension_split(ring, base)
    bpos = [ring.index(n) for n in base.names]
    bkey = base.key()
    out = []
    for k, g in enumerate(gens):
        top = max((tuple(m[i] for i in bpos) for m in g.terms), key=bkey)
        coeff = QQ(0)
        for m, c in g.terms.items():
            if tuple(m[i] for i in bpos) == top:
                val = c
                for n in ext:
                    e = m[ring.index(n)]
                    if e:
                        val *= s.assignments[n] ** e
                coeff += val
        if coeff == 0:
            out.append(k)
    return out


def specialize(G, s: Specialization, base: Ring | None = None,
               limits: Limits | None = None) -> IdealBasis:
    """Reduced basis over the base variables of the image of G under ``s``."""
    gens = _gens(G)
    if not gens:
        raise DomainError("nothing to specialize")
    ring = gens[0].ring
    base, ext = _extension_split(ring, base)
    _check_total(s, base, ext)
    images = [g.subs(s.assignments, base) for g in gens]
    images = [g for g in images if g]
    if not images:
        return IdealBasis([], base, base.order, True, True)
    return buchberger(images, base.order, limits)


def specialize_random(G, seed: int, base: Ring | None = None, tries: int = 20,
                      limits: Limits | None = None) -> tuple[Specialization, IdealBasis]:
    """Random specialization, resampled while a leading coefficient vanishes."""
    gens = _gens(G)
    base, ext = _extension_split(gens[0].ring, base)
    rng = random.Random(seed)
    for _ in range(tries):
        s = Specialization.random(ext, seed, rng)
        if not vanishing_leading_coefficients(gens, s, base):
            return s, specialize(gens, s, base, limits)
    raise DomainError(f"no admissible specialization in {tries} tries (seed {seed})")


# -- homogenization -----------------------------------------------------------

def homogenize_t(G, t: str = "t") -> IdealBasis:
    """Homogenize each generator to its total degree with a new variable t.

    The new ring appends t with weight one and uses grevlex on all variables.
    """
    gens = _gens(G)
    if not gens:
        raise DomainError("nothing to homogenize")
    ring = gens[0].ring
    if t in ring.names:
        raise DomainError(f"variable {t} already in the registry")
    if not ring._unit:
        raise DomainError("homogenize_t needs standard grading")
    names = ring.names + (t,)
    big = Ring(names, None, (("base", names),), grevlex(names))
    out = []
    for g in gens:
        d = g.degree()
        terms = {}
        for m, c in g.terms.items():
            terms[m + (d - sum(m),)] = c
        out.append(MultiPoly(big, terms, _clean=True))
    return IdealBasis(out, big, big.order, False, False)


def dehomogenize(G, t: str = "t", ring: Ring | None = None) -> list[MultiPoly]:
    gens = _gens(G)
    big = gens[0].ring
    if ring is None:
        ring = big.subring([n for n in big.names if n != t], grevlex([n for n in big.names if n != t]))
    return [g.subs({t: 1}, ring) for g in gens]


# -- degree and Noether normalization ------------------------------------------

def _forms(ring: Ring, z: Iterable) -> list[MultiPoly]:
    out = []
    for f in z:
        if isinstance(f, str):
            f = ring.var(f) if f in ring.names else ring.poly(f)
        out.append(f)
    return out


def _quotient_gb(J, z, limits: Limits | None = None) -> IdealBasis:
    gens = _gens(J)
    ring = gens[0].ring
    return buchberger(gens + _forms(ring, z), ring.order, limits)


def _artinian_count(M: MonomialIdeal) -> int | None:
    ring = M.ring
    tops = []
    for i, n in enumerate(ring.names):
        powers = [g[i] for g in M.gens if g[i] and sum(g) == g[i]]
        if not powers:
            return None
        tops.append(min(powers))
    bound = sum(w * (k - 1) for w, k in zip(ring.weights, tops))
    return sum(hilbert_series_monomial(M).expand(bound))


def artinian_degree(J, z: Iterable = (), limits: Limits | None = None) -> int:
    """dim_k S/(J, z), counted as standard monomials."""
    G = _quotient_gb(J, list(z), limits)
    if G.is_unit():
        return 0
    M = initial_ideal(G)
    count = _artinian_count(M)
    if count is None:
        for i, n in enumerate(M.ring.names):
            if not any(g[i] and sum(g) == g[i] for g in M.gens):
                raise DomainError(f"quotient is not Artinian: no pure power of {n} "
                                  f"in the initial ideal")
    return count


def _krull_dimension(J, limits: Limits | None = None) -> int:
    G = buchberger(_gens(J), None, limits)
    if G.is_unit():
        return -1
    return hilbert_series_monomial(initial_ideal(G)).dimension()


def _candidate_forms(ring: Ring, names: Sequence[str]):
    plain = [(n,) for n in names]
    sums = [(a, b) for a, b in combinations(names, 2)]
    return plain, sums


def _form_poly(ring: Ring, form: tuple) -> MultiPoly:
    acc = ring.zero()
    for n in form:
        acc = acc + ring.var(n)
    return acc


def _describe_form(form: tuple) -> str:
    return "+".join(form)


def noether_normalize_search(J, within: Sequence[str] | None = None, limit: int = 1,
                             limits: Limits | None = None) -> list[list[tuple]]:
    """Sets of dim(S/J) linear forms making S/(J, z) Artinian.

    Forms are single variables or sums of two variables from ``within`` (all
    variables by default).  Plain variable subsets are tried first, then
    subsets containing sums.  Each form is a tuple of variable names; up to
    ``limit`` normalizations are returned in search order, and an empty list
    means the search was exhausted.
    """
    raw = list(J.gens if isinstance(J, IdealBasis) else J)
    if not raw:
        raise DomainError("empty generator list; pass the zero polynomial to fix the ring")
    gens = _gens(J)
    ring = raw[0].ring
    if not gens:
        # zero ideal: S itself is polynomial, every variable is needed
        names = list(within) if within is not None else list(ring.names)
        if len(names) < len(ring.names):
            return []
        return [[(n,) for n in ring.names]]
    if not all(g.is_homogeneous() for g in gens):
        raise DomainError("noether_normalize_search needs homogeneous generators")
    dim = _krull_dimension(gens, limits)
    if dim < 0:
        return []
    names = list(within) if within is not None else list(ring.names)
    plain, sums = _candidate_forms(ring, names)
    found = []
    if dim == 0:
        return [[]]

    def valid(forms):
        G = _quotient_gb(gens, [_form_poly(ring, f) for f in forms], limits)
        return _artinian_count(initial_ideal(G)) is not None

    for forms in combinations(plain, dim):
        if valid(forms):
            found.append(list(forms))
            if len(found) >= limit:
                return found
    pool = plain + sums
    for forms in combinations(pool, dim):
        if all(len(f) == 1 for f in forms):
            continue
        # forms must be linearly independent
        if len({v for f in forms for v in f}) < dim:
            continue
        if valid(forms):
            found.append(list(forms))
            if len(found) >= limit:
                return found
    return found


def eliminate_to_hypersurface(J, keep_vars: Sequence[str], limits: Limits | None = None) -> MultiPoly:
    """Minimal-degree generator of J meeting the subring on ``keep_vars``.

    The eliminated variables are ordered first (lex between them) and placed
    before ``keep_vars`` in grevlex.
    """
    gens = _gens(J)
    ring = gens[0].ring
    keep = [n for n in ring.names if n in set(keep_vars)]
    drop = [n for n in ring.names if n not in set(keep_vars)]
    if not drop:
        G = buchberger(gens, grevlex(keep).bind(ring.names), limits)
        cands = list(G.gens)
    else:
        E = eliminate(gens, drop, limits, rest_order=grevlex(keep))
        cands = list(E.gens)
    if not cands:
        raise DomainError("elimination ideal is zero: no hypersurface")
    best = min(cands, key=lambda g: (g.degree(), len(g.terms)))
    return best


# -- irreducibility -----------------------------------------------------------

@dataclass
class IrreducibilityWitness:
    verdict: bool | None  # True irreducible, False reducible, None inconclusive
    method: str
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.verdict is True


def _univariate_coeffs(f: MultiPoly, var: str) -> list:
    i = f.ring.index(var)
    out = [QQ(0)] * (f.degree_in(var) + 1)
    for m, c in f.terms.items():
        out[m[i]] += c
    return out


def _integer_coeffs(coeffs: Sequence) -> list[int]:
    den = 1
    for c in coeffs:
        den = den * int(Fraction(c).denominator) // math.gcd(den, int(Fraction(c).denominator))
    ints = [int(Fraction(c) * den) for c in coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [c // g for c in ints] if g else ints


def _rational_root(ints: Sequence[int]):
    """A rational root of sum ints[k] x^k, if any."""
    if ints[0] == 0:
        return Fraction(0)
    a0, an = abs(ints[0]), abs(ints[-1])
    if a0 > 10 ** 8 or an > 10 ** 8:
        return None

    def divisors(n):
        small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
        return sorted(set(small) | {n // d for d in small})
    for p in divisors(a0):
        for q in divisors(an):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if sum(c * r ** k for k, c in enumerate(ints)) == 0:
                    return r
    return None


def _univariate_irreducible(coeffs: Sequence, primes: Sequence[int] = PRIMES) -> IrreducibilityWitness:
    ints = _integer_coeffs(coeffs)
    n = len(ints) - 1
    if n < 1:
        raise DomainError("irreducible needs a nonconstant polynomial")
    if n == 1:
        return IrreducibilityWitness(True, "linear")
    r = _rational_root(ints)
    if r is not None:
        return IrreducibilityWitness(False, "rational root", {"root": str(r)})
    # degree-pattern sieve: the degrees of rational factors are subset sums of
    # every mod-p factorization pattern
    possible = set(range(1, n))
    patterns = []
    for p in primes:
        if ints[-1] % p == 0:
            continue
        fp = gfpoly.reduce(ints, p)
        if gfpoly.degree(fp) != n or not gfpoly.is_squarefree(fp, p):
            continue
        degs = gfpoly.factor_degrees(fp, p)
        patterns.append((p, degs))
        if degs == [n]:
            return IrreducibilityWitness(True, "irreducible mod p", {"prime": p, "pattern": degs})
        sums = {0}
        for d in degs:
            sums |= {s + d for s in sums}
        possible &= sums
        if not possible:
            return IrreducibilityWitness(True, "degree-pattern sieve", {"patterns": patterns})
    return IrreducibilityWitness(None, "inconclusive", {"patterns": patterns})


def _variable_factor(f: MultiPoly):
    ring = f.ring
    for i, n in enumerate(ring.names):
        if all(m[i] for m in f.terms):
            return n
    return None


def _main_variable_candidates(f: MultiPoly) -> list[str]:
    """Variables in which f is visibly primitive.

    A coefficient (in the other variables) that is a nonzero constant forces
    the content to be a unit.  Variables whose leading coefficient is a
    constant come first, since then every substitution preserves the degree.
    """
    ring = f.ring
    first, second = [], []
    for n in sorted(f.support(), key=ring.index):
        i = ring.index(n)
        top = f.degree_in(n)
        by_power: dict[int, list] = {}
        for m in f.terms:
            by_power.setdefault(m[i], []).append(m)
        const_powers = [k for k, ms in by_power.items()
                        if len(ms) == 1 and sum(ms[0]) == ms[0][i]]
        if top in const_powers:
            first.append(n)
        elif const_powers:
            second.append(n)
    return first + second


def irreducible(f: MultiPoly, seed: int = 0, tries: int = 8,
                primes: Sequence[int] = PRIMES) -> IrreducibilityWitness:
    """One-sided irreducibility test over the rationals.

    True comes with a witness (a prime and factor-degree pattern, plus the
    substitution for multivariate input); False comes with a factor.
    """
    if not f or f.is_constant():
        raise DomainError("irreducible needs a nonconstant polynomial")
    used = sorted(f.support(), key=f.ring.index)
    if f.degree() == 1:
        return IrreducibilityWitness(True, "linear")
    v = _variable_factor(f)
    if v is not None:
        return IrreducibilityWitness(False, "monomial factor", {"factor": v})
    if len(used) == 1:
        w = _univariate_irreducible(_univariate_coeffs(f, used[0]), primes)
        w.details.setdefault("variable", used[0])
        return w
    rng = random.Random(seed)
    ring = f.ring
    shear = None
    if not _main_variable_candidates(f):
        f, shear = _shear(f, used, rng)
        if f is None:
            return IrreducibilityWitness(None, "inconclusive", {"reason": "no primitive main variable"})
    for x in _main_variable_candidates(f):
        n = f.degree_in(x)
        others = [u for u in used if u != x]
        uring = Ring((x,))
        for _ in range(tries):
            point = {u: QQ(rng.randint(-20, 20)) for u in others}
            g = f.subs(point, uring)
            if g.degree_in(x) != n:
                continue
            w = _univariate_irreducible(_univariate_coeffs(g, x), primes)
            if w.verdict:
                details = dict(w.details)
                details.update({"variable": x, "substitution": {u: str(c) for u, c in point.items()}})
                if shear is not None:
                    details["shear"] = shear
                return IrreducibilityWitness(True, "specialization: " + w.method, details)
    return IrreducibilityWitness(None, "inconclusive",
                                 {"main_variables": _main_variable_candidates(f)})


def _shear(f: MultiPoly, used: Sequence[str], rng: random.Random, tries: int = 8):
    """Apply u -> u + c_u * x (x the first used variable) until f is monic in x.

    The substitution is a ring automorphism, so irreducibility is unchanged.
    """
    ring = f.ring
    x = used[0]
    n = f.degree()
    for _ in range(tries):
        shift = {u: rng.randint(1, 9) for u in used[1:]}
        g = f.subs({u: ring.var(u) + ring.var(x) * c for u, c in shift.items()}, ring)
        if g.degree_in(x) == n:
            return g, {"variable": x, "shift": {u: str(c) for u, c in shift.items()}}
    return None, None


# -- certificate -------------------------------------------------------------

@dataclass
class PrimeCertificate:
    verdict: str  # certified_prime, inconclusive or failed
    degree_l: int | None = None
    noether_vars: list = field(default_factory=list)
    keep_vars: list = field(default_factory=list)
    hypersurface: MultiPoly | None = None
    irreducibility_witness: IrreducibilityWitness | None = None
    multiplicity: int | None = None
    conditional: bool = False
    stage: str | None = None
    notes: list = field(default_factory=list)

    def noether_description(self) -> str:
        return "k[" + ",".join(_describe_form(f) for f in self.noether_vars) + "]"

    def to_dict(self) -> dict:
        w = self.irreducibility_witness
        return {
            "verdict": self.verdict,
            "degree_l": self.degree_l,
            "noether": self.noether_description() if self.noether_vars or self.degree_l else None,
            "keep_vars": list(self.keep_vars),
            "hypersurface": str(self.hypersurface) if self.hypersurface is not None else None,
            "hypersurface_degree": self.hypersurface.degree() if self.hypersurface is not None else None,
            "witness": None if w is None else {"verdict": w.verdict, "method": w.method,
                                                "details": _jsonable(w.details)},
            "multiplicity": self.multiplicity,
            "conditional": self.conditional,
            "stage": self.stage,
            "notes": list(self.notes),
        }


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


def prime_certificate(J_affine, t: str = "t", seed: int = 0,
                      limits: Limits | None = None) -> PrimeCertificate:
    gens = _gens(J_affine)
    if not gens:
        return PrimeCertificate("failed", stage="input", notes=["zero ideal is prime but has no hypersurface"])
    Jh = homogenize_t(gens, t)
    ring = Jh.ring
    Gh = buchberger(Jh.gens, ring.order, limits)
    if Gh.is_unit():
        return PrimeCertificate("failed", stage="homogenize", notes=["unit ideal"])
    series = hilbert_series_monomial(initial_ideal(Gh))
    dim = series.dimension()
    e = series.degree()
    cert = PrimeCertificate("inconclusive", multiplicity=e)
    base = [n for n in ring.names if n != t]
    # keep sets of size dim+1; subsets avoiding t first
    keep_sets = [list(c) for c in combinations(base, dim + 1)]
    keep_sets += [list(c) for c in combinations(ring.names, dim + 1) if t in c]
    chosen = None
    for keep in keep_sets:
        found = noether_normalize_search(Gh.gens, within=keep, limits=limits)
        if found:
            chosen = (keep, found[0])
            break
    if chosen is None:
        cert.stage = "noether"
        cert.notes.append("no normalization by variables or pairwise sums")
        return cert
    keep, z = chosen
    cert.keep_vars, cert.noether_vars = keep, z
    l = artinian_degree(Gh.gens, [_form_poly(ring, f) for f in z], limits)
    cert.degree_l = l
    if l != e:
        cert.conditional = True
        cert.notes.append(f"dim_k S/(J,z) = {l} exceeds multiplicity {e}: quotient is not Cohen-Macaulay")
    f = eliminate_to_hypersurface(Gh.gens, keep, limits)
    cert.hypersurface = f
    if f.degree() != l:
        cert.verdict, cert.stage = "failed", "degree"
        cert.notes.append(f"hypersurface degree {f.degree()} differs from l = {l}")
        return cert
    w = irreducible(f, seed=seed)
    cert.irreducibility_witness = w
    if w.verdict is False:
        cert.verdict, cert.stage = "failed", "irreducible"
        return cert
    if w.verdict is None:
        cert.stage = "irreducible"
        return cert
    if cert.conditional:
        cert.stage = "cohen-macaulay"
        return cert
    cert.verdict = "certified_prime"
    return cert


def zero_divisor_probe(J, max_degree: int, limits: Limits | None = None):
    """Look for standard monomials u, v with u*v in J and deg u + deg v < max_degree.

    Returns the first such pair or None.  This can only refute primality.
    """
    G = buchberger(_gens(J), None, limits)
    if G.is_unit():
        return None
    ring = G.ring
    M = initial_ideal(G)
    std = []
    from .monomial import standard_monomials
    for d in range(1, max_degree):
        std.extend(standard_monomials(M, d))
    polys = [MultiPoly(ring, {m: QQ(1)}, _clean=True) for m in std]
    for a in range(len(polys)):
        for b in range(a, len(polys)):
            if ring.degree(std[a]) + ring.degree(std[b]) >= max_degree:
                continue
            if not normal_form(polys[a] * polys[b], G):
                return (str(polys[a]), str(polys[b]))
    return None
