"""Variable registries, monomial orders and sparse polynomials over QQ.

Monomials are plain exponent tuples aligned with a :class:`Ring`'s variable
list.  Orders are declarative (:class:`OrderSpec`) and are compiled against a
ring into a sort-key function; comparing keys with ``<`` compares monomials.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

from .errors import DomainError, ParseError, RegistryMismatchError

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    from fractions import Fraction as QQ

Mono = tuple

__all__ = [
    "QQ", "Ring", "OrderSpec", "MultiPoly", "Term",
    "lex", "grlex", "grevlex", "wgrevlex", "product_order", "elimination",
    "inverse_block", "cmp_monomials", "leading_term", "leading_monomial",
    "deg_x", "mono_mul", "mono_div", "mono_divides", "mono_lcm",
    "parse_poly", "format_monomial",
]


def to_qq(value):
    if isinstance(value, str):
        return QQ(value.strip())
    return QQ(value)


# -- monomial helpers -------------------------------------------------------

def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple([x + y for x, y in zip(a, b)])


def mono_div(a: Mono, b: Mono) -> Mono:
    """Return a/b; the caller guarantees b divides a."""
    return tuple([x - y for x, y in zip(a, b)])


def mono_divides(b: Mono, a: Mono) -> bool:
    """True when b divides a."""
    for x, y in zip(b, a):
        if x > y:
            return False
    return True


def mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple([x if x > y else y for x, y in zip(a, b)])


def mono_gcd(a: Mono, b: Mono) -> Mono:
    return tuple([x if x < y else y for x, y in zip(a, b)])


def format_monomial(names: Sequence[str], m: Mono) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


# -- orders -----------------------------------------------------------------

_LEAF_KINDS = ("lex", "grlex", "grevlex", "wgrevlex")


@dataclass(frozen=True)
class OrderSpec:
    """Declarative monomial order.

    Leaf kinds act on ``variables`` (``None`` means "whatever is left" once
    bound to a ring).  A ``product`` order compares its parts in sequence; the
    inverse block order and elimination orders are products.
    """

    kind: str
    variables: tuple[str, ...] | None = None
    parts: tuple["OrderSpec", ...] = ()
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.kind not in _LEAF_KINDS + ("product",):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "product" and not self.parts:
            raise ValueError("product order needs parts")

    def bind(self, names: Sequence[str]) -> "OrderSpec":
        """Fill in ``None`` variable sets against a full variable list."""
        names = tuple(names)
        if self.kind != "product":
            return OrderSpec(self.kind, self.variables if self.variables is not None else names,
                             label=self.label)
        taken = set()
        for p in self.parts:
            taken.update(_all_vars(p))
        rest = tuple(n for n in names if n not in taken)
        bound = []
        for p in self.parts:
            if _all_vars(p) or p.kind == "product":
                bound.append(p.bind(tuple(n for n in names if n in _all_vars(p)) or rest))
            else:
                bound.append(p.bind(rest))
                rest = ()
        return OrderSpec("product", parts=tuple(bound), label=self.label)

    def describe(self) -> str:
        if self.label:
            return self.label
        if self.kind == "product":
            return "product(" + ", ".join(p.describe() for p in self.parts) + ")"
        vs = "" if self.variables is None else "[" + " ".join(self.variables) + "]"
        return self.kind + vs


def _all_vars(o: OrderSpec) -> set:
    if o.kind == "product":
        out = set()
        for p in o.parts:
            out |= _all_vars(p)
        return out
    return set(o.variables or ())


def lex(variables=None) -> OrderSpec:
    return OrderSpec("lex", _opt_tuple(variables))


def grlex(variables=None) -> OrderSpec:
    return OrderSpec("grlex", _opt_tuple(variables))


def grevlex(variables=None) -> OrderSpec:
    return OrderSpec("grevlex", _opt_tuple(variables))


def wgrevlex(variables=None) -> OrderSpec:
    return OrderSpec("wgrevlex", _opt_tuple(variables))


def product_order(*parts: OrderSpec, label: str = "") -> OrderSpec:
    return OrderSpec("product", parts=tuple(parts), label=label)


def elimination(block: Iterable[str], rest: OrderSpec | None = None) -> OrderSpec:
    """Block order eliminating ``block``: its variables dominate everything else."""
    block = tuple(block)
    return product_order(grevlex(block), rest or grevlex(), label=f"elim[{' '.join(block)}]")


def inverse_block(base: OrderSpec, tie: OrderSpec) -> OrderSpec:
    """Compare base-block parts first; extension parts only break ties."""
    return product_order(base, tie, label="")


def _opt_tuple(v):
    return None if v is None else tuple(v)


def _leaf_key(kind: str, idx: tuple[int, ...], weights: tuple[int, ...], n: int):
    full = idx == tuple(range(n))
    ridx = tuple(reversed(idx))
    if kind == "lex":
        if full:
            return lambda e: e
        return lambda e: tuple([e[i] for i in idx])
    if kind == "grlex":
        return lambda e: (sum([e[i] for i in idx]),) + tuple([e[i] for i in idx])
    w = {i: weights[i] for i in idx}
    unit = all(w[i] == 1 for i in idx)
    if kind == "grevlex" or unit:
        if full:
            return lambda e: (sum(e),) + tuple([-x for x in reversed(e)])
        return lambda e: (sum([e[i] for i in idx]),) + tuple([-e[i] for i in ridx])
    # weighted graded reverse lex
    return lambda e: (sum([w[i] * e[i] for i in idx]),) + tuple([-e[i] for i in ridx])


@lru_cache(maxsize=256)
def _compile(order: OrderSpec, names: tuple, weights: tuple) -> Callable[[Mono], tuple]:
    pos = {n: i for i, n in enumerate(names)}
    if order.kind != "product":
        vs = order.variables if order.variables is not None else names
        return _leaf_key(order.kind, tuple(pos[v] for v in vs), weights, len(names))
    keys = [_compile(p, names, weights) for p in order.parts]
    if len(keys) == 2:
        k0, k1 = keys
        return lambda e: k0(e) + k1(e)

    def key(e):
        out = ()
        for k in keys:
            out += k(e)
        return out
    return key


def _check_covers(order: OrderSpec, names: tuple):
    if order.kind != "product":
        vs = order.variables if order.variables is not None else names
        if set(vs) != set(names):
            raise RegistryMismatchError(f"order {order.describe()} does not cover the registry")
        return
    seen = []
    for p in order.parts:
        seen.extend(_leaf_vars(p))
    if sorted(seen) != sorted(names):
        raise RegistryMismatchError(f"order {order.describe()} is not a partition of the registry")


def _leaf_vars(o: OrderSpec):
    if o.kind == "product":
        out = []
        for p in o.parts:
            out.extend(_leaf_vars(p))
        return out
    return list(o.variables or ())


# -- registry ---------------------------------------------------------------

class Ring:
    """Ordered variable registry with weights, named blocks and a default order.

    Two rings are the *same registry* when names, weights and blocks agree; the
    default order is only used for display and as the default for computations.
    """

    __slots__ = ("names", "weights", "blocks", "order", "_pos", "_key", "_hash", "_unit")

    def __init__(self, names, weights=None, blocks=None, order: OrderSpec | None = None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for n in names:
            if not _IDENT_RE.fullmatch(n):
                raise ValueError(f"bad variable name {n!r}")
        weights = tuple(int(w) for w in (weights if weights is not None else [1] * len(names)))
        if len(weights) != len(names) or any(w < 1 for w in weights):
            raise ValueError("weights must be positive, one per variable")
        if blocks is None:
            blocks = (("x", names),)
        blocks = tuple((str(b), tuple(vs)) for b, vs in blocks)
        flat = [v for _, vs in blocks for v in vs]
        if sorted(flat) != sorted(names):
            raise ValueError("blocks must partition the variables")
        self.names = names
        self.weights = weights
        self.blocks = blocks
        self._pos = {n: i for i, n in enumerate(names)}
        self._unit = all(w == 1 for w in weights)
        if order is None:
            order = _default_order(blocks, weights, self._pos)
        order = order.bind(names)
        _check_covers(order, names)
        self.order = order
        self._key = _compile(order, names, weights)
        self._hash = hash((names, weights, blocks))

    # identity is the registry, not the order
    def __eq__(self, other):
        return (isinstance(other, Ring) and self.names == other.names
                and self.weights == other.weights and self.blocks == other.blocks)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Ring({' '.join(self.names)}; order={self.order.describe()})"

    def __len__(self):
        return len(self.names)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._pos[name]
        except KeyError:
            raise DomainError(f"unknown variable {name!r}") from None

    def weight_of(self, name: str) -> int:
        return self.weights[self.index(name)]

    def block_vars(self, block: str) -> tuple[str, ...]:
        for b, vs in self.blocks:
            if b == block:
                return vs
        raise DomainError(f"no block named {block!r}")

    @property
    def base_vars(self) -> tuple[str, ...]:
        return self.blocks[0][1]

    def key(self, order: OrderSpec | None = None) -> Callable[[Mono], tuple]:
        if order is None or order == self.order:
            return self._key
        order = order.bind(self.names)
        _check_covers(order, self.names)
        return _compile(order, self.names, self.weights)

    def with_order(self, order: OrderSpec) -> "Ring":
        return Ring(self.names, self.weights, self.blocks, order)

    def extend(self, names, weights=None, block: str = "ext", order: OrderSpec | None = None) -> "Ring":
        """Append a new block; by default the old order becomes the base of an
        inverse block order with weighted grevlex on the new variables."""
        names = tuple(names)
        weights = list(weights) if weights is not None else [1] * len(names)
        if order is None:
            order = inverse_block(self.order, wgrevlex(names))
        return Ring(self.names + names, self.weights + tuple(weights),
                    self.blocks + ((block, names),), order)

    def subring(self, names: Iterable[str], order: OrderSpec | None = None) -> "Ring":
        """Ring on a subset of the variables, keeping weights and block tags."""
        keep = [n for n in self.names if n in set(names)]
        blocks = tuple((b, tuple(v for v in vs if v in keep)) for b, vs in self.blocks)
        blocks = tuple(b for b in blocks if b[1])
        if order is None:
            order = _restrict_order(self.order, set(keep))
        return Ring(keep, [self.weight_of(n) for n in keep], blocks, order)

    def degree(self, m: Mono) -> int:
        if self._unit:
            return sum(m)
        return sum([w * e for w, e in zip(self.weights, m)])

    def one(self) -> "MultiPoly":
        return MultiPoly(self, {(0,) * len(self.names): QQ(1)})

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def var(self, name: str) -> "MultiPoly":
        e = [0] * len(self.names)
        e[self.index(name)] = 1
        return MultiPoly(self, {tuple(e): QQ(1)})

    def gens(self):
        return [self.var(n) for n in self.names]

    def monomial(self, exps: Mapping[str, int] | Mono) -> Mono:
        if isinstance(exps, tuple):
            if len(exps) != len(self.names):
                raise RegistryMismatchError("monomial length does not match registry")
            return exps
        e = [0] * len(self.names)
        for n, k in exps.items():
            e[self.index(n)] = int(k)
        return tuple(e)

    def poly(self, text: str) -> "MultiPoly":
        return parse_poly(text, self)

    def const(self, c) -> "MultiPoly":
        c = to_qq(c)
        return MultiPoly(self, {(0,) * len(self.names): c} if c else {})

    def format_mono(self, m: Mono) -> str:
        return format_monomial(self.names, m)


def _default_order(blocks, weights, pos) -> OrderSpec:
    parts = []
    for i, (_, vs) in enumerate(blocks):
        unit = all(weights[pos[v]] == 1 for v in vs)
        parts.append(grevlex(vs) if (i == 0 and unit) else wgrevlex(vs))
    if len(parts) == 1:
        return parts[0]
    order = parts[0]
    for p in parts[1:]:
        order = inverse_block(order, p)
    return order


def _restrict_order(order: OrderSpec, keep: set) -> OrderSpec:
    if order.kind != "product":
        return OrderSpec(order.kind, tuple(v for v in order.variables if v in keep))
    parts = [_restrict_order(p, keep) for p in order.parts]
    parts = [p for p in parts if _leaf_vars(p)]
    if len(parts) == 1:
        return parts[0]
    return OrderSpec("product", parts=tuple(parts))


# -- polynomials ------------------------------------------------------------

class Term(NamedTuple):
    coeff: object
    mono: Mono


class MultiPoly:
    """Immutable sparse polynomial: a dict from exponent tuples to rationals."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Mono, object] | None = None, _clean=False):
        self.ring = ring
        if terms is None:
            terms = {}
        elif not _clean:
            terms = {m: to_qq(c) for m, c in terms.items() if c}
        self.terms = terms
        self._hash = None

    # construction shortcuts
    @classmethod
    def monomial(cls, ring: Ring, m: Mono, coeff=1) -> "MultiPoly":
        return cls(ring, {m: coeff})

    def _check(self, other: "MultiPoly"):
        if self.ring is not other.ring and self.ring != other.ring:
            raise RegistryMismatchError(f"{self.ring!r} vs {other.ring!r}")

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return self.ring.const(other)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, QQ)) or hasattr(other, "numerator"):
            return self.terms == ({(0,) * len(self.ring.names): QQ(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __neg__(self):
        return MultiPoly(self.ring, {m: -c for m, c in self.terms.items()}, _clean=True)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return MultiPoly(self.ring, out, _clean=True)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = to_qq(other)
            if not c:
                return self.ring.zero()
            return MultiPoly(self.ring, {m: c * v for m, v in self.terms.items()}, _clean=True)
        self._check(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple([x + y for x, y in zip(m1, m2)])
                v = out.get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly(self.ring, {m: c for m, c in out.items() if c}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "MultiPoly":
        return self * c

    def mul_term(self, coeff, m: Mono) -> "MultiPoly":
        c = to_qq(coeff)
        if not c:
            return self.ring.zero()
        return MultiPoly(self.ring, {mono_mul(k, m): c * v for k, v in self.terms.items()}, _clean=True)

    # order-dependent views
    def sorted_terms(self, order: OrderSpec | None = None) -> list[Term]:
        key = self.ring.key(order)
        return [Term(self.terms[m], m) for m in sorted(self.terms, key=key, reverse=True)]

    def leading_term(self, order: OrderSpec | None = None) -> Term:
        if not self.terms:
            raise DomainError("zero polynomial has no leading term")
        key = self.ring.key(order)
        m = max(self.terms, key=key)
        return Term(self.terms[m], m)

    def leading_monomial(self, order: OrderSpec | None = None) -> Mono:
        return self.leading_term(order).mono

    def leading_coefficient(self, order: OrderSpec | None = None):
        return self.leading_term(order).coeff

    def monic(self, order: OrderSpec | None = None) -> "MultiPoly":
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    # structure
    def degree(self) -> int:
        """Weighted total degree (``-1`` for zero)."""
        if not self.terms:
            return -1
        return max(self.ring.degree(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({self.ring.degree(m) for m in self.terms}) <= 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def support(self) -> set[str]:
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(self.ring.names[i])
        return used

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((m[i] for m in self.terms), default=-1)

    def coefficient_of(self, m: Mono):
        return self.terms.get(m, QQ(0))

    def embed(self, ring: Ring) -> "MultiPoly":
        """Same polynomial in a ring whose variables include ours."""
        if ring == self.ring:
            return MultiPoly(ring, self.terms, _clean=True)
        idx = [ring.index(n) for n in self.ring.names]
        n = len(ring.names)
        out = {}
        for m, c in self.terms.items():
            e = [0] * n
            for i, k in zip(idx, m):
                e[i] = k
            out[tuple(e)] = c
        return MultiPoly(ring, out, _clean=True)

    def restrict(self, ring: Ring) -> "MultiPoly":
        """Map into a ring on a subset of variables; fails if a dropped variable occurs."""
        pos = [self.ring.index(n) for n in ring.names]
        kept = set(pos)
        out = {}
        for m, c in self.terms.items():
            if any(e for i, e in enumerate(m) if i not in kept):
                raise DomainError("polynomial uses variables outside the target ring")
            out[tuple(m[i] for i in pos)] = c
        return MultiPoly(ring, out, _clean=True)

    def subs(self, values: Mapping[str, object], ring: Ring | None = None) -> "MultiPoly":
        """Substitute constants or polynomials for variables.

        Polynomial values must live in ``ring`` (defaults to ``self.ring``); the
        result lives in ``ring``.
        """
        target = ring or self.ring
        idx = {self.ring.index(n): v for n, v in values.items()}
        keep = [(i, target.index(n)) for i, n in enumerate(self.ring.names)
                if i not in idx and n in target._pos]
        for i, n in enumerate(self.ring.names):
            if i not in idx and n not in target._pos:
                raise DomainError(f"variable {n} has no image in the target ring")
        nt = len(target.names)
        result: dict = {}
        poly_vals = {i: v for i, v in idx.items() if isinstance(v, MultiPoly)}
        const_vals = {i: to_qq(v) for i, v in idx.items() if not isinstance(v, MultiPoly)}
        acc = target.zero()
        for m, c in self.terms.items():
            coeff = c
            for i, v in const_vals.items():
                if m[i]:
                    coeff = coeff * v ** m[i]
            if not coeff:
                continue
            e = [0] * nt
            for i, j in keep:
                e[j] = m[i]
            if poly_vals:
                t = MultiPoly(target, {tuple(e): coeff}, _clean=True)
                for i, v in poly_vals.items():
                    if m[i]:
                        t = t * v.embed(target) ** m[i] if v.ring != target else t * v ** m[i]
                acc = acc + t
            else:
                key = tuple(e)
                result[key] = result.get(key, 0) + coeff
        if poly_vals:
            return acc
        return MultiPoly(target, {m: c for m, c in result.items() if c}, _clean=True)

    def map_coefficients(self, fn) -> "MultiPoly":
        return MultiPoly(self.ring, {m: fn(c) for m, c in self.terms.items()})

    def to_string(self, order: OrderSpec | None = None) -> str:
        if not self.terms:
            return "0"
        names = self.ring.names
        out = []
        for c, m in self.sorted_terms(order):
            if not any(m):
                s = str(c)
            elif c == 1:
                s = format_monomial(names, m)
            elif c == -1:
                s = "-" + format_monomial(names, m)
            else:
                s = f"{c}*{format_monomial(names, m)}"
            if out:
                out.append(" - " + s[1:] if s.startswith("-") else " + " + s)
            else:
                out.append(s)
        return "".join(out)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"MultiPoly({self.to_string()})"


def leading_term(f: MultiPoly, order: OrderSpec | None = None) -> Term:
    return f.leading_term(order)


def leading_monomial(f: MultiPoly, order: OrderSpec | None = None) -> Mono:
    return f.leading_monomial(order)


def cmp_monomials(order: OrderSpec, a, b, ring: Ring | None = None) -> int:
    """Three-way comparison: -1, 0 or 1.

    ``a`` and ``b`` are monomial polynomials or exponent tuples (then ``ring``
    is required).
    """
    if isinstance(a, MultiPoly) or isinstance(b, MultiPoly):
        if not (isinstance(a, MultiPoly) and isinstance(b, MultiPoly)):
            raise RegistryMismatchError("cannot compare a polynomial with a bare exponent tuple")
        a._check(b)
        if ring is not None and ring != a.ring:
            raise RegistryMismatchError("monomials are not over the given registry")
        ring = a.ring
        if not (a.is_monomial() and b.is_monomial()):
            raise DomainError("cmp_monomials expects monomials")
        a = next(iter(a.terms))
        b = next(iter(b.terms))
    if ring is None:
        raise RegistryMismatchError("a registry is needed to compare exponent tuples")
    if len(a) != len(ring.names) or len(b) != len(ring.names):
        raise RegistryMismatchError("monomial length does not match registry")
    key = ring.key(order)
    ka, kb = key(a), key(b)
    return (ka > kb) - (ka < kb)


def deg_x(m, ring: Ring | None = None) -> int:
    """Weighted degree of the base-block part of a monomial."""
    if isinstance(m, MultiPoly):
        ring = m.ring
        m = m.leading_monomial() if m.is_monomial() else max(m.terms, key=lambda t: deg_x(t, ring))
    base = set(ring.base_vars)
    return sum(w * e for n, w, e in zip(ring.names, ring.weights, m) if n in base)


def split_base(m: Mono, ring: Ring) -> tuple[Mono, Mono]:
    """(base part, extension part) of a monomial, each as a full-length tuple."""
    base = [n in set(ring.base_vars) for n in ring.names]
    return (tuple(e if b else 0 for e, b in zip(m, base)),
            tuple(0 if b else e for e, b in zip(m, base)))


# -- parsing ----------------------------------------------------------------

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_#]*")
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<id>[A-Za-z_][A-Za-z0-9_#]*)|(?P<op>\*\*|[-+*^()]))")


class _Parser:
    def __init__(self, text: str, ring: Ring, line: int, col: int):
        self.text = text
        self.ring = ring
        self.line = line
        self.col0 = col
        self.toks = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            mt = _TOKEN_RE.match(text, pos)
            if not mt or mt.end() == pos:
                self.fail("unexpected character", pos + len(text[pos:]) - len(text[pos:].lstrip()))
            kind = mt.lastgroup
            start = mt.start(kind)
            self.toks.append((kind, mt.group(kind), start))
            pos = mt.end()
        self.i = 0

    def fail(self, msg, pos):
        raise ParseError(msg, self.line, self.col0 + pos + 1)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> MultiPoly:
        if not self.toks:
            self.fail("empty polynomial", 0)
        p = self.expr()
        kind, val, pos = self.peek()
        if kind is not None:
            self.fail(f"unexpected {val!r}", pos)
        return p

    def expr(self) -> MultiPoly:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term() * sign
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> MultiPoly:
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            elif kind in ("num", "id") or (kind == "op" and val == "("):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> MultiPoly:
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val in ("^", "**"):
            self.take()
            kind, val, pos = self.take()
            if kind != "num" or "/" in val:
                self.fail("exponent must be a nonnegative integer", pos)
            base = base ** int(val)
        return base

    def atom(self) -> MultiPoly:
        kind, val, pos = self.take()
        if kind == "num":
            return self.ring.const(QQ(val))
        if kind == "id":
            if val not in self.ring._pos:
                self.fail(f"unknown variable {val!r}", pos)
            return self.ring.var(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            k2, v2, p2 = self.take()
            if v2 != ")":
                self.fail("expected ')'", p2)
            return inner
        if kind == "op" and val == "-":
            return -self.factor()
        self.fail("expected a number, variable or '('" if kind else "unexpected end of input", pos)


def parse_poly(text: str, ring: Ring, line: int = 1, column: int = 0) -> MultiPoly:
    """Parse ``text`` such as ``-9/5*Y11*Z12 + a^2 c``.

    ``*`` is optional between factors; ``^`` (or ``**``) takes an integer.
    ``line`` and ``column`` offset error positions when the text came from a file.
    """
    return _Parser(text, ring, line, column).parse()
