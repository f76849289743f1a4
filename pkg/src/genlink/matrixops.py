"""Polynomial matrices, determinants, maximal minors and column homogenization."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .core import MultiPoly, QQ, Ring
from .errors import DomainError, InvariantViolation, RegistryMismatchError

COFACTOR_LIMIT = 6


class PolyMatrix:
    """Rectangular matrix of polynomials with optional column degrees e_j."""

    __slots__ = ("ring", "rows", "column_degrees")

    def __init__(self, ring: Ring, rows: Sequence[Sequence], column_degrees=None, check=True):
        self.ring = ring
        conv = []
        for r in rows:
            conv.append(tuple(_entry(x, ring) for x in r))
        if conv and len({len(r) for r in conv}) != 1:
            raise DomainError("ragged matrix")
        self.rows = tuple(conv)
        if column_degrees is not None:
            column_degrees = tuple(int(e) for e in column_degrees)
            if len(column_degrees) != self.ncols:
                raise DomainError("one column degree per column")
            if check:
                for j, e in enumerate(column_degrees):
                    for i in range(self.nrows):
                        f = self.rows[i][j]
                        if f and not (f.is_homogeneous() and f.degree() == e):
                            raise DomainError(f"entry ({i + 1},{j + 1}) is not homogeneous of degree {e}")
        self.column_degrees = column_degrees

    @classmethod
    def parse(cls, ring: Ring, rows: Sequence[Sequence[str]], column_degrees=None) -> "PolyMatrix":
        return cls(ring, [[ring.poly(s) for s in r] for r in rows], column_degrees)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def column(self, j: int) -> list[MultiPoly]:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list[MultiPoly]]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, [self.column(j) for j in range(self.ncols)])

    def delete_row(self, i: int) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.rows[:i] + self.rows[i + 1:], check=False)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows], check=False)

    def embed(self, ring: Ring) -> "PolyMatrix":
        return PolyMatrix(ring, [[x.embed(ring) for x in r] for r in self.rows],
                          self.column_degrees, check=False)

    def scale_column(self, j: int, c) -> "PolyMatrix":
        rows = [list(r) for r in self.rows]
        for r in rows:
            r[j] = r[j] * c
        return PolyMatrix(self.ring, rows, self.column_degrees, check=False)

    def infer_column_degrees(self):
        """Column degrees when every column is homogeneous, else ``None``."""
        out = []
        for col in self.columns():
            degs = {f.degree() for f in col if f}
            if len(degs) != 1 or not all(f.is_homogeneous() for f in col if f):
                return None
            out.append(degs.pop())
        return tuple(out)

    def with_column_degrees(self, degrees=None) -> "PolyMatrix":
        degrees = degrees if degrees is not None else self.infer_column_degrees()
        if degrees is None:
            raise DomainError("matrix columns are not homogeneous")
        return PolyMatrix(self.ring, self.rows, degrees)

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    def __str__(self):
        cells = self.to_strings()
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in r) + " ]" for r in cells)

    __repr__ = __str__


def _entry(x, ring: Ring) -> MultiPoly:
    if isinstance(x, MultiPoly):
        if x.ring != ring:
            raise RegistryMismatchError("matrix entry over a different registry")
        return x
    if isinstance(x, str):
        return ring.poly(x)
    return ring.const(x)


def hstack(*ms: PolyMatrix) -> PolyMatrix:
    ring = ms[0].ring
    return PolyMatrix(ring, [sum((m.rows[i] for m in ms), ()) for i in range(ms[0].nrows)], check=False)


def vstack(*ms: PolyMatrix) -> PolyMatrix:
    return PolyMatrix(ms[0].ring, sum((m.rows for m in ms), ()), check=False)


# -- determinants ------------------------------------------------------------

def determinant(M: PolyMatrix, method: str = "auto") -> MultiPoly:
    n = M.nrows
    if n != M.ncols:
        raise DomainError(f"determinant of a non-square {M.nrows}x{M.ncols} matrix")
    if n == 0:
        return M.ring.one()
    if method == "cofactor" or (method == "auto" and n <= COFACTOR_LIMIT):
        return _det_cofactor(M)
    if method in ("bareiss", "auto"):
        return _det_bareiss(M)
    raise ValueError(f"unknown determinant method {method!r}")


def _det_cofactor(M: PolyMatrix) -> MultiPoly:
    rows = M.rows
    n = len(rows)
    zero = M.ring.zero()

    @lru_cache(maxsize=None)
    def sub(k: int, cols: tuple) -> MultiPoly:
        # determinant of rows k.. restricted to ``cols`` (ascending)
        if k == n:
            return M.ring.one()
        acc = zero
        for pos, j in enumerate(cols):
            a = rows[k][j]
            if not a:
                continue
            minor = sub(k + 1, cols[:pos] + cols[pos + 1:])
            if not minor:
                continue
            term = a * minor
            acc = acc - term if pos % 2 else acc + term
        return acc

    return sub(0, tuple(range(n)))


def _det_bareiss(M: PolyMatrix) -> MultiPoly:
    from .groebner import exact_quotient
    a = [list(r) for r in M.rows]
    n = len(a)
    sign = 1
    prev = M.ring.one()
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return M.ring.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = exact_quotient(num, prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


# -- minors ----------------------------------------------------------------

@dataclass(frozen=True)
class MinorSet:
    """Maximal minors delta_i = det(M without row i), i = 1..rows.

    ``signs[i]`` is (-1)^(i+1) for the 0-based index i, i.e. (-1)^i in the
    1-based numbering; ``signed`` applies them.
    """

    minors: tuple
    signs: tuple
    matrix: PolyMatrix

    def __len__(self):
        return len(self.minors)

    def __getitem__(self, i):
        return self.minors[i]

    @property
    def signed(self) -> tuple:
        return tuple(m * s for m, s in zip(self.minors, self.signs))

    def check_laplace(self) -> bool:
        """sum_i (-1)^i delta_i M[i][j] = 0 for every column j."""
        M = self.matrix
        for j in range(M.ncols):
            acc = M.ring.zero()
            for i, d in enumerate(self.signed):
                acc = acc + d * M.rows[i][j]
            if acc:
                return False
        return True


def signed_maximal_minors(M: PolyMatrix) -> MinorSet:
    if M.ncols != M.nrows - 1:
        raise DomainError(f"maximal minors need an (n+1)xn matrix, got {M.nrows}x{M.ncols}")
    minors = tuple(determinant(M.delete_row(i)) for i in range(M.nrows))
    signs = tuple(-1 if i % 2 == 0 else 1 for i in range(M.nrows))
    return MinorSet(minors, signs, M)


def minors_ideal_polys(M: PolyMatrix, k: int) -> list[MultiPoly]:
    """All nonzero k x k minors (k = 0 gives the unit ideal)."""
    if k <= 0:
        return [M.ring.one()]
    if k > min(M.nrows, M.ncols):
        return []
    out = []
    for rs in combinations(range(M.nrows), k):
        for cs in combinations(range(M.ncols), k):
            d = determinant(M.submatrix(rs, cs))
            if d:
                out.append(d)
    return out


# -- simple determinants ----------------------------------------------------

def check_two_monomials_per_column(M: PolyMatrix):
    for j, col in enumerate(M.columns()):
        nz = [f for f in col if f]
        for f in nz:
            if not f.is_monomial():
                raise DomainError(f"column {j + 1}: entry {f} is not a monomial")
        if len(nz) != 2:
            raise DomainError(f"column {j + 1} has {len(nz)} nonzero entries, expected 2")


def _perm_terms(pattern: list[list[bool]], rows: tuple, cols: tuple, limit: int = 2) -> int:
    """Number of nonzero permutation terms (stops counting at ``limit``)."""
    if not rows:
        return 1
    r = rows[0]
    total = 0
    for pos, c in enumerate(cols):
        if pattern[r][c]:
            total += _perm_terms(pattern, rows[1:], cols[:pos] + cols[pos + 1:], limit - total)
            if total >= limit:
                return total
    return total


def _is_simple(pattern, rows: tuple, cols: tuple) -> bool:
    # peel rows with a single nonzero entry; zero rows make the minor zero
    while rows:
        for r in rows:
            nz = [c for c in cols if pattern[r][c]]
            if len(nz) <= 1:
                break
        else:
            return _perm_terms(pattern, rows, cols) <= 1
        if not nz:
            return True
        rows = tuple(x for x in rows if x != r)
        cols = tuple(x for x in cols if x != nz[0])
    return True


def is_simple_matrix(M: PolyMatrix) -> bool:
    """Every square minor of every size has at most one nonzero permutation term."""
    if M.ncols != M.nrows - 1:
        raise DomainError("is_simple_matrix expects an m x (m-1) matrix")
    check_two_monomials_per_column(M)
    for i, d in enumerate(signed_maximal_minors(M).minors):
        if not d:
            raise DomainError(f"maximal minor {i + 1} vanishes")
    pattern = [[bool(x) for x in r] for r in M.rows]
    for k in range(1, M.ncols + 1):
        for rs in combinations(range(M.nrows), k):
            for cs in combinations(range(M.ncols), k):
                if not _is_simple(pattern, rs, cs):
                    return False
    return True


# -- column homogenization ---------------------------------------------------

def homogenize_columns(phi: PolyMatrix, verify: bool = True) -> PolyMatrix:
    """h(phi): multiply the lower-degree entry of each column by a power of its
    first variable (registry order) until both entries have the same degree."""
    check_two_monomials_per_column(phi)
    ring = phi.ring
    rows = [list(r) for r in phi.rows]
    degrees = []
    for j in range(phi.ncols):
        idx = [i for i in range(phi.nrows) if rows[i][j]]
        lo, hi = sorted(idx, key=lambda i: rows[i][j].degree())
        dlo, dhi = rows[lo][j].degree(), rows[hi][j].degree()
        if dlo < dhi:
            f = rows[lo][j]
            m = next(iter(f.terms))
            first = next((k for k, e in enumerate(m) if e), None)
            if first is None:
                raise DomainError(f"column {j + 1}: constant entry cannot be raised")
            w = ring.weights[first]
            if (dhi - dlo) % w:
                raise DomainError(f"column {j + 1}: degree gap {dhi - dlo} not a multiple of weight {w}")
            rows[lo][j] = f * ring.var(ring.names[first]) ** ((dhi - dlo) // w)
        degrees.append(dhi)
    out = PolyMatrix(ring, rows, degrees)
    if verify:
        report = radical_identity(phi, out)
        if not all(v["radicals_equal"] for v in report.values()):
            raise InvariantViolation(f"radical identity failed for h(phi): {report}")
    return out


def radical_identity(phi: PolyMatrix, hphi: PolyMatrix) -> dict:
    """For n = m-1 and m-2: compare radicals of I_n(h(phi)) and I_n(phi), and
    record whether I_n(phi) is itself radical."""
    from .monomial import MonomialIdeal, radical
    m = phi.nrows
    out = {}
    for n in (m - 1, m - 2):
        if n < 1:
            continue
        a = MonomialIdeal(phi.ring, _as_monomials(minors_ideal_polys(phi, n)))
        b = MonomialIdeal(phi.ring, _as_monomials(minors_ideal_polys(hphi, n)))
        out[n] = {"radicals_equal": radical(a) == radical(b),
                  "phi_minors_radical": radical(a) == a,
                  "phi_minors": a.to_strings(),
                  "h_minors": b.to_strings()}
    return out


def _as_monomials(polys):
    out = []
    for p in polys:
        if not p.is_monomial():
            raise InvariantViolation(f"minor {p} of a two-per-column monomial matrix is not a monomial")
        out.append(next(iter(p.terms)))
    return out
