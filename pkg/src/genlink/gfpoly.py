"""Dense univariate polynomials over GF(p), lowest degree first."""

from __future__ import annotations


def trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def reduce(f, p: int) -> list[int]:
    return trim([c % p for c in f])


def degree(f) -> int:
    return len(f) - 1


def monic(f, p: int) -> list[int]:
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def sub(f, g, p: int) -> list[int]:
    n = max(len(f), len(g))
    return trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def mul(f, g, p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim([c % p for c in out])


def divmod_(f, g, p: int) -> tuple[list[int], list[int]]:
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(f)
    inv = pow(g[-1], -1, p)
    q = [0] * max(len(f) - len(g) + 1, 0)
    while len(r) >= len(g) and r:
        c = r[-1] * inv % p
        k = len(r) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            r[i + k] = (r[i + k] - c * b) % p
        trim(r)
    return trim(q), r


def rem(f, g, p: int) -> list[int]:
    return divmod_(f, g, p)[1]


def gcd(f, g, p: int) -> list[int]:
    f, g = trim(list(f)), trim(list(g))
    while g:
        f, g = g, rem(f, g, p)
    return monic(f, p) if f else f


def derivative(f, p: int) -> list[int]:
    return trim([(i * c) % p for i, c in enumerate(f)][1:])


def powmod(f, e: int, mod, p: int) -> list[int]:
    result = [1]
    base = rem(f, mod, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), mod, p)
        base = rem(mul(base, base, p), mod, p)
        e >>= 1
    return result


def is_squarefree(f, p: int) -> bool:
    d = derivative(f, p)
    if not d:
        return False
    return degree(gcd(f, d, p)) == 0


def distinct_degree(f, p: int) -> list[tuple[int, int]]:
    """Distinct-degree factorization of a monic square-free f.

    Returns (d, k) pairs: the product of all degree-d irreducible factors has
    degree k, so there are k // d of them.
    """
    f = monic(list(f), p)
    out = []
    x = [0, 1]
    h = x
    d = 0
    while degree(f) >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, x, p), p)
        if degree(g) > 0:
            out.append((d, degree(g)))
            f, _ = divmod_(f, g, p)
            h = rem(h, f, p)
    if degree(f) > 0:
        out.append((degree(f), degree(f)))
    return out


def factor_degrees(f, p: int) -> list[int]:
    """Degrees of the irreducible factors of a square-free f modulo p."""
    degs = []
    for d, k in distinct_degree(f, p):
        degs.extend([d] * (k // d))
    return sorted(degs)
