"""Hilbert series as a numerator polynomial over a product of (1 - t^w) factors."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping


def _clean(num: Mapping[int, int]) -> dict[int, int]:
    return {k: int(v) for k, v in sorted(num.items()) if v}


@dataclass(frozen=True)
class HilbertSeries:
    """``numerator(t) / prod_w (1 - t^w)^k``.

    ``numerator`` maps exponents to integer coefficients; ``denominator`` maps a
    weight ``w`` to the multiplicity ``k`` of the factor ``(1 - t^w)``.
    """

    numerator: dict = field(default_factory=dict)
    denominator: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "numerator", _clean(self.numerator))
        object.__setattr__(self, "denominator",
                           {w: k for w, k in sorted(self.denominator.items()) if k})
        if any(w < 1 or k < 0 for w, k in self.denominator.items()):
            raise ValueError("denominator factors need w >= 1 and k >= 0")

    @classmethod
    def from_weights(cls, numerator: Mapping[int, int], weights: Iterable[int]) -> "HilbertSeries":
        return cls(dict(numerator), dict(Counter(weights)))

    def expand(self, D: int) -> list[int]:
        """Coefficients of t^0..t^D."""
        out = [0] * (D + 1)
        for k, c in self.numerator.items():
            if k <= D:
                out[k] += c
        for w, k in self.denominator.items():
            for _ in range(k):
                # multiply by 1/(1 - t^w): running sum with stride w
                for n in range(w, D + 1):
                    out[n] += out[n - w]
        return out

    def numerator_poly(self) -> list[int]:
        if not self.numerator:
            return [0]
        top = max(self.numerator)
        return [self.numerator.get(i, 0) for i in range(top + 1)]

    def dimension(self) -> int:
        """Krull dimension: pole order at t = 1."""
        num = self.numerator_poly()
        order = 0
        while any(num) and sum(num) == 0:
            # divide by (1 - t)
            q, acc = [], 0
            for c in num[:-1]:
                acc += c
                q.append(acc)
            num = q
            order += 1
        return sum(self.denominator.values()) - order

    def degree(self) -> int:
        """Multiplicity: reduced numerator at t = 1 over the product of weights."""
        num = self.numerator_poly()
        while any(num) and sum(num) == 0:
            q, acc = [], 0
            for c in num[:-1]:
                acc += c
                q.append(acc)
            num = q
        val = sum(num)
        prod = 1
        for w, k in self.denominator.items():
            prod *= w ** k
        return val // prod if val % prod == 0 else val / prod

    def to_string(self) -> str:
        return f"({format_tpoly(self.numerator)}) / ({format_denominator(self.denominator)})"

    def __str__(self):
        return self.to_string()


def format_tpoly(num: Mapping[int, int], var: str = "t") -> str:
    if not num:
        return "0"
    parts = []
    for k in sorted(num):
        c = num[k]
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append((" + " if c > 0 else " - ") + body)
    return "".join(parts)


def format_denominator(den: Mapping[int, int], var: str = "t") -> str:
    if not den:
        return "1"
    out = []
    for w, k in sorted(den.items()):
        f = f"1 - {var}" if w == 1 else f"1 - {var}^{w}"
        out.append(f"({f})" + (f"^{k}" if k > 1 else ""))
    return "*".join(out)


def poly_mul(a: Mapping[int, int], b: Mapping[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return _clean(out)


def poly_add(a: Mapping[int, int], b: Mapping[int, int]) -> dict[int, int]:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return _clean(out)
