"""Hilbert series and Hilbert functions of graded quotients.

The series of ``R/I`` is stored as a numerator ``N(t)`` with
``HS(t) = N(t) / (1 - t)^n``; it is computed exactly from the leading
monomials of a Gröbner basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from . import monomials as mon


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return out


def _trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a = a[:-1]
    return a


def _minimalize(gens: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    gens = sorted(set(gens), key=sum)
    out: list[tuple[int, ...]] = []
    for g in gens:
        if not any(mon.divides(h, g) for h in out):
            out.append(g)
    return out


def monomial_numerator(gens: Sequence[tuple[int, ...]]) -> list[int]:
    """Numerator ``N(t)`` of the Hilbert series of ``R/M`` for a monomial ideal ``M``."""
    gens = _minimalize(list(gens))
    return _trim(_numer(gens))


def _numer(gens: list[tuple[int, ...]]) -> list[int]:
    if not gens:
        return [1]
    n = len(gens[0])
    # pairwise coprime generators: product of (1 - t^deg)
    support = [0] * n
    coprime = True
    for g in gens:
        for i, a in enumerate(g):
            if a:
                support[i] += 1
                if support[i] > 1:
                    coprime = False
    if coprime:
        out = [1]
        for g in gens:
            d = sum(g)
            f = [0] * (d + 1)
            f[0], f[d] = 1, -1
            out = _poly_mul(out, f)
        return out
    # pivot on x^e taken from a generator that is not a pure power, so x^e is not in M
    mixed = [g for g in gens if sum(1 for a in g if a) > 1]
    count = [sum(1 for g in mixed if g[i]) for i in range(n)]
    var = max(range(n), key=lambda i: count[i])
    exps = sorted(g[var] for g in mixed if g[var])
    e = exps[len(exps) // 2]
    piv = tuple(e if i == var else 0 for i in range(n))
    plus = _minimalize(gens + [piv])
    colon = _minimalize([tuple(max(a - b, 0) for a, b in zip(g, piv)) for g in gens])
    shifted = [0] * e + _numer(colon)
    return _poly_add(_numer(plus), shifted)


def _series_value(num: list[int], n: int, v: int) -> int:
    if v < 0:
        return 0
    total = 0
    for k, c in enumerate(num):
        if c and v - k >= 0:
            total += c * comb(v - k + n - 1, n - 1) if n > 0 else (c if v == k else 0)
    return total


@dataclass(frozen=True)
class HilbertSeries:
    numerator: tuple[int, ...]
    n: int

    def value(self, v: int) -> int:
        return _series_value(list(self.numerator), self.n, v)

    def values(self, v_max: int) -> list[int]:
        return [self.value(v) for v in range(v_max + 1)]

    def reduced(self) -> tuple[list[int], int]:
        """``(Q, d)`` with ``HS = Q(t)/(1-t)^d`` and ``Q(1) != 0``."""
        q = list(self.numerator)
        d = self.n
        if q == [0]:
            return [0], 0
        while d > 0 and sum(q) == 0:
            # divide by (1 - t)
            out, acc = [], 0
            for c in q[:-1]:
                acc += c
                out.append(acc)
            q = _trim(out) if out else [0]
            d -= 1
        return q, d

    @property
    def krull_dim(self) -> int:
        if list(self.numerator) == [0]:
            return -1
        return self.reduced()[1]

    @property
    def multiplicity(self) -> int:
        q, _ = self.reduced()
        return sum(q)

    def h_vector(self) -> list[int]:
        return self.reduced()[0]

    def hilbert_polynomial(self) -> list[Fraction]:
        """Coefficients ``[c0, c1, ...]`` of the Hilbert polynomial in ``x``."""
        q, d = self.reduced()
        if d == 0:
            return [Fraction(0)]
        # sum_k q_k * binom(x - k + d - 1, d - 1)
        coeffs = [Fraction(0)] * d
        for k, c in enumerate(q):
            if not c:
                continue
            poly = [Fraction(1)]
            for i in range(1, d):
                # multiply by (x - k + i) / i
                nxt = [Fraction(0)] * (len(poly) + 1)
                for j, a in enumerate(poly):
                    nxt[j] += a * Fraction(i - k, i)
                    nxt[j + 1] += a / i
                poly = nxt
            for j, a in enumerate(poly):
                coeffs[j] += c * a
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return coeffs

    def last_nonpolynomial_degree(self) -> int:
        """Largest ``v`` with ``H(v)`` different from the Hilbert polynomial (``-1`` if none)."""
        q, d = self.reduced()
        if d == 0:
            return len(q) - 1 if q != [0] else -1
        # H(v) = P(v) once v >= deg Q - d + 1
        top = len(q) - 1 - d
        P = self.hilbert_polynomial()
        last = -1
        for v in range(0, max(top, 0) + 1):
            pv = sum(c * v ** i for i, c in enumerate(P))
            if pv != self.value(v):
                last = v
        return last


@dataclass
class HilbertFunction:
    """Values ``H(0..v_max)`` plus stabilization data."""

    values: list[int]
    series: HilbertSeries | None = None
    constant: int | None = None
    stable_from: int | None = None
    h_vector: list[int] = field(default_factory=list)
    polynomial: list[Fraction] = field(default_factory=list)

    def __getitem__(self, v: int) -> int:
        if v < 0:
            return 0
        if v < len(self.values):
            return self.values[v]
        if self.series is not None:
            return self.series.value(v)
        raise IndexError(v)

    def as_dict(self) -> dict:
        return {
            "H": list(self.values),
            "h": list(self.h_vector),
            "poly": [str(c) if c.denominator != 1 else int(c) for c in self.polynomial],
        }


def hilbert_function_from_series(hs: HilbertSeries, v_max: int) -> HilbertFunction:
    vals = hs.values(v_max)
    P = hs.hilbert_polynomial()
    d = hs.krull_dim
    const = None
    if d <= 1:
        const = int(P[0]) if d == 1 else 0
    last = hs.last_nonpolynomial_degree()
    return HilbertFunction(
        values=vals, series=hs, constant=const, stable_from=last + 1,
        h_vector=hs.h_vector(), polynomial=P,
    )


def hilbert_from_betti(betti: dict[tuple[int, int], int], n: int, v_max: int) -> list[int]:
    """Hilbert function of ``R/I`` read off a graded Betti table ``{(j, shift): rank}``."""
    out = []
    for v in range(v_max + 1):
        h = comb(v + n - 1, n - 1)
        for (j, s), r in betti.items():
            if v - s >= 0:
                h += (-1) ** j * r * comb(v - s + n - 1, n - 1)
        out.append(h)
    return out


def interpolate_polynomial(H: Sequence[int], start: int) -> list[Fraction]:
    """Constant or linear polynomial through ``H`` on ``[start, len(H))``, checked on the window."""
    xs = list(range(start, len(H)))
    if len(xs) < 2:
        raise ValueError("need at least two values past the start degree")
    a = Fraction(H[xs[1]] - H[xs[0]], 1)
    b = Fraction(H[xs[0]]) - a * xs[0]
    for x in xs:
        if a * x + b != H[x]:
            raise ValueError("values are not linear on the window")
    return [b, a] if a else [b]


def truncate_hilbert(H: Sequence[int], s: int) -> tuple[list[int], int | None]:
    """``(min(H(v), s), j)`` where ``j`` is the first degree with ``H(j) >= s``."""
    return [min(h, s) for h in H], truncation_onset(H, s)


def truncation_onset(H: Sequence[int], s: int) -> int | None:
    for v, h in enumerate(H):
        if h >= s:
            return v
    return None


def artinian_truncation_H(H: Sequence[int], j: int, alpha: int) -> list[int]:
    """``H(v)`` for ``v < j``, ``alpha`` at ``v = j`` and zero afterwards."""
    if alpha > H[j]:
        raise ValueError("alpha exceeds H(j)")
    return [H[v] for v in range(j)] + [alpha]


def compressed_bound(n: int, socle: int, t: int) -> list[int]:
    """``min(dim R_v, t * dim R_{socle - v})`` for ``v = 0..socle``."""
    return [min(mon.num_monomials(n, v), t * mon.num_monomials(n, socle - v)) for v in range(socle + 1)]


def is_compressed_H(H: Sequence[int], n: int, t: int) -> bool:
    H = list(H)
    while H and H[-1] == 0:
        H.pop()
    return H == compressed_bound(n, len(H) - 1, t)


def difference(H: Sequence[int]) -> list[int]:
    return [H[0]] + [H[i] - H[i - 1] for i in range(1, len(H))]
