"""Macaulay inverse systems via contraction.

The dual ring ``D`` has the same number of variables, written in upper
case.  ``R`` acts on ``D`` by contraction, ``x^a ∘ X^b = X^(b-a)`` when
``b >= a`` and zero otherwise.  Powers of linear forms are taken as divided
powers, ``L^[j] = sum_{|a|=j} l^a X^a``, which is what makes a sum of ``s``
of them have the expected ranks in every characteristic.

A form written for the differentiation action (``x_i`` acting as
``d/dX_i``) converts to this convention by multiplying the coefficient of
``X^a`` by ``a!``; see :func:`from_differentiation`.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from math import factorial
from typing import Sequence

import numpy as np

from . import linalg as la
from . import monomials as mon
from .hilbert import compressed_bound
from .ideal import Ideal
from .ring import Polynomial, PolyRing

log = logging.getLogger(__name__)


def dual_ring(ring: PolyRing) -> PolyRing:
    names = tuple(n.upper() for n in ring.names)
    if len(set(names)) != len(names) or set(names) & set(ring.names):
        names = tuple("D" + n for n in ring.names)
    return PolyRing(names, ring.char)


def contract(f: Polynomial, F: Polynomial) -> Polynomial:
    """``f ∘ F`` for ``f`` in ``R`` and ``F`` in the dual ring."""
    if f.ring.n != F.ring.n or f.ring.char != F.ring.char:
        raise ValueError("rings do not match")
    out: dict = {}
    p = F.ring.char
    for a, c in f.terms.items():
        for b, v in F.terms.items():
            if all(x <= y for x, y in zip(a, b)):
                e = tuple(y - x for x, y in zip(a, b))
                out[e] = (out.get(e, 0) + c * v) % p
    return Polynomial(F.ring, out)


def _mfact(a) -> int:
    out = 1
    for x in a:
        out *= factorial(x)
    return out


def from_differentiation(F: Polynomial) -> Polynomial:
    """Form with the same annihilator under contraction as ``F`` has under differentiation."""
    p = F.ring.char
    if any(x >= p for e in F.terms for x in e):
        raise ValueError("exponents must be below the characteristic")
    return Polynomial(F.ring, {e: c * _mfact(e) for e, c in F.terms.items()})


def to_differentiation(F: Polynomial) -> Polynomial:
    p = F.ring.char
    return Polynomial(F.ring, {e: c * pow(_mfact(e) % p, p - 2, p) for e, c in F.terms.items()})


def catalecticant(F: Polynomial, i: int) -> np.ndarray:
    """Matrix of ``R_i -> D_{j-i}``, ``g ↦ g ∘ F``, rows indexed by monomials of ``R_i``."""
    n = F.ring.n
    j = F.degree()
    rows = mon.num_monomials(n, i)
    if i > j or not F.terms:
        return np.zeros((rows, 0), dtype=np.int64)
    Fv = F.to_vector(j)
    cols = mon.monomials(n, j - i)
    M = np.zeros((rows, len(cols)), dtype=np.int64)
    for k, c in enumerate(cols):
        M[:, k] = Fv[mon.mult_index(n, i, c)]
    return M


def contraction_matrix(f: Polynomial, j: int) -> np.ndarray:
    """Matrix of ``D_j -> D_{j - deg f}``, ``F ↦ f ∘ F`` (rows: monomials of ``D_j``)."""
    n = f.ring.n
    b = f.degree()
    src = mon.num_monomials(n, j)
    dst = mon.num_monomials(n, j - b)
    M = np.zeros((src, dst), dtype=np.int64)
    if dst == 0:
        return M
    for a, c in f.terms.items():
        idx = mon.mult_index(n, j - b, a)
        M[idx, np.arange(dst)] = (M[idx, np.arange(dst)] + c) % f.ring.char
    return M


def inverse_system_hilbert(forms: Sequence[Polynomial]) -> list[int]:
    """``H(R/ann(forms))`` from catalecticant ranks."""
    forms = [F for F in forms if F.terms]
    top = max(F.degree() for F in forms)
    p = forms[0].ring.char
    out = []
    for i in range(top + 1):
        blocks = [catalecticant(F, i) for F in forms if F.degree() >= i]
        out.append(la.rank(np.hstack(blocks), p))
    return out


def annihilator(forms: Sequence[Polynomial], ring: PolyRing | None = None) -> Ideal:
    """``ann(F_1, ..., F_t)`` as an ideal of ``R`` (an Artinian ideal)."""
    forms = [F for F in forms if F.terms]
    if not forms:
        raise ValueError("need at least one nonzero form")
    D = forms[0].ring
    for F in forms:
        if not F.is_homogeneous():
            raise ValueError("forms must be homogeneous")
    if ring is None:
        ring = PolyRing(tuple(n.lower() for n in D.names), D.char)
        if len(set(ring.names)) != D.n:
            ring = PolyRing.standard(D.n, D.char)
    top = max(F.degree() for F in forms)
    p = D.char

    def piece(i):
        blocks = [catalecticant(F, i) for F in forms if F.degree() >= i]
        return la.left_kernel(np.hstack(blocks), p)

    return Ideal.from_pieces(ring, piece, top)


def _divided_power(D: PolyRing, coeffs: Sequence[int], j: int) -> np.ndarray:
    E = mon.exponent_matrix(D.n, j)
    p = D.char
    vals = np.ones(E.shape[0], dtype=np.int64)
    for i, c in enumerate(coeffs):
        powers = np.array([pow(int(c), k, p) for k in range(j + 1)], dtype=np.int64)
        vals = (vals * powers[E[:, i]]) % p
    return vals


def divided_power(D: PolyRing, coeffs: Sequence[int], j: int) -> Polynomial:
    """``L^[j]`` for ``L = sum c_i X_i``."""
    return Polynomial.from_vector(D, j, _divided_power(D, coeffs, j))


def generic_power_sum_hilbert(n: int, s: int, j: int) -> list[int]:
    """Upper bound ``min(s, dim R_i, dim R_{j-i})``, attained by general points."""
    return [min(s, mon.num_monomials(n, i), mon.num_monomials(n, j - i)) for i in range(j + 1)]


@dataclass
class PowerSum:
    form: Polynomial
    points: list[list[int]]
    seed: int | None
    attempts: int


def power_sum_form(D: PolyRing, s: int, j: int, rng: np.random.Generator, tries: int = 20) -> PowerSum:
    """``F = sum_{k<s} L_k^[j]`` with random ``L_k``; resampled until the Hilbert function is generic."""
    want = generic_power_sum_hilbert(D.n, s, j)
    for attempt in range(1, tries + 1):
        pts = [[int(c) for c in rng.integers(0, D.char, size=D.n)] for _ in range(s)]
        vec = np.zeros(mon.num_monomials(D.n, j), dtype=np.int64)
        for pt in pts:
            vec = (vec + _divided_power(D, pt, j)) % D.char
        F = Polynomial.from_vector(D, j, vec)
        if F.terms and inverse_system_hilbert([F]) == want:
            return PowerSum(F, pts, None, attempt)
        log.info("power sum with s=%d, j=%d not generic; resampling (attempt %d)", s, j, attempt)
    raise RuntimeError("no generic power sum found")


def general_form(D: PolyRing, j: int, rng: np.random.Generator) -> Polynomial:
    vec = rng.integers(0, D.char, size=mon.num_monomials(D.n, j))
    return Polynomial.from_vector(D, j, vec)


def forms_annihilated_by(polys: Sequence[Polynomial], j: int) -> np.ndarray:
    """Basis (rows, monomial coordinates of ``D_j``) of ``{F : f ∘ F = 0 for all f}``."""
    n = polys[0].ring.n
    p = polys[0].ring.char
    blocks = [contraction_matrix(f, j) for f in polys if f.degree() <= j]
    if not blocks:
        return np.eye(mon.num_monomials(n, j), dtype=np.int64)
    return la.left_kernel(np.hstack(blocks), p)


def is_complementary(F1: Polynomial, F2: Polynomial) -> bool:
    """``H_A(i) = min(dim R_i, H_{A_1}(i) + H_{A_2}(i))`` for ``A = R/ann(F1, F2)``."""
    n = F1.ring.n
    H = inverse_system_hilbert([F1, F2])
    H1 = inverse_system_hilbert([F1])
    H2 = inverse_system_hilbert([F2])
    for i, h in enumerate(H):
        a = H1[i] if i < len(H1) else 0
        b = H2[i] if i < len(H2) else 0
        if h != min(mon.num_monomials(n, i), a + b):
            return False
    return True


def is_compressed(I: Ideal) -> bool:
    """Artinian level quotient whose Hilbert function meets the compressed bound."""
    from .pieces import socle_dims

    if not I.is_artinian():
        return False
    s = I.socle_degree()
    soc = socle_dims(I.quotient_ring(), s)
    if any(soc[v] for v in range(s)):
        return False
    t = soc[s]
    return I.hilbert_series().values(s) == compressed_bound(I.ring.n, s, t)
