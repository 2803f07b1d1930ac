"""Homogeneous ideals: Gröbner data, graded pieces and ideal operations."""
from __future__ import annotations

from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np
import yaml

from . import linalg as la
from . import monomials as mon
from .groebner import GroebnerBasis, buchberger, normal_form
from .hilbert import HilbertFunction, HilbertSeries, hilbert_function_from_series, monomial_numerator
from .pieces import QuotientRing
from .ring import Polynomial, PolyRing


class Ideal:
    """Homogeneous ideal of a polynomial ring.  Immutable; derived data is cached."""

    def __init__(self, ring: PolyRing, gens: Iterable[Polynomial]):
        self.ring = ring
        gens = tuple(g for g in gens if g.terms)
        for g in gens:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")
        self.gens = gens
        self._gb: GroebnerBasis | None = None
        self._Q: QuotientRing | None = None
        self._hs: HilbertSeries | None = None
        self._mingens: tuple[Polynomial, ...] | None = None
        self._cache: dict = {}

    @classmethod
    def parse(cls, ring: PolyRing, texts: Iterable[str]) -> "Ideal":
        return cls(ring, [ring.parse(t) for t in texts])

    @classmethod
    def from_pieces(cls, ring: PolyRing, piece: Callable[[int], np.ndarray], top: int) -> "Ideal":
        """Artinian ideal from RREF-able bases of ``I_d`` for ``d <= top``; ``I_d = R_d`` beyond."""
        p = ring.char
        n = ring.n
        gens: list[Polynomial] = []
        gb: list[Polynomial] = []
        lead: list[tuple[int, ...]] = []
        span = np.zeros((0, 1), dtype=np.int64)
        span_piv: list[int] = []
        for d in range(0, top + 2):
            N = mon.num_monomials(n, d)
            full = d > top
            B = np.eye(N, dtype=np.int64) if full else la.as_mod(piece(d), p)
            if B.shape[0] == 0:
                span, span_piv = np.zeros((0, N), dtype=np.int64), []
                continue
            Br, piv = la.rref(B, p)
            # minimal generators: complement of R_1 * I_{d-1}
            if span.shape[0]:
                prev = [la.matmul(span, _shift_matrix(n, d - 1, k), p) for k in range(n)]
                base, bpiv = la.rref(np.vstack(prev), p)
            else:
                base, bpiv = np.zeros((0, N), dtype=np.int64), []
            chosen, _, _ = la.extend_basis(base, bpiv, Br, p)
            for c in chosen:
                gens.append(Polynomial.from_vector(ring, d, Br[c]))
            mons = mon.monomials(n, d)
            for r, c in enumerate(piv):
                m = mons[c]
                if not any(mon.divides(t, m) for t in lead):
                    gb.append(Polynomial.from_vector(ring, d, Br[r]))
                    lead.append(m)
            span, span_piv = Br, piv
        I = cls(ring, gens)
        I._gb = GroebnerBasis(ring, tuple(sorted(gb, key=lambda g: ring.key(g.leading_monomial()))))
        I._mingens = tuple(gens)
        return I

    # Gröbner data
    def groebner(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = buchberger(self.ring, self.gens)
        return self._gb

    def quotient_ring(self) -> QuotientRing:
        if self._Q is None:
            self._Q = QuotientRing(self.ring, self.groebner().polys)
        return self._Q

    def hilbert_series(self) -> HilbertSeries:
        if self._hs is None:
            lts = self.groebner().leading_monomials()
            num = monomial_numerator(lts) if lts else [1]
            self._hs = HilbertSeries(tuple(num), self.ring.n)
        return self._hs

    def hilbert(self, v: int) -> int:
        return self.hilbert_series().value(v)

    def hilbert_function(self, v_max: int) -> HilbertFunction:
        return hilbert_function_from_series(self.hilbert_series(), v_max)

    @property
    def krull_dim(self) -> int:
        return self.hilbert_series().krull_dim

    @property
    def codim(self) -> int:
        return self.ring.n - self.krull_dim

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_artinian(self) -> bool:
        return self.krull_dim <= 0

    def socle_degree(self) -> int:
        """Top nonzero degree of an Artinian quotient."""
        if not self.is_artinian():
            raise ValueError("quotient is not Artinian")
        q = list(self.hilbert_series().numerator)
        return len(self.hilbert_series().h_vector()) - 1 if q != [0] else -1

    def degree(self) -> int:
        """Multiplicity of ``R/I`` (length when Artinian)."""
        return self.hilbert_series().multiplicity

    # graded pieces
    def piece(self, d: int) -> tuple[np.ndarray, list[int]]:
        return self.quotient_ring().ideal_piece(d)

    def piece_dim(self, d: int) -> int:
        return mon.num_monomials(self.ring.n, d) - self.quotient_ring().dim(d)

    def random_element(self, d: int, rng: np.random.Generator) -> Polynomial:
        B, _ = self.piece(d)
        if B.shape[0] == 0:
            return self.ring.zero()
        c = rng.integers(0, self.ring.char, size=B.shape[0])
        return Polynomial.from_vector(self.ring, d, la.matmul(c[None, :], B, self.ring.char)[0])

    def minimal_generators(self) -> tuple[Polynomial, ...]:
        if self._mingens is None:
            from .pieces import minimal_module_generators

            cols, _ = minimal_module_generators(self.ring, (0,), [[g] for g in self.gens])
            self._mingens = tuple(c[0] for c in cols)
        return self._mingens

    def generator_degrees(self) -> list[int]:
        return sorted(g.degree() for g in self.minimal_generators())

    def max_generator_degree(self) -> int:
        return max((g.degree() for g in self.gens), default=-1)

    # membership and comparison
    def contains(self, f: Polynomial) -> bool:
        if not f.terms:
            return True
        if f.is_homogeneous():
            Q = self.quotient_ring()
            return not Q.reduce_poly(f).any()
        return not normal_form(f, self.groebner()).terms

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner().polys == other.groebner().polys

    def __hash__(self):
        return hash((self.ring, self.groebner().polys))

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.gens + other.gens)

    def product(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def substitute(self, images: Sequence[Polynomial]) -> "Ideal":
        target = images[0].ring
        return Ideal(target, [g.substitute(list(images)) for g in self.gens])

    def __repr__(self) -> str:
        return f"Ideal({', '.join(str(g) for g in self.gens)})"


def _shift_matrix(n: int, d: int, k: int) -> np.ndarray:
    """Multiplication by ``x_k`` from ``R_d`` to ``R_{d+1}`` in monomial coordinates."""
    src = mon.num_monomials(n, d)
    M = np.zeros((src, mon.num_monomials(n, d + 1)), dtype=np.int64)
    if src:
        M[np.arange(src), mon.mult_index(n, d, mon.variable(n, k))] = 1
    return M


def ideal_from_piece_function(ring: PolyRing, piece: Callable[[int], np.ndarray], top: int) -> Ideal:
    """Ideal generated by the given pieces ``I_d`` for ``d <= top``."""
    p, n = ring.char, ring.n
    gens: list[Polynomial] = []
    span = np.zeros((0, 1), dtype=np.int64)
    for d in range(0, top + 1):
        N = mon.num_monomials(n, d)
        B = la.as_mod(piece(d), p)
        if span.shape[0]:
            prev = [la.matmul(span, _shift_matrix(n, d - 1, k), p) for k in range(n)]
            base, bpiv = la.rref(np.vstack(prev), p)
        else:
            base, bpiv = np.zeros((0, N), dtype=np.int64), []
        if B.shape[0]:
            chosen, span, piv = la.extend_basis(base, bpiv, B, p)
            for c in chosen:
                gens.append(Polynomial.from_vector(ring, d, B[c]))
        else:
            span = base
    return Ideal(ring, gens)


# ideal operations

def _elimination_ring(ring: PolyRing) -> PolyRing:
    return PolyRing(("_t",) + ring.names, ring.char, "elim", 1)


def _lift(f: Polynomial, R2: PolyRing) -> Polynomial:
    return Polynomial(R2, {(0,) + e: c for e, c in f.terms.items()})


def _drop(f: Polynomial, ring: PolyRing) -> Polynomial:
    return Polynomial(ring, {e[1:]: c for e, c in f.terms.items()})


def intersect_by_elimination(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J = (tI + (1 - t)J) ∩ R`` with ``t`` eliminated by a block order."""
    ring = I.ring
    R2 = _elimination_ring(ring)
    t = R2.gen(0)
    gens = [t * _lift(f, R2) for f in I.gens] + [(1 - t) * _lift(g, R2) for g in J.gens]
    gb = buchberger(R2, gens)
    keep = [_drop(g, ring) for g in gb.polys if all(e[0] == 0 for e in g.terms)]
    return Ideal(ring, keep)


def intersect_linear(I: Ideal, J: Ideal, bound: int) -> Ideal:
    """Degree-wise ``I_d ∩ J_d`` for ``d <= bound``; exact when ``bound`` covers all generators."""
    p = I.ring.char

    def piece(d):
        A, _ = I.piece(d)
        B, _ = J.piece(d)
        return la.span_intersection(A, B, p)

    return ideal_from_piece_function(I.ring, piece, bound)


def ideal_intersect(I: Ideal, J: Ideal, method: str = "auto") -> Ideal:
    """Intersection of two homogeneous ideals.

    With ``method="auto"`` an Artinian operand allows the graded linear
    algebra route: if ``R/I`` has socle degree ``s`` then ``(I ∩ J)_d = J_d``
    for ``d > s``, so generators live in degrees ``<= max(s + 1, deg J)``.
    """
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")
    if method == "elimination":
        return intersect_by_elimination(I, J)
    if method not in ("auto", "linear"):
        raise ValueError(f"unknown method {method!r}")
    for A, B in ((I, J), (J, I)):
        if A.is_artinian():
            bound = max(A.socle_degree() + 1, B.max_generator_degree(), 0)
            return intersect_linear(I, J, bound)
    if method == "linear":
        raise ValueError("linear intersection needs an Artinian operand")
    return intersect_by_elimination(I, J)


def exact_division(f: Polynomial, g: Polynomial) -> Polynomial:
    """``f / g`` assuming ``g`` divides ``f``."""
    ring = f.ring
    q: dict = {}
    r = f
    lg = g.leading_monomial()
    inv = pow(g.leading_coefficient(), ring.char - 2, ring.char)
    while r.terms:
        lm = r.leading_monomial()
        if not mon.divides(lg, lm):
            raise ValueError("division is not exact")
        m = mon.quotient(lm, lg)
        c = r.terms[lm] * inv % ring.char
        q[m] = (q.get(m, 0) + c) % ring.char
        r = r - g.mul_monomial(m, c)
    return Polynomial(ring, q)


def quotient_by_element(L: Ideal, g: Polynomial) -> Ideal:
    """``L : g = (L ∩ (g)) / g``."""
    inter = intersect_by_elimination(L, Ideal(L.ring, [g]))
    return Ideal(L.ring, [exact_division(f, g) for f in inter.groebner().polys])


def quotient_linear(L: Ideal, J: Ideal, bound: int) -> Ideal:
    """Degree-wise ``(L : J)_d`` for ``d <= bound``."""
    Q = L.quotient_ring()
    ring = L.ring
    p = ring.char
    gens = list(J.minimal_generators())

    def piece(d):
        N = mon.num_monomials(ring.n, d)
        if Q.dim(d) == 0:
            return np.eye(N, dtype=np.int64)
        blocks = [la.matmul(Q.nf(d), Q.act(g, d), p) for g in gens if Q.dim(d + g.degree())]
        if not blocks:
            return np.eye(N, dtype=np.int64)
        return la.left_kernel(np.hstack(blocks), p)

    return ideal_from_piece_function(ring, piece, bound)


def ideal_quotient(L: Ideal, J: Ideal, degree_bound: int | None = None) -> Ideal:
    """``L : J``.

    If ``R/L`` is Artinian with socle degree ``s`` then ``L : J`` contains
    ``m^(s+1)`` and is computed degree-wise up to ``s + 1``.  A caller that
    knows a generator degree bound can pass it.  Otherwise
    ``L : J = ∩_g (L ∩ (g))/g`` by elimination.
    """
    if degree_bound is None and L.is_artinian():
        degree_bound = L.socle_degree() + 1
    if degree_bound is not None:
        return quotient_linear(L, J, degree_bound)
    result: Ideal | None = None
    for g in J.minimal_generators():
        Q = quotient_by_element(L, g)
        result = Q if result is None else intersect_by_elimination(result, Q)
    return result if result is not None else Ideal(L.ring, [L.ring.one()])


def _coordinate_change(ring: PolyRing, coeffs: Sequence[int]):
    """Maps for ``y_n = sum c_i x_i`` (``c_n = 1``), ``y_i = x_i`` otherwise."""
    n = ring.n
    X = ring.gens()
    to_y = X[:-1] + [X[-1] - sum((X[i].scale(coeffs[i]) for i in range(n - 1)), ring.zero())]
    to_x = X[:-1] + [sum((X[i].scale(coeffs[i]) for i in range(n)), ring.zero())]
    return to_y, to_x


def saturate_last_variable(I: Ideal) -> Ideal:
    """``I : x_n^∞`` via the degrevlex property of the last variable."""
    out = []
    for g in I.groebner().polys:
        a = g.leading_monomial()[-1]
        out.append(Polynomial(I.ring, {e[:-1] + (e[-1] - a,): c for e, c in g.terms.items()}))
    return Ideal(I.ring, out)


def saturate_linear_form(I: Ideal, coeffs: Sequence[int]) -> Ideal:
    """``I : ℓ^∞`` for ``ℓ = sum c_i x_i`` with ``c_n = 1``."""
    coeffs = list(coeffs[:-1]) + [1]
    to_y, to_x = _coordinate_change(I.ring, coeffs)
    Iy = I.substitute(to_y)
    S = saturate_last_variable(Iy)
    return Ideal(I.ring, [g.substitute(to_x) for g in S.groebner().polys])


def saturation(I: Ideal, rng: np.random.Generator | None = None) -> Ideal:
    """``I : m^∞`` using a random linear form (Bayer–Stillman)."""
    rng = rng or np.random.default_rng(0)
    if I.is_artinian():
        return Ideal(I.ring, [I.ring.one()])
    coeffs = [int(c) for c in rng.integers(1, I.ring.char, size=I.ring.n)]
    return saturate_linear_form(I, coeffs)


def hyperplane_section(I: Ideal, coeffs: Sequence[int], names: Sequence[str] | None = None) -> Ideal:
    """Image of ``I`` under ``x_n ↦ -sum_{i<n} c_i x_i``, an ideal in ``n - 1`` variables."""
    ring = I.ring
    R1 = PolyRing(tuple(names) if names else ring.names[:-1], ring.char)
    X = R1.gens()
    last = R1.zero()
    for i in range(ring.n - 1):
        last = last - X[i].scale(coeffs[i])
    return I.substitute(X + [last])


# ideal files

def read_ideal_text(text: str, ring: PolyRing | None = None, char: int | None = None) -> Ideal:
    """Parse the ideal file format.

    The first non-comment line is a ring header such as
    ``ring: {vars: [x, y, z], char: 32003}``; every later line is a generator.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("empty ideal file")
    if lines[0].startswith("ring"):
        desc = yaml.safe_load(lines[0])
        if not isinstance(desc, dict) or "ring" not in desc:
            raise ValueError("malformed ring header")
        spec = desc["ring"]
        names = spec["vars"] if isinstance(spec["vars"], list) else str(spec["vars"]).split(",")
        c = int(char if char is not None else spec.get("char", 32003))
        ring = PolyRing(tuple(str(v).strip() for v in names), c)
        lines = lines[1:]
    elif ring is None:
        raise ValueError("ideal file needs a ring header")
    return Ideal(ring, [ring.parse(line) for line in lines])


def read_ideal_file(path: str | Path, char: int | None = None) -> Ideal:
    return read_ideal_text(Path(path).read_text(), char=char)


def format_ideal(I: Ideal) -> str:
    header = "ring: " + yaml.safe_dump(I.ring.describe(), default_flow_style=True, sort_keys=False).strip()
    return "\n".join([header] + [str(g) for g in I.gens]) + "\n"


def write_ideal_file(I: Ideal, path: str | Path) -> None:
    Path(path).write_text(format_ideal(I))
