"""Builders for curves, point sets, Artinian truncations and Gorenstein sections.

Randomness always comes from a ``numpy.random.Generator``.  Every builder
checks the Hilbert function it promises and resamples otherwise, logging
the attempt, so that a fixed seed gives a fixed, verified result.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from sympy.ntheory import sqrt_mod

from . import linalg as la
from . import monomials as mon
from .apolarity import annihilator, dual_ring, forms_annihilated_by, general_form
from .hilbert import truncate_hilbert
from .ideal import Ideal, ideal_from_piece_function
from .pieces import induced_map, socle_dims
from .resolution import regularity
from .ring import Polynomial, PolyRing

log = logging.getLogger(__name__)


class ConstructionError(RuntimeError):
    pass


# curves

@dataclass
class CurveSpec:
    """A curve ``Y`` in projective space together with a way to sample its points.

    ``tag`` is one of ``rational_normal`` (``degree`` d in ``P^d``),
    ``twisted_cubic``, ``plane_cubic_plus_point``,
    ``four_lines_through_point``, ``embedded_point_cubic`` or ``custom``.
    """

    tag: str
    degree: int = 3
    ideal: Ideal | None = None
    char: int = 32003

    @classmethod
    def parse(cls, text: str, char: int = 32003) -> "CurveSpec":
        """``rnc:4``, ``twisted_cubic``, ``plane_cubic_plus_point``, ``four_lines``, ``embedded_point_cubic``."""
        name, _, arg = text.partition(":")
        name = name.strip().lower()
        aliases = {"rnc": "rational_normal", "four_lines": "four_lines_through_point"}
        name = aliases.get(name, name)
        if name == "rational_normal":
            return cls(name, int(arg or 3), char=char)
        if name in ("twisted_cubic", "plane_cubic_plus_point", "four_lines_through_point", "embedded_point_cubic"):
            return cls(name, char=char)
        raise ValueError(f"unknown curve {text!r}")

    @property
    def ring(self) -> PolyRing:
        if self.tag == "custom":
            return self.ideal.ring
        if self.tag in ("rational_normal", "twisted_cubic"):
            d = 3 if self.tag == "twisted_cubic" else self.degree
            return PolyRing.standard(d + 1, self.char)
        if self.tag == "four_lines_through_point":
            return PolyRing.standard(5, self.char)
        return PolyRing(("x", "y", "z", "w"), self.char)

    def curve_ideal(self) -> Ideal:
        R = self.ring
        X = R.gens()
        if self.tag == "custom":
            return self.ideal
        if self.tag in ("rational_normal", "twisted_cubic"):
            d = R.n - 1
            # 2x2 minors of [[x0 .. x_{d-1}], [x1 .. x_d]]
            gens = [X[i] * X[j + 1] - X[i + 1] * X[j] for i in range(d) for j in range(i + 1, d)]
            return Ideal(R, gens)
        if self.tag == "four_lines_through_point":
            return Ideal(R, [X[i] * X[j] for i in range(1, 5) for j in range(i + 1, 5)])
        x, y, z, w = X
        if self.tag == "plane_cubic_plus_point":
            return Ideal(R, [x * w, y * w, z * w, _plane_cubic(R)])
        if self.tag == "embedded_point_cubic":
            return Ideal(R, [w * x, w * y, w * w, x * y * z + x ** 3 + y ** 3])
        raise ValueError(self.tag)

    def sample_points(self, s: int, rng: np.random.Generator) -> list[list[int]]:
        p = self.char
        R = self.ring
        if self.tag in ("rational_normal", "twisted_cubic"):
            d = R.n - 1
            if s > p:
                raise ConstructionError("not enough rational points; the field is too small")
            ts = rng.choice(p, size=s, replace=False)
            return [[pow(int(t), d - k, p) for k in range(d + 1)] for t in ts]
        if self.tag == "four_lines_through_point":
            lam = rng.choice(np.arange(1, p), size=s, replace=False)
            out = []
            for k in range(s):
                pt = [1, 0, 0, 0, 0]
                pt[1 + k % 4] = int(lam[k])
                out.append(pt)
            return out
        if self.tag == "plane_cubic_plus_point":
            pts = [[0, 0, 0, 1]]
            seen = set()
            while len(pts) < s:
                a = int(rng.integers(0, p))
                r = sqrt_mod((a ** 3 + a + 1) % p, p)
                if r is None or a in seen:
                    continue
                seen.add(a)
                pts.append([a, int(r), 1, 0])
            return pts
        raise ConstructionError(f"no point sampler for {self.tag}")


def _plane_cubic(R: PolyRing) -> Polynomial:
    x, y, z, _ = R.gens()
    return y * y * z - x ** 3 - x * z * z - z ** 3


def _evaluation_matrix(n: int, d: int, points: Sequence[Sequence[int]], p: int) -> np.ndarray:
    """Rows: monomials of degree ``d``; columns: points."""
    E = mon.exponent_matrix(n, d)
    out = np.ones((E.shape[0], len(points)), dtype=np.int64)
    for j, pt in enumerate(points):
        for i, c in enumerate(pt):
            powers = np.array([pow(int(c), k, p) for k in range(d + 1)], dtype=np.int64)
            out[:, j] = (out[:, j] * powers[E[:, i]]) % p
    return out


def points_ideal(ring: PolyRing, points: Sequence[Sequence[int]]) -> Ideal:
    """Ideal of a finite set of rational points, from kernels of evaluation maps."""
    p, n, s = ring.char, ring.n, len(points)
    d = 0
    while la.rank(_evaluation_matrix(n, d, points, p), p) < s:
        d += 1

    def piece(e):
        return la.left_kernel(_evaluation_matrix(n, e, points, p), p)

    return ideal_from_piece_function(ring, piece, d + 1)


@dataclass
class PointSet:
    ideal: Ideal
    points: list[list[int]]
    curve: Ideal
    attempts: int
    hilbert: list[int] = field(default_factory=list)


def points_on_curve(spec: CurveSpec, s: int, rng: np.random.Generator, tries: int = 10) -> PointSet:
    """``s`` random points of the curve whose ideal has the truncated Hilbert function ``min(H_B, s)``."""
    if s < 1:
        raise ValueError("s must be positive")
    IB = spec.curve_ideal()
    R = IB.ring
    top = 0
    while IB.hilbert(top) < s:
        top += 1
    top += 2
    want, _ = truncate_hilbert(IB.hilbert_series().values(top), s)
    for attempt in range(1, tries + 1):
        pts = spec.sample_points(s, rng)
        if len({tuple(pt) for pt in pts}) < s:
            continue
        IA = points_ideal(R, pts)
        got = IA.hilbert_series().values(top)
        if got == want and IB.issubset(IA):
            return PointSet(IA, pts, IB, attempt, got)
        log.info("points on %s not in generic position (attempt %d): %s", spec.tag, attempt, got)
    raise ConstructionError("retry budget exhausted while sampling points")


# Artinian truncation

def truncate_algebra(B: Ideal, j: int, alpha: int, rng: np.random.Generator, tries: int = 10) -> Ideal:
    """``I_B`` plus ``H_B(j) - alpha`` random forms of degree ``j`` and everything in degree ``j + 1``."""
    hj = B.hilbert(j)
    if not 0 <= alpha <= hj:
        raise ValueError(f"alpha must lie in [0, {hj}]")
    Q = B.quotient_ring()
    R = B.ring
    want = [B.hilbert(v) for v in range(j)] + [alpha, 0]
    top = [R.monomial(m) for m in mon.monomials(R.n, j + 1)]
    for attempt in range(1, tries + 1):
        forms = []
        k = hj - alpha
        if k:
            C = rng.integers(0, R.char, size=(k, hj))
            if la.rank(C, R.char) < k:
                continue
            forms = [Q.lift(row, j) for row in C]
        A = Ideal(R, list(B.gens) + forms + top)
        if A.hilbert_series().values(j + 1) == want:
            return A
        log.info("truncation of degree %d, alpha %d failed (attempt %d)", j, alpha, attempt)
    raise ConstructionError("retry budget exhausted while truncating")


# Gorenstein quotients from sections of the dual canonical module

@dataclass
class GorensteinSection:
    ideal: Ideal
    t: int
    hilbert: list[int]
    attempts: int


def gorenstein_from_section(B: Ideal, t: int, rng: np.random.Generator, tries: int = 10, check_t: bool = True) -> GorensteinSection:
    """Artinian Gorenstein ``A`` with ``I_{A/B}`` the image of a random ``K_B(-t) -> B``."""
    from .deformation import canonical_module, canonical_presentation

    if B.krull_dim != 1:
        raise ValueError("B must be one-dimensional")
    if check_t:
        regI = regularity(B) + 1
        if t < 2 * regI:
            raise ValueError(f"t = {t} is below 2 reg(I_B) = {2 * regI}")
    P = canonical_presentation(B)
    K = canonical_module(B)
    Q = B.quotient_ring()
    R = B.ring
    p = R.char
    D = induced_map(P.transpose(), Q, t)
    homs = la.left_kernel(D, p) if D.shape[0] else np.zeros((0, 0), dtype=np.int64)
    if homs.shape[0] == 0:
        raise ConstructionError(f"no maps K_B -> B of degree {t}")
    blocks = [Q.dim(t + b) for b in P.target]
    offs = np.concatenate([[0], np.cumsum(blocks)]).astype(int)
    top = t + 1
    HB = B.hilbert_series().values(top)
    want = [HB[v] - K.dim(v - t) for v in range(top + 1)]
    for attempt in range(1, tries + 1):
        c = rng.integers(0, p, size=homs.shape[0])
        sigma = la.matmul(c[None, :], homs, p)[0]
        images = [Q.lift(sigma[offs[l]:offs[l + 1]], t + b) for l, b in enumerate(P.target)]
        A = Ideal(R, list(B.gens) + [f for f in images if f.terms])
        got = A.hilbert_series().values(top)
        h = got[:-1]
        if got == want and got[-1] == 0 and h == h[::-1] and A.is_artinian():
            return GorensteinSection(A, t, got[:-1], attempt)
        log.info("section of degree %d is degenerate (attempt %d): %s", t, attempt, got)
    raise ConstructionError("retry budget exhausted while choosing a section")


def is_gorenstein_artinian(I: Ideal) -> bool:
    """Artinian with a one-dimensional socle."""
    if not I.is_artinian():
        return False
    return sum(socle_dims(I.quotient_ring(), I.socle_degree())) == 1


# level algebras from pencils of forms

def pencil_algebra(ring: PolyRing, j: int, rng: np.random.Generator, quartics: int = 0, want: Sequence[int] | None = None, tries: int = 20) -> tuple[Ideal, list[Polynomial]]:
    """``R/ann(F_1, F_2)`` for two forms of degree ``j`` killed by ``quartics`` random quartics."""
    D = dual_ring(ring)
    for attempt in range(1, tries + 1):
        if quartics:
            qs = [_random_form(ring, 4, rng) for _ in range(quartics)]
            space = forms_annihilated_by(qs, j)
            C = rng.integers(0, ring.char, size=(2, space.shape[0]))
            vecs = la.matmul(C, space, ring.char)
            forms = [Polynomial.from_vector(D, j, v) for v in vecs]
        else:
            forms = [general_form(D, j, rng) for _ in range(2)]
        I = annihilator(forms, ring=ring)
        if want is None or I.hilbert_series().values(len(want) - 1) == list(want):
            return I, forms
        log.info("pencil with %d quartics missed the Hilbert function (attempt %d)", quartics, attempt)
    raise ConstructionError("retry budget exhausted while building a pencil")


def _random_form(ring: PolyRing, d: int, rng: np.random.Generator) -> Polynomial:
    return Polynomial.from_vector(ring, d, rng.integers(0, ring.char, size=mon.num_monomials(ring.n, d)))


COMPRESSED_LEVEL_H = {
    1: [1, 3, 6, 10, 15, 12, 6, 2],
    2: [1, 3, 6, 10, 14, 12, 6, 2],
    3: [1, 3, 6, 10, 13, 12, 6, 2],
}


def compressed_level_7(i: int, rng: np.random.Generator, ring: PolyRing | None = None) -> Ideal:
    """The type-two level algebras of socle degree 7 with ``i - 1`` quartic generators."""
    ring = ring or PolyRing(("x", "y", "z"))
    I, _ = pencil_algebra(ring, 7, rng, quartics=i - 1, want=COMPRESSED_LEVEL_H[i])
    return I
