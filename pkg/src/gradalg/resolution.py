"""Minimal graded free resolutions, Betti tables and regularity.

The resolution of ``R/I`` is built degree by degree.  At homological step
``j`` and degree ``e`` the new generators of ``G_j`` are a complement of
``R_1 K_{e-1}`` inside ``K_e = ker(d_{j-1})_e``, so no map has a unit
entry.  Degrees are bounded by ``reg(R/I) + j``, where the regularity is
computed exactly from saturations and general hyperplane sections.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

import numpy as np

from . import linalg as la
from .hilbert import hilbert_from_betti
from .ideal import Ideal, hyperplane_section, saturate_linear_form
from .pieces import FreeModule, induced_map, polynomial_ring_quotient
from .ring import ModuleMatrix, PolyRing

log = logging.getLogger(__name__)


@dataclass
class BettiTable:
    """Graded Betti numbers of ``R/I``: ``ranks[(j, shift)]`` for ``j >= 1``."""

    ranks: dict[tuple[int, int], int]
    n: int

    def __post_init__(self):
        self.ranks = {k: v for k, v in self.ranks.items() if v}

    @property
    def length(self) -> int:
        return max((j for j, _ in self.ranks), default=0)

    def shifts(self, j: int) -> list[int]:
        """Shifts of ``G_j`` with multiplicity, descending."""
        out = []
        for (jj, s), r in sorted(self.ranks.items(), key=lambda t: -t[0][1]):
            if jj == j:
                out.extend([s] * r)
        return out

    def module(self, j: int) -> dict[int, int]:
        return {s: r for (jj, s), r in self.ranks.items() if jj == j}

    def total(self, j: int) -> int:
        return sum(self.module(j).values())

    def regularity(self) -> int:
        """``reg(I) = max(n_{j,i} - j + 1)``; the quotient has one less."""
        return max((s - j + 1 for (j, s) in self.ranks), default=0)

    def as_dict(self) -> dict:
        rows = [{"j": j, "n": s, "r": r} for (j, s), r in sorted(self.ranks.items())]
        return {"betti": rows, "reg": self.regularity()}

    def hilbert(self, v_max: int) -> list[int]:
        return hilbert_from_betti(self.ranks, self.n, v_max)

    def format_module(self, j: int) -> str:
        parts = [f"R(-{s})^{r}" if r > 1 else f"R(-{s})" for s, r in sorted(self.module(j).items(), reverse=True)]
        return " ⊕ ".join(parts) if parts else "0"

    def format_resolution(self) -> str:
        terms = [self.format_module(j) for j in range(self.length, 0, -1)]
        return "0 → " + " → ".join(terms) + " → R"

    def __str__(self) -> str:
        L = self.length
        rows = sorted({s - j for (j, s) in self.ranks} | {0})
        width = max([len(str(r)) for r in self.ranks.values()] + [len(str(self.total(j))) for j in range(L + 1)] + [1])
        head = "       " + " ".join(str(j).rjust(width) for j in range(L + 1))
        totals = "total: " + " ".join(str(1 if j == 0 else self.total(j)).rjust(width) for j in range(L + 1))
        lines = [head, totals]
        for k in rows:
            cells = []
            for j in range(L + 1):
                if j == 0:
                    v = 1 if k == 0 else 0
                else:
                    v = self.ranks.get((j, j + k), 0)
                cells.append((str(v) if v else ".").rjust(width))
            lines.append(f"{k:>5}: " + " ".join(cells))
        return "\n".join(lines)

    @classmethod
    def from_modules(cls, n: int, modules: Sequence[dict[int, int]]) -> "BettiTable":
        """Build from ``[{shift: rank} for G_1, G_2, ...]``."""
        ranks = {}
        for j, m in enumerate(modules, start=1):
            for s, r in m.items():
                ranks[(j, s)] = r
        return cls(ranks, n)

    def __eq__(self, other) -> bool:
        return isinstance(other, BettiTable) and self.ranks == other.ranks and self.n == other.n


@dataclass
class Resolution:
    ring: PolyRing
    maps: list[ModuleMatrix]
    betti: BettiTable
    reg_quotient: int
    complete: bool = True

    def twists(self, j: int) -> tuple[int, ...]:
        if j == 0:
            return (0,)
        return self.maps[j - 1].source

    @property
    def length(self) -> int:
        return len(self.maps)


# regularity

def _finite_part_degree(num_diff: list[int], n: int) -> int:
    """Top degree of a finite-length series ``D(t)/(1-t)^n``; ``-1`` when zero."""
    q = list(num_diff)
    for _ in range(n):
        if not any(q):
            return -1
        out, acc = [], 0
        for c in q[:-1]:
            acc += c
            out.append(acc)
        if acc + q[-1] != 0:
            raise ArithmeticError("difference series is not of finite length")
        q = out or [0]
    while len(q) > 1 and q[-1] == 0:
        q.pop()
    return len(q) - 1 if any(q) else -1


def _random_coeffs(ring: PolyRing, rng: np.random.Generator) -> list[int]:
    return [int(c) for c in rng.integers(1, ring.char, size=ring.n)]


def regularity(I: Ideal, rng: np.random.Generator | None = None, tries: int = 5) -> int:
    """Castelnuovo–Mumford regularity of ``R/I``."""
    rng = rng if rng is not None else np.random.default_rng(20250101)
    if I.is_unit():
        raise ValueError("unit ideal")
    hs = I.hilbert_series()
    d = hs.krull_dim
    if d == 0:
        return I.socle_degree()
    J = saturate_linear_form(I, _random_coeffs(I.ring, rng))
    nI, nJ = list(hs.numerator), list(J.hilbert_series().numerator)
    diff = [(nI[k] if k < len(nI) else 0) - (nJ[k] if k < len(nJ) else 0) for k in range(max(len(nI), len(nJ)))]
    end0 = _finite_part_degree(diff, I.ring.n)
    return max(end0, _regularity_saturated(J, rng, tries))


def _regularity_saturated(J: Ideal, rng: np.random.Generator, tries: int) -> int:
    hs = J.hilbert_series()
    d = hs.krull_dim
    if d == 1:
        e = hs.multiplicity
        top = len(hs.numerator) + 1
        last = -1
        for v in range(top + 1):
            if hs.value(v) < e:
                last = v
        return last + 1
    for attempt in range(tries):
        coeffs = _random_coeffs(J.ring, rng)
        J1 = hyperplane_section(J, coeffs)
        n1 = list(J1.hilbert_series().numerator)
        if n1 == list(hs.numerator):
            return regularity(J1, rng, tries)
        log.info("linear form %s is a zero divisor; retrying (attempt %d)", coeffs, attempt + 1)
    raise RuntimeError("no nonzerodivisor found on a saturated quotient")


# resolution

def minimal_free_resolution(
    I: Ideal,
    max_level: int | None = None,
    rng: np.random.Generator | None = None,
    reg: int | None = None,
) -> Resolution:
    """Minimal graded free resolution of ``R/I``.

    ``maps[j-1]`` is ``d_j : G_j -> G_{j-1}``.  With ``max_level`` only the
    first steps are built (``complete`` is then ``False`` if more exist).
    """
    ring = I.ring
    n = ring.n
    p = ring.char
    if I.is_unit():
        raise ValueError("the unit ideal has no resolution of R/I")
    gens = I.minimal_generators()
    if not gens:
        return Resolution(ring, [], BettiTable({}, n), 0)
    if reg is None:
        reg = regularity(I, rng)
    R0 = polynomial_ring_quotient(ring)
    d1 = ModuleMatrix(ring, (0,), tuple(g.degree() for g in gens), [list(gens)])
    maps = [d1]
    top_level = n if max_level is None else min(n, max_level)
    complete = True
    for j in range(2, n + 1):
        prev = maps[-1]
        if j > top_level:
            complete = _has_more(prev, R0, reg + j, p)
            break
        F = FreeModule(R0, prev.source)
        cols: list[list] = []
        degs: list[int] = []
        K_prev = np.zeros((0, F.dim(min(prev.source))), dtype=np.int64)
        xs = ring.gens()
        for e in range(min(prev.source) + 1, reg + j + 1):
            D = induced_map(prev, R0, e)
            K = la.left_kernel(D, p) if D.shape[0] else np.zeros((0, 0), dtype=np.int64)
            if K.shape[0] == 0:
                K_prev = np.zeros((0, F.dim(e)), dtype=np.int64)
                continue
            if K_prev.shape[0]:
                old = np.vstack([la.matmul(K_prev, F.act(x, e - 1), p) for x in xs])
                base, bpiv = la.rref(old, p)
            else:
                base, bpiv = np.zeros((0, K.shape[1]), dtype=np.int64), []
            chosen, _, _ = la.extend_basis(base, bpiv, K, p)
            for c in chosen:
                cols.append(F.to_polys(K[c], e))
                degs.append(e)
            K_prev = K
        if not cols:
            break
        rows = [[cols[k][i] for k in range(len(cols))] for i in range(len(prev.source))]
        maps.append(ModuleMatrix(ring, prev.source, tuple(degs), rows))
    ranks: dict[tuple[int, int], int] = {}
    for j, m in enumerate(maps, start=1):
        for s in m.source:
            ranks[(j, s)] = ranks.get((j, s), 0) + 1
    betti = BettiTable(ranks, n)
    res = Resolution(ring, maps, betti, reg, complete)
    if complete and max_level is None:
        _check_euler(I, betti, reg + n + 1)
    return res


def _has_more(prev: ModuleMatrix, R0, top: int, p: int) -> bool:
    for e in range(min(prev.source) + 1, top + 1):
        D = induced_map(prev, R0, e)
        if D.shape[0] and la.rank(D, p) < D.shape[0]:
            return True
    return False


def _check_euler(I: Ideal, betti: BettiTable, v_max: int) -> None:
    got = betti.hilbert(v_max)
    want = I.hilbert_series().values(v_max)
    if got != want:
        raise ArithmeticError(f"Euler characteristic mismatch: {got} vs {want}")


def resolution_of(I: Ideal, levels: int | None = None) -> Resolution:
    """Cached resolution of ``R/I``; ``levels`` limits the homological steps."""
    full = I._cache.get(("res", None))
    if full is not None:
        return full
    if levels is not None and levels >= I.ring.n:
        levels = None
    key = ("res", levels)
    if key not in I._cache:
        for (tag, lv), r in list(I._cache.items()):
            if tag == "res" and lv is not None and levels is not None and lv >= levels:
                return r
        I._cache[key] = minimal_free_resolution(I, max_level=levels)
    return I._cache[key]


def betti_numbers(I: Ideal, rng: np.random.Generator | None = None) -> BettiTable:
    return minimal_free_resolution(I, rng=rng).betti


def is_complex(res: Resolution) -> bool:
    return all(res.maps[k].compose(res.maps[k + 1]).is_zero() for k in range(len(res.maps) - 1))


def is_minimal(res: Resolution) -> bool:
    return not any(m.has_unit_entry() for m in res.maps)


@dataclass
class Classification:
    kind: str  # "gorenstein", "level", "cohen-macaulay" or "general"
    cm: bool
    type: int
    socle_shifts: list[int] = field(default_factory=list)


def classify_resolution(b: BettiTable, codim: int) -> Classification:
    """Gorenstein / level / CM from the last module of a minimal resolution."""
    cm = b.length == codim
    last = b.module(b.length) if b.length else {}
    t = sum(last.values())
    if not cm:
        return Classification("general", False, t, sorted(last))
    if t == 1:
        return Classification("gorenstein", True, 1, sorted(last))
    if len(last) == 1:
        return Classification("level", True, t, sorted(last))
    return Classification("cohen-macaulay", True, t, sorted(last))


def is_semilinear(b: BettiTable, j: int) -> bool:
    """Every shift of ``G_i`` lies in ``{j + i - 1, j + i}``."""
    return all(s in (j + i - 1, j + i) for (i, s) in b.ranks)


def regularity_from_betti(b: BettiTable) -> int:
    return b.regularity()


def free_rank(n: int, d: int) -> int:
    return comb(n + d - 1, n - 1) if d >= 0 else 0


def differs_by_ghost_pairs(big: BettiTable, small: BettiTable) -> bool:
    """``big`` is ``small`` plus pairs ``R(-s)`` in consecutive modules ``G_j, G_{j+1}``.

    Such pairs cancel in a consecutive cancellation, so both tables give
    the same Hilbert function.
    """
    diff = {}
    for key in set(big.ranks) | set(small.ranks):
        d = big.ranks.get(key, 0) - small.ranks.get(key, 0)
        if d < 0:
            return False
        if d:
            diff[key] = d
    for (j, s) in sorted(diff):
        r = diff.get((j, s), 0)
        if not r:
            continue
        if diff.get((j + 1, s), 0) < r:
            return False
        diff[(j, s)] = 0
        diff[(j + 1, s)] -= r
    return not any(diff.values())


def is_dominated(small: BettiTable, big: BettiTable) -> bool:
    """Every ``(j, n)`` multiplicity of ``small`` is at most that of ``big``."""
    return all(big.ranks.get(k, 0) >= r for k, r in small.ranks.items())


def comparable(a: BettiTable, b: BettiTable) -> bool:
    return is_dominated(a, b) or is_dominated(b, a)
