"""Buchberger's algorithm for ideals and submodules of free modules.

Elements are sparse dicts keyed by ``(component, exponents)``; ideals use a
single component.  The engine follows the normal selection strategy with
sugar degrees and applies the product and chain criteria.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Callable, Sequence

from . import monomials as mon
from .ring import ModuleMatrix, Polynomial, PolyRing

Term = tuple[int, tuple[int, ...]]
Vec = dict[Term, int]


def _deg(term: Term, twists: Sequence[int]) -> int:
    return twists[term[0]] + sum(term[1])


def _sub_multiple(f: Vec, g: Vec, c: int, m: tuple[int, ...], p: int) -> None:
    """``f -= c * m * g`` in place."""
    for (comp, e), v in g.items():
        t = (comp, tuple(a + b for a, b in zip(e, m)))
        nv = (f.get(t, 0) - c * v) % p
        if nv:
            f[t] = nv
        else:
            f.pop(t, None)


class _Engine:
    def __init__(self, p: int, key: Callable[[Term], tuple], twists: Sequence[int], ideal: bool):
        self.p = p
        self.key = key
        self.twists = twists
        self.ideal = ideal
        self.G: list[Vec] = []
        self.LT: list[Term] = []
        self.sugar: list[int] = []
        self.alive: list[bool] = []

    def lead(self, f: Vec) -> Term:
        return max(f, key=self.key)

    def _reducer(self, t: Term) -> int:
        comp, e = t
        for i, (c2, e2) in enumerate(self.LT):
            if self.alive[i] and c2 == comp and mon.divides(e2, e):
                return i
        return -1

    def reduce_top(self, f: Vec) -> Vec:
        p = self.p
        while f:
            t = self.lead(f)
            i = self._reducer(t)
            if i < 0:
                return f
            _sub_multiple(f, self.G[i], f[t], mon.quotient(t[1], self.LT[i][1]), p)
        return f

    def reduce_full(self, f: Vec, skip: int = -1) -> Vec:
        p = self.p
        done: Vec = {}
        f = dict(f)
        while f:
            t = self.lead(f)
            comp, e = t
            hit = -1
            for i, (c2, e2) in enumerate(self.LT):
                if i != skip and self.alive[i] and c2 == comp and mon.divides(e2, e):
                    hit = i
                    break
            if hit < 0:
                done[t] = f.pop(t)
            else:
                _sub_multiple(f, self.G[hit], f[t], mon.quotient(e, self.LT[hit][1]), p)
        return done

    def monic(self, f: Vec) -> Vec:
        t = self.lead(f)
        inv = pow(f[t], self.p - 2, self.p)
        return {k: v * inv % self.p for k, v in f.items()}

    def run(self, inputs: list[Vec]) -> list[Vec]:
        p = self.p
        queue: list = []
        counter = 0
        pending: set[tuple[int, int]] = set()
        for f in inputs:
            f = {k: v % p for k, v in f.items() if v % p}
            if f:
                s = max(_deg(t, self.twists) for t in f)
                heapq.heappush(queue, (s, counter, ("input", f)))
                counter += 1
        while queue:
            s, _, item = heapq.heappop(queue)
            if item[0] == "pair":
                i, j = item[1], item[2]
                pending.discard((i, j))
                if not (self.alive[i] and self.alive[j]):
                    continue
                if self._chain(i, j, pending):
                    continue
                f = self._spoly(i, j)
            else:
                f = dict(item[1])
            f = self.reduce_top(f)
            if not f:
                continue
            f = self.monic(f)
            k = len(self.G)
            self.G.append(f)
            self.LT.append(self.lead(f))
            self.sugar.append(s)
            self.alive.append(True)
            for i in range(k):
                if not self.alive[i] or self.LT[i][0] != self.LT[k][0]:
                    continue
                e1, e2 = self.LT[i][1], self.LT[k][1]
                if self.ideal and all(a == 0 or b == 0 for a, b in zip(e1, e2)):
                    continue
                L = mon.lcm(e1, e2)
                ps = max(self.sugar[i] + sum(L) - sum(e1), s + sum(L) - sum(e2))
                heapq.heappush(queue, (ps, counter, ("pair", i, k)))
                pending.add((i, k))
                counter += 1
        return self._reduced()

    def _chain(self, i: int, j: int, pending: set) -> bool:
        comp = self.LT[i][0]
        L = mon.lcm(self.LT[i][1], self.LT[j][1])
        for k in range(len(self.G)):
            if k in (i, j) or not self.alive[k] or self.LT[k][0] != comp:
                continue
            if mon.divides(self.LT[k][1], L):
                if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                    return True
        return False

    def _spoly(self, i: int, j: int) -> Vec:
        ei, ej = self.LT[i][1], self.LT[j][1]
        L = mon.lcm(ei, ej)
        f: Vec = {}
        _sub_multiple(f, self.G[i], -1, mon.quotient(L, ei), self.p)
        _sub_multiple(f, self.G[j], 1, mon.quotient(L, ej), self.p)
        return f

    def _reduced(self) -> list[Vec]:
        n = len(self.G)
        for i in range(n):
            if not self.alive[i]:
                continue
            for j in range(n):
                if i != j and self.alive[j] and self.LT[j][0] == self.LT[i][0] \
                        and mon.divides(self.LT[j][1], self.LT[i][1]) \
                        and (self.LT[j] != self.LT[i] or j < i):
                    self.alive[i] = False
                    break
        out = []
        for i in range(n):
            if self.alive[i]:
                g = self.monic(self.reduce_full(self.G[i], skip=i))
                out.append(g)
        out.sort(key=lambda g: self.key(self.lead(g)))
        return out


def _poly_to_vec(f: Polynomial) -> Vec:
    return {(0, e): c for e, c in f.terms.items()}


def _vec_to_poly(ring: PolyRing, v: Vec) -> Polynomial:
    return Polynomial(ring, {e: c for (_, e), c in v.items()})


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic Gröbner basis sorted by increasing leading monomial."""

    ring: PolyRing
    polys: tuple[Polynomial, ...]

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [g.leading_monomial() for g in self.polys]

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def is_unit(self) -> bool:
        return any(g.degree() == 0 for g in self.polys)


def buchberger(ring: PolyRing, polys: Sequence[Polynomial]) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``polys``."""
    eng = _Engine(ring.char, lambda t: ring.key(t[1]), (0,), ideal=True)
    out = eng.run([_poly_to_vec(f) for f in polys if f.terms])
    return GroebnerBasis(ring, tuple(_vec_to_poly(ring, g) for g in out))


def normal_form(f: Polynomial, gb: GroebnerBasis | Sequence[Polynomial]) -> Polynomial:
    """Fully reduced remainder of ``f`` by a Gröbner basis."""
    polys = gb.polys if isinstance(gb, GroebnerBasis) else tuple(gb)
    ring = f.ring
    if not polys:
        return f
    eng = _Engine(ring.char, lambda t: ring.key(t[1]), (0,), ideal=True)
    for g in polys:
        v = eng.monic(_poly_to_vec(g))
        eng.G.append(v)
        eng.LT.append(eng.lead(v))
        eng.sugar.append(0)
        eng.alive.append(True)
    return _vec_to_poly(ring, eng.reduce_full(_poly_to_vec(f)))


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    mf, mg = f.leading_monomial(), g.leading_monomial()
    m = mon.lcm(mf, mg)
    p = f.ring.char
    cf = pow(f.leading_coefficient(), p - 2, p)
    cg = pow(g.leading_coefficient(), p - 2, p)
    return f.mul_monomial(mon.quotient(m, mf), cf) - g.mul_monomial(mon.quotient(m, mg), cg)


def is_reduced_groebner(gb: GroebnerBasis) -> bool:
    """Buchberger's criterion on every pair, monic elements and no term of any element in another's lead ideal."""
    polys = gb.polys
    for k, g in enumerate(polys):
        if g.leading_coefficient() != 1:
            return False
        others = [h.leading_monomial() for i, h in enumerate(polys) if i != k]
        if any(mon.divides(a, m) for m in g.terms for a in others):
            return False
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if normal_form(s_polynomial(polys[i], polys[j]), gb).terms:
                return False
    return True


# modules

def _pot_key(ring: PolyRing):
    return lambda t: (-t[0], ring.key(t[1]))


def module_groebner(ring: PolyRing, twists: Sequence[int], vectors: Sequence[Sequence[Polynomial]]):
    """Reduced Gröbner basis (position over term) of a submodule of ``⊕R(-twists)``.

    Returns a list of vectors, each a list of polynomials.
    """
    r = len(twists)
    elems = []
    for vec in vectors:
        v: Vec = {}
        for comp, f in enumerate(vec):
            for e, c in f.terms.items():
                v[(comp, e)] = c
        if v:
            elems.append(v)
    eng = _Engine(ring.char, _pot_key(ring), tuple(twists), ideal=(r == 1))
    out = eng.run(elems)
    return [_unpack(ring, g, r) for g in out]


def _unpack(ring: PolyRing, v: Vec, r: int, offset: int = 0) -> list[Polynomial]:
    comps: list[dict] = [dict() for _ in range(r)]
    for (comp, e), c in v.items():
        if offset <= comp < offset + r:
            comps[comp - offset][e] = c
    return [Polynomial(ring, t) for t in comps]


def syzygies(M: ModuleMatrix) -> ModuleMatrix:
    """Generating matrix of ``ker(M)`` via the augmented position-over-term basis.

    The returned generators are pruned to a minimal set.
    """
    ring = M.ring
    r, m = M.shape
    twists = tuple(M.target) + tuple(M.source)
    elems = []
    for i in range(m):
        v: Vec = {}
        for j in range(r):
            for e, c in M.entries[j][i].terms.items():
                v[(j, e)] = c
        v[(r + i, (0,) * ring.n)] = 1
        elems.append(v)
    eng = _Engine(ring.char, _pot_key(ring), twists, ideal=False)
    out = eng.run(elems)
    syz = []
    for g in out:
        comp = eng.lead(g)[0]
        if comp >= r:
            syz.append(_unpack(ring, g, m, offset=r))
    from .pieces import minimal_module_generators

    cols, degs = minimal_module_generators(ring, tuple(M.source), syz)
    rows = [[cols[k][i] for k in range(len(cols))] for i in range(m)]
    return ModuleMatrix(ring, tuple(M.source), tuple(degs), rows)
