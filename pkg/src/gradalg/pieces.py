"""Graded pieces of quotient rings and finitely generated graded modules.

Everything here is finite dimensional linear algebra in one degree at a
time.  A *graded module* is any object with ``dim(d)``, ``act(c, d)`` and a
``ring`` attribute; ``act(c, d)`` is the matrix of multiplication by the
homogeneous polynomial ``c`` from degree ``d`` to ``d + deg c``.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from . import linalg as la
from . import monomials as mon
from .ring import ModuleMatrix, Polynomial, PolyRing


def _poly_key(c: Polynomial):
    return tuple(sorted(c.terms.items()))


class QuotientRing:
    """``A = R/I`` for a homogeneous ideal given by a reduced Gröbner basis.

    Coordinates on ``A_d`` are the standard monomials of degree ``d`` in
    descending order.  ``nf(d)`` maps monomial coordinates of ``R_d`` to
    coordinates of ``A_d``.
    """

    def __init__(self, ring: PolyRing, gb_polys: Sequence[Polynomial] = ()):
        self.ring = ring
        self.p = ring.char
        self.gb = [g.monic() for g in gb_polys if g.terms]
        self.lts = [g.leading_monomial() for g in self.gb]
        self._std: dict[int, np.ndarray] = {}
        self._nf: dict[int, np.ndarray] = {}
        self._act: dict = {}
        self.unit = any(sum(e) == 0 for e in self.lts)

    def _build(self, d: int) -> None:
        n = self.ring.n
        mons = mon.monomials(n, d)
        N = len(mons)
        if d < 0:
            self._std[d] = np.zeros(0, dtype=np.int64)
            self._nf[d] = np.zeros((0, 0), dtype=np.int64)
            return
        is_std = np.array([not any(mon.divides(t, m) for t in self.lts) for m in mons], dtype=bool)
        std = np.flatnonzero(is_std)
        col = -np.ones(N, dtype=np.int64)
        col[std] = np.arange(len(std))
        nf = np.zeros((N, len(std)), dtype=np.int64)
        nf[std, np.arange(len(std))] = 1
        idx = mon.monomial_index(n, d)
        p = self.p
        # ascending order: tails of a reducer are already in normal form
        for r in range(N - 1, -1, -1):
            if is_std[r]:
                continue
            b = mons[r]
            for g, t in zip(self.gb, self.lts):
                if mon.divides(t, b):
                    break
            u = mon.quotient(b, t)
            rows, coefs = [], []
            for e, c in g.terms.items():
                if e == t:
                    continue
                rows.append(idx[tuple(a + s for a, s in zip(e, u))])
                coefs.append(c)
            if rows:
                nf[r] = (-(np.array(coefs, dtype=np.int64) @ nf[rows])) % p
        self._std[d] = std
        self._nf[d] = nf

    def std(self, d: int) -> np.ndarray:
        if d not in self._std:
            self._build(d)
        return self._std[d]

    def nf(self, d: int) -> np.ndarray:
        if d not in self._nf:
            self._build(d)
        return self._nf[d]

    def dim(self, d: int) -> int:
        if d < 0:
            return 0
        return len(self.std(d))

    def standard_monomials(self, d: int) -> list[tuple[int, ...]]:
        mons = mon.monomials(self.ring.n, d)
        return [mons[i] for i in self.std(d)]

    def reduce(self, V: np.ndarray, d: int) -> np.ndarray:
        """Monomial coordinates in ``R_d`` to coordinates in ``A_d``."""
        return la.matmul(np.atleast_2d(V), self.nf(d), self.p)

    def reduce_poly(self, f: Polynomial, d: int | None = None) -> np.ndarray:
        if d is None:
            d = f.degree()
        if not f.terms:
            return np.zeros(self.dim(d), dtype=np.int64)
        return self.reduce(f.to_vector(d)[None, :], d)[0]

    def lift(self, coords, d: int) -> Polynomial:
        mons = mon.monomials(self.ring.n, d)
        std = self.std(d)
        return Polynomial(self.ring, {mons[std[i]]: int(c) for i, c in enumerate(coords) if int(c)})

    def ideal_piece(self, d: int) -> tuple[np.ndarray, list[int]]:
        """RREF basis of ``I_d`` inside ``R_d`` with its pivots."""
        N = mon.num_monomials(self.ring.n, d)
        if d < 0:
            return np.zeros((0, 0), dtype=np.int64), []
        std = self.std(d)
        mask = np.ones(N, dtype=bool)
        mask[std] = False
        piv = list(np.flatnonzero(mask))
        B = np.zeros((len(piv), N), dtype=np.int64)
        nf = self.nf(d)
        for r, c in enumerate(piv):
            B[r, c] = 1
            B[r, std] = (-nf[c]) % self.p
        return B, [int(c) for c in piv]

    def act(self, c: Polynomial, d: int) -> np.ndarray:
        """Multiplication by ``c``: ``A_d -> A_{d + deg c}``."""
        key = (_poly_key(c), d)
        if key in self._act:
            return self._act[key]
        if not c.terms:
            raise ValueError("act needs a nonzero homogeneous polynomial; use zero blocks instead")
        b = c.degree()
        n = self.ring.n
        dst = self.dim(d + b)
        src_std = self.std(d) if d >= 0 else np.zeros(0, dtype=np.int64)
        M = np.zeros((len(src_std), dst), dtype=np.int64)
        if len(src_std) and dst:
            nf = self.nf(d + b)
            for e, coef in c.terms.items():
                idx = mon.mult_index(n, d, e)[src_std]
                M = (M + coef * nf[idx]) % self.p
        if len(self._act) < 20000:
            self._act[key] = M
        return M


@lru_cache(maxsize=None)
def polynomial_ring_quotient(ring: PolyRing) -> QuotientRing:
    """``R`` itself, viewed as the quotient by the zero ideal."""
    return QuotientRing(ring, ())


class FreeModule:
    """``⊕ Q(-t_i)`` over a quotient ring ``Q``."""

    def __init__(self, Q: QuotientRing, twists: Sequence[int]):
        self.Q = Q
        self.ring = Q.ring
        self.p = Q.p
        self.twists = tuple(int(t) for t in twists)

    def block_dims(self, d: int) -> list[int]:
        return [self.Q.dim(d - t) for t in self.twists]

    def dim(self, d: int) -> int:
        return sum(self.block_dims(d))

    def offsets(self, d: int) -> list[int]:
        out = [0]
        for k in self.block_dims(d):
            out.append(out[-1] + k)
        return out

    def act(self, c: Polynomial, d: int) -> np.ndarray:
        b = c.degree()
        o1, o2 = self.offsets(d), self.offsets(d + b)
        M = np.zeros((o1[-1], o2[-1]), dtype=np.int64)
        for i, t in enumerate(self.twists):
            if o1[i + 1] > o1[i] and o2[i + 1] > o2[i]:
                M[o1[i]:o1[i + 1], o2[i]:o2[i + 1]] = self.Q.act(c, d - t)
        return M

    def vector(self, comps: Sequence[Polynomial], d: int) -> np.ndarray:
        """Ambient coordinates of a homogeneous element of degree ``d``."""
        parts = []
        for f, t in zip(comps, self.twists):
            k = self.Q.dim(d - t)
            if f.terms:
                if f.degree() != d - t:
                    raise ValueError("component has the wrong degree")
                parts.append(self.Q.reduce_poly(f, d - t))
            else:
                parts.append(np.zeros(k, dtype=np.int64))
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def to_polys(self, v: np.ndarray, d: int) -> list[Polynomial]:
        o = self.offsets(d)
        return [self.Q.lift(v[o[i]:o[i + 1]], d - t) for i, t in enumerate(self.twists)]


def element_degree(comps: Sequence[Polynomial], twists: Sequence[int]) -> int:
    degs = {f.degree() + t for f, t in zip(comps, twists) if f.terms}
    if len(degs) != 1:
        raise ValueError("element is zero or not homogeneous")
    return degs.pop()


class GradedSpan:
    """Submodule of a free module generated by homogeneous elements.

    ``piece(d)`` is an RREF basis of the degree ``d`` part; ``minimal(d)``
    lists the indices of generators of degree ``d`` kept as minimal ones.
    """

    def __init__(self, ambient: FreeModule, gens: Sequence[tuple[int, np.ndarray]]):
        self.ambient = ambient
        self.p = ambient.p
        self.gens = list(gens)
        self.by_deg: dict[int, list[int]] = {}
        for i, (d, _) in enumerate(self.gens):
            self.by_deg.setdefault(d, []).append(i)
        self.min_deg = min(self.by_deg) if self.by_deg else None
        self.max_gen_deg = max(self.by_deg) if self.by_deg else None
        self._pieces: dict[int, tuple[np.ndarray, list[int]]] = {}
        self._minimal: dict[int, list[int]] = {}
        self._vars = [self.ambient.ring.gen(k) for k in range(self.ambient.ring.n)]

    def piece(self, d: int) -> tuple[np.ndarray, list[int]]:
        if d in self._pieces:
            return self._pieces[d]
        N = self.ambient.dim(d)
        if self.min_deg is None or d < self.min_deg:
            res = (np.zeros((0, N), dtype=np.int64), [])
            self._pieces[d] = res
            self._minimal[d] = []
            return res
        prev, _ = self.piece(d - 1)
        blocks = [la.matmul(prev, self.ambient.act(x, d - 1), self.p) for x in self._vars] if prev.shape[0] else []
        base = np.vstack(blocks) if blocks else np.zeros((0, N), dtype=np.int64)
        B, piv = la.rref(base, self.p) if base.shape[0] else (np.zeros((0, N), dtype=np.int64), [])
        idxs = self.by_deg.get(d, [])
        if idxs:
            cand = np.vstack([self.gens[i][1] for i in idxs])
            chosen, B, piv = la.extend_basis(B, piv, cand, self.p)
            self._minimal[d] = [idxs[c] for c in chosen]
        else:
            self._minimal[d] = []
        self._pieces[d] = (B, piv)
        return B, piv

    def dim(self, d: int) -> int:
        return self.piece(d)[0].shape[0]

    def minimal(self, d: int) -> list[int]:
        self.piece(d)
        return self._minimal[d]

    def minimal_generators(self) -> list[int]:
        if self.max_gen_deg is None:
            return []
        out = []
        for d in range(self.min_deg, self.max_gen_deg + 1):
            out.extend(self.minimal(d))
        return out


class SubQuotient:
    """``U/W`` with ``W ⊂ U`` submodules of a free module over ``Q``.

    ``U`` defaults to the whole free module.  Coordinates on ``(U/W)_d`` come
    from an RREF basis of ``U_d`` reduced modulo ``W_d``.
    """

    def __init__(self, ambient: FreeModule, U_gens=None, W_gens=()):
        self.ambient = ambient
        self.ring = ambient.ring
        self.p = ambient.p
        self.U = None if U_gens is None else GradedSpan(ambient, U_gens)
        self.W = GradedSpan(ambient, W_gens)
        self._basis: dict[int, tuple[np.ndarray, list[int]]] = {}
        self._act: dict = {}

    def u_piece(self, d: int) -> np.ndarray:
        if self.U is None:
            return np.eye(self.ambient.dim(d), dtype=np.int64)
        return self.U.piece(d)[0]

    def basis(self, d: int) -> tuple[np.ndarray, list[int]]:
        if d not in self._basis:
            Wb, Wp = self.W.piece(d)
            U = self.u_piece(d)
            Ur = la.reduce_rows(U, Wb, Wp, self.p) if U.shape[0] else U
            if Ur.shape[0]:
                self._basis[d] = la.rref(Ur, self.p)
            else:
                self._basis[d] = (np.zeros((0, self.ambient.dim(d)), dtype=np.int64), [])
        return self._basis[d]

    def dim(self, d: int) -> int:
        return self.basis(d)[0].shape[0]

    def coords(self, V: np.ndarray, d: int) -> np.ndarray:
        """Coordinates of ambient vectors lying in ``U_d``."""
        Wb, Wp = self.W.piece(d)
        Vr = la.reduce_rows(np.atleast_2d(V), Wb, Wp, self.p)
        _, piv = self.basis(d)
        return Vr[:, piv] % self.p

    def act(self, c: Polynomial, d: int) -> np.ndarray:
        key = (_poly_key(c), d)
        if key in self._act:
            return self._act[key]
        B, _ = self.basis(d)
        b = c.degree()
        if B.shape[0] == 0:
            M = np.zeros((0, self.dim(d + b)), dtype=np.int64)
        else:
            M = self.coords(la.matmul(B, self.ambient.act(c, d), self.p), d + b)
        self._act[key] = M
        return M


def span_from_polys(ambient: FreeModule, elements: Sequence[Sequence[Polynomial]]):
    gens = []
    for comps in elements:
        if all(not f.terms for f in comps):
            continue
        d = element_degree(comps, ambient.twists)
        gens.append((d, ambient.vector(comps, d)))
    return gens


def presented_module(pres: ModuleMatrix) -> SubQuotient:
    """Cokernel of a homogeneous matrix over ``R``."""
    R0 = polynomial_ring_quotient(pres.ring)
    F = FreeModule(R0, pres.target)
    cols = [pres.column(i) for i in range(len(pres.source))]
    return SubQuotient(F, None, span_from_polys(F, cols))


def submodule_of_free(ring: PolyRing, twists: Sequence[int], elements) -> SubQuotient:
    R0 = polynomial_ring_quotient(ring)
    F = FreeModule(R0, twists)
    return SubQuotient(F, span_from_polys(F, elements), ())


def induced_map(mm: ModuleMatrix, M, e: int) -> np.ndarray:
    """``⊕_i M_{e - s_i} -> ⊕_j M_{e - t_j}``, ``x ↦ (Σ_i mm[j][i] x_i)_j``."""
    src = [M.dim(e - s) for s in mm.source]
    tgt = [M.dim(e - t) for t in mm.target]
    so = np.concatenate([[0], np.cumsum(src)]).astype(int)
    to = np.concatenate([[0], np.cumsum(tgt)]).astype(int)
    out = np.zeros((so[-1], to[-1]), dtype=np.int64)
    for j, t in enumerate(mm.target):
        if tgt[j] == 0:
            continue
        for i, s in enumerate(mm.source):
            f = mm.entries[j][i]
            if src[i] == 0 or not f.terms:
                continue
            out[so[i]:so[i + 1], to[j]:to[j + 1]] = M.act(f, e - s)
    return out


def minimal_module_generators(ring: PolyRing, twists: Sequence[int], elements):
    """Minimal subset of homogeneous elements of ``⊕R(-twists)`` generating the same module."""
    R0 = polynomial_ring_quotient(ring)
    F = FreeModule(R0, twists)
    keep = [comps for comps in elements if any(f.terms for f in comps)]
    gens = span_from_polys(F, keep)
    span = GradedSpan(F, gens)
    chosen = span.minimal_generators()
    return [list(keep[i]) for i in chosen], [gens[i][0] for i in chosen]


def socle_dims(Q: QuotientRing, top: int) -> list[int]:
    """``dim (0 :_A m)_v`` for ``v = 0..top``."""
    out = []
    xs = Q.ring.gens()
    for v in range(top + 1):
        k = Q.dim(v)
        if k == 0:
            out.append(0)
            continue
        blocks = [Q.act(x, v) for x in xs if Q.dim(v + 1)]
        if not blocks:
            out.append(k)
            continue
        out.append(la.left_kernel(np.hstack(blocks), Q.p).shape[0])
    return out
