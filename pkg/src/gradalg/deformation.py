"""Tangent and obstruction computations for graded quotients.

All groups are computed one degree at a time from a minimal free
resolution ``... -> G_2 -> G_1 -> I -> 0``:

* ``Hom_R(I, M)_v`` is the kernel of ``Hom(G_1, M)_v -> Hom(G_2, M)_v``;
* ``Ext^1_R(I, M)_v`` is the middle homology one step further;
* ``(I ⊗ M)_v`` is the cokernel of ``(G_2 ⊗ M)_v -> (G_1 ⊗ M)_v``;
* ``H_2(R, A, M)_v`` is the homology of
  ``I⊗I⊗F -> I⊗N -> I⊗F`` for a presentation ``0 -> N -> F -> M -> 0``.

For the last one ``F`` is taken free over ``R``.  Then ``Tor_1(I, F) = 0``
and the kernel of ``I⊗N -> I⊗F`` is ``Tor_1(I, M)``, so the homology is
the cokernel of the antisymmetrization map into ``Tor_1``.
"""
from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field
from itertools import combinations

import numpy as np

from . import linalg as la
from . import monomials as mon
from .apolarity import annihilator, is_complementary
from .ideal import Ideal
from .pieces import (
    FreeModule,
    QuotientRing,
    SubQuotient,
    induced_map,
    polynomial_ring_quotient,
    presented_module,
    span_from_polys,
    submodule_of_free,
)
from .resolution import Resolution, resolution_of
from .ring import ModuleMatrix

log = logging.getLogger(__name__)


def _as_module(M):
    if isinstance(M, Ideal):
        return M.quotient_ring()
    if isinstance(M, ModuleMatrix):
        return presented_module(M)
    return M


def _rank(M: np.ndarray, p: int) -> int:
    return la.rank(M, p) if M.size else 0


def _d(res: Resolution, j: int) -> ModuleMatrix | None:
    """``d_j : G_j -> G_{j-1}`` or ``None`` past the end of the resolution."""
    return res.maps[j - 1] if j - 1 < len(res.maps) else None


def _hom_matrix(res: Resolution, j: int, M, v: int) -> np.ndarray:
    """``Hom(G_{j-1}, M)_v -> Hom(G_j, M)_v`` as rows acting on the left."""
    d = _d(res, j)
    src = sum(M.dim(v + t) for t in res.twists(j - 1))
    if d is None:
        return np.zeros((src, 0), dtype=np.int64)
    return induced_map(d.transpose(), M, v)


def _tensor_matrix(res: Resolution, j: int, M, v: int) -> np.ndarray:
    """``(G_j ⊗ M)_v -> (G_{j-1} ⊗ M)_v``."""
    d = _d(res, j)
    tgt = sum(M.dim(v - t) for t in res.twists(j - 1))
    if d is None:
        return np.zeros((0, tgt), dtype=np.int64)
    return induced_map(d, M, v)


def hom_dim(I: Ideal, M, v: int) -> int:
    """``dim Hom_R(I, M)_v``; ``M`` is a quotient ring, graded module or ideal (meaning ``R/I``)."""
    M = _as_module(M)
    res = resolution_of(I, 2)
    D = _hom_matrix(res, 2, M, v)
    return D.shape[0] - _rank(D, I.ring.char)


def ext1_dim(I: Ideal, M, v: int) -> int:
    """``dim Ext^1_R(I, M)_v``."""
    M = _as_module(M)
    res = resolution_of(I, 3)
    p = I.ring.char
    D1 = _hom_matrix(res, 2, M, v)
    D2 = _hom_matrix(res, 3, M, v)
    return D2.shape[0] - _rank(D2, p) - _rank(D1, p)


@dataclass
class TensorPiece:
    v: int
    dim: int
    free_dim: int
    relation_rank: int


def tensor_piece(I: Ideal, M, v: int) -> TensorPiece:
    """Degree ``v`` part of ``I ⊗_R M``."""
    M = _as_module(M)
    res = resolution_of(I, 2)
    D = _tensor_matrix(res, 2, M, v)
    free = sum(M.dim(v - t) for t in res.twists(1))
    r = _rank(D, I.ring.char)
    return TensorPiece(v, free - r, free, r)


def tensor_dim(I: Ideal, M, v: int) -> int:
    return tensor_piece(I, M, v).dim


def tor1_dim(I: Ideal, M, v: int) -> int:
    """``dim Tor_1^R(I, M)_v``."""
    M = _as_module(M)
    res = resolution_of(I, 3)
    p = I.ring.char
    D2 = _tensor_matrix(res, 2, M, v)
    D3 = _tensor_matrix(res, 3, M, v)
    return D2.shape[0] - _rank(D2, p) - _rank(D3, p)


# canonical module

def canonical_presentation(I: Ideal) -> ModuleMatrix:
    """Presentation of ``K = Ext^c_R(R/I, R(-n))`` for a Cohen-Macaulay quotient of codimension ``c``.

    The columns are the dual of ``d_c``; generators sit in degrees ``n - n_{c,i}``.
    """
    res = resolution_of(I)
    c = I.codim
    if res.length != c:
        raise ValueError(f"quotient is not Cohen-Macaulay: resolution length {res.length}, codimension {c}")
    return res.maps[c - 1].transpose(shift=I.ring.n)


def canonical_module(I: Ideal) -> SubQuotient:
    return presented_module(canonical_presentation(I))


# algebra homology H_2

def h2_dim(I: Ideal, pres: ModuleMatrix, v: int) -> int:
    """``dim H_2(R, R/I, M)_v`` for ``M = coker(pres)``, an ``R/I``-module.

    ``pres : F_1 -> F_0`` with ``F_0`` free over ``R``; ``N`` is the image.
    """
    ring = I.ring
    p = ring.char
    res = resolution_of(I, 2)
    gens = res.maps[0].entries[0]
    n1 = res.twists(1)
    R0 = polynomial_ring_quotient(ring)
    F0 = FreeModule(R0, pres.target)
    cols = [pres.column(i) for i in range(len(pres.source))]
    N = SubQuotient(F0, span_from_polys(F0, cols), ())

    # T = (G_1 ⊗ N)_v in N-coordinates; alpha: T -> F0_v, (n_i) -> sum f_i n_i
    blocks = [N.dim(v - t) for t in n1]
    offs = np.concatenate([[0], np.cumsum(blocks)]).astype(int)
    T = int(offs[-1])
    alpha = np.zeros((T, F0.dim(v)), dtype=np.int64)
    for i, (f, t) in enumerate(zip(gens, n1)):
        if blocks[i]:
            B, _ = N.basis(v - t)
            alpha[offs[i]:offs[i + 1]] = la.matmul(B, F0.act(f, v - t), p)
    ker = T - _rank(alpha, p)

    rows = [_tensor_matrix(res, 2, N, v)]
    # antisymmetrization: m*(f_a ⊗ f_b e_l - f_b ⊗ f_a e_l)
    for a, b in combinations(range(len(gens)), 2):
        for l, bl in enumerate(pres.target):
            delta = v - n1[a] - n1[b] - bl
            if delta < 0:
                continue
            k = mon.num_monomials(ring.n, delta)
            lam = np.zeros((k, T), dtype=np.int64)
            for blk, other in ((a, b), (b, a)):
                e = v - n1[blk]
                amb = np.zeros((k, F0.dim(e)), dtype=np.int64)
                o = F0.offsets(e)
                amb[:, o[l]:o[l + 1]] = R0.act(gens[other], delta)
                Ub, Up = N.U.piece(e)
                if la.reduce_rows(amb, Ub, Up, p).any():
                    raise ValueError("the ideal does not annihilate the module")
                c = N.coords(amb, e)
                lam[:, offs[blk]:offs[blk + 1]] = c if blk == a else (-c) % p
            rows.append(lam)
    S = np.vstack([r for r in rows if r.shape[0]]) if any(r.shape[0] for r in rows) else np.zeros((0, T), dtype=np.int64)
    if S.shape[0] and la.matmul(S, alpha, p).any():
        raise ArithmeticError("relations do not map to zero")
    return ker - _rank(S, p)


def quotient_presentation(J: Ideal) -> ModuleMatrix:
    """``R -> R/J`` presented by the minimal generators of ``J``."""
    gens = list(J.minimal_generators())
    return ModuleMatrix(J.ring, (0,), tuple(g.degree() for g in gens), [gens])


# Hilbert-function formulas

def epsilon(B: Ideal, A: Ideal) -> int:
    """``sum_i H_B(n_{1,i}) - H_A(n_{1,i})`` over minimal generator degrees of ``I_B``."""
    if not B.issubset(A):
        raise ValueError("I_B is not contained in I_A")
    return sum(B.hilbert(d) - A.hilbert(d) for d in B.generator_degrees())


def relative_module(B: Ideal, A: Ideal) -> SubQuotient:
    """``I_{A/B} = I_A / I_B`` as a graded module."""
    R0 = polynomial_ring_quotient(A.ring)
    F = FreeModule(R0, (0,))
    U = span_from_polys(F, [[g] for g in A.gens])
    W = span_from_polys(F, [[g] for g in B.gens])
    return SubQuotient(F, U, W)


def relative_presentation(B: Ideal, A: Ideal) -> ModuleMatrix:
    """Presentation of ``I_A/I_B`` on the minimal generators of ``I_A``."""
    ring = A.ring
    p = ring.char
    res = resolution_of(A, 2)
    d1 = res.maps[0]
    R0 = polynomial_ring_quotient(ring)
    F1 = FreeModule(R0, d1.source)
    extra, degs = [], []
    for g in B.minimal_generators():
        e = g.degree()
        D = induced_map(d1, R0, e)
        x = la.solve_left(D, g.to_vector(e), p) if D.shape[0] else None
        if x is None:
            raise ValueError("I_B is not contained in I_A")
        extra.append(F1.to_polys(x, e))
        degs.append(e)
    d2 = _d(res, 2)
    cols = [d2.column(i) for i in range(len(d2.source))] if d2 else []
    src = (d2.source if d2 else ()) + tuple(degs)
    allc = cols + extra
    rows = [[c[r] for c in allc] for r in range(len(d1.source))]
    return ModuleMatrix(ring, d1.source, src, rows)


def hom_relative(B: Ideal, A: Ideal, v: int = 0) -> int:
    """``dim Hom(I_{A/B}, A)_v``."""
    P = relative_presentation(B, A)
    D = induced_map(P.transpose(), A.quotient_ring(), v)
    return D.shape[0] - _rank(D, A.ring.char)


def balance_check(B: Ideal, A: Ideal) -> dict:
    """Both sides of ``(N_A)_0 + hom(I_B, I_{A/B}) = (N_B)_0 + hom_B(I_{A/B}, A)``."""
    NA = hom_dim(A, A, 0)
    NB = hom_dim(B, B, 0)
    left = NA + hom_dim(B, relative_module(B, A), 0)
    right = NB + hom_relative(B, A, 0)
    return {"N_A": NA, "N_B": NB, "left": left, "right": right, "ok": left == right}


def rho(I: Ideal) -> int:
    """``sum_{j,i} (-1)^(j-1) H(n_{j,i})``, checked against ``1 - sum (-1)^(j-1) H(n_{j,i} - 3)``."""
    if I.ring.n != 3 or not I.is_artinian():
        raise ValueError("needs an Artinian quotient of a 3-variable ring")
    b = resolution_of(I).betti
    H = I.hilbert
    first = sum((-1) ** (j - 1) * r * H(s) for (j, s), r in b.ranks.items())
    second = 1 - sum((-1) ** (j - 1) * r * H(s - 3) for (j, s), r in b.ranks.items())
    if first != second:
        raise ArithmeticError(f"rho identity fails: {first} != {second}")
    return first


@dataclass
class DualityReport:
    v: int
    hom: int
    ext1: int
    hilbert_side: int
    hom_dual: int
    ok: bool


def euler_duality_check(I: Ideal, v: int = 0) -> DualityReport:
    """``hom_v - ext1_v`` against the Hilbert-function sum, and ``ext1_v = hom_{-v-3}``."""
    if I.ring.n != 3 or not I.is_artinian():
        raise ValueError("needs an Artinian quotient of a 3-variable ring")
    b = resolution_of(I).betti
    H = I.hilbert
    hom = hom_dim(I, I, v)
    e1 = ext1_dim(I, I, v)
    side = sum((-1) ** (j - 1) * r * H(s + v) for (j, s), r in b.ranks.items()) - H(-v - 3)
    dual = hom_dim(I, I, -v - 3)
    return DualityReport(v, hom, e1, side, dual, hom - e1 == side and e1 == dual)


# reports

@dataclass
class DeformationReport:
    tangent: int
    ext1: dict[int, int] = field(default_factory=dict)
    epsilon: int | None = None
    rho: int | None = None
    obstruction: int | None = None
    dim_bracket: list[int] = field(default_factory=list)
    certified: bool = False
    mode: str = "bound_only"
    tensor_dual: int | None = None

    def as_dict(self) -> dict:
        d = asdict(self)
        d["ext1"] = {str(k): v for k, v in self.ext1.items()}
        return d

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def obstruction_report(I: Ideal, B: Ideal | None = None, ext_window: int = 0) -> DeformationReport:
    """Tangent space, the ``H_2(R, A, K_A)`` bound and the resulting dimension bracket for Artinian ``A``."""
    if not I.is_artinian():
        raise ValueError("needs an Artinian quotient")
    A = I.quotient_ring()
    tangent = hom_dim(I, A, 0)
    K = canonical_presentation(I)
    dual = tensor_dim(I, K, 0)
    if dual != tangent:
        raise ArithmeticError(f"tangent {tangent} differs from (I ⊗ K)_0 = {dual}")
    obs = h2_dim(I, K, 0)
    ext = {v: ext1_dim(I, A, v) for v in range(-ext_window, ext_window + 1)}
    if obs > ext[0]:
        raise ArithmeticError("obstruction bound exceeds Ext^1 in degree zero")
    rep = DeformationReport(
        tangent=tangent,
        ext1=ext,
        obstruction=obs,
        dim_bracket=[tangent - obs, tangent],
        certified=obs == 0,
        mode="unobstructed" if obs == 0 else "bound_only",
        tensor_dual=dual,
    )
    if I.ring.n == 3:
        rep.rho = rho(I)
    if B is not None:
        rep.epsilon = epsilon(B, I)
    return rep


@dataclass
class Lev2Part:
    quotient_dim: int  # dim (I_A / I_A I_{A_i})_j
    product_dim: int  # dim (I_A I_{A_i})_j
    tensor_dim: int  # dim (I_A ⊗ I_{A_i})_j
    homology: int  # degree j homology of Λ²I_A -> I_A ⊗ I_{A_i} -> I_A I_{A_i}


@dataclass
class Lev2Report:
    j: int
    hilbert: list[int]
    parts: list[Lev2Part]
    certified: bool
    dim: int | None
    tangent: int | None = None
    obstruction: int | None = None

    def as_dict(self) -> dict:
        return asdict(self)


def lev2_analysis(F1, F2, cross_check: bool = True) -> Lev2Report:
    """Type-two level quotient ``R/ann(F1, F2)`` from two complementary forms of degree ``j``."""
    if F1.degree() != F2.degree():
        raise ValueError("forms must have the same degree")
    if not is_complementary(F1, F2):
        raise ValueError("forms are not complementary")
    j = F1.degree()
    IA = annihilator([F1, F2])
    parts = []
    for F in (F1, F2):
        Ii = annihilator([F], ring=IA.ring)
        prod = IA.product(Ii)
        pd = prod.piece_dim(j)
        mod = submodule_of_free(IA.ring, (0,), [[g] for g in Ii.minimal_generators()])
        parts.append(Lev2Part(
            quotient_dim=IA.piece_dim(j) - pd,
            product_dim=pd,
            tensor_dim=tensor_dim(IA, mod, j),
            homology=h2_dim(IA, quotient_presentation(Ii), j),
        ))
    certified = all(pt.homology == 0 for pt in parts)
    total = sum(pt.quotient_dim for pt in parts)
    rep = Lev2Report(j, IA.hilbert_series().values(j), parts, certified, total if certified else None)
    if cross_check:
        ob = obstruction_report(IA)
        rep.tangent, rep.obstruction = ob.tangent, ob.obstruction
        if ob.tangent != total or ob.obstruction != sum(pt.homology for pt in parts):
            raise ArithmeticError("split computation disagrees with the direct one")
    return rep


# predicted dimensions

class HypothesisError(ValueError):
    """A hypothesis of a dimension formula does not hold."""


@dataclass
class Prediction:
    mode: str
    value: int
    terms: dict
    conditional: bool = True

    def as_dict(self) -> dict:
        return asdict(self)


def is_complete_intersection(J: Ideal) -> bool:
    """Minimal generators form a regular sequence (checked on the Hilbert series)."""
    if J.is_unit():
        return False
    degs = J.generator_degrees()
    num = [1]
    for a in degs:
        f = [0] * (a + 1)
        f[0], f[a] = 1, -1
        out = [0] * (len(num) + a)
        for i, x in enumerate(num):
            for k, y in enumerate(f):
                out[i + k] += x * y
        num = out
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return list(J.hilbert_series().numerator) == num


def ci_normal_dim(B: Ideal) -> int:
    """``dim (N_B)_0 = sum H_B(n_{1,i})`` for a complete intersection (zero for ``B = R``)."""
    if not B.gens:
        return 0
    if not is_complete_intersection(B):
        raise HypothesisError("B is not a complete intersection")
    return sum(B.hilbert(d) for d in B.generator_degrees())


def _condition_b(B: Ideal, A: Ideal) -> bool:
    res = resolution_of(B, 2)
    top = max(res.twists(2), default=0)
    return B.codim >= 2 and all(B.hilbert(v) == A.hilbert(v) for v in range(top + 1))


def _ci_or_b(B: Ideal, A: Ideal) -> str:
    if not B.gens or is_complete_intersection(B):
        return "a"
    if _condition_b(B, A):
        return "b"
    raise HypothesisError("I_B is neither a complete intersection nor isomorphic to A up to the top syzygy degree")


def _dim_B(B: Ideal, dim_B: int | None) -> int:
    if dim_B is not None:
        return dim_B
    if not B.gens or is_complete_intersection(B):
        return ci_normal_dim(B)
    raise HypothesisError("dim_B must be supplied when B is not a complete intersection")


def predicted_dims(B: Ideal | None, A: Ideal, mode: str, dim_B: int | None = None, **kw) -> Prediction:
    """Component dimension at ``A`` from one of the structure formulas.

    Modes: ``mainzero`` (``A`` one-dimensional, ``codim`` per component in
    ``kw['r']``, default 1), ``mainartin``, ``corart`` (``B`` is built from
    the low-degree generators), ``maintrans`` (needs ``kw['t']``) and
    ``sgenartin`` (needs ``kw['j']``; ``alpha`` read from ``A``).
    """
    if mode == "corart":
        return _corart(A)
    if B is None:
        raise HypothesisError(f"mode {mode} needs B")
    if not B.issubset(A):
        raise HypothesisError("I_B is not contained in I_A")
    if mode == "mainzero":
        if A.krull_dim != 1:
            raise HypothesisError("A must be one-dimensional")
        case = _ci_or_b(B, A)
        r = kw.get("r", 1)
        s = A.hilbert_series().multiplicity
        eps = epsilon(B, A)
        dB = _dim_B(B, dim_B)
        return Prediction(mode, dB + r * s - eps, {"dim_B": dB, "rs": r * s, "epsilon": eps, "case": case})
    if mode == "mainartin":
        if not A.is_artinian():
            raise HypothesisError("A must be Artinian")
        case = _ci_or_b(B, A)
        rel = relative_module(B, A)
        degs = _relative_generator_degrees(rel)
        homF = sum(A.hilbert(d) for d in degs)
        eps = epsilon(B, A)
        dB = _dim_B(B, dim_B)
        return Prediction(mode, dB + homF - eps, {"dim_B": dB, "hom_F": homF, "epsilon": eps, "case": case})
    if mode == "sgenartin":
        j = kw["j"]
        if B.krull_dim < 1:
            raise HypothesisError("B must have positive depth")
        from .resolution import regularity

        regI = regularity(B) + 1
        if regI > j - 2:
            raise HypothesisError(f"needs reg(I_B) = {regI} <= j - 2")
        HA = A.hilbert_series().values(j + 1)
        HB = B.hilbert_series().values(j)
        if HA[:j] != HB[:j] or HA[j + 1] != 0:
            raise HypothesisError("A is not a truncation of B at j")
        alpha, hj = HA[j], HB[j]
        if dim_B is None:
            raise HypothesisError("dim_B (the component dimension of B) must be supplied")
        return Prediction(mode, dim_B + alpha * (hj - alpha), {"dim_B": dim_B, "alpha": alpha, "h_j": hj})
    if mode == "maintrans":
        from .resolution import regularity

        t = kw["t"]
        if B.krull_dim != 1:
            raise HypothesisError("B must be one-dimensional")
        regI = regularity(B) + 1
        if t < 2 * regI:
            raise HypothesisError(f"t = {t} is below 2 reg(I_B) = {2 * regI}")
        s = B.hilbert_series().multiplicity
        if dim_B is None:
            raise HypothesisError("dim_B (the component dimension of B) must be supplied")
        return Prediction(mode, dim_B + s - 1, {"dim_B": dim_B, "s": s, "t": t})
    raise ValueError(f"unknown mode {mode}")


def _relative_generator_degrees(rel: SubQuotient) -> list[int]:
    """Degrees of minimal generators of ``U/W`` (a module quotient of ideals)."""
    out = []
    U = rel.U
    if U.max_gen_deg is None:
        return out
    R0 = rel.ambient.Q
    xs = rel.ring.gens()
    for d in range(U.min_deg, U.max_gen_deg + 1):
        k = rel.dim(d)
        if not k:
            continue
        if rel.dim(d - 1):
            img = np.vstack([rel.act(x, d - 1) for x in xs])
            k -= _rank(img, rel.p)
        out.extend([d] * k)
    return out


def _corart(A: Ideal) -> Prediction:
    if not A.is_artinian():
        raise HypothesisError("A must be Artinian")
    n = A.ring.n
    res = resolution_of(A)
    b = res.betti
    degs = A.generator_degrees()
    j = low = B = None
    for cand in sorted(set(degs), reverse=True):
        if not all(s in (cand + k - 1, cand + k) for k in range(2, n) for s in b.module(k)):
            continue
        gens = [g for g in A.minimal_generators() if g.degree() < cand]
        J = Ideal(A.ring, gens)
        if gens and not is_complete_intersection(J):
            continue
        j, low, B = cand, gens, J
        break
    if j is None:
        raise HypothesisError("no degree j gives a semi-linear resolution with a regular sequence below j")
    Gshifts = [s for s in b.shifts(n) if s != j + n - 1]
    Bq = B.quotient_ring() if low else polynomial_ring_quotient(A.ring)
    homGB = sum(Bq.dim(g - n) for g in Gshifts)
    homGA = sum(A.hilbert(g - n) for g in Gshifts)
    extra = sum(A.hilbert(g.degree()) for g in low)
    return Prediction(
        "corart", homGB - homGA + extra,
        {"j": j, "a": [g.degree() for g in low], "G": Gshifts, "hom_G_B": homGB, "hom_G_A": homGA, "sum_H_a": extra},
        conditional=False,
    )
