import numpy as np
from hypothesis import given, strategies as st

from gradalg.groebner import buchberger, is_reduced_groebner, normal_form, s_polynomial, syzygies
from gradalg.ideal import Ideal, ideal_intersect, ideal_quotient
from gradalg.ring import ModuleMatrix, PolyRing

from conftest import random_artinian, random_form

R = PolyRing(("x", "y", "z"))
S = PolyRing(("a", "b", "c", "d"))


def I(ring, *texts):
    return Ideal.parse(ring, texts)


def twisted_cubic():
    return I(S, "a*c - b^2", "a*d - b*c", "b*d - c^2")


def test_variables_are_their_own_basis():
    gb = buchberger(R, [R.parse("x"), R.parse("y")])
    assert sorted(gb.leading_monomials()) == [(0, 1, 0), (1, 0, 0)]


def test_twisted_cubic_basis():
    gb = twisted_cubic().groebner()
    assert len(gb) == 3
    assert all(f.degree() == 2 for f in gb)
    assert is_reduced_groebner(gb)


def test_interreduction():
    gb = buchberger(R, [R.parse("x^2"), R.parse("x^2 + y^2")])
    assert sorted(gb.polys, key=str) == sorted([R.parse("x^2"), R.parse("y^2")], key=str)


def test_normal_form():
    gb = twisted_cubic().groebner()
    # lead terms are c^2, b*c, b^2
    assert normal_form(S.parse("b*c"), gb) == S.parse("a*d")
    assert normal_form(S.parse("b^2*c"), gb) == S.parse("a*b*d")
    assert normal_form(S.parse("a*c - b^2"), gb).is_zero()


def test_s_polynomial_reduces_to_zero():
    gb = twisted_cubic().groebner()
    polys = list(gb)
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            assert normal_form(s_polynomial(polys[i], polys[j]), gb).is_zero()


def test_koszul_syzygies():
    x, y, z = R.gens()
    M = ModuleMatrix(R, (0,), (1, 1, 1), [[x, y, z]])
    K = syzygies(M)
    assert sorted(K.source) == [2, 2, 2]
    assert M.compose(K).is_zero()


def test_twisted_cubic_syzygies_are_linear():
    gens = list(twisted_cubic().minimal_generators())
    M = ModuleMatrix(S, (0,), (2, 2, 2), [gens])
    K = syzygies(M)
    assert sorted(K.source) == [3, 3]
    assert M.compose(K).is_zero()


def test_identity_has_no_syzygies():
    one, zero = R.one(), R.zero()
    M = ModuleMatrix(R, (0, 0), (0, 0), [[one, zero], [zero, one]])
    assert syzygies(M).shape[1] == 0


def test_quotients():
    L = I(R, "x", "y*z")
    assert ideal_quotient(L, I(R, "x", "y")) == I(R, "x", "z")
    assert ideal_quotient(L, L).is_unit()
    assert ideal_quotient(L, Ideal(R, [R.one()])) == L


def test_intersection():
    J = ideal_intersect(I(R, "x"), I(R, "y"))
    assert J == I(R, "x*y")
    assert ideal_intersect(I(R, "x"), I(R, "y"), method="elimination") == J


def test_membership():
    T = twisted_cubic()
    assert T.contains(S.parse("a*(a*d - b*c) + d*(b*d - c^2)"))
    assert not T.contains(S.parse("a*d"))


@given(st.integers(0, 10_000))
def test_random_ideals_give_reduced_bases(seed):
    J = random_artinian(3, seed)
    assert is_reduced_groebner(J.groebner())


@given(st.integers(0, 10_000))
def test_quotient_times_divisor_lies_in_ideal(seed):
    rng = np.random.default_rng(seed)
    L = Ideal(R, [random_form(R, d, rng) for d in (2, 2, 3)])
    J = Ideal(R, [random_form(R, 1, rng), random_form(R, 2, rng)])
    Q = ideal_quotient(L, J)
    assert L.issubset(Q)
    assert Q.product(J).issubset(L)


@given(st.integers(0, 10_000))
def test_intersection_dimension_formula(seed):
    rng = np.random.default_rng(seed)
    A = Ideal(R, [random_form(R, 2, rng), random_form(R, 2, rng)])
    B = Ideal(R, [random_form(R, 1, rng), random_form(R, 3, rng)])
    C = ideal_intersect(A, B)
    for d in range(6):
        assert C.piece_dim(d) + (A + B).piece_dim(d) == A.piece_dim(d) + B.piece_dim(d)
