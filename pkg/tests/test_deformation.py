import numpy as np
import pytest
from hypothesis import given, strategies as st

from gradalg.constructions import CurveSpec, points_ideal, truncate_algebra
from gradalg.deformation import (
    HypothesisError,
    balance_check,
    canonical_module,
    ci_normal_dim,
    epsilon,
    euler_duality_check,
    ext1_dim,
    hom_dim,
    is_complete_intersection,
    obstruction_report,
    predicted_dims,
    rho,
    tensor_dim,
)
from gradalg.ideal import Ideal
from gradalg.ring import PolyRing

from conftest import random_artinian

R = PolyRing(("x", "y", "z"))


def ci(*texts):
    return Ideal.parse(R, texts)


def test_complete_intersection_tangent():
    # (N_A)_0 of a complete intersection is sum_i H_A(a_i); H_A = 1,3,5,6,5,3,1
    I = ci("x^2", "y^3", "z^4")
    assert is_complete_intersection(I)
    assert ci_normal_dim(I) == 5 + 6 + 5
    rep = obstruction_report(I)
    assert rep.tangent == 16 and rep.obstruction == 0
    assert rep.certified and rep.dim_bracket == [16, 16]


def test_rho_of_complete_intersection():
    # G_1 at 2,3,4 and G_2 at 5,6,7: (5 + 6 + 5) - (3 + 1 + 0)
    assert rho(ci("x^2", "y^3", "z^4")) == 12


def test_not_a_complete_intersection():
    I = ci("x^2", "x*y", "y^2", "z")
    assert not is_complete_intersection(I)
    with pytest.raises(HypothesisError):
        ci_normal_dim(I)


def test_twisted_cubic_normal_space():
    # the Hilbert scheme component of twisted cubics has dimension 12
    T = CurveSpec.parse("twisted_cubic").curve_ideal()
    assert hom_dim(T, T.quotient_ring(), 0) == 12


def test_general_points_in_the_plane(rng):
    pts = [list(rng.integers(1, R.char, size=3)) for _ in range(7)]
    A = points_ideal(R, pts)
    assert hom_dim(A, A.quotient_ring(), 0) == 14
    assert predicted_dims(Ideal(R, []), A, "mainzero", r=2).value == 14


def test_epsilon_of_a_quadric():
    Q = ci("x^2 + y^2 + z^2")
    m2 = ci("x^2", "y^2", "z^2", "x*y", "x*z", "y*z")
    assert epsilon(Q, m2) == 5
    assert balance_check(Q, m2)["ok"]
    with pytest.raises(ValueError):
        epsilon(m2, Q)


def test_canonical_module_dual_hilbert():
    # K_A is the graded dual of A: dim (K_A)_v = H_A(-v)
    I = random_artinian(3, 8)
    K = canonical_module(I)
    H = I.hilbert_function(I.socle_degree()).values
    for v in range(-len(H) + 1, 1):
        assert K.dim(v) == H[-v]


def test_tensor_with_quotient_is_conormal():
    # (I ⊗ R/I)_v = (I/I^2)_v
    I = ci("x^2", "y^3", "z^4")
    I2 = I.product(I)
    for v in range(2, 7):
        assert tensor_dim(I, I.quotient_ring(), v) == I.piece_dim(v) - I2.piece_dim(v)


def test_sgenartin_hypothesis():
    T = CurveSpec.parse("twisted_cubic").curve_ideal()
    rng = np.random.default_rng(0)
    A = truncate_algebra(T, 5, 2, rng)
    pred = predicted_dims(T, A, "sgenartin", dim_B=12, j=5)
    assert pred.value == 12 + 2 * (16 - 2)
    assert pred.value == hom_dim(A, A.quotient_ring(), 0)
    with pytest.raises(HypothesisError):
        predicted_dims(T, truncate_algebra(T, 3, 1, rng), "sgenartin", dim_B=12, j=3)


def test_unknown_mode():
    with pytest.raises(ValueError):
        predicted_dims(ci("x"), ci("x", "y", "z"), "nonsense")


@given(st.integers(0, 10_000), st.integers(-2, 1))
def test_euler_and_duality(seed, v):
    # hom_v - ext1_v is a Hilbert-function sum and ext1_v = hom_{-v-3}
    rep = euler_duality_check(random_artinian(3, seed), v)
    assert rep.ok


@given(st.integers(0, 10_000))
def test_obstruction_bracket(seed):
    rep = obstruction_report(random_artinian(3, seed))
    assert rep.tensor_dual == rep.tangent
    assert 0 <= rep.obstruction <= rep.ext1[0]
    assert rep.dim_bracket == [rep.tangent - rep.obstruction, rep.tangent]


@given(st.integers(0, 10_000))
def test_complete_intersections_are_unobstructed(seed):
    I = random_artinian(3, seed)
    rep = obstruction_report(I)
    assert rep.tangent == ci_normal_dim(I)
    assert rep.obstruction == 0
    assert ext1_dim(I, I.quotient_ring(), 0) == hom_dim(I, I.quotient_ring(), -3)
