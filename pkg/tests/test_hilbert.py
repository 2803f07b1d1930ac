from fractions import Fraction
from math import comb

from hypothesis import given, strategies as st

from gradalg.constructions import CurveSpec
from gradalg.hilbert import (
    artinian_truncation_H,
    compressed_bound,
    difference,
    hilbert_from_betti,
    interpolate_polynomial,
    is_compressed_H,
    monomial_numerator,
    truncate_hilbert,
)
from gradalg.ideal import Ideal
from gradalg.registry import load_registry
from gradalg.ring import PolyRing

from conftest import random_artinian


def test_rational_normal_quartic_polynomial():
    hf = CurveSpec.parse("rnc:4").curve_ideal().hilbert_function(6)
    assert hf.values == [4 * v + 1 for v in range(7)]
    assert hf.polynomial == [1, 4]
    assert hf.h_vector == [1, 3]


def test_twisted_cubic_polynomial():
    hf = CurveSpec.parse("twisted_cubic").curve_ideal().hilbert_function(5)
    assert hf.polynomial == [1, 3]
    assert hf.stable_from == 0


def test_point_in_plane():
    R = PolyRing(("x", "y", "z"))
    hs = Ideal.parse(R, ["x", "y"]).hilbert_series()
    assert hs.krull_dim == 1 and hs.multiplicity == 1
    assert hs.values(4) == [1] * 5


def test_monomial_numerator():
    # R/(x^2, y^3) in two variables: (1 - t^2)(1 - t^3)
    assert monomial_numerator([(2, 0), (0, 3)]) == [1, 0, -1, -1, 0, 1]
    assert monomial_numerator([(1, 0), (2, 0)]) == [1, -1]


def test_truncation_of_points():
    H = [1, 4, 7, 10, 13, 16, 19]
    assert truncate_hilbert(H, 13) == ([1, 4, 7, 10, 13, 13, 13], 4)
    assert truncate_hilbert([1, 5, 9, 13, 17], 13)[1] == 3
    assert truncate_hilbert([1, 2], 5)[1] is None


def test_artinian_truncation():
    H = [1, 4, 7, 10, 13, 16]
    assert artinian_truncation_H(H, 5, 0) == [1, 4, 7, 10, 13, 0]
    assert artinian_truncation_H(H, 5, 3) == [1, 4, 7, 10, 13, 3]


def test_betti_data_of_the_degree_33_curve():
    e = load_registry()["twocomp"]
    b = {(j, s): r for j, s, r in e["betti_B"]}
    H = hilbert_from_betti(b, 4, 14)
    assert H[: len(e["hilbert_B"])] == e["hilbert_B"]
    assert interpolate_polynomial(H, e["reg_I"]) == [Fraction(-116), Fraction(33)]
    # sum of (1 - t)^2 H_B(t) coefficients is the degree
    assert sum(difference(difference(H))[:13]) == 33


def test_compressed_bounds():
    assert compressed_bound(3, 5, 1) == [1, 3, 6, 6, 3, 1]
    assert compressed_bound(3, 7, 2) == [1, 3, 6, 10, 15, 12, 6, 2]
    assert is_compressed_H([1, 3, 6, 6, 3, 1, 0], 3, 1)
    assert not is_compressed_H([1, 3, 6, 10, 14, 12, 6, 2], 3, 2)


def test_difference():
    assert difference([1, 4, 7, 10, 13, 13]) == [1, 3, 3, 3, 3, 0]


@given(st.integers(0, 10_000))
def test_series_agrees_with_piece_dimensions(seed):
    I = random_artinian(3, seed, extra=1)
    H = I.hilbert_function(10).values
    assert H == [comb(v + 2, 2) - I.piece_dim(v) for v in range(11)]
    assert sum(H) == I.degree()


@given(st.lists(st.integers(0, 30), min_size=2, max_size=8), st.integers(1, 40))
def test_truncation_is_min(H, s):
    T, j = truncate_hilbert(H, s)
    assert all(t <= s for t in T)
    if j is not None:
        assert T[j] == s and all(h < s for h in H[:j])
