from itertools import combinations_with_replacement

import numpy as np
import sympy
from hypothesis import given, strategies as st

from gradalg.apolarity import (
    annihilator,
    contract,
    divided_power,
    dual_ring,
    from_differentiation,
    general_form,
    generic_power_sum_hilbert,
    inverse_system_hilbert,
    is_complementary,
    is_compressed,
    power_sum_form,
    to_differentiation,
)
from gradalg.ideal import Ideal
from gradalg.ring import PolyRing

R = PolyRing(("x", "y", "z"))
D = dual_ring(R)


def derivative_ranks(expr, symbols, top):
    """Oracle: dimension of the span of all order-i partials, over Q."""
    out = []
    for i in range(top + 1):
        ders = []
        for combo in combinations_with_replacement(symbols, i):
            ders.append(sympy.Poly(sympy.diff(expr, *combo) if combo else expr, *symbols))
        monos = sorted({m for d in ders for m in d.monoms()})
        M = sympy.Matrix([[d.as_dict().get(m, 0) for m in monos] for d in ders]) if monos else sympy.zeros(1, 1)
        out.append(M.rank())
    return out


def test_dual_ring_names():
    assert D.names == ("X", "Y", "Z")


def test_contraction_drops_exponents():
    assert contract(R.parse("x"), D.parse("X^2*Y")) == D.parse("X*Y")
    assert contract(R.parse("z"), D.parse("X^2*Y")).is_zero()
    assert contract(R.parse("x*y"), D.parse("X*Y")) == D.one()


def test_annihilator_of_a_power():
    # ann(X^j) = (y, z, x^(j+1))
    for j in (1, 3, 5):
        I = annihilator([D.parse(f"X^{j}")])
        assert I == Ideal.parse(I.ring, ["y", "z", f"x^{j + 1}"])


def test_annihilator_of_xy():
    I = annihilator([D.parse("X*Y")])
    assert I == Ideal.parse(I.ring, ["z", "x^2", "y^2"])
    assert I.hilbert_function(3).values == [1, 2, 1, 0]


def test_differentiation_conversion():
    F = D.parse("X^6*Y + X*Y^6 + Z^7")
    G = from_differentiation(F)
    assert to_differentiation(G) == F
    x, y, z = sympy.symbols("x y z")
    want = derivative_ranks(x ** 6 * y + x * y ** 6 + z ** 7, [x, y, z], 7)
    assert inverse_system_hilbert([G]) == want


def test_divided_power_of_a_linear_form():
    L = divided_power(D, [1, 1, 0], 2)
    assert L == D.parse("X^2 + X*Y + Y^2")
    assert inverse_system_hilbert([L]) == [1, 1, 1]


def test_generic_bounds():
    assert generic_power_sum_hilbert(3, 5, 5) == [1, 3, 5, 5, 3, 1]
    assert generic_power_sum_hilbert(3, 9, 7) == [1, 3, 6, 9, 9, 6, 3, 1]


def test_power_sums(rng):
    for s, j in [(5, 5), (4, 5), (9, 7), (4, 7)]:
        ps = power_sum_form(D, s, j, rng)
        assert inverse_system_hilbert([ps.form]) == generic_power_sum_hilbert(3, s, j)
        assert len(ps.points) == s


def test_power_sum_pair_is_complementary(rng):
    F1 = power_sum_form(D, 5, 5, rng).form
    F2 = power_sum_form(D, 5, 5, rng).form
    assert is_complementary(F1, F2)
    assert inverse_system_hilbert([F1, F2]) == [1, 3, 6, 10, 6, 2]


def test_compressed_gorenstein(rng):
    I = annihilator([general_form(D, 5, rng)])
    assert I.hilbert_function(5).values == [1, 3, 6, 6, 3, 1]
    assert is_compressed(I)
    assert not is_compressed(Ideal.parse(R, ["x", "y", "z^3"]))


@given(st.integers(0, 10_000))
def test_annihilator_matches_catalecticant(seed):
    rng = np.random.default_rng(seed)
    F = power_sum_form(D, int(rng.integers(2, 7)), 4, rng).form
    I = annihilator([F])
    H = inverse_system_hilbert([F])
    assert I.hilbert_function(5).values == H + [0]
    # every generator kills F
    assert all(contract(g, F).is_zero() for g in I.minimal_generators())


@given(st.integers(0, 10_000))
def test_hilbert_function_is_symmetric(seed):
    # Gorenstein: H(i) = H(j - i)
    rng = np.random.default_rng(seed)
    F = general_form(D, int(rng.integers(2, 7)), rng)
    H = inverse_system_hilbert([F])
    assert H == H[::-1]
