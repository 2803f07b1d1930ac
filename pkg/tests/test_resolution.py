import random
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gradalg.constructions import CurveSpec
from gradalg.ideal import Ideal
from gradalg.resolution import (
    BettiTable,
    betti_numbers,
    classify_resolution,
    comparable,
    differs_by_ghost_pairs,
    is_complex,
    is_dominated,
    is_minimal,
    is_semilinear,
    minimal_free_resolution,
    regularity,
)
from gradalg.ring import PolyRing

from conftest import random_artinian


def tbl(rows, n):
    return BettiTable({(j, s): r for j, s, r in rows}, n)


def test_koszul_complex():
    # R/(x,y,z,w): binom(4, j) copies of R(-j)
    R = PolyRing(("x", "y", "z", "w"))
    b = betti_numbers(Ideal(R, R.gens()))
    assert b == tbl([(j, j, comb(4, j)) for j in range(1, 5)], 4)


def test_rational_normal_quartic():
    # Eagon-Northcott: 6 quadrics, 8 linear syzygies, 3 at the end
    C = CurveSpec.parse("rnc:4").curve_ideal()
    assert betti_numbers(C) == tbl([(1, 2, 6), (2, 3, 8), (3, 4, 3)], 5)


def test_twisted_cubic():
    S = PolyRing(("a", "b", "c", "d"))
    T = Ideal.parse(S, ["a*c - b^2", "a*d - b*c", "b*d - c^2"])
    b = betti_numbers(T)
    assert b == tbl([(1, 2, 3), (2, 3, 2)], 4)
    assert regularity(T) == 1
    assert b.regularity() == 2
    assert b.format_resolution() == "0 → R(-3)^2 → R(-2)^3 → R"


def test_complete_intersection_of_type_113_in_three_vars():
    # ekslicci-style start in P^2: (x, y, z^3)
    R = PolyRing(("x", "y", "z"))
    b = betti_numbers(Ideal.parse(R, ["x", "y", "z^3"]))
    assert b == tbl([(1, 1, 2), (1, 3, 1), (2, 2, 1), (2, 4, 2), (3, 5, 1)], 3)
    assert classify_resolution(b, 3).kind == "gorenstein"


def test_generator_order_does_not_matter():
    C = CurveSpec.parse("rnc:4").curve_ideal()
    gens = list(C.minimal_generators())
    random.Random(3).shuffle(gens)
    assert betti_numbers(Ideal(C.ring, gens)) == betti_numbers(C)


def test_maps_form_a_minimal_complex():
    res = minimal_free_resolution(random_artinian(3, 5))
    assert is_complex(res)
    assert is_minimal(res)
    assert res.length == 3


def test_classification():
    level = tbl([(1, 2, 3), (2, 3, 2)], 4)
    assert classify_resolution(level, 2).kind == "level"
    assert classify_resolution(level, 3).kind == "general"
    mixed = tbl([(1, 2, 2), (1, 3, 1), (2, 4, 1), (2, 5, 1)], 3)
    assert classify_resolution(mixed, 2).kind == "cohen-macaulay"
    assert classify_resolution(mixed, 2).type == 2


def test_semilinear():
    assert is_semilinear(tbl([(1, 2, 3), (2, 3, 2)], 4), 2)
    assert not is_semilinear(tbl([(1, 2, 3), (2, 5, 2)], 4), 2)


def test_ghost_pairs():
    small = tbl([(1, 2, 3), (2, 3, 2)], 4)
    big = tbl([(1, 2, 3), (1, 3, 1), (2, 3, 3)], 4)
    assert differs_by_ghost_pairs(big, small)
    assert big.hilbert(8) == small.hilbert(8)
    assert not differs_by_ghost_pairs(small, big)
    lopsided = tbl([(1, 2, 3), (1, 3, 1), (2, 3, 2)], 4)
    assert not differs_by_ghost_pairs(lopsided, small)


def test_dominance():
    a = tbl([(1, 2, 3), (2, 3, 2)], 4)
    b = tbl([(1, 2, 3), (1, 3, 1), (2, 3, 3)], 4)
    c = tbl([(1, 2, 2), (2, 4, 1)], 4)
    assert is_dominated(a, b) and comparable(a, b)
    assert not comparable(b, c)


def test_table_rendering():
    b = tbl([(1, 2, 3), (2, 3, 2)], 4)
    text = str(b)
    assert text.splitlines()[1].split() == ["total:", "1", "3", "2"]
    assert b.as_dict()["reg"] == 2


@given(st.integers(0, 10_000))
def test_euler_characteristic_recovers_hilbert(seed):
    I = random_artinian(3, seed, extra=1)
    b = betti_numbers(I)
    assert b.hilbert(12) == I.hilbert_function(12).values


@given(st.integers(0, 10_000))
def test_alternating_ranks_sum_to_zero_for_artinian(seed):
    # rank of R/I is 0 when R/I has finite length
    I = random_artinian(3, seed)
    b = betti_numbers(I)
    assert 1 + sum((-1) ** j * b.total(j) for j in range(1, b.length + 1)) == 0
    assert b.length == 3


@given(st.integers(0, 10_000))
def test_regularity_matches_betti(seed):
    I = random_artinian(3, seed)
    assert regularity(I) + 1 == betti_numbers(I).regularity()
    assert regularity(I) == I.socle_degree()
