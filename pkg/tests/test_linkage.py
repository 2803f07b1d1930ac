from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gradalg.deformation import hom_dim, is_complete_intersection
from gradalg.ideal import Ideal
from gradalg.linkage import (
    LinkageError,
    ci_link,
    ledger,
    linkage_chain,
    random_ci,
    read_chain_file,
    verify_link,
)
from gradalg.ring import PolyRing

R = PolyRing(("x", "y", "z"))
CHAIN = Path(__file__).resolve().parents[1] / "demos" / "data" / "exlink.chain"


def I(*texts):
    return Ideal.parse(R, texts)


def test_link_of_a_line():
    # (x^2, y^2) : (x, y) = (x^2, xy, y^2); degrees 1 + 3 = 4
    J = I("x", "y")
    J2 = I("x^2", "x*y", "y^2")
    L = I("x^2", "y^2")
    assert verify_link(J, J2, L, degree_bound=3)
    assert J.degree() + J2.degree() == 4


def test_artinian_link_adds_socle():
    J = I("x", "y", "z")
    L = I("x^2", "y^2", "z^2")
    J2 = I("x^2", "y^2", "z^2", "x*y*z")
    assert verify_link(J, J2, L)
    assert not verify_link(J, J, L)


def test_random_ci_inside(rng):
    J = I("x^2", "x*y", "y^2", "z^3")
    L = random_ci(R, (2, 3, 3), rng, inside=J)
    assert is_complete_intersection(L)
    assert L.issubset(J)


def test_ci_link_bookkeeping(rng):
    J = I("x", "y", "z^2")
    step = ci_link(J, (2, 2, 3), rng)
    assert step.degree_J + step.degree_J2 == 12
    assert step.sum_H_J == J.hilbert(2) * 2 + J.hilbert(3)
    assert verify_link(step.J, step.J2, step.L)


def test_link_type_mismatch(rng):
    with pytest.raises(LinkageError):
        ci_link(I("x", "y"), (2, 2, 2), rng)


def test_ledger_reverses():
    class Step:
        def __init__(self, a, b):
            self.sum_H_J, self.sum_H_J2 = a, b

    steps = [Step(3, 5), Step(6, 4), Step(10, 12)]
    forward = ledger(steps, start_dim=7)
    assert forward == [7, 9, 7, 9]
    assert ledger(steps, final_dim=9) == forward
    with pytest.raises(ValueError):
        ledger(steps)


def test_chain_file():
    types = read_chain_file(CHAIN.read_text())
    assert types[0] == (1, 2, 3) and len(types) == 6
    assert read_chain_file("# c\n2, 3 4  # trailing\n\n") == [(2, 3, 4)]


def test_chain_to_compressed_gorenstein():
    types = read_chain_file(CHAIN.read_text())
    cert = linkage_chain(I("x", "y", "z"), types, seed=19)
    assert cert.anchor == "start" and cert.conditional
    assert cert.final.hilbert_function(6).values == [1, 3, 6, 6, 3, 1, 0]
    # the ledger value is at most the tangent space dimension
    A = cert.final
    assert cert.final_dim <= hom_dim(A, A.quotient_ring(), 0)


@given(st.integers(0, 10_000))
def test_double_link_returns(seed):
    rng = np.random.default_rng(seed)
    J = I("x", "y^2", "z^2") if seed % 2 else I("x^2", "x*y", "y^2", "z^2")
    step = ci_link(J, (3, 3, 3), rng)
    back = ci_link(step.J2, (3, 3, 3), rng)
    assert back.degree_J2 == J.degree()
    # linking J2 by the same L gives J back
    assert verify_link(step.J2, J, step.L)


@given(st.integers(0, 10_000))
def test_ledger_is_consistent_both_ways(seed):
    cert = linkage_chain(I("x", "y", "z^2"), [(2, 2, 3), (2, 3, 3)], seed=seed)
    fwd = cert.dims
    back = ledger(cert.steps, final_dim=fwd[-1])
    assert back == fwd
