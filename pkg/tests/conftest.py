import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from gradalg.ideal import Ideal
from gradalg.ring import Polynomial, PolyRing
from gradalg import monomials as mon

settings.register_profile(
    "gradalg",
    max_examples=12,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("gradalg")


@pytest.fixture
def R3():
    return PolyRing(("x", "y", "z"))


@pytest.fixture
def R4():
    return PolyRing(("x", "y", "z", "w"))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_form(ring, d, rng):
    return Polynomial.from_vector(ring, d, rng.integers(0, ring.char, size=mon.num_monomials(ring.n, d)))


def random_artinian(n, seed, degs=None, extra=0):
    """``n`` random forms (Artinian) plus ``extra`` more of mixed degree."""
    rng = np.random.default_rng(seed)
    ring = PolyRing.standard(n)
    degs = list(degs) if degs is not None else [int(rng.integers(2, 4)) for _ in range(n)]
    degs += [int(rng.integers(2, 5)) for _ in range(extra)]
    I = Ideal(ring, [random_form(ring, d, rng) for d in degs])
    assert I.is_artinian()
    return I
