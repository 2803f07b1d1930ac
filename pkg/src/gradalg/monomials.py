"""Monomial bookkeeping for graded pieces of a polynomial ring.

A monomial is an exponent tuple.  Graded pieces list the monomials of a
fixed degree in descending degrevlex order, so that row echelon pivots are
leading monomials.
"""
from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np


def num_monomials(n: int, d: int) -> int:
    if d < 0:
        return 0
    return comb(n + d - 1, d) if n > 0 else int(d == 0)


def grevlex_key(e: tuple[int, ...]) -> tuple:
    return (sum(e), tuple(-x for x in reversed(e)))


def _compositions(n: int, d: int):
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _compositions(n - 1, d - a):
            yield (a,) + rest


@lru_cache(maxsize=None)
def monomials(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Monomials of degree ``d`` in ``n`` variables, descending degrevlex."""
    if d < 0 or n == 0:
        return ((),) if (d == 0 and n == 0) else ()
    mons = list(_compositions(n, d))
    mons.sort(key=grevlex_key, reverse=True)
    return tuple(mons)


@lru_cache(maxsize=None)
def monomial_index(n: int, d: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(monomials(n, d))}


@lru_cache(maxsize=None)
def exponent_matrix(n: int, d: int) -> np.ndarray:
    mons = monomials(n, d)
    if not mons:
        return np.zeros((0, n), dtype=np.int64)
    return np.array(mons, dtype=np.int64).reshape(len(mons), n)


@lru_cache(maxsize=4096)
def mult_index(n: int, d: int, mono: tuple[int, ...]) -> np.ndarray:
    """Index in degree ``d + |mono|`` of ``mono * m`` for each ``m`` of degree ``d``."""
    target = monomial_index(n, d + sum(mono))
    return np.array(
        [target[tuple(a + b for a, b in zip(m, mono))] for m in monomials(n, d)],
        dtype=np.int64,
    )


def variable(n: int, k: int) -> tuple[int, ...]:
    return tuple(1 if i == k else 0 for i in range(n))


def divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(x, y) for x, y in zip(a, b))


def quotient(b: tuple[int, ...], a: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(y - x for x, y in zip(a, b))
