"""Linkage by complete intersections and the dimension ledger along a chain.

Two ideals ``J`` and ``J'`` are linked by a complete intersection ``L``
when ``J' = L : J`` and ``J = L : J'``.  Along a chain of links the value
``dim - sum_i H(a_i)`` is preserved, which turns a known dimension at one
end (a complete intersection) into a dimension at the other end.  That
transfer assumes the families on both sides are related by smooth maps, so
ledger values are flagged as conditional.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import prod
from typing import Sequence

import numpy as np

from .deformation import ci_normal_dim, is_complete_intersection
from .ideal import Ideal, ideal_quotient
from .ring import PolyRing
from .resolution import BettiTable, betti_numbers

log = logging.getLogger(__name__)


class LinkageError(RuntimeError):
    pass


def _quotient_bound(L: Ideal, degs: Sequence[int]) -> int | None:
    """Generator degree bound for ``L : J`` when ``R/L`` is Artinian or one-dimensional."""
    n = L.ring.n
    if len(degs) == n:
        return None  # Artinian: the socle bound is used
    if len(degs) == n - 1:
        return sum(a - 1 for a in degs) + 1
    raise LinkageError("only codimension n and n - 1 links are supported")


def random_ci(ring: PolyRing, degs: Sequence[int], rng: np.random.Generator, inside: Ideal | None = None, tries: int = 10) -> Ideal:
    """Complete intersection generated by random forms of the given degrees, optionally inside an ideal."""
    host = inside if inside is not None else Ideal(ring, ring.gens())
    for attempt in range(1, tries + 1):
        gens = []
        for a in degs:
            f = host.random_element(a, rng) if inside is not None else _random_form(ring, a, rng)
            if not f.terms:
                raise LinkageError(f"the ideal has no elements of degree {a}")
            gens.append(f)
        L = Ideal(ring, gens)
        if len(L.minimal_generators()) == len(degs) and is_complete_intersection(L):
            return L
        log.info("random forms of degrees %s are not a regular sequence (attempt %d)", list(degs), attempt)
    raise LinkageError(f"no complete intersection of type {tuple(degs)} found")


def _random_form(ring: PolyRing, d: int, rng: np.random.Generator):
    from .ring import Polynomial
    from . import monomials as mon

    vec = rng.integers(0, ring.char, size=mon.num_monomials(ring.n, d))
    return Polynomial.from_vector(ring, d, vec)


def verify_link(J: Ideal, J2: Ideal, L: Ideal, degree_bound: int | None = None) -> bool:
    """``L ⊆ J ∩ J'``, ``L : J = J'`` and ``L : J' = J``."""
    if not (L.issubset(J) and L.issubset(J2)):
        return False
    return ideal_quotient(L, J, degree_bound) == J2 and ideal_quotient(L, J2, degree_bound) == J


@dataclass
class LinkageStep:
    type: tuple[int, ...]
    J: Ideal
    L: Ideal
    J2: Ideal
    attempts: int
    sum_H_J: int
    sum_H_J2: int
    degree_J: int
    degree_J2: int
    betti: BettiTable | None = None

    def as_dict(self) -> dict:
        return {
            "type": list(self.type),
            "sum_H_J": self.sum_H_J,
            "sum_H_J2": self.sum_H_J2,
            "degree_J": self.degree_J,
            "degree_J2": self.degree_J2,
            "attempts": self.attempts,
            "betti": self.betti.as_dict() if self.betti else None,
        }


def ci_link(J: Ideal, degs: Sequence[int], rng: np.random.Generator, tries: int = 10, with_betti: bool = False) -> LinkageStep:
    """Link ``J`` by a random complete intersection of type ``degs`` inside ``J``."""
    degs = tuple(int(a) for a in degs)
    if J.codim != len(degs):
        raise LinkageError(f"codimension {J.codim} does not match the link type {degs}")
    bound = _quotient_bound(J, degs)
    for attempt in range(1, tries + 1):
        L = random_ci(J.ring, degs, rng, inside=J)
        J2 = ideal_quotient(L, J, bound)
        if J2.is_unit():
            log.info("link of type %s is degenerate (unit ideal), attempt %d", degs, attempt)
            continue
        if ideal_quotient(L, J2, bound) != J:
            log.info("double link check failed for type %s, attempt %d", degs, attempt)
            continue
        if J2.codim != len(degs):
            continue
        e1, e2 = J.degree(), J2.degree()
        if e1 + e2 != prod(degs):
            raise LinkageError(f"degree bookkeeping fails: {e1} + {e2} != {prod(degs)}")
        step = LinkageStep(
            degs, J, L, J2, attempt,
            sum(J.hilbert(a) for a in degs), sum(J2.hilbert(a) for a in degs), e1, e2,
        )
        if with_betti:
            step.betti = betti_numbers(J2)
        return step
    raise LinkageError(f"retry budget exhausted for link type {degs}")


@dataclass
class LicciCertificate:
    start: Ideal
    steps: list[LinkageStep]
    final: Ideal
    final_is_ci: bool
    dims: list[int] | None = None
    anchor: str | None = None
    conditional: bool = True
    seed: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def start_dim(self) -> int | None:
        return self.dims[0] if self.dims else None

    @property
    def final_dim(self) -> int | None:
        return self.dims[-1] if self.dims else None

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "steps": [s.as_dict() for s in self.steps],
            "final_is_ci": self.final_is_ci,
            "final_betti": betti_numbers(self.final).as_dict(),
            "dims": self.dims,
            "anchor": self.anchor,
            "conditional": self.conditional,
        }


def ledger(steps: Sequence[LinkageStep], start_dim: int | None = None, final_dim: int | None = None) -> list[int]:
    """Dimensions along the chain from ``dim - sum H(a_i)`` being invariant under each link."""
    if start_dim is not None:
        dims = [start_dim]
        for s in steps:
            dims.append(dims[-1] - s.sum_H_J + s.sum_H_J2)
        return dims
    if final_dim is None:
        raise ValueError("need a dimension at one end")
    dims = [final_dim]
    for s in reversed(steps):
        dims.append(dims[-1] - s.sum_H_J2 + s.sum_H_J)
    return dims[::-1]


def linkage_chain(start: Ideal, types: Sequence[Sequence[int]], seed: int = 0, with_betti: bool = False) -> LicciCertificate:
    """Run links in order; anchor the ledger at whichever end is a complete intersection."""
    rng = np.random.default_rng(seed)
    steps = []
    J = start
    for t in types:
        step = ci_link(J, t, rng, with_betti=with_betti)
        steps.append(step)
        J = step.J2
    cert = LicciCertificate(start, steps, J, is_complete_intersection(J), seed=seed)
    if is_complete_intersection(start):
        cert.dims = ledger(steps, start_dim=ci_normal_dim(start))
        cert.anchor = "start"
    elif cert.final_is_ci:
        cert.dims = ledger(steps, final_dim=ci_normal_dim(J))
        cert.anchor = "final"
    else:
        cert.notes.append("neither end is a complete intersection; no ledger")
    return cert


def read_chain_file(text: str) -> list[tuple[int, ...]]:
    """One link type per line, e.g. ``4 5 7``; ``#`` starts a comment."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(tuple(int(x) for x in line.replace(",", " ").split()))
    return out
