"""Polynomial rings over F_p, polynomials, and graded free modules."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from . import monomials as mon

DEFAULT_CHAR = 32003

Monomial = tuple[int, ...]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class PolyRing:
    """``F_p[x_1..x_n]`` with standard grading.

    ``order`` is ``"grevlex"``, ``"lex"`` or ``"elim"``; the last one is a
    block order eliminating the first ``elim`` variables, degrevlex inside
    each block.
    """

    names: tuple[str, ...]
    char: int = DEFAULT_CHAR
    order: str = "grevlex"
    elim: int = 0

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        if not _is_prime(self.char):
            raise ValueError(f"characteristic {self.char} is not prime")
        if self.order not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown order {self.order!r}")

    @classmethod
    def standard(cls, n: int, char: int = DEFAULT_CHAR, prefix: str = "x") -> "PolyRing":
        return cls(tuple(f"{prefix}{i}" for i in range(n)), char)

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def p(self) -> int:
        return self.char

    def key(self, e: Monomial):
        if self.order == "grevlex":
            return mon.grevlex_key(e)
        if self.order == "lex":
            return e
        k = self.elim
        return (mon.grevlex_key(e[:k]), mon.grevlex_key(e[k:]))

    def with_order(self, order: str, elim: int = 0) -> "PolyRing":
        return PolyRing(self.names, self.char, order, elim)

    def gen(self, i: int) -> "Polynomial":
        return Polynomial(self, {mon.variable(self.n, i): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.n)]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.n: 1})

    def const(self, c: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.n: c})

    def monomial(self, e: Monomial, c: int = 1) -> "Polynomial":
        return Polynomial(self, {tuple(e): c})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def dim(self, d: int) -> int:
        return mon.num_monomials(self.n, d)

    def describe(self) -> dict:
        return {"vars": list(self.names), "char": self.char}


class Polynomial:
    """Sparse polynomial: a map from exponent tuples to nonzero residues."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, int] | None = None):
        self.ring = ring
        p = ring.char
        clean: dict[Monomial, int] = {}
        if terms:
            for e, c in terms.items():
                c %= p
                if c:
                    clean[tuple(e)] = c
        self.terms = clean

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.ring.key)

    def leading_coefficient(self) -> int:
        return self.terms[self.leading_monomial()]

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        inv = pow(self.leading_coefficient(), self.ring.char - 2, self.ring.char)
        return self.scale(inv)

    # arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, np.integer)):
            return self.ring.const(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        p = self.ring.char
        for e, c in other.terms.items():
            t[e] = (t.get(e, 0) + c) % p
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_monomial(self, m: Monomial, c: int = 1) -> "Polynomial":
        return Polynomial(
            self.ring, {tuple(a + b for a, b in zip(e, m)): v * c for e, v in self.terms.items()}
        )

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.char
        out: dict[Monomial, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % p
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = self.ring.const(int(other))
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # evaluation and substitution
    def evaluate(self, point: Iterable[int]) -> int:
        pt = [int(x) for x in point]
        p = self.ring.char
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, a in zip(pt, e):
                if a:
                    v = v * pow(x, a, p) % p
            total += v
        return total % p

    def substitute(self, images: list["Polynomial"]) -> "Polynomial":
        """Ring map sending variable ``i`` to ``images[i]`` (any target ring)."""
        target = images[0].ring
        out = target.zero()
        powers: dict[tuple[int, int], Polynomial] = {}
        for e, c in self.terms.items():
            term = target.const(c)
            for i, a in enumerate(e):
                if a:
                    if (i, a) not in powers:
                        powers[(i, a)] = images[i] ** a
                    term = term * powers[(i, a)]
            out = out + term
        return out

    # dense vectors in a graded piece
    def to_vector(self, d: int | None = None) -> np.ndarray:
        if d is None:
            d = self.degree()
        idx = mon.monomial_index(self.ring.n, d)
        v = np.zeros(len(idx), dtype=np.int64)
        for e, c in self.terms.items():
            if sum(e) != d:
                raise ValueError("polynomial is not homogeneous of the requested degree")
            v[idx[e]] = c
        return v

    @classmethod
    def from_vector(cls, ring: PolyRing, d: int, v) -> "Polynomial":
        mons = mon.monomials(ring.n, d)
        return cls(ring, {mons[i]: int(c) for i, c in enumerate(v) if int(c) % ring.char})

    # printing
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        p = self.ring.char
        parts = []
        for e, c in self.sorted_terms():
            sign = "+"
            if c > p // 2:
                c = p - c
                sign = "-"
            factors = []
            for name, a in zip(self.ring.names, e):
                if a == 1:
                    factors.append(name)
                elif a > 1:
                    factors.append(f"{name}^{a}")
            body = "*".join(factors)
            if not body:
                body = str(c)
            elif c != 1:
                body = f"{c}*{body}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"Polynomial({self})"


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


def _tokenize(ring: PolyRing, text: str) -> list[tuple[str, object]]:
    names = sorted(ring.names, key=len, reverse=True)
    out: list[tuple[str, object]] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif ident is not None:
            # split juxtaposed variables such as "x2y" into known names
            s = ident
            while s:
                for name in names:
                    if s.startswith(name):
                        out.append(("var", ring.names.index(name)))
                        s = s[len(name):]
                        break
                else:
                    lead = re.match(r"\d+", s)
                    if lead and out and out[-1][0] == "var":
                        raise ParseError(f"unknown variable in {ident!r}")
                    raise ParseError(f"unknown variable {s!r}")
                if s and s[0].isdigit():
                    k = re.match(r"\d+", s).group(0)
                    out.append(("op", "^"))
                    out.append(("num", int(k)))
                    s = s[len(k):]
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    """Parse ``+ - * ^`` expressions with integer coefficients.

    Juxtaposition multiplies, so ``x^6y + xy^6`` is accepted.
    """
    toks = _tokenize(ring, text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        t = toks[pos]
        pos += 1
        return t

    def expr() -> Polynomial:
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        acc = term().scale(sign)
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term() -> Polynomial:
        acc = factor()
        while True:
            k, v = peek()
            if (k, v) == ("op", "*"):
                take()
                acc = acc * factor()
            elif k in ("num", "var") or (k, v) == ("op", "("):
                acc = acc * factor()
            else:
                return acc

    def factor() -> Polynomial:
        base = atom()
        if peek() == ("op", "^"):
            take()
            k, v = take()
            if k != "num":
                raise ParseError("exponent must be a nonnegative integer")
            return base ** int(v)
        return base

    def atom() -> Polynomial:
        if pos >= len(toks):
            raise ParseError("unexpected end of input")
        k, v = take()
        if k == "num":
            return ring.const(int(v))
        if k == "var":
            return ring.gen(int(v))
        if v == "(":
            e = expr()
            if take() != ("op", ")"):
                raise ParseError("missing ')'")
            return e
        raise ParseError(f"unexpected token {v!r}")

    if not toks:
        raise ParseError("empty polynomial")
    result = expr()
    if pos != len(toks):
        raise ParseError(f"trailing input near token {pos}")
    return result


@dataclass(frozen=True)
class GradedFreeModule:
    """``⊕ R(-t_i)``; ``twists[i]`` is the degree of the i-th basis element."""

    ring: PolyRing
    twists: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(int(t) for t in self.twists))

    @property
    def rank(self) -> int:
        return len(self.twists)

    def piece_dim(self, e: int) -> int:
        return sum(mon.num_monomials(self.ring.n, e - t) for t in self.twists)

    def offsets(self, e: int) -> list[int]:
        out, acc = [], 0
        for t in self.twists:
            out.append(acc)
            acc += mon.num_monomials(self.ring.n, e - t)
        out.append(acc)
        return out


@dataclass
class ModuleMatrix:
    """Homogeneous map ``⊕R(-source_i) -> ⊕R(-target_j)``; ``entries[j][i]`` is a polynomial."""

    ring: PolyRing
    target: tuple[int, ...]
    source: tuple[int, ...]
    entries: list[list[Polynomial]] = field(default_factory=list)

    def __post_init__(self):
        self.target = tuple(self.target)
        self.source = tuple(self.source)
        if len(self.entries) != len(self.target):
            raise ValueError("row count does not match target rank")
        for j, row in enumerate(self.entries):
            if len(row) != len(self.source):
                raise ValueError("column count does not match source rank")
            for i, f in enumerate(row):
                if f.terms and (not f.is_homogeneous() or f.degree() != self.source[i] - self.target[j]):
                    raise ValueError(f"entry ({j},{i}) has the wrong degree")

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.target), len(self.source))

    def column(self, i: int) -> list[Polynomial]:
        return [row[i] for row in self.entries]

    def has_unit_entry(self) -> bool:
        return any(f.terms and f.degree() == 0 for row in self.entries for f in row)

    def compose(self, other: "ModuleMatrix") -> "ModuleMatrix":
        """``self ∘ other``."""
        if other.target != self.source:
            raise ValueError("incompatible twists")
        R = self.ring
        rows = []
        for j in range(len(self.target)):
            row = []
            for i in range(len(other.source)):
                acc = R.zero()
                for k in range(len(self.source)):
                    a, b = self.entries[j][k], other.entries[k][i]
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return ModuleMatrix(R, self.target, other.source, rows)

    def is_zero(self) -> bool:
        return all(not f.terms for row in self.entries for f in row)

    def transpose(self, shift: int = 0) -> "ModuleMatrix":
        """Dual map ``Hom(target,R) -> Hom(source,R)`` twisted so generators sit in degree ``shift - t``."""
        tgt = tuple(shift - t for t in self.source)
        src = tuple(shift - t for t in self.target)
        rows = [[self.entries[j][i] for j in range(len(self.target))] for i in range(len(self.source))]
        return ModuleMatrix(self.ring, tgt, src, rows)

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(f) for f in row) + "]" for row in self.entries)
