"""Free graded-commutative algebras over the rationals.

A :class:`FreeGCA` is an ordered list of generators; odd ones are exterior,
even ones polynomial.  Monomials are exponent tuples indexed by declaration
order and :class:`Element` is a canonical sparse sum of monomials with
:class:`fractions.Fraction` coefficients.  Products carry the Koszul sign
obtained by counting inversions among odd generators.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .errors import AlgebraMismatchError, DegreeMismatchError, ParseError

Monomial = tuple  # exponent tuple, one slot per generator


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int

    def __post_init__(self):
        if not isinstance(self.degree, int) or self.degree < 1:
            raise ValueError(f"generator {self.name!r}: degree must be a positive integer")
        if not _NAME_RE.fullmatch(self.name):
            raise ValueError(f"invalid generator name {self.name!r}")

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


@dataclass(frozen=True)
class FreeGCA:
    generators: tuple

    def __init__(self, generators: Iterable):
        gens = []
        for g in generators:
            if not isinstance(g, Generator):
                g = Generator(*g)
            gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate generator names: {', '.join(dup)}")

    # derived lookups are recomputed lazily and cached on the instance
    @property
    def _index(self) -> dict:
        try:
            return self.__dict__["_index_cache"]
        except KeyError:
            idx = {g.name: i for i, g in enumerate(self.generators)}
            object.__setattr__(self, "_index_cache", idx)
            return idx

    @property
    def odd_indices(self) -> tuple:
        try:
            return self.__dict__["_odd_cache"]
        except KeyError:
            odd = tuple(i for i, g in enumerate(self.generators) if g.odd)
            object.__setattr__(self, "_odd_cache", odd)
            return odd

    @property
    def names(self) -> tuple:
        return tuple(g.name for g in self.generators)

    @property
    def degrees(self) -> tuple:
        return tuple(g.degree for g in self.generators)

    def __len__(self):
        return len(self.generators)

    def __contains__(self, name):
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no generator named {name!r}") from None

    def generator(self, name: str) -> Generator:
        return self.generators[self.index(name)]

    def __repr__(self):
        inner = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"FreeGCA({inner})"

    # -- elements ------------------------------------------------------------
    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return Element(self, {self.unit_monomial(): Fraction(1)})

    def unit_monomial(self) -> Monomial:
        return (0,) * len(self.generators)

    def gen(self, name: str) -> "Element":
        i = self.index(name)
        mono = tuple(1 if j == i else 0 for j in range(len(self.generators)))
        return Element(self, {mono: Fraction(1)})

    def monomial(self, exponents: Mapping[str, int] | Monomial, coeff=1) -> "Element":
        if isinstance(exponents, Mapping):
            mono = [0] * len(self.generators)
            for name, e in exponents.items():
                mono[self.index(name)] = e
            exponents = tuple(mono)
        mono = tuple(exponents)
        for i in self.odd_indices:
            if mono[i] > 1:
                return self.zero()
        return Element(self, {mono: Fraction(coeff)})

    def parse(self, text: str) -> "Element":
        return parse_element(self, text)

    def monomial_degree(self, mono: Monomial) -> int:
        return sum(e * g.degree for e, g in zip(mono, self.generators))

    def basis(self, n: int) -> "DegreeSlice":
        return enumerate_degree_basis(self, n)


def word_length(mono: Monomial) -> int:
    return sum(mono)


def mono_mul(algebra: FreeGCA, a: Monomial, b: Monomial):
    """Product of two canonical monomials as ``(sign, monomial)``; sign 0 if it vanishes."""
    inversions = 0
    odd = algebra.odd_indices
    for j in odd:
        if b[j]:
            if a[j]:
                return 0, None
            # odd generators of a sitting to the right of j must hop over it
            for i in odd:
                if i > j and a[i]:
                    inversions += 1
    prod = tuple(x + y for x, y in zip(a, b))
    return (-1 if inversions % 2 else 1), prod


class Element:
    """A finite sum ``Σ c·m`` over a :class:`FreeGCA`; treat as immutable."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: FreeGCA, terms: Mapping):
        self.algebra = algebra
        clean = {}
        for mono, c in terms.items():
            if c:
                clean[tuple(mono)] = c if isinstance(c, Fraction) else Fraction(c)
        self.terms = clean

    # -- queries ---------------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {self.algebra.monomial_degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int | None:
        """Degree of a homogeneous element; ``None`` for zero or mixed elements."""
        degs = self.degrees()
        if len(degs) == 1:
            return next(iter(degs))
        return None

    def homogeneous_degree(self) -> int:
        degs = self.degrees()
        if len(degs) > 1:
            raise DegreeMismatchError(f"element {self} is not homogeneous (degrees {sorted(degs)})")
        if not degs:
            raise DegreeMismatchError("the zero element has no degree")
        return next(iter(degs))

    def coefficient(self, mono) -> Fraction:
        if isinstance(mono, Element):
            (mono,) = mono.terms
        return self.terms.get(tuple(mono), Fraction(0))

    def min_word_length(self) -> int | None:
        if not self.terms:
            return None
        return min(sum(m) for m in self.terms)

    # -- arithmetic -------------------------------------------------------------
    def _check(self, other: "Element"):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatchError(f"{self.algebra!r} vs {other.algebra!r}")

    def _coerce(self, other):
        if isinstance(other, Element):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.algebra.one() * Fraction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Element(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Element":
        c = Fraction(c)
        if not c:
            return self.algebra.zero()
        return Element(self.algebra, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.algebra.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.one() * Fraction(other) if other else self.algebra.zero()
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (-self.algebra.monomial_degree(kv[0]), tuple(-e for e in kv[0])))

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({format_element(self)!r})"


def multiply(a: Element, b: Element) -> Element:
    if a.algebra is not b.algebra and a.algebra != b.algebra:
        raise AlgebraMismatchError(f"{a.algebra!r} vs {b.algebra!r}")
    alg = a.algebra
    out: dict = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            sign, m = mono_mul(alg, ma, mb)
            if sign:
                out[m] = out.get(m, 0) + sign * ca * cb
    return Element(alg, out)


# -- degree slices ---------------------------------------------------------------

@dataclass(frozen=True)
class DegreeSlice:
    degree: int
    basis: tuple
    index: dict = field(compare=False, repr=False, hash=False)

    def __len__(self):
        return len(self.basis)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.basis)


@lru_cache(maxsize=4096)
def enumerate_degree_basis(algebra: FreeGCA, n: int) -> DegreeSlice:
    """All monomials of degree ``n``, in descending lexicographic order of exponent vectors."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    gens = algebra.generators
    k = len(gens)
    out = []
    exps = [0] * k

    def rec(i, remaining):
        if remaining == 0:
            out.append(tuple(exps))
            return
        if i == k:
            return
        d = gens[i].degree
        top = remaining // d
        if gens[i].odd:
            top = min(top, 1)
        for e in range(top, -1, -1):
            exps[i] = e
            rec(i + 1, remaining - e * d)
        exps[i] = 0

    rec(0, n)
    basis = tuple(out)
    return DegreeSlice(n, basis, {m: i for i, m in enumerate(basis)})


def coordinates(e: Element, s: DegreeSlice) -> list:
    """Coefficient vector of ``e`` in the basis of ``s``."""
    vec = [Fraction(0)] * len(s.basis)
    for m, c in e.terms.items():
        try:
            vec[s.index[m]] = c
        except KeyError:
            deg = e.algebra.monomial_degree(m)
            raise DegreeMismatchError(f"term of degree {deg} in slice of degree {s.degree}") from None
    return vec


def from_coordinates(algebra: FreeGCA, s: DegreeSlice, vec) -> Element:
    if isinstance(vec, Mapping):
        items = vec.items()
    else:
        items = enumerate(vec)
    return Element(algebra, {s.basis[i]: c for i, c in items if c})


def sparse_coordinates(e: Element, s: DegreeSlice) -> dict:
    try:
        return {s.index[m]: c for m, c in e.terms.items()}
    except KeyError:
        raise DegreeMismatchError(f"element {e} does not live in degree {s.degree}") from None


# -- transport between algebras ---------------------------------------------------

def transport(e: Element, target: FreeGCA, rename: Mapping[str, str] | None = None,
              drop: Iterable[str] = ()) -> Element:
    """Rewrite ``e`` over ``target``, matching generators by (renamed) name.

    Generators listed in ``drop`` are sent to zero; reordering of odd
    generators picks up the appropriate Koszul sign.
    """
    rename = dict(rename or {})
    drop = set(drop)
    src = e.algebra
    images = []
    for g in src.generators:
        if g.name in drop:
            images.append(None)
            continue
        name = rename.get(g.name, g.name)
        tg = target.generator(name)
        if tg.degree != g.degree:
            raise DegreeMismatchError(f"{g.name}:{g.degree} cannot map to {name}:{tg.degree}")
        images.append(target.gen(name))
    out = target.zero()
    for mono, c in e.terms.items():
        term = target.one().scale(c)
        for i, k in enumerate(mono):
            if not k:
                continue
            if images[i] is None:
                term = None
                break
            term = term * images[i] ** k
        if term is not None:
            out = out + term
    return out


# -- text syntax --------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1))))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r} in {text!r}")
            tokens.append(("op", ch))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, algebra, text):
        self.algebra = algebra
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r} in {self.text!r}")

    def parse(self):
        if not self.tokens:
            raise ParseError("empty element")
        e = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return e

    def expr(self):
        total = self.algebra.zero()
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        total = total + self.term().scale(sign)
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                total = total + (t if val == "+" else -t)
            else:
                return total

    def term(self):
        result = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                result = result * self.power()
            elif kind == "name" or kind == "num" or (kind == "op" and val == "("):
                # juxtaposition is multiplication
                result = result * self.power()
            else:
                return result

    def power(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, k = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            return base ** k
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            num = Fraction(val)
            k2, v2 = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, den = self.take()
                if k3 != "num" or den == 0:
                    raise ParseError(f"bad rational coefficient in {self.text!r}")
                num = num / den
            return self.algebra.one().scale(num)
        if kind == "name":
            if val not in self.algebra:
                raise ParseError(f"unknown generator {val!r}")
            return self.algebra.gen(val)
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_element(algebra: FreeGCA, text: str) -> Element:
    """Parse ``v1*v2*t + t^4``, ``-3/2*t^10`` and friends."""
    return _Parser(algebra, text).parse()


def format_coefficient(c: Fraction) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_monomial(algebra: FreeGCA, mono: Monomial) -> str:
    parts = []
    for g, e in zip(algebra.generators, mono):
        if e == 1:
            parts.append(g.name)
        elif e > 1:
            parts.append(f"{g.name}^{e}")
    return "*".join(parts)


def format_element(e: Element) -> str:
    if not e.terms:
        return "0"
    out = []
    for mono, c in e.sorted_terms():
        body = format_monomial(e.algebra, mono)
        mag = abs(c)
        if not body:
            text = format_coefficient(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{format_coefficient(mag)}*{body}"
        if not out:
            out.append(("-" if c < 0 else "") + text)
        else:
            out.append(("- " if c < 0 else "+ ") + text)
    return " ".join(out)
