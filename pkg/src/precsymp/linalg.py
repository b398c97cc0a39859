"""Exact sparse linear algebra over the rationals.

Vectors are ``dict`` objects mapping column index to a non-zero number.
:class:`Echelon` performs fraction-free elimination: rows are kept as
primitive integer vectors (content divided out after every update), pivots
are the leading column of each row and are chosen in insertion order, so
results are reproducible.  Each row may carry a *tag* vector recording which
combination of inserted vectors produced it; this gives left kernels and
solutions of ``x·M = b`` without a second pass.
"""
from __future__ import annotations

from bisect import insort
from heapq import heapify, heappop, heappush
from fractions import Fraction
from math import gcd
from typing import Iterable

from .errors import ResourceError

MAX_DIMENSION = 10_000


def check_dimension(n: int, what="slice"):
    if n > MAX_DIMENSION:
        raise ResourceError(f"{what} of dimension {n} exceeds the limit {MAX_DIMENSION}")


def _lcm(a, b):
    return a // gcd(a, b) * b


def integerize(vec: dict) -> dict:
    """Scale a rational vector to a primitive integer vector (same line)."""
    if not vec:
        return {}
    den = 1
    for v in vec.values():
        if isinstance(v, Fraction):
            den = _lcm(den, v.denominator)
    ivec = {k: int(v * den) for k, v in vec.items()}
    return ivec


def _primitive(*parts: dict):
    g = 0
    for part in parts:
        for v in part.values():
            g = gcd(g, v)
            if g == 1:
                return parts
    if g > 1:
        return tuple({k: v // g for k, v in part.items()} for part in parts)
    return parts


def _combine(a: int, u: dict, b: int, w: dict) -> dict:
    """``a*u - b*w`` with zero entries dropped."""
    out = {k: a * v for k, v in u.items()} if a != 1 else dict(u)
    for k, v in w.items():
        x = out.get(k, 0) - b * v
        if x:
            out[k] = x
        else:
            out.pop(k, None)
    return out


class Echelon:
    """Incrementally built row echelon form of a set of vectors."""

    def __init__(self, track: bool = False):
        self.track = track
        self.rows: dict = {}    # pivot column -> integer row
        self.tags: dict = {}    # pivot column -> integer tag (combination of inputs)
        self.pivots: list = []  # ascending
        self.dependencies: list = []  # tags of inserted vectors that reduced to zero
        self._count = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce_int(self, vec: dict, tag: dict):
        # reducing by a row only introduces columns above its pivot, so the
        # columns of vec can be visited in increasing order with a heap
        heap = list(vec)
        heapify(heap)
        rows = self.rows
        while heap:
            c = heappop(heap)
            a = vec.get(c)
            if not a or c not in rows:
                continue
            row = rows[c]
            p = row[c]
            g = gcd(p, a)
            vec = _combine(p // g, vec, a // g, row)
            if self.track:
                tag = _combine(p // g, tag, a // g, self.tags[c])
                vec, tag = _primitive(vec, tag)
            else:
                (vec,) = _primitive(vec)
            for k in row:
                if k > c and k in vec:
                    heappush(heap, k)
        return vec, tag

    def add(self, vec: dict, tag: dict | None = None) -> bool:
        """Insert ``vec``; return True if it was independent of the rows so far."""
        ivec = integerize(vec)
        if self.track:
            if tag is None:
                tag = {self._count: 1}
            # keep vec and tag on the same integer scale
            den = 1
            for v in list(vec.values()) + list(tag.values()):
                if isinstance(v, Fraction):
                    den = _lcm(den, v.denominator)
            ivec = {k: int(v * den) for k, v in vec.items() if v}
            itag = {k: int(v * den) for k, v in tag.items() if v}
        else:
            itag = {}
        self._count += 1
        ivec, itag = self._reduce_int(ivec, itag)
        if not ivec:
            if self.track:
                self.dependencies.append(itag)
            return False
        c = min(ivec)
        if ivec[c] < 0:
            ivec = {k: -v for k, v in ivec.items()}
            itag = {k: -v for k, v in itag.items()}
        self.rows[c] = ivec
        if self.track:
            self.tags[c] = itag
        insort(self.pivots, c)
        return True

    def reduce(self, vec: dict):
        """Rational remainder of ``vec`` and coefficients ``x`` with ``vec = Σ x_j·input_j + remainder``."""
        vec = {k: Fraction(v) for k, v in vec.items() if v}
        combo: dict = {}
        heap = list(vec)
        heapify(heap)
        rows = self.rows
        while heap:
            c = heappop(heap)
            a = vec.get(c)
            if not a or c not in rows:
                continue
            row = rows[c]
            f = a / row[c]
            for k, v in row.items():
                x = vec.get(k, 0) - f * v
                if x:
                    if k not in vec:
                        heappush(heap, k)
                    vec[k] = x
                else:
                    vec.pop(k, None)
            if self.track:
                for k, v in self.tags[c].items():
                    x = combo.get(k, 0) + f * v
                    if x:
                        combo[k] = x
                    else:
                        combo.pop(k, None)
        return vec, combo

    def contains(self, vec: dict) -> bool:
        rem, _ = self.reduce(vec)
        return not rem

    def solve(self, vec: dict):
        """Coefficients ``x`` with ``Σ x_j·input_j = vec``, or None when ``vec`` is not in the span."""
        if not self.track:
            raise ValueError("solve needs an Echelon built with track=True")
        rem, combo = self.reduce(vec)
        if rem:
            return None
        return combo

    def rref(self) -> list:
        """Reduced row echelon basis as Fraction vectors with leading coefficient 1."""
        out = {}
        for c in reversed(self.pivots):
            row = self.rows[c]
            p = Fraction(row[c])
            vec = {k: Fraction(v) / p for k, v in row.items()}
            for c2, r2 in out.items():
                a = vec.get(c2)
                if a:
                    for k, v in r2.items():
                        x = vec.get(k, 0) - a * v
                        if x:
                            vec[k] = x
                        else:
                            vec.pop(k, None)
            out[c] = vec
        return [out[c] for c in self.pivots]


def rank(rows: Iterable[dict]) -> int:
    e = Echelon()
    for r in rows:
        e.add(r)
    return e.rank


def rref(rows: Iterable[dict]) -> list:
    e = Echelon()
    for r in rows:
        e.add(r)
    return e.rref()


def left_kernel(rows: list) -> list:
    """Basis (RREF) of ``{x : Σ x_i·rows[i] = 0}``."""
    e = Echelon(track=True)
    for i, r in enumerate(rows):
        e.add(r, {i: 1})
    return rref(e.dependencies)


def reduce_by_rref(vec: dict, basis: list, pivots: list) -> dict:
    """Subtract multiples of RREF rows so ``vec`` vanishes at every pivot."""
    vec = {k: Fraction(v) for k, v in vec.items() if v}
    for row, c in zip(basis, pivots):
        a = vec.get(c)
        if a:
            for k, v in row.items():
                x = vec.get(k, 0) - a * v
                if x:
                    vec[k] = x
                else:
                    vec.pop(k, None)
    return vec


def leading(vec: dict) -> int:
    return min(vec)
