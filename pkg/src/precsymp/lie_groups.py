"""Rational types of compact simple Lie groups and which ones pass the degree criterion."""
from __future__ import annotations

import re
from dataclasses import dataclass

from .csym import CriterionResult, DegreeTuple, thm12_criterion
from .errors import ParseError, PreconditionError

FAMILIES = "ABCDGFE"

_EXCEPTIONAL = {
    ("G", 2): (3, 11),
    ("F", 4): (3, 11, 15, 23),
    ("E", 6): (3, 9, 11, 15, 17, 23),
    ("E", 7): (3, 11, 15, 19, 23, 27, 35),
    ("E", 8): (3, 15, 23, 27, 35, 39, 47, 59),
}


@dataclass(frozen=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self):
        f, r = self.family, self.rank
        if f not in FAMILIES:
            raise ValueError(f"unknown family {f!r}")
        if f in "GFE":
            if (f, r) not in _EXCEPTIONAL:
                raise ValueError(f"{f}_{r} does not exist")
        elif r < 1:
            raise ValueError("rank must be positive")
        elif f == "D" and r < 3:
            raise ValueError("D_n needs n ≥ 3")

    @classmethod
    def parse(cls, text: str) -> "LieType":
        m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", text)
        if not m:
            raise ParseError(f"cannot read Lie type {text!r} (expected e.g. C5, E7)")
        try:
            return cls(m.group(1).upper(), int(m.group(2)))
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    def __str__(self):
        return f"{self.family}{self.rank}"


def rational_type(g: LieType) -> DegreeTuple:
    """Degrees of the exterior generators of ``H^*(G; Q)``."""
    f, n = g.family, g.rank
    if f == "A":
        degs = [2 * i + 1 for i in range(1, n + 1)]
    elif f in "BC":
        degs = [4 * i - 1 for i in range(1, n + 1)]
    elif f == "D":
        degs = [4 * i - 1 for i in range(1, n)] + [2 * n - 1]
    else:
        degs = _EXCEPTIONAL[(f, n)]
    return DegreeTuple(degs)


def classify(g: LieType) -> CriterionResult:
    if g.rank < 2:
        raise PreconditionError(f"{g}: rank 1 is outside the classification")
    return thm12_criterion(rational_type(g))


def expected_classification(g: LieType) -> bool:
    """Closed form of the answer, kept separate from the computation."""
    return (g.family in "BC" and g.rank % 2 == 1) or (g.family, g.rank) == ("E", 7)


def all_types(max_rank: int = 15):
    for f in "ABCD":
        for r in range(2 if f != "D" else 3, max_rank + 1):
            yield LieType(f, r)
    for f, r in _EXCEPTIONAL:
        if r <= max_rank:
            yield LieType(f, r)
