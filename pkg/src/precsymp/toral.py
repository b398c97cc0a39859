"""Torus-rank tooling: finiteness witnesses, full-torus completion, Hasse diagrams and orders."""
from __future__ import annotations

import random
import shlex
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from pathlib import Path
from typing import Iterable, Mapping

from .algebra import Element, FreeGCA, Generator, enumerate_degree_basis, transport
from .csym import Finiteness, finiteness
from .differential import (KSExtension, Model, check_d_squared, load_model,
                           split_extension, validate_extension)
from .errors import DifferentialError, NotKSExtensionError, ParseError, PreconditionError


def verify_r0_witness(ext: KSExtension) -> bool:
    """Finite cohomology of the total space certifies ``r_0(fiber) ≥ rank``."""
    for g in ext.base:
        if g.degree != 2:
            raise PreconditionError(f"base generator {g.name} has degree {g.degree}")
    return finiteness(ext.total).status is Finiteness.Finite


def euler_homotopy_bound(m: Model) -> int:
    """``#odd − #even`` generators, an upper bound for the toral rank of an elliptic space."""
    return len(m.odd_generators) - len(m.even_generators)


# -- full-torus completion ---------------------------------------------------------------

@dataclass
class CompletionResult:
    extension: KSExtension | None
    attempts: int
    status: str          # "Finite" or "Undetermined"
    diagnostics: list = field(default_factory=list)

    def __bool__(self):
        return self.extension is not None


def _monomials_with(alg: FreeGCA, poly_names: list, must: str, degree: int) -> list:
    """Monomials of ``degree`` in the named even generators that are divisible by ``must``."""
    if degree % 2:
        return []
    k = degree // 2
    out = []
    idx = {n: alg.index(n) for n in poly_names}
    for combo in combinations_with_replacement(poly_names, k):
        if must not in combo:
            continue
        exps = [0] * len(alg.generators)
        for n in combo:
            exps[idx[n]] += 1
        out.append(tuple(exps))
    return out


def _sample(rng: random.Random) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-5, 5)
    return Fraction(num, rng.randint(1, 3))


def complete_to_full_torus(fiber: Model, partial: KSExtension | None = None, seed: int = 0,
                           budget: int = 64, new_name: str | None = None) -> CompletionResult:
    """Adjoin one more degree-2 generator so that the total cohomology becomes finite.

    Every odd generator's image gains a polynomial in the ideal of the new
    generator.  Attempt 0 adds the pure power of the new generator to each
    image; later attempts draw sparse coefficients from ``random.Random(seed)``.
    Attempts whose differential does not square to zero are discarded.
    Exhausting the budget reports
    ``Undetermined`` and never claims that no completion exists.
    """
    if any(fiber.image(g.name) for g in fiber.algebra.generators):
        raise PreconditionError("fiber must have zero differential")
    if any(not g.odd for g in fiber.algebra.generators):
        raise PreconditionError("fiber must be generated in odd degrees")
    if partial is None:
        base_gens: tuple = ()
        total = fiber
    else:
        if finiteness(partial.total).status is not Finiteness.Finite:
            raise PreconditionError("partial extension is not certified finite")
        base_gens = partial.base
        total = partial.total
    n = len(fiber.algebra.generators)
    if len(base_gens) != n - 1:
        raise PreconditionError(f"partial extension has {len(base_gens)} base generators, need {n - 1}")
    taken = {g.name for g in total.algebra.generators}
    if new_name is None:
        i = n
        new_name = f"t{i}"
        while new_name in taken:
            i += 1
            new_name = f"t{i}"
    new_base = tuple(base_gens) + (Generator(new_name, 2),)
    alg = FreeGCA(new_base + fiber.algebra.generators)
    poly_names = [g.name for g in new_base]
    lifted = {g.name: transport(total.image(g.name), alg) for g in fiber.algebra.generators}
    profiles = {g.name: _monomials_with(alg, poly_names, new_name, g.degree + 1)
                for g in fiber.algebra.generators}
    rng = random.Random(seed)
    diagnostics = []
    for attempt in range(budget):
        images = {}
        for name, monos in profiles.items():
            if attempt == 0:
                power = (alg.generator(name).degree + 1) // 2
                coeffs = {mono: Fraction(1) for mono in monos if mono[alg.index(new_name)] == power}
            else:
                coeffs = {mono: _sample(rng) for mono in monos if rng.random() < 0.5}
            images[name] = lifted[name] + Element(alg, coeffs)
        cand = Model(alg, images)
        if not check_d_squared(cand).ok:
            diagnostics.append(f"attempt {attempt}: D^2 != 0")
            continue
        fin = finiteness(cand, cross_check=False)
        if fin.status is Finiteness.Finite:
            ext = validate_extension(fiber, cand, new_base)
            return CompletionResult(ext, attempt + 1, "Finite", diagnostics)
        diagnostics.append(f"attempt {attempt}: {fin.status}")
    return CompletionResult(None, budget, "Undetermined",
                            diagnostics + [f"no finite completion within {budget} samples"])


# -- orders between Borel models ----------------------------------------------------------

@dataclass
class OrderReport:
    ok: bool
    details: list

    def __bool__(self):
        return self.ok


def verify_order(lower: Model, upper: Model, base_names: Iterable[str] | None = None,
                 rename: Mapping[str, str] | None = None,
                 expect_finite: tuple = (True, True)) -> OrderReport:
    """Check ``lower < upper``: ``upper`` is a KS extension of ``lower`` by new degree-2 generators.

    ``rename`` maps generator names of ``lower`` to names in ``upper``; no
    other matching is attempted.  ``expect_finite`` gives the declared
    finiteness of each end (None skips that end).
    """
    details = []
    if rename:
        alg = FreeGCA([Generator(rename.get(g.name, g.name), g.degree) for g in lower.algebra.generators])
        lower = Model(alg, {rename.get(n, n): transport(img, alg, rename=rename)
                            for n, img in lower.images.items()})
    lower_names = set(lower.algebra.names)
    if base_names is None:
        base_names = [g.name for g in upper.algebra.generators if g.name not in lower_names]
    base_names = list(base_names)
    missing = lower_names - set(upper.algebra.names)
    if missing:
        return OrderReport(False, [f"generators {sorted(missing)} of the lower model are absent above"])
    for b in base_names:
        if upper.algebra.generator(b).degree != 2:
            details.append(f"new generator {b} is not of degree 2")
            return OrderReport(False, details)
    extra = set(upper.algebra.names) - lower_names - set(base_names)
    if extra:
        return OrderReport(False, [f"generators {sorted(extra)} are neither shared nor new"])
    try:
        split_extension(upper, base_names, fiber=lower)
        details.append(f"KS extension by {', '.join(base_names) or 'nothing'}")
    except (NotKSExtensionError, DifferentialError) as exc:
        return OrderReport(False, [str(exc)])
    ok = True
    for label, model, want in (("lower", lower, expect_finite[0]), ("upper", upper, expect_finite[1])):
        if want is None:
            continue
        got = finiteness(model).status is Finiteness.Finite
        details.append(f"{label} finite: {got}")
        ok &= got == want
    return OrderReport(ok, details)


def ideal_covers_degree(alg: FreeGCA, degree: int, names: Iterable[str]) -> list:
    """Monomials of ``degree`` lying outside the ideal generated by ``names`` (empty means covered)."""
    idx = [alg.index(n) for n in names]
    return [mono for mono in enumerate_degree_basis(alg, degree).basis
            if not any(mono[i] for i in idx)]


# -- Hasse diagrams ------------------------------------------------------------------------

@dataclass
class Point:
    label: str
    s: int
    t: int
    model: str | None = None

    @property
    def coords(self):
        return (self.s, self.t)


@dataclass
class HasseDiagram:
    r0: int
    points: dict = field(default_factory=dict)     # label -> Point
    edges: list = field(default_factory=list)      # (label, label)
    paths: list = field(default_factory=list)      # tuples of labels
    renames: dict = field(default_factory=dict)    # (label, label) -> {lower name: upper name}
    source: Path | None = None

    def add_point(self, label, s, t, model=None):
        if label in self.points:
            raise ValueError(f"duplicate point label {label!r}")
        self.points[label] = Point(label, s, t, model)

    def at(self, s, t) -> list:
        return [p for p in self.points.values() if p.coords == (s, t)]

    def resolve(self, s, t) -> str:
        found = self.at(s, t)
        if len(found) != 1:
            raise ValueError(f"coordinates ({s}, {t}) name {len(found)} points")
        return found[0].label

    def root(self):
        found = self.at(0, 0)
        return found[0] if found else None

    def leaves(self) -> list:
        return [p for p in self.points.values() if p.s + p.t == self.r0 and p.t >= 1]

    def validate(self) -> list:
        """Structural problems (empty list when the diagram is well formed)."""
        problems = []
        if self.root() is None:
            problems.append("root (0, 0) missing")
        for p in self.points.values():
            if p.s < 0 or p.t < 0 or p.s + p.t > self.r0:
                problems.append(f"{p.label}=({p.s}, {p.t}) outside 0 <= s, t and s + t <= {self.r0}")
        for a, b in self.edges:
            if a not in self.points or b not in self.points:
                problems.append(f"edge {a}-{b} names an unknown point")
                continue
            P, Q = self.points[a], self.points[b]
            if not (P.s <= Q.s and P.t < Q.t):
                problems.append(f"edge {a}{P.coords} < {b}{Q.coords} violates s <= s', t < t'")
        for path in self.paths:
            for a, b in zip(path, path[1:]):
                if a not in self.points or b not in self.points:
                    problems.append(f"path step {a}-{b} names an unknown point")
                    continue
                P, Q = self.points[a], self.points[b]
                if not (P.s <= Q.s and P.t < Q.t):
                    problems.append(f"path step {a} < {b} is not an order")
        return problems

    def to_dot(self) -> str:
        lines = ["digraph hasse {", "  rankdir=BT;"]
        for p in sorted(self.points.values(), key=lambda p: (p.t, p.s, p.label)):
            lines.append(f'  "{p.label}" [label="{p.label} ({p.s},{p.t})"];')
        for a, b in self.edges:
            lines.append(f'  "{a}" -> "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def format(self) -> str:
        out = [f"r0 {self.r0}"]
        for p in self.points.values():
            out.append(" ".join(["point", str(p.s), str(p.t), p.label] + ([p.model] if p.model else [])))
        for a, b in self.edges:
            extra = self.renames.get((a, b))
            tail = ([" ".join(f"{k}={v}" for k, v in extra.items())] if extra else [])
            out.append(" ".join(["edge", a, b] + tail))
        for path in self.paths:
            out.append("path " + " ".join(path))
        return "\n".join(out) + "\n"

    def point_model(self, label: str) -> Model | None:
        p = self.points[label]
        if p.model is None:
            return None
        base = self.source.parent if self.source is not None else Path(".")
        return load_model(base / p.model)


def _int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None


def parse_hasse(text: str, source: Path | None = None) -> HasseDiagram:
    """Line format: ``r0 N``, ``point s t [label] [model]``, ``edge s1 t1 s2 t2`` or
    ``edge L1 L2 [a=b ...]``, ``path L1 L2 ...``, ``# comment``."""
    r0 = None
    points = []
    edges = []
    paths = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = shlex.split(line)
        head, args = toks[0], toks[1:]
        if head == "r0":
            if len(args) != 1:
                raise ParseError("expected 'r0 N'", lineno)
            r0 = _int(args[0], lineno)
        elif head == "point":
            if not 2 <= len(args) <= 4:
                raise ParseError("expected 'point s t [label] [model]'", lineno)
            s, t = _int(args[0], lineno), _int(args[1], lineno)
            label = args[2] if len(args) > 2 else f"({s},{t})"
            model = args[3] if len(args) > 3 else None
            points.append((lineno, label, s, t, model))
        elif head == "edge":
            edges.append((lineno, args))
        elif head == "path":
            if len(args) < 2:
                raise ParseError("a path needs at least two points", lineno)
            paths.append(tuple(args))
        else:
            raise ParseError(f"unknown statement {head!r}", lineno)
    if r0 is None:
        raise ParseError("missing 'r0' line", 1)
    h = HasseDiagram(r0, source=source)
    for lineno, label, s, t, model in points:
        try:
            h.add_point(label, s, t, model)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    for lineno, args in edges:
        rename_toks = [a for a in args if "=" in a]
        plain = [a for a in args if "=" not in a]
        try:
            if len(plain) == 4 and all(a.lstrip("-").isdigit() for a in plain):
                a = h.resolve(int(plain[0]), int(plain[1]))
                b = h.resolve(int(plain[2]), int(plain[3]))
            elif len(plain) == 2:
                a, b = plain
            else:
                raise ValueError("expected 'edge s1 t1 s2 t2' or 'edge L1 L2'")
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        h.edges.append((a, b))
        if rename_toks:
            h.renames[(a, b)] = dict(tok.split("=", 1) for tok in rename_toks)
    h.paths = paths
    return h


def load_hasse(path) -> HasseDiagram:
    p = Path(path)
    return parse_hasse(p.read_text(), source=p)


def hasse_check_thm17(h: HasseDiagram) -> bool:
    """Whether the leaf ``(r0 − 1, 1)`` is present."""
    return bool(h.at(h.r0 - 1, 1))


def second_row_empty(h: HasseDiagram) -> bool:
    """No point with ``s = 1`` (expected for products of odd spheres)."""
    return not any(p.s == 1 for p in h.points.values())


def verify_edges(h: HasseDiagram) -> list:
    """Check every edge and path step whose two ends both carry models; returns (a, b, report)."""
    out = []
    steps = list(h.edges)
    for path in h.paths:
        steps += [s for s in zip(path, path[1:]) if s not in steps]
    for a, b in steps:
        lo, hi = h.point_model(a), h.point_model(b)
        if lo is None or hi is None:
            continue
        rename = h.renames.get((a, b))
        if h.points[a].coords == (0, 0):
            expect = (None, True)
        else:
            expect = (True, True)
        out.append((a, b, verify_order(lo, hi, rename=rename, expect_finite=expect)))
    return out
