"""Differentials on free graded-commutative algebras and relative (KS) models."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .algebra import Element, FreeGCA, Generator, parse_element, transport
from .errors import DegreeMismatchError, DifferentialError, NotKSExtensionError, ParseError


class Model:
    """A free algebra with a degree +1 derivation given on generators.

    Construction checks the degree of every image; ``D∘D = 0`` is checked
    separately by :func:`check_d_squared` so that broken models can still be
    inspected.
    """

    def __init__(self, algebra: FreeGCA, images: Mapping[str, Element | str] | None = None,
                 name: str | None = None):
        self.algebra = algebra
        self.name = name
        imgs = {}
        for gname, img in (images or {}).items():
            g = algebra.generator(gname)
            if isinstance(img, str):
                img = parse_element(algebra, img)
            if img.algebra != algebra:
                raise DegreeMismatchError(f"image of {gname} lives over another algebra")
            if img:
                degs = img.degrees()
                if degs != {g.degree + 1}:
                    raise DegreeMismatchError(
                        f"d({gname}) must have degree {g.degree + 1}, got {sorted(degs)}: {img}")
                imgs[gname] = img
        self._images = tuple(imgs.get(g.name, algebra.zero()) for g in algebra.generators)
        self._cache: dict = {}

    @classmethod
    def from_lists(cls, gens: Iterable, images: Mapping[str, str] | None = None, name=None):
        """Shorthand: ``Model.from_lists([("t", 2), ("v1", 3)], {"v1": "t^2"})``."""
        return cls(FreeGCA(gens), images or {}, name=name)

    @property
    def images(self) -> dict:
        return {g.name: img for g, img in zip(self.algebra.generators, self._images)}

    def image(self, name: str) -> Element:
        return self._images[self.algebra.index(name)]

    def gen(self, name: str) -> Element:
        return self.algebra.gen(name)

    def parse(self, text: str) -> Element:
        return parse_element(self.algebra, text)

    def d(self, e: Element | str) -> Element:
        if isinstance(e, str):
            e = self.parse(e)
        return extend_leibniz(self, e)

    @property
    def odd_generators(self) -> list:
        return [g for g in self.algebra.generators if g.odd]

    @property
    def even_generators(self) -> list:
        return [g for g in self.algebra.generators if not g.odd]

    def same_as(self, other: "Model") -> bool:
        """Equality up to reordering of generators (matched by name)."""
        if set(self.algebra.generators) != set(other.algebra.generators):
            return False
        for g in self.algebra.generators:
            if transport(self.image(g.name), other.algebra) != other.image(g.name):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, Model):
            return NotImplemented
        return self.algebra == other.algebra and self._images == other._images

    def __hash__(self):
        return hash((self.algebra, self._images))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Model{label} {self.algebra!r}>"

    def __str__(self):
        return format_model(self)


def _d_monomial(m: Model, mono: tuple) -> Element:
    cached = m._cache.get(mono)
    if cached is not None:
        return cached
    alg = m.algebra
    gens = alg.generators
    out = alg.zero()
    prefix_degree = 0
    for i, e in enumerate(mono):
        if not e:
            continue
        dg = m._images[i]
        if dg:
            left = tuple(mono[j] if j < i else 0 for j in range(len(mono)))
            right = tuple(mono[j] if j > i else 0 for j in range(len(mono)))
            if gens[i].odd:
                middle = dg
            else:
                power = tuple(e - 1 if j == i else 0 for j in range(len(mono)))
                middle = Element(alg, {power: e}) * dg
            term = Element(alg, {left: 1}) * middle * Element(alg, {right: 1})
            out = out + (term if prefix_degree % 2 == 0 else -term)
        prefix_degree += e * gens[i].degree
    m._cache[mono] = out
    return out


def extend_leibniz(m: Model, e: Element) -> Element:
    """``D(e)`` from the images of generators via ``d(xy) = d(x)y + (-1)^|x| x d(y)``."""
    if e.algebra is not m.algebra and e.algebra != m.algebra:
        raise DegreeMismatchError("element lives over another algebra")
    out = m.algebra.zero()
    terms: dict = {}
    for mono, c in e.terms.items():
        for m2, c2 in _d_monomial(m, mono).terms.items():
            terms[m2] = terms.get(m2, 0) + c * c2
    out = Element(m.algebra, terms)
    return out


@dataclass
class DSquaredReport:
    residues: dict  # generator name -> nonzero D(D(g))

    @property
    def ok(self) -> bool:
        return not self.residues

    def __bool__(self):
        return self.ok

    def lines(self):
        if self.ok:
            return ["dsquared: pass"]
        return [f"dsquared: FAIL on {g}: D(D({g})) = {r}" for g, r in self.residues.items()]


def check_d_squared(m: Model) -> DSquaredReport:
    residues = {}
    for g in m.algebra.generators:
        r = extend_leibniz(m, m.image(g.name))
        if r:
            residues[g.name] = r
    return DSquaredReport(residues)


def is_minimal(m: Model) -> bool:
    """True iff every image is decomposable (all terms of word length ≥ 2)."""
    for img in m._images:
        wl = img.min_word_length()
        if wl is not None and wl < 2:
            return False
    return True


def formal_dimension(m: Model | FreeGCA) -> int:
    """Σ odd degrees − Σ (even degree − 1)."""
    alg = m.algebra if isinstance(m, Model) else m
    return sum(g.degree if g.odd else -(g.degree - 1) for g in alg.generators)


# -- relative models -------------------------------------------------------------------

@dataclass
class KSExtension:
    """``(Q[t_1..t_r], 0) → (Q[t]⊗ΛV, D) → (ΛV, d)`` with base generators prepended."""

    base: tuple
    fiber: Model
    total: Model

    @property
    def base_names(self) -> tuple:
        return tuple(g.name for g in self.base)

    @property
    def rank(self) -> int:
        return len(self.base)


def restrict(total: Model, base_names: Iterable[str], fiber_algebra: FreeGCA | None = None) -> Model:
    """The quotient model ``total / (base generators)`` over the remaining generators."""
    base_names = tuple(base_names)
    alg = total.algebra
    if fiber_algebra is None:
        fiber_algebra = FreeGCA([g for g in alg.generators if g.name not in base_names])
    images = {g.name: transport(total.image(g.name), fiber_algebra, drop=base_names)
              for g in fiber_algebra.generators}
    return Model(fiber_algebra, images)


def ks_extend(fiber: Model, base: Iterable, total_images: Mapping[str, Element | str]) -> KSExtension:
    """Validate and build a KS extension of ``fiber`` by even base generators."""
    base = tuple(g if isinstance(g, Generator) else Generator(*g) for g in base)
    for g in base:
        if g.odd:
            raise NotKSExtensionError(f"base generator {g.name} must have even degree")
    total_alg = FreeGCA(base + fiber.algebra.generators)
    imgs = {}
    for name, img in total_images.items():
        if name in {g.name for g in base}:
            if (parse_element(total_alg, img) if isinstance(img, str) else img):
                raise NotKSExtensionError(f"base generator {name} must have zero differential")
            continue
        imgs[name] = img
    total = Model(total_alg, imgs)
    return validate_extension(fiber, total, base)


def validate_extension(fiber: Model, total: Model, base: Iterable) -> KSExtension:
    """``base`` holds generators of ``total`` (or their names)."""
    base = tuple(total.algebra.generator(g) if isinstance(g, str) else g for g in base)
    names = {g.name for g in base}
    for g in base:
        if total.image(g.name):
            raise NotKSExtensionError(f"base generator {g.name} must have zero differential")
    reduced = restrict(total, names, fiber.algebra)
    bad = [g.name for g in fiber.algebra.generators
           if reduced.image(g.name) != fiber.image(g.name)]
    if bad:
        detail = "; ".join(f"{n}: {reduced.image(n)} vs {fiber.image(n)}" for n in bad)
        raise NotKSExtensionError(f"not a KS extension over given fiber ({detail})")
    report = check_d_squared(total)
    if not report.ok:
        raise DifferentialError("total differential does not square to zero", report.residues)
    return KSExtension(base, fiber, total)


def split_extension(total: Model, base_names: Iterable[str], fiber: Model | None = None) -> KSExtension:
    """View ``total`` as a KS extension over the generators not in ``base_names``.

    The total model is re-expressed over an algebra with the base generators
    first; if ``fiber`` is given its generator order is used for the rest.
    """
    base_names = tuple(base_names)
    alg = total.algebra
    base = tuple(alg.generator(n) for n in base_names)
    if fiber is None:
        fiber = restrict(total, base_names)
    total_alg = FreeGCA(base + fiber.algebra.generators)
    reordered = Model(total_alg, {g.name: transport(total.image(g.name), total_alg)
                                  for g in alg.generators})
    return validate_extension(fiber, reordered, base)


# -- model file format -----------------------------------------------------------------

def parse_model(text: str, name: str | None = None) -> Model:
    """Parse the line format ``gen <name> <degree>`` / ``d <name> = <element>`` / ``# comment``."""
    gens = []
    seen = {}
    pending = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "gen":
            parts = rest.split()
            if len(parts) != 2:
                raise ParseError("expected 'gen <name> <degree>'", lineno)
            gname, deg = parts
            if gname in seen:
                raise ParseError(f"duplicate generator {gname!r} (first declared on line {seen[gname]})", lineno)
            try:
                gens.append(Generator(gname, int(deg)))
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            seen[gname] = lineno
        elif head == "d":
            lhs, eq, rhs = rest.partition("=")
            if not eq:
                raise ParseError("expected 'd <name> = <element>'", lineno)
            pending.append((lineno, lhs.strip(), rhs.strip()))
        else:
            raise ParseError(f"unknown statement {head!r}", lineno)
    alg = FreeGCA(gens)
    images = {}
    for lineno, gname, rhs in pending:
        if gname not in alg:
            raise ParseError(f"differential of undeclared generator {gname!r}", lineno)
        if gname in images:
            raise ParseError(f"second differential for {gname!r}", lineno)
        try:
            img = parse_element(alg, rhs)
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None
        expected = alg.generator(gname).degree + 1
        if img and img.degrees() != {expected}:
            raise ParseError(f"d({gname}) must have degree {expected}, got {sorted(img.degrees())}", lineno)
        images[gname] = img
    return Model(alg, images, name=name)


def format_model(m: Model) -> str:
    lines = [f"gen {g.name} {g.degree}" for g in m.algebra.generators]
    for g in m.algebra.generators:
        img = m.image(g.name)
        if img:
            lines.append(f"d {g.name} = {img}")
    return "\n".join(lines) + "\n"


def load_model(path) -> Model:
    from pathlib import Path
    p = Path(path)
    return parse_model(p.read_text(), name=p.stem)


def scale_coefficients(m: Model, factor) -> Model:
    """Multiply every image by a nonzero rational (used in sign-normalization tests)."""
    factor = Fraction(factor)
    return Model(m.algebra, {n: img.scale(factor) for n, img in m.images.items()})
