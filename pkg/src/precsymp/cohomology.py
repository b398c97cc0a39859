"""Degree-wise cohomology of a model over the rationals.

Everything is computed one degree at a time from the matrices of ``D``
between monomial slices.  Matrices are row-oriented: row ``i`` holds the
coordinates of ``D(basis_i)``, so cocycles form the left kernel and
coboundaries the row space.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .algebra import (Element, FreeGCA, Generator, enumerate_degree_basis, from_coordinates,
                      parse_element, sparse_coordinates)
from .differential import Model, extend_leibniz, is_minimal
from .errors import DegreeMismatchError, PreconditionError
from .linalg import Echelon, check_dimension, reduce_by_rref, rref

_lock = threading.Lock()


@dataclass
class DMatrix:
    """Sparse matrix of ``D`` from degree ``n`` to degree ``n + 1``."""

    degree: int
    rows: list     # one dict per source basis monomial
    shape: tuple

    def dense(self) -> list:
        m, n = self.shape
        out = [[Fraction(0)] * n for _ in range(m)]
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                out[i][j] = Fraction(v)
        return out


def differential_matrix(m: Model, n: int) -> DMatrix:
    src = enumerate_degree_basis(m.algebra, n) if n >= 0 else None
    tgt = enumerate_degree_basis(m.algebra, n + 1) if n + 1 >= 0 else None
    if src is None:
        return DMatrix(n, [], (0, len(tgt) if tgt else 0))
    check_dimension(len(src))
    check_dimension(len(tgt))
    rows = []
    for mono in src.basis:
        img = extend_leibniz(m, Element(m.algebra, {mono: 1}))
        rows.append(sparse_coordinates(img, tgt))
    return DMatrix(n, rows, (len(src), len(tgt)))


class _DegreeData:
    """Cached linear algebra for one degree: rank/kernel of D_n, image of D_{n-1}."""

    def __init__(self, m: Model, n: int):
        self.degree = n
        self.slice = enumerate_degree_basis(m.algebra, n) if n >= 0 else None
        self.dim = len(self.slice) if self.slice is not None else 0
        out_matrix = differential_matrix(m, n)
        self.out_echelon = Echelon(track=True)
        for i, row in enumerate(out_matrix.rows):
            self.out_echelon.add(row, {i: 1})
        self.out_rank = self.out_echelon.rank
        if n >= 1:
            in_matrix = differential_matrix(m, n - 1)
            self.in_echelon = Echelon(track=True)
            for i, row in enumerate(in_matrix.rows):
                self.in_echelon.add(row, {i: 1})
        else:
            self.in_echelon = Echelon(track=True)
        self.in_rank = self.in_echelon.rank
        self._reps = None

    @property
    def betti(self) -> int:
        return self.dim - self.out_rank - self.in_rank

    def representatives(self):
        """RREF data: image basis/pivots and representative basis/pivots."""
        if self._reps is None:
            image = self.in_echelon.rref()
            image_pivots = [min(v) for v in image]
            kernel = rref(self.out_echelon.dependencies)
            reduced = [reduce_by_rref(v, image, image_pivots) for v in kernel]
            reps = rref([v for v in reduced if v])
            self._reps = (image, image_pivots, reps, [min(v) for v in reps])
        return self._reps


def _data(m: Model, n: int) -> _DegreeData:
    key = ("cohomology", n)
    data = m._cache.get(key)
    if data is None:
        data = _DegreeData(m, n)
        with _lock:
            data = m._cache.setdefault(key, data)
    return data


def betti(m: Model, n: int) -> int:
    if n < 0:
        return 0
    return _data(m, n).betti


def betti_table(m: Model, lo: int, hi: int) -> list:
    return [(n, betti(m, n)) for n in range(lo, hi + 1)]


def is_cocycle(m: Model, e: Element) -> bool:
    return not extend_leibniz(m, e)


@dataclass
class Exactness:
    exact: bool
    witness: Element | None = None

    def __bool__(self):
        return self.exact


def _require_cocycle(m: Model, e: Element) -> int:
    if e.algebra != m.algebra:
        raise DegreeMismatchError("element lives over another algebra")
    if not e:
        return -1
    n = e.homogeneous_degree()
    de = extend_leibniz(m, e)
    if de:
        raise PreconditionError(f"{e} is not a cocycle: D = {de}", residue=de)
    return n


def is_coboundary(m: Model, e: Element | str) -> Exactness:
    """Decide whether a cocycle is exact; when it is, return ``x`` with ``D(x) = e``."""
    if isinstance(e, str):
        e = m.parse(e)
    n = _require_cocycle(m, e)
    if n < 0:
        return Exactness(True, m.algebra.zero())
    data = _data(m, n)
    if n == 0:
        return Exactness(False)
    coords = sparse_coordinates(e, data.slice)
    combo = data.in_echelon.solve(coords)
    if combo is None:
        return Exactness(False)
    src = enumerate_degree_basis(m.algebra, n - 1)
    witness = from_coordinates(m.algebra, src, combo)
    return Exactness(True, witness)


@dataclass
class CohomologySlice:
    degree: int
    representatives: list
    coboundary_basis: list
    _data: object = field(repr=False, default=None)

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def __len__(self):
        return len(self.representatives)


@dataclass
class Class:
    degree: int
    coords: tuple

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()


def cohomology_slice(m: Model, n: int) -> CohomologySlice:
    if n < 0:
        return CohomologySlice(n, [], [])
    data = _data(m, n)
    image, _, reps, _ = data.representatives()
    s = data.slice
    return CohomologySlice(
        n,
        [from_coordinates(m.algebra, s, v) for v in reps],
        [from_coordinates(m.algebra, s, v) for v in image],
        data,
    )


def express_class(m: Model, e: Element | str, s: CohomologySlice | None = None) -> Class:
    """Coordinates of ``[e]`` in the representative basis of its degree."""
    if isinstance(e, str):
        e = m.parse(e)
    n = _require_cocycle(m, e)
    if s is None:
        if n < 0:
            raise DegreeMismatchError("pass a slice to express the zero element")
        s = cohomology_slice(m, n)
    if n >= 0 and n != s.degree:
        raise DegreeMismatchError(f"element of degree {n} in slice of degree {s.degree}")
    data = s._data if s._data is not None else _data(m, s.degree)
    image, image_pivots, reps, rep_pivots = data.representatives()
    if n < 0:
        return Class(s.degree, tuple(Fraction(0) for _ in reps))
    v = reduce_by_rref(sparse_coordinates(e, data.slice), image, image_pivots)
    coords = tuple(v.get(p, Fraction(0)) for p in rep_pivots)
    rest = dict(v)
    for c, row in zip(coords, reps):
        if c:
            for k, x in row.items():
                y = rest.get(k, 0) - c * x
                if y:
                    rest[k] = y
                else:
                    rest.pop(k, None)
    assert not rest, "cocycle not spanned by representatives"
    return Class(s.degree, coords)


def class_element(s: CohomologySlice, c: Class | list) -> Element:
    coords = c.coords if isinstance(c, Class) else c
    out = None
    for x, rep in zip(coords, s.representatives):
        term = rep.scale(x)
        out = term if out is None else out + term
    if out is None:
        raise DegreeMismatchError("empty cohomology slice")
    return out


def verify_relation(m: Model, reps: Mapping[str, Element | str], relation: str) -> bool:
    """Evaluate a polynomial in model generators and named cocycles; True iff exact.

    ``reps`` maps new names to cocycles; the relation is parsed over the
    model's generators together with those names.
    """
    parsed = {}
    for name, rep in reps.items():
        if isinstance(rep, str):
            rep = m.parse(rep)
        n = _require_cocycle(m, rep)
        if n < 0:
            raise DegreeMismatchError(f"{name} is zero and has no degree")
        parsed[name] = (rep, n)
    ext = FreeGCA(list(m.algebra.generators) + [Generator(k, n) for k, (_, n) in parsed.items()])
    rel = parse_element(ext, relation)
    if not rel:
        return True
    rel.homogeneous_degree()
    images = [m.algebra.gen(g.name) if g.name in m.algebra else parsed[g.name][0]
              for g in ext.generators]
    value = m.algebra.zero()
    for mono, c in rel.terms.items():
        term = m.algebra.one().scale(c)
        for img, k in zip(images, mono):
            if k:
                term = term * img ** k
        value = value + term
    if not value:
        return True
    return is_coboundary(m, value).exact


# -- reports ----------------------------------------------------------------------------

@dataclass
class PoincareReport:
    fd: int
    top_betti: int
    above: dict         # degree -> betti for nonzero degrees above fd in the window
    asymmetric: list    # (i, betti(i), betti(fd - i))

    @property
    def ok(self) -> bool:
        return self.top_betti == 1 and not self.above and not self.asymmetric

    def __bool__(self):
        return self.ok

    def lines(self):
        if self.ok:
            return [f"poincare: pass fd={self.fd}"]
        out = [f"poincare: FAIL fd={self.fd} betti(fd)={self.top_betti}"]
        out += [f"  nonzero above top: H^{d} = {b}" for d, b in self.above.items()]
        out += [f"  betti({i})={a} but betti({self.fd - i})={b}" for i, a, b in self.asymmetric]
        return out


def default_window(m: Model, fd: int) -> range:
    evens = [g.degree for g in m.algebra.generators if not g.odd]
    top = max(evens, default=0)
    return range(fd + 1, fd + 2 * top + 3)


def poincare_check(m: Model, fd: int, window: range | None = None) -> PoincareReport:
    if window is None:
        window = default_window(m, fd)
    above = {d: b for d in window if (b := betti(m, d))}
    asym = []
    for i in range(0, fd // 2 + 1):
        a, b = betti(m, i), betti(m, fd - i)
        if a != b:
            asym.append((i, a, b))
    return PoincareReport(fd, betti(m, fd), above, asym)


@dataclass
class LefschetzStep:
    k: int
    source_degree: int
    bijective: bool
    kernel: list  # representative cocycles of the kernel


@dataclass
class LefschetzReport:
    steps: list

    @property
    def ok(self) -> bool:
        return all(s.bijective for s in self.steps)

    def __bool__(self):
        return self.ok

    @property
    def failures(self) -> list:
        return [s.k for s in self.steps if not s.bijective]

    def lines(self):
        out = []
        for s in self.steps:
            if s.bijective:
                out.append(f"lefschetz k={s.k}: pass")
            else:
                ker = ", ".join(str(x) for x in s.kernel)
                out.append(f"lefschetz k={s.k}: FAIL kernel=[{ker}]")
        return out


def hard_lefschetz(m: Model, omega: Element | Class | str, fd: int) -> LefschetzReport:
    """Test ``[x] ↦ [x·ω^k] : H^{m−k} → H^{m+k}`` for bijectivity, ``1 ≤ k ≤ m = fd/2``."""
    if fd % 2:
        raise PreconditionError("hard Lefschetz needs even formal dimension")
    if isinstance(omega, str):
        omega = m.parse(omega)
    elif isinstance(omega, Class):
        omega = class_element(cohomology_slice(m, 2), omega)
    if omega.homogeneous_degree() != 2:
        raise DegreeMismatchError("omega must have degree 2")
    _require_cocycle(m, omega)
    half = fd // 2
    steps = []
    power = m.algebra.one()
    for k in range(1, half + 1):
        power = power * omega
        src = cohomology_slice(m, half - k)
        tgt = cohomology_slice(m, half + k)
        images = [express_class(m, r * power, tgt).coords if (r * power) else
                  tuple(Fraction(0) for _ in range(tgt.dim)) for r in src.representatives]
        rows = [{j: x for j, x in enumerate(coords) if x} for coords in images]
        kernel = _left_kernel(rows)
        kernel_elems = [class_element(src, [vec.get(i, Fraction(0)) for i in range(src.dim)])
                        for vec in kernel]
        bij = src.dim == tgt.dim and not kernel
        steps.append(LefschetzStep(k, half - k, bij, kernel_elems))
    return LefschetzReport(steps)


def _left_kernel(rows):
    from .linalg import left_kernel
    return left_kernel(rows)


def toomer(m: Model, fd: int) -> int:
    """Largest ``s`` such that the top class has a representative of word length ≥ s."""
    if not is_minimal(m):
        raise PreconditionError("the Toomer invariant is computed on a minimal model")
    data = _data(m, fd)
    if data.betti == 0:
        raise PreconditionError(f"H^{fd} = 0; fd is not the formal dimension")
    basis = data.slice.basis
    kernel = rref(data.out_echelon.dependencies)
    s = 0
    while True:
        level = s + 1
        # cocycles supported on monomials of word length >= level
        low = {i for i, mono in enumerate(basis) if sum(mono) < level}
        if len(low) == len(basis):
            return s
        # kernel ∩ F_level: combinations of kernel vectors vanishing on low coordinates
        rows = [{j: v for j, v in vec.items() if j in low} for vec in kernel]
        combos = _left_kernel(rows)
        found = False
        for combo in combos:
            z = {}
            for i, c in combo.items():
                for j, v in kernel[i].items():
                    x = z.get(j, 0) + c * v
                    if x:
                        z[j] = x
                    else:
                        z.pop(j, None)
            if z and not data.in_echelon.contains(z):
                found = True
                break
        if not found:
            return s
        s = level
