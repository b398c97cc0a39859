"""Finiteness, c-symplectic detection, degree criteria and model constructions."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from .algebra import Element, FreeGCA, Generator, enumerate_degree_basis, sparse_coordinates, transport
from .cohomology import (betti, class_element, cohomology_slice, default_window, express_class,
                         is_coboundary, is_cocycle, poincare_check, toomer)
from .differential import Model, formal_dimension, split_extension
from .errors import PreconditionError, ResourceError, ShapeError
from .linalg import Echelon

DEFAULT_SAMPLES = (1, 2, 3, 5, 7)


# -- degree tuples ------------------------------------------------------------------------

class DegreeTuple(tuple):
    """Sorted odd degrees ``1 < k_1 ≤ … ≤ k_n``."""

    def __new__(cls, degrees: Iterable[int]):
        degs = tuple(sorted(int(k) for k in degrees))
        for k in degs:
            if k % 2 == 0 or k < 3:
                raise ValueError(f"degree {k} is not an odd integer ≥ 3")
        return super().__new__(cls, degs)

    @property
    def n(self) -> int:
        return len(self)

    def pairs(self):
        """Crosswise pairs ``(k_i, k_{n-i})`` for ``i = 1..(n-1)/2`` (1-based)."""
        n = len(self)
        return [(self[i], self[n - 2 - i]) for i in range((n - 1) // 2)]


@dataclass
class CriterionResult:
    holds: bool
    reason: str
    violated_pair: tuple | None = None

    def __bool__(self):
        return self.holds


def thm12_criterion(k: Iterable[int]) -> CriterionResult:
    """n odd and ``k_i + k_{n-i} < k_n`` for every crosswise pair."""
    k = DegreeTuple(k)
    if len(k) % 2 == 0:
        return CriterionResult(False, "n even")
    top = k[-1]
    for a, b in k.pairs():
        if a + b >= top:
            return CriterionResult(False, f"{a} + {b} = {a + b} ≥ {top}", (a, b))
    return CriterionResult(True, "all crosswise sums below the top degree")


def thm26_necessary(k: Iterable[int]) -> CriterionResult:
    """n odd and ``k_i + k_{n-i} ≤ k_n + 1`` for every crosswise pair."""
    k = DegreeTuple(k)
    if len(k) % 2 == 0:
        return CriterionResult(False, "n even")
    top = k[-1]
    for a, b in k.pairs():
        if a + b > top + 1:
            return CriterionResult(False, f"{a} + {b} = {a + b} > {top + 1}", (a, b))
    return CriterionResult(True, "all crosswise sums at most top degree + 1")


def witness_exponents(k: Iterable[int]) -> tuple:
    k = DegreeTuple(k)
    top = k[-1]
    pair_exps = tuple((top + 1 - a - b) // 2 for a, b in k.pairs())
    return pair_exps, (top + 1) // 2


def thm12_witness(k: Iterable[int]) -> Model:
    """Borel model ``Dv_n = Σ v_i v_{n-i} t^{a_i} − t^{(k_n+1)/2}`` over ``(ΛV, 0)``."""
    k = DegreeTuple(k)
    crit = thm12_criterion(k)
    if not crit:
        raise PreconditionError(f"degree criterion fails for {tuple(k)}: {crit.reason}")
    n = len(k)
    gens = [Generator("t", 2)] + [Generator(f"v{i + 1}", d) for i, d in enumerate(k)]
    alg = FreeGCA(gens)
    pair_exps, top_exp = witness_exponents(k)
    t = alg.gen("t")
    img = -(t ** top_exp)
    for i, a in enumerate(pair_exps):
        img = img + alg.gen(f"v{i + 1}") * alg.gen(f"v{n - 1 - i}") * t ** a
    return Model(alg, {f"v{n}": img}, name="witness" + "_".join(map(str, k)))


# -- finiteness ---------------------------------------------------------------------------

class Finiteness(Enum):
    Finite = "Finite"
    Infinite = "Infinite"
    Undetermined = "Undetermined"

    def __str__(self):
        return self.value


@dataclass
class FinitenessVerdict:
    status: Finiteness
    pure_parts: dict
    quotient_dims: list          # dims of Q[even]/(pure parts) by polynomial degree
    diagnostics: list = field(default_factory=list)

    def __bool__(self):
        return self.status is Finiteness.Finite

    def lines(self):
        out = [f"finite: {self.status}"]
        out += [f"  pure part {k}: {v}" for k, v in self.pure_parts.items()]
        out.append("  quotient dims: " + " ".join(map(str, self.quotient_dims)))
        out += ["  " + d for d in self.diagnostics]
        return out


def pure_part(e: Element) -> Element:
    odd = e.algebra.odd_indices
    return Element(e.algebra, {m: c for m, c in e.terms.items() if not any(m[i] for i in odd)})


def _quotient_dims(poly_alg: FreeGCA, polys: list, bound: int) -> list:
    """Dimensions of ``Q[t]/(polys)`` in polynomial degrees ``0..bound`` (stops at the first zero)."""
    dims = []
    for d in range(bound + 1):
        slice_ = enumerate_degree_basis(poly_alg, 2 * d)
        ech = Echelon()
        for f in polys:
            fd = f.homogeneous_degree()
            if fd > 2 * d:
                continue
            for mono in enumerate_degree_basis(poly_alg, 2 * d - fd).basis:
                prod = Element(poly_alg, {mono: 1}) * f
                ech.add(sparse_coordinates(prod, slice_))
        dims.append(len(slice_) - ech.rank)
        if dims[-1] == 0:
            break
    return dims


def finiteness(m: Model, bound: int | None = None, cross_check: bool = True) -> FinitenessVerdict:
    """Decide ``dim H(m) < ∞`` from the pure parts of the odd generators.

    Even generators must have degree 2.  ``Q[t_1..t_r]/(f_i)`` is generated in
    degree 2, so a vanishing slice means every higher slice vanishes.  A
    quotient still nonzero at the polynomial degree ``Σ_{r largest}(d_j − 1) + 1``
    is infinite-dimensional (an m-primary ideal generated in degrees
    ``d_1 ≥ d_2 ≥ …`` contains a regular sequence of degrees ``d_1..d_r``).
    """
    alg = m.algebra
    evens = [g for g in alg.generators if not g.odd]
    for g in evens:
        if g.degree != 2:
            raise PreconditionError(f"even generator {g.name} has degree {g.degree}; only degree 2 is supported")
    poly_alg = FreeGCA(evens)
    odd_names = [g.name for g in alg.generators if g.odd]
    pure = {}
    for name in odd_names:
        p = pure_part(m.image(name))
        if p:
            pure[name] = transport(p, poly_alg, drop=odd_names)
    polys = list(pure.values())
    r = len(evens)
    poly_degs = sorted((f.homogeneous_degree() // 2 for f in polys), reverse=True)
    default_bound = sum(poly_degs) + 2 * r
    proof_bound = sum(d - 1 for d in poly_degs[:r]) + 1 if len(poly_degs) >= r else None
    if bound is None:
        bound = default_bound
    diagnostics = []
    if r == 0:
        dims = [1, 0]
        status = Finiteness.Finite
    elif len(polys) < r:
        dims = _quotient_dims(poly_alg, polys, min(bound, 2 * r + 2))
        status = Finiteness.Infinite
        diagnostics.append(f"{len(polys)} nonzero pure parts in {r} polynomial variables")
    else:
        dims = _quotient_dims(poly_alg, polys, bound)
        if dims[-1] == 0:
            status = Finiteness.Finite
        elif bound >= proof_bound:
            status = Finiteness.Infinite
            diagnostics.append(f"quotient nonzero in polynomial degree {bound} ≥ {proof_bound}")
        else:
            status = Finiteness.Undetermined
            diagnostics.append(f"bound {bound} below the certifying degree {proof_bound}")
    verdict = FinitenessVerdict(status, {k: str(v) for k, v in pure.items()}, dims, diagnostics)
    if cross_check and status is Finiteness.Finite:
        fd = formal_dimension(m)
        problems = []
        if fd < 0:
            problems.append(f"formal dimension {fd} < 0")
        else:
            top = betti(m, fd)
            if top != 1:
                problems.append(f"betti({fd}) = {top}, expected 1")
            for d in default_window(m, fd):
                if betti(m, d):
                    problems.append(f"betti({d}) = {betti(m, d)} above the formal dimension")
        if problems:
            verdict.status = Finiteness.Undetermined
            verdict.diagnostics += ["cohomology cross-check disagrees: " + p for p in problems]
        else:
            verdict.diagnostics.append(f"cohomology cross-check: betti({fd}) = 1, window above vanishes")
    return verdict


# -- c-symplectic detection -------------------------------------------------------------

class CsymStatus(Enum):
    CSymplectic = "CSymplectic"
    NotCSymplectic = "NotCSymplectic"
    Undetermined = "Undetermined"

    def __str__(self):
        return self.value


@dataclass
class CsymWitness:
    omega: Element
    power: int
    top_class: tuple   # coordinates of [ω^power] in H^fd, nonzero

    def verify(self, m: Model) -> bool:
        if self.omega.homogeneous_degree() != 2 or not is_cocycle(m, self.omega):
            return False
        top = self.omega ** self.power
        return bool(top) and not is_coboundary(m, top).exact


@dataclass
class CsymVerdict:
    status: CsymStatus
    witness: CsymWitness | None = None
    diagnostics: list = field(default_factory=list)
    fd: int | None = None

    def __bool__(self):
        return self.status is CsymStatus.CSymplectic

    def machine(self) -> str:
        out = f"status={self.status}"
        if self.witness is not None:
            out += f" witness_power={self.witness.power}"
        return out

    def lines(self):
        out = [f"csym: {self.status}"]
        if self.witness is not None:
            out.append(f"  omega = {self.witness.omega}, [omega^{self.witness.power}] != 0")
        out += ["  " + d for d in self.diagnostics]
        return out


def is_c_symplectic(m: Model, samples: Sequence[int] = DEFAULT_SAMPLES,
                    check_finite: bool = True) -> CsymVerdict:
    """Look for ω ∈ H² with ω^{fd/2} a top class.

    With ``dim H² = 1`` the answer is exact.  With ``dim H² = r ≥ 2`` the
    points ``(1, s, …, s^{r−1})`` for ``s`` in ``samples`` are tried in order;
    non-vanishing of ``ω^m`` is a Zariski-open condition, so one success is a
    certificate while failures only give ``Undetermined``.
    """
    if check_finite:
        fin = finiteness(m)
        if fin.status is not Finiteness.Finite:
            raise PreconditionError(f"cohomology is not certified finite ({fin.status})")
    fd = formal_dimension(m)
    if fd % 2:
        return CsymVerdict(CsymStatus.NotCSymplectic, diagnostics=[f"formal dimension {fd} is odd"], fd=fd)
    half = fd // 2
    h2 = cohomology_slice(m, 2)
    if h2.dim == 0:
        status = CsymStatus.NotCSymplectic if half else CsymStatus.CSymplectic
        if half == 0:
            return CsymVerdict(status, CsymWitness(m.algebra.one(), 0, (Fraction(1),)), fd=fd)
        return CsymVerdict(status, diagnostics=["H^2 = 0"], fd=fd)
    top = cohomology_slice(m, fd)

    def attempt(omega):
        power = omega ** half
        if not power:
            return None
        cls = express_class(m, power, top)
        if cls.is_zero():
            return None
        return CsymWitness(omega, half, cls.coords)

    if h2.dim == 1:
        w = attempt(h2.representatives[0])
        if w is None:
            return CsymVerdict(CsymStatus.NotCSymplectic,
                               diagnostics=[f"H^2 is spanned by [{h2.representatives[0]}] and its {half}-th power is exact"],
                               fd=fd)
        return CsymVerdict(CsymStatus.CSymplectic, w, fd=fd)
    tried = []
    for s in samples:
        omega = class_element(h2, [Fraction(s) ** i for i in range(h2.dim)])
        w = attempt(omega)
        tried.append(s)
        if w is not None:
            return CsymVerdict(CsymStatus.CSymplectic, w, [f"dim H^2 = {h2.dim}; success at sample s={s}"], fd=fd)
    return CsymVerdict(CsymStatus.Undetermined,
                       diagnostics=[f"dim H^2 = {h2.dim}; omega^{half} exact at samples {tried} "
                                    "(failure at finitely many points proves nothing)"],
                       fd=fd)


POLARIZATION_LIMIT = 20000


def csym_polarized(m: Model, limit: int = POLARIZATION_LIMIT) -> CsymVerdict:
    """Exact decision by polarization over a basis ``a_1..a_r`` of ``H^2``.

    ``ω^m`` with ``ω = Σ λ_i a_i`` is a polynomial in λ whose coefficients
    are the classes of the degree-``m`` monomials in the ``a_i``.  All of them
    exact means no ω works; otherwise the substitution ``λ_i = s^{(m+1)^i}``
    turns a nonzero coefficient polynomial into a nonzero univariate one, so
    some ``s ≤ deg + 1`` gives a witness.
    """
    fin = finiteness(m)
    if fin.status is not Finiteness.Finite:
        raise PreconditionError(f"cohomology is not certified finite ({fin.status})")
    fd = formal_dimension(m)
    h2 = cohomology_slice(m, 2)
    if fd % 2 or h2.dim <= 1:
        return is_c_symplectic(m, check_finite=False)
    half, r = fd // 2, h2.dim
    count = comb(r + half - 1, half)
    if count > limit:
        raise ResourceError(f"{count} monomials of degree {half} in {r} classes exceed the limit {limit}")
    top = cohomology_slice(m, fd)
    reps = h2.representatives
    coeffs = {}     # exponent vector -> class coordinates of the monomial

    def walk(start, left, prod, expo):
        if left == 0:
            if prod:
                c = express_class(m, prod, top)
                if not c.is_zero():
                    coeffs[tuple(expo)] = c.coords
            return
        for i in range(start, r):
            nxt = prod * reps[i]
            if not nxt:
                continue
            expo[i] += 1
            walk(i, left - 1, nxt, expo)
            expo[i] -= 1

    walk(0, half, m.algebra.one(), [0] * r)
    if not coeffs:
        return CsymVerdict(CsymStatus.NotCSymplectic,
                           diagnostics=[f"all {count} products of {half} classes from H^2 (dim {r}) are exact"],
                           fd=fd)
    j = next(k for k in range(top.dim) if any(c[k] for c in coeffs.values()))
    base = half + 1
    poly = {}
    for expo, c in coeffs.items():
        mult = factorial(half)
        for e in expo:
            mult //= factorial(e)
        key = sum(e * base ** i for i, e in enumerate(expo))
        poly[key] = poly.get(key, 0) + mult * c[j]
    poly = {k: v for k, v in poly.items() if v}
    degree = max(poly)
    for s in range(1, degree + 2):
        if sum(v * Fraction(s) ** k for k, v in poly.items()):
            lam = [Fraction(s) ** (base ** i) for i in range(r)]
            omega = class_element(h2, lam)
            power = omega ** half
            w = CsymWitness(omega, half, express_class(m, power, top).coords)
            return CsymVerdict(CsymStatus.CSymplectic, w,
                               [f"dim H^2 = {r}; nonzero coefficient polynomial, witness at s={s}"], fd=fd)
    raise AssertionError("a nonzero univariate polynomial vanished at more points than its degree")


# -- normal forms -------------------------------------------------------------------------

def _one_t_shape(m: Model):
    evens = m.even_generators
    if len(evens) != 1 or evens[0].degree != 2:
        raise ShapeError("expected exactly one even generator of degree 2")
    odds = m.odd_generators
    if not odds:
        raise ShapeError("expected odd generators")
    return evens[0].name, [g.name for g in odds]


def _split_top(m: Model, t: str, odd_names: list):
    """Split ``Dv_n`` into (odd-ideal part, pure coefficient c, exponent) with pure part ``c·t^e``."""
    alg = m.algebra
    vn = odd_names[-1]
    img = m.image(vn)
    pure = pure_part(img)
    rest = img - pure
    exp = (alg.generator(vn).degree + 1) // 2
    tpow = alg.gen(t) ** exp
    if pure != tpow.scale(pure.coefficient(tpow)) or not pure:
        raise ShapeError(f"d({vn}) has no pure term c·{t}^{exp}")
    return rest, pure.coefficient(tpow), exp


@dataclass
class Lemma21Report:
    part_i: bool
    part_ii: bool
    part_iii: bool
    lam: Fraction | None
    details: list

    @property
    def ok(self) -> bool:
        return self.part_i and self.part_ii and self.part_iii

    def __bool__(self):
        return self.ok

    def lines(self):
        def mark(b):
            return "pass" if b else "FAIL"
        out = [f"normal form (i): {mark(self.part_i)}", f"normal form (ii): {mark(self.part_ii)}",
               f"normal form (iii): {mark(self.part_iii)}" + (f" lambda={self.lam}" if self.lam is not None else "")]
        return out + ["  " + d for d in self.details]


def lemma21_validate(m: Model) -> Lemma21Report:
    """Check the one-parameter normal form.

    (i) ``Dv_i ∈ (v_1..v_{i-1})`` for ``i < n``; (ii) ``Dv_n = f − λt^{(k_n+1)/2}``
    with ``f`` in the odd ideal and ``λ ≠ 0``; (iii) ``v_1⋯v_{n−1}·t^{(k_n−1)/2} ∼ λ′t^{fd/2}``
    for some ``λ′ ≠ 0``.
    """
    t, odds = _one_t_shape(m)
    alg = m.algebra
    details = []
    idx = [alg.index(v) for v in odds]
    part_i = True
    for pos, v in enumerate(odds[:-1]):
        allowed = set(idx[:pos])
        for mono in m.image(v).terms:
            if not any(mono[j] for j in allowed):
                part_i = False
                details.append(f"d({v}) has a term outside (v_1..v_{pos}): {m.image(v)}")
                break
    try:
        rest, coeff, exp = _split_top(m, t, odds)
        part_ii = all(any(mono[j] for j in idx[:-1]) for mono in rest.terms)
        if not part_ii:
            details.append(f"d({odds[-1]}) - pure part is not in the odd ideal")
    except ShapeError as exc:
        part_ii = False
        details.append(str(exc))
    lam = None
    part_iii = False
    fd = formal_dimension(m)
    kn = alg.generator(odds[-1]).degree
    if fd % 2 == 0 and kn % 2 == 1:
        lhs = alg.one()
        for v in odds[:-1]:
            lhs = lhs * alg.gen(v)
        lhs = lhs * alg.gen(t) ** ((kn - 1) // 2)
        rhs = alg.gen(t) ** (fd // 2)
        if lhs.degree == fd and is_cocycle(m, lhs):
            top = cohomology_slice(m, fd)
            if top.dim == 1:
                a = express_class(m, lhs, top).coords[0]
                b = express_class(m, rhs, top).coords[0]
                if a and b:
                    lam = a / b
                    part_iii = True
                else:
                    details.append("one side of (iii) is exact")
            else:
                details.append(f"dim H^{fd} = {top.dim}")
        else:
            details.append("v_1...v_{n-1} t^{(k_n-1)/2} is not a cocycle of top degree")
    return Lemma21Report(part_i, part_ii, part_iii, lam, details)


def prop25_sufficient(m: Model) -> bool:
    """Monomials ``g_j`` in ``Dv_n − (pure part)`` use each of ``v_1..v_{n−1}`` exactly once in total."""
    t, odds = _one_t_shape(m)
    alg = m.algebra
    rest, coeff, exp = _split_top(m, t, odds)
    idx = [alg.index(v) for v in odds]
    counts = {i: 0 for i in idx[:-1]}
    for mono in rest.terms:
        if mono[idx[-1]]:
            raise ShapeError(f"{odds[-1]} occurs in its own differential")
        for i in idx[:-1]:
            counts[i] += mono[i]
    return all(c == 1 for c in counts.values())


# -- constructions -----------------------------------------------------------------------

def build_b_cross_sphere(B: Model, fundamental: Element | str, N: int, t: str = "t", v: str = "v") -> Model:
    """Borel model of ``B × S^N`` with ``Dv = α·t^{(N+1−dim B)/2} − t^{(N+1)/2}``."""
    if isinstance(fundamental, str):
        fundamental = B.parse(fundamental)
    dim_b = formal_dimension(B)
    if dim_b % 2:
        raise PreconditionError(f"B has odd formal dimension {dim_b}")
    if N % 2 == 0 or N <= dim_b:
        raise PreconditionError(f"N must be odd and exceed dim B = {dim_b}")
    if fundamental.degree != dim_b or not is_cocycle(B, fundamental):
        raise PreconditionError("fundamental must be a cocycle of top degree")
    if is_coboundary(B, fundamental).exact:
        raise PreconditionError("fundamental represents the zero class")
    alg = FreeGCA([Generator(t, 2)] + list(B.algebra.generators) + [Generator(v, N)])
    images = {g.name: transport(B.image(g.name), alg) for g in B.algebra.generators}
    tt = alg.gen(t)
    images[v] = transport(fundamental, alg) * tt ** ((N + 1 - dim_b) // 2) - tt ** ((N + 1) // 2)
    return Model(alg, images)


def build_x_cross_cpn(k: Iterable[int], N: int) -> Model:
    """Borel model over ``S^{k_1}×…×S^{k_n} × CP^N``."""
    k = DegreeTuple(k)
    n = len(k)
    if n % 2 == 0:
        raise PreconditionError("n must be odd")
    for a, b in k.pairs():
        if a + b > 2 * N:
            raise PreconditionError(f"{a} + {b} > 2N = {2 * N}")
    if k[-1] > 2 * N + 1:
        raise PreconditionError(f"k_n = {k[-1]} > 2N + 1 = {2 * N + 1}")
    gens = [Generator("t", 2), Generator("x", 2), Generator("y", 2 * N + 1)]
    gens += [Generator(f"v{i + 1}", d) for i, d in enumerate(k)]
    alg = FreeGCA(gens)
    t, x = alg.gen("t"), alg.gen("x")
    dy = x ** (N + 1) + t ** (N + 1)
    for i, (a, b) in enumerate(k.pairs()):
        dy = dy + alg.gen(f"v{i + 1}") * alg.gen(f"v{n - 1 - i}") * t ** ((2 * N + 2 - a - b) // 2)
    images = {"y": dy, f"v{n}": x ** ((k[-1] - 1) // 2) * t}
    return Model(alg, images)


def x_cross_cpn_power(k: Iterable[int], N: int) -> int:
    k = DegreeTuple(k)
    return (sum(k) - 1) // 2 + N


# -- c(X) lower bounds ---------------------------------------------------------------------

@dataclass
class CInvariantBound:
    value: Fraction
    best: str | None
    diagnostics: list

    def __float__(self):  # pragma: no cover - convenience only
        return float(self.value)


def c_invariant_lower(X: Model, candidates: Sequence[Model]) -> CInvariantBound:
    """``max 2·toomer(Y)/(fd(X) − 1)`` over valid Borel candidates ``Y`` of ``X``."""
    fdx = formal_dimension(X)
    best = Fraction(0)
    best_name = None
    diags = []
    for i, Y in enumerate(candidates):
        label = Y.name or f"candidate{i}"
        base = [g.name for g in Y.algebra.generators if g.name not in X.algebra]
        try:
            if any(Y.algebra.generator(b).degree != 2 for b in base):
                raise ShapeError("new generators must have degree 2")
            split_extension(Y, base, fiber=X)
            fin = finiteness(Y)
            if fin.status is not Finiteness.Finite:
                raise PreconditionError(f"finiteness {fin.status}")
            fdy = formal_dimension(Y)
            if not poincare_check(Y, fdy):
                raise PreconditionError("not a Poincaré duality model")
            e0 = toomer(Y, fdy)
        except Exception as exc:  # invalid candidates are skipped, not fatal
            diags.append(f"{label}: skipped ({exc})")
            continue
        value = Fraction(2 * e0, fdx - 1)
        diags.append(f"{label}: toomer={e0} bound={value}")
        if value > best:
            best, best_name = value, label
    return CInvariantBound(best, best_name, diags)
