"""Replayable catalog of explicit models with their expected verdicts.

Each entry is ``data/<id>.expect``, a line-oriented script.  Directives set the
current object (``use``, ``build``, ``restrict``, ``diagram``, ``reps``,
``include``); every other line is a check whose outcome is compared with the
expected value written on the line.  ``source <locator>`` records where the
entry's facts come from; every check reports ``<locator>:<line>``.
"""
from __future__ import annotations

import shlex
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

from ..cohomology import (betti, express_class, hard_lefschetz, is_coboundary, is_cocycle,
                          poincare_check, toomer, verify_relation)
from ..csym import (DegreeTuple, build_b_cross_sphere, build_x_cross_cpn, c_invariant_lower,
                    csym_polarized, finiteness, formal_dimension, is_c_symplectic, lemma21_validate,
                    prop25_sufficient, pure_part, thm12_criterion, thm12_witness, thm26_necessary)
from ..differential import Model, check_d_squared, is_minimal, load_model, restrict, split_extension
from ..errors import PrecsympError
from ..lie_groups import LieType, classify
from ..toral import (complete_to_full_torus, euler_homotopy_bound, hasse_check_thm17,
                     ideal_covers_degree, load_hasse, second_row_empty, verify_edges,
                     verify_order, verify_r0_witness)

DATA = Path(__file__).parent / "data"


class CatalogError(PrecsympError):
    pass


@dataclass
class CheckResult:
    line: int
    check: str
    ok: bool
    observed: str
    citation: str

    def text(self) -> str:
        return f"[{'ok' if self.ok else 'MISMATCH'}] {self.observed}"

    def machine(self) -> str:
        return f"check={self.check} line={self.line} result={'pass' if self.ok else 'fail'}"


@dataclass
class EntryReport:
    entry: str
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def lines(self, machine: bool = False) -> list:
        if machine:
            out = [f"entry={self.entry} {r.machine()}" for r in self.results]
            out.append(f"entry={self.entry} status={'pass' if self.ok else 'fail'}")
            return out
        out = [f"== {self.entry}"]
        out += ["  " + r.text() for r in self.results]
        passed = sum(r.ok for r in self.results)
        out.append(f"  {passed}/{len(self.results)} expectations matched")
        return out


@dataclass
class _Context:
    entry: str
    data: Path
    source: str = ""
    model: Model | None = None
    diagram: object = None
    reps: dict = field(default_factory=dict)
    stack: tuple = ()

    def need_model(self) -> Model:
        if self.model is None:
            raise CatalogError("no current model (use 'use <name>' first)")
        return self.model

    def need_diagram(self):
        if self.diagram is None:
            raise CatalogError("no current diagram (use 'diagram <name>' first)")
        return self.diagram

    def load(self, stem: str) -> Model:
        path = self.data / f"{stem}.model"
        if not path.exists():
            raise CatalogError(f"unknown model {stem!r}")
        return load_model(path)


def list_entries(data: Path = DATA) -> list:
    return sorted(p.name[: -len(".expect")] for p in data.glob("*.expect"))


def _yes(tok: str) -> bool:
    t = tok.lower()
    if t in ("yes", "true", "pass", "holds"):
        return True
    if t in ("no", "false", "fail", "fails"):
        return False
    raise CatalogError(f"expected yes/no, got {tok!r}")


def _split_arrow(args: list):
    if "->" not in args:
        raise CatalogError("expected '... -> <expected>'")
    i = args.index("->")
    return args[:i], args[i + 1:]


def _mark(b: bool) -> str:
    return "yes" if b else "no"


# -- checks: each returns (ok, observed text) -------------------------------------------------

def _c_dsquared(ctx, args):
    rep = check_d_squared(ctx.need_model())
    return rep.ok == _yes(args[0]), "; ".join(rep.lines())


def _c_fd(ctx, args):
    fd = formal_dimension(ctx.need_model())
    return fd == int(args[0]), f"fd: {fd}"


def _c_finite(ctx, args):
    v = finiteness(ctx.need_model())
    return str(v.status) == args[0], f"finite: {v.status}"


def _c_csym(ctx, args):
    v = is_c_symplectic(ctx.need_model())
    ok = str(v.status) == args[0]
    if len(args) > 1:
        ok &= v.witness is not None and v.witness.power == int(args[1])
    if v.witness is not None:
        ok &= v.witness.verify(ctx.model)
    return ok, f"csym: {v.machine()}"


def _c_csym_exact(ctx, args):
    v = csym_polarized(ctx.need_model())
    ok = str(v.status) == args[0]
    if len(args) > 1:
        ok &= v.witness is not None and v.witness.power == int(args[1])
    if v.witness is not None:
        ok &= v.witness.verify(ctx.model)
    return ok, f"csym (exact): {v.machine()}"


def _c_minimal(ctx, args):
    got = is_minimal(ctx.need_model())
    return got == _yes(args[0]), f"minimal: {_mark(got)}"


def _c_betti(ctx, args):
    got = betti(ctx.need_model(), int(args[0]))
    return got == int(args[1]), f"betti({args[0]}) = {got}"


def _c_betti_table(ctx, args):
    lo, hi = int(args[0]), int(args[1])
    want = [int(x) for x in args[2:]]
    got = [betti(ctx.need_model(), n) for n in range(lo, hi + 1)]
    return got == want, f"betti {lo}..{hi}: {' '.join(map(str, got))}"


def _c_cocycle(ctx, args):
    m = ctx.need_model()
    e = m.parse(args[0])
    got = is_cocycle(m, e)
    return got == _yes(args[1]), f"cocycle {args[0]}: {_mark(got)}" + ("" if got else f" (D = {m.d(e)})")


def _c_exact(ctx, args):
    m = ctx.need_model()
    r = is_coboundary(m, m.parse(args[0]))
    wit = f" witness {r.witness}" if r.exact else ""
    ok = r.exact == _yes(args[1])
    if r.exact:
        ok &= m.d(r.witness) == m.parse(args[0])
    return ok, f"exact {args[0]}: {_mark(r.exact)}{wit}"


def _c_coboundary(ctx, args):
    m = ctx.need_model()
    x, e = m.parse(args[0]), m.parse(args[1])
    got = m.d(x)
    return got == e, f"D({args[0]}) = {got}"


def _c_same_class(ctx, args):
    m = ctx.need_model()
    a, b = m.parse(args[0]), m.parse(args[1])
    c = Fraction(args[2]) if len(args) > 2 else Fraction(1)
    ca, cb = express_class(m, a), express_class(m, b)
    ok = ca.coords == tuple(c * x for x in cb.coords) and not cb.is_zero()
    return ok, f"[{args[0]}] = {c}*[{args[1]}]: {_mark(ok)}"


def _c_reps(ctx, args):
    for tok in args:
        name, _, text = tok.partition("=")
        ctx.reps[name] = ctx.need_model().parse(text)
    return None


def _c_relation(ctx, args):
    got = verify_relation(ctx.need_model(), ctx.reps, args[0])
    return got == _yes(args[1]), f"relation {args[0]}: {'holds' if got else 'fails'}"


def _c_lemma21(ctx, args):
    rep = lemma21_validate(ctx.need_model())
    parts = {"i": rep.part_i, "ii": rep.part_ii, "iii": rep.part_iii}
    ok = True
    for tok in args:
        if "=" in tok:
            key, _, val = tok.partition("=")
            if key == "lambda":
                ok &= rep.lam == Fraction(val)
            else:
                ok &= parts[key] == _yes(val)
        else:
            ok &= rep.ok == _yes(tok)
    state = " ".join(f"({k}) {'pass' if v else 'FAIL'}" for k, v in parts.items())
    return ok, f"normal form: {state}" + (f" lambda={rep.lam}" if rep.lam is not None else "")


def _c_prop25(ctx, args):
    got = prop25_sufficient(ctx.need_model())
    return got == _yes(args[0]), f"covering condition: {_mark(got)}"


def _criterion_like(fn, label):
    def check(ctx, args):
        lhs, rhs = _split_arrow(args)
        res = fn([int(x) for x in lhs])
        ok = res.holds == _yes(rhs[0])
        if len(rhs) > 1:
            ok &= res.violated_pair == tuple(int(x) for x in rhs[1:])
        return ok, f"{label} {' '.join(lhs)}: {_mark(res.holds)} ({res.reason})"
    return check


def _odd_degrees(m: Model):
    return [g.degree for g in m.odd_generators]


def _c_criterion_model(ctx, args):
    res = thm12_criterion(_odd_degrees(ctx.need_model()))
    ok = res.holds == _yes(args[0])
    if len(args) > 1:
        ok &= res.violated_pair == tuple(int(x) for x in args[1:])
    return ok, f"criterion on odd degrees: {_mark(res.holds)} ({res.reason})"


def _lefschetz_report(m: Model):
    omega = m.even_generators[0].name
    return hard_lefschetz(m, omega, formal_dimension(m)), omega


def _c_lefschetz(ctx, args):
    """``lefschetz pass`` or ``lefschetz fail K1,K2,...`` (the exact set of failing powers)."""
    rep, _ = _lefschetz_report(ctx.need_model())
    fails = [s.k for s in rep.steps if not s.bijective]
    if not fails:
        observed = f"lefschetz: pass at every k=1..{len(rep.steps)}"
    else:
        observed = f"lefschetz: FAIL at k={','.join(map(str, fails))}"
    if _yes(args[0]):
        return not fails, observed
    return fails == [int(x) for x in args[1].split(",")], observed


def _c_lefschetz_kernel(ctx, args):
    """``lefschetz_kernel K none`` or ``lefschetz_kernel K <class>``: the class is nonzero and dies under ω^K."""
    m = ctx.need_model()
    rep, omega = _lefschetz_report(m)
    k = int(args[0])
    step = next(s for s in rep.steps if s.k == k)
    if step.bijective:
        observed = f"lefschetz: pass at k={k}"
    else:
        observed = f"lefschetz: FAIL at k={k} kernel=[{', '.join(map(str, step.kernel))}]"
    if args[1] == "none":
        return step.bijective, observed
    x = m.parse(args[1])
    ok = (not step.bijective and not is_coboundary(m, x).exact
          and is_coboundary(m, x * m.parse(omega) ** k).exact)
    return ok, observed


def _c_toomer(ctx, args):
    m = ctx.need_model()
    got = toomer(m, formal_dimension(m))
    return got == int(args[0]), f"toomer: {got}"


def _c_poincare(ctx, args):
    m = ctx.need_model()
    rep = poincare_check(m, formal_dimension(m))
    return rep.ok == _yes(args[0]), f"poincare: {'pass' if rep.ok else 'FAIL'}"


def _c_ks_over(ctx, args):
    m = ctx.need_model()
    fiber = ctx.load(args[0])
    base = [g.name for g in m.algebra.generators if g.name not in fiber.algebra]
    try:
        split_extension(m, base, fiber=fiber)
        got = True
        detail = f"by {', '.join(base)}"
    except PrecsympError as exc:
        got, detail = False, str(exc)
    want = _yes(args[1]) if len(args) > 1 else True
    return got == want, f"KS extension over {args[0]}: {_mark(got)} ({detail})"


def _c_order(ctx, args):
    lower, upper = ctx.load(args[0]), ctx.load(args[1])
    rename = dict(tok.split("=", 1) for tok in args[2:] if "=" in tok and not tok.startswith("expect"))
    rep = verify_order(lower, upper, rename=rename or None, expect_finite=(None, True))
    return rep.ok, f"order {args[0]} < {args[1]}: {_mark(rep.ok)} ({'; '.join(rep.details)})"


def _c_r0_witness(ctx, args):
    m = ctx.need_model()
    fiber = ctx.load(args[0])
    base = [g.name for g in m.algebra.generators if g.name not in fiber.algebra]
    ext = split_extension(m, base, fiber=fiber)
    got = verify_r0_witness(ext)
    return got == _yes(args[1]), f"toral rank of {args[0]} >= {len(base)}: {_mark(got)}"


def _c_euler_bound(ctx, args):
    got = euler_homotopy_bound(ctx.need_model())
    return got == int(args[0]), f"odd minus even generators: {got}"


def _c_c_lower(ctx, args):
    lhs, rhs = _split_arrow(args)
    X = ctx.load(lhs[0])
    cands = []
    for stem in lhs[1:]:
        y = ctx.load(stem)
        y.name = stem
        cands.append(y)
    got = c_invariant_lower(X, cands)
    return got.value == Fraction(rhs[0]), f"c({lhs[0]}) >= {got.value} via {got.best}"


def _c_degree_in_ideal(ctx, args):
    m = ctx.need_model()
    outside = ideal_covers_degree(m.algebra, int(args[0]), args[1:])
    return not outside, f"degree {args[0]} inside ({', '.join(args[1:])}): {_mark(not outside)}"


def _same_up_to_pure_sign(a: Model, b: Model) -> bool:
    if set(a.algebra.generators) != set(b.algebra.generators):
        return False
    from ..algebra import transport
    for g in a.algebra.generators:
        x = transport(a.image(g.name), b.algebra)
        y = b.image(g.name)
        if x != y:
            p = pure_part(x)
            if x - p.scale(2) != y:
                return False
    return True


def _c_matches(ctx, args):
    other = ctx.load(args[0])
    m = ctx.need_model()
    loose = len(args) > 1 and args[1] == "up_to_pure_sign"
    got = _same_up_to_pure_sign(m, other) if loose else m.same_as(other)
    return got, f"matches {args[0]}{' up to the sign of pure terms' if loose else ''}: {_mark(got)}"


def _c_lie(ctx, args):
    lhs, rhs = _split_arrow(args)
    g = LieType.parse(lhs[0])
    got = classify(g).holds
    return got == _yes(rhs[0]), f"lie {g}: {_mark(got)}"


def _c_build_fails(ctx, args):
    try:
        _build(ctx, args)
    except PrecsympError as exc:
        return True, f"build {' '.join(args)}: rejected ({exc})"
    return False, f"build {' '.join(args)}: accepted"


# -- diagram checks ------------------------------------------------------------------------

def _c_valid(ctx, args):
    probs = ctx.need_diagram().validate()
    return (not probs) == _yes(args[0]), "diagram: " + ("valid" if not probs else "; ".join(probs))


def _c_leaf(ctx, args):
    h = ctx.need_diagram()
    got = hasse_check_thm17(h)
    return got == _yes(args[0]), f"leaf ({h.r0 - 1}, 1) present: {_mark(got)}"


def _c_second_row(ctx, args):
    got = second_row_empty(ctx.need_diagram())
    return got == _yes(args[0]), f"second row empty: {_mark(got)}"


def _c_point(ctx, args):
    """``point LABEL fd N`` / ``point LABEL finite S`` / ``point LABEL csym S`` / ``point LABEL at s t``."""
    h = ctx.need_diagram()
    label, what = args[0], args[1]
    if what == "at":
        got = h.points[label].coords
        return got == (int(args[2]), int(args[3])), f"{label} at {got}"
    m = h.point_model(label)
    if m is None:
        raise CatalogError(f"point {label} has no model")
    if what == "fd":
        got = formal_dimension(m)
        return got == int(args[2]), f"{label}: fd {got}"
    if what == "finite":
        got = finiteness(m).status
        return str(got) == args[2], f"{label}: finite {got}"
    if what == "csym":
        v = csym_polarized(m)
        return str(v.status) == args[2], f"{label}: csym {v.machine()}"
    if what == "exact":
        r = is_coboundary(m, m.parse(args[2]))
        return r.exact == _yes(args[3]), f"{label}: exact {args[2]}: {_mark(r.exact)}"
    raise CatalogError(f"unknown point check {what!r}")


def _c_points_finite(ctx, args):
    h = ctx.need_diagram()
    bad = []
    n = 0
    for label in h.points:
        m = h.point_model(label)
        if m is None:
            continue
        n += 1
        if finiteness(m).status.value != "Finite":
            bad.append(label)
    return not bad, f"{n} point models finite" + (f"; not finite: {bad}" if bad else "")


def _c_edges(ctx, args):
    reports = verify_edges(ctx.need_diagram())
    bad = [f"{a}<{b}: {'; '.join(r.details)}" for a, b, r in reports if not r.ok]
    return not bad, f"{len(reports)} orders verified as KS extensions" + (f"; failed: {bad}" if bad else "")


def _c_paths(ctx, args):
    h = ctx.need_diagram()
    target = args[0]
    n = sum(1 for p in h.paths if p[-1] == target and p[0] == h.root().label)
    return n == int(args[1]), f"paths from the root to {target}: {n}"


# -- directives ------------------------------------------------------------------------------

def _build(ctx, args):
    kind, rest = args[0], args[1:]
    if kind == "witness":
        return thm12_witness(DegreeTuple(int(x) for x in rest))
    if kind == "b_sphere":
        B = ctx.load(rest[0])
        return build_b_cross_sphere(B, B.parse(rest[1]), int(rest[2]))
    if kind == "x_cpn":
        return build_x_cross_cpn([int(x) for x in rest[:-1]], int(rest[-1]))
    if kind == "complete":
        fiber = ctx.load(rest[0])
        partial = None
        if rest[1] != "none":
            p = ctx.load(rest[1])
            base = [g.name for g in p.algebra.generators if g.name not in fiber.algebra]
            partial = split_extension(p, base, fiber=fiber)
        seed = int(rest[2]) if len(rest) > 2 else 0
        res = complete_to_full_torus(fiber, partial, seed=seed)
        if res.extension is None:
            raise CatalogError("completion search exhausted its budget")
        return res.extension.total
    raise CatalogError(f"unknown construction {kind!r}")


CHECKS: dict[str, Callable] = {
    "dsquared": _c_dsquared,
    "fd": _c_fd,
    "finite": _c_finite,
    "csym": _c_csym,
    "csym_exact": _c_csym_exact,
    "minimal": _c_minimal,
    "betti": _c_betti,
    "betti_table": _c_betti_table,
    "cocycle": _c_cocycle,
    "exact": _c_exact,
    "coboundary": _c_coboundary,
    "same_class": _c_same_class,
    "relation": _c_relation,
    "lemma21": _c_lemma21,
    "prop25": _c_prop25,
    "criterion": _criterion_like(thm12_criterion, "criterion"),
    "necessary": _criterion_like(thm26_necessary, "necessary"),
    "criterion_model": _c_criterion_model,
    "lefschetz": _c_lefschetz,
    "lefschetz_kernel": _c_lefschetz_kernel,
    "toomer": _c_toomer,
    "poincare": _c_poincare,
    "ks_over": _c_ks_over,
    "order": _c_order,
    "r0_witness": _c_r0_witness,
    "euler_bound": _c_euler_bound,
    "c_lower": _c_c_lower,
    "degree_in_ideal": _c_degree_in_ideal,
    "matches": _c_matches,
    "lie": _c_lie,
    "build_fails": _c_build_fails,
    "valid": _c_valid,
    "leaf": _c_leaf,
    "second_row_empty": _c_second_row,
    "point": _c_point,
    "points_finite": _c_points_finite,
    "edges_verified": _c_edges,
    "paths_to": _c_paths,
}


def _run(ctx: _Context, text: str, report: EntryReport):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip() if not raw.lstrip().startswith("#") else ""
        if not line:
            continue
        toks = shlex.split(line)
        head, args = toks[0], toks[1:]
        cite = f"{ctx.source or ctx.entry}:{lineno}"
        try:
            if head == "source":
                ctx.source = " ".join(args)
            elif head == "use":
                ctx.model = ctx.load(args[0])
                ctx.reps = {}
            elif head == "build":
                ctx.model = _build(ctx, args)
                ctx.reps = {}
            elif head == "restrict":
                ctx.model = restrict(ctx.need_model(), args)
            elif head == "diagram":
                ctx.diagram = load_hasse(ctx.data / f"{args[0]}.hasse")
            elif head == "reps":
                _c_reps(ctx, args)
            elif head == "include":
                if args[0] in ctx.stack:
                    raise CatalogError(f"include cycle through {args[0]}")
                sub = _Context(args[0], ctx.data, stack=ctx.stack + (args[0],))
                inner = run_entry(args[0], ctx.data, _ctx=sub)
                report.results.extend(inner.results)
            elif head in CHECKS:
                ok, observed = CHECKS[head](ctx, args)
                report.results.append(CheckResult(lineno, head, ok, observed, cite))
            else:
                raise CatalogError(f"unknown statement {head!r}")
        except (PrecsympError, KeyError, ValueError, IndexError) as exc:
            if isinstance(exc, CatalogError) and str(exc).startswith("unknown statement"):
                raise CatalogError(f"{ctx.entry}.expect line {lineno}: {exc}") from None
            report.results.append(CheckResult(lineno, head, False, f"{head}: error: {exc}", cite))


def run_entry(entry: str, data: Path = DATA, _ctx: _Context | None = None) -> EntryReport:
    path = data / f"{entry}.expect"
    if not path.exists():
        raise CatalogError(f"unknown catalog entry {entry!r}")
    ctx = _ctx or _Context(entry, data, stack=(entry,))
    report = EntryReport(entry)
    _run(ctx, path.read_text(), report)
    return report


def run_all(data: Path = DATA) -> list:
    return [run_entry(e, data) for e in list_entries(data)]


def all_models(data: Path = DATA) -> dict:
    """Every model file in the catalog, by stem."""
    return {p.name[: -len(".model")]: load_model(p) for p in sorted(data.glob("*.model"))}
