"""Command-line front end.

Exit codes: 0 when the command ran and every checked expectation held, 1 when
a checked expectation failed (catalog mismatch, Hasse diagram problem, pairing
contradiction), 2 on bad input.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import catalog
from .cohomology import betti, hard_lefschetz, toomer
from .csym import (DEFAULT_SAMPLES, csym_polarized, finiteness, is_c_symplectic, thm12_criterion,
                   thm12_witness, thm26_necessary)
from .differential import Model, format_model, formal_dimension, load_model
from .errors import PrecsympError
from .lie_groups import LieType, all_types, classify
from .pairing import brute_force_check, crosswise_check, find_dominant_pair
from .toral import hasse_check_thm17, load_hasse, verify_edges

OK, FAILED, BAD_INPUT = 0, 1, 2


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.format_usage()}{self.prog}: error: {message}")


def _emit(out, lines):
    for line in lines:
        print(line, file=out)


def _model(path) -> Model:
    return load_model(path)


def _ints(values) -> list:
    try:
        return [int(v) for v in values]
    except ValueError as exc:
        raise PrecsympError(f"expected integers: {exc}") from None


# -- verbs -----------------------------------------------------------------------------------

def cmd_betti(a, out):
    m = _model(a.file)
    hi = a.to if a.to is not None else max(formal_dimension(m), 0)
    for n in range(a.from_, hi + 1):
        b = betti(m, n)
        print(f"degree={n} betti={b}" if a.machine else f"betti({n}) = {b}", file=out)
    return OK


def cmd_fd(a, out):
    fd = formal_dimension(_model(a.file))
    print(f"fd={fd}" if a.machine else f"fd: {fd}", file=out)
    return OK


def cmd_finite(a, out):
    v = finiteness(_model(a.file), bound=a.bound)
    if a.machine:
        print(f"status={v.status} quotient_dims={','.join(map(str, v.quotient_dims))}", file=out)
    else:
        _emit(out, v.lines())
    return OK


def cmd_csym(a, out):
    m = _model(a.file)
    if a.exact:
        v = csym_polarized(m)
    else:
        samples = _ints(a.samples.split(",")) if a.samples else DEFAULT_SAMPLES
        v = is_c_symplectic(m, samples=samples)
    if a.machine:
        print(v.machine(), file=out)
    else:
        _emit(out, v.lines())
    return OK


def _criterion(fn, label, a, out):
    res = fn(_ints(a.degrees))
    if a.machine:
        pair = f" pair={res.violated_pair[0]},{res.violated_pair[1]}" if res.violated_pair else ""
        print(f"{label}={'yes' if res.holds else 'no'}{pair}", file=out)
    elif res.holds:
        print(f"{label}: yes", file=out)
    else:
        print(f"{label}: no ({res.reason})", file=out)
    return OK


def cmd_criterion(a, out):
    return _criterion(thm12_criterion, "pre-c-symplectic", a, out)


def cmd_necessary(a, out):
    return _criterion(thm26_necessary, "necessary condition", a, out)


def cmd_witness(a, out):
    text = format_model(thm12_witness(_ints(a.degrees)))
    if a.output:
        Path(a.output).write_text(text)
        print(f"wrote {a.output}", file=out)
    else:
        out.write(text)
    return OK


def cmd_lefschetz(a, out):
    m = _model(a.file)
    omega = a.omega or m.even_generators[0].name
    rep = hard_lefschetz(m, omega, formal_dimension(m))
    if a.machine:
        for s in rep.steps:
            print(f"k={s.k} source_degree={s.source_degree} result={'pass' if s.bijective else 'fail'}", file=out)
    else:
        _emit(out, rep.lines())
    return OK


def cmd_toomer(a, out):
    m = _model(a.file)
    e0 = toomer(m, formal_dimension(m))
    print(f"toomer={e0}" if a.machine else f"toomer: {e0}", file=out)
    return OK


def cmd_lie(a, out):
    if a.action == "classify":
        if not a.types:
            raise PrecsympError("lie classify needs a type such as C5")
        types = [LieType.parse(s) for s in a.types]
    else:
        types = list(all_types(a.max_rank))
    for g in types:
        res = classify(g)
        if a.machine:
            print(f"type={g} pre_c_symplectic={'yes' if res.holds else 'no'}", file=out)
        else:
            print(f"{g}: {'yes' if res.holds else 'no'} ({res.reason})", file=out)
    return OK


def _partition(text):
    pairs = []
    for chunk in text.split(","):
        i, _, j = chunk.partition("-")
        pairs.append((int(i), int(j)))
    return pairs


def cmd_pairing(a, out):
    vals = _ints(a.values)
    if a.action == "brute":
        got = brute_force_check(vals, a.N)
        print(f"some pair partition has all sums <= {a.N}: {'yes' if got else 'no'}", file=out)
        return OK
    cross = crosswise_check(vals, a.N)
    print(f"crosswise sums {'all' if cross else 'not all'} <= {a.N}", file=out)
    if a.partition:
        i, j = find_dominant_pair(vals, _partition(a.partition))
        print(f"dominant pair: ({i}, {j}) with sum {vals[i] + vals[j]}", file=out)
    if a.compare:
        brute = brute_force_check(vals, a.N)
        print(f"exhaustive search agrees: {'yes' if brute == cross else 'no'}", file=out)
        return OK if brute == cross else FAILED
    return OK


def cmd_hasse(a, out):
    h = load_hasse(a.file)
    if a.action == "dot":
        out.write(h.to_dot())
        return OK
    problems = h.validate()
    leaf = hasse_check_thm17(h)
    reports = verify_edges(h) if not a.structure_only else []
    bad = [(x, y, r) for x, y, r in reports if not r.ok]
    if a.machine:
        print(f"valid={'yes' if not problems else 'no'} leaf={'yes' if leaf else 'no'} "
              f"edges_checked={len(reports)} edges_failed={len(bad)}", file=out)
    else:
        print("structure: " + ("valid" if not problems else "; ".join(problems)), file=out)
        print(f"leaf ({h.r0 - 1}, 1): {'present' if leaf else 'absent'}", file=out)
        for x, y, r in reports:
            print(f"order {x} < {y}: {'ok' if r.ok else 'FAIL'} ({'; '.join(r.details)})", file=out)
    return OK if not problems and not bad else FAILED


def _run_one(entry):
    return catalog.run_entry(entry)


def cmd_catalog(a, out):
    if a.action == "list":
        _emit(out, catalog.list_entries())
        return OK
    if a.action == "run":
        if not a.entry:
            raise PrecsympError("catalog run needs an entry id")
        reports = [catalog.run_entry(e) for e in a.entry]
    else:
        entries = catalog.list_entries()
        if a.jobs > 1:
            with ProcessPoolExecutor(a.jobs) as pool:
                reports = list(pool.map(_run_one, entries))
        else:
            reports = [catalog.run_entry(e) for e in entries]
    for r in reports:
        _emit(out, r.lines(machine=a.machine))
    if a.action == "run-all":
        bad = [r.entry for r in reports if not r.ok]
        summary = f"{len(reports) - len(bad)}/{len(reports)} entries pass"
        print(f"entries={len(reports)} failed={len(bad)}" if a.machine else summary, file=out)
    return OK if all(r.ok for r in reports) else FAILED


# -- parser ----------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="precsymp", description="Rational models of circle quotients and c-symplectic checks.")
    p.add_argument("--machine", action="store_true", help="key=value output")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("betti", help="Betti numbers of a model file")
    s.add_argument("file")
    s.add_argument("--from", dest="from_", type=int, default=0)
    s.add_argument("--to", type=int)
    s.set_defaults(func=cmd_betti)

    s = sub.add_parser("fd", help="formal dimension")
    s.add_argument("file")
    s.set_defaults(func=cmd_fd)

    s = sub.add_parser("finite", help="finiteness of cohomology")
    s.add_argument("file")
    s.add_argument("--bound", type=int)
    s.set_defaults(func=cmd_finite)

    s = sub.add_parser("csym", help="c-symplectic test")
    s.add_argument("file")
    s.add_argument("--samples", help="comma-separated sample points s for dim H^2 >= 2")
    s.add_argument("--exact", action="store_true", help="decide exactly by polarization instead of sampling")
    s.set_defaults(func=cmd_csym)

    for name, func, helptext in (("criterion", cmd_criterion, "degree criterion for products of odd spheres"),
                                 ("necessary", cmd_necessary, "necessary degree condition")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("degrees", nargs="+")
        s.set_defaults(func=func)

    s = sub.add_parser("witness", help="write the explicit c-symplectic Borel model")
    s.add_argument("degrees", nargs="+")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("lefschetz", help="hard Lefschetz report")
    s.add_argument("file")
    s.add_argument("--omega", help="degree-2 element (default: first even generator)")
    s.set_defaults(func=cmd_lefschetz)

    s = sub.add_parser("toomer", help="Toomer invariant of a minimal model")
    s.add_argument("file")
    s.set_defaults(func=cmd_toomer)

    s = sub.add_parser("lie", help="compact simple Lie groups")
    s.add_argument("action", choices=["classify", "all"])
    s.add_argument("types", nargs="*")
    s.add_argument("--max-rank", type=int, default=15)
    s.set_defaults(func=cmd_lie)

    s = sub.add_parser("pairing", help="pair partitions and crosswise sums")
    s.add_argument("action", choices=["check", "brute"])
    s.add_argument("values", nargs="+")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--partition", help="pairs of 0-based indices, e.g. 0-3,1-2")
    s.add_argument("--compare", action="store_true", help="also run the exhaustive search")
    s.set_defaults(func=cmd_pairing)

    s = sub.add_parser("hasse", help="Hasse diagram files")
    s.add_argument("action", choices=["verify", "dot"])
    s.add_argument("file")
    s.add_argument("--structure-only", action="store_true", help="skip the model checks on edges")
    s.set_defaults(func=cmd_hasse)

    s = sub.add_parser("catalog", help="replay catalog entries")
    s.add_argument("action", choices=["list", "run", "run-all"])
    s.add_argument("entry", nargs="*")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except _Usage as exc:
        print(str(exc), file=sys.stderr)
        return BAD_INPUT
    except SystemExit as exc:   # --help
        return OK if exc.code in (0, None) else BAD_INPUT
    try:
        return args.func(args, out)
    except (PrecsympError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


def main_entry():  # pragma: no cover - console script
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
