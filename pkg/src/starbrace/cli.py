"""``starbrace`` command-line front end.

Every command prints a JSON-lines report on stdout (one line per check, then
a summary line) and a short human summary on stderr.  Exit codes: 0 when all
asserted checks pass, 2 when a check fails, 3 for bad input.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .deform import VARIANTS, deform, distributor_mask
from .formats import (
    ParseError,
    digest,
    dump_pairmap,
    dump_skew_brace,
    dump_structure,
    load_any,
    parse_semilattice_spec,
    parse_skew_brace,
    structure_digest,
    write_semilattice_spec,
)
from .report import Check, RunReport
from .skew import enumerate_skew_braces
from .solutions import is_ybe_solution
from .star import SquareBraceSpec, build_square_brace, build_strong_semilattice
from .tables import (
    BoundExceeded,
    IndexOutOfRange,
    InvalidSpec,
    NotDistributor,
    NotDual,
    ShapeMismatch,
    SizeMismatch,
    StarBraceError,
)
from .verify import LEVELS, THEOREMS, axiom_checks, require_dual, structure_theorem_checks, theorem_checks

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 2, 3
INPUT_ERRORS = (ParseError, BoundExceeded, IndexOutOfRange, InvalidSpec, ShapeMismatch, SizeMismatch, OSError)


class _Timer:
    def __init__(self):
        self.t0 = time.perf_counter()

    def lap(self) -> float:
        t = time.perf_counter()
        out, self.t0 = t - self.t0, t
        return out


def cmd_check(args) -> RunReport:
    s = load_any(args.path)
    rep = RunReport(f"check --level {args.level}", structure_digest(s))
    t = _Timer()
    rep.add(axiom_checks(s, args.level), "axioms", t.lap())
    return rep


def cmd_build(args) -> RunReport:
    t = _Timer()
    if args.square is not None:
        k, gpath = args.square
        try:
            size = int(k)
        except ValueError:
            raise InvalidSpec(f"index set size must be an integer, got {k!r}") from None
        g = parse_skew_brace(Path(gpath).read_text(), gpath)
        s = build_square_brace(SquareBraceSpec(size, g))
        level = "square"
    else:
        p = Path(args.semilattice)
        spec = parse_semilattice_spec(p.read_text(), p.parent, str(p))
        s = build_strong_semilattice(spec)
        level = "dual"
    text = dump_structure(s)
    Path(args.output).write_text(text)
    rep = RunReport("build", digest(text))
    rep.add([Check("built", True, detail={"n": s.n, "output": Path(args.output).name})], "build", t.lap())
    rep.add(axiom_checks(s, level), "axioms", t.lap())
    return rep


def cmd_decompose(args) -> RunReport:
    s = load_any(args.path)
    t = _Timer()
    checks, d = structure_theorem_checks(s)
    written = write_semilattice_spec(d.spec, args.output)
    rep = RunReport("decompose", structure_digest(s))
    rep.add([Check("decomposed", True, detail={
        "nodes": d.spec.y_size,
        "component_sizes": [len(m) for m in d.members],
        "files": [p.name for p in written],
    })])
    rep.add(checks, "decompose", t.lap())
    return rep


def cmd_deform(args) -> RunReport:
    s = load_any(args.path)
    require_dual(s)
    if not 0 <= args.z < s.n:
        raise IndexOutOfRange(f"z = {args.z} not in [0, {s.n})")
    t = _Timer()
    r = deform(s, args.z, args.variant)
    Path(args.output).write_text(dump_pairmap(r))
    sol = is_ybe_solution(r)
    in_d = bool(distributor_mask(s)[args.z])
    rep = RunReport(f"deform --z {args.z} --variant {args.variant}", structure_digest(s))
    checks = [
        Check("solution", sol.is_solution, sol.witness, asserted=False, detail=sol.as_dict()),
        Check("z is a right distributor", in_d, asserted=False),
    ]
    if args.variant == "r":
        checks.append(Check("solution iff distributor", sol.is_solution == in_d))
    else:
        checks.append(Check("distributor implies solution", sol.is_solution or not in_d, sol.witness))
    rep.add(checks, "deform", t.lap())
    return rep


def cmd_verify(args) -> RunReport:
    s = load_any(args.path)
    t = _Timer()
    checks, records = theorem_checks(s, args.theorem, Path(args.path).name)
    rep = RunReport(f"verify --theorem {args.theorem}", structure_digest(s), extra=records)
    rep.add(checks, args.theorem, t.lap())
    return rep


def cmd_enumerate(args) -> RunReport:
    t = _Timer()
    braces = list(enumerate_skew_braces(args.order))
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    names = []
    for k, g in enumerate(braces):
        name = f"brace{args.order}.{k}.brace"
        (out / name).write_text(dump_skew_brace(g))
        names.append(name)
    rep = RunReport(f"enumerate --order {args.order} --kind {args.kind}", None)
    rep.add([Check("enumerated", True, detail={"files": names})], "enumerate", t.lap())
    rep.extra.append({"census": {"kind": args.kind, "order": args.order, "count": len(braces)}})
    return rep


def cmd_suite(args) -> list[RunReport]:
    from .corpus import full_corpus
    from .verify import run_suite

    return run_suite(full_corpus())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="starbrace", description=__doc__.splitlines()[0])
    p.add_argument("--timing", action="store_true", help="include wall times in the summary line")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="axiom stack and class report")
    c.add_argument("path")
    c.add_argument("--level", choices=LEVELS, default="dual")
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("build", help="build a square brace or a strong semilattice")
    g = b.add_mutually_exclusive_group(required=True)
    g.add_argument("--square", nargs=2, metavar=("I", "GROUP"), help="index set size and skew brace file")
    g.add_argument("--semilattice", metavar="SPEC")
    b.add_argument("-o", "--output", required=True)
    b.set_defaults(func=cmd_build)

    d = sub.add_parser("decompose", help="split into a strong semilattice of square braces")
    d.add_argument("path")
    d.add_argument("-o", "--output", required=True)
    d.set_defaults(func=cmd_decompose)

    f = sub.add_parser("deform", help="write a deformed pair map")
    f.add_argument("path")
    f.add_argument("--z", type=int, required=True)
    f.add_argument("--variant", choices=VARIANTS, default="r")
    f.add_argument("-o", "--output", required=True)
    f.set_defaults(func=cmd_deform)

    v = sub.add_parser("verify", help="run a theorem-level verifier")
    v.add_argument("path")
    v.add_argument("--theorem", choices=THEOREMS, required=True)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("enumerate", help="skew braces of a given order, one file each")
    e.add_argument("--order", type=int, required=True)
    e.add_argument("--kind", choices=("skewbrace",), default="skewbrace")
    e.add_argument("-o", "--output", default=".")
    e.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("suite", help="every verifier over the built-in corpus")
    s.set_defaults(func=cmd_suite)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except INPUT_ERRORS as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotDual, NotDistributor) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except StarBraceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    reports = result if isinstance(result, list) else [result]
    out = sys.stdout
    for rep in reports:
        for line in rep.json_lines(with_timing=args.timing):
            out.write(line + "\n")
    for rep in reports:
        if not rep.passed or len(reports) == 1:
            print(rep.summary_text(), file=sys.stderr)
    passed = all(rep.passed for rep in reports)
    if len(reports) > 1:
        failed = sum(not r.passed for r in reports)
        print(f"{len(reports)} reports, {failed} failing", file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
