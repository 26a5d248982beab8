"""Command-line driver: dims, enumerate, reduce, ws, verify, decomposition.

Reports are deterministic given the configuration: no timestamps, stable
field order, rationals serialized as "p/q".  Exit status: 0 on success or
a passing verification, 1 on verification failure, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from fractions import Fraction

from .diagrams import (
    CLOSED,
    OPEN,
    VACUUM,
    DiagramError,
    canonical_jacobi,
    chord_to_jacobi,
    diagram_str,
    enumerate_chords,
    enumerate_jacobi,
    parse_jacobi,
    parse_word,
)
from .linalg import LinComb, format_fraction
from .relations import build_space, closed_class_in_A, verify_presentation_iso
from .weights import (
    LieDataError,
    NotCentralError,
    builtin_sl2,
    central_scalar,
    parse_lie_file,
    representation_ok,
    sl2_rep,
    validate_metric_lie,
    verify_centrality,
    verify_relations_vanish,
    weight_trace,
)

FORMATS = ("json", "csv", "text")
SUITES = ("presentations", "hopf", "sigma", "primitives", "ws-vanish",
          "lemker", "centrality")

CONFIG_KEYS = {
    "degree": int,
    "legs": str,
    "grade": int,
    "rep": int,
    "max_grade": int,
    "parallel": int,
    "format": str,
    "output": str,
}


class UsageError(Exception):
    pass


def _load_config(path):
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError("config line %d: expected key=value" % lineno)
            key, val = (s.strip() for s in line.split("=", 1))
            if key not in CONFIG_KEYS:
                raise UsageError("config line %d: unknown key %r" % (lineno, key))
            try:
                values[key] = CONFIG_KEYS[key](val)
            except ValueError:
                raise UsageError("config line %d: bad value for %r" % (lineno, key))
    return values


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_fraction(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def emit_report(result, fmt):
    """Serialize a report dict; stable field ordering, exact rationals."""
    result = _jsonable(result)
    if fmt == "json":
        return json.dumps(result, indent=2) + "\n"
    if fmt == "csv":
        return _emit_csv(result)
    if fmt == "text":
        return _emit_text(result)
    raise UsageError("unsupported format %r" % (fmt,))


def _emit_csv(result):
    out = io.StringIO()
    rows = result.get("rows")
    if rows is None and "checks" in result:
        rows = [{"name": c.get("name", ""), "pass": c.get("pass", "")}
                for c in result["checks"]]
    if rows is None and "diagrams" in result:
        rows = [{"diagram": d} for d in result["diagrams"]]
    if rows is None and "coordinates" in result:
        rows = [{"basis": b, "value": v} for b, v in result["coordinates"]]
    if not rows:
        scalars = [(k, v) for k, v in result.items()
                   if isinstance(v, (str, int, bool))]
        out.write(",".join(k for k, _ in scalars) + "\n")
        out.write(",".join(str(v) for _, v in scalars) + "\n")
        return out.getvalue()
    header = list(rows[0].keys())
    out.write(",".join(header) + "\n")
    for r in rows:
        out.write(",".join(str(r.get(h, "")) for h in header) + "\n")
    return out.getvalue()


def _emit_text(result, indent=0):
    out = []

    def walk(obj, depth):
        pad = "  " * depth
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)):
                    out.append("%s%s:" % (pad, k))
                    walk(v, depth + 1)
                else:
                    out.append("%s%s: %s" % (pad, k, v))
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)):
                    walk(v, depth)
                    out.append("")
                else:
                    out.append("%s- %s" % (pad, v))
        else:
            out.append("%s%s" % (pad, obj))

    walk(result, indent)
    return "\n".join(line for line in out if line is not None).rstrip() + "\n"


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps subcommand defaults from clobbering values parsed
    # before the subcommand name
    common.add_argument("--config", default=argparse.SUPPRESS,
                        help="key=value configuration file")
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    common.add_argument("--output", default=argparse.SUPPRESS,
                        help="write the report here")
    common.add_argument("--parallel", type=int, default=argparse.SUPPRESS,
                        help="parallel width (reports are width-independent)")
    parser = argparse.ArgumentParser(
        prog="chordal",
        parents=[common],
        description="Exact computations in the algebra of chord diagrams.")
    sub = parser.add_subparsers(dest="command")

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add_parser("dims", help="dimension of a relation quotient")
    p.add_argument("--space", required=True, choices=("A", "G", "B", "vacuum"))
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--legs", type=int, default=None)

    p = add_parser("enumerate", help="list canonical diagrams")
    p.add_argument("--kind", required=True,
                   choices=("chord", "closed", "open", "vacuum"))
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--legs", type=int, default=None)

    p = add_parser("reduce", help="coordinates of a diagram in a quotient")
    p.add_argument("--space", required=True, choices=("A", "G", "B"))
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--diagram", required=True,
                   help="chord word, diagram record, or @FILE")

    p = add_parser("ws", help="weight-system evaluation")
    p.add_argument("--algebra", default="sl2", help="sl2 or file:PATH")
    p.add_argument("--rep", type=int, default=1)
    p.add_argument("--diagram", required=True,
                   help="chord word, diagram record, or @FILE")
    p.add_argument("--mode", choices=("scalar", "trace"), default="trace")

    p = add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--legs", default=None,
                   help="comma-separated labels or a count (lemker)")
    p.add_argument("--grade", type=int, default=None)
    p.add_argument("--rep", type=int, default=None)
    p.add_argument("--algebra", default="sl2")

    p = add_parser("decomposition", help="vacuum/leg-factor dimension table")
    p.add_argument("--legs", type=int, required=True)
    p.add_argument("--max-grade", type=int, required=True, dest="max_grade")
    return parser


def _read_diagram(text):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read().strip()
    text = text.strip()
    if ";" in text:
        return parse_jacobi(text)
    return chord_to_jacobi(text)


def _algebra_and_reps(name):
    if name == "sl2":
        g, _family = builtin_sl2()
        return g, None
    if name.startswith("file:"):
        with open(name[len("file:"):]) as fh:
            g, reps = parse_lie_file(fh.read(), name=name[len("file:"):])
        report = validate_metric_lie(g)
        if not report["pass"]:
            raise LieDataError("algebra data rejected: %s"
                               % json.dumps(_jsonable(report.get("witness", {}))))
        for k, rep in reps.items():
            if not representation_ok(g, rep):
                raise LieDataError("representation %d violates the bracket identity" % k)
        return g, reps
    raise UsageError("unknown algebra %r" % (name,))


def _parse_labels(value, default_count=2):
    if value is None:
        return tuple("abcdefgh"[:default_count])
    value = str(value)
    if value.isdigit():
        return tuple("abcdefgh"[: int(value)])
    return tuple(s.strip() for s in value.split(",") if s.strip())


def _cmd_dims(args):
    legs = args.legs
    if legs is not None:
        if args.space != "B":
            raise UsageError("--legs applies to the unordered-leg space B only")
        # the fixed-leg-count summand is itself a quotient (IHX preserves legs)
        from .linalg import build_quotient
        from .relations import ihx_generators

        ambient = enumerate_jacobi(OPEN, args.degree, legs)
        space = build_quotient(ambient, ihx_generators(OPEN, args.degree, legs).generators)
    else:
        space = build_space(args.space, args.degree)
    return 0, {
        "space": args.space,
        "degree": args.degree,
        **({"legs": legs} if legs is not None else {}),
        "ambient": len(space.ambient),
        "rank": space.rank,
        "dimension": space.dimension,
        "basis": [w if isinstance(w, str) else diagram_str(w)
                  for w in space.representative_basis],
    }


def _cmd_enumerate(args):
    if args.kind == "chord":
        items = list(enumerate_chords(args.order))
    else:
        kind = {"closed": CLOSED, "open": OPEN, "vacuum": VACUUM}[args.kind]
        items = [diagram_str(d)
                 for d in enumerate_jacobi(kind, args.order, args.legs)]
    return 0, {
        "kind": args.kind,
        "order": args.order,
        **({"legs": args.legs} if args.legs is not None else {}),
        "count": len(items),
        "diagrams": items,
    }


def _cmd_reduce(args):
    d = _read_diagram(args.diagram)
    if d.order != args.degree:
        raise UsageError("diagram has order %d, not %d" % (d.order, args.degree))
    if args.space == "A":
        if d.kind != CLOSED:
            raise UsageError("the chord quotient reduces closed diagrams")
        lc = closed_class_in_A(d)
        coords = [(w, format_fraction(c)) for w, c in
                  sorted(lc.terms.items(), key=lambda t: (len(t[0]), t[0]))]
    else:
        space = build_space(args.space, args.degree)
        sc = canonical_jacobi(d)
        lc = LinComb()
        if not sc.is_zero:
            lc.add(sc.diagram, Fraction(sc.sign))
        red = space.reduce(lc)
        coords = [(diagram_str(k), format_fraction(v))
                  for k, v in red.items_sorted(key=lambda x: x.sort_key())]
    return 0, {
        "space": args.space,
        "degree": args.degree,
        "input": args.diagram,
        "coordinates": coords,
    }


def _cmd_ws(args):
    g, reps = _algebra_and_reps(args.algebra)
    if reps is None:
        V = sl2_rep(args.rep)
    else:
        if args.rep not in reps:
            raise UsageError("algebra file defines no representation %d" % args.rep)
        V = reps[args.rep]
    d = _read_diagram(args.diagram)
    value = weight_trace(d, g, V) if args.mode == "trace" else central_scalar(d, g, V)
    return 0, {
        "diagram": args.diagram,
        "algebra": args.algebra,
        "rep": args.rep,
        "mode": args.mode,
        "value": format_fraction(value),
    }


def _cmd_verify(args, parallel):
    suite = args.suite
    if suite == "presentations":
        report = verify_presentation_iso(args.degree if args.degree is not None else 3)
    elif suite == "hopf":
        from .hopf import verify_bialgebra

        report = verify_bialgebra(args.degree if args.degree is not None else 3)
    elif suite == "sigma":
        from .hopf import verify_symmetrization_iso

        report = verify_symmetrization_iso(args.degree if args.degree is not None else 3)
    elif suite == "primitives":
        from .hopf import verify_primitives

        report = verify_primitives(args.degree if args.degree is not None else 2)
    elif suite == "ws-vanish":
        g, reps = _algebra_and_reps(args.algebra)
        k_max = args.rep if args.rep is not None else 2
        deg = args.degree if args.degree is not None else 2
        rep_list = None if reps is None else [reps[k] for k in sorted(reps)]
        report = verify_relations_vanish(g, deg, deg, k_max, reps=rep_list,
                                         parallel=parallel)
    elif suite == "lemker":
        from .modular import verify_lemker

        labels = _parse_labels(args.legs)
        report = verify_lemker(labels, args.grade if args.grade is not None else 0)
    elif suite == "centrality":
        g, reps = _algebra_and_reps(args.algebra)
        k_max = args.rep if args.rep is not None else 2
        deg = args.degree if args.degree is not None else 2
        rep_list = None if reps is None else [reps[k] for k in sorted(reps)]
        report = verify_centrality(g, deg, k_max, reps=rep_list)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError("unknown suite %r" % (suite,))
    return (0 if report.get("pass", False) else 1), report


def _cmd_decomposition(args):
    from .modular import decomposition_report

    return 0, decomposition_report(args.legs, args.max_grade)


def dispatch(argv):
    """Parse, run, and return (exit status, report dict or None)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (0 if exc.code == 0 else 2), None
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2, None
    try:
        config_path = getattr(args, "config", None)
        config = _load_config(config_path) if config_path else {}
        fmt = getattr(args, "format", None) or config.get("format", "json")
        if fmt not in FORMATS:
            raise UsageError("unsupported format %r" % (fmt,))
        parallel = getattr(args, "parallel", None)
        if parallel is None:
            parallel = config.get("parallel", 1)
        output = getattr(args, "output", None) or config.get("output")
        for key in ("degree", "grade", "rep", "legs", "max_grade"):
            if getattr(args, key, None) is None and key in config:
                setattr(args, key, config[key])
        for key in ("degree", "grade", "rep", "max_grade"):
            val = getattr(args, key, None)
            if val is not None and int(val) < 0:
                raise UsageError("%s must be nonnegative" % key)
        if args.command == "dims":
            status, report = _cmd_dims(args)
        elif args.command == "enumerate":
            status, report = _cmd_enumerate(args)
        elif args.command == "reduce":
            status, report = _cmd_reduce(args)
        elif args.command == "ws":
            status, report = _cmd_ws(args)
        elif args.command == "verify":
            status, report = _cmd_verify(args, parallel)
        elif args.command == "decomposition":
            status, report = _cmd_decomposition(args)
        else:
            raise UsageError("unknown command %r" % (args.command,))
    except (UsageError, DiagramError, KeyError) as exc:
        print("usage error: %s" % (exc,), file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2, None
    except (LieDataError, NotCentralError) as exc:
        report = {"pass": False, "error": str(exc)}
        text = emit_report(report, "json")
        sys.stdout.write(text)
        return 1, report
    text = emit_report(report, fmt)
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status, report


def main():
    sys.exit(dispatch(sys.argv[1:])[0])


if __name__ == "__main__":
    main()
