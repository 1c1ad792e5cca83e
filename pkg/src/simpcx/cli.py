"""Command-line entry point: ``simpcx VERB [options]``.

Exit status is 0 on success, 2 on usage errors and 1 on domain errors; the
latter print ``{"error": CODE, "message": ...}``.
"""
from __future__ import annotations

import argparse
import json
import sys

from .bounds import certificate, counting_bounds
from .census import ColoredGraph, census, decode, encode
from .complex import MarkedComplex, stats, validate
from .constructions import build
from .errors import SimpcxError
from .groups import parse_group
from .homology import homology_summary
from .metric import homological_systole
from .presentations import (abelianization, complex_to_presentation, format_presentation,
                            parse_presentation, presentation_stats, presentation_to_complex,
                            tietze_simplify)


class UsageError(Exception):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _table(obj, indent: str = "") -> str:
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, dict):
                lines.append(f"{indent}{k}:")
                lines.append(_table(v, indent + "  "))
            else:
                lines.append(f"{indent}{k:<18} {_cell(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(_table(x, indent) if isinstance(x, dict) else indent + _cell(x) for x in obj)
    return indent + _cell(obj)


def _cell(v) -> str:
    if isinstance(v, list) and v and all(isinstance(x, str) for x in v):
        return "; ".join(v)
    if isinstance(v, list):
        return " ".join(_cell(x) for x in v) if all(not isinstance(x, list) for x in v) \
            else json.dumps(v)
    return str(v)


def _read(args) -> str:
    if args.infile in (None, "-"):
        return sys.stdin.read()
    with open(args.infile) as fh:
        return fh.read()


def _read_json(args):
    text = _read(args)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"input is not JSON: {e}") from None


def _read_marked(args) -> MarkedComplex:
    raw = _read_json(args)
    X = validate(raw)
    marks = raw.get("marks", {}) if isinstance(raw, dict) else {}
    loops = {k: tuple(v) for k, v in marks.get("loops", {}).items()}
    return MarkedComplex(X, dict(marks.get("vertices", {})), loops)


def invariants_record(X) -> dict:
    st, h = stats(X), homology_summary(X)
    return {"s0": st.s0, "s1": st.s1, "s2": st.s2, "euler": st.euler,
            "betti": list(h.betti), "torsion": list(h.h1_torsion_factors)}


# ---------------------------------------------------------------- verbs


def cmd_build(args):
    return build(args.name).to_dict()


def cmd_invariants(args):
    return invariants_record(_read_marked(args).complex)


def cmd_bounds(args):
    if not args.group:
        raise UsageError("bounds needs --group SPEC")
    return certificate(parse_group(args.group)).to_dict()


def cmd_census(args):
    res = census(args.T, max_T=args.max_T, budget_nodes=args.budget_nodes,
                 budget_seconds=args.budget_seconds, workers=args.workers)
    if args.format == "json":
        return res.ndjson()
    rows = [f"{'s0':>3} {'s1':>3} {'s2':>3} {'euler':>5}  betti    torsion"]
    for e in res.entries:
        rows.append(f"{e.s0:>3} {e.s1:>3} {e.s2:>3} {e.euler:>5}  {str(list(e.betti)):<8} "
                    f"{list(e.torsion)}")
    if not res.complete:
        rows.append(f"INCOMPLETE: {res.reason}")
    return "\n".join(rows) + "\n"


def cmd_encode(args):
    return encode(_read_marked(args).complex).to_dict()


def cmd_decode(args):
    raw = _read_json(args)
    try:
        g = ColoredGraph.from_dict(raw)
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"not a colored graph: {e}") from None
    return decode(g).to_dict()


def cmd_compile(args):
    text = args.presentation if args.presentation is not None else _read(args)
    P = parse_presentation(text)
    if args.simplify:
        P = tietze_simplify(P)
    return presentation_to_complex(P).to_dict()


def cmd_present(args):
    X = _read_marked(args).complex
    P = complex_to_presentation(X)
    Q = tietze_simplify(P)
    st = presentation_stats(Q)
    return {"presentation": format_presentation(P), "simplified": format_presentation(Q),
            "length": P.length, "simplified_length": st.length, "t_upper": st.t_upper,
            "abelianization": abelianization(Q).to_dict()}


def cmd_systole(args):
    return homological_systole(_read_marked(args).complex, ring=args.ring).to_dict()


def cmd_count(args):
    return counting_bounds(args.T, args.which).to_dict()


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--in", dest="infile", metavar="FILE", help="input file (default stdin)")
    common.add_argument("--out", dest="outfile", metavar="FILE", help="output file (default stdout)")
    common.add_argument("--budget-nodes", type=int, default=None)
    common.add_argument("--budget-seconds", type=float, default=None)
    common.add_argument("--max-T", dest="max_T", type=int, default=10)

    p = argparse.ArgumentParser(prog="simpcx", description="Simplicial complexity toolkit.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("build", parents=[common], help="build a named complex")
    s.add_argument("name")
    s.set_defaults(fn=cmd_build)
    s = sub.add_parser("invariants", parents=[common], help="counts and homology of a complex")
    s.set_defaults(fn=cmd_invariants)
    s = sub.add_parser("bounds", parents=[common], help="kappa/sigma certificate for a group")
    s.add_argument("--group", required=True)
    s.set_defaults(fn=cmd_bounds)
    s = sub.add_parser("census", parents=[common], help="minimal-candidate complexes up to T triangles")
    s.add_argument("T", type=int)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(fn=cmd_census)
    s = sub.add_parser("encode", parents=[common], help="complex -> colored graph")
    s.set_defaults(fn=cmd_encode)
    s = sub.add_parser("decode", parents=[common], help="colored graph -> complex")
    s.set_defaults(fn=cmd_decode)
    s = sub.add_parser("compile", parents=[common], help="presentation -> complex")
    s.add_argument("presentation", nargs="?")
    s.add_argument("--simplify", action="store_true", help="apply Tietze moves first")
    s.set_defaults(fn=cmd_compile)
    s = sub.add_parser("present", parents=[common], help="complex -> presentation")
    s.set_defaults(fn=cmd_present)
    s = sub.add_parser("systole", parents=[common], help="homological systole, unit edge lengths")
    s.add_argument("--ring", default="Z", help="Z or a prime p")
    s.set_defaults(fn=cmd_systole)
    s = sub.add_parser("count", parents=[common], help="counting bounds in log2 space")
    s.add_argument("T", type=int)
    s.add_argument("--which", choices=("kappa", "sigma"), default="kappa")
    s.set_defaults(fn=cmd_count)
    return p


def _emit(args, text: str) -> None:
    if args.outfile:
        with open(args.outfile, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        result = args.fn(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"simpcx: error: {e}", file=sys.stderr)
        return 2
    except SimpcxError as e:
        _emit(args, dumps({"error": e.code, "message": str(e)}) + "\n")
        return 1
    except (ValueError, KeyError, TypeError) as e:
        _emit(args, dumps({"error": "InvalidInput", "message": str(e)}) + "\n")
        return 1
    if isinstance(result, str):
        text = result
    elif args.format == "json":
        text = dumps(result) + "\n"
    else:
        text = _table(result) + "\n"
    _emit(args, text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
