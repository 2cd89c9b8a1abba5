"""Command-line front end: ``leghopf <command> ...``.

Exit codes: 0 on success, 1 when a verification or invariant check fails,
2 for bad flags or inputs.  Errors are reported on stderr as one JSON
object {"error": ..., "message": ...}.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import checks
from . import classify as C
from . import families as F
from .exact import SingularMatrix, format_rational, parse_rational
from .slopes import (Finite, NormalizationError, OutOfRange, case_label, cfrac, count_tight,
                     count_twisting, honda_count, normalize)
from .surgery import (DiagramError, ParityViolation, SurgeryDiagram, d3_data, invariants,
                      linking_matrix, parity_check)

TYPE_ABBREV = {C.TIGHT: "tight", C.LOOSE: "loose", C.EXCEPTIONAL: "exc"}


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _emit_error("UsageError", message)
        sys.exit(2)


def _emit_error(kind, message):
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)


def _q(v) -> str:
    return format_rational(Fraction(v))


def _rational_arg(text):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


# --- rendering -------------------------------------------------------------------------

def realization_record(r: C.Realization) -> dict:
    return {"t0": r.t0, "r0": r.r0, "t1": r.t1, "r1": r.r1, "d3": _q(r.ambient_d3),
            "twisting": r.twisting, "type0": r.type0, "type1": r.type1, "case": r.case}


def realization_line(r: C.Realization) -> str:
    line = (f"({r.t0},{r.r0},{r.t1},{r.r1}) d3={_q(r.ambient_d3)} "
            f"{TYPE_ABBREV[r.type0]}/{TYPE_ABBREV[r.type1]}")
    if r.twisting:
        line += f" twisting={r.twisting}"
    return line


def _tsv_value(v):
    if isinstance(v, (list, tuple)):
        return json.dumps(v)
    return str(v)


def render(records, lines, fmt, out=None):
    out = out or sys.stdout
    if fmt == "json":
        print(json.dumps(records, indent=2), file=out)
    elif fmt == "tsv":
        rows = records if isinstance(records, list) else [records]
        if rows:
            keys = list(rows[0].keys())
            print("\t".join(keys), file=out)
            for r in rows:
                print("\t".join(_tsv_value(r.get(k, "")) for k in keys), file=out)
    else:
        for line in lines or ["(none)"]:
            print(line, file=out)


# --- commands ---------------------------------------------------------------------------

def cmd_cfrac(a):
    c = cfrac(a.s)
    n = honda_count(c)
    rec = {"s": _q(a.s), "cfrac": list(c.entries), "N": n}
    return rec, [f"{c} N={n}"]


def cmd_count(a):
    if a.twisting is not None:
        n = count_twisting(a.t0, a.t1, a.twisting, up_to_diffeo=a.diffeo)
        rec = {"t0": a.t0, "t1": a.t1, "twisting": a.twisting, "diffeo": a.diffeo, "count": n}
        return rec, [str(n)]
    c = count_tight(a.t0, a.t1)
    value = c.n if isinstance(c, Finite) else "integral-family"
    rec = {"t0": a.t0, "t1": a.t1, "case": case_label(a.t0, a.t1), "count": value}
    return rec, [str(c)]


def cmd_normalize(a):
    res = normalize(a.t0, a.t1)
    rec = {"t0": a.t0, "t1": a.t1, "s1p": _q(res.s1p), "A": res.A.rows(), "k": res.k}
    return rec, [f"s1'={_q(res.s1p)} A={res.A.rows()}"]


def _load_diagram(path):
    try:
        with open(path) if path != "-" else sys.stdin as fh:
            return SurgeryDiagram.loads(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise DiagramError(f"invalid JSON in {path}: {exc}")


def diagram_report(d: SurgeryDiagram) -> tuple:
    inv = invariants(d)
    report = parity_check(d)
    comps = [{"component": i, "label": c.label, "tb": _q(inv.tb[i]), "rot": _q(inv.rot[i])}
             for i, c in enumerate(d.components)]
    rec = {
        "components": comps,
        "d3": None if inv.d3 is None else _q(inv.d3),
        "lk": [{"i": i, "j": j, "lk": _q(v)} for (i, j), v in sorted(inv.lk.items())],
        "parity": "ok" if report.checked else "not checked (|det M| != 1)",
    }
    if inv.d3 is not None:
        data = d3_data(d)
        rec.update(sigma=data.sigma, c2=_q(data.c2), chi=data.chi, q=data.q)
    lines = [f"{c['label'] or 'L' + str(c['component'])}: tb={c['tb']} rot={c['rot']}" for c in comps]
    lines.append(f"d3={rec['d3'] if rec['d3'] is not None else 'undefined (tb = 0 knot)'}")
    lines += [f"lk(L{e['i']},L{e['j']})={e['lk']}" for e in rec["lk"]]
    lines.append(f"parity: {rec['parity']}")
    return rec, lines


def cmd_invariants(a):
    return diagram_report(_load_diagram(a.file))


def _family_id(a) -> F.FamilyId:
    kind = a.id.upper()
    return F.FamilyId(kind, k=a.k, l=a.l, n=a.n, m=a.m, side=(a.side or "").upper(),
                      variant=a.variant)


def cmd_family(a):
    fid = _family_id(a)
    if a.emit:
        d = F.instantiate(fid, reverse=a.reverse)
        return d.to_json(), [d.dumps()]
    try:
        rep = F.verify(fid)
    except F.Mismatch as exc:
        raise CheckFailed(str(exc))
    rows = F.expected(fid)
    recs = []
    lines = [f"{fid}: pass ({rep.checks} checks), det M = {rep.det}, d3 = {_q(rep.d3)}"]
    for idx, row in enumerate(rows):
        d = F.instantiate(fid, reverse=(idx == 1))
        inv = invariants(d)
        got = (inv.tb[0], inv.rot[0], inv.tb[1], inv.rot[1])
        recs.append({"orientation": "reversed" if idx else "as drawn",
                     "expected": [row.t0, row.r0, row.t1, row.r1], "computed": [int(v) for v in got],
                     "d3": _q(row.d3), "type0": row.type0, "type1": row.type1,
                     "lk": _q(inv.lk[(0, 1)])})
        lines.append(f"  {'reversed' if idx else 'as drawn'}: expected ({row.t0},{row.r0},{row.t1},{row.r1})"
                     f" computed ({','.join(_q(v) for v in got)}) d3={_q(row.d3)}"
                     f" {TYPE_ABBREV[row.type0]}/{TYPE_ABBREV[row.type1]} lk={_q(inv.lk[(0, 1)])}")
    if not rows:
        recs.append({"d3": _q(rep.d3), "uncancelled": rep.uncancelled})
    return recs, lines


def _rows_output(rows):
    return [realization_record(r) for r in rows], [realization_line(r) for r in rows]


def cmd_classify(a):
    return _rows_output(C.classify(a.t0, a.t1, a.case or ""))


def cmd_twisting(a):
    return _rows_output(C.twisting_realizations(a.t0, a.t1, a.n))


def cmd_loose(a):
    if a.start is not None or a.target is not None:
        if a.start is None or a.target is None:
            raise UsageError("--start and --target go together")
        plan = C.loose_plan(tuple(a.start), tuple(a.target))
        end = C.replay(tuple(a.start), plan)
        rec = {"start": a.start, "target": a.target, "moves": plan, "replay": list(end)}
        return rec, [" ".join(plan) if plan else "(no moves)"]
    for name in ("t0", "r0", "t1", "r1", "d"):
        if getattr(a, name) is None:
            raise UsageError(f"--{name} is required")
    if not C.loose_realization_exists(a.t0, a.r0, a.t1, a.r1, a.d):
        return [], []
    r = C.Realization(a.t0, a.r0, a.t1, a.r1, a.d, 0, C.LOOSE, C.LOOSE, "f")
    return _rows_output([r])


def table_se(tmin, tmax) -> list:
    rows = []
    for t0 in range(tmin, tmax + 1):
        for t1 in range(tmin, tmax + 1):
            if t0 < 0 and t1 < 0:
                continue
            rows += C.strongly_exceptional(t0, t1)
    return sorted(rows, key=lambda r: (r.t0, r.t1, r.r0, r.r1, r.ambient_d3))


def cmd_table(a):
    if a.tmin > a.tmax:
        raise UsageError("--tmin must not exceed --tmax")
    if a.which == "se":
        rows = table_se(a.tmin, a.tmax)
        return [realization_record(r) for r in rows], [
            f"{r.case:3} {realization_line(r)}" for r in rows]
    recs, lines = [], []
    for t0 in range(1, max(a.tmax, 1) + 1):
        for t1 in range(1, t0 + 1):
            for pat, r0, r1, d3 in C.summary_patterns(t0, t1):
                recs.append({"pattern": pat, "t0": t0, "r0": r0, "t1": t1, "r1": r1, "d3": _q(d3)})
                lines.append(f"pattern {pat or '-'}  ({t0},{r0},{t1},{r1}) d3={_q(d3)}")
    return recs, lines


def cmd_selfcheck(a):
    results = checks.run_all()
    recs = [{"number": r.number, "name": r.name, "ok": r.ok, "detail": r.detail,
             "seconds": round(r.seconds, 3)} for r in results]
    lines = [r.line() for r in results]
    failed = [r for r in results if not r.ok]
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return recs, lines, (1 if failed else 0)


# --- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="leghopf", description="Exact invariants and classification of Legendrian Hopf links.")
    p.add_argument("--format", choices=["human", "json", "tsv"], default="human")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    # --format is also accepted after the subcommand
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["human", "json", "tsv"], default=argparse.SUPPRESS)

    def add(name, **kw):
        return sub.add_parser(name, parents=[fmt], **kw)

    def pair(sp, required=True):
        sp.add_argument("--t0", type=int, required=required)
        sp.add_argument("--t1", type=int, required=required)

    sp = add("cfrac", help="negative continued fraction and its count")
    sp.add_argument("-s", type=_rational_arg, required=True, help="rational s < -1, as P/Q")
    sp.set_defaults(func=cmd_cfrac)

    sp = add("count", help="number of tight structures on the thickened torus")
    pair(sp)
    sp.add_argument("--twisting", type=int, help="pi-twisting n >= 1")
    sp.add_argument("--diffeo", action="store_true", help="count up to diffeomorphism")
    sp.set_defaults(func=cmd_count)

    sp = add("normalize", help="SL(2,Z) normalization of the boundary slopes")
    pair(sp)
    sp.set_defaults(func=cmd_normalize)

    sp = add("invariants", help="invariants of a diagram file")
    sp.add_argument("-f", "--file", required=True, help="diagram JSON ('-' for stdin)")
    sp.set_defaults(func=cmd_invariants)

    sp = add("family", help="instantiate and verify a family member")
    sp.add_argument("--id", required=True, help=", ".join(F.KINDS))
    for name in ("k", "l", "n", "m", "variant"):
        sp.add_argument(f"--{name}", type=int, default=0)
    sp.add_argument("--side", choices=["L", "R", "l", "r"])
    sp.add_argument("--emit", action="store_true", help="print the diagram as JSON")
    sp.add_argument("--reverse", action="store_true", help="with --emit: reverse both components")
    sp.set_defaults(func=cmd_family)

    sp = add("classify", help="realisations with untwisted complement")
    pair(sp)
    sp.add_argument("--case", choices=["tight", "exceptional"])
    sp.set_defaults(func=cmd_classify)

    sp = add("twisting", help="realisations with pi-twisting n in the complement")
    pair(sp)
    sp.add_argument("-n", type=int, required=True)
    sp.set_defaults(func=cmd_twisting)

    sp = add("loose", help="loose realisations, or a stabilisation plan")
    for name in ("t0", "r0", "t1", "r1"):
        sp.add_argument(f"--{name}", type=int)
    sp.add_argument("--d", type=_rational_arg, help="d3 of the ambient structure")
    sp.add_argument("--start", type=int, nargs=2, metavar=("TB", "ROT"))
    sp.add_argument("--target", type=int, nargs=2, metavar=("TB", "ROT"))
    sp.set_defaults(func=cmd_loose)

    sp = add("table", help="emit the strongly exceptional or summary table")
    sp.add_argument("--which", choices=["se", "summary"], default="se")
    sp.add_argument("--tmin", type=int, default=-6)
    sp.add_argument("--tmax", type=int, default=6)
    sp.set_defaults(func=cmd_table)

    sp = add("selfcheck", help="run the acceptance suite")
    sp.set_defaults(func=cmd_selfcheck)
    return p


USAGE_ERRORS = (UsageError, OutOfRange, F.BadParams, DiagramError, C.ParityMismatch,
                C.NotHalfInteger, C.NotCoprime, ValueError)
CHECK_ERRORS = (CheckFailed, F.Mismatch, ParityViolation, SingularMatrix, NormalizationError)


_NEG_FRACTION = re.compile(r"^-\d+/\d+$")


def _attach_negative_fractions(argv):
    # argparse takes "-2/1" for an option; glue it to the flag before it
    out = []
    for tok in argv:
        if _NEG_FRACTION.match(tok) and out and out[-1].startswith("-") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_attach_negative_fractions(argv))
    try:
        result = args.func(args)
    except CHECK_ERRORS as exc:
        _emit_error(type(exc).__name__, str(exc))
        return 1
    except USAGE_ERRORS as exc:
        _emit_error(type(exc).__name__, str(exc))
        return 2
    code = 0
    if len(result) == 3:
        records, lines, code = result
    else:
        records, lines = result
    render(records, lines, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
