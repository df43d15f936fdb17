"""Command-line front end.

Exit codes: 0 holds / all expectations met, 1 fails / mismatch,
2 unknown at bound, 64 parse, I/O or usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .corpus import (LIMIT, TERMINAL, corpus_dir, corpus_instances, evaluate, load_file,
                     verify_paper)
from .diagram import cone_text, enumerate_cones
from .errors import BicatError
from .finite import FAILS, HOLDS, UNKNOWN
from .presentation import DEFAULT_BOUNDS, FLAVORS, Bounds, display_name
from .slices import build_slice
from .universality import BI, ISO, is_bi_terminal, is_limit, is_two_terminal

EXIT = {HOLDS: 0, FAILS: 1, UNKNOWN: 2}
USAGE_ERROR = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def pretty(text, unicode=False):
    """ASCII witness text, or the same text in mathematical notation."""
    if not unicode:
        return text
    text = re.sub(r"[A-Za-z_][A-Za-z0-9_]*", lambda m: display_name(m.group(0), True), text)
    text = text.replace(" * ", "∗").replace(" . ", "").replace(" & ", " ")
    return text.replace("=>", "⇒")


def _bounds(args):
    d = DEFAULT_BOUNDS
    return Bounds(args.max_word_len if args.max_word_len is not None else d.max_word_length,
                  args.max_layers if args.max_layers is not None else d.max_layers,
                  args.max_rewrite_steps if args.max_rewrite_steps is not None
                  else d.max_rewrite_steps)


def _add_common(p):
    p.add_argument("--max-word-len", type=int)
    p.add_argument("--max-layers", type=int)
    p.add_argument("--max-rewrite-steps", type=int)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--unicode", action="store_true")


def build_parser():
    parser = _Parser(prog="bicat", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("check", "explain"):
        p = sub.add_parser(name)
        p.add_argument("input", help="a .bicat file or a corpus instance name")
        p.add_argument("--candidate", help="cone name in the file (default: last cone)")
        p.add_argument("--question", choices=(LIMIT, TERMINAL))
        p.add_argument("--cone-flavor", choices=FLAVORS)
        p.add_argument("--slice-flavor", choices=FLAVORS)
        p.add_argument("--strength", choices=(ISO, BI), default=ISO)
        _add_common(p)
    p = sub.add_parser("enumerate")
    p.add_argument("input")
    p.add_argument("--cone-flavor", choices=FLAVORS, default="strict")
    p.add_argument("--slice-flavor", choices=FLAVORS)
    p.add_argument("--functor", help="functor name (default: last functor)")
    _add_common(p)
    p = sub.add_parser("verify-paper")
    _add_common(p)
    return parser


def _resolve(name, b):
    """Return (label, functor, candidate-cone, instance-or-None)."""
    path = Path(name)
    if path.suffix == ".bicat" or path.exists():
        if not path.exists():
            raise FileNotFoundError(name)
        model = load_file(path)
        return path.stem, model, None
    for inst in corpus_instances():
        if inst.name == name:
            return inst.name, inst.model, inst
    raise FileNotFoundError(f"{name}: no such file or corpus instance in {corpus_dir()}")


def _pick(mapping, name, what):
    if not mapping:
        raise UsageError(f"the input declares no {what}")
    if name is None:
        return list(mapping.values())[-1]
    if name not in mapping:
        raise UsageError(f"no {what} named {name!r}")
    return mapping[name]


def _verdict_record(question, instance, flavor, slice_flavor, strength, v):
    rec = {"question": question, "instance": instance, "flavor": flavor,
           "strength": strength, **v.to_dict()}
    if slice_flavor is not None:
        rec["slice_flavor"] = slice_flavor
    return rec


def _print_verdict(rec, unicode, out):
    where = f" in {rec['slice_flavor']} slice" if rec.get("slice_flavor") else ""
    out.write(f"{rec['instance']}: {rec['strength']} {rec['question']} of {rec['flavor']} "
              f"cones{where}: {rec['status']} ({rec['certificate']})\n")
    for w in rec["witnesses"]:
        out.write(f"  {w['kind']}: {pretty(w['text'], unicode)}\n")


def cmd_check(args, out):
    if args.question is None:
        raise UsageError("check needs --question")
    if args.question == TERMINAL and args.slice_flavor is None:
        raise UsageError("--question terminal needs --slice-flavor")
    if args.question == LIMIT and args.slice_flavor is not None:
        raise UsageError("--slice-flavor only applies to --question terminal")
    b = _bounds(args)
    label, model, inst = _resolve(args.input, b)
    lam = _pick(model.cones, args.candidate, "cone")
    F = lam.target
    flavor = args.cone_flavor or lam.flavor
    if args.question == LIMIT:
        v = is_limit(F, lam, flavor, args.strength, b)
    else:
        if lam.flavor != flavor:
            lam = lam.with_flavor(flavor)
        S = build_slice(F, flavor, args.slice_flavor, b)
        v = is_two_terminal(S, lam) if args.strength == ISO else is_bi_terminal(S, lam)
    rec = _verdict_record(args.question, label, flavor, args.slice_flavor, args.strength, v)
    if args.format == "json":
        out.write(json.dumps(rec, indent=2, ensure_ascii=False) + "\n")
    else:
        _print_verdict(rec, args.unicode, out)
    return EXIT[v.status]


def cmd_enumerate(args, out):
    b = _bounds(args)
    label, model, _ = _resolve(args.input, b)
    F = _pick(model.functors, args.functor, "functor")
    if args.slice_flavor:
        S = build_slice(F, args.cone_flavor, args.slice_flavor, b)
        data = S.to_dict(unicode=args.unicode)
        if args.format == "json":
            out.write(json.dumps(data, indent=2, ensure_ascii=False) + "\n")
        else:
            out.write(f"{label}: {args.slice_flavor} slice of {args.cone_flavor} cones, "
                      f"{len(data['objects'])} objects ({data['certificate']})\n")
            for n, o in enumerate(data["objects"]):
                out.write(f"  [{n}] {o}\n")
            for c in data["one_cells"]:
                mod = ", ".join(c["modification"])
                out.write(f"  [{c['source']}] -> [{c['target']}]: ({c['f']}, ({mod}))\n")
            for t in data["two_cells"]:
                out.write(f"  [{t['source']}] -> [{t['target']}] 2-cell {t['from']} => "
                          f"{t['to']}: {t['alpha']}\n")
        return 0
    rows, exact = [], True
    for X in F.target.objects:
        cones, ex = enumerate_cones(F, X, args.cone_flavor, b)
        exact = exact and ex
        rows.extend(cone_text(c, args.unicode) for c in cones)
    cert = "exact" if exact else "bounded"
    if args.format == "json":
        out.write(json.dumps({"instance": label, "flavor": args.cone_flavor, "cones": rows,
                              "certificate": cert, "bounds": b.to_dict()},
                             indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(f"{label}: {len(rows)} {args.cone_flavor} cones ({cert})\n")
        for r in rows:
            out.write(f"  {r}\n")
    return 0


def cmd_explain(args, out):
    b = _bounds(args)
    label, model, inst = _resolve(args.input, b)
    lam = _pick(model.cones, args.candidate, "cone")
    F = lam.target
    lines = [f"{label}: diagram {F.name}: {F.source.name} -> {F.target.name}",
             f"  candidate {lam.name}: {pretty(cone_text(lam), args.unicode)} ({lam.flavor})"]
    if inst is not None:
        lines.append(f"  {inst.anchor}")
    records, status = [], HOLDS
    if inst is not None:
        for e in inst.expectations:
            v = evaluate(inst, e.question, e.cone_flavor, e.slice_flavor, e.strength, b)
            rec = _verdict_record(e.question, label, e.cone_flavor, e.slice_flavor,
                                  e.strength, v)
            rec["expected"] = e.expected
            rec["match"] = v.status == e.expected
            if e.note:
                rec["note"] = e.note
            records.append(rec)
            if not rec["match"]:
                status = FAILS
    else:
        for fl in FLAVORS:
            n = sum(len(enumerate_cones(F, X, fl, b)[0]) for X in F.target.objects)
            lines.append(f"  {n} {fl} cones")
    if args.format == "json":
        out.write(json.dumps({"instance": label, "verdicts": records}, indent=2,
                             ensure_ascii=False) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
        for rec in records:
            mark = "ok" if rec["match"] else f"MISMATCH (expected {rec['expected']})"
            out.write(f"[{mark}] ")
            _print_verdict(rec, args.unicode, out)
    return EXIT[status]


def cmd_verify(args, out):
    b = _bounds(args)
    report = verify_paper(b)
    if args.format == "json":
        out.write(json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(report.text(args.unicode) + "\n")
    return 0 if report.ok else 1


COMMANDS = {"check": cmd_check, "enumerate": cmd_enumerate, "explain": cmd_explain,
            "verify-paper": cmd_verify}


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as e:
        err.write(f"bicat: usage error: {e}\n")
        return USAGE_ERROR
    except (OSError, BicatError) as e:
        err.write(f"bicat: {e}\n")
        return USAGE_ERROR


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
