"""Command-line front end.

Subcommands:

  compute   one invariant N (or hat-H with --hat) for a class and constraints
  table     the full-tangency column T_d per degree, or every nonzero
            single-point invariant of one degree
  verify    self-checks against published values and internal identities
  star      the diagram product expansion of two branching diagrams
  matrix    the box-moving matrix of one weight, optionally its determinant

Degrees are plain integers for the plane (``--space cp2 -d 3``) and pairs
for the quadric (``--space p1xp1 -d 2,1``).  Constraints are semicolon-
separated diagrams: ``-c "(1);(1);(3)"``; row order inside a diagram does
not matter.  Exit codes: 0 success, 1 a verification check failed,
2 bad usage, 3 internal inconsistency detected.

A cache file (``--cache-file`` or the TANGENTCOUNT_CACHE environment
variable) persists every computed invariant between runs; ``--no-cache``
disables it, ``--stats`` reports work counters on stderr.
"""

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from . import gw
from .cache import CountCache
from .engine import Engine, canonical_constraints, encode_key
from .errors import InconsistencyError
from .matrices import determinant, move_matrix
from .partitions import as_diagram, partitions_of, weight
from .star import star, star_oracle

# Published values used by `verify` as regression targets.  T_d is the
# degree-d count with one full-tangency point; the per-degree dicts list
# every nonzero single-point invariant of that degree.
TANGENCY_MAX = {1: 1, 2: 1, 3: 4, 4: 26, 5: 217, 6: 2110, 7: 22744,
                8: 264057, 9: 3242395}

SINGLE_POINT = {
    1: {(2,): 1},
    2: {(5,): 1},
    3: {(8,): 4, (7, 1): 1},
    4: {(11,): 26, (10, 1): 14, (9, 2): 3, (9, 1, 1): 1, (8, 3): 1},
    5: {(14,): 217, (13, 1): 182, (12, 2): 57, (12, 1, 1): 34, (11, 3): 27,
        (11, 2, 1): 12, (11, 1, 1, 1): 1, (10, 4): 9, (10, 3, 1): 5,
        (9, 5): 3, (9, 4, 1): 1, (8, 6): 1},
    6: {(17,): 2110, (16, 1): 2414, (15, 2): 892, (15, 1, 1): 771,
        (14, 3): 487, (14, 2, 1): 418, (14, 1, 1, 1): 69, (13, 4): 230,
        (13, 3, 1): 210, (13, 2, 2): 32, (13, 2, 1, 1): 31,
        (13, 1, 1, 1, 1): 1, (12, 5): 114, (12, 4, 1): 84, (12, 3, 2): 25,
        (12, 3, 1, 1): 15, (11, 6): 56, (11, 5, 1): 34, (11, 4, 2): 6,
        (11, 4, 1, 1): 5, (11, 3, 3): 4, (10, 7): 22, (10, 6, 1): 14,
        (10, 5, 2): 2, (10, 5, 1, 1): 1, (10, 4, 3): 1, (9, 8): 13,
        (9, 7, 1): 4, (9, 6, 2): 1, (8, 8, 1): 1},
}


# ------------------------------------------------------------------ parsing

def parse_degree(text, space):
    """Degree syntax: "3" for the plane, "2,1" for the quadric."""
    try:
        if space == "p1xp1":
            a, b = (int(x) for x in text.split(","))
            if a < 0 or b < 0:
                raise ValueError
            return (a, b)
        if "," in text:
            raise ValueError
        d = int(text)
        if d < 0:
            raise ValueError
        return d
    except ValueError:
        raise ValueError(
            "bad degree %r for space %s (expected %s)"
            % (text, space, "a,b" if space == "p1xp1" else "an integer"))


def parse_constraints(text):
    """Constraint syntax: semicolon-separated diagrams like "(1);(3,1)".

    Rows may come in any order; each diagram is canonicalized to weakly
    decreasing.
    """
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise ValueError("constraint %r is not parenthesized" % (chunk,))
        body = chunk[1:-1].strip()
        if not body:
            raise ValueError("empty constraint diagram in %r" % (text,))
        try:
            rows = tuple(int(x) for x in body.split(","))
            out.append(as_diagram(rows))
        except (ValueError, TypeError):
            raise ValueError("constraint %r is not a diagram of positive "
                             "integers" % (chunk,))
    if not out:
        raise ValueError("no constraints in %r" % (text,))
    return tuple(out)


def diagram_text(p):
    return "(%s)" % ",".join(map(str, p))


def rational_text(x):
    """Reduced p/q, plain p when the denominator is 1."""
    x = Fraction(x)
    return str(x)


# ----------------------------------------------------------------- emitting

def emit_records(records, fields, fmt, out):
    """Uniform table output: records are dicts sharing the given fields."""
    if fmt == "json":
        json.dump(records, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(records)
    elif fmt == "markdown":
        out.write("| " + " | ".join(fields) + " |\n")
        out.write("|" + "|".join(" --- " for _ in fields) + "|\n")
        for rec in records:
            out.write("| " + " | ".join(str(rec[f]) for f in fields) + " |\n")
    else:
        widths = [max([len(f)] + [len(str(r[f])) for r in records])
                  for f in fields]
        out.write("  ".join(f.ljust(w) for f, w in zip(fields, widths)).rstrip()
                  + "\n")
        for rec in records:
            out.write("  ".join(str(rec[f]).ljust(w)
                                for f, w in zip(fields, widths)).rstrip()
                      + "\n")


# ------------------------------------------------------------------ commands

def cmd_compute(args, parser):
    try:
        degree = parse_degree(args.degree, args.space)
        constraints = parse_constraints(args.constraints)
    except ValueError as exc:
        parser.error(str(exc))
    engine = Engine()
    with _open_cache(args) as cache:
        if cache:
            cache.preload(engine)
        total = sum(weight(c) for c in constraints)
        needed = gw.chern_number(args.space, degree) - 1
        if total != needed:
            print("constraint weights sum to %d but the class needs %d; "
                  "the invariant vanishes" % (total, needed), file=sys.stderr)
        preloaded = engine.was_preloaded(args.space, degree, constraints)
        if args.hat:
            value = engine.hat_invariant(args.space, degree, constraints)
        else:
            value = engine.invariant(args.space, degree, constraints)
        if cache:
            cache.harvest(engine)
        record = {
            "key": encode_key(args.space, degree,
                              canonical_constraints(constraints)),
            "value": value,
            "provenance": "cached" if preloaded else "computed",
        }
        if args.format == "plain":
            print(value)
        else:
            emit_records([record], ["key", "value", "provenance"],
                         args.format, sys.stdout)
        _print_stats(args, engine, cache)
    return 0


def cmd_table(args, parser):
    if args.space != "cp2":
        parser.error("table mode is defined for --space cp2 only")
    if args.degree is not None:
        try:
            low = high = int(args.degree)
        except ValueError:
            parser.error("bad degree %r" % (args.degree,))
    elif args.max_d is not None:
        low, high = 1, args.max_d
    else:
        parser.error("table needs -d or --max-d")
    if low < 1:
        parser.error("degrees start at 1")
    engine = Engine()
    with _open_cache(args) as cache:
        if cache:
            cache.preload(engine)
        records = []
        if args.mode == "tangency-max":
            fields = ["d", "tangency_max", "point_count", "descendant"]
            for d in range(low, high + 1):
                records.append({
                    "d": d,
                    "tangency_max": engine.invariant(
                        "cp2", d, ((3 * d - 1,),)),
                    "point_count": gw.kontsevich_count(d),
                    "descendant": rational_text(gw.descendant_average(d)),
                })
        else:
            fields = ["key", "value", "provenance"]
            for d in range(low, high + 1):
                for p in partitions_of(3 * d - 1):
                    preloaded = engine.was_preloaded("cp2", d, (p,))
                    n = engine.invariant("cp2", d, (p,))
                    if n:
                        records.append({
                            "key": encode_key("cp2", d, (p,)),
                            "value": n,
                            "provenance":
                                "cached" if preloaded else "computed",
                        })
        if cache:
            cache.harvest(engine)
        emit_records(records, fields, args.format, sys.stdout)
        _print_stats(args, engine, cache)
    return 0


def cmd_star(args, parser):
    try:
        p1 = parse_constraints(args.first)
        p2 = parse_constraints(args.second)
        if len(p1) != 1 or len(p2) != 1:
            raise ValueError("star takes one diagram per argument")
    except ValueError as exc:
        parser.error(str(exc))
    expansion = sorted(star(p1[0], p2[0]).items())
    records = [{"key": diagram_text(q), "value": c, "provenance": "computed"}
               for q, c in expansion]
    if args.format == "plain":
        terms = " + ".join(
            ("%d %s" % (c, diagram_text(q))) if c != 1 else diagram_text(q)
            for q, c in expansion)
        print("%s * %s = %s"
              % (diagram_text(p1[0]), diagram_text(p2[0]), terms))
    else:
        emit_records(records, ["key", "value", "provenance"],
                     args.format, sys.stdout)
    return 0


def cmd_matrix(args, parser):
    if args.k < 2:
        parser.error("the move matrix needs weight k >= 2")
    mat = move_matrix(args.k)
    parts = partitions_of(args.k)
    rows, cols = parts[:-1], parts[1:]
    det = determinant(mat) if args.det else None
    if args.format == "json":
        payload = {"k": args.k,
                   "rows": [diagram_text(p) for p in rows],
                   "cols": [diagram_text(p) for p in cols],
                   "entries": mat}
        if args.det:
            payload["det"] = str(det)
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        records = []
        for label, entries in zip(rows, mat):
            rec = {"row": diagram_text(label)}
            for col, e in zip(cols, entries):
                rec[diagram_text(col)] = e
            records.append(rec)
        fields = ["row"] + [diagram_text(c) for c in cols]
        if args.format != "csv":
            print("A_%d: rows = diagrams of %d except (%d), columns = "
                  "except %s"
                  % (args.k, args.k, args.k, diagram_text((1,) * args.k)))
        emit_records(records, fields, args.format, sys.stdout)
        if args.det:
            print("det = %s" % det)
    return 0


def cmd_verify(args, parser):
    max_d = args.max_d if args.max_d is not None else 5
    if max_d < 1:
        parser.error("--max-d must be at least 1")
    engine = Engine()
    failures = []

    def report(name, ok, detail=""):
        line = "%s %s" % ("PASS" if ok else "FAIL", name)
        if detail and not ok:
            line += ": " + detail
        print(line)
        if not ok:
            failures.append(name)

    with _open_cache(args) as cache:
        if cache:
            cache.preload(engine)

        hi = min(max_d, max(TANGENCY_MAX))
        bad = [(d, engine.invariant("cp2", d, ((3 * d - 1,),)))
               for d in range(1, hi + 1)]
        bad = [(d, v) for d, v in bad if v != TANGENCY_MAX[d]]
        report("full-tangency counts, degrees 1..%d" % hi, not bad,
               "mismatches %r" % bad)

        hi = min(max_d, max(SINGLE_POINT))
        bad = [d for d in range(1, hi + 1)
               if engine.full_table("cp2", d) != SINGLE_POINT[d]]
        report("single-point tables, degrees 1..%d" % hi, not bad,
               "wrong table at degrees %r" % bad)

        hi = min(max_d, 6)
        bad = []
        for d in range(1, hi + 1):
            lhs, rhs = engine.sum_identity("cp2", d)
            if lhs != rhs or lhs != gw.kontsevich_count(d):
                bad.append((d, lhs, rhs))
        report("point-count identity, degrees 1..%d" % hi, not bad,
               "mismatches %r" % bad)

        bad = [k for k in range(2, 15)
               if abs(determinant(move_matrix(k)))
               != _factorial(k - 1)]
        report("move-matrix determinant law, weights 2..14", not bad,
               "wrong at weights %r" % bad)

        hi = min(max_d, 6)
        bad = [d for d in range(1, hi + 1)
               if gw.gw_blowup(d, (1,) * (3 * d - 1))
               != gw.kontsevich_count(d)]
        report("all-ones blowup fold to plane counts, degrees 1..%d" % hi,
               not bad, "wrong at degrees %r" % bad)

        bad = 0
        for w1 in range(1, 5):
            for w2 in range(w1, 9 - w1):
                for p1 in partitions_of(w1):
                    for p2 in partitions_of(w2):
                        if star(p1, p2) != star_oracle(p1, p2):
                            bad += 1
        report("diagram product against independent enumeration", bad == 0,
               "%d mismatching pairs" % bad)

        if cache:
            cache.harvest(engine)
        _print_stats(args, engine, cache)
    return 1 if failures else 0


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


# ------------------------------------------------------------------ plumbing

class _NoCache:
    def __enter__(self):
        return None

    def __exit__(self, *exc):
        return False


def _open_cache(args):
    if getattr(args, "no_cache", False):
        return _NoCache()
    path = getattr(args, "cache_file", None) or os.environ.get(
        "TANGENTCOUNT_CACHE")
    if not path:
        return _NoCache()
    return CountCache(path)


def _print_stats(args, engine, cache):
    if not getattr(args, "stats", False):
        return
    pairs = ["%s=%d" % (k, v) for k, v in sorted(engine.counters.items())]
    pairs += ["%s=%d" % (k, v) for k, v in sorted(gw.counters.items())]
    if cache:
        pairs.append("cache_entries=%d" % len(cache.entries))
    print("stats: " + " ".join(pairs), file=sys.stderr)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tangentcount",
        description="Counts of rational plane and quadric curves with "
                    "multibranched local tangency constraints.")
    sub = parser.add_subparsers(dest="command", required=True)

    cache_flags = argparse.ArgumentParser(add_help=False)
    cache_flags.add_argument("--cache-file", metavar="PATH",
                             help="persistent cache file (default: "
                                  "$TANGENTCOUNT_CACHE)")
    cache_flags.add_argument("--no-cache", action="store_true",
                             help="run without any persistent cache")
    cache_flags.add_argument("--stats", action="store_true",
                             help="print work counters to stderr")

    fmt = dict(choices=("plain", "csv", "json", "markdown"), default="plain")

    p = sub.add_parser("compute", parents=[cache_flags],
                       help="one invariant for a class and constraints")
    p.add_argument("--space", choices=("cp2", "p1xp1"), default="cp2")
    p.add_argument("-d", "--degree", required=True,
                   help="degree, or bidegree a,b for p1xp1")
    p.add_argument("-c", "--constraints", required=True,
                   help='semicolon-separated diagrams, e.g. "(1);(3,1)"')
    p.add_argument("--hat", action="store_true",
                   help="print the ordered-branch normalization hat-H")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("table", parents=[cache_flags],
                       help="tangency-max column or full nonzero table")
    p.add_argument("--space", choices=("cp2", "p1xp1"), default="cp2")
    p.add_argument("--mode", choices=("tangency-max", "full"),
                   default="tangency-max")
    p.add_argument("-d", "--degree", help="single degree")
    p.add_argument("--max-d", type=int, help="degrees 1..N")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[cache_flags],
                       help="self-checks against published values")
    p.add_argument("--max-d", type=int,
                   help="largest degree checked (default 5)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("star", help="product expansion of two diagrams")
    p.add_argument("first", help='first diagram, e.g. "(3,1,1)"')
    p.add_argument("second", help='second diagram, e.g. "(2,2)"')
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("matrix", help="the box-moving matrix of one weight")
    p.add_argument("-k", type=int, required=True, help="diagram weight")
    p.add_argument("--det", action="store_true",
                   help="also print the (signed) determinant")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_matrix)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except InconsistencyError as exc:
        print("internal inconsistency: %s" % (exc,), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
