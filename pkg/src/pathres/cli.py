"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 guard exceeded.
"""

from __future__ import annotations

import argparse
import io
import json
import sys

from .betti import METHODS, BettiTable, betti_table
from .errors import GuardError, MatchingError
from .homology import DEFAULT_PRIME, check_prime, verify_supports_resolution
from .ideals import Graph, path_power_gens
from .morse import assemble_matching, cov_path_matching, morse_boundary
from .polytope import verify_lattice_generators
from .staircase import StaircaseComplex

CHECKS = ("lattice", "supports", "acyclic", "minimal", "agree")
FORMATS = ("text", "json", "csv")


class UsageError(Exception):
    pass


def format_table(t: BettiTable, fmt: str) -> str:
    if fmt == "text":
        return "".join(f"beta({i},{j}) = {v}\n" for (i, j), v in t.entries.items())
    if fmt == "json":
        return json.dumps(t.to_json()) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        buf.write("i,j,beta\n")
        for (i, j), v in t.entries.items():
            buf.write(f"{i},{j},{v}\n")
        return buf.getvalue()
    raise UsageError(f"unknown format {fmt!r}")


def _fmt_set(s) -> str:
    return "{" + ", ".join(f"{a}{b}" for a, b in sorted(s)) + "}"


def cmd_gens(args) -> str:
    gens = path_power_gens(args.n, args.d)
    if args.format == "json":
        return json.dumps({"n": args.n, "d": args.d, "gens": [list(g) for g in gens]}) + "\n"
    if args.format == "csv":
        head = ",".join(f"x{k}" for k in range(1, args.n + 1))
        return head + "\n" + "".join(",".join(map(str, g)) + "\n" for g in gens)
    return "".join(f"{g}\n" for g in gens)


def cmd_complex(args) -> str:
    X = StaircaseComplex(args.n, args.d)
    if args.matching:
        M = assemble_matching(X)
        if args.format != "json":
            raise UsageError("--matching requires --format json")
        return json.dumps(M.to_json()) + "\n"
    if args.format == "json":
        return json.dumps(X.to_json()) + "\n"
    if args.format == "csv":
        raise UsageError("complex does not support csv")
    lines = [
        f"n = {X.n}",
        f"d = {X.d}",
        f"cells = {len(X)}",
        "f_vector = " + " ".join(map(str, X.f_vector)),
        f"euler_characteristic = {X.euler_characteristic}",
    ]
    return "\n".join(lines) + "\n"


def cmd_cov(args) -> str:
    if args.n < 2:
        raise UsageError("n must be at least 2")
    mt = cov_path_matching(args.n)
    faces = sorted(mt.faces, key=lambda f: (len(f), sorted(f)))
    if args.format == "json":
        return json.dumps({
            "n": args.n,
            "faces": [sorted(list(e) for e in f) for f in faces],
            "pairs": [[sorted(list(e) for e in a), sorted(list(e) for e in b)] for a, b in mt.pairs],
            "critical": [sorted(list(e) for e in f) for f in mt.critical],
        }) + "\n"
    out = [f"Cov(P_{args.n}): {len(faces)} faces"]
    out += [_fmt_set(f) for f in faces]
    if mt.critical:
        out += [f"critical: {_fmt_set(f)}" for f in mt.critical]
    else:
        out.append("critical: none")
    return "\n".join(out) + "\n"


def cmd_betti(args) -> str:
    t = betti_table(args.n, args.d, args.method, args.prime)
    return format_table(t, args.format)


def run_checks(n: int, d: int, checks, p: int = DEFAULT_PRIME) -> list:
    """Run verification checks; returns ``[(name, passed, detail)]``."""
    results = []
    X = None
    M = None
    for name in checks:
        if name == "lattice":
            ok, rep = verify_lattice_generators(Graph.path(n), d)
            results.append((name, ok, f"{rep.lattice_points} lattice points, {rep.generators} generators"))
        elif name == "supports":
            if X is None:
                X = StaircaseComplex(n, d)
            ok, failures = verify_supports_resolution(X, p)
            results.append((name, ok, f"{len(failures)} non-acyclic subcomplexes"))
        elif name == "acyclic":
            if X is None:
                X = StaircaseComplex(n, d)
            try:
                M = assemble_matching(X)
                results.append((name, True, f"{len(M.pairs)} pairs, {len(M.critical)} critical cells"))
            except MatchingError as exc:
                results.append((name, False, str(exc)))
        elif name == "minimal":
            if X is None:
                X = StaircaseComplex(n, d)
            if M is None:
                M = assemble_matching(X)
            bad = 0
            for tau, terms in morse_boundary(X, M).items():
                for sigma, _ in terms:
                    lt, ls = X.labels[tau], X.labels[sigma]
                    if lt == ls or not ls.divides(lt):
                        bad += 1
            results.append((name, bad == 0, f"{bad} coefficients between non-dividing or equal labels"))
        elif name == "agree":
            tables = [betti_table(n, d, m, p) for m in METHODS]
            ok = all(t == tables[0] for t in tables)
            detail = " = ".join(METHODS) if ok else "methods disagree"
            results.append((name, ok, detail))
    return results


def cmd_verify(args):
    checks = []
    for item in args.checks.split(","):
        item = item.strip()
        if item == "all":
            checks += [c for c in CHECKS if c not in checks]
        elif item in CHECKS:
            if item not in checks:
                checks.append(item)
        else:
            raise UsageError(f"unknown check {item!r}")
    results = run_checks(args.n, args.d, checks, args.prime)
    lines = [f"{name}: {'PASS' if ok else 'FAIL'} ({detail})" for name, ok, detail in results]
    code = 0 if all(ok for _, ok, _ in results) else 1
    return "\n".join(lines) + "\n", code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathres",
        description="Minimal cellular resolutions of powers of path edge ideals.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, need_d=True):
        p.add_argument("--n", type=int, required=True)
        if need_d:
            p.add_argument("--d", type=int, required=True)
        p.add_argument("--format", choices=FORMATS, default="text")
        p.add_argument("--out", default=None)

    p = sub.add_parser("gens", allow_abbrev=False)
    common(p)
    p = sub.add_parser("complex", allow_abbrev=False)
    common(p)
    p.add_argument("--matching", action="store_true")
    p = sub.add_parser("cov", allow_abbrev=False)
    common(p, need_d=False)
    p = sub.add_parser("betti", allow_abbrev=False)
    common(p)
    p.add_argument("--method", default="closed-form",
                   choices=[m.replace("_", "-") for m in METHODS] + ["closed_form"])
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p = sub.add_parser("verify", allow_abbrev=False)
    common(p)
    p.add_argument("--checks", default="all")
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.n < 2:
            raise UsageError(f"--n must be at least 2, got {args.n}")
        if getattr(args, "d", 1) < 1:
            raise UsageError(f"--d must be at least 1, got {args.d}")
        if hasattr(args, "prime"):
            check_prime(args.prime)
        code = 0
        if args.verb == "verify":
            text, code = cmd_verify(args)
        else:
            text = {"gens": cmd_gens, "complex": cmd_complex, "cov": cmd_cov, "betti": cmd_betti}[args.verb](args)
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
