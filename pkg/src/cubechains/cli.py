"""Command line interface.

    cubechains family list|show|gen|certify
    cubechains method1 derive-simple|derive-general
    cubechains method2 search|derive
    cubechains scan --range lo:hi --height H --min-len K
    cubechains classify --chain JSON
    cubechains verify --chain JSON
    cubechains paper-check

Exit status: 0 success, 1 usage error, 2 domain error, 3 failed check.
Big integers are written as decimal strings in JSON output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import method1, method2
from .cubes import TripleChain, classify_chain, verify_chain
from .errors import CubeChainError
from .families import (
    certify_family,
    get_family,
    instantiate,
    registry,
)
from .paper_check import cmd_paper_check
from .polyring import Polynomial
from .scanner import scan_runs

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_CHECK = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")


def _params(items: list[str]) -> dict[str, int]:
    out = {}
    for item in items:
        for part in item.split(","):
            name, sep, value = part.partition("=")
            if not sep:
                raise UsageError(f"parameter {part!r} is not of the form name=value")
            try:
                out[name.strip()] = int(value)
            except ValueError:
                raise UsageError(f"parameter {name} needs an integer value, got {value!r}")
    return out


def _read_chain(arg: str) -> TripleChain:
    if arg == "-":
        arg = sys.stdin.read()
    elif arg.startswith("@"):
        with open(arg[1:]) as fh:
            arg = fh.read()
    return TripleChain.from_json(arg)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")

    parser = _Parser(prog="cubechains", description="Consecutive integers as sums of three cubes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    fam = sub.add_parser("family", help="catalog of parametric families")
    fsub = fam.add_subparsers(dest="action", required=True, parser_class=_Parser)
    fsub.add_parser("list", parents=[common])
    p = fsub.add_parser("show", parents=[common])
    p.add_argument("id")
    p = fsub.add_parser("gen", parents=[common], help="instantiate a family")
    p.add_argument("id")
    p.add_argument("--params", nargs="+", default=[], metavar="NAME=VALUE")
    p = fsub.add_parser("certify", parents=[common])
    p.add_argument("ids", nargs="*")

    m1 = sub.add_parser("method1", help="families with z3 = x3")
    m1sub = m1.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = m1sub.add_parser("derive-simple", parents=[common])
    for name in ("p", "q", "r"):
        p.add_argument(f"--{name}", type=int, help="instantiate at this value")
    p = m1sub.add_parser("derive-general", parents=[common])
    p.add_argument("--uvquad", type=_ints, default=[9, 6, 1, 8], help="u,v1,v2,v3")
    p.add_argument("--gh", type=_ints, help="fix g,h (default: keep symbolic)")
    p.add_argument("--t-scale", type=int, default=13, help="bind t = SCALE*r")
    p.add_argument("--r", type=int, help="instantiate at this value (requires --gh)")

    m2 = sub.add_parser("method2", help="bilinear ansatz seeds and families")
    m2sub = m2.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = m2sub.add_parser("search", parents=[common])
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p = m2sub.add_parser("derive", parents=[common])
    p.add_argument("--a", type=_ints, required=True, help="a1,a2,a3,a4")

    p = sub.add_parser("scan", parents=[common], help="runs of consecutive representable integers")
    p.add_argument("--range", type=_range, required=True, dest="span", metavar="LO:HI")
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--min-len", type=int, default=1)
    p.add_argument("--exclude-units", action="store_true")
    p.add_argument("--jobs", type=int, default=1)

    for name in ("classify", "verify"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--chain", required=True, help="chain JSON, @file or - for stdin")

    sub.add_parser("paper-check", parents=[common], help="reproduce every published value")
    return parser


def _emit(args, payload, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _family_text(f) -> str:
    lines = [f"{f.id}  params: {', '.join(f.param_names)}"]
    if f.provenance:
        lines.append(f"  {f.provenance}")
    for name, poly in zip(("x1", "x2", "x3", "y1", "y2", "y3", "z1", "z2", "z3"), f.coords):
        lines.append(f"  {name} = {poly}")
    lines.append(f"  n  = {f.n_poly}")
    return "\n".join(lines)


def _chain_payload(chain: TripleChain) -> dict:
    return {**chain.to_record(), "verified": verify_chain(chain)}


def _run_family(args) -> int:
    if args.action == "list":
        fams = registry()
        _emit(args, [f.to_dict() for f in fams], "\n".join(f"{f.id:10s} {', '.join(f.param_names)}" for f in fams))
    elif args.action == "show":
        f = get_family(args.id)
        _emit(args, f.to_dict(), _family_text(f))
    elif args.action == "gen":
        chain = instantiate(get_family(args.id), _params(args.params))
        _emit(args, _chain_payload(chain), chain.text())
        if not verify_chain(chain):
            return EXIT_CHECK
    elif args.action == "certify":
        fams = [get_family(i) for i in args.ids] if args.ids else registry()
        results = {f.id: certify_family(f) for f in fams}
        _emit(
            args, results,
            "\n".join(f"{fid}: {'certified' if ok else 'FAILED'}" for fid, ok in results.items()),
        )
        if not all(results.values()):
            return EXIT_CHECK
    return EXIT_OK


def _run_method1(args) -> int:
    if args.action == "derive-simple":
        f = method1.derive_family_simple()
        payload = {"family": f.to_dict()}
        text = _family_text(f)
        given = [v is not None for v in (args.p, args.q, args.r)]
        if any(given):
            if not all(given):
                raise UsageError("--p, --q and --r must be given together")
            chain = instantiate(f, {"p": args.p, "q": args.q, "r": args.r})
            payload["chain"] = _chain_payload(chain)
            text += "\n" + chain.text()
        _emit(args, payload, text)
        return EXIT_OK

    if len(args.uvquad) != 4:
        raise UsageError("--uvquad needs four integers")
    quad = method1.UVQuad(*args.uvquad)
    pair = method1.eqzxred_sol2()
    if args.gh is not None:
        if len(args.gh) != 2:
            raise UsageError("--gh needs two integers")
        pair = pair.subs({"g": args.gh[0], "h": args.gh[1]})
    f = method1.derive_family_general(quad, pair, args.t_scale * Polynomial.var("r"))
    payload = {"family": f.to_dict()}
    text = _family_text(f)
    if args.r is not None:
        if args.gh is None:
            raise UsageError("--r requires --gh")
        chain = instantiate(f, {"r": args.r})
        payload["chain"] = _chain_payload(chain)
        text += "\n" + chain.text()
    _emit(args, payload, text)
    return EXIT_OK


def _run_method2(args) -> int:
    if args.action == "search":
        result = method2.search_seeds(args.bound, jobs=args.jobs)
        payload = result.to_dict()
        lines = [f"{len(result.seeds)} seeds with |a1|+|a2|+|a3|+|a4| <= {args.bound}"]
        lines.append(f"{result.independent_count} classes up to s -> +-s + c and reordering:")
        lines += ["  " + " ".join(str(tuple(s)) for s in g) for g in result.classes]
        lines.append(
            f"{len(result.coarse_classes)} classes of primitive seeds, also identifying reflected families"
        )
        _emit(args, payload, "\n".join(lines))
        return EXIT_OK

    if len(args.a) != 4:
        raise UsageError("--a needs four integers")
    seed = method2.ASeed(*args.a)
    b = method2.derive_b(seed)
    hom = method2.build_hom(seed, b)
    f = method2.dehomogenize(hom, param="v")
    matches = [g.id for g in registry() if g.coords == f.coords]
    payload = {
        "seed": [str(c) for c in seed],
        "b": [str(c) for c in b.as_tuple()],
        "k": str(b.k),
        "t": str(hom.t_form),
        "family": f.to_dict(),
        "catalog_match": matches[0] if matches else None,
    }
    text = (
        f"seed {tuple(seed)}  b = {b.as_tuple()}  k = {b.k}  t = {hom.t_form}\n"
        + _family_text(f)
        + (f"\nmatches catalog family {matches[0]}" if matches else "")
    )
    _emit(args, payload, text)
    return EXIT_OK


def _run_scan(args) -> int:
    lo, hi = args.span
    runs = scan_runs(lo, hi, args.height, args.min_len, args.exclude_units, jobs=args.jobs)
    if args.format == "json":
        for r in runs:
            print(r.to_json())  # JSON lines, one run per line
    else:
        print("\n".join(r.text() for r in runs) if runs else "no runs")
    return EXIT_OK


def _run_classify(args) -> int:
    chain = _read_chain(args.chain)
    if args.command == "verify":
        ok = verify_chain(chain)
        _emit(args, {"verified": ok}, "verified" if ok else "NOT verified")
        return EXIT_OK if ok else EXIT_CHECK
    cls = classify_chain(chain)
    _emit(
        args,
        {
            "tag": cls.tag.value,
            "first_diff_trivial": cls.first_diff_trivial,
            "second_diff_trivial": cls.second_diff_trivial,
        },
        cls.tag.value,
    )
    return EXIT_OK


def _run_paper_check(args) -> int:
    report = cmd_paper_check()
    if args.format == "json":
        print(report.to_json())
    else:
        print(report.text())
    return EXIT_OK if report.all_pass else EXIT_CHECK


_COMMANDS = {
    "family": _run_family,
    "method1": _run_method1,
    "method2": _run_method2,
    "scan": _run_scan,
    "classify": _run_classify,
    "verify": _run_classify,
    "paper-check": _run_paper_check,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"cubechains: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CubeChainError as exc:
        print(f"cubechains: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
