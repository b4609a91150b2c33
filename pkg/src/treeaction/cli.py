"""Command-line driver.

Subcommands:

    normalize SPEC WORD         canonical form and syllable count
    tree SPEC [--radius R] [--bound B] [--dot FILE]
    displace SPEC [--max-syllables L] [--bound B] [--csv FILE] [--window K]
    check SPEC [--suite NAME]

Exit codes: 0 success, 2 parse error, 3 construction error, 4 invariant
failure.  All numeric output is exact (numerator/denominator).
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import bswindow, checks
from .errors import ConstructionError, InvariantFailure, SpecParseError
from .reps import displacement_sq, weighted_sum
from .specfile import ParsedSpec, parse_spec_file
from .tree import TreeBall, to_dot
from .wgamma import displacement_components, assembled_rep

CSV_HEADER = "gamma,syllables,exponent_bound,component,displacement_sq_num,displacement_sq_den"


def entry(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        parsed = parse_spec_file(args.spec)
        return args.func(parsed, args)
    except SpecParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ConstructionError as exc:
        print(f"construction error: {exc}", file=sys.stderr)
        return 3
    except InvariantFailure as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return 4


def main():
    sys.exit(entry())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treeaction",
        description="Exact affine isometric actions for groups acting on trees",
    )
    sub = parser.add_subparsers(required=True)

    p = sub.add_parser("normalize", help="canonical form of a word")
    p.add_argument("spec")
    p.add_argument("word")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("tree", help="build a tree ball, print stats, export DOT")
    p.add_argument("spec")
    p.add_argument("--radius", type=int, default=None)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--dot", default=None)
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("displace", help="displacement table over shells")
    p.add_argument("spec")
    p.add_argument("--max-syllables", type=int, default=None)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--window", type=int, default=None)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_displace)

    p = sub.add_parser("check", help="run an invariant suite")
    p.add_argument("spec")
    p.add_argument("--suite", default="all")
    p.set_defaults(func=cmd_check)
    return parser


def cmd_normalize(parsed: ParsedSpec, args) -> int:
    if parsed.kind == "amalgam":
        form = parsed.amalgam.parse(args.word)
        tag = "  [H-element]" if form.length == 0 and not form.is_identity else ""
        print(f"{parsed.amalgam.render(form)}{tag}  syllables={form.length}")
    else:
        form = bswindow.britton_normalize(parsed.bs, args.word)
        print(f"{parsed.bs.hnn().render(form)}  t-letters={form.length}")
    return 0


def cmd_tree(parsed: ParsedSpec, args) -> int:
    if parsed.kind != "amalgam":
        raise ConstructionError("tree export is defined for amalgam specs")
    radius = args.radius if args.radius is not None else parsed.bounds["radius"]
    bound = args.bound if args.bound is not None else parsed.bounds["exponent_bound"]
    ball = TreeBall(parsed.amalgam, radius, bound)
    print(f"vertices={ball.vertex_count()} edges={ball.edge_count()}")
    idx1 = parsed.amalgam.embed1.index()
    idx2 = parsed.amalgam.embed2.index()
    show = lambda i: "infinite" if i is None else str(i)
    print(f"degrees: factor1={show(idx1)} factor2={show(idx2)}")
    if ball.truncated:
        print(f"truncated: exponent_bound={bound}")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(parsed.amalgam, ball))
        print(f"dot written to {args.dot}")
    return 0


def _csv_out(path, lines):
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_displace(parsed: ParsedSpec, args) -> int:
    if parsed.kind == "amalgam":
        return _displace_amalgam(parsed, args)
    return _displace_window(parsed, args)


def _displace_amalgam(parsed: ParsedSpec, args) -> int:
    spec = parsed.amalgam
    max_syll = (
        args.max_syllables
        if args.max_syllables is not None
        else parsed.bounds["max_syllables"]
    )
    bound = args.bound if args.bound is not None else parsed.bounds["exponent_bound"]
    rep = assembled_rep(parsed.rep_input)
    lines = [CSV_HEADER]
    minima, maxima = {}, {}
    for k in range(max_syll + 1):
        for gamma in spec.shell(k, bound):
            comps = displacement_components(rep, gamma)
            total = sum(comps.values(), Fraction(0))
            word = spec.render(gamma)
            for name in ("W", "tower", "tree"):
                v = comps[name]
                lines.append(
                    f"{word},{k},{bound},{name},{v.numerator},{v.denominator}"
                )
            if not gamma.is_identity:
                if k not in minima or total < minima[k]:
                    minima[k] = total
                if k not in maxima or total > maxima[k]:
                    maxima[k] = total
    _csv_out(args.csv, lines)
    for k in sorted(minima):
        print(
            f"shell {k}: min={_frac(minima[k])} max={_frac(maxima[k])}",
            file=sys.stderr,
        )
    return 0


def _displace_window(parsed: ParsedSpec, args) -> int:
    bs = parsed.bs
    half = args.window if args.window is not None else parsed.bounds["window"]
    max_syll = (
        args.max_syllables
        if args.max_syllables is not None
        else parsed.bounds["max_syllables"]
    )
    bound = args.bound if args.bound is not None else parsed.bounds["exponent_bound"]
    window, _inputs = bswindow.build_window(bs, half)
    shells = bswindow.window_shells(window, max_syll)
    rep = bswindow.window_rep(bs)
    hnn = bs.hnn()
    lines = [CSV_HEADER + ",k_range"]
    minima, maxima = {}, {}
    for k, shell in enumerate(shells):
        for gamma in shell:
            mu = bswindow.line_translation(bs, gamma)
            wv = mu * mu
            tree = Fraction(gamma.length)
            word = hnn.render(gamma)
            for name, v in (("W", wv), ("tower", Fraction(0)), ("tree", tree)):
                lines.append(
                    f"{word},{k},{bound},{name},{v.numerator},{v.denominator}"
                    f",{window.k_range}"
                )
            total = wv + tree
            if not gamma.is_identity:
                if k not in minima or total < minima[k]:
                    minima[k] = total
                if k not in maxima or total > maxima[k]:
                    maxima[k] = total
    _csv_out(args.csv, lines)
    assembly = bswindow.window_assembly(bs, window, shells, bound)
    a_str = " ".join(_frac(a) for a in assembly.a)
    print(f"weighted-sum a_k: {a_str}", file=sys.stderr)
    for k in sorted(minima):
        print(
            f"shell {k}: min={_frac(minima[k])} max={_frac(maxima[k])}",
            file=sys.stderr,
        )
    return 0


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def cmd_check(parsed: ParsedSpec, args) -> int:
    results = checks.run_suite(parsed, args.suite)
    bad = False
    for r in results:
        if r.ok:
            print(f"PASS {r.name}")
        else:
            bad = True
            print(f"FAIL {r.name}: {r.witness}")
    return 4 if bad else 0


if __name__ == "__main__":
    main()
