"""Command-line entry point: ``k3tk <subcommand>``.

Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.
Set ``K3TK_DATA_DIR`` to read data files from another directory.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from itertools import groupby
from pathlib import Path

from . import _data
from .ade_lattice import (
    ALPHABET,
    STABILIZERS,
    disc_order,
    discriminant_group,
    format_factorization,
    is_square,
    parse_ade_list,
)
from .config_enumerator import (
    SingConfig,
    ListFormatError,
    candidate_order,
    check_constraints,
    enumerate_list,
    verify_table2,
)
from .f2affine import (
    AffineMap4,
    ConstructionError,
    F2Mat4,
    build_O48,
    build_O48_2,
    linear_orbit_shape,
    load_constants,
    parse_vec,
    s4_shape_census,
    to_permutation,
)
from .permgroup import DEFAULT_CAP, GroupFileError, GroupTooLargeError, PermGroup, load_group

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

#: shapes printed for the four indecomposable S4 actions, plus the 1+3+3+4+4 case
EXPECTED_S4_SHAPES = ((3, 12), (3, 4, 8), (1, 2, 12), (1, 6, 8), (1, 3, 3, 4, 4))


class UsageError(Exception):
    pass


def _k_range(text: str) -> tuple[int, int]:
    try:
        lo, sep, hi = text.partition(":")
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    if not 1 <= lo_i <= hi_i <= 20:
        raise argparse.ArgumentTypeError(f"k range must lie within 1:20, got {text!r}")
    return lo_i, hi_i


def _shape(shape) -> str:
    return "{" + ",".join(map(str, shape)) + "}"


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def cmd_enumerate(args, out) -> int:
    entries = enumerate_list(
        args.k,
        require_rank20=not args.no_rank_filter,
        require_nonsquare=not args.no_square_filter,
    )
    if args.format == "records":
        for e in entries:
            rec = {"N": e.N, "order": format_factorization(e.N), "lattice": str(e.config)}
            print(json.dumps(rec), file=out)
    else:
        print(f"{'Order':<16}{'N':>7}  Root lattices", file=out)
        for N, group in groupby(entries, key=lambda e: e.N):
            lattices = ", ".join(e.config.tex() for e in group)
            print(f"{format_factorization(N):<16}{N:>7}  {lattices}", file=out)
        print(f"# {len(entries)} pairs", file=out)
    if args.verify:
        diff = verify_table2(entries)
        for line in diff.lines():
            print(line, file=out)
        if not diff.empty:
            print(
                f"verify: MISMATCH ({len(diff.missing)} missing, {len(diff.extra)} extra)",
                file=out,
            )
            return EXIT_MISMATCH
        print("verify: OK (matches bundled reference list)", file=out)
    return EXIT_OK


def _alphabet_rejection(types) -> str:
    outside = sorted({t for t in types if t not in ALPHABET})
    lines = []
    for t in outside:
        lines.append(f"{t} is outside the 12-type stabilizer alphabet")
    if outside and all(t.family == "A" for t in outside):
        # cyclic stabilizer C_{n+1} of order above 8 cannot be tame
        lines.append(
            "an A_n point needs a cyclic stabilizer of order n+1 > 8; "
            "tame symplectic automorphisms have order at most 8"
        )
    d = disc_order(types)
    note = " (a square: the excluded case)" if is_square(d) else ""
    lines.append(f"discriminant product {d} = {format_factorization(d)}{note}")
    return "\n".join(lines)


def cmd_check_config(args, out) -> int:
    try:
        types = parse_ade_list(args.config)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not types:
        raise UsageError("empty configuration")
    if any(t not in ALPHABET for t in types):
        raise UsageError(_alphabet_rejection(types))
    config = SingConfig(types)
    N = candidate_order(config) if args.N is None else args.N
    d = config.disc_product
    print(f"config: {config.tex()}", file=out)
    print(f"k: {config.k}", file=out)
    print(f"rank: {config.rank}", file=out)
    print(f"orders: {','.join(map(str, config.orders))}", file=out)
    print(f"candidate N: {N if N is not None else 'none'}", file=out)
    if N is not None:
        print(f"N factored: {format_factorization(N)}", file=out)
    print(f"discriminant product: {d} = {format_factorization(d)}", file=out)
    report = check_constraints(config, N if N is not None else 0)
    for line in report.lines():
        print(line, file=out)
    print(f"verdict: {'all pass' if report.passed else 'FAIL'}", file=out)
    return EXIT_OK if report.passed else EXIT_MISMATCH


def _resolve_group_path(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    for candidate in (_data.data_path(path), _data.data_path(path + ".grp")):
        if candidate.exists():
            return candidate
    raise UsageError(f"group file not found: {path}")


def cmd_group(args, out) -> int:
    try:
        G = load_group(_resolve_group_path(args.path))
    except GroupFileError as exc:
        raise UsageError(str(exc)) from None
    wanted = [q for q in ("order", "orbits", "histogram", "mu") if getattr(args, q)]
    if not wanted:
        wanted = ["order"]
    if args.expect is not None and len(wanted) != 1:
        raise UsageError("--expect needs exactly one of --order/--orbits/--histogram/--mu")
    values = {}
    try:
        for q in wanted:
            if q == "order":
                values[q] = str(G.order())
            elif q == "orbits":
                values[q] = " ".join(
                    "{" + ",".join(str(i + 1) for i in orb) + "}" for orb in G.orbit_partition()
                )
            elif q == "histogram":
                hist = G.element_order_histogram(args.cap)
                values[q] = " ".join(f"{d}:{c}" for d, c in hist.items())
            else:
                values[q] = _fmt_fraction(G.mu(args.cap, allow_wild=args.allow_wild))
    except GroupTooLargeError as exc:
        raise UsageError(f"{exc}; raise --cap to enumerate") from None
    print(f"group: {G.name} (degree {G.degree})", file=out)
    for q in wanted:
        print(f"{q}: {values[q]}", file=out)
    if args.expect is not None:
        got = values[wanted[0]]
        if got != args.expect.strip():
            print(f"expect: MISMATCH (expected {args.expect}, got {got})", file=out)
            return EXIT_MISMATCH
        print("expect: OK", file=out)
    return EXIT_OK


def stabilizer_records() -> list[dict]:
    return [r.as_record() for r in STABILIZERS]


def cmd_stabilizers(args, out) -> int:
    if args.format == "records":
        for rec in stabilizer_records():
            print(json.dumps(rec), file=out)
        return EXIT_OK
    print(f"{'type':<6}{'G_x':<6}{'o_x':>5}{'c_x':>5}  {'D_x':<8}{'d_x':>4}  SNF", file=out)
    status = EXIT_OK
    for r in STABILIZERS:
        snf = discriminant_group(r.ade)
        ok = snf == r.disc_invariants
        status |= 0 if ok else EXIT_MISMATCH
        print(
            f"{str(r.ade):<6}{r.group_name:<6}{r.o_x:>5}{r.c_x:>5}  "
            f"{str(r.disc_invariants):<8}{r.d_x:>4}  {'ok' if ok else 'MISMATCH ' + str(snf)}",
            file=out,
        )
    return status


def _check(out, label: str, ok: bool, detail: str = "") -> bool:
    suffix = f" ({detail})" if detail else ""
    print(f"{'PASS' if ok else 'FAIL'}  {label}{suffix}", file=out)
    return ok


def cmd_verify_constructions(args, out) -> int:
    ok = True
    try:
        constants = load_constants()
    except (OSError, ValueError) as exc:
        print(f"FAIL  cannot read constants: {exc}", file=out)
        return EXIT_MISMATCH
    try:
        o48 = build_O48(constants)
        hist = o48.element_order_histogram()
        ok &= _check(out, "O48: relations t_b x = x t_c, (t_b x)^4 = (t_c y)^2 = t_a", True)
        ok &= _check(out, "O48: order 48", o48.order() == 48, str(o48.order()))
        ok &= _check(out, "O48: one involution", hist.entries.get(2) == 1, str(hist.entries.get(2)))
        m = o48.mu()
        ok &= _check(out, "O48: mu = 4", m == 4, _fmt_fraction(m))
        o48_2 = build_O48_2(constants)
        ok &= _check(out, "O48:2: relations hold", True)
        ok &= _check(out, "O48:2: order 96", o48_2.order() == 96, str(o48_2.order()))
        x = F2Mat4.parse(constants["o48_2_x"])
        y = F2Mat4.parse(constants["o48_2_y"])
        b, c = parse_vec(constants["o48_2_b"]), parse_vec(constants["o48_2_c"])
        sub = PermGroup([to_permutation(AffineMap4(x, b)), to_permutation(AffineMap4(y, c))])
        ok &= _check(
            out,
            "O48:2 contains <t_b x, t_c y> of order 48",
            sub.order() == 48 and all(o48_2.contains(g) for g in sub.generators),
            str(sub.order()),
        )
    except ConstructionError as exc:
        print(f"FAIL  relation failure: {exc}", file=out)
        return EXIT_MISMATCH
    for case, expected in (("o48", (1, 6, 8)), ("o48_2", (1, 2, 12))):
        xs = F2Mat4.parse(constants[f"{case}_x"])
        ys = F2Mat4.parse(constants[f"{case}_y"])
        shape = linear_orbit_shape([xs, ys])
        ok &= _check(out, f"orbit shape ({case}) = {_shape(expected)}", shape == expected, _shape(shape))
    census = s4_shape_census()
    for shape in EXPECTED_S4_SHAPES:
        ok &= _check(out, f"S4 census contains {_shape(shape)}", shape in census)
    ok &= _check(
        out,
        "S4 census has a shape with 3 fixed points",
        any(s.count(1) == 3 for s in census),
    )
    if args.s4_census:
        print("# S4 shape census (shape: accepted (x, y) pairs)", file=out)
        for shape in sorted(census):
            print(f"{_shape(shape)}: {census[shape]}", file=out)
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k3tk",
        description="Enumerations and group checks for tame symplectic K3 automorphism groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list (order, root lattice) pairs")
    p.add_argument("--k", type=_k_range, default=(4, 5), metavar="LO:HI",
                   help="number of singular points (default 4:5)")
    p.add_argument("--no-square-filter", action="store_true",
                   help="keep configurations with square discriminant product")
    p.add_argument("--no-rank-filter", action="store_true",
                   help="drop the rank-20 requirement")
    p.add_argument("--verify", action="store_true",
                   help="diff against the bundled reference list")
    p.add_argument("--format", choices=("text", "records"), default="text")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("check-config", help="evaluate constraints for one configuration")
    p.add_argument("config", help='comma-separated types, e.g. "A2,A4,A4,A6,D4"')
    p.add_argument("--N", type=int, default=None, help="group order to test (default: candidate)")
    p.set_defaults(func=cmd_check_config)

    p = sub.add_parser("group", help="analyse a permutation group file")
    p.add_argument("path", help="group file, or the name of a bundled one (e.g. a6.grp)")
    p.add_argument("--order", action="store_true")
    p.add_argument("--orbits", action="store_true")
    p.add_argument("--histogram", action="store_true")
    p.add_argument("--mu", action="store_true")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                   help=f"enumeration cap (default {DEFAULT_CAP})")
    p.add_argument("--allow-wild", action="store_true",
                   help="silence the warning for element orders above 8")
    p.add_argument("--expect", default=None, help="expected value; exit 1 on mismatch")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("stabilizers", help="print the stabilizer catalog")
    p.add_argument("--format", choices=("text", "records"), default="text")
    p.set_defaults(func=cmd_stabilizers)

    p = sub.add_parser("verify-constructions", help="check the O48 and O48:2 constructions")
    p.add_argument("--s4-census", action="store_true", help="print the S4 orbit-shape census")
    p.set_defaults(func=cmd_verify_constructions)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"k3tk {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ListFormatError as exc:
        print(f"k3tk {args.command}: malformed data: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
