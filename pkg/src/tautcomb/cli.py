"""Command line driver.

Subcommands: pop, matrix, sums, graphs, kernels, dim, verify-all.  Every
payload goes to stdout as canonical JSON (or CSV for matrix dumps) and is
byte-identical for identical flags; timing lines go to stderr.  Exit codes:
0 on success, 1 when a verification fails, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .errors import TautcombError
from .exactalg import rat_to_str
from .kernels import eta_sign_scale, eta_weight, principal_prefactor_rows, s_kernel, t_kernel
from .locgraph import (
    RelativeShape,
    classify_principal,
    contribution,
    enumerate_graphs,
    hurwitz_condition,
    omega_dimension_check,
    vdim_parameterized,
    vdim_unparameterized,
)
from .partitions import (
    INF,
    MultiPOP,
    POP,
    canonical_marking_sets,
    enumerate_pop,
    enumerate_pop_multi,
)
from .relmatrix import (
    build_A,
    build_A_multi,
    build_B,
    build_B_multi,
    build_M,
    build_M_multi,
    verify_C,
    verify_kronecker,
    verify_M_invertible,
    verify_M_transpose_scaling,
)
from .verify import reports_to_json, sweep_sums_suite, verify_all

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

DEFAULT_SEED = 20240801


class UsageError(TautcombError):
    """Invalid flag combination or unparseable value."""


# ---------------------------------------------------------------------------
# flag parsing helpers


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        out = tuple(int(x) for x in text.split(",")) if text else ()
    except ValueError as exc:
        raise UsageError(f"{what} must be a comma-separated integer list, got {text!r}") from exc
    return out


def _parse_cutoff(text: str):
    if text.lower() in ("inf", "infinity", "oo"):
        return INF
    try:
        return int(text)
    except ValueError as exc:
        raise UsageError(f"--k must be an integer or 'inf', got {text!r}") from exc


def _parse_profile(text: str, c: int) -> tuple[tuple[int, ...], ...]:
    """One profile: ';' between components, ',' between parts ("2,1;3")."""
    groups = text.split(";")
    if len(groups) != c:
        raise UsageError(
            f"profile {text!r} has {len(groups)} component groups, the shape has {c}"
        )
    return tuple(_parse_int_list(g, "profile part list") for g in groups)


def _marking_sets_from_cards(cards: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Consecutive label blocks; zero-size blocks allowed (graph shapes)."""
    out = []
    nxt = 1
    for m in cards:
        if m < 0:
            raise UsageError("marking counts must be nonnegative")
        out.append(tuple(range(nxt, nxt + m)))
        nxt += m
    return tuple(out)


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# subcommands


def cmd_pop(args: argparse.Namespace) -> int:
    degrees = _parse_int_list(args.d, "--d")
    cards = _parse_int_list(args.n, "--n")
    k = _parse_cutoff(args.k)
    if not degrees or not cards:
        raise UsageError("--d and --n are required")
    if len(degrees) == 1 and len(cards) == 1:
        items = enumerate_pop(degrees[0], cards[0], k)
    else:
        if len(degrees) != len(cards):
            raise UsageError("--d and --n must list one value per component")
        items = enumerate_pop_multi(degrees, canonical_marking_sets(cards), k)
    if args.count_only:
        _emit(str(len(items)))
    else:
        _emit(_dump_json([p.to_json_dict() for p in items]))
    return EXIT_PASS


_VERIFY_NEEDS = {
    "triangular": "C",
    "invertible": "M",
    "transpose-scaling": "M",
    "kronecker": "A",
}


def cmd_matrix(args: argparse.Namespace) -> int:
    degrees = _parse_int_list(args.d, "--d")
    cards = _parse_int_list(args.n, "--n")
    k = _parse_cutoff(args.k)
    if not degrees or not cards:
        raise UsageError("--d and --n are required")
    if len(degrees) != len(cards):
        raise UsageError("--d and --n must list one value per component")
    multi = len(degrees) > 1

    if args.verify:
        need = _VERIFY_NEEDS[args.verify]
        if args.which != need:
            raise UsageError(
                f"--verify {args.verify} applies to matrix {need}, not {args.which}"
            )
        if args.verify == "triangular":
            if multi:
                raise UsageError("triangularity is a single-component statement")
            report = verify_C(degrees[0], cards[0], k)
        else:
            marking_sets = canonical_marking_sets(cards)
            fn = {
                "invertible": verify_M_invertible,
                "transpose-scaling": verify_M_transpose_scaling,
                "kronecker": verify_kronecker,
            }[args.verify]
            report = fn(degrees, marking_sets, k)
        _emit(_dump_json(report))
        return EXIT_PASS if report["pass"] else EXIT_FAIL

    if multi:
        marking_sets = canonical_marking_sets(cards)
        if args.which == "A":
            matrix = build_A_multi(degrees, marking_sets, k)
        elif args.which == "M":
            matrix = build_M_multi(degrees, marking_sets, k)
        elif args.which == "B":
            matrix = build_B_multi(degrees, marking_sets, k, experimental=args.experimental_multi)
        else:
            b = build_B_multi(degrees, marking_sets, k, experimental=args.experimental_multi)
            matrix = b.multiply(build_A_multi(degrees, marking_sets, k))
    else:
        d, n = degrees[0], cards[0]
        if args.which == "A":
            matrix = build_A(d, n, k)
        elif args.which == "M":
            matrix = build_M(d, n, k)
        elif args.which == "B":
            matrix = build_B(d, n, k)
        else:
            matrix = build_B(d, n, k).multiply(build_A(d, n, k))
    _emit(matrix.to_csv() if args.out == "csv" else matrix.to_json())
    return EXIT_PASS


def cmd_sums(args: argparse.Namespace) -> int:
    report = sweep_sums_suite(args.suite, args.max)
    _emit(_dump_json(report.to_json_dict()))
    return EXIT_PASS if report.passed else EXIT_FAIL


def _shape_from_args(args: argparse.Namespace) -> RelativeShape:
    genera = _parse_int_list(args.g, "--g")
    degrees = _parse_int_list(args.d, "--d")
    if not genera or not degrees:
        raise UsageError("--g and --d are required")
    c = len(degrees)
    if args.markings:
        cards = _parse_int_list(args.markings, "--markings")
        if len(cards) != c:
            raise UsageError("--markings must list one count per component")
    else:
        cards = (0,) * c
    marking_sets = _marking_sets_from_cards(cards)
    if not args.profiles:
        raise UsageError("at least one --profiles occurrence is required")
    profiles = tuple(_parse_profile(p, c) for p in args.profiles)
    if args.m is not None and args.m != len(profiles):
        raise UsageError(
            f"--m {args.m} disagrees with {len(profiles)} --profiles occurrences"
        )
    return RelativeShape(
        genera,
        degrees,
        marking_sets,
        profiles,
        parameterized=getattr(args, "parameterized", True),
        extra_markings=getattr(args, "extra_markings", 0),
    )


def cmd_graphs(args: argparse.Namespace) -> int:
    shape = _shape_from_args(args)
    graphs = enumerate_graphs(shape)
    alpha_dp = _parse_int_list(args.alpha_dp, "--alpha-dp") if args.alpha_dp else ()
    items = []
    n_ordered = (
        args.n_ordered if args.n_ordered is not None else shape.n - len(alpha_dp)
    )
    for graph in graphs:
        principal = None
        if args.principal_only or args.alpha_dp:
            principal = classify_principal(graph, n_ordered, alpha_dp, shape)
            if args.principal_only and principal is None:
                continue
        entry = (
            contribution(graph, shape).to_json_dict()
            if args.contributions
            else {"graph": graph.to_json_dict()}
        )
        if principal is not None:
            entry["principal"] = principal.to_json_dict()
        items.append(entry)
    _emit(_dump_json(items))
    return EXIT_PASS


def cmd_kernels(args: argparse.Namespace) -> int:
    sub = _parse_int_list(args.sub, "--sub") if args.sub else ()
    arg = _parse_int_list(args.arg, "--arg") if args.arg else ()
    if args.which == "S":
        value = s_kernel(sub, arg)
    elif args.which == "T":
        value = t_kernel(sub, arg)
    elif args.which in ("eta", "scale"):
        ordered = _parse_int_list(args.ordered, "--ordered")
        unordered = _parse_int_list(args.unordered, "--unordered") if args.unordered else ()
        pop = POP(sum(ordered) + sum(unordered), ordered, unordered)
        value = eta_weight(pop) if args.which == "eta" else eta_sign_scale(pop)
    else:  # prefactor
        a_o = _parse_int_list(args.alpha_ordered, "--alpha-ordered")
        a_u = _parse_int_list(args.alpha_unordered, "--alpha-unordered") if args.alpha_unordered else ()
        b_o = _parse_int_list(args.beta_ordered, "--beta-ordered")
        b_u = _parse_int_list(args.beta_unordered, "--beta-unordered") if args.beta_unordered else ()
        row = POP(sum(a_o) + sum(a_u), a_o, a_u)
        col = POP(sum(b_o) + sum(b_u), b_o, b_u)
        value = principal_prefactor_rows(row, col)
    _emit(_dump_json({"which": args.which, "value": rat_to_str(value)}))
    return EXIT_PASS


def cmd_dim(args: argparse.Namespace) -> int:
    if args.which == "hurwitz":
        if args.g is None:
            raise UsageError("--g is required")
        genera = _parse_int_list(args.g, "--g")
        if len(genera) != 1:
            raise UsageError("hurwitz takes a single genus")
        if not args.profiles:
            raise UsageError("at least one --profiles occurrence is required")
        profiles = [_parse_int_list(p, "--profiles") for p in args.profiles]
        value = hurwitz_condition(genera[0], profiles)
        _emit(_dump_json({"which": "hurwitz", "condition": value}))
        return EXIT_PASS
    if args.which == "vdim":
        shape = _shape_from_args(args)
        _emit(
            _dump_json(
                {
                    "which": "vdim",
                    "parameterized": vdim_parameterized(shape),
                    "unparameterized": vdim_unparameterized(shape),
                }
            )
        )
        return EXIT_PASS
    # omega
    shape = _shape_from_args(args)
    try:
        alpha = MultiPOP.from_json_dict(json.loads(args.alpha_json))
        beta = MultiPOP.from_json_dict(json.loads(args.beta_json))
    except (TypeError, ValueError) as exc:
        raise UsageError(f"--alpha-json/--beta-json must be partition JSON: {exc}") from exc
    r_exps = (
        _parse_int_list(args.r_exponents, "--r-exponents")
        if args.r_exponents
        else (0,) * shape.extra_markings
    )
    s_exps = (
        _parse_int_list(args.s_exponents, "--s-exponents")
        if args.s_exponents
        else (0,) * shape.m
    )
    report = omega_dimension_check(alpha, beta, shape, r_exps, s_exps, args.k)
    _emit(_dump_json({"which": "omega", **report}))
    return EXIT_PASS if report["equal"] and report["degreesAgree"] else EXIT_FAIL


def cmd_verify_all(args: argparse.Namespace) -> int:
    if args.max_d is not None:
        max_d = args.max_d
    else:
        try:
            max_d = int(os.environ.get("TAUT_MAX_D", "6"))
        except ValueError as exc:
            raise UsageError("TAUT_MAX_D must be an integer") from exc
    if max_d < 1:
        raise UsageError("the sweep bound must be at least 1")
    start = time.perf_counter()
    reports, ok = verify_all(
        max_d=max_d, seed=args.seed, jobs=args.jobs, inject_fault=args.inject_fault
    )
    total = time.perf_counter() - start
    _emit(reports_to_json(reports, ok, {"maxD": max_d, "seed": args.seed}))
    for r in reports:
        print(f"# {r.suite}: {r.wall_time:.3f}s", file=sys.stderr)
    print(f"# total: {total:.3f}s", file=sys.stderr)
    return EXIT_PASS if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser assembly


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tautcomb",
        description="Exact combinatorics of partition matrices and localization graphs.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", choices=("json", "csv"), default="json", help="output format")
    common.add_argument("--jobs", type=int, default=1, help="parallel workers for sweeps")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized sweeps")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pop", parents=[common], help="enumerate partition families")
    p.add_argument("--d", required=True, help="degree (or comma list per component)")
    p.add_argument("--n", required=True, help="ordered-part count (or comma list)")
    p.add_argument("--k", default="inf", help="length cutoff, integer or 'inf'")
    p.add_argument("--count-only", action="store_true", help="print only the cardinality")
    p.set_defaults(func=cmd_pop)

    p = sub.add_parser("matrix", parents=[common], help="build or verify the pairing matrices")
    p.add_argument("--which", required=True, choices=("M", "A", "B", "C"))
    p.add_argument("--d", required=True, help="degree (or comma list per component)")
    p.add_argument("--n", required=True, help="ordered-part count (or comma list)")
    p.add_argument("--k", default="inf", help="length cutoff, integer or 'inf'")
    p.add_argument(
        "--verify",
        choices=("triangular", "invertible", "kronecker", "transpose-scaling"),
        help="run a verification instead of dumping the matrix",
    )
    p.add_argument(
        "--experimental-multi",
        action="store_true",
        help="opt in to the multi-component B construction",
    )
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("sums", parents=[common], help="check the closed scalar sums")
    p.add_argument(
        "--suite",
        default="all",
        choices=("alpha", "beta", "betaprime", "gamma", "binom", "all"),
    )
    p.add_argument("--max", type=int, default=12, help="upper bound for the sweep (>= 2)")
    p.set_defaults(func=cmd_sums)

    p = sub.add_parser("graphs", parents=[common], help="enumerate localization graphs")
    p.add_argument("--g", required=True, help="genus (or comma list per component)")
    p.add_argument("--d", required=True, help="degree (or comma list per component)")
    p.add_argument("--m", type=int, help="expected number of profiles (consistency check)")
    p.add_argument(
        "--profiles",
        action="append",
        help="one profile: ',' between parts, ';' between components (repeatable)",
    )
    p.add_argument("--markings", help="marking counts per component, comma list")
    p.add_argument("--contributions", action="store_true", help="attach localization weights")
    p.add_argument(
        "--principal-only", action="store_true", help="keep only principal-type graphs"
    )
    p.add_argument("--alpha-dp", help="distinguished unordered parts for classification")
    p.add_argument(
        "--n-ordered",
        type=int,
        help="how many leading marking labels select ordered parts",
    )
    p.set_defaults(func=cmd_graphs)

    p = sub.add_parser("kernels", parents=[common], help="evaluate the kernel functions")
    p.add_argument("--which", required=True, choices=("S", "T", "eta", "scale", "prefactor"))
    p.add_argument("--sub", help="subscript partition, comma list (S and T)")
    p.add_argument("--arg", help="argument partition, comma list (S and T)")
    p.add_argument("--ordered", help="ordered parts (eta and scale)")
    p.add_argument("--unordered", help="unordered parts (eta and scale)")
    p.add_argument("--alpha-ordered", help="row ordered parts (prefactor)")
    p.add_argument("--alpha-unordered", help="row unordered parts (prefactor)")
    p.add_argument("--beta-ordered", help="column ordered parts (prefactor)")
    p.add_argument("--beta-unordered", help="column unordered parts (prefactor)")
    p.set_defaults(func=cmd_kernels)

    p = sub.add_parser("dim", parents=[common], help="dimension bookkeeping")
    p.add_argument("--which", required=True, choices=("vdim", "hurwitz", "omega"))
    p.add_argument("--g", help="genus (or comma list per component)")
    p.add_argument("--d", help="degree (or comma list per component)")
    p.add_argument("--m", type=int, help="expected number of profiles (consistency check)")
    p.add_argument("--profiles", action="append", help="ramification profiles (repeatable)")
    p.add_argument("--markings", help="marking counts per component, comma list")
    p.add_argument("--extra-markings", type=int, default=0, help="free markings beyond the shape")
    p.add_argument(
        "--unparameterized",
        dest="parameterized",
        action="store_false",
        help="count dimensions modulo the target symmetries",
    )
    p.add_argument("--alpha-json", help="row partition as JSON (omega)")
    p.add_argument("--beta-json", help="column partition as JSON (omega)")
    p.add_argument("--r-exponents", help="comma list, one per extra marking (omega)")
    p.add_argument("--s-exponents", help="comma list, one per profile (omega)")
    p.add_argument("--k", type=int, default=0, help="cutoff exponent (omega)")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("verify-all", parents=[common], help="run the full verification battery")
    p.add_argument(
        "--max-d",
        type=int,
        default=None,
        help="sweep bound (default: TAUT_MAX_D or 6)",
    )
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify_all)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TautcombError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
