"""Command-line front end.

Exit codes: 0 success, 1 verification or property failure, 2 input/config
error, 3 word-length cap exceeded. All randomness flows from --seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .certfile import read_certificate, report_to_dict, write_certificate
from .errors import (
    CapExceeded,
    ConfigError,
    ConfigMismatch,
    EmptyIntersection,
    EmptyNeighborhood,
    ExhaustiveNotFinite,
    FormatError,
    GroupMismatch,
    LengthMismatch,
    PointsEqual,
    ShapeMismatch,
    UnknownGroup,
    VariantMismatch,
    WitnessInExcluded,
    WordIsIdentity,
    WordSyntaxError,
)
from .groups import FiniteSet, GroupConfig, Interval, Neighborhood, PadicBall, demo_config, load_config
from .rational import format_rational, padic_valuation, parse_rational
from .separation import (
    certify_open_complement,
    check_certificate,
    derive_seed,
    separate_word_from_identity,
    validate_certificate,
)
from .wedge import AwayFromIdentity, IdentityDefaults, check_condition_i
from .words import (
    DEFAULT_CAP,
    EPSILON,
    ReducedWord,
    Word,
    format_word,
    parse_reduced,
    parse_word,
    reduce_word,
)
from . import proptests

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_CAP = 3

SUITES = (
    "confluence",
    "collapse",
    "transfer",
    "separation",
    "points",
    "bounds",
    "intersect",
    "tamper",
    "all",
)


def _add_shared(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # The shared flags work both before and after the subcommand; the
    # subcommand copies use SUPPRESS so they never clobber earlier values.
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument(
        "--groups",
        metavar="PATH",
        default=default(None),
        help="group configuration file (default: built-in demo family)",
    )
    parser.add_argument("--cap", type=int, default=default(DEFAULT_CAP), help="word length cap")
    parser.add_argument("--seed", type=int, default=default(0), help="seed for all randomness")
    parser.add_argument("--format", choices=("text", "machine"), default=default("text"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topfree",
        description="Words, neighborhoods and separation certificates in free "
        "products of concrete Hausdorff topological groups.",
    )
    _add_shared(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="print the normal form of a word")
    _add_shared(p, suppress=True)
    p.add_argument("word")

    p = sub.add_parser("separate", help="emit a separation certificate for a nontrivial word")
    _add_shared(p, suppress=True)
    p.add_argument("word")
    p.add_argument("--out", metavar="PATH", help="certificate output path (default: stdout summary only)")
    p.add_argument("--id-radius", default="1", help="euclidean identity-neighborhood radius")
    p.add_argument("--id-level", type=int, default=1, help="p-adic identity-neighborhood level")

    p = sub.add_parser("check", help="validate and spot-check a certificate file")
    _add_shared(p, suppress=True)
    p.add_argument("certificate", metavar="PATH")
    p.add_argument("--exhaustive", action="store_true", help="enumerate every selection (finite descriptors only)")
    p.add_argument("-k", type=int, default=1000, help="sampled selections")

    p = sub.add_parser("proptest", help="run a property suite")
    _add_shared(p, suppress=True)
    p.add_argument("suite", choices=SUITES)
    p.add_argument("-k", type=int, default=None, help="primary scale of the suite")
    p.add_argument("--samples", type=int, default=None, help="per-certificate selection samples")
    p.add_argument("--exhaustive-len", type=int, default=6, help="word length for the exhaustive collapse suite")
    p.add_argument("--workers", type=int, default=None, help="worker processes (default: cpu count)")

    p = sub.add_parser("x0check", help="validate an open-complement description at witnesses")
    _add_shared(p, suppress=True)
    p.add_argument("--witnesses", required=True, metavar="PATH")
    p.add_argument("--excluded", required=True, metavar="PATH")
    p.add_argument("--out", metavar="DIR", help="write per-witness certificates here")
    p.add_argument("-k", type=int, default=1000, help="sampled selections per certificate")
    return parser


def _print_machine(data: dict) -> None:
    print(json.dumps(data, sort_keys=True))


def describe_xneighborhood(config: GroupConfig, xn) -> str:
    if isinstance(xn, AwayFromIdentity):
        return f"away {xn.group} {describe_neighborhood(xn.neighborhood)}"
    parts = ", ".join(
        f"{n.group}:{describe_neighborhood(n)}" for n in xn.components
    )
    return f"around identity [{parts}]"


def describe_neighborhood(n: Neighborhood) -> str:
    shape = n.shape
    if isinstance(shape, FiniteSet):
        body = "{" + ",".join(shape.values) + "}"
    elif isinstance(shape, Interval):
        body = f"interval(center={format_rational(shape.center)}, radius={format_rational(shape.radius)})"
    else:
        body = f"ball(center={format_rational(shape.center)}, level={shape.level})"
    return body + (" punctured" if n.punctured else "")


def cmd_reduce(args, config: GroupConfig) -> int:
    word = parse_word(config, args.word)
    reduced = reduce_word(config, word, args.cap)
    text = format_word(config, reduced) or EPSILON
    if args.format == "machine":
        _print_machine({"reduced": format_word(config, reduced), "length": len(reduced)})
    else:
        print(f"{text}  (length {len(reduced)})")
    return EXIT_OK


def cmd_separate(args, config: GroupConfig) -> int:
    word = parse_word(config, args.word)
    defaults = IdentityDefaults(
        euclidean_radius=parse_rational(args.id_radius), padic_level=args.id_level
    )
    cert = separate_word_from_identity(config, word, defaults, args.cap)
    if args.out:
        write_certificate(config, cert, args.out)
    positions = []
    for m, (l, xn, prov) in enumerate(zip(word.letters, cert.neighborhoods, cert.provenance)):
        positions.append(
            {
                "position": m,
                "letter": format_word(config, Word((l,))),
                "descriptor": describe_xneighborhood(config, xn),
                "contributing_sets": len(prov),
            }
        )
    if args.format == "machine":
        _print_machine(
            {
                "word": format_word(config, word),
                "out": args.out,
                "positions": positions,
            }
        )
    else:
        print(f"word: {format_word(config, word)}")
        for entry in positions:
            print(
                f"  {entry['position']}: {entry['letter']} -> {entry['descriptor']}"
                f"  [{entry['contributing_sets']} contributing sets]"
            )
        if args.out:
            print(f"certificate written to {args.out}")
    return EXIT_OK


def cmd_check(args, config: GroupConfig) -> int:
    cert = read_certificate(config, args.certificate)
    problems = validate_certificate(config, cert, args.cap)
    if problems:
        if args.format == "machine":
            _print_machine({"ok": False, "stage": "validation", "problems": problems})
        else:
            print("certificate rejected by validation:")
            for problem in problems:
                print(f"  {problem}")
        return EXIT_FAILURE
    mode = "exhaustive" if args.exhaustive else "sampled"
    report = check_certificate(config, cert, mode, k=args.k, seed=args.seed)
    if args.format == "machine":
        _print_machine({"stage": "selection-check", **report_to_dict(report)})
    else:
        print(
            f"{report.mode}: {report.selections_checked} selections, "
            f"{len(report.violations)} violations, {report.elapsed:.3f}s"
        )
        for v in report.violations[:5]:
            print(f"  violating selection: {v.selection}  ->  {v.reduces_to or EPSILON}")
    return EXIT_OK if report.ok else EXIT_FAILURE


def _run_one_suite(name: str, args, config: GroupConfig) -> proptests.SuiteResult:
    k = args.k
    samples = args.samples
    if name == "confluence":
        return proptests.confluence_suite(
            config, words=k or 100_000, seed=args.seed, cap=args.cap, workers=args.workers
        )
    if name == "collapse":
        return proptests.collapse_suite(config, max_len=args.exhaustive_len, cap=args.cap)
    if name == "transfer":
        return proptests.transfer_suite(
            config, pairs=k or 10_000, mutations=max(1000, (k or 10_000) // 10), seed=args.seed, cap=args.cap
        )
    if name == "separation":
        return proptests.separation_suite(
            config,
            words=k or 1000,
            samples=samples or 1000,
            seed=args.seed,
            cap=args.cap,
            workers=args.workers,
        )
    if name == "points":
        return proptests.point_separation_suite(
            config,
            pairs=k or 1000,
            samples=samples or 200,
            seed=args.seed,
            cap=args.cap,
            workers=args.workers,
        )
    if name == "bounds":
        return proptests.bounds_suite(config, cases=k or 1000, seed=args.seed)
    if name == "intersect":
        return proptests.intersect_suite(config, pairs=k or 1000, seed=args.seed)
    if name == "tamper":
        return proptests.tamper_suite(config, certs=k or 100, seed=args.seed, cap=args.cap)
    raise ValueError(name)


def cmd_proptest(args, config: GroupConfig) -> int:
    names = [s for s in SUITES if s != "all"] if args.suite == "all" else [args.suite]
    results = [_run_one_suite(name, args, config) for name in names]
    if args.format == "machine":
        _print_machine(
            {
                "suites": [
                    {
                        "name": r.name,
                        "checked": r.checked,
                        "failures": r.failures[:20],
                        "failure_count": len(r.failures),
                        "elapsed_seconds": round(r.elapsed, 3),
                        "details": r.details,
                        "ok": r.ok,
                    }
                    for r in results
                ],
                "ok": all(r.ok for r in results),
            }
        )
    else:
        for r in results:
            state = "PASS" if r.ok else "FAIL"
            extras = " ".join(f"{k}={v}" for k, v in r.details.items())
            print(f"{r.name}: {state} checked={r.checked} elapsed={r.elapsed:.2f}s {extras}")
            for failure in r.failures[:5]:
                print(f"  counterexample: {failure}")
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAILURE


def _read_word_lines(config: GroupConfig, path: str) -> list[str]:
    lines = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            stripped = raw.strip()
            if stripped and not stripped.startswith("#"):
                lines.append(stripped)
    return lines


def _condition_i_description(
    config: GroupConfig,
    witnesses: list[Word],
    excluded: list[ReducedWord],
    defaults: IdentityDefaults,
) -> dict[str, list[Neighborhood]]:
    """Per-group open descriptors lying inside the complement of the excluded
    values: exact complements for finite groups, neighborhoods of the witness
    letters for the rational kinds."""
    identity_excluded = any(e.is_empty for e in excluded)
    excluded_values: dict[str, list] = {gid: [] for gid in config.group_ids}
    for e in excluded:
        if len(e.letters) == 1:
            l = e.letters[0]
            excluded_values[l.group].append(l.value)
    description: dict[str, list[Neighborhood]] = {}
    for gid in config.group_ids:
        spec = config.spec(gid)
        out: list[Neighborhood] = []
        if spec.kind == "finite_table":
            keep = tuple(
                v
                for v in spec.elements
                if v not in excluded_values[gid]
                and not (identity_excluded and v == spec.identity_value)
            )
            if keep:
                out.append(Neighborhood(gid, FiniteSet(keep), punctured=identity_excluded))
        else:
            centers = []
            for w in witnesses:
                for l in w.letters:
                    if l.group == gid and l.value not in centers and l.value not in excluded_values[gid]:
                        centers.append(l.value)
            for x in centers:
                if spec.kind == "rational_euclidean":
                    radius = defaults.euclidean_radius
                    for e in excluded_values[gid]:
                        radius = min(radius, abs(x - e) / 2)
                    if identity_excluded and x != 0:
                        radius = min(radius, abs(x) / 2)
                    out.append(Neighborhood(gid, Interval(x, radius), punctured=identity_excluded))
                else:
                    level = defaults.padic_level
                    for e in excluded_values[gid]:
                        level = max(level, padic_valuation(x - e, spec.prime) + 1)
                    out.append(Neighborhood(gid, PadicBall(x, int(level)), punctured=identity_excluded))
        description[gid] = out
    return description


def cmd_x0check(args, config: GroupConfig) -> int:
    witnesses = [parse_word(config, line) for line in _read_word_lines(config, args.witnesses)]
    excluded = [parse_reduced(config, line, args.cap) for line in _read_word_lines(config, args.excluded)]
    defaults = IdentityDefaults()
    summary: dict = {"witnesses": len(witnesses), "excluded": len(excluded)}
    if not excluded:
        summary.update({"ok": True, "note": "empty excluded set: the complement is everything"})
        if args.format == "machine":
            _print_machine(summary)
        else:
            print("empty excluded set: nothing to separate, success")
        return EXIT_OK
    description = _condition_i_description(config, witnesses, excluded, defaults)
    condition_i = check_condition_i(config, description)
    certificates = certify_open_complement(config, witnesses, excluded, defaults, args.cap)
    failures = []
    written = []
    for index, cert in enumerate(certificates):
        problems = validate_certificate(config, cert, args.cap)
        if problems:
            failures.append(f"witness {index}: {problems[0]}")
            continue
        report = check_certificate(
            config, cert, "sampled", k=args.k, seed=derive_seed(args.seed, "x0", index)
        )
        if not report.ok:
            failures.append(
                f"witness {index}: selection {report.violations[0].selection} hits an excluded value"
            )
        if args.out:
            os.makedirs(args.out, exist_ok=True)
            path = f"{args.out}/certificate-{index:03d}.json"
            write_certificate(config, cert, path)
            written.append(path)
    summary.update(
        {
            "condition_i": condition_i,
            "certificates": len(certificates),
            "written": written,
            "failures": failures,
            "ok": not failures,
        }
    )
    if args.format == "machine":
        _print_machine(summary)
    else:
        print(f"condition (i): descriptors valid for {len(description)} groups")
        print(f"condition (ii): {len(certificates)} witness certificates checked")
        for failure in failures:
            print(f"  {failure}")
        if written:
            print(f"certificates written to {args.out}")
        print("ok" if not failures else "FAILED")
    return EXIT_OK if not failures else EXIT_FAILURE


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.cap < 1:
        print("error: --cap must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "k", None) is not None and args.k < 1:
        print("error: -k must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        config = load_config(args.groups) if args.groups else demo_config()
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        if args.command == "reduce":
            return cmd_reduce(args, config)
        if args.command == "separate":
            return cmd_separate(args, config)
        if args.command == "check":
            return cmd_check(args, config)
        if args.command == "proptest":
            return cmd_proptest(args, config)
        if args.command == "x0check":
            return cmd_x0check(args, config)
        raise ValueError(f"unknown command {args.command!r}")
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (WordIsIdentity, PointsEqual, WitnessInExcluded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except (
        WordSyntaxError,
        ConfigError,
        ConfigMismatch,
        FormatError,
        ExhaustiveNotFinite,
        UnknownGroup,
        GroupMismatch,
        ShapeMismatch,
        LengthMismatch,
        VariantMismatch,
        EmptyIntersection,
        EmptyNeighborhood,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
