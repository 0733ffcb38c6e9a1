"""Command-line surface.

Exit codes: 0 success / witness found / verdict pass; 1 negative verdict
(search exhausted with no witness, arrangement not free, filters failed);
2 usage or input errors; 3 resource limit hit.  Standard output is
byte-stable for identical invocations (fixed ordering, no timestamps);
progress and diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .combinatorics import FilterConfig, ShnurnikovMode, Status, WeakCombinatorics
from .chern import chern_numbers, m_chern_invariant_check, m_ratio_bound
from .enumeration import (
    EnumerationResult,
    classify,
    enumerate_combinatorics,
    m_list,
    report_payload,
    to_csv,
    to_json,
    to_markdown,
)
from .geometry import (
    DuplicateLineError,
    UnknownCatalogNameError,
    catalog,
    catalog_names,
    format_arrangement,
    intersection_summary,
    load_arrangement,
)
from .realizability import (
    SearchLimits,
    SearchStatus,
    packing_max,
    partial_linear_space_exists,
    validate_witness,
    wiring_search,
    witness_from_json,
    witness_to_json,
)
from .syzygies import ResourceLimitError, defining_polynomial, is_free_exact, mdr

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


class _UsageError(Exception):
    pass


def _parse_degree_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return (int(lo), int(hi))
        d = int(text)
        return (d, d)
    except ValueError as exc:
        raise _UsageError(f"cannot parse degree range {text!r} (use e.g. 7 or 3..18)") from exc


def _parse_counts(pairs: list[str] | None) -> dict[int, int]:
    extra: dict[int, int] = {}
    for pair in pairs or []:
        try:
            k, v = pair.split("=", 1)
            extra[int(k)] = int(v)
        except ValueError as exc:
            raise _UsageError(f"cannot parse count pair {pair!r} (use k=v)") from exc
    return extra


def _wc_from_args(args: argparse.Namespace) -> WeakCombinatorics:
    if getattr(args, "file", None):
        return intersection_summary(load_arrangement(args.file)).wc
    if getattr(args, "wc", None) is None:
        raise _UsageError("no weak combinatorics given (use --wc d,n2,n3,n4)")
    try:
        return WeakCombinatorics.parse(args.wc, _parse_counts(getattr(args, "counts", None)))
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _config_from_args(args: argparse.Namespace) -> FilterConfig:
    mode = getattr(args, "mode", "paper-table")
    if mode == "paper-table":
        config = FilterConfig.paper_table()
    elif mode == "script-compat":
        config = FilterConfig.script_compat(cond4=getattr(args, "cond4", False))
    elif mode == "strict":
        constant = ShnurnikovMode(getattr(args, "shnurnikov", "strict-9"))
        config = FilterConfig.strict(constant)
    else:  # pragma: no cover - argparse restricts choices
        raise _UsageError(f"unknown mode {mode!r}")
    if getattr(args, "require_freeness_integrality", False):
        config = FilterConfig(
            filters=config.filters,
            include_shnurnikov=config.include_shnurnikov,
            shnurnikov_mode=config.shnurnikov_mode,
            include_freeness_integrality=True,
            search_caps=config.search_caps,
            name=config.name + "+freeness-integrality",
        )
    return config


def _limits_from_args(args: argparse.Namespace) -> SearchLimits:
    return SearchLimits(
        max_nodes=getattr(args, "limit_nodes", None),
        max_seconds=getattr(args, "limit_seconds", None),
    )


def _progress_printer(label: str):
    def report(nodes: int, elapsed: float) -> None:
        print(f"{label}: {nodes} nodes, {elapsed:.1f}s", file=sys.stderr)

    return report


def _emit(text: str, args: argparse.Namespace) -> None:
    path = getattr(args, "output", None)
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _emit_result(result: EnumerationResult, args: argparse.Namespace) -> None:
    fmt = getattr(args, "format", "csv")
    if fmt == "csv":
        _emit(to_csv(result), args)
    elif fmt == "json":
        _emit(to_json(result), args)
    else:
        _emit(to_markdown(result), args)


def _arrangement_from_args(args: argparse.Namespace):
    if getattr(args, "file", None):
        return load_arrangement(args.file)
    if getattr(args, "catalog", None):
        record = catalog(args.catalog)
        if record.arrangement is None:
            raise _UsageError(f"catalog entry {record.name!r} has no coordinates")
        return record.arrangement
    raise _UsageError("need --file or --catalog")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_enumerate(args: argparse.Namespace) -> int:
    result = enumerate_combinatorics(_parse_degree_range(args.d), _config_from_args(args), jobs=args.jobs)
    _emit_result(result, args)
    return EXIT_OK


def _cmd_m_list(args: argparse.Namespace) -> int:
    result = m_list(_parse_degree_range(args.d), _config_from_args(args), jobs=args.jobs)
    _emit_result(result, args)
    return EXIT_OK


def _cmd_classify(args: argparse.Namespace) -> int:
    wc = _wc_from_args(args)
    report = classify(wc, include_realizability=args.realize, limits=_limits_from_args(args))
    _emit(json.dumps(report_payload(report), indent=2) + "\n", args)
    core = ("consistency", "prop-bounds-upper", "prop-bounds-lower", "melchior", "shnurnikov-strict-9")
    failed = any(v.status is Status.FAIL for v in report.verdicts if v.filter in core)
    if any(out.status is SearchStatus.EXHAUSTED_NONE for _, out in report.realizability):
        failed = True
    return EXIT_NEGATIVE if failed else EXIT_OK


def _cmd_chern(args: argparse.Namespace) -> int:
    wc = _wc_from_args(args)
    try:
        pair = chern_numbers(wc)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    payload = {
        "c1_sq": pair.c1_sq,
        "c2": pair.c2,
        "ratio": str(pair.ratio) if pair.ratio is not None else None,
    }
    report = m_chern_invariant_check(wc)
    if report is not None:
        payload["m_arrangement"] = {
            "c2_expected": report.c2_expected,
            "c2_slack": report.c2_slack,
            "ratio_bound": str(report.ratio_bound),
            "ratio_slack": str(report.ratio_slack),
        }
    _emit(json.dumps(payload, indent=2) + "\n", args)
    return EXIT_OK


def _cmd_mdr(args: argparse.Namespace) -> int:
    arr = _arrangement_from_args(args)
    value = mdr(defining_polynomial(arr), max_side=None if args.unlimited else args.max_side)
    _emit(f"{value}\n", args)
    return EXIT_OK


def _cmd_free(args: argparse.Namespace) -> int:
    arr = _arrangement_from_args(args)
    cert = is_free_exact(arr, max_side=None if args.unlimited else args.max_side)
    payload = {
        "free": cert.free,
        "mdr": cert.mdr,
        "tjurina": cert.tjurina,
        "exponents": list(cert.exponents) if cert.exponents else None,
        "wc": {"d": cert.wc.d, **{f"n{k}": nk for k, nk in cert.wc.counts}},
    }
    if cert.note:
        payload["note"] = cert.note
    _emit(json.dumps(payload, indent=2) + "\n", args)
    return EXIT_OK if cert.free else EXIT_NEGATIVE


def _search_exit(status: SearchStatus) -> int:
    if status is SearchStatus.WITNESS_FOUND:
        return EXIT_OK
    if status is SearchStatus.EXHAUSTED_NONE:
        return EXIT_NEGATIVE
    return EXIT_LIMIT


def _cmd_realize(args: argparse.Namespace) -> int:
    wc = _wc_from_args(args)
    outcome = partial_linear_space_exists(wc, _limits_from_args(args), _progress_printer("realize"))
    print(f"realize: {outcome.status.value} after {outcome.nodes} nodes", file=sys.stderr)
    if outcome.witness is not None:
        _emit(witness_to_json(outcome.witness), args)
    else:
        _emit(json.dumps({"status": outcome.status.value}) + "\n", args)
    return _search_exit(outcome.status)


def _cmd_wiring(args: argparse.Namespace) -> int:
    wc = _wc_from_args(args)
    outcome = wiring_search(wc, _limits_from_args(args), _progress_printer("wiring"))
    print(f"wiring: {outcome.status.value} after {outcome.nodes} nodes", file=sys.stderr)
    if outcome.witness is not None:
        _emit(witness_to_json(outcome.witness), args)
    else:
        _emit(json.dumps({"status": outcome.status.value}) + "\n", args)
    return _search_exit(outcome.status)


def _cmd_pack(args: argparse.Namespace) -> int:
    result = packing_max(args.v, args.k, _limits_from_args(args), _progress_printer("pack"))
    payload = {
        "v": args.v,
        "block_size": args.k,
        "max_blocks": result.max_blocks,
        "proved_optimal": result.proved_optimal,
        "witness": [list(b) for b in result.witness.blocks],
    }
    print(f"pack: explored {result.nodes} nodes", file=sys.stderr)
    _emit(json.dumps(payload, indent=2) + "\n", args)
    return EXIT_OK if result.proved_optimal else EXIT_LIMIT


def _cmd_catalog(args: argparse.Namespace) -> int:
    if args.name is None:
        lines = []
        for name in catalog_names():
            if "(d)" in name:
                lines.append(f"{name:18} parametrized family (pass a degree, e.g. {name.replace('(d)', '(5)')})")
            else:
                record = catalog(name)
                coords = "coordinates" if record.arrangement else "combinatorics only"
                lines.append(f"{name:18} {record.wc.label():18} {record.field_tag:12} {coords}")
        _emit("\n".join(lines) + "\n", args)
        return EXIT_OK
    try:
        record = catalog(args.name)
    except UnknownCatalogNameError as exc:
        raise _UsageError(f"unknown catalog entry {exc}") from exc
    payload: dict = {
        "name": record.name,
        "wc": {"d": record.wc.d, **{f"n{k}": nk for k, nk in record.wc.counts}},
        "field": record.field_tag,
        "simplicial": record.simplicial,
    }
    if record.arrangement is not None:
        payload["lines"] = [list(line) for line in record.arrangement.lines]
    if record.defining_product is not None:
        payload["defining_product"] = record.defining_product
    if record.notes:
        payload["notes"] = list(record.notes)
    _emit(json.dumps(payload, indent=2) + "\n", args)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.witness == "-":
        text = sys.stdin.read()
    else:
        with open(args.witness, "r", encoding="utf-8") as handle:
            text = handle.read()
    witness = witness_from_json(text)
    expected = None
    if args.wc is not None:
        expected = WeakCombinatorics.parse(args.wc, _parse_counts(args.counts))
    try:
        realized = validate_witness(witness, expected)
    except ValueError as exc:
        print(f"verify: INVALID - {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    _emit(f"valid witness: realizes {realized.label()}\n", args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_wc_options(sub: argparse.ArgumentParser, with_file: bool = False) -> None:
    sub.add_argument("--wc", help="weak combinatorics as d,n2,n3,n4")
    sub.add_argument("--counts", action="append", metavar="K=V", help="extra multiplicity counts")
    if with_file:
        sub.add_argument("--file", help="arrangement file (counts are computed from the lines)")


def _add_limit_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--limit-nodes", type=int, default=None, help="search node budget (0 = unlimited)")
    sub.add_argument("--limit-seconds", type=float, default=None, help="wall-clock budget (off by default)")


def _add_enum_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--d", required=True, help="degree or range, e.g. 7 or 3..18")
    sub.add_argument("--mode", choices=("paper-table", "script-compat", "strict"), default="paper-table")
    sub.add_argument("--cond4", action="store_true", help="script-compat only: also apply its constant-8 Shnurnikov condition")
    sub.add_argument("--shnurnikov", choices=("strict-9", "script-8"), default="strict-9", help="strict mode: which constant")
    sub.add_argument("--require-freeness-integrality", action="store_true", help="drop rows whose freeness quadratic has no integer root")
    sub.add_argument("--format", choices=("csv", "json", "md"), default="csv")
    sub.add_argument("--jobs", type=int, default=1, help="worker threads (output is identical for any value)")
    sub.add_argument("--output", help="write to file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freelines",
        description="exact combinatorics, freeness and realizability of line arrangements with at most quadruple points",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("enumerate", help="admissible weak combinatorics over a degree range")
    _add_enum_options(sub)
    sub.set_defaults(func=_cmd_enumerate)

    sub = subs.add_parser("m-list", help="vectors attaining the maximal total Tjurina number")
    _add_enum_options(sub)
    sub.set_defaults(func=_cmd_m_list)

    sub = subs.add_parser("classify", help="full filter report for one vector")
    _add_wc_options(sub, with_file=True)
    sub.add_argument("--realize", action="store_true", help="also run the realizability searches")
    _add_limit_options(sub)
    sub.add_argument("--output", help="write to file instead of stdout")
    sub.set_defaults(func=_cmd_classify)

    sub = subs.add_parser("chern", help="log-surface Chern numbers of a vector")
    _add_wc_options(sub, with_file=True)
    sub.add_argument("--output", help="write to file instead of stdout")
    sub.set_defaults(func=_cmd_chern)

    sub = subs.add_parser("mdr", help="minimal degree of a Jacobian relation, from line equations")
    sub.add_argument("--file", help="arrangement file")
    sub.add_argument("--catalog", help="catalog entry with coordinates")
    sub.add_argument("--max-side", type=int, default=512, help="matrix size cap")
    sub.add_argument("--unlimited", action="store_true", help="lift the matrix size cap")
    sub.add_argument("--output", help="write to file instead of stdout")
    sub.set_defaults(func=_cmd_mdr)

    sub = subs.add_parser("free", help="exact freeness test from line equations")
    sub.add_argument("--file", help="arrangement file")
    sub.add_argument("--catalog", help="catalog entry with coordinates")
    sub.add_argument("--max-side", type=int, default=512, help="matrix size cap")
    sub.add_argument("--unlimited", action="store_true", help="lift the matrix size cap")
    sub.add_argument("--output", help="write to file instead of stdout")
    sub.set_defaults(func=_cmd_free)

    sub = subs.add_parser("realize", help="search for a partial linear space with the given counts")
    _add_wc_options(sub)
    _add_limit_options(sub)
    sub.add_argument("--output", help="write witness JSON to file")
    sub.set_defaults(func=_cmd_realize)

    sub = subs.add_parser("wiring", help="search for a wiring diagram with the given counts")
    _add_wc_options(sub)
    _add_limit_options(sub)
    sub.add_argument("--output", help="write witness JSON to file")
    sub.set_defaults(func=_cmd_wiring)

    sub = subs.add_parser("pack", help="maximum pairwise-compatible block family on v points")
    sub.add_argument("--v", type=int, required=True, help="ground set size")
    sub.add_argument("--k", type=int, choices=(3, 4), default=4, help="block size")
    _add_limit_options(sub)
    sub.add_argument("--output", help="write result JSON to file")
    sub.set_defaults(func=_cmd_pack)

    sub = subs.add_parser("catalog", help="list named arrangements, or show one")
    sub.add_argument("--name", help="catalog entry to show")
    sub.add_argument("--output", help="write to file instead of stdout")
    sub.set_defaults(func=_cmd_catalog)

    sub = subs.add_parser("verify", help="revalidate a witness JSON file")
    sub.add_argument("--witness", required=True, help="witness JSON path, or - for stdin")
    sub.add_argument("--wc", help="expected weak combinatorics d,n2,n3,n4")
    sub.add_argument("--counts", action="append", metavar="K=V")
    sub.add_argument("--output", help="write to file instead of stdout")
    sub.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DuplicateLineError, UnknownCatalogNameError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
