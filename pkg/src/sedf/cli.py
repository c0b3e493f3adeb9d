"""Command-line entry point: ``sedf <subcommand> ...``.

Exit codes: 0 success, 1 a verification failed or the query answer is
NONEXISTENT, 2 usage error or malformed input, 3 internal assertion.
Errors are reported as one JSON line on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import __version__
from .constructions import ConstructionError, construct_k2plus1, construct_m11_sedf, paley_sedf
from .designs import MalformedFamilyError, NotAnSEDFError, SpectrumInconsistency, spectrum, verify_edf, verify_pds, verify_sedf
from .filters import PRESETS, Status, classify_range, filter_classify, group_constraints
from .formats import FORMATTERS, ResultCache, cache_key, default_cache_dir, dump_family, load_family, parse_document, parse_sets, verdict_to_dict
from .groups import GroupSpecError, enumerate_abelian_groups, parse_group_spec
from .params import parse_params
from .search import SearchBudgetExceeded, exhaustive_sedf_search

log = logging.getLogger("sedf")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


@dataclass
class CommandConfig:
    subcommand: str
    args: argparse.Namespace
    cache_dir: Path | None


def _diagnose(kind: str, message: str) -> None:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write_output(text: str, path: str | None) -> None:
    if path and path != "-":
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=1) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sedf", description="Strong external difference families: construct, verify, classify.")
    parser.add_argument("--version", action="version", version=f"sedf {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="progress on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="check a family file")
    p.add_argument("kind", choices=["sedf", "edf", "pds"])
    p.add_argument("--family", default="-", help="family file, '-' for stdin")
    p.add_argument("--params", help="v,k,lambda,mu (pds only)")

    p = sub.add_parser("construct", help="emit a known family")
    csub = p.add_subparsers(dest="which", required=True, parser_class=_Parser)
    csub.add_parser("m11", help="the near-complete (243,11,22,20) family in Z_3^5")
    c = csub.add_parser("k2plus1", help="(k^2+1,2,k,1) in the cyclic group")
    c.add_argument("--k", type=int, required=True)
    c = csub.add_parser("paley", help="(p,2,(p-1)/2,(p-1)/4) from the squares mod p")
    c.add_argument("--p", type=int, required=True)
    for c in csub.choices.values():
        c.add_argument("-o", "--output", help="write here instead of stdout")

    p = sub.add_parser("spectrum", help="character values of an SEDF")
    p.add_argument("--family", default="-")

    p = sub.add_parser("classify", help="run the filters over a parameter range")
    p.add_argument("--v-max", type=int)
    p.add_argument("--m-min", type=int, default=2)
    p.add_argument("--m-max", type=int)
    p.add_argument("--params", help="classify a single v,m,k,lambda instead of a range")
    p.add_argument("--preset", choices=sorted(PRESETS), default="full")
    p.add_argument("--format", choices=sorted(FORMATTERS), default="csv")
    p.add_argument("--include-near-complete", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-o", "--output")
    p.add_argument("--cache-dir", help="defaults to $SEDF_CACHE_DIR or ~/.cache/sedf")
    p.add_argument("--no-cache", action="store_true")

    p = sub.add_parser("groups", help="per-group exponent constraints")
    p.add_argument("--params", required=True)

    p = sub.add_parser("search", help="exhaustive search in small groups")
    p.add_argument("--params", required=True)
    p.add_argument("--group", help="group spec; default: every abelian group of order v")
    p.add_argument("--budget", type=int, default=10**7)
    return parser


# -- subcommands ------------------------------------------------------------------------


def cmd_verify(args) -> int:
    text = _read_input(args.family)
    if args.kind == "pds":
        if not args.params:
            raise UsageError("verify pds needs --params v,k,lambda,mu")
        params = _int_tuple(args.params, 4)
        G, sets = parse_sets(parse_document(text))
        reports = [verify_pds(G, s, params) for s in sets]
        _emit_json({"kind": "pds", "passed": all(r.passed for r in reports), "sets": [r.to_dict() for r in reports]})
        return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL
    F = load_family(text)
    rep = verify_sedf(F) if args.kind == "sedf" else verify_edf(F)
    out = rep.to_dict()
    out["params"] = list(F.declared)
    _emit_json(out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_construct(args) -> int:
    if args.which == "m11":
        F = construct_m11_sedf()
    elif args.which == "k2plus1":
        if args.k < 2:
            raise UsageError("--k must be at least 2")
        F = construct_k2plus1(args.k)
    else:
        try:
            F = paley_sedf(args.p)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if not verify_sedf(F, flags=False).passed:
        raise ConstructionError(f"constructed {args.which} family failed verification")
    _write_output(dump_family(F), args.output)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    F = load_family(_read_input(args.family))
    _emit_json(spectrum(F).to_dict())
    return EXIT_OK


def cmd_classify(args, cache_dir: Path | None) -> int:
    if args.params:
        P = parse_params(args.params)
        vd = filter_classify(P, args.preset, collect_all=False)
        _emit_json(verdict_to_dict(vd))
        return EXIT_FAIL if vd.status == Status.NONEXISTENT else EXIT_OK
    if args.v_max is None:
        raise UsageError("classify needs --v-max or --params")
    if args.v_max < 5:
        raise UsageError("--v-max must be at least 5")
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    key = cache_key(args.preset, args.v_max, args.m_min, args.m_max, args.include_near_complete)
    cache = ResultCache(cache_dir) if cache_dir else None
    C = cache.get(key) if cache else None
    if C is None:
        C = classify_range(args.v_max, args.m_min, args.m_max, args.preset,
                           include_near_complete=args.include_near_complete, jobs=args.jobs)
        if cache:
            try:
                cache.put(key, C)
            except OSError as exc:
                log.warning("could not write cache: %s", exc)
    else:
        log.info("using cached classification %s", key)
    log.info("summary: %s", C.summary())
    _write_output(FORMATTERS[args.format](C), args.output)
    return EXIT_OK


def cmd_groups(args) -> int:
    P = parse_params(args.params)
    vd = filter_classify(P, "full")
    if vd.status == Status.NONEXISTENT:
        _emit_json({"params": list(P.astuple()), "verdict": verdict_to_dict(vd), "groups": []})
        return EXIT_FAIL
    rep = group_constraints(P)
    out = {
        "params": list(P.astuple()),
        "verdict": verdict_to_dict(vd),
        "pairs": [[ab.a, ab.b] for ab in rep.pairs],
        "groups": [
            {
                "group": str(g.group),
                "allowed": g.allowed,
                "exponent_bounds": {str(p): b for p, b in g.exponent_bounds.items()},
                "reasons": g.reasons,
            }
            for g in rep.groups
        ],
    }
    if rep.scvp is not None:
        out["scvp_counts"] = [str(c) for c in rep.scvp]
    _emit_json(out)
    return EXIT_OK if any(g.allowed for g in rep.groups) else EXIT_FAIL


def cmd_search(args) -> int:
    P = parse_params(args.params)
    groups = [parse_group_spec(args.group)] if args.group else enumerate_abelian_groups(P.v)
    for G in groups:
        if G.order != P.v:
            raise UsageError(f"group {G} has order {G.order}, expected {P.v}")
    results = []
    for G in groups:
        log.info("searching %s", G)
        fams = exhaustive_sedf_search(G, P.m, P.k, P.lam, budget=args.budget)
        results.append({"group": str(G), "families": [json.loads(dump_family(F)) for F in fams]})
    _emit_json({"params": list(P.astuple()), "results": results})
    return EXIT_OK if any(r["families"] for r in results) else EXIT_FAIL


def _int_tuple(text: str, n: int) -> tuple[int, ...]:
    try:
        vals = tuple(int(t) for t in text.replace("(", "").replace(")", "").split(","))
    except ValueError:
        raise UsageError(f"expected {n} comma-separated integers, got {text!r}") from None
    if len(vals) != n:
        raise UsageError(f"expected {n} comma-separated integers, got {text!r}")
    return vals


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        _diagnose("usage", str(exc))
        return EXIT_USAGE
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    cache_dir = None
    if args.command == "classify" and not args.no_cache:
        cache_dir = Path(args.cache_dir) if args.cache_dir else default_cache_dir()
    config = CommandConfig(args.command, args, cache_dir)
    try:
        if config.subcommand == "verify":
            return cmd_verify(args)
        if config.subcommand == "construct":
            return cmd_construct(args)
        if config.subcommand == "spectrum":
            return cmd_spectrum(args)
        if config.subcommand == "classify":
            return cmd_classify(args, config.cache_dir)
        if config.subcommand == "groups":
            return cmd_groups(args)
        return cmd_search(args)
    except (UsageError, MalformedFamilyError, GroupSpecError) as exc:
        _diagnose("usage" if isinstance(exc, UsageError) else "malformed-input", str(exc))
        return EXIT_USAGE
    except (NotAnSEDFError, SpectrumInconsistency, SearchBudgetExceeded) as exc:
        _diagnose(type(exc).__name__, str(exc))
        return EXIT_FAIL
    except (ConstructionError, AssertionError) as exc:
        _diagnose("internal", str(exc) or type(exc).__name__)
        return EXIT_INTERNAL
    except ValueError as exc:
        _diagnose("invalid-input", str(exc))
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
