"""
Mulambda Command Line
=====================
Entry point for analysis runs.

Subcommands:
    analyze SPEC...          lattice summary and mu / lambda per class
    verify SPEC...           (mu, lambda)-property verdict, exit 1 on failure
    family NAME --q Q        closed-form table rows, optionally cross-checked
    suite CORPUS             verify every corpus line against its expectation
    cache info|clear         inspect or empty the lattice cache

Exit codes: 0 verified / match, 1 finding, 2 operational error.
"""

import argparse
import json
import logging
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from .analysis import GroupAnalysis, analyze_group
from .config import (
    CACHE_DIR,
    DEFAULT_FORMAT,
    DEFAULT_THREADS,
    ELEMENT_CAP,
    EXIT_ERROR,
    EXIT_FINDING,
    EXIT_OK,
    FAMILY_NAMES,
    LOG_FORMAT,
    LOG_LEVEL,
    OUTPUT_FORMATS,
    SUBGROUP_CAP,
)
from .errors import CorpusError, MulambdaError
from .families import cross_check_family, family_rows, family_spec, rows_to_frame, table_self_check
from .lattice import normal_subgroups
from .lattice_cache import LatticeCache
from .models import PropertyReport, RunConfig, SuiteResult, Verdict
from .property_checks import check_property, minimality

logger = logging.getLogger(__name__)

EXPECT_PATTERN = re.compile(r"^(?P<spec>.*?)\s+EXPECT\s+(?P<verdict>pass|fail)\s*$", re.IGNORECASE)


class MulambdaEngine:
    """
    Runs analyses and verifications for a resolved RunConfig.

    Every unit of work returns a result dict with success / error /
    processing_time; MulambdaError never escapes process_spec.
    """

    def __init__(self, config: RunConfig):
        self.config = config
        self.cache = LatticeCache(config.cache_dir or CACHE_DIR, persistent=config.use_cache)

    def analyze(self, spec: str) -> GroupAnalysis:
        return analyze_group(
            spec,
            element_cap=self.config.element_cap,
            subgroup_cap=self.config.subgroup_cap,
            threads=self.config.threads,
            cache=self.cache,
        )

    def process_spec(self, spec: str) -> Dict[str, Any]:
        """
        Verify one spec.

        Returns:
            Dict with the property report (or the error) and timing
        """
        start_time = time.time()
        result = {
            "spec": spec,
            "success": False,
            "error": None,
            "report": None,
            "processing_time": 0.0,
        }
        try:
            analysis = self.analyze(spec)
            result["report"] = check_property(analysis, maxint_only=self.config.maxint_only,
                                              threads=self.config.threads)
            result["success"] = True
        except MulambdaError as e:
            result["error"] = str(e)
            logger.warning("error processing %s: %s", spec, e)
        result["processing_time"] = time.time() - start_time
        return result

    def process_corpus(self, entries: List[Tuple[str, Optional[Verdict]]],
                       parallel: bool = False) -> List[SuiteResult]:
        """Run every corpus entry; results keep corpus order."""
        outcomes: Dict[int, Dict[str, Any]] = {}
        if parallel and len(entries) > 1:
            with ThreadPoolExecutor(max_workers=min(self.config.threads, len(entries))) as executor:
                future_to_index = {executor.submit(self.process_spec, spec): i
                                   for i, (spec, _) in enumerate(entries)}
                for future in as_completed(future_to_index):
                    outcomes[future_to_index[future]] = future.result()
        else:
            for i, (spec, _) in enumerate(entries):
                outcomes[i] = self.process_spec(spec)

        results = []
        for i, (spec, expected) in enumerate(entries):
            outcome = outcomes[i]
            report = outcome["report"]
            results.append(SuiteResult(
                spec=spec,
                expected=expected,
                observed=report.verdict if report is not None else None,
                error=outcome["error"],
                processing_time=outcome["processing_time"],
            ))
        return results


# =============================================================================
# CORPUS FILES
# =============================================================================

def parse_corpus(path: str) -> List[Tuple[str, Optional[Verdict]]]:
    """Lines "spec [EXPECT pass|fail]"; blank lines and # comments are skipped."""
    try:
        with open(path, encoding="utf-8") as f:
            lines = f.readlines()
    except OSError as e:
        raise CorpusError(path, e.strerror) from None

    entries = []
    for number, line in enumerate(lines, 1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        match = EXPECT_PATTERN.match(text)
        if match:
            spec, expected = match.group("spec").strip(), Verdict(match.group("verdict").lower())
        else:
            spec, expected = text, None
        if not spec or "EXPECT" in spec.upper().split():
            raise CorpusError(path, f"line {number}: malformed entry {text!r}")
        entries.append((spec, expected))
    return entries


# =============================================================================
# OUTPUT
# =============================================================================

def _emit_frame(frame: pd.DataFrame, output_format: str) -> None:
    if output_format == "csv":
        sys.stdout.write(frame.to_csv(index=False))
    elif frame.empty:
        print("(no rows)")
    else:
        print(frame.to_string(index=False))


def _emit_json(payload: Any) -> None:
    print(json.dumps(payload, indent=2))


def _report_frame(report: PropertyReport, failing_only: bool = False) -> pd.DataFrame:
    records = report.failing if failing_only else report.classes
    return pd.DataFrame([r.to_row() for r in records])


def _print_summary(pairs: Sequence[Tuple[str, Any]]) -> None:
    width = max(len(k) for k, _ in pairs)
    for key, value in pairs:
        print(f"{key:<{width}}  {value}")


def cmd_analyze(engine: MulambdaEngine, specs: List[str], output_format: str) -> int:
    payloads = []
    for spec in specs:
        analysis = engine.analyze(spec)
        report = check_property(analysis, maxint_only=engine.config.maxint_only, threads=engine.config.threads)
        minimal_simple, minimal_non_solvable = minimality(analysis)
        normal_count = len(normal_subgroups(analysis.lattice))

        if output_format == "json":
            payload = report.to_dict()
            payload.update({
                "subgroup_count": report.subgroup_count,
                "class_count": report.class_count,
                "normal_subgroup_count": normal_count,
                "minimal_simple": minimal_simple,
                "minimal_non_solvable": minimal_non_solvable,
            })
            payloads.append(payload)
        elif output_format == "csv":
            frame = _report_frame(report)
            frame.insert(0, "spec", report.spec)
            _emit_frame(frame, output_format)
        else:
            _print_summary([
                ("spec", report.spec),
                ("order", report.order),
                ("subgroups", report.subgroup_count),
                ("classes", report.class_count),
                ("|Phi|", report.frattini_order),
                ("|G'|", report.derived_order),
                ("solvable", report.solvable),
                ("normal subgroups", normal_count),
                ("minimal simple", minimal_simple),
                ("minimal non-solvable", minimal_non_solvable),
            ])
            print()
            _emit_frame(_report_frame(report), output_format)
            print(f"\nverdict: {report.verdict.value}\n")
    if output_format == "json":
        _emit_json(payloads[0] if len(payloads) == 1 else payloads)
    return EXIT_OK


def cmd_verify(engine: MulambdaEngine, specs: List[str], output_format: str) -> int:
    exit_code = EXIT_OK
    payloads = []
    for spec in specs:
        result = engine.process_spec(spec)
        if not result["success"]:
            raise MulambdaError(result["error"])
        report: PropertyReport = result["report"]
        if report.verdict == Verdict.FAIL:
            exit_code = EXIT_FINDING

        if output_format == "json":
            payloads.append(report.to_dict())
        elif output_format == "csv":
            frame = _report_frame(report)
            frame.insert(0, "spec", report.spec)
            _emit_frame(frame, output_format)
        else:
            print(f"{report.spec}: {report.verdict.value} "
                  f"({report.class_count} classes, {len(report.failing)} failing)")
            if report.failing:
                _emit_frame(_report_frame(report, failing_only=True), output_format)
    if output_format == "json":
        _emit_json(payloads[0] if len(payloads) == 1 else payloads)
    return exit_code


def cmd_family(engine: MulambdaEngine, family: str, q: int, cross_check: bool, output_format: str) -> int:
    rows = family_rows(family, q)
    consistent = table_self_check(rows)
    report = None
    if cross_check:
        report = cross_check_family(engine.analyze(family_spec(family, q)), rows, q)

    frame = rows_to_frame(rows)
    if output_format == "json":
        payload = {
            "family": family,
            "q": q,
            "rows": [row.to_dict() for row in rows],
            "self_check": consistent,
        }
        if report is not None:
            payload["cross_check"] = report.to_dict()
        _emit_json(payload)
    else:
        _emit_frame(frame, output_format)
        if output_format == "human":
            print(f"\nself-check: {'pass' if consistent else 'fail'}")
            if report is not None:
                print(f"cross-check against order {report.group_order}: {'match' if report.match else 'mismatch'}")
                for fingerprint in report.missing_from_table:
                    print(f"  missing from table:       {fingerprint}")
                for fingerprint in report.missing_from_brute_force:
                    print(f"  missing from brute force: {fingerprint}")

    if not consistent or (report is not None and not report.match):
        return EXIT_FINDING
    return EXIT_OK


def cmd_suite(engine: MulambdaEngine, corpus: str, output_format: str) -> int:
    entries = parse_corpus(corpus)
    results = engine.process_corpus(entries, parallel=engine.config.threads > 1)

    if output_format == "json":
        _emit_json({
            "corpus": corpus,
            "entries": [r.to_dict() for r in results],
            "all_met": all(r.met for r in results),
        })
    else:
        frame = pd.DataFrame([r.to_dict() for r in results],
                             columns=["spec", "expected", "observed", "met", "error"])
        _emit_frame(frame, output_format)
        if output_format == "human":
            met = sum(1 for r in results if r.met)
            print(f"\n{met}/{len(results)} expectations met")

    if any(r.error is not None for r in results):
        return EXIT_ERROR
    return EXIT_OK if all(r.met for r in results) else EXIT_FINDING


def cmd_cache(engine: MulambdaEngine, action: str, output_format: str) -> int:
    if action == "clear":
        payload = {"cache_dir": engine.cache.cache_dir, "removed": engine.cache.clear()}
    else:
        payload = engine.cache.info()
    if output_format == "json":
        _emit_json(payload)
    elif output_format == "csv":
        _emit_frame(pd.DataFrame([payload]), output_format)
    else:
        _print_summary(list(payload.items()))
    return EXIT_OK


# =============================================================================
# ARGUMENTS
# =============================================================================

EXIT_CODES_EPILOG = """exit codes:
  0  verified, tables match, or every corpus expectation met
  1  property failure, table mismatch or unmet corpus expectation
  2  operational error: bad spec, cap exceeded, outside the table regime,
     unreadable corpus, or any suite entry that raised an error
"""


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, default=DEFAULT_FORMAT)
    common.add_argument("--cache-dir", default=None, help="lattice cache directory (default: MULAMBDA_CACHE_DIR)")
    common.add_argument("--no-cache", action="store_true", help="keep lattices in memory only")
    common.add_argument("--element-cap", type=int, default=ELEMENT_CAP)
    common.add_argument("--subgroup-cap", type=int, default=SUBGROUP_CAP)
    common.add_argument("--maxint-only", action="store_true", help="evaluate classes inside MaxInt(G) only")
    common.add_argument("--threads", type=int, default=DEFAULT_THREADS)
    common.add_argument("--verbose", "-v", action="store_true", help="log progress at INFO to stderr")

    parser = argparse.ArgumentParser(prog="mulambda", description="Moebius functions on subgroup lattices",
                                     epilog=EXIT_CODES_EPILOG,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", parents=[common], help="lattice summary and mu/lambda table")
    analyze.add_argument("specs", nargs="+")

    verify = commands.add_parser("verify", parents=[common], help="check mu = t * lambda per class")
    verify.add_argument("specs", nargs="+")

    family = commands.add_parser("family", parents=[common], help="closed-form table rows")
    family.add_argument("family", choices=FAMILY_NAMES)
    family.add_argument("--q", type=int, required=True)
    family.add_argument("--cross-check", action="store_true", help="compare rows with brute force")

    suite = commands.add_parser("suite", parents=[common], help="verify a corpus file",
                                epilog=EXIT_CODES_EPILOG,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    suite.add_argument("corpus")

    cache = commands.add_parser("cache", parents=[common], help="inspect or clear the lattice cache")
    cache.add_argument("action", choices=["info", "clear"])
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        specs=list(getattr(args, "specs", []) or []),
        family=getattr(args, "family", None),
        q=getattr(args, "q", None),
        corpus=getattr(args, "corpus", None),
        output_format=args.output_format,
        cache_dir=args.cache_dir,
        use_cache=not args.no_cache,
        element_cap=args.element_cap,
        subgroup_cap=args.subgroup_cap,
        maxint_only=args.maxint_only,
        threads=args.threads,
        cross_check=getattr(args, "cross_check", False),
        cache_action=getattr(args, "action", None),
    )


def configure_logging(verbose: bool) -> None:
    level = logging.INFO if verbose else getattr(logging, LOG_LEVEL, logging.WARNING)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def run(config: RunConfig) -> int:
    engine = MulambdaEngine(config)
    if config.command == "analyze":
        return cmd_analyze(engine, config.specs, config.output_format)
    if config.command == "verify":
        return cmd_verify(engine, config.specs, config.output_format)
    if config.command == "family":
        return cmd_family(engine, config.family, config.q, config.cross_check, config.output_format)
    if config.command == "suite":
        return cmd_suite(engine, config.corpus, config.output_format)
    return cmd_cache(engine, config.cache_action, config.output_format)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = resolve_config(args)
    except ValueError as e:
        parser.print_usage(sys.stderr)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR

    start = time.time()
    try:
        exit_code = run(config)
    except MulambdaError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    logger.info("%s finished in %.2fs with exit code %d", config.command, time.time() - start, exit_code)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
