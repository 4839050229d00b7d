"""
Command-line interface.

    python -m app canon 0xFFFF3777C8880000 --stats
    python -m app classify functions.txt --jobs 4 --out classes.csv
    python -m app cuts circuit.aag --cut-size 6 | python -m app classify -
    python -m app verify --inputs 3 --exhaustive
    python -m app bench functions.txt --methods inf,baseline
    python -m app signatures 5DAE51AE5DA251A2
    python -m app serve --port 8000

Exit codes: 0 success, 1 input error, 2 internal invariant violation.
"""
import argparse
import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional, Sequence, TextIO

from pydantic import ValidationError

from app.config import Settings, get_settings
from app.models.canonical import Method, SymmetryPolicy
from app.models.classify import BenchRow, ItemError
from app.models.cli import CliConfig
from app.models.errors import InvariantViolation, NpnError
from app.services.aig_parser import load_aiger
from app.services.canonical import CanonicalEngine
from app.services.classifier import Classifier
from app.services.cut_enumerator import CutEnumerator
from app.services.function_io import read_functions, write_functions
from app.services.report import (
    canon_line,
    summary_lines,
    write_bench_csv,
    write_class_csv,
    write_stats_jsonl,
)
from app.services.signatures import signature_report
from app.services.truth_table import parse_hex
from app.services.verifier import PIPELINE_METHODS, Verifier

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2


class NpnArgumentParser(argparse.ArgumentParser):
    """Argument errors are input errors: exit 1, not argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _method_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _add_canon_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--method", choices=[m.value for m in Method], help="Canonicalization method (default inf-plus)")
    parser.add_argument("--symmetry-policy", dest="symmetry_policy",
                        choices=[p.value for p in SymmetryPolicy], help="Symmetry pruning (default exact)")
    parser.add_argument("--inputs", type=int, help="Input count; inferred from the digit count when omitted")
    parser.add_argument("--sers-base", dest="sers_base", type=int, help="Base of the exponential row sums (default 3)")
    parser.add_argument("--exhaustive-cap", dest="exhaustive_cap", type=int,
                        help="Largest input count the exhaustive method accepts (default 6)")


def build_parser() -> argparse.ArgumentParser:
    parser = NpnArgumentParser(prog="npn", description="Exact NPN classification of Boolean functions")
    commands = parser.add_subparsers(dest="command", required=True)

    canon = commands.add_parser("canon", help="Canonical form and witness of each function")
    canon.add_argument("source", help="Hex table, a truth-table file, or - for stdin")
    _add_canon_flags(canon)
    canon.add_argument("--stats", action="store_true", help="Append per-stage enumeration counters")
    canon.add_argument("--out", type=Path, help="Output file (default stdout)")

    classify = commands.add_parser("classify", help="Bucket a truth-table file into NPN classes")
    classify.add_argument("source", help="Truth-table file, or - for stdin")
    _add_canon_flags(classify)
    classify.add_argument("--jobs", type=int, help="Worker processes (default 1)")
    classify.add_argument("--out", type=Path, help="Class CSV (default stdout)")
    classify.add_argument("--report", type=Path, help="Run statistics as JSON lines")
    classify.add_argument("--stats", action="store_true", help="Log the cache statistics as well")

    cuts = commands.add_parser("cuts", help="Extract K-cut truth tables from an AIGER circuit")
    cuts.add_argument("source", help=".aag or .aig file")
    cuts.add_argument("--cut-size", dest="cut_size", type=int, help="Largest cut K (default 8)")
    cuts.add_argument("--cut-limit", dest="cut_limit", type=int, help="Cuts kept per node (default 64)")
    cuts.add_argument("--dedupe", action="store_true", help="Drop repeated tables")
    cuts.add_argument("--out", type=Path, help="Output file (default stdout)")

    verify = commands.add_parser("verify", help="Run the invariant suites")
    _add_canon_flags(verify)
    verify.add_argument("--methods", type=_method_list, help="Comma-separated pipeline methods (default all)")
    verify.add_argument("--samples", type=int, help="Random trials")
    verify.add_argument("--exhaustive", action="store_true", help="Sweep every table (n <= 4)")
    verify.add_argument("--seed", type=int, help="Seed of the random trials")

    bench = commands.add_parser("bench", help="Compare methods on one corpus")
    bench.add_argument("source", help="Truth-table file, or - for stdin")
    _add_canon_flags(bench)
    bench.add_argument("--methods", type=_method_list, help="Comma-separated methods (default inf,inf-plus,baseline)")
    bench.add_argument("--jobs", type=int, help="Worker processes (default 1)")
    bench.add_argument("--out", type=Path, help="Comparison CSV (default stdout)")

    signatures = commands.add_parser("signatures", help="Dump every signature of one function")
    signatures.add_argument("source", help="Hex table")
    signatures.add_argument("--inputs", type=int, help="Input count")
    signatures.add_argument("--sers-base", dest="sers_base", type=int, help="Base of the exponential row sums")

    serve = commands.add_parser("serve", help="Start the HTTP API")
    serve.add_argument("--host", help="Bind address")
    serve.add_argument("--port", type=int, help="Port")
    return parser


def build_config(args: argparse.Namespace, settings: Settings) -> CliConfig:
    """Settings first, explicit flags on top, then validation."""
    values = dict(
        method=settings.method,
        symmetry_policy=settings.symmetry_policy,
        sers_base=settings.sers_base,
        cut_size=settings.cut_size,
        cut_limit=settings.cut_limit,
        jobs=settings.jobs,
        seed=settings.seed,
        exhaustive_cap=settings.exhaustive_cap,
        host=settings.host,
        port=settings.port,
    )
    for key, value in vars(args).items():
        if value is not None and key in CliConfig.model_fields:
            values[key] = value
    return CliConfig(**values)


@contextmanager
def _output(path: Optional[Path]) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", newline="") as stream:
        yield stream


def _read_lines(source: str) -> list[str]:
    if source == "-":
        return sys.stdin.read().splitlines()
    return Path(source).read_text().splitlines()


def _report_errors(errors: Sequence[ItemError]) -> None:
    for error in errors:
        where = f"line {error.line}: " if error.line is not None else ""
        print(f"{where}{error.message} ('{error.text}')", file=sys.stderr)


def cmd_canon(config: CliConfig, settings: Settings) -> int:
    source = config.source
    if source == "-" or Path(source).is_file():
        records, errors = read_functions(_read_lines(source), config.inputs)
    else:
        records, errors = read_functions([source], config.inputs)

    engine = CanonicalEngine(config.method, config.sers_base, config.symmetry_policy, config.exhaustive_cap)
    with _output(config.out) as out:
        for line, f in records:
            try:
                result = engine.canonicalize(f)
            except InvariantViolation:
                raise
            except NpnError as e:
                errors.append(ItemError(line=line, text=str(f), message=str(e)))
                continue
            out.write(canon_line(f, result, config.stats) + "\n")

    errors.sort(key=lambda e: e.line or 0)
    _report_errors(errors)
    return EXIT_INPUT if errors else EXIT_OK


def _load_corpus(config: CliConfig) -> tuple[list[int], list, list[ItemError]]:
    records, errors = read_functions(_read_lines(config.source), config.inputs)
    return [line for line, _ in records], [f for _, f in records], errors


def cmd_classify(config: CliConfig, settings: Settings) -> int:
    lines, functions, errors = _load_corpus(config)
    classifier = Classifier(
        config.method, config.sers_base, config.symmetry_policy, config.exhaustive_cap,
        config.jobs, settings.cache_entries,
    )
    classes, stats, item_errors = classifier.classify(functions, lines)
    stats.error_count += len(errors)
    errors = sorted(errors + item_errors, key=lambda e: e.line or 0)

    with _output(config.out) as out:
        write_class_csv(classes, out)
    _report_errors(errors)
    for line in summary_lines(stats):
        print(line, file=sys.stderr)
    if config.stats:
        print(f"cache {stats.cache}", file=sys.stderr)
    if config.report is not None:
        with open(config.report, "w") as stream:
            write_stats_jsonl(stats, errors, stream)
    return EXIT_OK


def cmd_cuts(config: CliConfig, settings: Settings) -> int:
    enumerator = CutEnumerator(config.cut_size, config.cut_limit)
    aig = load_aiger(config.source)
    tables = enumerator.extract(aig, config.dedupe)
    with _output(config.out) as out:
        write_functions(tables, out)
    return EXIT_OK


def cmd_verify(config: CliConfig, settings: Settings) -> int:
    if config.inputs is None:
        raise NpnError("verify needs --inputs")
    verifier = Verifier(
        config.methods or PIPELINE_METHODS,
        config.sers_base, config.symmetry_policy, config.exhaustive_cap, config.seed,
    )
    report = verifier.run(config.inputs, config.samples, config.exhaustive)
    for line in report.summary_lines():
        print(line)
    return EXIT_OK if report.passed else EXIT_INTERNAL


def cmd_bench(config: CliConfig, settings: Settings) -> int:
    lines, functions, errors = _load_corpus(config)
    _report_errors(errors)
    methods = config.methods or list(PIPELINE_METHODS)

    rows = []
    reference = None
    for method in methods:
        classifier = Classifier(
            method, config.sers_base, config.symmetry_policy, config.exhaustive_cap,
            config.jobs, settings.cache_entries,
        )
        classes, stats, item_errors = classifier.classify(functions, lines)
        _report_errors(item_errors)
        rows.append(BenchRow(
            method=method.value,
            function_count=stats.function_count,
            class_count=stats.class_count,
            wall_time=stats.wall_time,
            counters=stats.counters,
            timings=stats.timings,
        ))
        if reference is None:
            reference = (method, classes)
        elif not classes.same_partition(reference[1]):
            raise InvariantViolation(
                f"methods {reference[0].value} and {method.value} disagree on the partition"
            )

    with _output(config.out) as out:
        write_bench_csv(rows, out)
    return EXIT_OK


def cmd_signatures(config: CliConfig, settings: Settings) -> int:
    f = parse_hex(config.source, config.inputs)
    print(signature_report(f, config.sers_base).model_dump_json(indent=2))
    return EXIT_OK


def cmd_serve(config: CliConfig, settings: Settings) -> int:
    import uvicorn
    uvicorn.run("app.main:app", host=config.host, port=config.port, reload=settings.debug)
    return EXIT_OK


COMMANDS = {
    "canon": cmd_canon,
    "classify": cmd_classify,
    "cuts": cmd_cuts,
    "verify": cmd_verify,
    "bench": cmd_bench,
    "signatures": cmd_signatures,
    "serve": cmd_serve,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper(), logging.INFO),
        format="%(asctime)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )

    try:
        config = build_config(args, settings)
    except ValidationError as e:
        for error in e.errors():
            field = ".".join(str(part) for part in error["loc"])
            print(f"error: --{field.replace('_', '-')}: {error['msg']}", file=sys.stderr)
        return EXIT_INPUT

    try:
        return COMMANDS[config.command](config, settings)
    except InvariantViolation as e:
        logger.error(f"Internal invariant violated: {e}")
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except NpnError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
