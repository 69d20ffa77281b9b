"""Command-line front end: check | ask | rewrite | run | gen-belts."""
import argparse
import json
import logging
import statistics
import sys
from pathlib import Path

from elars.acyclicity import tfree, temporal_grounding, verdict_report
from elars.conf import load_settings
from elars.core import Timeline
from elars.errors import ElarsError
from elars.reason import (
    AnswerOptions, BeltConfig, Verdict, answer, run_pointwise, stream_batches, write_belts,
)
from elars.rewrite import (
    clip_windows, drop_out_of_scope, eliminate_diamond, rewrite_program, rewrite_stream, rewrite_timeline,
)
from elars.syntax import (
    ParseError, ParseErrorKind, SourceSpan, parse_program, parse_query, parse_stream, render_exrules,
)

log = logging.getLogger('elars')

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2
EXIT_UNKNOWN = 3

VERDICT_CODES = {Verdict.YES: EXIT_YES, Verdict.NO: EXIT_NO, Verdict.UNKNOWN: EXIT_UNKNOWN}


def parse_timeline(text):
    """``L..H`` with ``L = 0``."""
    low, sep, high = text.partition('..')
    try:
        low, high = int(low), int(high)
    except ValueError:
        raise argparse.ArgumentTypeError('timeline must look like 0..H, got %r' % text)
    if not sep or low != 0 or high < 0:
        raise argparse.ArgumentTypeError('timeline must look like 0..H, got %r' % text)
    return Timeline(low, high)


def _read(path):
    raw = Path(path).read_bytes()
    try:
        return raw.decode('utf-8')
    except UnicodeDecodeError as exc:
        line_start = raw.rfind(b'\n', 0, exc.start) + 1
        span = SourceSpan(raw.count(b'\n', 0, exc.start) + 1, exc.start - line_start + 1, exc.start)
        raise ParseError(ParseErrorKind.LEXICAL, '%s is not UTF-8 text: %s' % (path, exc.reason), span) from exc


def _emit(record, out):
    out.write(json.dumps(record, sort_keys=True) + '\n')
    out.flush()


def cmd_check(args, settings, out):
    program = parse_program(_read(args.program))
    _emit(verdict_report(program, args.timeline), out)
    return EXIT_YES


def cmd_ask(args, settings, out):
    program = parse_program(_read(args.program))
    data = parse_stream(_read(args.stream))
    query = parse_query(args.query)

    trace = None
    handle = None
    if args.trace:
        handle = open(args.trace, 'w', encoding='utf-8')

        def trace(record):
            _emit(record, handle)
    try:
        options = AnswerOptions.from_settings(settings, fuel=args.fuel,
                                              require_gate=settings.require_gate and not args.no_gate,
                                              trace=trace)
        result = answer(program, data, args.at, query, options)
    finally:
        if handle is not None:
            handle.close()
    _emit(result.as_dict(), out)
    return VERDICT_CODES[result.verdict]


def cmd_rewrite(args, settings, out):
    program = parse_program(_read(args.program))
    if args.mode == 'tgrnd':
        if args.timeline is None:
            raise argparse.ArgumentTypeError('--mode tgrnd needs --timeline')
        out.write(render_exrules(tfree(temporal_grounding(program, args.timeline))))
        return EXIT_YES

    data = parse_stream(_read(args.stream)) if args.stream else None
    timeline = data.timeline if data is not None else args.timeline
    predicates = data.predicates() if data is not None else None
    if timeline is not None:
        program = clip_windows(drop_out_of_scope(program, timeline), timeline)
    output = rewrite_program(eliminate_diamond(program), predicates=predicates)
    facts = set()
    if data is not None:
        facts |= rewrite_stream(data)
    if timeline is not None:
        facts |= rewrite_timeline(timeline, output.rules)
    out.write(render_exrules(output.rules, facts))
    return EXIT_YES


def cmd_run(args, settings, out):
    program = parse_program(_read(args.program))
    data = parse_stream(_read(args.stream))
    window = args.window or settings.window
    options = AnswerOptions.from_settings(settings, fuel=args.fuel,
                                          require_gate=settings.require_gate and not args.no_gate)
    code = EXIT_YES
    timings = []
    for report in run_pointwise(program, stream_batches(data), window, options):
        _emit(report.as_dict(), out)
        timings.append(report.stats['ms'])
        if not report.stats['saturated']:
            code = EXIT_UNKNOWN
    if timings:
        log.warning('%d ticks, median %.2f ms, max %.2f ms', len(timings),
                 statistics.median(timings), max(timings))
    return code


def cmd_gen_belts(args, settings, out):
    cfg = BeltConfig.from_settings(settings, belts=args.belts, horizon=args.horizon, p1=args.p1,
                                   p2=args.p2, p3=args.p3, seed=args.seed)
    program_path, stream_path = write_belts(cfg, args.out)
    _emit({'program': str(program_path), 'stream': str(stream_path)}, out)
    return EXIT_YES


def build_parser():
    parser = argparse.ArgumentParser(prog='elars', description='LARS+ stream reasoning with existential rules.')
    parser.add_argument('--config', help='YAML settings file.')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='More logging on stderr.')
    commands = parser.add_subparsers(dest='command', required=True)

    check = commands.add_parser('check', help='Report the LWA and TLWA verdicts of a program.')
    check.add_argument('--program', required=True)
    check.add_argument('--timeline', type=parse_timeline)
    check.set_defaults(handler=cmd_check)

    ask = commands.add_parser('ask', help='Answer a boolean conjunctive query at one time point.')
    ask.add_argument('--program', required=True)
    ask.add_argument('--stream', required=True)
    ask.add_argument('--at', type=int, required=True)
    ask.add_argument('--query', required=True)
    ask.add_argument('--fuel', type=int, help='Round limit; allows programs that pass no gate.')
    ask.add_argument('--no-gate', action='store_true', help='Chase ungated programs with the default fuel.')
    ask.add_argument('--trace', help='Write one NDJSON record per chase round to this file.')
    ask.set_defaults(handler=cmd_ask)

    rewrite = commands.add_parser('rewrite', help='Print the existential-rule rewriting.')
    rewrite.add_argument('--program', required=True)
    rewrite.add_argument('--stream')
    rewrite.add_argument('--timeline', type=parse_timeline)
    rewrite.add_argument('--mode', choices=('full', 'tgrnd'), default='full')
    rewrite.set_defaults(handler=cmd_rewrite)

    run = commands.add_parser('run', help='Evaluate a stream tick by tick, one NDJSON line per tick.')
    run.add_argument('--program', required=True)
    run.add_argument('--stream', required=True)
    run.add_argument('--window', type=int)
    run.add_argument('--fuel', type=int)
    run.add_argument('--no-gate', action='store_true')
    run.set_defaults(handler=cmd_run)

    belts = commands.add_parser('gen-belts', help='Write the conveyor-belt program and a random stream.')
    belts.add_argument('--belts', type=int)
    belts.add_argument('--horizon', type=int)
    belts.add_argument('--p1', type=float)
    belts.add_argument('--p2', type=float)
    belts.add_argument('--p3', type=float)
    belts.add_argument('--seed', type=int)
    belts.add_argument('--out', required=True)
    belts.set_defaults(handler=cmd_gen_belts)
    return parser


def _configure_logging(settings, verbose):
    level = getattr(logging, str(settings.log_level).upper(), logging.WARNING)
    if verbose:
        level = logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level,
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = load_settings(args.config)
        _configure_logging(settings, args.verbose)
        return args.handler(args, settings, out)
    except (ElarsError, argparse.ArgumentTypeError, OSError) as exc:
        log.error('%s', exc)
    return EXIT_ERROR
