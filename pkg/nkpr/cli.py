"""Command-line entry point.

    nkpr classify --model m.json --input s.json [--metric trace|fidelity|hs]
    nkpr classify --model m.json --counts c.json --povm p.json
    nkpr demo dj --function f1|f2|f3|f4
    nkpr demo period --n N --r R [--x0 X] [--trials T]
    nkpr demo period --table v0,v1,... [--trials T]
    nkpr lattice verify --type boolean --atoms N [--samples S] [--tol T]
    nkpr lattice verify --type projection --dim D [--samples S] [--tol T]
    nkpr learn --scenario sc.json
    nkpr tomography --true-state s.json [--shots N]

Every subcommand also takes --seed K, --out PATH, --config PATH and --debug.
Exactly one JSON document goes to standard output; logs and error messages
go to standard error. Exit codes: 0 ok, 1 domain error, 2 usage error,
3 I/O error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, NoReturn, Optional, Sequence, TextIO, Tuple

from nkpr import __version__
from nkpr.adapters.console.json_report import JsonReportWriter
from nkpr.adapters.storage.file_config import FileConfigRepository
from nkpr.adapters.storage.file_documents import FileDocumentRepository
from nkpr.adapters.storage.json_codec import encode_error
from nkpr.application.controller import RecognitionController
from nkpr.domain.recognition import METRICS
from nkpr.errors import InputFileError, NkprError, UsageError
from nkpr.models.config import DEFAULT_SETTINGS, dotdict
from nkpr.models.demos import FUNCTION_TABLES
from nkpr.utils.debug import configure_logging, debug_msg, error_msg
from nkpr.utils.paths import get_config_path, resolve_input

logger = logging.getLogger(__name__)

SUBCOMMANDS = ('classify', 'demo', 'lattice', 'learn', 'tomography')
PATH_FLAGS = ('model', 'input', 'counts', 'povm', 'scenario', 'true_state')


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f'{self.prog}: {message}')


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected an integer, got {text!r}')
    if value < 1:
        raise argparse.ArgumentTypeError(f'expected a positive integer, got {value}')
    return value


def _nonnegative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected an integer, got {text!r}')
    if value < 0:
        raise argparse.ArgumentTypeError(f'expected a nonnegative integer, got {value}')
    return value


def _nonnegative_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected a number, got {text!r}')
    if not value >= 0.0:
        raise argparse.ArgumentTypeError(f'expected a nonnegative number, got {text}')
    return value


def _table(text: str) -> List[str]:
    values = [v.strip() for v in text.split(',')]
    if not text.strip() or any(not v for v in values):
        raise argparse.ArgumentTypeError(f'expected comma-separated values, got {text!r}')
    return values


def _common_flags() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument('--seed', type=int, default=None, help='Random seed (default from config, else 0)')
    common.add_argument('--out', default=None, help='Also write the JSON report to this file')
    common.add_argument('--config', default=None, help='INI settings file (default: <settings dir>/config.ini)')
    common.add_argument('--debug', action='store_true', help='Log debug output to standard error')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = _Parser(prog='nkpr', description='Pattern recognition over generalized probabilistic models.')
    parser.add_argument('--version', action='version', version=f'nkpr {__version__}')
    commands = parser.add_subparsers(dest='subcommand', metavar='{' + ','.join(SUBCOMMANDS) + '}')

    classify = commands.add_parser('classify', parents=[common], help='Classify a state or measurement counts')
    classify.add_argument('--model', required=True, help='Class model JSON')
    source = classify.add_mutually_exclusive_group(required=True)
    source.add_argument('--input', help='Density operator JSON of the individual')
    source.add_argument('--counts', help='Outcome counts JSON')
    classify.add_argument('--metric', choices=tuple(METRICS), default=None, help='Distance for --input (default trace)')
    classify.add_argument('--povm', help='POVM JSON the counts were taken with')

    demo = commands.add_parser('demo', help='Quantum algorithms as recognition problems')
    demos = demo.add_subparsers(dest='action', metavar='{dj,period}')
    dj = demos.add_parser('dj', parents=[common], help='Deutsch-Jozsa on a one-bit function')
    dj.add_argument('--function', required=True, choices=tuple(FUNCTION_TABLES))
    period = demos.add_parser('period', parents=[common], help='Period finding with the QFT')
    period.add_argument('--n', type=_positive_int, help='Domain size N')
    period.add_argument('--r', type=_positive_int, help='Period r, a divisor of N')
    period.add_argument('--x0', type=_nonnegative_int, default=0, help='Offset in [0, r)')
    period.add_argument('--table', type=_table, help='Function values f(0),...,f(N-1)')
    period.add_argument('--trials', type=_positive_int, default=None)

    lattice = commands.add_parser('lattice', help='Event lattice checks')
    lattices = lattice.add_subparsers(dest='action', metavar='{verify}')
    verify = lattices.add_parser('verify', parents=[common], help='Check state axioms and lattice laws')
    verify.add_argument('--type', required=True, choices=('boolean', 'projection'))
    verify.add_argument('--atoms', type=_positive_int, help='Number of atoms (boolean)')
    verify.add_argument('--dim', type=_positive_int, help='Hilbert space dimension (projection)')
    verify.add_argument('--samples', type=_nonnegative_int, default=None)
    verify.add_argument('--tol', type=_nonnegative_float, default=None)

    learn = commands.add_parser('learn', parents=[common], help='Run a learning scenario')
    learn.add_argument('--scenario', required=True, help='Scenario JSON')

    tomography = commands.add_parser('tomography', parents=[common], help='Simulate state tomography')
    tomography.add_argument('--true-state', dest='true_state', required=True, help='Density operator JSON')
    tomography.add_argument('--shots', type=_positive_int, default=None, help='Shots per observable')
    return parser


@dataclass(frozen=True)
class CommandSpec:
    """A validated command line.

    Attributes:
        subcommand: One of classify, demo, lattice, learn, tomography
        action: Second-level command (dj, period, verify) or None
        flags: Validated flags, input paths resolved, omitted values filled
            from the settings
        seed: Random seed
        out: Extra report file, if any
        debug: Debug logging requested
        settings: Settings the defaults came from
    """
    subcommand: str
    action: Optional[str] = None
    flags: Dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    out: Optional[Path] = None
    debug: bool = False
    settings: Dict[str, Any] = field(default_factory=lambda: dict(DEFAULT_SETTINGS))


def _require(flags: Dict[str, Any], *names: str, context: str) -> None:
    missing = [n for n in names if flags.get(n) is None]
    if missing:
        raise UsageError(f'{context} requires ' + ', '.join('--' + n.replace('_', '-') for n in missing))


def _check_combinations(subcommand: str, action: Optional[str], flags: Dict[str, Any]) -> None:
    if subcommand in ('demo', 'lattice') and action is None:
        raise UsageError(f'nkpr {subcommand}: missing action')
    if subcommand == 'classify':
        if flags.get('counts') is not None:
            _require(flags, 'povm', context='classify --counts')
            if flags.get('metric') is not None:
                raise UsageError('--metric applies to --input only')
        elif flags.get('povm') is not None:
            raise UsageError('--povm applies to --counts only')
    elif action == 'period' and flags.get('table') is None:
        _require(flags, 'n', 'r', context='demo period without --table')
    elif action == 'verify':
        _require(flags, 'atoms' if flags['type'] == 'boolean' else 'dim', context=f'lattice verify --type {flags["type"]}')


def _load_settings(config: Optional[str]) -> dotdict:
    repo = FileConfigRepository(get_config_path(config), DEFAULT_SETTINGS)
    if config is not None and not repo.config_exists():
        raise InputFileError(f'config file not found: {config}')
    return dotdict(repo.load_config())


def parse_and_validate(argv: Sequence[str]) -> CommandSpec:
    """Parse and validate a command line.

    Raises:
        UsageError: for unknown subcommands or flags, enum violations and
            missing or conflicting flags
        InputFileError: if a named input file does not exist
    """
    args = vars(build_parser().parse_args(list(argv)))
    subcommand = args.pop('subcommand')
    if subcommand is None:
        raise UsageError('nkpr: missing subcommand')
    action = args.pop('action', None)
    seed = args.pop('seed', None)
    out = args.pop('out', None)
    config = args.pop('config', None)
    debug = bool(args.pop('debug', False))
    _check_combinations(subcommand, action, args)

    for name in PATH_FLAGS:
        if args.get(name) is not None:
            path = resolve_input(args[name])
            if not path.is_file():
                raise InputFileError(f'--{name.replace("_", "-")}: cannot read {args[name]}')
            args[name] = path

    settings = _load_settings(config)
    for name in ('trials', 'samples', 'tol', 'shots'):
        if name in args and args[name] is None:
            args[name] = settings[name]
    if subcommand == 'classify' and args.get('input') is not None and args.get('metric') is None:
        args['metric'] = 'trace'
    return CommandSpec(subcommand=subcommand, action=action, flags=args,
                       seed=settings['seed'] if seed is None else seed,
                       out=Path(out) if out is not None else None,
                       debug=debug or bool(settings['debug']), settings=dict(settings))


def _dispatch(controller: RecognitionController, spec: CommandSpec) -> Dict[str, Any]:
    f = spec.flags
    handlers: Dict[Tuple[str, Optional[str]], Callable[[], Dict[str, Any]]] = {
        ('classify', None): lambda: controller.classify(f['model'], f.get('input'), f.get('metric'),
                                                        f.get('counts'), f.get('povm')),
        ('demo', 'dj'): lambda: controller.demo_dj(f['function']),
        ('demo', 'period'): lambda: controller.demo_period(f['n'], f['r'], f['x0'], f['trials'],
                                                           spec.seed, f['table']),
        ('lattice', 'verify'): lambda: controller.lattice_verify(
            f['type'], f['atoms'] if f['type'] == 'boolean' else f['dim'], f['samples'], spec.seed, f['tol']),
        ('learn', None): lambda: controller.learn(f['scenario']),
        ('tomography', None): lambda: controller.tomography(f['true_state'], f['shots'], spec.seed),
    }
    return handlers[(spec.subcommand, spec.action)]()


def run(spec: CommandSpec, stream: Optional[TextIO] = None) -> int:
    """Execute a validated command and write its JSON report.

    Returns:
        0 on success

    Raises:
        NkprError: domain and I/O failures, left to the caller to map
    """
    settings = dotdict(spec.settings)
    controller = RecognitionController(FileDocumentRepository(), settings)
    report = _dispatch(controller, spec)
    JsonReportWriter(settings.significant_digits, stream, spec.out).write(report)
    return 0


def main(argv: Optional[Sequence[str]] = None, stream: Optional[TextIO] = None) -> int:
    """Entry point; returns the process exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    configure_logging('--debug' in argv)
    try:
        spec = parse_and_validate(argv)
        if spec.debug:
            configure_logging(True)
        return run(spec, stream)
    except NkprError as e:
        error_msg(f'{type(e).__name__}: {e}')
        debug_msg(e)
        JsonReportWriter(int(DEFAULT_SETTINGS['significant_digits']), stream).write(encode_error(e))
        return e.exit_code
