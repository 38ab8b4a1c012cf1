#!/usr/bin/env python3
"""
Zhelobenko/Kostant verification engine
Main entry point for the application

This module provides:
- Command-line argument parsing with one subcommand per computation
- Configuration (INI + JSON settings) and environment overrides
- Logging configuration and management
- Batch orchestration of independent jobs on a thread pool
- Report emission and exit-code mapping
"""

__version__ = "1.0.0"
__author__ = "Zhelobenko-Kostant Developers"
__email__ = "maintainers@example.org"
__license__ = "MIT"
__description__ = "Exact verification of Harish-Chandra images of adjoint invariants via Zhelobenko operators"

import argparse
import configparser
import json
import logging
import os
import sys
import traceback
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

# Add the project root to Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from algebra.exact import format_scalar, to_scalar
from invariants.kostant import scan_scalars, verify_kostant
from invariants.pbw_oracle import MAX_DEGREE, sl2_pbw_oracle
from invariants.zhelobenko import extract_generators, solve_invariants
from lie.chevalley import build_lie_algebra
from lie.filtration import principal_filtration
from lie.root_system import LieType, build_root_system, weyl_group_order
from utils.error_handler import (
    ErrorCategory, ErrorContext, ErrorInfo, ErrorSeverity, UsageError, VerificationFailure, ZhelobenkoError,
    error_reporter, handle_exception
)
from utils.report_writer import ReportWriter

WORKERS_ENV = "ZHELOBENKO_WORKERS"
DEFAULT_TYPES = "A1,A2,A3,B2,B3,C3,G2"
DEFAULT_CANDIDATES = "-5,-4,-3,-2,-1,0,1,2,3,4,5"
ORACLE_DEFAULT_DEGREE = 4
ACCEPTANCE_SCALARS = (1, 2, 3)


@dataclass
class RunConfig:
    """Fully resolved parameters of one invocation."""

    command: str
    lie_type: Optional[LieType] = None
    c: Any = -1
    s: Any = 1
    dmax: int = 2
    mmax: int = 0
    generators: bool = False
    candidates: Tuple[Any, ...] = ()
    types: Tuple[LieType, ...] = ()
    output_format: str = "json"
    output_path: Optional[str] = None
    deterministic: bool = False
    debug_brackets: bool = False
    validate_jacobi: bool = True
    max_workers: int = 4


def _parse_list(text: str, convert, name: str) -> Tuple[Any, ...]:
    items = [item.strip() for item in str(text).split(",") if item.strip()]
    if not items:
        raise UsageError(f"Empty list for {name}", name, text)
    return tuple(convert(item) for item in items)


def _parse_int(value: Any, name: str) -> int:
    try:
        number = int(str(value).strip())
    except ValueError as e:
        raise UsageError(f"{name} must be an integer, got {value!r}", name, value) from e
    if number < 0:
        raise UsageError(f"{name} must be non-negative, got {number}", name, value)
    return number


class ApplicationManager:
    """
    Main application manager that handles configuration, logging and the lifecycle
    of one command-line invocation.
    """

    def __init__(self, config_dir: Optional[Path] = None):
        self.config_dir = Path(config_dir) if config_dir else Path.home() / ".zhelobenko"
        self.config_file = self.config_dir / "config.ini"
        self.log_file = self.config_dir / "app.log"
        self.settings_file = self.config_dir / "settings.json"

        self.config = configparser.ConfigParser()
        self.is_running = False

        self.default_settings = {
            "output_directory": str(Path.cwd() / "reports"),
            "log_level": "WARNING",
            "output_format": "json",
            "auto_save_settings": False,
        }
        self.settings = self.default_settings.copy()

    def initialize(self):
        """
        Initialize the application with all necessary configurations.
        """
        self._create_config_directory()
        self._load_settings()
        self._load_configuration()
        self._setup_logging()
        self.is_running = True
        logging.debug("Application initialized")

    def _create_config_directory(self):
        try:
            self.config_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            logging.warning(f"Failed to create config directory {self.config_dir}: {e}")
            self.config_dir = Path.cwd() / ".zhelobenko"
            self.config_dir.mkdir(exist_ok=True)
            self.log_file = self.config_dir / "app.log"
            self.settings_file = self.config_dir / "settings.json"

    def _setup_logging(self):
        """
        Configure logging with a file handler and a console handler on stderr.
        """
        log_level = getattr(logging, str(self.settings.get("log_level", "WARNING")).upper(), logging.WARNING)

        detailed_formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(filename)s:%(lineno)d - %(message)s'
        )
        simple_formatter = logging.Formatter(
            '%(asctime)s - %(levelname)s - %(message)s'
        )

        root_logger = logging.getLogger()
        root_logger.setLevel(logging.DEBUG)
        root_logger.handlers.clear()

        try:
            file_handler = logging.FileHandler(self.log_file, encoding='utf-8')
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(detailed_formatter)
            root_logger.addHandler(file_handler)
        except OSError as e:
            print(f"Warning: Could not setup file logging: {e}", file=sys.stderr)

        # reports own stdout
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(log_level)
        console_handler.setFormatter(simple_formatter)
        root_logger.addHandler(console_handler)

        logging.debug(f"Logging configured. Level: {logging.getLevelName(log_level)}, Log file: {self.log_file}")

    def _load_settings(self):
        try:
            if self.settings_file.exists():
                with open(self.settings_file, 'r', encoding='utf-8') as f:
                    self.settings.update(json.load(f))
        except (OSError, json.JSONDecodeError) as e:
            logging.warning(f"Failed to load settings: {e}. Using defaults.")

    def _save_settings(self):
        try:
            if self.settings.get("auto_save_settings", False):
                with open(self.settings_file, 'w', encoding='utf-8') as f:
                    json.dump(self.settings, f, indent=2, ensure_ascii=False)
        except OSError as e:
            logging.error(f"Failed to save settings: {e}")

    def _load_configuration(self):
        """
        Load configuration from the INI file, creating it with defaults if missing.
        """
        self._set_default_configuration()
        try:
            if self.config_file.exists():
                self.config.read(self.config_file, encoding='utf-8')
            else:
                self._write_default_configuration()
        except configparser.Error as e:
            raise UsageError(f"Malformed configuration file {self.config_file}: {e}", "config",
                             str(self.config_file)) from e

    def _set_default_configuration(self):
        self.config['DEFAULT'] = {
            'c': '-1',
            's': '1',
            'dmax': '2',
            'mmax': '0',
            'validate_jacobi': 'true',
        }
        self.config['Paths'] = {
            'output_directory': self.settings.get("output_directory", str(Path.cwd() / "reports")),
        }
        self.config['Batch'] = {
            'types': DEFAULT_TYPES,
            'scan_candidates': DEFAULT_CANDIDATES,
            'max_workers': '4',
        }

    def _write_default_configuration(self):
        try:
            with open(self.config_file, 'w', encoding='utf-8') as f:
                self.config.write(f)
            logging.info(f"Default configuration created at {self.config_file}")
        except OSError as e:
            logging.error(f"Failed to create default configuration: {e}")

    def resolve_workers(self) -> int:
        """Worker count: environment variable, else the INI value."""
        configured = self.config.getint('Batch', 'max_workers', fallback=4)
        raw = os.environ.get(WORKERS_ENV)
        if raw is None:
            return max(1, configured)
        try:
            workers = int(raw)
            if workers < 1:
                raise ValueError(raw)
            return workers
        except ValueError:
            logging.warning(f"Ignoring invalid {WORKERS_ENV}={raw!r}; using {configured}")
            return max(1, configured)

    def build_run_config(self, args: argparse.Namespace) -> RunConfig:
        """
        Merge command-line flags over the configuration file.

        Raises:
            UsageError: For malformed values
        """
        defaults = self.config['DEFAULT']
        command = args.command

        lie_type = None
        if getattr(args, "type", None) is not None:
            lie_type = LieType.parse(args.type)
        elif command in ("roots", "solve", "filtration", "verify", "scan"):
            raise UsageError(f"The {command} command requires --type", "type")

        def pick(name: str, fallback: str):
            value = getattr(args, name, None)
            return value if value is not None else defaults.get(name, fallback)

        mmax_default = str(ORACLE_DEFAULT_DEGREE) if command == "oracle" else defaults.get("mmax", "0")
        mmax_value = getattr(args, "mmax", None)
        candidates = getattr(args, "candidates", None) or self.config.get('Batch', 'scan_candidates',
                                                                          fallback=DEFAULT_CANDIDATES)
        types = self.config.get('Batch', 'types', fallback=DEFAULT_TYPES)

        return RunConfig(
            command=command,
            lie_type=lie_type,
            c=to_scalar(pick("c", "-1")),
            s=to_scalar(pick("s", "1")),
            dmax=_parse_int(pick("dmax", "2"), "dmax"),
            mmax=_parse_int(mmax_value if mmax_value is not None else mmax_default, "mmax"),
            generators=bool(getattr(args, "generators", False)),
            candidates=_parse_list(candidates, to_scalar, "candidates"),
            types=_parse_list(types, LieType.parse, "types"),
            output_format=args.format or self.settings.get("output_format", "json"),
            output_path=args.output,
            deterministic=args.deterministic,
            debug_brackets=args.debug_brackets,
            validate_jacobi=self.config.getboolean('DEFAULT', 'validate_jacobi', fallback=True),
            max_workers=self.resolve_workers(),
        )

    # ------------------------------------------------------------------ commands

    def run(self, config: RunConfig) -> Tuple[int, str]:
        """
        Execute one command and render its report.

        Returns:
            Tuple[int, str]: Exit code (0 pass, 1 fail) and the report text
        """
        if not self.is_running:
            raise RuntimeError("Application not initialized")
        handler = getattr(self, f"_command_{config.command}")
        results = handler(config)
        writer = ReportWriter(deterministic=config.deterministic)
        text = writer.emit(results, config.output_format)
        if config.output_path:
            writer.save(text, config.output_path)
        verdict = writer.to_document(results)["verdict"]
        logging.info(f"{config.command}: verdict {verdict}")
        return (0 if verdict == "pass" else 1), text

    def _command_roots(self, config: RunConfig) -> List[Dict[str, Any]]:
        rs = build_root_system(config.lie_type)
        result = {"kind": "roots", **rs.to_dict(), "weyl_group_order": weyl_group_order(rs)}
        if config.debug_brackets:
            algebra = build_lie_algebra(rs, config.validate_jacobi)
            result["dimension"] = algebra.dimension
            result["brackets"] = algebra.bracket_table()
        return [result]

    def _command_solve(self, config: RunConfig) -> List[Dict[str, Any]]:
        return [solve_report(config.lie_type, config.c, config.dmax, config.generators)]

    def _command_filtration(self, config: RunConfig) -> List[Dict[str, Any]]:
        return [{"kind": "filtration", **principal_filtration(config.lie_type).to_dict()}]

    def _command_verify(self, config: RunConfig):
        return [verify_kostant(config.lie_type, config.s, config.mmax)]

    def _command_scan(self, config: RunConfig):
        return [scan_scalars(config.lie_type, config.candidates, config.mmax, config.max_workers)]

    def _command_oracle(self, config: RunConfig):
        return [sl2_pbw_oracle(config.mmax, strict=False)]

    def _command_all(self, config: RunConfig):
        return self.run_batch(config.types, config.max_workers)

    @handle_exception
    def run_batch(self, types: Sequence[LieType], max_workers: int) -> List[Dict[str, Any]]:
        """
        Run the acceptance suite for every type on a thread pool, then the rank-one oracle.

        Results keep the order of ``types`` regardless of completion order.
        """
        logging.info(f"Starting acceptance suite for {len(types)} types with {max_workers} workers")
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            futures = [(t, executor.submit(acceptance_job, t)) for t in types]
            results = []
            for lie_type, future in futures:
                try:
                    results.append(future.result())
                except ZhelobenkoError as e:
                    self._handle_error(e, f"acceptance_{lie_type}")
                    results.append({"kind": "acceptance", "type": str(lie_type), "verdict": "fail",
                                    "error": str(e)})
        results.append(sl2_pbw_oracle(ORACLE_DEFAULT_DEGREE, strict=False))
        failed = sum(1 for r in results if (r.verdict if hasattr(r, "verdict") else r["verdict"]) == "fail")
        logging.info(f"Acceptance suite completed. Failed: {failed}")
        if failed:
            logging.warning(f"Acceptance summary: {error_reporter.get_error_summary()}")
        return results

    def _handle_error(self, error: Exception, context: str = ""):
        """Log an error and hand it to the global error reporter."""
        if isinstance(error, ZhelobenkoError):
            error_info = error.error_info
        else:
            error_info = ErrorInfo(
                message=str(error),
                category=ErrorCategory.UNKNOWN,
                severity=ErrorSeverity.HIGH,
                original_exception=error,
                traceback_str=traceback.format_exc(),
            )
        error_info.context.setdefault("operation", context)
        error_reporter.report_error(error_info)
        logging.error(f"Error in {context}: {error}")

    def shutdown(self):
        if not self.is_running:
            return
        self.is_running = False
        self._save_settings()
        logging.debug("Application shutdown completed")


# =============================================================================
# Report builders
# =============================================================================

def solve_report(lie_type: LieType, c: Any, dmax: int, with_generators: bool) -> Dict[str, Any]:
    """Graded solution space up to ``dmax`` plus the free generators of the module."""
    rs = build_root_system(lie_type)
    space = solve_invariants(rs, c, dmax)
    generators = extract_generators(rs, c)
    result = {
        "kind": "solve",
        "type": str(lie_type),
        "c": format_scalar(c),
        "dmax": dmax,
        "graded_dimensions": space.graded_dimensions(),
        "basis": [P.to_strings() for P in space.basis_up_to(dmax)],
        "generator_degrees": [g.q_degree for g in generators],
        "verdict": "pass",
    }
    if with_generators:
        result["generators"] = [g.to_dict() for g in generators]
    return result


def acceptance_job(lie_type: LieType) -> Dict[str, Any]:
    """Exponents, generator degrees and the Kostant check at s = 1, 2, 3 for one type."""
    with ErrorContext("acceptance", type=str(lie_type)) as context:
        rs = build_root_system(lie_type)
        flag = principal_filtration(lie_type)
        result = {"kind": "acceptance", "type": str(lie_type), "exponents": list(flag.exponents)}
        try:
            generators = extract_generators(rs, -1)
            result["generator_degrees"] = [g.q_degree for g in generators]
            generators_ok = True
        except VerificationFailure as e:
            context.record(e)
            generators_ok = False
        checks = {format_scalar(s): verify_kostant(lie_type, s).verdict for s in ACCEPTANCE_SCALARS}
    result["kostant"] = checks
    if context.errors:
        result["errors"] = [info.message for info in context.errors]
        for info in context.errors:
            error_reporter.report_error(info)
    result["verdict"] = "pass" if generators_ok and all(v == "pass" for v in checks.values()) else "fail"
    return result


# =============================================================================
# Command line
# =============================================================================

def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """
    Parse command line arguments.

    Returns:
        argparse.Namespace: Parsed arguments
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', '-f', choices=['json', 'text'], default=None,
                        help='Report format (default: json)')
    common.add_argument('--output', '-o', type=str, help='Write the report to this file instead of stdout')
    common.add_argument('--config', type=str, help='Path to custom configuration file')
    common.add_argument('--log-level', '-l', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
                        default=None, help='Console logging level (default: WARNING)')
    common.add_argument('--deterministic', action='store_true',
                        help='Omit timing fields so identical runs give identical reports')
    common.add_argument('--debug-brackets', action='store_true',
                        help='Include the Chevalley bracket table in the roots report')

    parser = argparse.ArgumentParser(
        description="Zhelobenko/Kostant verification engine",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s roots --type G2                          # Root system data
  %(prog)s solve --type A2 --c -1 --dmax 2          # Invariance solver and generators
  %(prog)s filtration --type B3                     # Principal filtration and exponents
  %(prog)s verify --type A2 --s 1 --mmax 2          # Kostant check at s*rho
  %(prog)s scan --type A2 --candidates=-2,-1,0,1    # Scan scalars for failures
  %(prog)s oracle --mmax 4                          # Rank-one enveloping-algebra oracle
  %(prog)s all --format text --deterministic        # Full acceptance suite

Global options (--format, --output, --config, --log-level, --deterministic,
--debug-brackets) follow the command name.
        """
    )
    parser.add_argument('--version', '-v', action='version', version=f'%(prog)s {__version__}')

    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    def add(name: str, help_text: str):
        return commands.add_parser(name, help=help_text, parents=[common])

    roots = add('roots', 'Print the root system of a type')
    roots.add_argument('--type', '-t', required=True)

    solve = add('solve', 'Solve the invariance system')
    solve.add_argument('--type', '-t', required=True)
    solve.add_argument('--c', type=str, default=None, help='Denominator scalar (default: -1)')
    solve.add_argument('--dmax', type=str, default=None, help='Maximal degree of the P tuple (default: 2)')
    solve.add_argument('--generators', action='store_true', help='Include the generator tuples')

    filtration = add('filtration', 'Compute the principal filtration')
    filtration.add_argument('--type', '-t', required=True)

    verify = add('verify', 'Check the Kostant conjecture at s*rho')
    verify.add_argument('--type', '-t', required=True)
    verify.add_argument('--s', type=str, default=None, help='Scalar (default: 1)')
    verify.add_argument('--mmax', type=str, default=None, help='Highest degree (default: top exponent)')

    scan = add('scan', 'Run the Kostant check over several scalars')
    scan.add_argument('--type', '-t', required=True)
    scan.add_argument('--candidates', type=str, default=None, help='Comma-separated scalars')
    scan.add_argument('--mmax', type=str, default=None)

    oracle = add('oracle', 'Rank-one enveloping-algebra oracle')
    oracle.add_argument('--mmax', type=str, default=None, help=f'Highest degree, at most {MAX_DEGREE} (default: 4)')

    add('all', 'Run the acceptance suite over the configured types')

    return parser.parse_args(argv)


def main(argv: Optional[Sequence[str]] = None):
    """
    Main function of the command-line interface; exits with 0, 1 or 2.
    """
    app_manager = None
    code = 0

    try:
        try:
            args = parse_arguments(argv)
        except SystemExit as e:
            # argparse exits with 2 on usage errors and 0 for --help/--version
            code = e.code if isinstance(e.code, int) else 2
            return

        app_manager = ApplicationManager()
        if args.config:
            app_manager.config_file = Path(args.config)
        if args.log_level:
            app_manager.settings["log_level"] = args.log_level
        app_manager.initialize()

        config = app_manager.build_run_config(args)
        code, text = app_manager.run(config)
        if not config.output_path:
            sys.stdout.write(text)
            sys.stdout.flush()

    except KeyboardInterrupt:
        logging.info("Interrupted by user")
        code = 1

    except ZhelobenkoError as e:
        if app_manager:
            app_manager._handle_error(e, "main")
        print(f"error: {e}", file=sys.stderr)
        code = e.exit_code

    except Exception as e:
        if app_manager:
            app_manager._handle_error(e, "main")
        print(f"Fatal application error: {e}", file=sys.stderr)
        code = 1

    finally:
        if app_manager:
            app_manager.shutdown()
        sys.exit(code)


if __name__ == "__main__":
    main()
