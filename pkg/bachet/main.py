import argparse
import logging
import os
import sys
from typing import List, Optional

from bachet import __version__
from bachet.config import settings
from bachet.handlers.commands import COMMANDS
from bachet.models import ExitCode, OutputFormat, ResidueClass

logger = logging.getLogger(__name__)

LOG_LEVELS = ['DEBUG', 'INFO', 'WARNING', 'ERROR']


def setup_logging(level: str = settings.log_level, log_file: Optional[str] = None) -> None:
    """stderr всегда, файл по --log-file; stdout остаётся под отчёт"""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file, encoding='utf-8', mode='w'))

    logging.basicConfig(
        level=getattr(logging, level),
        format=settings.log_format,
        handlers=handlers,
        force=True,
    )

    # Дополнительный логгер для нарушений утверждений
    error_logger = logging.getLogger('bachet.errors')
    error_logger.setLevel(logging.ERROR)
    for handler in list(error_logger.handlers):
        error_logger.removeHandler(handler)
        handler.close()
    if log_file:
        error_handler = logging.FileHandler(f"{os.path.splitext(log_file)[0]}_errors.log", encoding='utf-8', mode='w')
        error_handler.setFormatter(logging.Formatter(settings.error_log_format))
        error_logger.addHandler(error_handler)


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--format', choices=[f.value for f in OutputFormat], default=OutputFormat.TABLE.value)
    parser.add_argument('--out', metavar='FILE', help="файл отчёта (UTF-8, LF)")


def _add_curve_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--p', type=int, required=True, help="простое p > 3")
    parser.add_argument('--a', type=int, required=True, help="коэффициент 1 ≤ a ≤ p−1")


def _add_sweep_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--max-p', type=int, required=True, help="верхняя граница простых (≥ 7)")
    parser.add_argument('--jobs', type=int, default=os.cpu_count() or 1, help="число процессов")
    parser.add_argument('--seed', type=int, default=settings.default_seed)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='bachet',
        description="Кривые Баше y² = x³ + a³ над F_p: подсчёт точек, структура группы, проверка утверждений",
    )
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    parser.add_argument('--log-level', choices=LOG_LEVELS, default=settings.log_level)
    parser.add_argument('--log-file', metavar='PATH')
    subparsers = parser.add_subparsers(dest='command', required=True)

    count = subparsers.add_parser('count', help="N, b, t и проверка границы Хассе")
    _add_curve_flags(count)
    _add_output_flags(count)

    points = subparsers.add_parser('points', help="список точек с порядками")
    _add_curve_flags(points)
    points.add_argument('--limit', type=int)
    _add_output_flags(points)

    structure = subparsers.add_parser('structure', help="E(F_p) ≅ C_n × C_nm и точки порядка 3")
    _add_curve_flags(structure)
    structure.add_argument('--seed', type=int, default=settings.default_seed)
    structure.add_argument('--budget', type=int, default=settings.sample_budget, help="лимит случайных точек")
    _add_output_flags(structure)

    twist = subparsers.add_parser('twist', help="квадратичное кручение (p ≡ 1 mod 6)")
    _add_curve_flags(twist)
    twist.add_argument('--g', type=int, help="невычет; по умолчанию наименьший")
    _add_output_flags(twist)

    verify = subparsers.add_parser('verify', help="перебор простых и вердикты по всем утверждениям")
    _add_sweep_flags(verify)
    verify.add_argument('--class', dest='residue_class', choices=[ResidueClass.QR.value, ResidueClass.NQR.value])
    verify.add_argument('--all-a', action='store_true', help="проверить каждое a ∈ F_p* для малых p")
    verify.add_argument('--all-a-bound', type=int, default=settings.all_a_bound)
    verify.add_argument('--strict-s1', action='store_true', help="учитывать гипотезу о знаке b в коде выхода")
    _add_output_flags(verify)

    washington = subparsers.add_parser('washington', help="все случаи Z_n × Z_n до границы")
    _add_sweep_flags(washington)
    _add_output_flags(washington)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help и --version завершаются с кодом 0
        return ExitCode.OK if e.code in (0, None) else ExitCode.USAGE_ERROR

    try:
        setup_logging(args.log_level, args.log_file)
    except OSError as e:
        # логирование ещё не настроено
        sys.stderr.write(f"❌ Не удалось открыть файл логов '{args.log_file}': {e}\n")
        return ExitCode.USAGE_ERROR
    logger.debug(f"Аргументы: {vars(args)}")
    return int(COMMANDS[args.command](args))


if __name__ == "__main__":
    sys.exit(main())
