"""
Обработчики подкоманд: проверка аргументов, вызов сервисов, вывод отчёта, код выхода.
"""
import functools
import logging
import sys
from argparse import Namespace
from typing import Callable, List

from bachet.config import settings
from bachet.exceptions import HasseViolationError, IdentityViolationError, StructureError
from bachet.models import ExitCode, OutputFormat, ResidueClass
from bachet.services.counting import count_by_character_sum, residue_class_of_a, twist
from bachet.services.curve import BachetCurve, enumerate_points, point_order
from bachet.services.report_manager import ReportManager
from bachet.services.structure import count_order3, structure_of
from bachet.services.theorems import find_nn_instances, first_failures, sweep
from bachet.utils.field import FieldElement
from bachet.utils.helpers import factorize
from bachet.utils.validators import (
    validate_curve_args,
    validate_enumeration_bound,
    validate_nonresidue,
    validate_output,
    validate_run_options,
    validate_sweep_bound,
    validate_twist_modulus,
)

logger = logging.getLogger(__name__)
error_logger = logging.getLogger('bachet.errors')

NN_COLUMNS = ['p', 'class', 'n', 'form', 'p_mod_12', 'holds']


# Нарушенные тождества арифметики, код 1
INVARIANT_ERRORS = (HasseViolationError, IdentityViolationError, StructureError)


def command(handler: Callable[[Namespace], ExitCode]) -> Callable[[Namespace], ExitCode]:
    """
    Входные ошибки и недоступный --out дают код 2, нарушенные тождества код 1,
    всё остальное пробрасывается
    """

    @functools.wraps(handler)
    def wrapper(args: Namespace) -> ExitCode:
        logger.info(f"🚀 Команда {handler.__name__}")
        try:
            return handler(args)
        except INVARIANT_ERRORS as e:
            logger.error(f"❌ Нарушено тождество в {handler.__name__}: {e}")
            error_logger.error(f"Нарушено тождество в {handler.__name__}: {e}", exc_info=True)
            return ExitCode.CLAIM_VIOLATION
        except ValueError as e:
            logger.error(f"❌ {e}")
            return ExitCode.USAGE_ERROR
        except OSError as e:
            logger.error(f"❌ Не удалось записать отчёт: {e}")
            return ExitCode.USAGE_ERROR
        except Exception as e:
            logger.critical(f"💥 КРИТИЧЕСКАЯ ОШИБКА в {handler.__name__}: {e}", exc_info=True)
            error_logger.critical(f"Критическая ошибка в {handler.__name__}: {e}", exc_info=True)
            raise

    return wrapper


def _checks_pass(*results) -> bool:
    return all(valid for valid, _ in results)


def _report(args: Namespace) -> ReportManager:
    return ReportManager(OutputFormat(args.format))


@command
def cmd_count(args: Namespace) -> ExitCode:
    if not _checks_pass(validate_curve_args(args.p, args.a), validate_output(OutputFormat(args.format), args.out)):
        return ExitCode.USAGE_ERROR

    E = BachetCurve.of(args.p, args.a)
    count = count_by_character_sum(E)
    row = {
        'p': count.p,
        'a': args.a,
        'class': residue_class_of_a(E).value,
        'N': count.N,
        'b': count.b,
        't': count.t,
        'hasse_ok': count.hasse_bound_ok,
    }
    _report(args).write([row], args.out)
    return ExitCode.OK


@command
def cmd_points(args: Namespace) -> ExitCode:
    checks = [
        validate_curve_args(args.p, args.a),
        validate_run_options(limit=args.limit),
        validate_output(OutputFormat(args.format), args.out),
    ]
    if not _checks_pass(*checks):
        return ExitCode.USAGE_ERROR
    if not _checks_pass(validate_enumeration_bound(args.p, settings.enumeration_bound)):
        return ExitCode.USAGE_ERROR

    E = BachetCurve.of(args.p, args.a)
    points = enumerate_points(E)
    factors = factorize(len(points))
    if args.limit is not None:
        points = points[:args.limit]

    rows = [{'point': str(P), 'order': point_order(P, factors)} for P in points]
    _report(args).write(rows, args.out, columns=['point', 'order'])
    return ExitCode.OK


@command
def cmd_structure(args: Namespace) -> ExitCode:
    checks = [
        validate_curve_args(args.p, args.a),
        validate_run_options(budget=args.budget),
        validate_output(OutputFormat(args.format), args.out),
    ]
    if not _checks_pass(*checks):
        return ExitCode.USAGE_ERROR

    E = BachetCurve.of(args.p, args.a)
    structure = structure_of(E, seed=args.seed, sample_budget=args.budget)
    census = count_order3(E)
    row = {
        'p': int(E.p),
        'a': args.a,
        'n': structure.n,
        'm': structure.m,
        'nm': structure.nm,
        'group': structure.describe(),
        'order3': census.order3_count,
        'method': structure.method,
        'verified': structure.verified,
    }
    _report(args).write([row], args.out)

    if not structure.verified:
        logger.warning(f"⚠️ Структура {E} не подтверждена за {structure.samples} выборок")
        return ExitCode.UNVERIFIED
    return ExitCode.OK


@command
def cmd_twist(args: Namespace) -> ExitCode:
    if not _checks_pass(validate_curve_args(args.p, args.a), validate_output(OutputFormat(args.format), args.out)):
        return ExitCode.USAGE_ERROR
    if not _checks_pass(validate_twist_modulus(args.p)):
        return ExitCode.USAGE_ERROR
    if args.g is not None and not _checks_pass(validate_nonresidue(args.p, args.g)):
        return ExitCode.USAGE_ERROR

    E = BachetCurve.of(args.p, args.a)
    g = None if args.g is None else FieldElement(args.g, E.p)
    pair = twist(E, g)
    row = {
        'p': int(E.p),
        'g': pair.g.value,
        'a': pair.original.a.value,
        'N': pair.original_count.N,
        'b': pair.original_count.b,
        'a_twist': pair.twist.a.value,
        'N_twist': pair.twist_count.N,
        'b_twist': pair.twist_count.b,
    }
    _report(args).write([row], args.out)
    return ExitCode.OK


def _print_failures(lines: List[str]) -> None:
    for line in lines:
        sys.stderr.write(line + "\n")


@command
def cmd_verify(args: Namespace) -> ExitCode:
    checks = [
        validate_sweep_bound(args.max_p),
        validate_run_options(jobs=args.jobs),
        validate_output(OutputFormat(args.format), args.out),
    ]
    if not _checks_pass(*checks):
        return ExitCode.USAGE_ERROR

    class_filter = ResidueClass(args.residue_class) if args.residue_class else None
    reports = sweep(
        args.max_p,
        class_filter,
        jobs=args.jobs,
        seed=args.seed,
        all_a=args.all_a,
        all_a_bound=args.all_a_bound,
    )
    _report(args).write_reports(reports, args.out)

    failures = first_failures(reports, strict_s1=args.strict_s1)
    if failures:
        _print_failures([
            f"❌ p={report.p} {report.residue_class.value}: {', '.join(c.value for c in claims)}"
            for report, claims in failures
        ])
        return ExitCode.CLAIM_VIOLATION

    logger.info(f"✅ Все утверждения выполнены до p={args.max_p}")
    return ExitCode.OK


@command
def cmd_washington(args: Namespace) -> ExitCode:
    checks = [
        validate_sweep_bound(args.max_p),
        validate_run_options(jobs=args.jobs),
        validate_output(OutputFormat(args.format), args.out),
    ]
    if not _checks_pass(*checks):
        return ExitCode.USAGE_ERROR

    instances = find_nn_instances(args.max_p, jobs=args.jobs, seed=args.seed)
    _report(args).write([i.to_row() for i in instances], args.out, columns=NN_COLUMNS)

    violations = [i for i in instances if not i.satisfies_refinement]
    if violations:
        _print_failures([
            f"❌ p={i.p} n={i.n}: p mod 12 = {i.p_mod_12}, вид {i.form or 'none'}" for i in violations
        ])
        return ExitCode.CLAIM_VIOLATION
    return ExitCode.OK


COMMANDS = {
    'count': cmd_count,
    'points': cmd_points,
    'structure': cmd_structure,
    'twist': cmd_twist,
    'verify': cmd_verify,
    'washington': cmd_washington,
}
