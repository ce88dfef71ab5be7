import logging
import os
from typing import List, Optional, Tuple

from bachet.models import OutputFormat
from bachet.utils.field import is_prime, legendre_symbol

logger = logging.getLogger(__name__)


def validate_prime(p: int) -> Tuple[bool, List[str]]:
    """
    Проверяет, что p простое и больше 3
    """
    logger.debug(f"🔍 Проверка модуля p={p}")
    errors = []
    if p <= 3:
        errors.append(f"p={p} должно быть больше 3")
    elif not is_prime(p):
        errors.append(f"p={p} не является простым числом")

    if errors:
        logger.error(f"❌ {errors[0]}")
    return len(errors) == 0, errors


def validate_coefficient(p: int, a: int) -> Tuple[bool, List[str]]:
    """
    Проверяет коэффициент 1 ≤ a ≤ p−1
    """
    errors = []
    if not 1 <= a <= p - 1:
        errors.append(f"a={a} вне диапазона [1, {p - 1}]")
        logger.error(f"❌ {errors[0]}")
    return len(errors) == 0, errors


def validate_curve_args(p: int, a: int) -> Tuple[bool, List[str]]:
    prime_valid, errors = validate_prime(p)
    if not prime_valid:
        return False, errors
    return validate_coefficient(p, a)


def validate_enumeration_bound(p: int, bound: int) -> Tuple[bool, List[str]]:
    if p > bound:
        msg = f"p={p} больше границы перебора {bound}"
        logger.error(f"❌ {msg}")
        return False, [msg]
    return True, []


def validate_nonresidue(p: int, g: int) -> Tuple[bool, List[str]]:
    """
    g должен быть квадратичным невычетом по модулю p
    """
    errors = []
    if g % p == 0:
        errors.append(f"g={g} делится на p={p}")
    elif legendre_symbol(g, p) != -1:
        errors.append(f"g={g} является квадратичным вычетом по модулю {p}")

    if errors:
        logger.error(f"❌ {errors[0]}")
    return len(errors) == 0, errors


def validate_twist_modulus(p: int) -> Tuple[bool, List[str]]:
    if p % 6 != 1:
        msg = f"Кручение рассматривается только для p ≡ 1 (mod 6), p={p}"
        logger.error(f"❌ {msg}")
        return False, [msg]
    return True, []


def validate_sweep_bound(bound: int) -> Tuple[bool, List[str]]:
    if bound < 7:
        msg = f"Граница перебора {bound} меньше 7"
        logger.error(f"❌ {msg}")
        return False, [msg]
    return True, []


def validate_run_options(
    jobs: Optional[int] = None,
    limit: Optional[int] = None,
    budget: Optional[int] = None,
) -> Tuple[bool, List[str]]:
    """
    Общая проверка числовых флагов запуска
    """
    errors = []
    if jobs is not None and jobs < 1:
        errors.append(f"--jobs должно быть ≥ 1, получено {jobs}")
    if limit is not None and limit < 0:
        errors.append(f"--limit должно быть ≥ 0, получено {limit}")
    if budget is not None and budget < 1:
        errors.append(f"--budget должно быть ≥ 1, получено {budget}")

    for error in errors:
        logger.error(f"❌ {error}")
    return len(errors) == 0, errors


def validate_output(fmt: OutputFormat, out: Optional[str]) -> Tuple[bool, List[str]]:
    """
    xlsx только в файл; каталог для --out должен существовать
    """
    errors = []
    if fmt is OutputFormat.XLSX and not out:
        errors.append("Формат xlsx пишется только в файл, укажите --out")
    if out and not os.path.isdir(os.path.dirname(os.path.abspath(out))):
        errors.append(f"Каталог для отчёта '{out}' не существует")

    for error in errors:
        logger.error(f"❌ {error}")
    return len(errors) == 0, errors
