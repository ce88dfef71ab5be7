"""
Подсчёт точек: сумма характеров и перебор, лемма о Σχ(x³+1), квадратичное кручение.
"""
import logging
from typing import Optional

from bachet.config import settings
from bachet.exceptions import (
    EnumerationBoundError,
    HasseViolationError,
    IdentityViolationError,
    NonResidueError,
    ResidueClassError,
)
from bachet.models import CurveCount, ResidueClass, TwistPair
from bachet.services.curve import BachetCurve
from bachet.utils.field import (
    Chi,
    FieldElement,
    Prime,
    character_table,
    chi,
    cubic_values,
    legendre_symbol,
    smallest_nonresidue,
    square_root_counts,
)

logger = logging.getLogger(__name__)
error_logger = logging.getLogger('bachet.errors')


def hasse_holds(count: CurveCount) -> bool:
    return count.hasse_bound_ok


def _make_count(p: int, N: int) -> CurveCount:
    count = CurveCount(p=int(p), N=N, b=int(p) + 1 - N)
    if not hasse_holds(count):
        error_logger.error(f"Нарушение Хассе: p={p}, N={N}, b={count.b}")
        raise HasseViolationError(f"|b| = {count.t} > 2√{p} при N = {N}")
    return count


def _character_sum(p: int, B: int) -> int:
    """Σ_{x ∈ F_p} χ(x³ + B): таблицей χ в пределах границы перебора, критерием Эйлера за ней"""
    if p <= settings.enumeration_bound:
        return int(character_table(p)[cubic_values(p, B)].sum())
    return sum(legendre_symbol(x * x * x + B, p) for x in range(p))


def count_by_character_sum(E: BachetCurve) -> CurveCount:
    """N = p + 1 + Σ χ(x³ + a³)"""
    p = int(E.p)
    count = _make_count(p, p + 1 + _character_sum(p, E.B.value))
    logger.debug(f"📊 {E}: N={count.N}, b={count.b:+d}")
    return count


def count_by_enumeration(E: BachetCurve, bound: Optional[int] = None) -> CurveCount:
    """N = 1 + Σ_x #{y : y² = x³ + B}, то же число, что len(enumerate_points(E))"""
    bound = settings.enumeration_bound if bound is None else bound
    if E.p > bound:
        raise EnumerationBoundError(f"p={E.p} больше границы перебора {bound}")
    roots = square_root_counts(E.p)[cubic_values(E.p, E.B.value)]
    return _make_count(E.p, 1 + int(roots.sum()))


def chi_sum_x3_plus_1(p: Prime, check: bool = True) -> int:
    """Σ_{x ∈ F_p} χ(x³ + 1) для p ≡ 1 (mod 6); при check сверяет S ≡ 4 (mod 6)"""
    p = p if isinstance(p, Prime) else Prime(p)
    if p % 6 != 1:
        raise ResidueClassError(f"Лемма о Σχ(x³+1) требует p ≡ 1 (mod 6), получено p={p}")

    total = _character_sum(int(p), 1)
    if check and total % 6 != 4:
        error_logger.error(f"Σχ(x³+1) = {total} ≢ 4 (mod 6) при p={p}")
        raise IdentityViolationError(f"Σχ(x³+1) = {total} ≢ 4 (mod 6) при p={p}")
    return total


def residue_class_of_a(E: BachetCurve) -> ResidueClass:
    return ResidueClass.QR if chi(E.a) is Chi.PLUS else ResidueClass.NQR


def twist(E: BachetCurve, g: Optional[FieldElement] = None, check: bool = True) -> TwistPair:
    """Кручение y² = x³ + (ga)³ с невычетом g (по умолчанию наименьшим); при check сверяет b' = −b"""
    if E.p % 6 != 1:
        raise ResidueClassError(f"Кручение рассматривается для p ≡ 1 (mod 6), получено p={E.p}")

    if g is None:
        g = smallest_nonresidue(E.p)
    elif chi(g) is not Chi.MINUS:
        raise NonResidueError(f"g={g} является квадратичным вычетом по модулю {E.p}")

    twisted = BachetCurve(E.p, g * E.a)
    original_count = count_by_character_sum(E)
    twist_count = count_by_character_sum(twisted)
    if check and twist_count.b != -original_count.b:
        error_logger.error(
            f"След кручения {twist_count.b:+d} не равен −b = {-original_count.b:+d} для {E}"
        )
        raise IdentityViolationError(
            f"N + N' = {original_count.N + twist_count.N} ≠ 2p + 2 для {E} и g={g}"
        )
    logger.info(
        f"🔄 Кручение {E}: g={g}, N={original_count.N}, N'={twist_count.N}"
    )
    return TwistPair(
        original=E,
        original_count=original_count,
        twist=twisted,
        twist_count=twist_count,
        g=g,
    )
