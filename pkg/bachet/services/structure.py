"""
Структура группы E(F_p) ≅ C_n × C_nm, перепись точек порядка 3.

Экспонента λ (наибольший порядок точки) однозначно задаёт абелеву группу ранга ≤ 2
порядка N: E ≅ C_{N/λ} × C_λ.
"""
import logging
import math
import random
from typing import Dict, List, Optional

from bachet.config import settings
from bachet.exceptions import StructureError
from bachet.models import GroupStructure, TorsionCensus
from bachet.services.counting import count_by_character_sum
from bachet.services.curve import (
    BachetCurve,
    Point,
    add,
    enumerate_points,
    point_order,
    random_point,
    scalar_mul,
)
from bachet.utils.field import FieldElement, cube_roots, sqrt_mod
from bachet.utils.helpers import factorize, valuation

logger = logging.getLogger(__name__)


def _validate(E: BachetCurve, N: int, n: int, nm: int) -> None:
    p = int(E.p)
    errors: List[str] = []
    if n * nm != N:
        errors.append(f"n·nm = {n * nm} ≠ N = {N}")
    if nm % n:
        errors.append(f"n={n} не делит nm={nm}")
    if (p - 1) % n:
        errors.append(f"n={n} не делит p−1={p - 1}")
    if p % 6 == 5 and (n, nm) != (1, p + 1):
        errors.append(f"для p ≡ 5 (mod 6) ожидалась C_{p + 1}, получено C_{n} x C_{nm}")
    if errors:
        logger.error(f"❌ Некорректная структура для {E}: {'; '.join(errors)}")
        raise StructureError("; ".join(errors))


def structure_exhaustive(E: BachetCurve, bound: Optional[int] = None) -> GroupStructure:
    """Полный перебор точек; λ = НОК порядков, n = N/λ"""
    points = enumerate_points(E, bound)
    N = len(points)
    factors = factorize(N)

    exponent = 1
    for P in points:
        if scalar_mul(exponent, P).is_infinity:
            continue
        exponent = math.lcm(exponent, point_order(P, factors))

    n = N // exponent
    _validate(E, N, n, exponent)
    logger.debug(f"✅ {E}: C_{n} x C_{exponent} (перебор)")
    return GroupStructure(n=n, nm=exponent, method="exhaustive", verified=True, samples=N)


def element_order_census(E: BachetCurve, bound: Optional[int] = None) -> Dict[int, int]:
    """Сколько точек каждого порядка"""
    points = enumerate_points(E, bound)
    factors = factorize(len(points))
    census: Dict[int, int] = {}
    for P in points:
        order = point_order(P, factors)
        census[order] = census.get(order, 0) + 1
    return dict(sorted(census.items()))


def count_order3(E: BachetCurve, check: bool = True) -> TorsionCensus:
    """Точки порядка 3: 3x⁴ + 12Bx = 0, т.е. x = 0 или x³ = −4B; при check число из {0, 2, 8}"""
    p = E.p
    count = len(sqrt_mod(E.B))
    for x in cube_roots(FieldElement(-4 * E.B.value, p)):
        count += len(sqrt_mod(FieldElement(E.rhs(x.value), p)))
    if check and count not in (0, 2, 8):
        logger.error(f"❌ {E}: {count} точек порядка 3")
        raise StructureError(f"Число точек порядка 3 равно {count}, ожидалось 0, 2 или 8")
    return TorsionCensus(order3_count=count, full_3torsion=count == 8)


def count_order2(E: BachetCurve) -> int:
    """Точки (x, 0): корни x³ + B = 0"""
    return len(cube_roots(-E.B))


def _torsion_counts_ok(E: BachetCurve, n: int) -> bool:
    """|E[ℓ]| = ℓ² для ℓ ∈ {2, 3}, делящих n"""
    if n % 2 == 0 and count_order2(E) != 3:
        return False
    if n % 3 == 0 and not count_order3(E).full_3torsion:
        return False
    return True


def _prime_power_order(P: Point, prime: int) -> int:
    order = 1
    while not P.is_infinity:
        P = scalar_mul(prime, P)
        order *= prime
    return order


def _generated_size(X: Point, order_x: int, Y: Point, order_y: int) -> int:
    """|⟨X, Y⟩| = ord X · k, k наименьшее с k·Y ∈ ⟨X⟩"""
    members = set()
    current = Point.infinity(X.curve)
    for _ in range(order_x):
        members.add(current)
        current = add(current, X)

    current = Y
    for k in range(1, order_y + 1):
        if current in members:
            return order_x * k
        current = add(current, Y)
    return order_x * order_y


class _SylowCertificate:
    """Образы выборки в ℓ-силовской подгруппе и проверка, что они её порождают"""

    def __init__(self, N: int, prime: int):
        self.prime = prime
        self.sylow_order = prime ** valuation(N, prime)
        self.cofactor = N // self.sylow_order
        self.images: List[tuple] = []

    def extend(self, samples: List[Point]) -> None:
        for R in samples[len(self.images):]:
            image = scalar_mul(self.cofactor, R)
            self.images.append((image, _prime_power_order(image, self.prime)))

    def certified(self) -> bool:
        if not self.images:
            return False
        X, order_x = max(self.images, key=lambda item: item[1])
        if order_x == self.sylow_order:
            return True
        for Y, order_y in self.images:
            if order_x * order_y < self.sylow_order:
                continue
            if _generated_size(X, order_x, Y, order_y) == self.sylow_order:
                return True
        return False


def structure_randomized(
    E: BachetCurve,
    sample_budget: Optional[int] = None,
    seed: Optional[int] = None,
    rng: Optional[random.Random] = None,
) -> GroupStructure:
    """
    Случайные точки, λ = НОК их порядков. Кандидат (N/λ, λ) принимается только
    с сертификатом: n | λ, n | p−1, полное ℓ-кручение для ℓ ∈ {2, 3} и пара точек,
    порождающая ℓ-силовскую подгруппу для каждого простого ℓ | n.
    """
    budget = settings.sample_budget if sample_budget is None else sample_budget
    if rng is None:
        rng = random.Random(settings.default_seed if seed is None else seed)

    p = int(E.p)
    N = count_by_character_sum(E).N
    factors = factorize(N)
    certificates: Dict[int, _SylowCertificate] = {}
    samples: List[Point] = []
    exponent = 1
    n = N

    for used in range(1, budget + 1):
        R = random_point(E, rng)
        samples.append(R)
        exponent = math.lcm(exponent, point_order(R, factors))
        n = N // exponent

        if exponent % n or (p - 1) % n:
            continue
        if not _torsion_counts_ok(E, n):
            continue

        verified = True
        for prime in factorize(n):
            certificate = certificates.setdefault(prime, _SylowCertificate(N, prime))
            certificate.extend(samples)
            if not certificate.certified():
                verified = False
                break
        if verified:
            _validate(E, N, n, exponent)
            logger.debug(f"✅ {E}: C_{n} x C_{exponent} за {used} выборок")
            return GroupStructure(n=n, nm=exponent, method="randomized", verified=True, samples=used)

    logger.warning(f"⚠️ {E}: кандидат C_{n} x C_{exponent} не подтверждён за {budget} выборок")
    return GroupStructure(n=n, nm=exponent, method="randomized", verified=False, samples=budget)


def structure_of(
    E: BachetCurve,
    seed: Optional[int] = None,
    sample_budget: Optional[int] = None,
    prefer_exhaustive: bool = True,
    bound: Optional[int] = None,
) -> GroupStructure:
    """Перебор в пределах границы, иначе случайный путь; при prefer_exhaustive=False наоборот"""
    bound = settings.enumeration_bound if bound is None else bound
    within_bound = E.p <= bound

    if prefer_exhaustive and within_bound:
        return structure_exhaustive(E, bound)

    result = structure_randomized(E, sample_budget=sample_budget, seed=seed)
    if not result.verified and within_bound:
        logger.info(f"🔄 Переход к полному перебору для {E}")
        return structure_exhaustive(E, bound)
    return result
