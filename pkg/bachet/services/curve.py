"""
Кривая Баше y² = x³ + a³ над F_p, её точки и групповой закон.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from bachet.config import settings
from bachet.exceptions import (
    CurveMismatchError,
    DuplicationUndefinedError,
    EnumerationBoundError,
    PointNotOnCurveError,
    SingularCurveError,
    StructureError,
)
from bachet.utils.field import FieldElement, Prime, square_root_table, sqrt_mod

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BachetCurve:
    """y² = x³ + A·x + B с A = 0 и B = a³, a ≠ 0"""
    p: Prime
    a: FieldElement
    B: FieldElement = field(init=False, compare=False)

    A = 0

    def __post_init__(self):
        if not isinstance(self.p, Prime):
            object.__setattr__(self, 'p', Prime(self.p))
        if not isinstance(self.a, FieldElement):
            object.__setattr__(self, 'a', FieldElement(self.a, self.p))
        if self.a.modulus != self.p:
            raise CurveMismatchError(f"a задан в F_{self.a.modulus}, а кривая над F_{self.p}")
        if self.a.value == 0:
            # a = 0 даёт B = 0 и нулевой дискриминант
            raise SingularCurveError("a = 0 задаёт особую кривую")
        object.__setattr__(self, 'B', self.a ** 3)

    @classmethod
    def of(cls, p: int, a: int) -> "BachetCurve":
        prime = p if isinstance(p, Prime) else Prime(p)
        return cls(prime, FieldElement(a, prime))

    @property
    def discriminant(self) -> FieldElement:
        return FieldElement(-16 * (4 * self.A ** 3 + 27 * self.B.value ** 2), self.p)

    def rhs(self, x: int) -> int:
        """x³ + Ax + B mod p"""
        return (x * x * x + self.A * x + self.B.value) % self.p

    def contains(self, x: int, y: int) -> bool:
        return (y * y - self.rhs(x)) % self.p == 0

    def __str__(self) -> str:
        return f"y^2 = x^3 + {self.a.value}^3 (mod {self.p})"


@dataclass(frozen=True)
class Point:
    """Бесконечно удалённая точка o (x = y = None) или аффинная (x, y) на кривой"""
    curve: BachetCurve
    x: Optional[FieldElement] = None
    y: Optional[FieldElement] = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise PointNotOnCurveError("У аффинной точки должны быть обе координаты")
        if self.x is None:
            return
        if not self.curve.contains(self.x.value, self.y.value):
            raise PointNotOnCurveError(
                f"({self.x}, {self.y}) не лежит на кривой {self.curve}"
            )

    @classmethod
    def infinity(cls, curve: BachetCurve) -> "Point":
        return cls(curve)

    @classmethod
    def affine(cls, curve: BachetCurve, x: int, y: int) -> "Point":
        return cls(curve, FieldElement(x, curve.p), FieldElement(y, curve.p))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @property
    def sort_key(self) -> Tuple[int, int, int]:
        if self.is_infinity:
            return (0, 0, 0)
        return (1, self.x.value, self.y.value)

    def __str__(self) -> str:
        return "o" if self.is_infinity else f"({self.x},{self.y})"


@dataclass(frozen=True)
class RationalSolution:
    """Рациональное решение уравнения Баше y² − x³ = c"""
    x: Fraction
    y: Fraction
    c: int

    def __post_init__(self):
        object.__setattr__(self, 'x', Fraction(self.x))
        object.__setattr__(self, 'y', Fraction(self.y))
        if self.y * self.y - self.x ** 3 != self.c:
            raise PointNotOnCurveError(f"({self.x}, {self.y}) не решение y² − x³ = {self.c}")


def negate(P: Point) -> Point:
    if P.is_infinity:
        return P
    return Point(P.curve, P.x, -P.y)


def add(P: Point, Q: Point) -> Point:
    """Групповой закон: хорда, касательная, o для P + (−P)"""
    if P.curve != Q.curve:
        raise CurveMismatchError(f"Точки с разных кривых: {P.curve} и {Q.curve}")
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P

    curve = P.curve
    p = curve.p
    x1, y1, x2, y2 = P.x.value, P.y.value, Q.x.value, Q.y.value
    if x1 == x2:
        if (y1 + y2) % p == 0:
            # сюда же попадает удвоение точки порядка 2 (y1 = 0)
            return Point.infinity(curve)
        # x1 = x2 и y1 = y2 ≠ 0: касательная
        m = (3 * x1 * x1 + curve.A) * pow(2 * y1, -1, p) % p
    else:
        m = (y2 - y1) * pow(x2 - x1, -1, p) % p

    x3 = (m * m - x1 - x2) % p
    y3 = (m * (x1 - x3) - y1) % p
    return Point(curve, FieldElement(x3, p), FieldElement(y3, p))


def scalar_mul(k: int, P: Point) -> Point:
    """k·P удвоением и сложением"""
    if k < 0:
        return scalar_mul(-k, negate(P))
    result = Point.infinity(P.curve)
    addend = P
    while k:
        if k & 1:
            result = add(result, addend)
        addend = add(addend, addend)
        k >>= 1
    return result


def point_order(P: Point, group_order_factored: Dict[int, int]) -> int:
    """Порядок точки: снимаем простые множители N, пока k·P = o"""
    order = 1
    for prime, exponent in group_order_factored.items():
        order *= prime ** exponent
    if not scalar_mul(order, P).is_infinity:
        raise StructureError(f"N·P ≠ o для N={order}, P={P}: ошибка подсчёта точек")

    for prime, exponent in group_order_factored.items():
        for _ in range(exponent):
            if scalar_mul(order // prime, P).is_infinity:
                order //= prime
            else:
                break
    return order


def enumerate_points(E: BachetCurve, bound: Optional[int] = None) -> List[Point]:
    """o и все аффинные точки в порядке (x, y)"""
    bound = settings.enumeration_bound if bound is None else bound
    if E.p > bound:
        raise EnumerationBoundError(f"p={E.p} больше границы перебора {bound}")

    logger.debug(f"🔍 Перебор точек кривой {E}")
    table = square_root_table(E.p)
    points = [Point.infinity(E)]
    for x in range(E.p):
        for y in table.get(E.rhs(x), ()):
            points.append(Point.affine(E, x, y))
    logger.debug(f"✅ Найдено {len(points)} точек на {E}")
    return points


def random_point(E: BachetCurve, rng: random.Random) -> Point:
    """Случайный x, корень из x³ + B, при невычете повтор"""
    while True:
        x = rng.randrange(E.p)
        roots = sqrt_mod(FieldElement(E.rhs(x), E.p))
        if roots:
            y = roots[0] if len(roots) == 1 else rng.choice(roots)
            return Point(E, FieldElement(x, E.p), y)


def bachet_duplicate(s: RationalSolution) -> RationalSolution:
    """((x⁴ − 8cx)/4y², (−x⁶ − 20cx³ + 8c²)/8y³)"""
    if s.y == 0:
        raise DuplicationUndefinedError(f"Удвоение не определено для y = 0 (x = {s.x})")
    x, y, c = s.x, s.y, s.c
    x_new = (x ** 4 - 8 * c * x) / (4 * y ** 2)
    y_new = (-x ** 6 - 20 * c * x ** 3 + 8 * c ** 2) / (8 * y ** 3)
    return RationalSolution(x_new, y_new, c)
