"""
Арифметика простого поля F_p: вычеты, символ Лежандра χ,
квадратные и кубические корни, генерация простых.
"""
from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass
from enum import IntEnum
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from bachet.exceptions import (
    InvalidResidueClassError,
    ModulusMismatchError,
    NoInverseError,
    NotPrimeError,
)

logger = logging.getLogger(__name__)

SquareRootTable = Dict[int, Tuple[int, ...]]


def is_prime(n: int) -> bool:
    """Детерминированная проверка делением до √n"""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


class Prime(int):
    """Простое p > 3, характеристика поля"""

    def __new__(cls, value: int) -> "Prime":
        if isinstance(value, bool) or int(value) != value:
            raise NotPrimeError(f"Ожидалось целое число, получено {value!r}")
        value = int(value)
        if value <= 3 or not is_prime(value):
            raise NotPrimeError(f"{value} не является простым числом > 3")
        return super().__new__(cls, value)

    def __repr__(self) -> str:
        return f"Prime({int(self)})"


class Chi(IntEnum):
    """Значения квадратичного характера"""
    MINUS = -1
    ZERO = 0
    PLUS = 1


@dataclass(frozen=True)
class FieldElement:
    """Канонический вычет 0 ≤ value < p"""
    value: int
    modulus: Prime

    def __post_init__(self):
        modulus = self.modulus if isinstance(self.modulus, Prime) else Prime(self.modulus)
        object.__setattr__(self, 'modulus', modulus)
        object.__setattr__(self, 'value', int(self.value) % modulus)

    @classmethod
    def of(cls, value: int, p: Union[int, Prime]) -> "FieldElement":
        return cls(value, p if isinstance(p, Prime) else Prime(p))

    def _coerce(self, other: Union["FieldElement", int]) -> "FieldElement":
        if isinstance(other, FieldElement):
            return other
        if isinstance(other, int):
            return FieldElement(other, self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else fp_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else fp_sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else fp_sub(other, self)

    def __mul__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else fp_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else fp_mul(self, fp_inv(other))

    def __neg__(self) -> "FieldElement":
        return fp_neg(self)

    def __pow__(self, exponent: int) -> "FieldElement":
        return fp_pow(self, exponent)

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return str(self.value)


def _check_same_field(lhs: FieldElement, rhs: FieldElement) -> Prime:
    if lhs.modulus != rhs.modulus:
        raise ModulusMismatchError(
            f"Элементы из разных полей: F_{lhs.modulus} и F_{rhs.modulus}"
        )
    return lhs.modulus


def fp_add(lhs: FieldElement, rhs: FieldElement) -> FieldElement:
    p = _check_same_field(lhs, rhs)
    return FieldElement(lhs.value + rhs.value, p)


def fp_sub(lhs: FieldElement, rhs: FieldElement) -> FieldElement:
    p = _check_same_field(lhs, rhs)
    return FieldElement(lhs.value - rhs.value, p)


def fp_mul(lhs: FieldElement, rhs: FieldElement) -> FieldElement:
    p = _check_same_field(lhs, rhs)
    return FieldElement(lhs.value * rhs.value, p)


def fp_neg(u: FieldElement) -> FieldElement:
    return FieldElement(-u.value, u.modulus)


def fp_inv(u: FieldElement) -> FieldElement:
    """Обратный элемент; для нуля NoInverseError"""
    if u.value == 0:
        raise NoInverseError(f"0 не обратим в F_{u.modulus}")
    return FieldElement(pow(u.value, -1, u.modulus), u.modulus)


def fp_pow(u: FieldElement, exponent: int) -> FieldElement:
    if exponent < 0:
        u, exponent = fp_inv(u), -exponent
    return FieldElement(pow(u.value, exponent, u.modulus), u.modulus)


def legendre_symbol(u: int, p: int) -> int:
    """Критерий Эйлера: u^((p−1)/2) mod p, сведённый к {−1, 0, 1}"""
    ls = pow(u % p, (p - 1) // 2, p)
    return -1 if ls == p - 1 else ls


def chi(u: FieldElement) -> Chi:
    return Chi(legendre_symbol(u.value, u.modulus))


def square_root_table(p: Union[int, Prime]) -> SquareRootTable:
    """Таблица u -> корни y² = u, O(p) памяти; строится только при полном переборе"""
    logger.debug(f"🔍 Построение таблицы квадратных корней для p={p}")
    p = int(p)
    roots: Dict[int, List[int]] = {}
    squares = np.arange(p, dtype=np.int64)
    squares = (squares * squares) % p
    for y, u in enumerate(squares.tolist()):
        roots.setdefault(u, []).append(y)
    return {u: tuple(ys) for u, ys in roots.items()}


@functools.lru_cache(maxsize=32)
def character_table(p: Union[int, Prime]) -> np.ndarray:
    """χ(u) для всех u ∈ F_p одним массивом; только там, где O(p) памяти уже допустимо"""
    p = int(p)
    ys = np.arange(p, dtype=np.int64)
    table = np.full(p, Chi.MINUS, dtype=np.int64)
    table[ys * ys % p] = Chi.PLUS
    table[0] = Chi.ZERO
    table.flags.writeable = False
    return table


@functools.lru_cache(maxsize=32)
def square_root_counts(p: Union[int, Prime]) -> np.ndarray:
    """Число корней y² = u для всех u ∈ F_p"""
    p = int(p)
    ys = np.arange(p, dtype=np.int64)
    counts = np.bincount(ys * ys % p, minlength=p)
    counts.flags.writeable = False
    return counts


def cubic_values(p: Union[int, Prime], B: int) -> np.ndarray:
    """x³ + B по всем x ∈ F_p"""
    p = int(p)
    xs = np.arange(p, dtype=np.int64)
    return (xs * xs % p * xs + B) % p


def _tonelli_shanks(n: int, p: int) -> int:
    """Один корень квадратичного вычета n ≠ 0"""
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)

    # p − 1 = q·2^s, q нечётное
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1

    z = 2
    while legendre_symbol(z, p) != -1:
        z += 1

    c = pow(z, q, p)
    r = pow(n, (q + 1) // 2, p)
    t = pow(n, q, p)
    m = s
    while t != 1:
        i, temp = 0, t
        while temp != 1:
            temp = temp * temp % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r = r * b % p
        t = t * b * b % p
        c = b * b % p
        m = i
    return r


def sqrt_mod(u: FieldElement, table: Optional[SquareRootTable] = None) -> List[FieldElement]:
    """Все y с y² = u, по возрастанию; длина 1 + χ(u)"""
    p = u.modulus
    if table is not None:
        return [FieldElement(y, p) for y in table.get(u.value, ())]

    if u.value == 0:
        return [FieldElement(0, p)]
    if legendre_symbol(u.value, p) != 1:
        return []
    r = _tonelli_shanks(u.value, p)
    return [FieldElement(y, p) for y in sorted({r, p - r})]


def cube_roots(u: FieldElement) -> List[FieldElement]:
    """Все x с x³ = u, полным перебором по F_p"""
    p = int(u.modulus)
    xs = np.arange(p, dtype=np.int64)
    cubes = (xs * xs % p) * xs % p
    return [FieldElement(int(x), u.modulus) for x in np.flatnonzero(cubes == u.value)]


def smallest_nonresidue(p: Union[int, Prime]) -> FieldElement:
    """Наименьшее g ≥ 2 с χ(g) = −1"""
    p = p if isinstance(p, Prime) else Prime(p)
    g = 2
    while legendre_symbol(g, p) != -1:
        g += 1
    return FieldElement(g, p)


def sieve(bound: int) -> np.ndarray:
    """Решето Эратосфена: все простые ≤ bound"""
    if bound < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(bound + 1, dtype=bool)
    flags[:2] = False
    for d in range(2, math.isqrt(bound) + 1):
        if flags[d]:
            flags[d * d: bound + 1: d] = False
    return np.flatnonzero(flags).astype(np.int64)


def primes_in_class(bound: int, residue: int, modulus: int) -> List[Prime]:
    """Простые 5 ≤ p ≤ bound с p ≡ residue (mod modulus), по возрастанию"""
    if modulus not in (1, 6, 12):
        raise InvalidResidueClassError(f"Модуль {modulus} не из {{1, 6, 12}}")
    if modulus > 1 and math.gcd(residue, modulus) != 1:
        raise InvalidResidueClassError(
            f"Класс {residue} mod {modulus} не содержит простых > 3"
        )
    if bound < 5:
        raise InvalidResidueClassError(f"Граница {bound} меньше 5")

    primes = sieve(bound)
    primes = primes[primes >= 5]
    if modulus > 1:
        primes = primes[primes % modulus == residue % modulus]
    logger.debug(f"Найдено {len(primes)} простых ≤ {bound} в классе {residue} mod {modulus}")
    return [Prime(int(p)) for p in primes]
