"""Иерархия исключений пакета"""


class BachetError(Exception):
    """Базовая ошибка пакета"""


class NotPrimeError(BachetError, ValueError):
    """Модуль не является простым числом > 3"""


class ModulusMismatchError(BachetError, ValueError):
    """Элементы из разных полей"""


class NoInverseError(BachetError, ZeroDivisionError):
    """У нуля нет обратного"""


class PointNotOnCurveError(BachetError, ValueError):
    """Точка не удовлетворяет уравнению кривой"""


class CurveMismatchError(BachetError, ValueError):
    """Точки лежат на разных кривых"""


class EnumerationBoundError(BachetError, ValueError):
    """p превышает границу полного перебора"""


class HasseViolationError(BachetError, ArithmeticError):
    """Нарушена граница Хассе, значит ошибка в арифметике"""


class ResidueClassError(BachetError, ValueError):
    """Неподходящий класс вычетов p"""


class InvalidResidueClassError(BachetError, ValueError):
    """Неверный класс вычетов для генерации простых"""


class NonResidueError(BachetError, ValueError):
    """g не является квадратичным невычетом"""


class DuplicationUndefinedError(BachetError, ZeroDivisionError):
    """Удвоение Баше не определено при y = 0"""


class StructureError(BachetError, ArithmeticError):
    """Найденная структура группы противоречит инвариантам"""


class SingularCurveError(BachetError, ValueError):
    """a = 0: дискриминант равен нулю"""


class IdentityViolationError(BachetError, ArithmeticError):
    """Нарушено тождество, которое обязано выполняться"""


class BoundError(BachetError, ValueError):
    """Граница перебора простых слишком мала"""
