import logging
from typing import Dict, Optional

logger = logging.getLogger(__name__)


def factorize(n: int) -> Dict[int, int]:
    """Разложение на простые делением (N ≤ p + 1 + 2√p, масштаб настольный)"""
    if n < 1:
        raise ValueError(f"Нельзя разложить {n}")
    factors: Dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def valuation(n: int, prime: int) -> int:
    """Показатель prime в n"""
    v = 0
    while n % prime == 0:
        n //= prime
        v += 1
    return v


def format_signed(value: int) -> str:
    """След со знаком: +2, -4, 0"""
    return f"{value:+d}" if value else "0"


def washington_form(p: int, n: int) -> Optional[str]:
    """Какой из видов n² + n + 1, n² − n + 1 принимает p"""
    if p == n * n + n + 1:
        return "n^2+n+1"
    if p == n * n - n + 1:
        return "n^2-n+1"
    return None


def is_excluded_washington_form(p: int, n: int) -> bool:
    """p = n² + 1 или p = (n ∓ 1)², исключаемые для кривых Баше"""
    return p in (n * n + 1, (n - 1) ** 2, (n + 1) ** 2)
