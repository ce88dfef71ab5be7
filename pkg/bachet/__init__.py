"""Кривые Баше y² = x³ + a³ над простыми полями F_p."""

__version__ = "1.0.0"
