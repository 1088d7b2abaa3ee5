"""General helper utilities for the KL Galois twist verifier."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import TYPE_CHECKING

from .const import DECIMAL_DIGITS

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator


@lru_cache(64)
def units_mod(level: int) -> tuple[int, ...]:
    """
    The exponents k with gcd(k, level) = 1, in increasing order.

    Level 1 is the trivial group; we represent its single element by k = 1 so
    that "apply every Galois automorphism" never becomes an empty loop.
    """
    if level < 1:
        msg = f"level must be positive, got {level}"
        raise ValueError(msg)
    if level == 1:
        return (1,)
    return tuple(k for k in range(1, level) if gcd(k, level) == 1)


def parse_fraction(value) -> Fraction:
    """
    Accept ints, Fractions, "p/q" strings and decimal strings.

    Floats are refused: a float torsion exponent is almost always a
    rounding accident and we would silently build the wrong root of unity.
    """
    if isinstance(value, bool):
        msg = "booleans are not rationals"
        raise TypeError(msg)
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    msg = f"expected an int, Fraction or 'p/q' string, got {value!r}"
    raise TypeError(msg)


def fraction_to_str(value: Fraction | int) -> str:
    """Serialize a rational as 'p/q' (or 'p' when integral)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: float | Fraction | None) -> str | None:
    """Advisory decimal with the fixed number of significant digits."""
    if value is None:
        return None
    return format(float(value), f".{DECIMAL_DIGITS}g")


def exact_sqrt(value: Fraction) -> Fraction | None:
    """Rational square root, or None if value is not a rational square."""
    if value < 0:
        return None
    num, den = isqrt(value.numerator), isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    result = 1
    for value in values:
        den = Fraction(value).denominator
        result = result * den // gcd(result, den)
    return result


def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as weakly decreasing tuples, in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first, *rest)
