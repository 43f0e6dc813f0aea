"""Exact rational scalars and small combinatorial helpers."""

from __future__ import annotations

from math import factorial
from typing import Union

from gmpy2 import mpq

Scalar = type(mpq(0))
Number = Union[int, "mpq"]

ZERO = mpq(0)
ONE = mpq(1)
HALF = mpq(1, 2)


def Q(num, den: int = 1) -> mpq:
    """Build an exact rational from an int, a string like '3/8', or a pair."""
    if isinstance(num, str):
        return mpq(num)
    return mpq(num, den) if den != 1 else mpq(num)


def binom(x, k: int) -> mpq:
    """Generalized binomial coefficient x(x-1)...(x-k+1)/k! for rational x."""
    if k < 0:
        return ZERO
    acc = ONE
    x = mpq(x)
    for j in range(k):
        acc *= x - j
    return acc / factorial(k)


def is_integral(x) -> bool:
    return mpq(x).denominator == 1


def is_half_odd(x) -> bool:
    return mpq(x).denominator == 2


def fmt(x) -> str:
    """Render a scalar the way the reports do: '3', '-1/8'."""
    x = mpq(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
