"""Exact truncated q-series with exponents in (1/48)Z.

A series is sqrt(2)^k * sum_x c_x q^x with exact rational c_x, known for all
exponents below an explicit truncation order.
"""

from __future__ import annotations

import cmath
import math
from typing import Dict, Iterator, Tuple

from .scalar import ONE, ZERO, mpq

UNIT = 48  # exponents are stored as integers in units of 1/48


def _key(x) -> int:
    q = mpq(x) * UNIT
    if q.denominator != 1:
        raise ValueError(f"exponent {x} is not on the 1/48 lattice")
    return int(q)


class QSeries:
    __slots__ = ("coeffs", "order", "sqrt2")

    def __init__(self, coeffs: Dict[int, mpq], order: int, sqrt2: int = 0):
        """coeffs keyed by 48*exponent; terms with key >= order are unknown and dropped."""
        self.order = order
        self.coeffs = {k: mpq(c) for k, c in coeffs.items() if c and k < order}
        self.sqrt2 = sqrt2
        self._normalize()

    def _normalize(self) -> None:
        if self.sqrt2 >= 2 or self.sqrt2 < 0:
            half = self.sqrt2 // 2
            f = mpq(2) ** half if half >= 0 else mpq(1, 2 ** (-half))
            self.coeffs = {k: c * f for k, c in self.coeffs.items()}
            self.sqrt2 -= 2 * half

    @classmethod
    def monomial(cls, exponent, coef=1, order=None) -> "QSeries":
        k = _key(exponent)
        return cls({k: mpq(coef)}, order if order is not None else 1 << 40)

    # -- access -----------------------------------------------------------------------

    def coefficient(self, exponent) -> mpq:
        k = _key(exponent)
        if k >= self.order:
            raise ValueError(f"exponent {exponent} beyond truncation order {mpq(self.order, UNIT)}")
        if self.sqrt2:
            raise ValueError("coefficient of a series with an odd sqrt(2) prefactor is irrational")
        return self.coeffs.get(k, ZERO)

    def terms(self) -> Iterator[Tuple[mpq, mpq]]:
        for k in sorted(self.coeffs):
            yield mpq(k, UNIT), self.coeffs[k]

    @property
    def order_exponent(self) -> mpq:
        return mpq(self.order, UNIT)

    def leading(self) -> Tuple[mpq, mpq]:
        k = min(self.coeffs)
        return mpq(k, UNIT), self.coeffs[k]

    # -- arithmetic -------------------------------------------------------------------

    def _low(self) -> int:
        return min(self.coeffs) if self.coeffs else self.order

    def __add__(self, other: "QSeries") -> "QSeries":
        if (self.sqrt2 - other.sqrt2) % 2:
            raise ValueError("cannot add series with different sqrt(2) parity")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, ZERO) + c
        return QSeries(out, min(self.order, other.order), self.sqrt2)

    def __neg__(self) -> "QSeries":
        return QSeries({k: -c for k, c in self.coeffs.items()}, self.order, self.sqrt2)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def scale(self, c) -> "QSeries":
        return QSeries({k: mpq(c) * v for k, v in self.coeffs.items()}, self.order, self.sqrt2)

    def __mul__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            return self.scale(other)
        order = min(self.order + other._low(), other.order + self._low())
        out: Dict[int, mpq] = {}
        for a, x in self.coeffs.items():
            if a + other._low() >= order:
                continue
            for b, y in other.coeffs.items():
                k = a + b
                if k < order:
                    out[k] = out.get(k, ZERO) + x * y
        return QSeries(out, order, self.sqrt2 + other.sqrt2)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            return QSeries.monomial(0, 1, self.order).__truediv__(self ** (-n))
        acc = QSeries({0: ONE}, 1 << 40)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            n >>= 1
            if n:
                base = base * base
        return acc

    def __truediv__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            return self.scale(ONE / mpq(other))
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero series")
        b0 = other._low()
        lead = other.coeffs[b0]
        order = min(self.order - b0, other.order + self._low() - 2 * b0)
        rem = dict(self.coeffs)
        out: Dict[int, mpq] = {}
        keys = sorted(other.coeffs)
        while rem:
            r = min(rem)
            k = r - b0
            if k >= order:
                break
            c = rem.pop(r) / lead
            if not c:
                continue
            out[k] = c
            for b in keys[1:]:
                t = k + b
                if t - b0 >= order:
                    break
                v = rem.get(t, ZERO) - c * other.coeffs[b]
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return QSeries(out, order, self.sqrt2 - other.sqrt2)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        order = min(self.order, other.order)
        a = {k: c for k, c in self.coeffs.items() if k < order}
        b = {k: c for k, c in other.coeffs.items() if k < order}
        return self.sqrt2 == other.sqrt2 and a == b

    def truncate(self, order_exponent) -> "QSeries":
        return QSeries(self.coeffs, min(self.order, _key(order_exponent)), self.sqrt2)

    # -- numerics ---------------------------------------------------------------------

    def evaluate(self, tau: complex) -> complex:
        if tau.imag <= 0:
            raise ValueError("tau must lie in the upper half-plane")
        acc = 0j
        for k, c in self.coeffs.items():
            acc += float(c) * cmath.exp(2j * math.pi * tau * k / UNIT)
        return acc * math.sqrt(2) ** self.sqrt2

    def tail_bound(self, tau: complex) -> float:
        """|q|^order with q = e^{2 pi i tau}."""
        return math.exp(-2 * math.pi * tau.imag * self.order / UNIT)

    def __repr__(self) -> str:
        head = ", ".join(f"{x}:{c}" for x, c in list(self.terms())[:6])
        pre = f"sqrt2^{self.sqrt2}*" if self.sqrt2 else ""
        return f"QSeries({pre}{{{head}, ...}} + O(q^{self.order_exponent}))"


def euler_product(scale, order) -> QSeries:
    """prod_{n>=1} (1 - q^{scale n}) up to exponent order (exclusive)."""
    step = _key(scale)
    top = _key(order)
    coeffs: Dict[int, mpq] = {0: ONE}
    n = 1
    while n * step < top:
        s = n * step
        new = dict(coeffs)
        for k, c in coeffs.items():
            if k + s < top:
                new[k + s] = new.get(k + s, ZERO) - c
        coeffs = {k: v for k, v in new.items() if v}
        n += 1
    return QSeries(coeffs, top)


def eta_series(scale, order) -> QSeries:
    """eta(scale * tau) = q^{scale/24} prod (1 - q^{scale n}), exact for exponents below order."""
    scale = mpq(scale)
    if order < 1:
        raise ValueError("order must be at least 1")
    lead = scale / 24
    return QSeries.monomial(lead, 1) * euler_product(scale, mpq(order) - lead)
