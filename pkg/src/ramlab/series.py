"""Truncated formal power series in z over exact rationals.

A series carries coefficients for z^0 .. z^P and nothing beyond; P is the
precision.  Arithmetic results carry the minimum precision of the operands,
so a coefficient is stored only if it is actually known.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Union

__all__ = ["Order", "TruncatedSeries", "NumericValue"]

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class Order:
    """Order of vanishing at z = 0, possibly censored by the truncation.

    ``Finite(t)``: the coefficient of z^t is nonzero and all lower ones
    vanish.  ``AtLeast(b)``: every stored coefficient is zero, so the order
    is at least b (= precision + 1).
    """

    is_finite: bool
    value: int

    @classmethod
    def finite(cls, t: int) -> "Order":
        return cls(True, t)

    @classmethod
    def at_least(cls, bound: int) -> "Order":
        return cls(False, bound)

    def __str__(self) -> str:
        return str(self.value) if self.is_finite else f">={self.value}"


@dataclass(frozen=True)
class NumericValue:
    """Decimal rendering of a truncated evaluation, with a honesty note."""

    text: str
    note: str


class TruncatedSeries:
    """Exact power series truncation; immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar]):
        cs = tuple(Fraction(c) for c in coeffs)
        if not cs:
            raise ValueError("a series stores at least the constant term")
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @property
    def precision(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, precision: int) -> "TruncatedSeries":
        return cls([Fraction(0)] * (precision + 1))

    @classmethod
    def constant(cls, c: Scalar, precision: int) -> "TruncatedSeries":
        coeffs = [Fraction(0)] * (precision + 1)
        coeffs[0] = Fraction(c)
        return cls(coeffs)

    @classmethod
    def z(cls, precision: int) -> "TruncatedSeries":
        coeffs = [Fraction(0)] * (precision + 1)
        if precision >= 1:
            coeffs[1] = Fraction(1)
        return cls(coeffs)

    def coefficient(self, n: int) -> Fraction:
        if not 0 <= n <= self.precision:
            raise IndexError(f"coefficient {n} outside stored precision {self.precision}")
        return self.coeffs[n]

    def truncate(self, precision: int) -> "TruncatedSeries":
        if precision > self.precision:
            raise ValueError("cannot extend a truncation")
        return TruncatedSeries(self.coeffs[: precision + 1])

    def __eq__(self, other) -> bool:
        return isinstance(other, TruncatedSeries) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        p = min(self.precision, other.precision)
        return TruncatedSeries(
            [self.coeffs[n] + other.coeffs[n] for n in range(p + 1)]
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self.coeffs])

    def scale(self, c: Scalar) -> "TruncatedSeries":
        c = Fraction(c)
        return TruncatedSeries([c * x for x in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        p = min(self.precision, other.precision)
        out = [Fraction(0)] * (p + 1)
        for i, a in enumerate(self.coeffs[: p + 1]):
            if a == 0:
                continue
            for j in range(p + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "TruncatedSeries":
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        result = TruncatedSeries.constant(1, self.precision)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def delta(self) -> "TruncatedSeries":
        """Euler operator z d/dz: multiplies the z^n coefficient by n."""
        return TruncatedSeries([n * c for n, c in enumerate(self.coeffs)])

    def order(self) -> Order:
        for n, c in enumerate(self.coeffs):
            if c != 0:
                return Order.finite(n)
        return Order.at_least(self.precision + 1)

    def numeric_eval(self, x: Scalar, digits: int) -> NumericValue:
        """Evaluate the stored truncation at x exactly, render to `digits`.

        This is a probe, not an approximation with error bound: the tail of
        the true function beyond the truncation is simply absent.
        """
        x = Fraction(x)
        if abs(x) >= 1:
            raise ValueError("|x| must be < 1")
        if digits < 1:
            raise ValueError("digits must be positive")
        value = Fraction(0)
        xp = Fraction(1)
        for c in self.coeffs:
            value += c * xp
            xp *= x
        with localcontext() as ctx:
            ctx.prec = digits
            rendered = Decimal(value.numerator) / Decimal(value.denominator)
        return NumericValue(
            text=str(rendered),
            note=f"partial sum of the stored truncation (degree {self.precision}); "
            "no tail bound",
        )

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.precision > 5 else ""
        return f"TruncatedSeries([{head}{tail}]; precision={self.precision})"
