"""Exact Gaussian-rational arithmetic.

Spectra whose angles are quarter turns (eigenvalues in {1, i, -1, -i}) stay in
Q(i), so character values and trace functionals can be compared exactly.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


@dataclass(frozen=True)
class QQi:
    """A Gaussian rational re + im*i with Fraction components."""

    re: Fraction
    im: Fraction

    @staticmethod
    def of(x) -> "QQi":
        if isinstance(x, QQi):
            return x
        return QQi(_frac(x), Fraction(0))

    def __add__(self, other):
        o = QQi.of(other)
        return QQi(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-QQi.of(other))

    def __rsub__(self, other):
        return QQi.of(other) + (-self)

    def __mul__(self, other):
        o = QQi.of(other)
        return QQi(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QQi.of(other)
        n = o.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * QQi(o.re / n, -o.im / n)

    def __rtruediv__(self, other):
        return QQi.of(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("integer exponents only")
        base = self if k >= 0 else QQi(Fraction(1), Fraction(0)) / self
        out = QQi(Fraction(1), Fraction(0))
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = QQi.of(other)
        if not isinstance(other, QQi):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def conjugate(self) -> "QQi":
        return QQi(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __complex__(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"QQi({self.re}, {self.im})"


QQI_ONE = QQi(Fraction(1), Fraction(0))
QQI_I = QQi(Fraction(0), Fraction(1))

# Quarter-turn roots of unity: turn -> exact value.
_QUARTER = {
    Fraction(0): QQI_ONE,
    Fraction(1, 4): QQI_I,
    Fraction(1, 2): QQi(Fraction(-1), Fraction(0)),
    Fraction(3, 4): QQi(Fraction(0), Fraction(-1)),
}


def exact_unit(turn: Fraction) -> QQi | None:
    """Exact value of exp(2*pi*i*turn) when the angle is a quarter turn."""
    t = Fraction(turn) % 1
    return _QUARTER.get(t)


def unit_complex(turn) -> complex:
    """exp(2*pi*i*turn) as a complex double; `turn` is a fraction of a full circle."""
    return cmath.exp(2j * cmath.pi * float(turn))
