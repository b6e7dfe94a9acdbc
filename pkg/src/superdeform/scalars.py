"""Exact scalar types used as polynomial coefficients.

Ordinary numbers are plain ``fractions.Fraction``.  Two small commutative
extensions are used by specific subsystems:

* ``LinForm`` -- affine-linear forms ``const + sum(c_i * u_i)`` over named
  unknowns, the coefficient type used while assembling coboundary equations.
  Products of two non-constant forms are refused: the systems we build are
  linear by construction, so such a product is always a bug.
* ``Dual`` -- first-order dual numbers ``a + b*eps`` with ``eps**2 = 0``,
  used for first-order deformation checks.
"""
from __future__ import annotations

import re
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational written as ``p`` or ``p/q``.

    Decimal and scientific notation are rejected on purpose: every number
    on the wire is exact.
    """
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"not an exact rational (expected p or p/q): {text!r}")
    return Fraction(s)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class LinForm:
    """Affine form over named unknowns with Fraction coefficients.

    ``coeffs`` maps an opaque unknown key (int or str) to its coefficient;
    ``const`` is the inhomogeneous part.
    """

    __slots__ = ("coeffs", "const")

    def __init__(self, coeffs=None, const=0):
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v}
        self.const = Fraction(const)

    @staticmethod
    def unknown(key) -> "LinForm":
        return LinForm({key: Fraction(1)})

    @staticmethod
    def _wrap(other):
        if isinstance(other, LinForm):
            return other
        if isinstance(other, (int, Fraction)):
            return LinForm({}, other)
        return NotImplemented

    def __bool__(self):
        return bool(self.coeffs) or bool(self.const)

    def is_constant(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs and self.const == o.const

    def __hash__(self):
        return hash((frozenset(self.coeffs.items()), self.const))

    def __add__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        coeffs = dict(self.coeffs)
        for k, v in o.coeffs.items():
            nv = coeffs.get(k, 0) + v
            if nv:
                coeffs[k] = nv
            else:
                coeffs.pop(k, None)
        return LinForm(coeffs, self.const + o.const)

    __radd__ = __add__

    def __neg__(self):
        return LinForm({k: -v for k, v in self.coeffs.items()}, -self.const)

    def __sub__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LinForm):
            if other.is_constant():
                other = other.const
            elif self.is_constant():
                self, other = other, self.const
            else:
                raise TypeError("product of two non-constant linear forms")
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if not other:
            return LinForm()
        return LinForm({k: v * other for k, v in self.coeffs.items()},
                       self.const * other)

    __rmul__ = __mul__

    def substitute(self, assignment) -> Fraction:
        total = self.const
        for k, v in self.coeffs.items():
            total += v * assignment.get(k, Fraction(0))
        return total

    def __repr__(self):
        parts = [f"{format_rational(v)}*u{k}" for k, v in sorted(self.coeffs.items(), key=lambda kv: str(kv[0]))]
        if self.const or not parts:
            parts.append(format_rational(self.const))
        return " + ".join(parts)


class Dual:
    """First-order dual number ``re + im*eps`` with ``eps**2 = 0``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def eps() -> "Dual":
        return Dual(0, 1)

    @staticmethod
    def _wrap(other):
        if isinstance(other, Dual):
            return other
        if isinstance(other, (int, Fraction)):
            return Dual(other)
        return NotImplemented

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return Dual(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.re, -self.im)

    def __sub__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return Dual(self.re * o.re, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __repr__(self):
        return f"({format_rational(self.re)} + {format_rational(self.im)}*eps)"
