"""Exact supercommutative coordinate algebra of R^{1|2}.

An element is f0 + f1*t1 + f2*t2 + f12*t1*t2 where x is the even coordinate,
t1 and t2 are odd (t_i*t_j = -t_j*t_i, so t_i**2 = 0), and the four
components are polynomials in x with exact coefficients.  All operations are
pure; values are immutable and safe to share.

The derivations provided are d/dx, the left odd derivations d/dt_i, and
eta_i = d/dt_i - t_i*d/dx.  They satisfy, as operators,

    d_i o d_i = 0,    eta_i o eta_i = -d/dx,    eta_1 eta_2 + eta_2 eta_1 = 0.
"""
from __future__ import annotations

from enum import IntEnum
from fractions import Fraction
from typing import Iterator

__all__ = [
    "Parity", "ParityError", "XPoly", "SuperFunction",
    "d_x", "d_theta", "eta_bar", "parity_of", "monomials", "SLOT_NAMES",
]


class ParityError(ValueError):
    """Parity query on a non-homogeneous element."""


class Parity(IntEnum):
    EVEN = 0
    ODD = 1


def _coerce(c):
    return Fraction(c) if isinstance(c, int) else c


class XPoly:
    """Polynomial in x; coefficients ascending by degree, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = tuple(_coerce(c) for c in coeffs)
        while cs and not cs[-1]:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, *a):
        raise AttributeError("XPoly is immutable")

    @staticmethod
    def of(*coeffs) -> "XPoly":
        return XPoly(coeffs)

    @staticmethod
    def zero() -> "XPoly":
        return _XZERO

    @staticmethod
    def one() -> "XPoly":
        return XPoly((1,))

    @staticmethod
    def x(power: int = 1, coeff=1) -> "XPoly":
        return XPoly((0,) * power + (coeff,))

    @property
    def degree(self) -> int:
        """Degree, with -1 as the sentinel for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, XPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"XPoly({self.coeffs!r})"

    def __add__(self, other: "XPoly") -> "XPoly":
        a, b = self.coeffs, other.coeffs
        if not a:
            return other
        if not b:
            return self
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return _xp(out)

    def __neg__(self) -> "XPoly":
        return _xp([-c for c in self.coeffs])

    def __sub__(self, other: "XPoly") -> "XPoly":
        a, b = self.coeffs, other.coeffs
        if not b:
            return self
        out = list(a) + [_ZERO] * (len(b) - len(a))
        for i, c in enumerate(b):
            out[i] = out[i] - c
        return _xp(out)

    def __mul__(self, other: "XPoly") -> "XPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return _XZERO
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] = out[i + j] + ca * cb
        return _xp(out)

    def scale(self, c) -> "XPoly":
        c = _coerce(c)
        if not c:
            return _XZERO
        return _xp([c * v for v in self.coeffs])

    def deriv(self) -> "XPoly":
        cs = self.coeffs
        if len(cs) <= 1:
            return _XZERO
        return _xp([i * c for i, c in enumerate(cs) if i > 0])

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else _ZERO

    def map_coeffs(self, fn) -> "XPoly":
        return XPoly(tuple(fn(c) for c in self.coeffs))


_ZERO = Fraction(0)
_XZERO = XPoly(())


def _xp(cs: list) -> XPoly:
    """Fast constructor: coefficients already exact, only strip zeros."""
    while cs and not cs[-1]:
        cs.pop()
    out = XPoly.__new__(XPoly)
    object.__setattr__(out, "coeffs", tuple(cs))
    return out


# Component slots in the fixed monomial order 1, t1, t2, t1*t2.
SLOT_NAMES = ("1", "t1", "t2", "t1t2")
SLOT_PARITY = (Parity.EVEN, Parity.ODD, Parity.ODD, Parity.EVEN)


class SuperFunction:
    """f0 + f1*t1 + f2*t2 + f12*t1*t2 with XPoly components."""

    __slots__ = ("f0", "f1", "f2", "f12")

    def __init__(self, f0=_XZERO, f1=_XZERO, f2=_XZERO, f12=_XZERO):
        object.__setattr__(self, "f0", f0)
        object.__setattr__(self, "f1", f1)
        object.__setattr__(self, "f2", f2)
        object.__setattr__(self, "f12", f12)

    def __setattr__(self, *a):
        raise AttributeError("SuperFunction is immutable")

    @staticmethod
    def scalar(c) -> "SuperFunction":
        return SuperFunction(XPoly((c,)))

    @staticmethod
    def zero() -> "SuperFunction":
        return _SFZERO

    @staticmethod
    def one() -> "SuperFunction":
        return SuperFunction(XPoly((1,)))

    @staticmethod
    def x(power: int = 1, coeff=1) -> "SuperFunction":
        return SuperFunction(XPoly.x(power, coeff))

    @staticmethod
    def theta(i: int, coeff=1) -> "SuperFunction":
        if i == 1:
            return SuperFunction(f1=XPoly((coeff,)))
        if i == 2:
            return SuperFunction(f2=XPoly((coeff,)))
        raise ValueError(f"theta index must be 1 or 2, got {i}")

    @staticmethod
    def theta12(coeff=1) -> "SuperFunction":
        return SuperFunction(f12=XPoly((coeff,)))

    @staticmethod
    def monomial(power: int, slot: int, coeff=1) -> "SuperFunction":
        """x**power times the slot-th theta monomial (slot in 0..3)."""
        p = XPoly.x(power, coeff)
        parts = [_XZERO] * 4
        parts[slot] = p
        return SuperFunction(*parts)

    def components(self) -> tuple:
        return (self.f0, self.f1, self.f2, self.f12)

    def is_zero(self) -> bool:
        return not (self.f0.coeffs or self.f1.coeffs
                    or self.f2.coeffs or self.f12.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, SuperFunction):
            return NotImplemented
        return (self.f0 == other.f0 and self.f1 == other.f1
                and self.f2 == other.f2 and self.f12 == other.f12)

    def __hash__(self):
        return hash((self.f0, self.f1, self.f2, self.f12))

    def __repr__(self):
        return f"SuperFunction<{self.render()}>"

    def homogeneous_parity(self):
        """Parity if homogeneous (zero counts as even), else None."""
        even = bool(self.f0.coeffs) or bool(self.f12.coeffs)
        odd = bool(self.f1.coeffs) or bool(self.f2.coeffs)
        if even and odd:
            return None
        return Parity.ODD if odd else Parity.EVEN

    def parity(self) -> Parity:
        p = self.homogeneous_parity()
        if p is None:
            raise ParityError(f"non-homogeneous element: {self.render()}")
        return p

    def __add__(self, other: "SuperFunction") -> "SuperFunction":
        return SuperFunction(self.f0 + other.f0, self.f1 + other.f1,
                             self.f2 + other.f2, self.f12 + other.f12)

    def __neg__(self) -> "SuperFunction":
        return SuperFunction(-self.f0, -self.f1, -self.f2, -self.f12)

    def __sub__(self, other: "SuperFunction") -> "SuperFunction":
        return SuperFunction(self.f0 - other.f0, self.f1 - other.f1,
                             self.f2 - other.f2, self.f12 - other.f12)

    def __mul__(self, other: "SuperFunction") -> "SuperFunction":
        """Supercommutative product; t2*t1 contributions fold to -t1*t2."""
        a0, a1, a2, a12 = self.f0, self.f1, self.f2, self.f12
        b0, b1, b2, b12 = other.f0, other.f1, other.f2, other.f12
        return SuperFunction(
            a0 * b0,
            a0 * b1 + a1 * b0,
            a0 * b2 + a2 * b0,
            a0 * b12 + a12 * b0 + a1 * b2 - a2 * b1,
        )

    def scale(self, c) -> "SuperFunction":
        return SuperFunction(self.f0.scale(c), self.f1.scale(c),
                             self.f2.scale(c), self.f12.scale(c))

    def d_x(self) -> "SuperFunction":
        return SuperFunction(self.f0.deriv(), self.f1.deriv(),
                             self.f2.deriv(), self.f12.deriv())

    def d_theta(self, i: int) -> "SuperFunction":
        """Left odd derivation d/dt_i.

        d_1 f = f1 + f12*t2 and d_2 f = f2 - f12*t1; the sign on the second
        comes from moving d/dt_2 past t1.
        """
        if i == 1:
            return SuperFunction(self.f1, _XZERO, self.f12, _XZERO)
        if i == 2:
            return SuperFunction(self.f2, -self.f12, _XZERO, _XZERO)
        raise ValueError(f"theta index must be 1 or 2, got {i}")

    def eta_bar(self, i: int) -> "SuperFunction":
        """eta_i f = d_i f - t_i * (d/dx f)."""
        d = self.d_x()
        if i == 1:
            return SuperFunction(self.f1, -d.f0, self.f12, -d.f2)
        # t2 * (g0 + g1 t1 + ...) = g0 t2 - g1 t1 t2
        return SuperFunction(self.f2, -self.f12, -d.f0, d.f1)

    def map_coeffs(self, fn) -> "SuperFunction":
        return SuperFunction(*(p.map_coeffs(fn) for p in self.components()))

    def max_x_degree(self) -> int:
        return max(p.degree for p in self.components())

    def render(self) -> str:
        """Text form: descending x-degree, theta monomials in fixed order."""
        terms = []
        for slot, poly in enumerate(self.components()):
            mono = SLOT_NAMES[slot]
            for deg in range(poly.degree, -1, -1):
                c = poly.coeff(deg)
                if not c:
                    continue
                terms.append(_render_term(c, deg, mono))
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            if t.startswith("-"):
                out += " - " + t[1:]
            else:
                out += " + " + t
        return out

    def __str__(self):
        return self.render()


_SFZERO = SuperFunction()


def _render_term(c, deg: int, mono: str) -> str:
    parts = []
    if deg > 0:
        parts.append("x" if deg == 1 else f"x^{deg}")
    if mono != "1":
        parts.append(mono)
    if isinstance(c, Fraction) and parts:
        if c == 1:
            return "*".join(parts)
        if c == -1:
            return "-" + "*".join(parts)
    cs = str(c)
    if not parts:
        return cs
    if not isinstance(c, Fraction):
        cs = f"({cs})"
    return cs + "*" + "*".join(parts)


def d_x(f: SuperFunction) -> SuperFunction:
    return f.d_x()


def d_theta(i: int, f: SuperFunction) -> SuperFunction:
    return f.d_theta(i)


def eta_bar(i: int, f: SuperFunction) -> SuperFunction:
    return f.eta_bar(i)


def parity_of(f: SuperFunction) -> Parity:
    return f.parity()


def monomials(max_degree: int) -> Iterator[SuperFunction]:
    """All basis monomials x**p * theta-slot with p <= max_degree."""
    for slot in range(4):
        for p in range(max_degree + 1):
            yield SuperFunction.monomial(p, slot)
