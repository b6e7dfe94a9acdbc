"""Differential operators between weighted-density spaces.

A weighted density of weight lam is a formal f * alpha^lam with f a
superfunction; contact fields act on it by

    L^lam_f(g) = f*g' - (1/2)(-1)^{|f|} sum_i eta_i(f)*eta_i(g) + lam*f'*g.

A DiffOperator is a finite sum  sum_a  c_a * D^a  mapping weight lam to
weight mu, where a = (i, j, k) with j, k in {0, 1} and D^a applies d/dx i
times, then d/dt1 (j times), then d/dt2 (k times) -- that application order
is fixed everywhere.  Normal form is coefficient-left, derivative-right;
operators are parity-homogeneous: parity(c_a) + j + k is the same for every
stored term.

Values are immutable once constructed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .contact import ContactElement
from .grassmann import Parity, ParityError, SuperFunction

__all__ = [
    "WeightMismatchError", "WeightedDensity", "DiffOperator", "compose",
    "lie_density", "lie_operator", "module_action", "op_equals",
    "ops_agree_by_evaluation", "eta_word", "eta_power", "eta_op",
    "render_operator", "DX", "D1", "D2", "ETA1", "ETA2", "Mult",
]

_HALF = Fraction(1, 2)


class WeightMismatchError(ValueError):
    """Operation across incompatible density weights."""


@dataclass(frozen=True)
class WeightedDensity:
    weight: Fraction
    f: SuperFunction


def lie_density(g: ContactElement, phi: WeightedDensity) -> WeightedDensity:
    """Action of the contact field of g on a weighted density (direct form)."""
    f, h = g.f, phi.f
    sign = -1 if g.parity == Parity.ODD else 1
    corr = SuperFunction.zero()
    for i in (1, 2):
        corr = corr + f.eta_bar(i) * h.eta_bar(i)
    out = f * h.d_x() - corr.scale(_HALF * sign) + (f.d_x() * h).scale(phi.weight)
    return WeightedDensity(phi.weight, out)


class DiffOperator:
    """Normal-form differential operator from weight lam to weight mu."""

    __slots__ = ("source_weight", "target_weight", "terms", "parity")

    def __init__(self, source_weight, target_weight, terms=None, parity=None):
        sw = Fraction(source_weight)
        tw = Fraction(target_weight)
        clean = {}
        inferred = parity
        for midx, coeff in (terms or {}).items():
            if coeff.is_zero():
                continue
            i, j, k = midx
            if i < 0 or j not in (0, 1) or k not in (0, 1):
                raise ValueError(f"bad multi-index {midx}")
            p = (coeff.parity() + j + k) % 2
            if inferred is None:
                inferred = Parity(p)
            elif p != inferred:
                raise ParityError("operator terms of mixed parity")
            clean[midx] = coeff
        object.__setattr__(self, "source_weight", sw)
        object.__setattr__(self, "target_weight", tw)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "parity", inferred if clean else None)

    def __setattr__(self, *a):
        raise AttributeError("DiffOperator is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(source_weight, target_weight) -> "DiffOperator":
        return DiffOperator(source_weight, target_weight, {})

    @staticmethod
    def identity(weight) -> "DiffOperator":
        return DiffOperator(weight, weight, {(0, 0, 0): SuperFunction.one()})

    @staticmethod
    def mult(f: SuperFunction, source_weight, target_weight=None) -> "DiffOperator":
        tw = source_weight if target_weight is None else target_weight
        return DiffOperator(source_weight, tw, {(0, 0, 0): f})

    # -- basics ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def same_block(self, other: "DiffOperator") -> bool:
        return (self.source_weight == other.source_weight
                and self.target_weight == other.target_weight)

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.same_block(other) and self.terms == other.terms

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        if not self.same_block(other):
            raise WeightMismatchError("adding operators on different blocks")
        out = dict(self.terms)
        for midx, c in other.terms.items():
            s = out.get(midx)
            out[midx] = c if s is None else s + c
        return DiffOperator(self.source_weight, self.target_weight, out)

    def __neg__(self) -> "DiffOperator":
        return self.scale(-1)

    def __sub__(self, other: "DiffOperator") -> "DiffOperator":
        return self + (-other)

    def scale(self, c) -> "DiffOperator":
        return DiffOperator(self.source_weight, self.target_weight,
                            {m: f.scale(c) for m, f in self.terms.items()})

    def with_weights(self, source_weight, target_weight) -> "DiffOperator":
        return DiffOperator(source_weight, target_weight, dict(self.terms))

    def max_dx_order(self) -> int:
        return max((m[0] for m in self.terms), default=0)

    def max_coeff_degree(self) -> int:
        return max((c.max_x_degree() for c in self.terms.values()), default=-1)

    def coeff_parity(self, midx) -> int:
        i, j, k = midx
        return (self.parity + j + k) % 2

    # -- application and composition ---------------------------------------

    def apply(self, phi: WeightedDensity) -> WeightedDensity:
        if phi.weight != self.source_weight:
            raise WeightMismatchError(
                f"density weight {phi.weight} != source weight {self.source_weight}")
        out = SuperFunction.zero()
        for (i, j, k), coeff in self.terms.items():
            g = phi.f
            for _ in range(i):
                g = g.d_x()
            if j:
                g = g.d_theta(1)
            if k:
                g = g.d_theta(2)
            out = out + coeff * g
        return WeightedDensity(self.target_weight, out)

    def __call__(self, phi: WeightedDensity) -> WeightedDensity:
        return self.apply(phi)

    def __matmul__(self, other: "DiffOperator") -> "DiffOperator":
        return compose(self, other)


def _add_term(acc: dict, midx, coeff) -> None:
    s = acc.get(midx)
    coeff = coeff if s is None else s + coeff
    if coeff.is_zero():
        acc.pop(midx, None)
    else:
        acc[midx] = coeff


def _dx_then(terms: dict) -> dict:
    out = {}
    for (i, j, k), c in terms.items():
        dc = c.d_x()
        if not dc.is_zero():
            _add_term(out, (i, j, k), dc)
        _add_term(out, (i + 1, j, k), c)
    return out


def _d_theta_then(which: int, terms: dict, parity: Parity) -> dict:
    """Prepend d/dt_which; parity is the operator parity of `terms`."""
    out = {}
    for (i, j, k), c in terms.items():
        dc = c.d_theta(which)
        if not dc.is_zero():
            _add_term(out, (i, j, k), dc)
        cpar = (parity + j + k) % 2
        if which == 1:
            if j == 0:
                sign = -1 if (cpar + k) % 2 else 1
                _add_term(out, (i, 1, k), c.scale(sign))
        else:
            if k == 0:
                sign = -1 if cpar else 1
                _add_term(out, (i, j, 1), c.scale(sign))
    return out


def _mult_then(f: SuperFunction, terms: dict) -> dict:
    out = {}
    for midx, c in terms.items():
        prod = f * c
        if not prod.is_zero():
            out[midx] = prod
    return out


def compose(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    """a after b; requires b's target weight to equal a's source weight."""
    if b.target_weight != a.source_weight:
        raise WeightMismatchError(
            f"cannot compose: inner target {b.target_weight} != outer source {a.source_weight}")
    sw, tw = b.source_weight, a.target_weight
    if a.is_zero() or b.is_zero():
        return DiffOperator.zero(sw, tw)
    acc = {}
    for (i, j, k), coeff in a.terms.items():
        cur = b.terms
        par = b.parity
        for _ in range(i):
            cur = _dx_then(cur)
        if j:
            cur = _d_theta_then(1, cur, par)
            par = Parity((par + 1) % 2)  # theta-prepend flips operator parity
        if k:
            cur = _d_theta_then(2, cur, par)
        cur = _mult_then(coeff, cur)
        for midx, c in cur.items():
            _add_term(acc, midx, c)
    return DiffOperator(sw, tw, acc)


def op_equals(a: DiffOperator, b: DiffOperator) -> bool:
    """Normal-form equality of operators on the same block."""
    if not a.same_block(b):
        raise WeightMismatchError("comparing operators on different blocks")
    return a.terms == b.terms


def ops_agree_by_evaluation(a: DiffOperator, b: DiffOperator) -> bool:
    """Evaluation oracle for op_equals.

    Two operators of d/dx-order at most N with coefficients of x-degree at
    most D are equal iff they agree on all monomial densities x^p * slot with
    p <= N + D + 1; that bound makes polynomial agreement imply operator
    identity on the polynomial model.
    """
    if not a.same_block(b):
        raise WeightMismatchError("comparing operators on different blocks")
    n = max(a.max_dx_order(), b.max_dx_order())
    d = max(a.max_coeff_degree(), b.max_coeff_degree(), 0)
    w = a.source_weight
    for p in range(n + d + 2):
        for slot in range(4):
            phi = WeightedDensity(w, SuperFunction.monomial(p, slot))
            if a.apply(phi).f != b.apply(phi).f:
                return False
    return True


# -- contact action on densities and operators ------------------------------

_LIE_CACHE: dict = {}


def lie_operator(g: ContactElement, weight: Fraction) -> DiffOperator:
    """L^weight_g as a normal-form operator on the diagonal block."""
    key = (g.f, Fraction(weight))
    cached = _LIE_CACHE.get(key)
    if cached is not None:
        return cached
    f = g.f
    w = Fraction(weight)
    sign = _HALF if g.parity == Parity.ODD else -_HALF
    terms = {(1, 0, 0): f}
    op = DiffOperator(w, w, terms)
    for i in (1, 2):
        ef = f.eta_bar(i)
        if ef.is_zero():
            continue
        eta = eta_op(i, w, w)
        op = op + compose(DiffOperator.mult(ef.scale(sign), w, w), eta)
    fp = f.d_x().scale(w)
    if not fp.is_zero():
        op = op + DiffOperator.mult(fp, w, w)
    _LIE_CACHE[key] = op
    return op


def module_action(g: ContactElement, a: DiffOperator) -> DiffOperator:
    """g . a = L^mu_g o a - (-1)^{|g||a|} a o L^lam_g."""
    if a.is_zero():
        return a
    left = compose(lie_operator(g, a.target_weight), a)
    right = compose(a, lie_operator(g, a.source_weight))
    if g.parity and a.parity:
        return left + right
    return left - right


# -- word builder ------------------------------------------------------------

class _Symbol:
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


DX = _Symbol("dx")
D1 = _Symbol("d1")
D2 = _Symbol("d2")
ETA1 = _Symbol("eta1")
ETA2 = _Symbol("eta2")


@dataclass(frozen=True)
class Mult:
    f: SuperFunction


def eta_op(i: int, source_weight, target_weight) -> DiffOperator:
    theta = SuperFunction.theta(i)
    slot = (0, 1, 0) if i == 1 else (0, 0, 1)
    return DiffOperator(source_weight, target_weight,
                        {slot: SuperFunction.one(), (1, 0, 0): -theta})


def _symbol_terms(sym) -> dict:
    if isinstance(sym, Mult):
        return {(0, 0, 0): sym.f}
    if sym is DX:
        return {(1, 0, 0): SuperFunction.one()}
    if sym is D1:
        return {(0, 1, 0): SuperFunction.one()}
    if sym is D2:
        return {(0, 0, 1): SuperFunction.one()}
    if sym is ETA1:
        return {(0, 1, 0): SuperFunction.one(), (1, 0, 0): -SuperFunction.theta(1)}
    if sym is ETA2:
        return {(0, 0, 1): SuperFunction.one(), (1, 0, 0): -SuperFunction.theta(2)}
    raise ValueError(f"unknown word symbol {sym!r}")


def eta_word(word: Iterable, source_weight, target_weight) -> DiffOperator:
    """Compose a word of derivations and multiplications into normal form.

    The word is in operator-product order: the rightmost symbol acts first.
    Weights are bookkeeping labels supplied by the caller.
    """
    sw = Fraction(source_weight)
    tw = Fraction(target_weight)
    op = DiffOperator(sw, sw, {(0, 0, 0): SuperFunction.one()})
    for sym in reversed(list(word)):
        factor = DiffOperator(op.target_weight, op.target_weight,
                              _symbol_terms(sym))
        op = compose(factor, op)
    return op.with_weights(sw, tw)


def eta_power(i: int, n: int, source_weight, target_weight) -> DiffOperator:
    """eta_i**n in closed form: eta_i^{2m} = (-1)^m dx^m, odd powers keep one eta_i."""
    if n < 0:
        raise ValueError("negative power")
    m, odd = divmod(n, 2)
    sign = -1 if m % 2 else 1
    if odd:
        terms = {(m, 1, 0) if i == 1 else (m, 0, 1): SuperFunction.scalar(sign),
                 (m + 1, 0, 0): SuperFunction.theta(i, -sign)}
    else:
        terms = {(m, 0, 0): SuperFunction.scalar(sign)}
    return DiffOperator(source_weight, target_weight, terms)


def render_operator(a: DiffOperator) -> str:
    """Sum of '(coeff) dx^i d1 d2' pieces in lexicographic multi-index order."""
    if a.is_zero():
        return "0"
    parts = []
    for (i, j, k) in sorted(a.terms):
        word = []
        if i:
            word.append("dx" if i == 1 else f"dx^{i}")
        if j:
            word.append("d1")
        if k:
            word.append("d2")
        coeff = a.terms[(i, j, k)].render()
        parts.append(f"({coeff})" + (" " + " ".join(word) if word else ""))
    return " + ".join(parts)
