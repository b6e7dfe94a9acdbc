"""Cochains on osp(2|2) with differential-operator values.

Degree-0 and degree-1 coboundaries, the degree-2 cocycle test, and the cup
product.  With |w| the cochain parity and g, h, l basis elements:

    (d v)(g)    = (-1)^{|g||v|} g.v
    (d w)(g,h)  = (-1)^{|g||w|} g.w(h) - (-1)^{|h|(|g|+|w|)} h.w(g) - w([g,h])
    (d c)(g,h,l) = (-1)^{|g||c|} g.c(h,l) - (-1)^{|h|(|c|+|g|)} h.c(g,l)
                   + (-1)^{|l|(|c|+|g|+|h|)} l.c(g,h)
                   - c([g,h],l) + (-1)^{|l||h|} c([g,l],h) + c(g,[h,l])

where g.A is the module action on operators.  The degree-2 formula is used
only to check that cup products of cocycles are cocycles.

Cup product:  (a v b)(x,y) = (-1)^{|x||b|} [a(x), b(y)]
                             + (-1)^{|a|(|x|+|b|)} [b(x), a(y)]
with [,] the operator supercommutator.  Operators on mismatched weight
blocks compose to zero (block extension by zero); the cup of two cochains is
only defined when at least one composition pattern exists.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from .contact import (BASIS_ORDER, BASIS_PARITY, ContactElement,
                      basis_element, expand_in_osp_span, poisson)
from .grassmann import Parity
from .operators import DiffOperator, WeightMismatchError, compose, module_action

__all__ = [
    "Cochain1", "Cochain2", "delta0", "delta1", "is_cocycle",
    "cocycle2_defects", "is_2cocycle", "supercommutator", "cup",
    "IncomposableWeightsError",
]


class IncomposableWeightsError(WeightMismatchError):
    """Cup product of cochains with no composable weight pattern."""


def _bracket_coords(l1: str, l2: str) -> dict:
    return expand_in_osp_span(poisson(basis_element(l1), basis_element(l2)).f)


_BRACKET = {(a, b): _bracket_coords(a, b)
            for a in BASIS_ORDER for b in BASIS_ORDER}


class Cochain1:
    """Map from the osp(2|2) basis to operators on one weight block."""

    __slots__ = ("source_weight", "target_weight", "parity", "values")

    def __init__(self, source_weight, target_weight, parity: Parity, values: dict):
        self.source_weight = Fraction(source_weight)
        self.target_weight = Fraction(target_weight)
        self.parity = Parity(parity)
        vals = {}
        for label in BASIS_ORDER:
            op = values.get(label)
            if op is None:
                op = DiffOperator.zero(self.source_weight, self.target_weight)
            if (op.source_weight != self.source_weight
                    or op.target_weight != self.target_weight):
                raise WeightMismatchError(f"value at {label} on wrong block")
            if op.parity is not None:
                expected = (self.parity + BASIS_PARITY[label]) % 2
                if op.parity != expected:
                    raise ValueError(f"value at {label} has parity {op.parity}, "
                                     f"expected {expected}")
            vals[label] = op
        self.values = vals

    @staticmethod
    def from_function(fn, source_weight, target_weight, parity) -> "Cochain1":
        return Cochain1(source_weight, target_weight, parity,
                        {lab: fn(lab) for lab in BASIS_ORDER})

    @staticmethod
    def zero(source_weight, target_weight, parity=Parity.EVEN) -> "Cochain1":
        return Cochain1(source_weight, target_weight, parity, {})

    def value(self, label: str) -> DiffOperator:
        return self.values[label]

    def value_at(self, coords: dict) -> DiffOperator:
        """Value on a span element given by basis coordinates."""
        out = DiffOperator.zero(self.source_weight, self.target_weight)
        for label, c in coords.items():
            if c:
                out = out + self.values[label].scale(c)
        return out

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())

    def __add__(self, other: "Cochain1") -> "Cochain1":
        if self.parity != other.parity:
            raise ValueError("adding cochains of different parity")
        return Cochain1(self.source_weight, self.target_weight, self.parity,
                        {l: self.values[l] + other.values[l] for l in BASIS_ORDER})

    def scale(self, c) -> "Cochain1":
        return Cochain1(self.source_weight, self.target_weight, self.parity,
                        {l: v.scale(c) for l, v in self.values.items()})

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, Cochain1):
            return NotImplemented
        return (self.source_weight == other.source_weight
                and self.target_weight == other.target_weight
                and self.values == other.values)


class Cochain2:
    """Graded-antisymmetric map on ordered basis pairs, operator-valued."""

    __slots__ = ("source_weight", "target_weight", "parity", "values")

    def __init__(self, source_weight, target_weight, parity: Parity,
                 values: dict, check: bool = True):
        self.source_weight = Fraction(source_weight)
        self.target_weight = Fraction(target_weight)
        self.parity = Parity(parity)
        vals = {}
        for pair in itertools.product(BASIS_ORDER, repeat=2):
            op = values.get(pair)
            if op is None:
                op = DiffOperator.zero(self.source_weight, self.target_weight)
            vals[pair] = op
        self.values = vals
        if check:
            self._check_antisymmetry()

    def _check_antisymmetry(self):
        for (a, b), op in self.values.items():
            sign = -1 if (BASIS_PARITY[a] and BASIS_PARITY[b]) else 1
            mirrored = self.values[(b, a)].scale(-sign)
            if not (op - mirrored).is_zero():
                raise ValueError(f"graded antisymmetry fails at ({a},{b})")
            if a == b and BASIS_PARITY[a] == Parity.EVEN and not op.is_zero():
                raise ValueError(f"nonzero value on even diagonal pair ({a},{a})")

    @staticmethod
    def from_function(fn, source_weight, target_weight, parity,
                      check: bool = True) -> "Cochain2":
        vals = {pair: fn(*pair)
                for pair in itertools.product(BASIS_ORDER, repeat=2)}
        return Cochain2(source_weight, target_weight, parity, vals, check=check)

    @staticmethod
    def zero(source_weight, target_weight, parity=Parity.EVEN) -> "Cochain2":
        return Cochain2(source_weight, target_weight, parity, {}, check=False)

    def value(self, l1: str, l2: str) -> DiffOperator:
        return self.values[(l1, l2)]

    def value_at(self, coords1: dict, label2: str) -> DiffOperator:
        out = DiffOperator.zero(self.source_weight, self.target_weight)
        for label, c in coords1.items():
            if c:
                out = out + self.values[(label, label2)].scale(c)
        return out

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())

    def __add__(self, other: "Cochain2") -> "Cochain2":
        if self.parity != other.parity:
            raise ValueError("adding cochains of different parity")
        return Cochain2(self.source_weight, self.target_weight, self.parity,
                        {p: self.values[p] + other.values[p] for p in self.values},
                        check=False)

    def scale(self, c) -> "Cochain2":
        return Cochain2(self.source_weight, self.target_weight, self.parity,
                        {p: v.scale(c) for p, v in self.values.items()},
                        check=False)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, Cochain2):
            return NotImplemented
        return (self.source_weight == other.source_weight
                and self.target_weight == other.target_weight
                and self.values == other.values)


def _sign(p) -> int:
    return -1 if p % 2 else 1


def delta0(a: DiffOperator, parity: Parity | None = None) -> Cochain1:
    """Coboundary of an operator: g -> (-1)^{|g||a|} g.a."""
    par = a.parity if a.parity is not None else parity
    if par is None:
        par = Parity.EVEN
    vals = {}
    for label in BASIS_ORDER:
        g = basis_element(label)
        act = module_action(g, a)
        vals[label] = act.scale(_sign(BASIS_PARITY[label] * par))
    return Cochain1(a.source_weight, a.target_weight, par, vals)


def delta1(w: Cochain1) -> Cochain2:
    """Degree-1 coboundary; the result is graded antisymmetric."""
    pw = w.parity
    vals = {}
    for l1, l2 in itertools.product(BASIS_ORDER, repeat=2):
        g, h = basis_element(l1), basis_element(l2)
        pg, ph = BASIS_PARITY[l1], BASIS_PARITY[l2]
        term = module_action(g, w.value(l2)).scale(_sign(pg * pw))
        term = term - module_action(h, w.value(l1)).scale(_sign(ph * (pg + pw)))
        term = term - w.value_at(_BRACKET[(l1, l2)])
        vals[(l1, l2)] = term
    return Cochain2(w.source_weight, w.target_weight, pw, vals, check=False)


def is_cocycle(w: Cochain1) -> bool:
    return delta1(w).is_zero()


def cocycle2_defects(c: Cochain2):
    """Defect of the degree-2 cocycle condition on every ordered triple."""
    pc = c.parity
    for l1, l2, l3 in itertools.product(BASIS_ORDER, repeat=3):
        g, h, l = (basis_element(x) for x in (l1, l2, l3))
        pg, ph, pl = (BASIS_PARITY[x] for x in (l1, l2, l3))
        term = module_action(g, c.value(l2, l3)).scale(_sign(pg * pc))
        term = term - module_action(h, c.value(l1, l3)).scale(_sign(ph * (pc + pg)))
        term = term + module_action(l, c.value(l1, l2)).scale(_sign(pl * (pc + pg + ph)))
        term = term - c.value_at(_BRACKET[(l1, l2)], l3)
        term = term + c.value_at(_BRACKET[(l1, l3)], l2).scale(_sign(pl * ph))
        # c(g, [h,l]) = -(-1)^{|g| |[h,l]|} c([h,l], g); the bracket is
        # homogeneous of parity |h|+|l|.
        phl = (ph + pl) % 2
        term = term - c.value_at(_BRACKET[(l2, l3)], l1).scale(_sign(pg * phl))
        yield (l1, l2, l3), term


def is_2cocycle(c: Cochain2) -> bool:
    return all(op.is_zero() for _, op in cocycle2_defects(c))


def supercommutator(p: DiffOperator, q: DiffOperator,
                    block: tuple) -> DiffOperator:
    """[p, q] with incompatible compositions treated as zero blocks.

    Only the contributions landing on the requested (source, target) block
    are kept; everything else vanishes in the block algebra.
    """
    sw, tw = block
    out = DiffOperator.zero(sw, tw)
    if p.is_zero() or q.is_zero():
        return out
    if q.target_weight == p.source_weight and \
            (q.source_weight, p.target_weight) == (sw, tw):
        out = out + compose(p, q)
    if p.target_weight == q.source_weight and \
            (p.source_weight, q.target_weight) == (sw, tw):
        sign = -1 if (p.parity and q.parity) else 1
        out = out - compose(q, p).scale(sign)
    return out


def _cup_block(a: Cochain1, b: Cochain1) -> tuple:
    blocks = set()
    if b.target_weight == a.source_weight:
        blocks.add((b.source_weight, a.target_weight))
    if a.target_weight == b.source_weight:
        blocks.add((a.source_weight, b.target_weight))
    if not blocks:
        raise IncomposableWeightsError(
            f"no composable pattern between blocks "
            f"({a.source_weight}->{a.target_weight}) and "
            f"({b.source_weight}->{b.target_weight})")
    if len(blocks) > 1:
        raise IncomposableWeightsError("ambiguous cup block")
    return blocks.pop()


def cup(a: Cochain1, b: Cochain1) -> Cochain2:
    """Cup product of operator-valued 1-cochains."""
    block = _cup_block(a, b)
    pa, pb = a.parity, b.parity
    vals = {}
    for l1, l2 in itertools.product(BASIS_ORDER, repeat=2):
        px, py = BASIS_PARITY[l1], BASIS_PARITY[l2]
        t1 = supercommutator(a.value(l1), b.value(l2), block).scale(_sign(px * pb))
        t2 = supercommutator(b.value(l1), a.value(l2), block).scale(_sign(pa * (px + pb)))
        vals[(l1, l2)] = t1 + t2
    return Cochain2(block[0], block[1], (pa + pb) % 2, vals, check=False)
