"""Constructors for the explicit 1-cocycle families and their cup products.

Seven families of operator-valued 1-cocycles on osp(2|2):

* diagonal families on a block (w -> w):
    - ``omega``       f -> f'                     (w = d - k/2, 2d not in N)
    - ``omega_tilde`` the first-order companion    (same block)
    - ``gamma``       f -> f'                     (w = k/2, integer k)
    - ``gamma_tilde`` companion; special zeroth-order form at k = 0
* off-diagonal families on the block (-k/2 -> k/2), k >= 1:
    - ``Gamma``, ``Gamma_tilde``, ``Gamma_bar``

Conventions (fixed here, validated by the cocycle test suite):

* in a product like ``d2(f) . eta1`` the f-dependent factor multiplies and
  the trailing symbols compose as derivations acting first on the argument
  (rightmost acts first);
* an expression with no trailing derivation, like ``eta1(d2(f))``, is a pure
  multiplication operator;
* the scalar prefactor of the tilde families scales only their zeroth-order
  term;
* eta powers reduce eagerly: eta_i^{2m} = (-1)^m dx^m.

All families are even cochains.  The twelve cup-product 2-cochains of the
off-diagonal theory are produced by ``phi``; they are always computed as cup
products of built cocycles, never transcribed from expanded formulas.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cohomology import Cochain1, Cochain2, cup
from .contact import BASIS_ORDER, hamiltonian
from .grassmann import Parity, SuperFunction
from .operators import DiffOperator, compose, eta_op, eta_power, op_equals
from .reports import VerificationReport

__all__ = [
    "CocycleId", "FAMILIES", "build", "weights_of", "phi", "omega_pair",
    "diagonal_pair", "verify_cup_relations", "CUP_RELATION_NAMES",
]

FAMILIES = ("omega", "omega_tilde", "gamma", "gamma_tilde",
            "Gamma", "Gamma_tilde", "Gamma_bar")

_DIAGONAL = {"omega", "omega_tilde", "gamma", "gamma_tilde"}


def _is_natural(q: Fraction) -> bool:
    return q.denominator == 1 and q.numerator >= 0


@dataclass(frozen=True)
class CocycleId:
    """Family name plus parameters; d is only meaningful for omega families."""

    family: str
    k: int
    d: Fraction | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family.startswith("omega"):
            if self.d is None:
                raise ValueError(f"{self.family} needs the weight parameter d")
            if _is_natural(2 * Fraction(self.d)):
                raise ValueError(
                    f"{self.family} requires 2d outside the naturals, got d={self.d}")
            if self.k < 0:
                raise ValueError(f"{self.family} requires k >= 0")
        if self.family.startswith("Gamma") and self.k < 1:
            raise ValueError(f"{self.family} requires k >= 1")


def weights_of(cid: CocycleId) -> tuple:
    if cid.family.startswith("omega"):
        w = Fraction(cid.d) - Fraction(cid.k, 2)
        return (w, w)
    if cid.family.startswith("gamma"):
        w = Fraction(cid.k, 2)
        return (w, w)
    return (Fraction(-cid.k, 2), Fraction(cid.k, 2))


def _mult(f: SuperFunction, sw, tw) -> DiffOperator:
    return DiffOperator(sw, tw, {(0, 0, 0): f})


def _diagonal_tilde_value(f: SuperFunction, prefactor: Fraction, w) -> DiffOperator:
    """prefactor*eta1(d2 f) - (-1)^f (d2(f).eta1 + (t2 eta2 eta1 f).eta2)."""
    sgn = -1 if f.parity() == Parity.ODD else 1
    d2f = f.d_theta(2)
    zeroth = _mult(d2f.eta_bar(1).scale(prefactor), w, w)
    first = compose(_mult(d2f, w, w), eta_op(1, w, w))
    t2e = SuperFunction.theta(2) * f.eta_bar(1).eta_bar(2)
    second = compose(_mult(t2e, w, w), eta_op(2, w, w))
    return zeroth - (first + second).scale(sgn)


def _gamma_block_value(cid: CocycleId, f: SuperFunction) -> DiffOperator:
    """Values of the off-diagonal families on the block (-k/2 -> k/2)."""
    k = cid.k
    sw, tw = Fraction(-k, 2), Fraction(k, 2)
    sgn = -1 if f.parity() == Parity.ODD else 1
    zero = DiffOperator.zero(sw, tw)

    def tail(i: int, n: int) -> DiffOperator:
        return eta_power(i, n, sw, sw)

    def headed(coeff: SuperFunction, *factors) -> DiffOperator:
        # coeff-multiplication after the composed derivation word; all
        # bookkeeping at (sw -> sw), rebranded to the block at the end.
        if coeff.is_zero():
            return zero
        op = DiffOperator.identity(sw)
        for fac in reversed(factors):
            op = compose(fac, op)
        return compose(_mult(coeff, sw, sw), op).with_weights(sw, tw)

    if cid.family == "Gamma":
        return headed(f.d_x(), eta_op(1, sw, sw), tail(2, 2 * k - 1))
    if cid.family == "Gamma_tilde":
        t1 = headed(f.d_theta(2).eta_bar(1).scale(k),
                    eta_op(1, sw, sw), tail(2, 2 * k - 1))
        t2 = headed(f.d_theta(2), tail(2, 2 * k + 1))
        t3 = headed((SuperFunction.theta(2) * f.d_theta(2)).eta_bar(1),
                    tail(1, 2 * k + 1))
        return t1 - (t2 - t3).scale(sgn)
    if cid.family == "Gamma_bar":
        fp = f.d_x()
        t1 = zero
        if k >= 2:
            t1 = headed(fp.d_x().scale(k - 1), eta_op(1, sw, sw), tail(2, 2 * k - 3))
        t2 = headed(fp.eta_bar(2), tail(1, 2 * k - 1))
        t3 = headed(fp.eta_bar(1), tail(2, 2 * k - 1))
        return t1 + (t2 - t3).scale(sgn)
    raise ValueError(cid.family)


_BUILD_CACHE: dict = {}


def build(cid: CocycleId) -> Cochain1:
    """Construct the catalog cocycle as an even 1-cochain."""
    cached = _BUILD_CACHE.get(cid)
    if cached is not None:
        return cached
    sw, tw = weights_of(cid)
    values = {}
    for label in BASIS_ORDER:
        f = hamiltonian(label)
        if cid.family in ("omega", "gamma"):
            val = _mult(f.d_x(), sw, tw)
        elif cid.family == "omega_tilde":
            val = _diagonal_tilde_value(f, 2 * Fraction(cid.d) - cid.k, sw)
        elif cid.family == "gamma_tilde":
            if cid.k == 0:
                val = _mult(f.eta_bar(2).eta_bar(1), sw, tw)
            else:
                val = _diagonal_tilde_value(f, Fraction(cid.k), sw)
        else:
            val = _gamma_block_value(cid, f)
        values[label] = val
    out = Cochain1(sw, tw, Parity.EVEN, values)
    _BUILD_CACHE[cid] = out
    return out


# -- cup products of the catalog ---------------------------------------------

def omega_pair(d, k: int) -> tuple:
    """The two spanning 2-cocycles of the generic diagonal block."""
    w = build(CocycleId("omega", k, Fraction(d)))
    wt = build(CocycleId("omega_tilde", k, Fraction(d)))
    return cup(w, wt), cup(wt, wt)


def diagonal_pair(k: int) -> tuple:
    """Same shape on the resonant diagonal block of weight k/2."""
    g = build(CocycleId("gamma", k))
    gt = build(CocycleId("gamma_tilde", k))
    return cup(g, gt), cup(gt, gt)


def _g(k):
    return build(CocycleId("gamma", k))


def _gt(k):
    return build(CocycleId("gamma_tilde", k))


def phi(i: int, k: int) -> Cochain2:
    """The twelve cup 2-cochains on the block (-k/2 -> k/2)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    G = build(CocycleId("Gamma", k))
    Gt = build(CocycleId("Gamma_tilde", k))
    Gb = build(CocycleId("Gamma_bar", k))
    table = {
        1: lambda: cup(_g(k), Gt),
        2: lambda: cup(_g(k), Gb),
        3: lambda: cup(_gt(k), Gt),
        4: lambda: cup(_gt(k), Gb),
        5: lambda: cup(Gt, _g(-k)),
        6: lambda: cup(Gb, _gt(-k)),
        7: lambda: cup(_g(k), G),
        8: lambda: cup(G, _gt(-k)),
        9: lambda: cup(Gt, _gt(-k)),
        10: lambda: cup(G, _g(-k)),
        11: lambda: cup(Gb, _g(-k)),
        12: lambda: cup(_gt(k), G),
    }
    if i not in table:
        raise ValueError(f"index must be 1..12, got {i}")
    return table[i]()


CUP_RELATION_NAMES = (
    "phi7 == 0",
    "phi8 == -phi1",
    "phi10 == -phi2",
    "phi11 == -phi2",
    "phi9 == -phi3",
    "phi12 == phi4 + phi5",
)


def _cochain2_equal(a: Cochain2, b: Cochain2) -> bool:
    return all(op_equals(a.value(*p), b.value(*p)) for p in a.values)


def verify_cup_relations(k: int, _cup=None) -> VerificationReport:
    """Exact 2-cochain identities among the twelve cup products."""
    report = VerificationReport(f"cup relations at k={k}")
    use_cup = _cup if _cup is not None else cup
    G = build(CocycleId("Gamma", k))
    Gt = build(CocycleId("Gamma_tilde", k))
    Gb = build(CocycleId("Gamma_bar", k))
    p = {
        1: use_cup(_g(k), Gt), 2: use_cup(_g(k), Gb), 3: use_cup(_gt(k), Gt),
        4: use_cup(_gt(k), Gb), 5: use_cup(Gt, _g(-k)), 6: use_cup(Gb, _gt(-k)),
        7: use_cup(_g(k), G), 8: use_cup(G, _gt(-k)), 9: use_cup(Gt, _gt(-k)),
        10: use_cup(G, _g(-k)), 11: use_cup(Gb, _g(-k)), 12: use_cup(_gt(k), G),
    }
    report.add(CUP_RELATION_NAMES[0], p[7].is_zero())
    report.add(CUP_RELATION_NAMES[1], _cochain2_equal(p[8], p[1].scale(-1)))
    report.add(CUP_RELATION_NAMES[2], _cochain2_equal(p[10], p[2].scale(-1)))
    report.add(CUP_RELATION_NAMES[3], _cochain2_equal(p[11], p[2].scale(-1)))
    report.add(CUP_RELATION_NAMES[4], _cochain2_equal(p[9], p[3].scale(-1)))
    report.add(CUP_RELATION_NAMES[5], _cochain2_equal(p[12], p[4] + p[5]))
    return report
