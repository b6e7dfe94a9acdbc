"""Contact bracket on R^{1|2} and the embedded osp(2|2).

A contact vector field is determined by its Hamiltonian superfunction; the
bracket of fields corresponds to the Poisson bracket

    {f, g} = f*g' - f'*g - (1/2)(-1)^{|f|} sum_i eta_i(f) * eta_i(g)

of Hamiltonians.  osp(2|2) is the eight-dimensional span of
(-x, 1, -x^2, 2*t1, 2*t2, 2*x*t1, 2*x*t2, t1*t2), labelled
(H, X, Y, A1, A2, B1, B2, C) in that fixed order; the fixed order is the
indexing convention for every cochain downstream.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .grassmann import Parity, SuperFunction, XPoly
from .reports import VerificationReport
from .scalars import format_rational, parse_rational

__all__ = [
    "ContactElement", "SpanError", "poisson", "BASIS_ORDER", "BASIS_PARITY",
    "H_EIGENVALUE", "basis_element", "hamiltonian", "expand_in_osp_span",
    "poisson_in_basis", "load_bracket_table", "verify_structure_constants",
    "jacobi_defect", "jacobi_check", "osp12_copy",
]

_HALF = Fraction(1, 2)


class SpanError(ValueError):
    """Element does not lie in the expected span."""


@dataclass(frozen=True)
class ContactElement:
    """Homogeneous Hamiltonian of a contact vector field."""

    f: SuperFunction

    def __post_init__(self):
        self.f.parity()  # raises ParityError on mixed input

    @property
    def parity(self) -> Parity:
        return self.f.parity()

    def scale(self, c) -> "ContactElement":
        return ContactElement(self.f.scale(c))

    def __add__(self, other: "ContactElement") -> "ContactElement":
        return ContactElement(self.f + other.f)


def poisson(a: ContactElement, b: ContactElement) -> ContactElement:
    """Poisson bracket of homogeneous Hamiltonians."""
    f, g = a.f, b.f
    sign = -1 if a.parity == Parity.ODD else 1
    corr = SuperFunction.zero()
    for i in (1, 2):
        corr = corr + f.eta_bar(i) * g.eta_bar(i)
    out = f * g.d_x() - f.d_x() * g - corr.scale(_HALF * sign)
    return ContactElement(out)


BASIS_ORDER = ("H", "X", "Y", "A1", "A2", "B1", "B2", "C")

_HAMILTONIANS = {
    "H": SuperFunction.x(1, -1),
    "X": SuperFunction.one(),
    "Y": SuperFunction.x(2, -1),
    "A1": SuperFunction.theta(1, 2),
    "A2": SuperFunction.theta(2, 2),
    "B1": SuperFunction(f1=XPoly.x(1, 2)),
    "B2": SuperFunction(f2=XPoly.x(1, 2)),
    "C": SuperFunction.theta12(),
}

BASIS_PARITY = {
    "H": Parity.EVEN, "X": Parity.EVEN, "Y": Parity.EVEN, "C": Parity.EVEN,
    "A1": Parity.ODD, "A2": Parity.ODD, "B1": Parity.ODD, "B2": Parity.ODD,
}

# Eigenvalue c_g in [H, g] = c_g * g; the grading used for ansatz pruning.
H_EIGENVALUE = {
    "H": Fraction(0), "X": Fraction(1), "Y": Fraction(-1),
    "A1": _HALF, "A2": _HALF, "B1": -_HALF, "B2": -_HALF, "C": Fraction(0),
}

_BASIS = {label: ContactElement(f) for label, f in _HAMILTONIANS.items()}


def basis_element(label: str) -> ContactElement:
    return _BASIS[label]


def hamiltonian(label: str) -> SuperFunction:
    return _HAMILTONIANS[label]


def expand_in_osp_span(f: SuperFunction) -> dict:
    """Exact coordinates of f in the osp(2|2) basis; SpanError if outside.

    The span is (1, x, x^2) + (t1, x*t1) + (t2, x*t2) + (t1*t2), so the
    coordinates can be read off componentwise.
    """
    if f.f0.degree > 2 or f.f1.degree > 1 or f.f2.degree > 1 or f.f12.degree > 0:
        raise SpanError(f"not in the osp(2|2) span: {f.render()}")
    coords = {
        "X": f.f0.coeff(0),
        "H": -f.f0.coeff(1),
        "Y": -f.f0.coeff(2),
        "A1": f.f1.coeff(0) * _HALF,
        "B1": f.f1.coeff(1) * _HALF,
        "A2": f.f2.coeff(0) * _HALF,
        "B2": f.f2.coeff(1) * _HALF,
        "C": f.f12.coeff(0),
    }
    return {k: v for k, v in coords.items() if v}


def poisson_in_basis(label1: str, label2: str) -> dict:
    return expand_in_osp_span(poisson(_BASIS[label1], _BASIS[label2]).f)


def load_bracket_table() -> dict:
    """Bracket fixture as {frozen pair: {label: Fraction}}."""
    text = resources.files("superdeform.data").joinpath("osp22_brackets.json").read_text()
    raw = json.loads(text)
    table = {}
    for entry in raw["brackets"]:
        a, b = entry["pair"]
        table[(a, b)] = {k: parse_rational(v) for k, v in entry["result"].items()}
    return table


def _canonical_pair(a: str, b: str):
    ia, ib = BASIS_ORDER.index(a), BASIS_ORDER.index(b)
    return (a, b) if ia <= ib else (b, a)


def verify_structure_constants(table: dict | None = None) -> VerificationReport:
    """Cross-check the computed brackets against the fixture table.

    All 36 unordered basis pairs are checked; pairs absent from the table are
    required to bracket to zero.  Mismatches are report content, never
    exceptions.
    """
    if table is None:
        table = load_bracket_table()
    report = VerificationReport("osp(2|2) structure constants")
    for i, a in enumerate(BASIS_ORDER):
        for b in BASIS_ORDER[i:]:
            expected = table.get((a, b), {})
            computed = poisson_in_basis(a, b)
            ok = computed == {k: v for k, v in expected.items() if v}
            report.add(
                f"[{a},{b}]", ok,
                pair=[a, b],
                expected={k: format_rational(v) for k, v in expected.items()},
                computed={k: format_rational(v) for k, v in computed.items()},
            )
    return report


def jacobi_defect(a: ContactElement, b: ContactElement,
                  c: ContactElement) -> SuperFunction:
    """[a,[b,c]] - [[a,b],c] - (-1)^{|a||b|} [b,[a,c]]; zero iff Jacobi holds."""
    sign = -1 if (a.parity and b.parity) else 1
    lhs = poisson(a, poisson(b, c)).f
    rhs = poisson(poisson(a, b), c).f + poisson(b, poisson(a, c)).f.scale(sign)
    return lhs - rhs


def jacobi_check(triples) -> VerificationReport:
    report = VerificationReport("graded Jacobi identity")
    for idx, (a, b, c) in enumerate(triples):
        defect = jacobi_defect(a, b, c)
        report.add(f"triple {idx}", defect.is_zero(),
                   defect=defect.render() if not defect.is_zero() else "0")
    return report


def _in_osp12_span(f: SuperFunction, i: int) -> bool:
    other = f.f2 if i == 1 else f.f1
    own = f.f1 if i == 1 else f.f2
    return (f.f0.degree <= 2 and own.degree <= 1 and other.is_zero()
            and f.f12.is_zero())


def osp12_copy(i: int) -> list:
    """The five generators (1, x, x^2, x*t_i, t_i); bracket-closed.

    Closure of all 15 unordered pairs is verified on construction.
    """
    if i not in (1, 2):
        raise ValueError(f"index must be 1 or 2, got {i}")
    xt = SuperFunction(f1=XPoly.x(1)) if i == 1 else SuperFunction(f2=XPoly.x(1))
    gens = [
        ContactElement(SuperFunction.one()),
        ContactElement(SuperFunction.x()),
        ContactElement(SuperFunction.x(2)),
        ContactElement(xt),
        ContactElement(SuperFunction.theta(i)),
    ]
    for a, b in itertools.combinations_with_replacement(gens, 2):
        res = poisson(a, b).f
        if not _in_osp12_span(res, i):
            raise SpanError(f"osp(1|2) copy {i} not closed at {res.render()}")
    return gens
