"""Hand-transcribed expanded forms of the off-diagonal cup 2-cochains.

These transcriptions exist only as an independent cross-check of the
cup-product computation: ``crosscheck_expansion`` renders the computed
``phi(i, k)`` and diffs it against the transcription, reporting every
mismatch.  The transcriptions are literal, including several tokens that
cannot be correct as printed (a capital H where only g, h are in scope, an
unbalanced parenthesis, an apparent g'/h' mixup, a dangling derivative
word); those are flagged rather than silently repaired, and the computed
cup products remain the source of truth throughout the package.

Conventions: a coefficient like ``eta1 d2 h`` is the function
eta_1(d/dt2 (h)); derivative words attach as multi-indices (i, j, k) with
d/dx applied i times first, then d/dt1, then d/dt2; every display is
graded-symmetrized by subtracting (-1)^{|g||h|} times the (g <-> h) swap.
Terms whose scalar factor vanishes (such as (k-1) at k = 1) are dropped
before the negative-exponent guard.
"""
from __future__ import annotations

from fractions import Fraction

from .catalog import phi
from .cohomology import Cochain2
from .contact import BASIS_ORDER, BASIS_PARITY, hamiltonian
from .grassmann import Parity, SuperFunction
from .operators import DiffOperator, op_equals, render_operator
from .reports import DiscrepancyReport

__all__ = ["transcribed_phi", "crosscheck_expansion", "FLAGGED_TOKENS"]

T1 = SuperFunction.theta(1)
T2 = SuperFunction.theta(2)
T12 = SuperFunction.theta12()

FLAGGED_TOKENS = {
    1: ["'d2 H' (capital H twice; transcribed as d2 h)"],
    2: [],
    3: ["isolated 'dx^{k+1} d2' among first-order companions (transcribed literally)"],
    4: [],
    5: ["'eta1 d2 g eta1 g'' (g' where h' is expected, twice; transcribed literally)",
        "unbalanced parenthesis 'eta1(d2(g) eta2 h'' (read as eta1 d2 g * eta2 h')",
        "'eta1 t2 d2 g h'' (read as eta1(t2 d2 g) * h')"],
    6: ["dangling derivative word 'eta2 g' t2 d2 dx' (read as eta2 g' * t2 * d2 dx h)"],
}


def _mul(*fs: SuperFunction) -> SuperFunction:
    out = SuperFunction.one()
    for f in fs:
        out = out * f
    return out


def _sgn(n: int) -> Fraction:
    return Fraction(-1 if n % 2 else 1)


def _terms_phi1(g, h, k, sg, sh):
    gp = g.d_x()
    e1d2h = h.d_theta(2).eta_bar(1)
    return [
        (_sgn(k) * sh, _mul(gp, h.d_theta(2), T2), (k + 1, 0, 0)),
        (_sgn(k) * -(k + 1), _mul(gp, e1d2h, T12), (k + 1, 0, 0)),
        (_sgn(k) * k, _mul(gp, e1d2h, T1), (k, 0, 1)),
        (_sgn(k) * -sh, _mul(gp, h.d_theta(2)), (k, 0, 1)),          # d2 H token
        (_sgn(k) * -(k + 1), _mul(gp, e1d2h, T2), (k, 1, 0)),
        (_sgn(k) * -k, _mul(gp, e1d2h), (k - 1, 1, 1)),              # d2 H token
    ]


def _terms_phi2(g, h, k, sg, sh):
    gp, hpp = g.d_x(), h.d_x().d_x()
    e1hp = h.d_x().eta_bar(1)
    e2hp = h.d_x().eta_bar(2)
    s = _sgn(k)
    return [
        (s * (k - 1), _mul(gp, hpp, T2), (k - 1, 1, 0)),
        (s * -sh, _mul(gp, e2hp), (k - 1, 1, 0)),
        (-s * (k - 1), _mul(gp, hpp, T1), (k - 1, 0, 1)),
        (-s * -sh, _mul(gp, e1hp), (k - 1, 0, 1)),
        (s * (k - 1), _mul(gp, hpp, T12), (k, 0, 0)),
        (s * sh, _mul(gp, e2hp, T1), (k, 0, 0)),
        (s * -sh, _mul(gp, e1hp, T2), (k, 0, 0)),
        (s * (k - 1), _mul(gp, hpp), (k - 2, 1, 1)),
    ]


def _terms_phi3(g, h, k, sg, sh):
    d2g, d2h = g.d_theta(2), h.d_theta(2)
    dxd2h = h.d_x().d_theta(2)
    d1d2h = h.d_theta(1).d_theta(2)
    e1d2h = h.d_theta(2).eta_bar(1)
    s = _sgn(k)
    c = -s * sg  # shared factor -(-1)^{k+g}
    return [
        (s * sg * sh, _mul(d2g, e1d2h), (k, 0, 1)),
        (s * sg * k, _mul(d2g, dxd2h, T1), (k, 0, 1)),
        (-sg * s * (k + 1), _mul(d2g, dxd2h, T2), (k, 1, 0)),
        (-s * sg * sh, _mul(d2g, d1d2h, T2), (k + 1, 0, 0)),
        (-s * sg * (k + 2), _mul(d2g, dxd2h, T12), (k + 1, 0, 0)),
        (c, _mul(d2g, d2h), (0, 1, 1)),
        (c, _mul(d2g, d2h, T2), (1, 1, 0)),
        (-c, _mul(d2g, d2h, T1), (k + 1, 0, 1)),   # isolated high-order word
        (c, _mul(d2g, d2h, T12), (2, 0, 0)),
        (c * k, _mul(d2g, dxd2h), (k - 1, 1, 1)),
    ]


def _terms_phi4(g, h, k, sg, sh):
    d2g = g.d_theta(2)
    e1d2g = g.d_theta(2).eta_bar(1)
    hp, hpp = h.d_x(), h.d_x().d_x()
    e1hp, e2hp = hp.eta_bar(1), hp.eta_bar(2)
    t2e2e1g = T2 * g.eta_bar(1).eta_bar(2)
    s = _sgn(k)
    out = [
        (s * sg, _mul(d2g, e1hp, T2), (k, 1, 0)),
        (s * sg, _mul(d2g, e1hp, T12), (k + 1, 0, 0)),
        (-s * k * (k - 1), _mul(e1d2g, hpp, T1), (k - 1, 0, 1)),
        (-s * -sh * k, _mul(e1d2g, e1hp), (k - 1, 0, 1)),
        (-s * -sg * sh * k, _mul(d2g, hpp), (k - 1, 0, 1)),
        (s * k * k, _mul(e1d2g, hpp, T2), (k - 1, 1, 0)),
        (s * -sh * k, _mul(e1d2g, e2hp), (k - 1, 1, 0)),
        (s * k * k, _mul(e1d2g, hpp, T12), (k, 0, 0)),
        (s * sh * k, _mul(e1d2g, e2hp, T1), (k, 0, 0)),
        (s * -sh * (k + 1), _mul(e1d2g, e1hp, T2), (k, 0, 0)),
        (s * -sg * sh * k, _mul(d2g, hpp, T2), (k, 0, 0)),
        (s * sg, _mul(d2g, e2hp), (k, 0, 0)),
        (s * k * (k - 1), _mul(e1d2g, hpp), (k - 2, 1, 1)),
        (s * sg, _mul(d2g, e1hp), (k - 1, 1, 1)),
        (s * sg, _mul(t2e2e1g, e2hp), (k - 1, 1, 1)),
        (-s * sg, _mul(d2g, e1hp, T1), (k, 0, 1)),
        (-s * sg, _mul(t2e2e1g, e2hp, T1), (k, 0, 1)),
    ]
    return out


def _terms_phi5(g, h, k, sg, sh):
    d2g = g.d_theta(2)
    e1d2g = g.d_theta(2).eta_bar(1)
    gp, hp, hpp = g.d_x(), h.d_x(), h.d_x().d_x()
    e1gp = gp.eta_bar(1)                      # g' tokens, as printed
    e2hp = hp.eta_bar(2)
    e1t2d2g = (T2 * g.d_theta(2)).eta_bar(1)
    s = _sgn(k)
    return [
        (s * k * (k - 1), _mul(e1d2g, hpp, T1), (k - 1, 0, 1)),
        (s * -sh * k, _mul(e1d2g, e1gp), (k - 1, 0, 1)),
        (s * -sg * sh * k, _mul(d2g, hpp), (k - 1, 0, 1)),
        (-s * k * k, _mul(e1d2g, hpp, T2), (k - 1, 1, 0)),
        (-s * -sh * k, _mul(e1d2g, e2hp), (k - 1, 1, 0)),
        (-s * k * (k - 1), _mul(e1d2g, hpp), (k - 2, 1, 1)),
        (-s * k, _mul(e1d2g, hp), (k - 1, 1, 1)),
        (-s * k, _mul(e1d2g, hp, T2), (k, 1, 0)),
        (-s * -sg * sh, _mul(e1t2d2g, hp), (k, 1, 0)),
        (s * k, _mul(e1d2g, hp, T1), (k, 0, 1)),
        (s * -sh * sg, _mul(d2g, hp), (k, 0, 1)),
        (-s * k, _mul(e1d2g, hp, T12), (k + 1, 0, 0)),
        (-s * -sg * sh, _mul(d2g, hp, T2), (k + 1, 0, 0)),
        (-s * sg * sh, _mul(e1t2d2g, hp, T1), (k + 1, 0, 0)),
        (s * sh * (k + 1), _mul(e1d2g, e1gp, T2), (k, 0, 0)),
        (-s * k * k, _mul(e1d2g, hpp, T12), (k, 0, 0)),
        (s * sg * sh * k, _mul(d2g, hpp, T2), (k, 0, 0)),
        (-s * sh * k, _mul(e1d2g, e2hp, T1), (k, 0, 0)),
        (-s * sg, _mul(d2g, e2hp), (k, 0, 0)),
    ]


def _terms_phi6(g, h, k, sg, sh):
    gp, gpp = g.d_x(), g.d_x().d_x()
    e1gp, e2gp = gp.eta_bar(1), gp.eta_bar(2)
    d2h = h.d_theta(2)
    e1d2h = h.d_theta(2).eta_bar(1)
    dxd2h = h.d_x().d_theta(2)
    d1d2h = h.d_theta(1).d_theta(2)
    t2e2e1h = T2 * h.eta_bar(1).eta_bar(2)
    s = _sgn(k)
    head = []
    shared = [
        (-s * sg, _mul(e2gp, t2e2e1h)),
        (-s * sg, _mul(e1gp, d2h)),
    ]
    for cst, coeff in shared:
        head += [
            (cst, coeff, (k - 1, 1, 1)),
            (cst, coeff * T2, (k, 1, 0)),
            (-cst, coeff * T1, (k, 0, 1)),
            (cst, coeff * T12, (k + 1, 0, 0)),
        ]
    return head + [
        (-s * k * (k - 1), _mul(gpp, e1d2h), (k - 2, 1, 1)),
        (-s * sg * (k - 1), _mul(e1gp, dxd2h), (k - 2, 1, 1)),
        (-s * (k - 1) * (k + 1), _mul(gpp, e1d2h, T2), (k - 1, 1, 0)),
        (s * sg * sh * k, _mul(e1gp, T2, dxd2h), (k - 1, 1, 0)),
        (s * sg * sh * (k + 1), _mul(e2gp, e1d2h), (k - 1, 1, 0)),
        (s * k * (k - 1), _mul(gpp, e1d2h, T1), (k - 1, 0, 1)),
        (s * sg * (k - 1), _mul(e1gp, dxd2h, T1), (k - 1, 0, 1)),
        (-s * sh * (k - 1), _mul(gpp, d2h), (k - 1, 0, 1)),
        (-s * sg * sh, _mul(e2gp, T2, dxd2h), (k - 1, 0, 1)),       # dangling word token
        (-s * sg * sh * (k - 1), _mul(e1gp, e1d2h), (k - 1, 0, 1)),
        (-s * (k + 1) * (k - 1), _mul(gpp, e1d2h, T12), (k, 0, 0)),
        (s * sg * sh * k, _mul(e1gp, e1d2h, T2), (k, 0, 0)),
        (-s * sg * k, _mul(e1gp, dxd2h, T12), (k, 0, 0)),
        (s * sh * (k - 1), _mul(gpp, d2h, T2), (k, 0, 0)),
        (-s * sg * sh * (k + 1), _mul(e2gp, d1d2h, T1), (k, 0, 0)),
        (s * sg, _mul(e2gp, d2h), (k, 0, 0)),
        (_sgn(k) * sh * (k - 1), _mul(gpp, dxd2h), (k - 2, 0, 1)),
        (-s * sh * (k - 1), _mul(gpp, dxd2h, T2), (k - 1, 0, 0)),
        (-s * sg, _mul(e2gp, dxd2h), (k - 1, 0, 0)),
    ]


_BUILDERS = {1: _terms_phi1, 2: _terms_phi2, 3: _terms_phi3,
             4: _terms_phi4, 5: _terms_phi5, 6: _terms_phi6}


def _raw_operator(i: int, g: SuperFunction, h: SuperFunction, k: int,
                  sw, tw) -> DiffOperator:
    sg = _sgn(g.parity())
    sh = _sgn(h.parity())
    acc = {}
    for cst, coeff, midx in _BUILDERS[i](g, h, k, sg, sh):
        cst = Fraction(cst)
        if not cst or coeff.is_zero():
            continue
        if midx[0] < 0:
            raise ValueError(f"negative dx power with nonzero coefficient in "
                             f"transcription {i} at k={k}")
        f = coeff.scale(cst)
        acc[midx] = acc[midx] + f if midx in acc else f
    return DiffOperator(sw, tw, acc)


def transcribed_phi(i: int, k: int) -> Cochain2:
    """The published expansion of the i-th cup 2-cochain, symmetrized."""
    if i not in _BUILDERS:
        raise ValueError("transcriptions exist for i = 1..6")
    if k < 1:
        raise ValueError("k must be >= 1")
    sw, tw = Fraction(-k, 2), Fraction(k, 2)
    vals = {}
    for l1 in BASIS_ORDER:
        for l2 in BASIS_ORDER:
            g, h = hamiltonian(l1), hamiltonian(l2)
            swap_sign = -1 if (BASIS_PARITY[l1] and BASIS_PARITY[l2]) else 1
            op = _raw_operator(i, g, h, k, sw, tw) \
                - _raw_operator(i, h, g, k, sw, tw).scale(swap_sign)
            vals[(l1, l2)] = op
    return Cochain2(sw, tw, Parity.EVEN, vals, check=False)


def crosscheck_expansion(i: int, k: int) -> DiscrepancyReport:
    """Diff the computed cup product against the published expansion.

    Discrepancies are report content: the computed product is authoritative.
    """
    computed = phi(i, k)
    printed = transcribed_phi(i, k)
    report = DiscrepancyReport(
        title=f"phi{i} at k={k}: computed cup product vs published expansion",
        flagged_tokens=FLAGGED_TOKENS[i])
    for pair in sorted(computed.values):
        a = computed.value(*pair)
        b = printed.value(*pair)
        if not op_equals(a, b):
            report.diffs.append({
                "pair": list(pair),
                "computed": render_operator(a),
                "transcribed": render_operator(b),
                "difference": render_operator(a - b),
            })
    return report
