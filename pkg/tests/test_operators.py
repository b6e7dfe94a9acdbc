import itertools
from fractions import Fraction as Q

import pytest

from superdeform.contact import BASIS_ORDER, basis_element, poisson
from superdeform.grassmann import Parity, ParityError, SuperFunction, XPoly
from superdeform.operators import (D1, D2, DX, ETA1, ETA2, DiffOperator, Mult,
                                   WeightedDensity, WeightMismatchError,
                                   compose, eta_op, eta_power, eta_word,
                                   lie_density, lie_operator, module_action,
                                   op_equals, ops_agree_by_evaluation,
                                   render_operator)
from superdeform.sampling import random_operator

LAM = Q(1, 3)
ONE = SuperFunction.one()


def _op(terms, sw=LAM, tw=LAM):
    return DiffOperator(sw, tw, terms)


def test_normal_form_and_parity():
    op = _op({(1, 0, 0): SuperFunction.zero(), (0, 1, 0): ONE})
    assert list(op.terms) == [(0, 1, 0)]
    assert op.parity == Parity.ODD
    with pytest.raises(ParityError):
        _op({(0, 0, 0): ONE, (0, 1, 0): ONE})
    assert _op({}).parity is None


def test_apply_examples():
    dx = _op({(1, 0, 0): ONE})
    assert dx.apply(WeightedDensity(LAM, SuperFunction.x(2))).f == \
        SuperFunction.x(1, 2)
    t2d1 = _op({(0, 1, 0): SuperFunction.theta(2)})
    out = t2d1.apply(WeightedDensity(LAM, SuperFunction.theta(1)))
    assert out.f == SuperFunction.theta(2)
    assert out.weight == LAM
    with pytest.raises(WeightMismatchError):
        dx.apply(WeightedDensity(Q(1, 2), ONE))


def test_apply_order_dx_then_d1_then_d2():
    op = _op({(0, 1, 1): ONE})
    out = op.apply(WeightedDensity(LAM, SuperFunction.theta12()))
    assert out.f == ONE  # d2(d1(t1 t2)) = d2(t2) = 1


def test_compose_examples():
    d1 = _op({(0, 1, 0): ONE})
    assert compose(d1, d1).is_zero()
    e1 = eta_op(1, LAM, LAM)
    assert op_equals(compose(e1, e1), _op({(1, 0, 0): SuperFunction.scalar(-1)}))
    multt1 = _op({(0, 0, 0): SuperFunction.theta(1)})
    d2 = _op({(0, 0, 1): ONE})
    ab = compose(multt1, d2)
    ba = compose(d2, multt1)
    # differ by the supercommutator: d2 o t1 = -t1 o d2
    assert op_equals(ba, ab.scale(-1))
    with pytest.raises(WeightMismatchError):
        compose(_op({}, LAM, LAM), _op({}, Q(0), Q(1)))


def test_compose_matches_nested_apply(rng):
    for _ in range(200):
        a = random_operator(rng, LAM, LAM, 2, 3)
        b = random_operator(rng, LAM, LAM, 2, 3)
        c = compose(a, b)
        for p in range(4):
            for slot in range(4):
                phi = WeightedDensity(LAM, SuperFunction.monomial(p, slot))
                assert c.apply(phi).f == a.apply(b.apply(phi)).f


def test_compose_associative(rng):
    for _ in range(150):
        a, b, c = (random_operator(rng, LAM, LAM, 2, 2) for _ in range(3))
        assert op_equals(compose(compose(a, b), c), compose(a, compose(b, c)))


def test_eta_word_examples():
    w = eta_word([ETA1, ETA1], LAM, LAM)
    assert op_equals(w, _op({(1, 0, 0): SuperFunction.scalar(-1)}))
    w3 = eta_word([ETA2, ETA2, ETA2], LAM, LAM)
    expect = compose(_op({(1, 0, 0): SuperFunction.scalar(-1)}),
                     eta_op(2, LAM, LAM))
    assert op_equals(w3, expect)
    w = eta_word([Mult(SuperFunction.theta(1)), D2], LAM, LAM)
    assert w.terms == {(0, 0, 1): SuperFunction.theta(1)}


def test_eta_power_closed_form():
    for i in (1, 2):
        for n in range(8):
            sym = ETA1 if i == 1 else ETA2
            word = eta_word([sym] * n, LAM, LAM) if n else \
                DiffOperator.identity(LAM)
            assert op_equals(eta_power(i, n, LAM, LAM), word)


def test_d1d2_vs_d2d1_sign():
    a = eta_word([D1, D2], LAM, LAM)
    b = eta_word([D2, D1], LAM, LAM)
    assert not op_equals(a, b)
    assert op_equals(a, b.scale(-1))
    phi = WeightedDensity(LAM, SuperFunction.theta12())
    assert a.apply(phi).f == SuperFunction.scalar(-1)
    assert b.apply(phi).f == SuperFunction.one()


def test_lie_density_examples():
    one = basis_element("X")
    out = lie_density(one, WeightedDensity(LAM, SuperFunction.x()))
    assert out.f == ONE and out.weight == LAM
    x2 = basis_element("Y").scale(-1)
    out = lie_density(x2, WeightedDensity(LAM, ONE))
    assert out.f == SuperFunction.x(1, 2 * LAM)
    assert lie_density(one, WeightedDensity(LAM, ONE)).f.is_zero()


def test_lie_operator_matches_density_route():
    for label in BASIS_ORDER:
        g = basis_element(label)
        for w in (Q(0), LAM, Q(-1, 2)):
            op = lie_operator(g, w)
            for p in range(5):
                for slot in range(4):
                    phi = WeightedDensity(w, SuperFunction.monomial(p, slot))
                    assert op.apply(phi).f == lie_density(g, phi).f


def test_lie_action_property_exhaustive():
    # L_{f,g} = [L_f, L_g] on all basis pairs, densities p <= 6, four weights
    for w in (Q(0), Q(1, 2), Q(-1), Q(1, 3)):
        for l1, l2 in itertools.product(BASIS_ORDER, repeat=2):
            f, g = basis_element(l1), basis_element(l2)
            sign = -1 if (f.parity and g.parity) else 1
            comm = compose(lie_operator(f, w), lie_operator(g, w)) \
                - compose(lie_operator(g, w), lie_operator(f, w)).scale(sign)
            br = poisson(f, g)
            expect = DiffOperator.zero(w, w) if br.f.is_zero() \
                else lie_operator(br, w)
            assert op_equals(comm, expect)
            for p in range(7):
                for slot in range(4):
                    phi = WeightedDensity(w, SuperFunction.monomial(p, slot))
                    assert comm.apply(phi).f == expect.apply(phi).f


def test_module_action_examples():
    one = basis_element("X")
    mx = DiffOperator.mult(SuperFunction.x(), LAM)
    assert op_equals(module_action(one, mx), DiffOperator.mult(ONE, LAM))
    ident = DiffOperator.identity(LAM)
    for label in BASIS_ORDER:
        assert module_action(basis_element(label), ident).is_zero()
    xf = basis_element("H").scale(-1)
    dx = _op({(1, 0, 0): ONE})
    assert op_equals(module_action(xf, dx), dx.scale(-1))


def test_module_action_pointwise_identity(rng):
    for label in BASIS_ORDER:
        g = basis_element(label)
        for _ in range(6):
            a = random_operator(rng, LAM, LAM, 2, 3)
            ga = module_action(g, a)
            sign = -1 if (g.parity and a.parity) else 1
            for p in range(5):
                for slot in range(4):
                    phi = WeightedDensity(LAM, SuperFunction.monomial(p, slot))
                    lhs = ga.apply(phi).f
                    rhs = lie_density(g, a.apply(phi)).f \
                        - a.apply(WeightedDensity(
                            LAM, lie_density(g, phi).f)).f.scale(sign)
                    assert lhs == rhs


def test_module_action_is_lie_action(rng):
    for w in (Q(0), Q(1, 2), Q(1, 3)):
        for l1, l2 in itertools.product(BASIS_ORDER, repeat=2):
            f, g = basis_element(l1), basis_element(l2)
            a = random_operator(rng, w, w, 2, 2)
            sign = -1 if (f.parity and g.parity) else 1
            lhs = module_action(f, module_action(g, a)) \
                - module_action(g, module_action(f, a)).scale(sign)
            br = poisson(f, g)
            rhs = DiffOperator.zero(w, w) if br.f.is_zero() \
                else module_action(br, a)
            assert op_equals(lhs, rhs)


def test_op_equals_requires_same_block():
    with pytest.raises(WeightMismatchError):
        op_equals(_op({}, Q(0), Q(0)), _op({}, Q(0), Q(1)))


def test_evaluation_equality_agrees_with_normal_form(rng):
    for _ in range(1000):
        a = random_operator(rng, LAM, LAM, 2, 3)
        b = a if rng.random() < 0.1 else random_operator(rng, LAM, LAM, 2, 3)
        assert op_equals(a, b) == ops_agree_by_evaluation(a, b)


def test_eta_squared_evaluation_oracle():
    e1 = eta_op(1, LAM, LAM)
    minus_dx = _op({(1, 0, 0): SuperFunction.scalar(-1)})
    assert ops_agree_by_evaluation(compose(e1, e1), minus_dx)


def test_render_operator():
    op = _op({(2, 1, 0): SuperFunction.x(1, Q(3, 2)), (0, 0, 1): ONE})
    assert render_operator(op) == "(1) d2 + (3/2*x) dx^2 d1"
    assert render_operator(_op({})) == "0"


def test_immutability():
    op = _op({(0, 0, 0): ONE})
    with pytest.raises(AttributeError):
        op.parity = Parity.ODD
