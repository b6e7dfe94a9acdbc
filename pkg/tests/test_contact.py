import itertools
from fractions import Fraction as Q

import pytest

from superdeform.contact import (BASIS_ORDER, ContactElement, SpanError,
                                 basis_element, expand_in_osp_span,
                                 hamiltonian, jacobi_check, jacobi_defect,
                                 load_bracket_table, osp12_copy, poisson,
                                 poisson_in_basis, verify_structure_constants)
from superdeform.grassmann import ParityError, SuperFunction


def test_bracket_table_examples():
    # [H,X] = X
    assert poisson(basis_element("H"), basis_element("X")).f == SuperFunction.one()
    # [A1,A1] = 2X
    assert poisson_in_basis("A1", "A1") == {"X": Q(2)}
    # [C,A1] = -(1/2) A2  (graded antisymmetry from [A1,C] = (1/2) A2)
    assert poisson(basis_element("C"), basis_element("A1")).f == \
        SuperFunction.theta(2, -1)
    # [B1,B1] = -2Y
    assert poisson_in_basis("B1", "B1") == {"Y": Q(-2)}


def test_printed_variant_entries_are_jacobi_forced():
    # The fixture corrects a published tabulation; the corrected values are
    # the unique ones compatible with the graded Jacobi identity.
    assert poisson_in_basis("A1", "B1") == {"H": Q(-2)}
    assert poisson_in_basis("A2", "B2") == {"H": Q(-2)}
    assert poisson_in_basis("A1", "B2") == {"C": Q(2)}
    assert poisson_in_basis("A2", "B1") == {"C": Q(-2)}


def test_verify_structure_constants_clean():
    report = verify_structure_constants()
    assert report.ok
    assert len(report.entries) == 36


def test_verify_structure_constants_fault_injection():
    table = load_bracket_table()
    table[("H", "X")] = {"X": Q(2)}
    report = verify_structure_constants(table)
    assert not report.ok
    assert [e.name for e in report.failures()] == ["[H,X]"]


def test_printed_table_variant_mismatch_count():
    # Replaying the published table literally surfaces exactly the four
    # corrected entries as mismatches.
    table = load_bracket_table()
    table[("A1", "B1")] = {"H": Q(2)}
    table[("A2", "B2")] = {"H": Q(2)}
    del table[("A1", "B2")]
    del table[("A2", "B1")]
    report = verify_structure_constants(table)
    assert sorted(e.name for e in report.failures()) == \
        ["[A1,B1]", "[A1,B2]", "[A2,B1]", "[A2,B2]"]


def test_jacobi_exhaustive_on_basis():
    els = [basis_element(l) for l in BASIS_ORDER]
    report = jacobi_check(itertools.product(els, repeat=3))
    assert report.ok
    assert len(report.entries) == 512


def test_jacobi_random_polynomials(rng):
    from superdeform.sampling import random_homogeneous
    for _ in range(150):
        f, g, h = (ContactElement(random_homogeneous(rng, 4)) for _ in range(3))
        assert jacobi_defect(f, g, h).is_zero()


def test_odd_self_triple():
    f = basis_element("A1")
    assert jacobi_defect(f, f, f).is_zero()


def test_bracket_closure_in_span():
    for a in BASIS_ORDER:
        for b in BASIS_ORDER:
            expand_in_osp_span(poisson(basis_element(a), basis_element(b)).f)


def test_graded_antisymmetry_on_basis_and_random(rng):
    from superdeform.sampling import random_homogeneous
    pairs = list(itertools.product(BASIS_ORDER, repeat=2))
    for a, b in pairs:
        f, g = basis_element(a), basis_element(b)
        sign = -1 if (f.parity and g.parity) else 1
        assert (poisson(f, g).f + poisson(g, f).f.scale(sign)).is_zero()
    for _ in range(1000):
        f = ContactElement(random_homogeneous(rng, 4))
        g = ContactElement(random_homogeneous(rng, 4))
        sign = -1 if (f.parity and g.parity) else 1
        assert (poisson(f, g).f + poisson(g, f).f.scale(sign)).is_zero()


def test_expand_outside_span():
    with pytest.raises(SpanError):
        expand_in_osp_span(SuperFunction.x(3))


def test_contact_element_requires_homogeneous():
    with pytest.raises(ParityError):
        ContactElement(SuperFunction.x() + SuperFunction.theta(1))


def test_osp12_copies():
    gens = osp12_copy(1)
    assert [g.f.render() for g in gens] == ["1", "x", "x^2", "x*t1", "t1"]
    osp12_copy(2)  # closure is checked on construction
    with pytest.raises(ValueError):
        osp12_copy(3)


def test_hamiltonians_fixed_order():
    assert BASIS_ORDER == ("H", "X", "Y", "A1", "A2", "B1", "B2", "C")
    assert hamiltonian("H") == SuperFunction.x(1, -1)
    assert hamiltonian("C") == SuperFunction.theta12()
