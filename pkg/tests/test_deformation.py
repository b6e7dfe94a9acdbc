import json
from fractions import Fraction as Q

import pytest

from superdeform.catalog import CocycleId, build, diagonal_pair, phi
from superdeform.deformation import (BlockMap, DeformationParams, Integrable,
                                     Obstructed, TruncatedSymbolModule,
                                     build_L1, check_integrability,
                                     first_order_deformation_check,
                                     obstruction2, obstruction_coefficients,
                                     obstruction_solvability, verify_flat)
from superdeform.sampling import random_params_dict

EXAMPLE = dict(a={1: 2, -1: 1, 2: 2, -2: 1, 0: 1}, c={1: 1, 2: 1},
               e={1: 1, 2: 1})


def test_truncated_module_shape():
    mod = TruncatedSymbolModule(Q(1), 6)
    assert mod.resonant and mod.m == 2
    assert mod.component_weight(3) == Q(-1, 2)
    assert mod.diagonal_component(2) == 0
    assert list(mod.diagonal_index_range()) == list(range(-4, 3))
    gen = TruncatedSymbolModule(Q(1, 3), 4)
    assert not gen.resonant
    with pytest.raises(ValueError):
        TruncatedSymbolModule(Q(2), 3)  # K < 2m


def test_params_json_round_trip():
    doc = {"d": "1", "a": {"1": "2", "-1": "1"}, "b": {},
           "c": {"1": "1/2"}, "d_": {}, "e": {"2": "-3"}}
    params, d = DeformationParams.from_json_dict(doc)
    assert d == 1
    assert params.coeff("a", -1) == 1
    assert params.coeff("c", 1) == Q(1, 2)
    out = params.to_json_dict(d)
    params2, d2 = DeformationParams.from_json_dict(out)
    assert params2 == params and d2 == d


def test_params_reject_floats():
    with pytest.raises(ValueError):
        DeformationParams.from_json_dict({"d": "1.5"})
    with pytest.raises(ValueError):
        DeformationParams.from_json_dict({"d": "1", "a": {"0": "0.25"}})
    with pytest.raises(ValueError):
        DeformationParams.from_json_dict({"a": {"0": "1"}})  # missing d


def test_params_validation_against_module():
    mod = TruncatedSymbolModule(Q(1, 3), 4)
    with pytest.raises(ValueError):
        DeformationParams(c={1: 1}).validate_for(mod)
    with pytest.raises(ValueError):
        DeformationParams(a={-1: 1}).validate_for(mod)
    res = TruncatedSymbolModule(Q(1), 6)
    with pytest.raises(ValueError):
        DeformationParams(c={3: 1}).validate_for(res)


def test_build_L1_blocks():
    vals, losses = build_L1(DeformationParams(**EXAMPLE), Q(1), 6)
    assert not losses
    # c_1 Gamma_1 occupies the block (component 3 -> component 1)
    keys = set()
    for label in vals:
        keys |= set(vals[label].blocks)
    assert (3, 1) in keys and (4, 0) in keys
    # diagonal gamma_1 sits on component m - k = 1
    assert (1, 1) in keys


def test_build_L1_zero_params():
    vals, losses = build_L1(DeformationParams(), Q(1), 6)
    assert all(vals[label].is_zero() for label in vals)
    assert not losses


def test_single_offdiagonal_block_example():
    vals, _ = build_L1(DeformationParams(c={1: 1}), Q(1), 6)
    G = build(CocycleId("Gamma", 1))
    for label, bm in vals.items():
        if bm.is_zero():
            assert G.value(label).is_zero()
        else:
            assert set(bm.blocks) == {(3, 1)}
            assert bm.blocks[(3, 1)] == G.value(label)


def test_truncation_loss_reported():
    # a_{-5} lives on component m - (-5) = 7 > K = 6: loud loss, not silence
    _, losses = build_L1(DeformationParams(a={-5: 1}), Q(1), 6)
    assert losses and losses[0]["min_K"] == 7


def test_obstruction_zero_cases():
    obs, _ = obstruction2(DeformationParams(a={0: 1, 1: 2}), Q(1, 3))
    assert obs == {}
    obs, _ = obstruction2(DeformationParams(**EXAMPLE), Q(1), 6)
    assert obs == {}


def test_obstruction_nonzero_case():
    obs, _ = obstruction2(DeformationParams(a={1: 1}, d_={1: 1}), Q(1), 6)
    assert set(obs) == {(3, 1)}
    co = obstruction_coefficients(DeformationParams(a={1: 1}, d_={1: 1}), Q(1))
    assert co["off_diagonal"][1][0] == 1


def test_obstruction_matches_coefficient_expansion(rng):
    """The blockwise (1/2) L1 v L1 equals its catalog-basis expansion."""
    for _ in range(25):
        fams = random_params_dict(rng, 2, 6)
        params = DeformationParams(**fams)
        obs, _ = obstruction2(params, Q(1), 6)
        co = obstruction_coefficients(params, Q(1))
        expected = {}
        for k, (u, v) in co["diagonal"].items():
            d1, d2 = diagonal_pair(k)
            tot = d1.scale(u) + d2.scale(v)
            if not tot.is_zero():
                expected[(2 - k, 2 - k)] = tot
        for k, cs in co["off_diagonal"].items():
            tot = None
            for i, c in enumerate(cs, start=1):
                t = phi(i, k).scale(c)
                tot = t if tot is None else tot + t
            if tot is not None and not tot.is_zero():
                expected[(2 + k, 2 - k)] = tot
        assert set(obs) == set(expected)
        for key in obs:
            assert (obs[key] - expected[key]).is_zero()


def test_integrability_examples():
    assert isinstance(check_integrability(DeformationParams(b={3: 1}), Q(1, 3)),
                      Obstructed)
    assert check_integrability(DeformationParams(a={0: 1, 4: Q(1, 2)}),
                               Q(1, 3)).ok
    v = check_integrability(DeformationParams(a={1: 1}, d_={1: 1}), Q(1))
    assert not v.ok and "a_1*d_1" in v.violations[0]
    assert check_integrability(DeformationParams(**EXAMPLE), Q(1)).ok


def test_integrability_vs_solvability_sample(rng):
    # small sample of the seed-0 experiment (full 200 in the acceptance run)
    agree = 0
    for _ in range(25):
        params = DeformationParams(**random_params_dict(rng, 2, 6))
        paper = check_integrability(params, Q(1)).ok
        solv = obstruction_solvability(params, Q(1))["solvable"]
        agree += (paper == solv)
    assert agree == 25


def test_known_equivalence_gap_vector():
    """Documented counterexample to the published equivalence.

    The obstruction of (a1, d1, a-1, e1, b-1) = 1 satisfies the computed
    solvability relations (c2 = 0, c1 = c5, c4 + c6 = c5) yet violates the
    published condition a_k d_k - c_k b_{-k} = 0, so the published condition
    set is strictly stronger than coboundary-solvability of the honest
    obstruction.  See the repository notes for the provenance.
    """
    params = DeformationParams(a={1: 1, -1: 1}, d_={1: 1}, e={1: 1}, b={-1: 1})
    assert not check_integrability(params, Q(1)).ok
    assert obstruction_solvability(params, Q(1))["solvable"]


def test_verify_flat_examples():
    rep = verify_flat(DeformationParams(a={0: 1, 1: 2, 2: Q(1, 3)}), Q(1, 3), 6)
    assert rep.ok and len(rep.entries) == 64
    rep = verify_flat(DeformationParams(**EXAMPLE), Q(1), 6)
    assert rep.ok
    with pytest.raises(ValueError):
        verify_flat(DeformationParams(b={0: 1}), Q(1, 3), 6)


def test_verify_flat_on_integrable_grid(rng):
    # accepted vectors whose obstruction vanishes identically stay flat
    for m in (1, 2, 3):
        d = Q(m, 2)
        K = 2 * m + 2
        for trial in range(3):
            a_neg = {-k: Q(rng.randint(-2, 2)) for k in range(0, m + 1)}
            ce = {k: Q(rng.randint(-2, 2)) for k in range(1, m + 1)}
            a_pos = {k: 2 * a_neg.get(-k, Q(0)) for k in range(1, m + 1)}
            params = DeformationParams(a={**a_neg, **a_pos}, c=ce, e=ce)
            assert check_integrability(params, d).ok
            obs, _ = obstruction2(params, d, K)
            assert obs == {}
            assert verify_flat(params, d, K).ok


def test_flatness_fails_exactly_when_obstruction_nonzero():
    # integrable by the published conditions, obstruction a coboundary but
    # nonzero, so the homomorphism identity with no higher terms must fail
    params = DeformationParams(b={1: 1})
    assert check_integrability(params, Q(1)).ok
    obs, _ = obstruction2(params, Q(1), 6)
    assert obs != {}
    rep = verify_flat(params, Q(1), 6)
    assert not rep.ok


def test_first_order_dual_route():
    mod = TruncatedSymbolModule(Q(1), 6)
    assert first_order_deformation_check(
        build(CocycleId("gamma_tilde", 1)), mod, 1, 1)
    assert first_order_deformation_check(
        build(CocycleId("Gamma_bar", 2)), mod, 4, 0)
    gen = TruncatedSymbolModule(Q(1, 3), 4)
    assert first_order_deformation_check(
        build(CocycleId("omega_tilde", 2, Q(1, 3))), gen, 2, 2)
