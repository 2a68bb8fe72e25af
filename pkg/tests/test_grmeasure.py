from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grquiver import registry
from grquiver.explorer import enumerate_indecomposables
from grquiver.grmeasure import (GRMeasure, MeasureMemo, chain_measure, compare, gr_measure,
                                gr_submodule, measure_value)
from grquiver.presentation import projective, simple
from grquiver.repcore import decompose, direct_sum, enumerate_submodules, iso_test, zigzag_module

measures = st.frozensets(st.integers(1, 20), min_size=1).map(lambda s: GRMeasure(tuple(sorted(s))))


def test_compare_examples():
    assert compare(GRMeasure((1,)), GRMeasure((2,))) == 1
    assert compare(GRMeasure((1, 3)), GRMeasure((1, 2))) == -1
    assert compare(GRMeasure((1, 3)), GRMeasure((1, 3))) == 0


def test_values():
    assert measure_value(GRMeasure((1,))) == Fraction(1, 2)
    assert measure_value(GRMeasure((1, 2))) == Fraction(3, 4)
    assert measure_value(GRMeasure((1, 3, 7))) == Fraction(81, 128)


def test_measure_must_be_increasing():
    with pytest.raises(ValueError):
        GRMeasure((2, 1))
    with pytest.raises(ValueError):
        GRMeasure((0, 1))
    assert GRMeasure.parse("(1,3,7)") == GRMeasure((1, 3, 7))
    assert str(GRMeasure((1, 3, 7))) == "(1,3,7)"


@settings(max_examples=300, deadline=None)
@given(measures, measures)
def test_compare_matches_rationals(i, j):
    vi, vj = measure_value(i), measure_value(j)
    assert compare(i, j) == (vi > vj) - (vi < vj)
    assert (i < j) == (vi < vj)


def test_simple_and_small(k2, k2_mods):
    for v in k2.vertices:
        assert gr_measure(simple(k2, v)) == GRMeasure((1,))
    assert gr_measure(k2_mods["P1"]) == GRMeasure((1, 3))
    assert gr_measure(k2_mods["P1"]) == chain_measure(k2_mods["P1"])


def test_gr_submodules(k2_mods):
    s = gr_submodule(k2_mods["R11"])
    assert s.length == 1 and s.dims == (0, 1)
    s = gr_submodule(k2_mods["P1"])
    assert s.length == 1 and iso_test(s.as_representation(), k2_mods["S2"])


def test_doubled_chain_projective(dchain):
    pc = projective(dchain, "c")
    assert gr_measure(pc) == GRMeasure((1, 3, 7))
    s = gr_submodule(pc)
    assert s.length == 3 and gr_measure(s.as_representation()) == GRMeasure((1, 3))


@pytest.mark.parametrize("alg_name,cap", [("k2", 5), ("chain-zero", 4), ("doubled-chain", 4)])
def test_against_chain_oracle(alg_name, cap):
    alg = registry.algebra(alg_name)
    for x in enumerate_indecomposables(alg, cap, length_cap=cap).members:
        m = gr_measure(x, MeasureMemo())
        assert m == chain_measure(x)
        assert m.elements[0] == 1 and m.elements[-1] == x.length


def test_fresh_memo_agrees(dchain):
    y = zigzag_module(2, dchain)
    assert gr_measure(y, MeasureMemo()) == GRMeasure((1, 3, 7, 12))


def test_direct_sum_is_max(k2_mods):
    names = ["S1", "S2", "P1", "I2", "R11"]
    for a in names:
        for b in names:
            x, y = k2_mods[a], k2_mods[b]
            assert gr_measure(direct_sum([x, y])) == max(gr_measure(x), gr_measure(y))
