import numpy as np
import pytest

from grquiver import registry
from grquiver.artrans import (cokernel, inverse_translate, is_injective, is_projective,
                              minimal_presentation, translate)
from grquiver.explorer import enumerate_indecomposables
from grquiver.presentation import injective, projective
from grquiver.repcore import is_indecomposable, iso_test, rad_basis
from grquiver.tame import euler_data, knit_dim_vectors


@pytest.fixture(scope="module")
def k2_snap(k2):
    return enumerate_indecomposables(k2, 5)


@pytest.fixture(scope="module")
def chain_zero_snap(chain_zero):
    return enumerate_indecomposables(chain_zero, 4, length_cap=4)


def test_projective_has_no_relations_part(k2, chain_zero):
    for alg in (k2, chain_zero):
        for v in alg.vertices:
            pres = minimal_presentation(projective(alg, v))
            assert pres.p1.length == 0


def test_presentation_of_s1(k2_mods):
    pres = minimal_presentation(k2_mods["S1"])
    assert pres.p0.dims == (1, 2)
    assert pres.p1.dims == (0, 2)


@pytest.mark.parametrize("alg_name", ["k2", "chain-zero", "doubled-chain"])
def test_presentation_cokernel_and_minimality(alg_name):
    alg = registry.algebra(alg_name)
    snap = enumerate_indecomposables(alg, 4, length_cap=4)
    for x in snap.members:
        pres = minimal_presentation(x)
        assert iso_test(cokernel(pres.d), x)
        # image of d inside the radical of p0
        rad = rad_basis(pres.p0)
        for i, m in enumerate(pres.d.mats):
            if m.size:
                from grquiver import ffla
                for col in m.T:
                    assert ffla.contains(rad[i], col, alg.p)


def test_translates_of_projectives_and_injectives(k2, chain_zero):
    for alg in (k2, chain_zero):
        for v in alg.vertices:
            assert translate(projective(alg, v)).length == 0
            assert inverse_translate(injective(alg, v)).length == 0


def test_translate_matches_coxeter(k2, k2_snap):
    ed = euler_data(k2)
    for x in k2_snap.members:
        if is_projective(x):
            continue
        assert tuple(ed.coxeter @ np.array(x.dims)) == translate(x).dims


def test_inverse_translate_p2(k2_mods):
    assert inverse_translate(k2_mods["P2"]).dims == (2, 3)


def test_inverse_translate_matches_knitting(k2):
    rows = knit_dim_vectors(k2, 4)
    for v, j, dims in rows:
        x = projective(k2, v)
        for _ in range(j):
            x = inverse_translate(x)
        assert x.dims == dims


@pytest.mark.parametrize("snap_name", ["k2_snap", "chain_zero_snap"])
def test_round_trips(snap_name, request):
    snap = request.getfixturevalue(snap_name)
    for x in snap.members:
        if not is_projective(x):
            y = translate(x)
            assert is_indecomposable(y)
            assert iso_test(inverse_translate(y), x)
        if not is_injective(x):
            y = inverse_translate(x)
            assert is_indecomposable(y)
            assert iso_test(translate(y), x)
