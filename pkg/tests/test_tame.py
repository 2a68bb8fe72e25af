import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grquiver import registry
from grquiver.artrans import inverse_translate
from grquiver.presentation import injective, projective
from grquiver.repcore import hom_basis, is_cogenerated
from grquiver.tame import euler_data, tau_cogeneration_check, knit_dim_vectors, mono_or_epi_scan, joint_embedding_scan


@pytest.fixture(scope="module")
def ed_k2(k2):
    return euler_data(k2)


@pytest.fixture(scope="module")
def d4():
    return registry.algebra("d4-subspace")


def test_coxeter_sends_projectives_to_negative_injectives(k2, d4):
    for alg in (k2, d4, registry.algebra("k3"), registry.algebra("doubled-chain")):
        ed = euler_data(alg)
        for v in alg.vertices:
            got = ed.coxeter @ np.array(projective(alg, v).dims)
            assert tuple(got) == tuple(-np.array(injective(alg, v).dims))
        assert np.array_equal((ed.coxeter @ ed.coxeter_inv), np.eye(len(alg.vertices)))


def test_euler_form_counts_homs_from_projectives(k2, d4):
    rng = np.random.default_rng(0)
    for alg in (k2, d4):
        ed = euler_data(alg)
        for _ in range(5):
            x = rng.integers(0, 4, len(alg.vertices))
            for v in alg.vertices:
                pv = projective(alg, v).dims
                assert ed.form(pv, x) == x[alg.quiver.vertex_index[v]]


def test_k2_null_root_and_defect(k2, ed_k2):
    assert ed_k2.null_root == (1, 1)
    assert ed_k2.defect_of((0, 1)) == -1
    assert ed_k2.defect_of((1, 2)) == -1
    assert ed_k2.defect_of((2, 1)) == 1


def test_k3_is_not_affine():
    ed = euler_data(registry.algebra("k3"))
    assert ed.null_root is None and not ed.affine
    with pytest.raises(ValueError):
        ed.defect_of((1, 1))


def test_d4_null_root(d4):
    ed = euler_data(d4)
    assert ed.null_root == (2, 1, 1, 1, 1)
    assert ed.defect_of(projective(d4, "0").dims) < 0


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["k2", "d4-subspace"]), st.data())
def test_affine_invariants(name, data):
    alg = registry.algebra(name)
    ed = euler_data(alg)
    h = np.array(ed.null_root)
    assert tuple(ed.coxeter @ h) == ed.null_root
    assert ed.defect_of(h) == 0
    x = np.array(data.draw(st.lists(st.integers(-9, 9), min_size=len(h), max_size=len(h))))
    assert ed.defect_of(ed.coxeter @ x) == ed.defect_of(x)


def test_knit(k2):
    rows = knit_dim_vectors(k2, 4)
    assert {(v, dims) for v, j, dims in rows if j == 0} == {(v, projective(k2, v).dims)
                                                           for v in k2.vertices}
    assert all(b == a + 1 for _, _, (a, b) in rows)
    for v, j, dims in rows:
        x = projective(k2, v)
        for _ in range(j):
            x = inverse_translate(x)
        assert x.dims == dims


def test_tau_cogeneration(k2):
    r = tau_cogeneration_check(k2, 0, 3)
    assert r.least_j[("2", "2", 0)] <= 1
    x = projective(k2, "1")
    assert is_cogenerated(x, x)
    assert tau_cogeneration_check(k2, 1, 4).n_b is not None


def test_mono_or_epi(k2, k2_mods):
    r = mono_or_epi_scan(k2, 4)
    assert r.ok and r.checked > 0 and not r.ambiguous
    for name in ("R10", "R01", "R11"):
        (f,) = hom_basis(k2_mods["S2"], k2_mods[name])
        assert f.is_injective()


def test_joint_embedding(k2, d4):
    r = joint_embedding_scan(k2, projective(k2, "1"), 4)
    assert r.found and len(r.maps) == 1 and r.maps[0].is_iso()
    # regression: the simple projective of defect -2 has no proper nonzero quotient
    r = joint_embedding_scan(d4, projective(d4, "0"), 4)
    assert not r.found and "no witness" in r.note
    with pytest.raises(ValueError):
        joint_embedding_scan(k2, injective(k2, "2"), 4)
