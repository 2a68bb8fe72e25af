import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grquiver import ffla, registry
from grquiver.presentation import projective, simple
from grquiver.repcore import (CoveringSpec, IsoClassTable, Morphism, Representation,
                              RepresentationError, canonical_key, check, decompose,
                              direct_sum, enumerate_submodules, hom_basis, hom_dim, identity,
                              is_cogenerated, is_indecomposable, iso_test, jh_multiplicity,
                              kernel_of, push_down, restrict, submodule_from_generators,
                              zigzag_module, zero_morphism)

from conftest import oracle_hom_count, oracle_submodule_count


def random_k2_module(rng, d1, d2, p=2):
    alg = registry.algebra("k2", p)
    return Representation(alg, (d1, d2), {"a": rng.integers(0, p, (d2, d1)),
                                          "b": rng.integers(0, p, (d2, d1))})


def conjugate(x, rng):
    """x transported along random invertible vertex maps."""
    p = x.p
    gs = []
    for d in x.dims:
        while True:
            g = rng.integers(0, p, (d, d))
            if ffla.rank_mod(g, p) == d:
                break
        gs.append(g)
    vi = x.algebra.quiver.vertex_index
    maps = {a: (gs[vi[t]] @ x.maps[a] @ ffla.inv_mod(gs[vi[s]], p)) % p if d else x.maps[a]
            for a, s, t in x.algebra.arrows for d in [x.dims[vi[s]]]}
    return Representation(x.algebra, x.dims, maps)


# ---------- construction and check

def test_check_ok_on_simples_and_registrzigzag_module(chain_zero, dchain):
    for alg in (chain_zero, dchain):
        for v in alg.vertices:
            assert check(simple(alg, v))[0]
    assert check(registry.module_320())[0]


def test_check_names_violated_relation(chain_zero):
    x = Representation(chain_zero, (1, 1, 1), {"alpha": [[1]], "beta": [[1]]}, check=False)
    ok, rel = check(x)
    assert not ok
    assert rel.terms[0][1] == ("beta", "alpha")
    with pytest.raises(RepresentationError):
        Representation(chain_zero, (1, 1, 1), {"alpha": [[1]], "beta": [[1]]})


def test_shape_validation(k2):
    with pytest.raises(RepresentationError):
        Representation(k2, (1, 2), {"a": [[1, 0]]})
    with pytest.raises(RepresentationError):
        Representation(k2, (1,), {})


# ---------- direct sums

def test_direct_sum(k2, k2_mods):
    assert direct_sum([], algebra=k2).length == 0
    s = direct_sum([k2_mods["S1"], k2_mods["S2"]])
    assert s.dims == (1, 1) and not s.maps["a"].any() and not s.maps["b"].any()
    x, y = k2_mods["P1"], k2_mods["R11"]
    assert direct_sum([x, y]).length == x.length + y.length


# ---------- Hom

def test_hom_simples(k2_mods):
    assert hom_basis(k2_mods["S1"], k2_mods["S2"]) == []
    x = k2_mods["P1"]
    ids = hom_basis(x, x)
    flats = np.array([f.flat() for f in ids])
    assert ffla.contains(ffla.row_space(flats, flats.shape[1], 2), identity(x).flat(), 2)


@pytest.mark.parametrize("d1,d2", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_hom_dim_matches_brute_force(k2_mods, d1, d2):
    rng = np.random.default_rng(10 * d1 + d2)
    y = random_k2_module(rng, d1, d2)
    for name in ("S1", "S2", "P1", "R11", "I2"):
        x = k2_mods[name]
        assert 2 ** hom_dim(x, y) == oracle_hom_count(x, y)
        assert 2 ** hom_dim(y, x) == oracle_hom_count(y, x)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2 ** 31))
def test_yoneda_hom_from_projective(d1, d2, seed):
    rng = np.random.default_rng(seed)
    x = random_k2_module(rng, d1, d2)
    for v in ("1", "2"):
        assert hom_dim(projective(x.algebra, v), x) == x.dim(v)


def test_yoneda_on_doubled_chain(dchain):
    rng = np.random.default_rng(3)
    for _ in range(5):
        dims = rng.integers(0, 3, 3)
        maps = {a: rng.integers(0, 2, (dims["abc".index(t)], dims["abc".index(s)]))
                for a, s, t in dchain.arrows}
        x = Representation(dchain, dims, maps)
        for v in dchain.vertices:
            assert hom_dim(projective(dchain, v), x) == x.dim(v)


# ---------- kernels and submodules

def test_kernel_of(k2_mods):
    x = k2_mods["P1"]
    assert kernel_of(identity(x)).is_zero()
    assert kernel_of(zero_morphism(x, k2_mods["S2"])).is_whole()
    (f,) = hom_basis(k2_mods["S2"], k2_mods["P2"])
    assert kernel_of(f).is_zero()
    maps = hom_basis(k2_mods["S2"], x)
    assert len(maps) == 2 and all(kernel_of(g).is_zero() for g in maps)


def test_submodule_from_generators(k2_mods):
    x = k2_mods["P1"]
    assert submodule_from_generators(x, []).is_zero()
    units = [(v, np.eye(x.dim(v), dtype=np.int64)[i]) for v in ("1", "2") for i in range(x.dim(v))]
    assert submodule_from_generators(x, units).is_whole()
    assert submodule_from_generators(x, [("1", [1])]).is_whole()


def test_enumerate_submodules_small(k2, k2_mods):
    assert len(enumerate_submodules(k2_mods["S1"])) == 2
    ss = direct_sum([k2_mods["S2"], k2_mods["S2"]])
    assert len(enumerate_submodules(ss)) == 5
    assert len(enumerate_submodules(k2_mods["P1"])) == 6


@pytest.mark.parametrize("name", ["P1", "I2", "R10", "R11"])
def test_enumerate_submodules_vs_brute_force(k2_mods, name):
    x = k2_mods[name]
    y = direct_sum([x, k2_mods["S2"]])
    for z in (x, y):
        assert len(enumerate_submodules(z)) == oracle_submodule_count(z)


def test_submodules_arrow_stable_and_distinct(dchain):
    x = projective(dchain, "b")
    subs = enumerate_submodules(x)
    assert all(s.is_arrow_stable() for s in subs)
    assert len({s.key() for s in subs}) == len(subs) == oracle_submodule_count(x)


# ---------- cogeneration

def test_is_cogenerated_cases(k2_mods):
    for x in k2_mods.values():
        assert is_cogenerated(x, x)
    assert not is_cogenerated(k2_mods["S1"], k2_mods["S2"])
    assert is_cogenerated(k2_mods["S2"], k2_mods["P1"])


# ---------- isomorphism and decomposition

def test_iso_basic(k2_mods):
    for x in k2_mods.values():
        assert iso_test(x, x)
    assert not iso_test(k2_mods["S1"], k2_mods["S2"])
    assert not iso_test(k2_mods["R10"], k2_mods["R11"])


def test_iso_conjugate_pair_over_k3_quotient():
    rng = np.random.default_rng(7)
    a = (1, 1, 0)
    alg = registry.k3_quotient(a)
    x = Representation(alg, (2, 3), {"u": [[1, 0], [0, 1], [0, 0]], "v": [[0, 0], [1, 0], [0, 1]]})
    lifted = registry.lift_to_k3(x, a)
    other = conjugate(lifted, rng)
    assert not other.same_as(lifted)
    assert iso_test(lifted, other)
    comb = sum(c * lifted.maps[l] for c, l in zip(a, ("alpha", "beta", "gamma"))) % 2
    assert not comb.any()


def test_indecomposable_cases(k2_mods):
    for v in ("S1", "S2"):
        assert is_indecomposable(k2_mods[v])
    assert not is_indecomposable(direct_sum([k2_mods["S2"], k2_mods["S2"]]))
    assert is_indecomposable(registry.module_320())


def test_decompose_cases(k2_mods):
    x = k2_mods["P1"]
    assert len(decompose(x)) == 1 and iso_test(decompose(x)[0], x)
    parts = decompose(direct_sum([k2_mods["S1"], k2_mods["S2"]]))
    assert sorted(p.dims for p in parts) == [(0, 1), (1, 0)]
    parts = decompose(direct_sum([k2_mods["R11"], k2_mods["R11"]]))
    assert len(parts) == 2 and all(iso_test(p, k2_mods["R11"]) for p in parts)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from(["S1", "S2", "P1", "I2", "R10", "R01", "R11"]), min_size=1,
                max_size=3), st.integers(0, 2 ** 31))
def test_decompose_krull_schmidt(k2_mods, names, seed):
    rng = np.random.default_rng(seed)
    x = conjugate(direct_sum([k2_mods[n] for n in names]), rng)
    parts = decompose(x)
    assert len(parts) == len(names)
    assert iso_test(direct_sum(parts), x)
    left = [k2_mods[n] for n in names]
    for part in parts:
        k = next(i for i, y in enumerate(left) if iso_test(part, y))
        left.pop(k)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_iso_is_an_equivalence_on_conjugates(seed):
    rng = np.random.default_rng(seed)
    x = random_k2_module(rng, 2, 2)
    y = conjugate(x, rng)
    z = conjugate(y, rng)
    assert iso_test(x, y) and iso_test(y, x) and iso_test(x, z)
    assert canonical_key(x) == canonical_key(y) == canonical_key(z)


def test_iso_class_table(k2_mods):
    t = IsoClassTable(indecomposable=True)
    assert t.add(k2_mods["P1"]) == (0, True)
    assert t.add(k2_mods["P1"])[1] is False
    assert t.index(k2_mods["S1"]) is None


# ---------- composition factors

def test_jh_multiplicity(k2, k2_mods):
    for v in k2.vertices:
        s = simple(k2, v)
        assert [jh_multiplicity(s, w) for w in k2.vertices] == [int(v == w) for w in k2.vertices]
    assert jh_multiplicity(k2_mods["P1"], "2") == 2
    x, y = k2_mods["P1"], k2_mods["I2"]
    for v in k2.vertices:
        assert jh_multiplicity(direct_sum([x, y]), v) == jh_multiplicity(x, v) + jh_multiplicity(y, v)


# ---------- covering and restriction

def test_identity_push_down(dchain):
    x = projective(dchain, "c")
    y = push_down(CoveringSpec.identity(dchain.quiver), x, dchain)
    assert y.same_as(x)


def test_zigzag_modules(dchain):
    y1 = zigzag_module(1, dchain)
    assert y1.length == 7 and iso_test(y1, projective(dchain, "c"))
    assert zigzag_module(2, dchain).length == 12


def test_restriction_of_320(dchain):
    sub = dchain.full_subalgebra(["a", "b"])
    r = restrict(registry.module_320(), sub)
    assert r.dims == (3, 2) and is_indecomposable(r)
