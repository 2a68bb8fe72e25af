import json

import numpy as np
import pytest

from grquiver import registry
from grquiver.errors import CapExceeded
from grquiver.explorer import (EmbeddingStalled, SubcatSnapshot, check_gr_bound,
                               cogeneration_closure, embed_avoiding, enumerate_indecomposables,
                               find_high_multiplicity_indec, is_submodule_closed, make_snapshot,
                               preprojectives, raw_enumerate, snapshot_to_json, snapshot_to_tsv,
                               take_off_sequence)
from grquiver.grmeasure import GRMeasure
from grquiver.presentation import injective, simple
from grquiver.repcore import (direct_sum, image_of, is_cogenerated, is_indecomposable, iso_test,
                              submodule_from_generators)
from grquiver.repcore.hom import hom_basis


@pytest.fixture(scope="module")
def k2_l5(k2):
    return enumerate_indecomposables(k2, 5)


def all_maps(x, y):
    basis = hom_basis(x, y)
    out = []
    for coeffs in np.ndindex(*([x.p] * len(basis))):
        f = None
        for c, g in zip(coeffs, basis):
            term = g.scale(c)
            f = term if f is None else f + term
        if f is not None:
            out.append(f)
    return out


def test_small_enumerations(k2):
    assert len(enumerate_indecomposables(k2, 0)) == 0
    snap = enumerate_indecomposables(k2, 1)
    assert sorted(x.dims for x in snap.members) == [(0, 1), (1, 0)]
    snap = enumerate_indecomposables(k2, 3)
    assert len(snap) == 7
    assert sorted(x.dims for x in snap.members) == sorted(
        [(1, 0), (0, 1), (1, 1), (1, 1), (1, 1), (1, 2), (2, 1)])


def test_snapshot_invariants(k2_l5, chain_zero):
    for snap in (k2_l5, enumerate_indecomposables(chain_zero, 4, length_cap=4)):
        ms = snap.members
        assert all(is_indecomposable(x) and x.length <= snap.max_len for x in ms)
        assert not any(iso_test(a, b) for i, a in enumerate(ms) for b in ms[i + 1:])
        assert list(snap.measures) == sorted(snap.measures)


@pytest.mark.parametrize("alg_name,n", [("k2", 4), ("chain-zero", 3), ("doubled-chain", 3)])
def test_extension_method_matches_raw_oracle(alg_name, n):
    alg = registry.algebra(alg_name)
    snap = enumerate_indecomposables(alg, n, length_cap=n, cross_check=False)
    for k in range(1, n + 1):
        raw = raw_enumerate(alg, k)
        mine = snap.of_length(k)
        assert len(raw) == len(mine)
        assert all(any(iso_test(r, m) for m in mine) for r in raw)


@pytest.mark.slow
def test_extension_method_matches_raw_oracle_length5(k2, k2_l5):
    assert len(raw_enumerate(k2, 5)) == len(k2_l5.of_length(5))


def test_length_cap(k2):
    with pytest.raises(CapExceeded):
        enumerate_indecomposables(k2, 13)


def test_take_off(k2_l5):
    rep = take_off_sequence(k2_l5, 3)
    assert rep.measures == (GRMeasure((1,)), GRMeasure((1, 3)), GRMeasure((1, 3, 5)))
    assert rep.certified[0]
    assert [len(c) for c in rep.classes] == [2, 1, 1]


def test_take_off_first_is_one(chain_zero, dchain):
    for alg in (chain_zero, dchain):
        snap = enumerate_indecomposables(alg, 3, length_cap=3)
        assert take_off_sequence(snap, 1).measures == (GRMeasure((1,)),)


def test_closures(k2, k2_l5, k2_mods):
    base = k2_l5.restricted(4)
    inj = cogeneration_closure(k2, [injective(k2, v) for v in k2.vertices], 4, base=base)
    assert len(inj) == len(base)
    c = cogeneration_closure(k2, [k2_mods["P1"]], 3, base=k2_l5)
    assert sorted(x.dims for x in c.members) == [(0, 1), (1, 2)]
    c = cogeneration_closure(k2, [k2_mods["S1"]], 5, base=k2_l5)
    assert [x.dims for x in c.members] == [(1, 0)]
    assert is_submodule_closed(c) == (True, None)


def test_submodule_closed_counterexample(k2, k2_mods):
    snap = make_snapshot(k2, 3, [k2_mods["P1"]])
    ok, (member, summand) = is_submodule_closed(snap)
    assert not ok and iso_test(summand, k2_mods["S2"])
    assert is_submodule_closed(SubcatSnapshot(k2, 3, (), ())) == (True, None)


def test_vanishing_closure_is_closed(chain_zero):
    for _, snap in registry.vanishing_closures([3, 4]):
        assert is_submodule_closed(snap)[0]


def test_embed_avoiding_socle_line(k2_mods):
    x, p1 = k2_mods["S2"], k2_mods["P1"]
    m = direct_sum([p1, p1])
    m0 = submodule_from_generators(m, [("2", [1, 0, 0, 0])])
    u = embed_avoiding(x, m, m0)
    assert u.is_injective() and (image_of(u) & m0).is_zero()
    # oracle: some mono avoiding m0 exists among all maps
    assert any(f.is_injective() and (image_of(f) & m0).is_zero() for f in all_maps(x, m))


def test_embed_avoiding_trivial_and_rejection(k2_mods):
    for name in ("S2", "P1", "R11"):
        x = k2_mods[name]
        m = direct_sum([k2_mods["P1"], k2_mods["R11"], k2_mods["I2"]])
        sub0 = submodule_from_generators(m, [])
        assert is_cogenerated(x, m)
        assert embed_avoiding(x, m, sub0).is_injective()
    with pytest.raises(EmbeddingStalled):
        embed_avoiding(k2_mods["S1"], k2_mods["S2"], submodule_from_generators(k2_mods["S2"], []))


def test_find_high_multiplicity(k2):
    pre = preprojectives(k2, 5)
    snap = cogeneration_closure(k2, pre, 5)
    assert find_high_multiplicity_indec(snap, 2).dims == (2, 3)
    assert find_high_multiplicity_indec(snap, 0) in snap.members
    assert find_high_multiplicity_indec(snap, 100) is None


def test_gr_bound(k2, k2_l5, k2_mods):
    assert check_gr_bound(k2_l5, 3, 3) == (True, None)
    simples = make_snapshot(k2, 1, [simple(k2, v) for v in k2.vertices])
    assert check_gr_bound(simples) == (True, None)
    stub = lambda y: submodule_from_generators(y, [])
    ok, y = check_gr_bound(k2_l5, 3, 3, gr_sub=stub)
    assert not ok and y.length >= 2


def test_exports(k2_l5):
    doc = json.loads(snapshot_to_json(k2_l5))
    assert doc["schema"] == "grquiver.snapshot/1" and len(doc["members"]) == len(k2_l5)
    lines = snapshot_to_tsv(k2_l5).splitlines()
    assert lines[0] == "length\tcount\tmeasures"
    assert [int(l.split("\t")[1]) for l in lines[1:]] == [2, 3, 2, 4, 2]
