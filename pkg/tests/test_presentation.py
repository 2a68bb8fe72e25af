import pytest

from grquiver import registry
from grquiver.presentation import (AlgebraPresentation, NonAdmissibleError, Quiver, Relation,
                                   injective, projective, simple, validate, zero_relation)


def count_paths(quiver):
    """Paths of every length, including trivial ones, by depth-first walk (acyclic quivers)."""
    def walk(v):
        return 1 + sum(walk(t) for _, s, t in quiver.arrows if s == v)
    return sum(walk(v) for v in quiver.vertices)


@pytest.mark.parametrize("name,total", [("k2", 4), ("doubled-chain", 11), ("k3", 5),
                                        ("d4-subspace", 9)])
def test_hereditary_total_dimension(name, total):
    alg = registry.algebra(name)
    assert validate(alg)["total_dimension"] == total == count_paths(alg.quiver)


def test_zero_relation_drops_one_path():
    alg = registry.algebra("chain-zero")
    assert validate(alg)["total_dimension"] == count_paths(alg.quiver) - 1


def test_loop_without_relation_rejected():
    q = Quiver(("x",), (("l", "x", "x"),))
    with pytest.raises(NonAdmissibleError):
        AlgebraPresentation(q, (), 2)


def test_loop_with_square_zero_accepted():
    q = Quiver(("x",), (("l", "x", "x"),))
    alg = AlgebraPresentation(q, (zero_relation(q, "l", "l"),), 2)
    assert alg.total_dimension() == 2


def test_relation_must_lie_in_square_of_arrow_ideal():
    q = Quiver(("1", "2"), (("a", "1", "2"), ("b", "1", "2")))
    with pytest.raises(ValueError):
        AlgebraPresentation(q, (Relation("1", "2", ((1, ("a",)), (1, ("b",)))),), 2)


def test_labels_unique_and_endpoints_declared():
    with pytest.raises(ValueError):
        Quiver(("1", "1"), ())
    with pytest.raises(ValueError):
        Quiver(("1", "2"), (("a", "1", "2"), ("a", "2", "1")))
    with pytest.raises(ValueError):
        Quiver(("1",), (("a", "1", "9"),))


def test_projectives(k2, dchain):
    assert projective(k2, "2").dims == (0, 1)
    assert projective(k2, "1").dims == (1, 2)
    assert projective(k2, "1").length == 3
    pc = projective(dchain, "c")
    assert pc.dims == (4, 2, 1) and pc.length == 7


def test_injectives(k2, dchain):
    assert injective(k2, "1").dims == (1, 0)
    assert injective(k2, "2").dims == (2, 1)
    # a sink: the injective at it is one-dimensional there
    assert injective(dchain, "a").dim("a") == 1


def test_simples(k2, dchain, chain_zero):
    for alg in (k2, dchain, chain_zero):
        for v in alg.vertices:
            assert simple(alg, v).length == 1
    assert simple(k2, "1").dims == (1, 0)
    assert simple(dchain, "b").dims == (0, 1, 0)


def test_projective_total_matches_algebra_dimension(chain_zero, dchain):
    for alg in (chain_zero, dchain):
        assert sum(projective(alg, v).length for v in alg.vertices) == alg.total_dimension()
        assert sum(injective(alg, v).length for v in alg.vertices) == alg.total_dimension()
