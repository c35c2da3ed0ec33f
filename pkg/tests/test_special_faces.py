import itertools

import pytest

from upbook import fixtures
from upbook.books import is_embedding_preserving, verify_kube
from upbook.generators import exhaustive_small, random_planar_st, rhombus_grid
from upbook.graphs import Digraph, GraphError, classify_faces
from upbook.solver import solve_kube_brute
from upbook.special_faces import build_mixed_graph, orient_unilateral
from upbook.special_faces import test_2ube_special_faces as special_tester


def eligible(pg):
    fc = classify_faces(pg)
    return all(s != "other" for s in fc.shapes.values())


def test_mixed_graph_diamond():
    m = build_mixed_graph(fixtures.diamond())
    assert m.undirected == ((1, 2),)


def test_mixed_graph_t3_empty():
    m = build_mixed_graph(fixtures.transitive_triangle())
    assert m.undirected == ()


def test_mixed_graph_grid_counts():
    m = build_mixed_graph(rhombus_grid(2, 1))
    assert len(m.undirected) == 2


def test_mixed_graph_rejects_other_faces():
    from upbook.generators import long_right_path
    with pytest.raises(GraphError):
        build_mixed_graph(long_right_path(12, 1))


def test_orient_unilateral_diamond():
    m = build_mixed_graph(fixtures.diamond())
    got = orient_unilateral(m)
    assert got is not None and list(got) == [(1, 2)]


def test_orient_no_undirected_cases():
    # directed part already Hamiltonian
    m = build_mixed_graph(fixtures.transitive_triangle())
    assert orient_unilateral(m) == {}


def test_tester_examples():
    assert special_tester(fixtures.diamond()) is not None
    assert special_tester(fixtures.forbidden_configuration()) is None
    assert special_tester(rhombus_grid(2, 2)) is not None


def test_property2_all_orientations_acyclic():
    for pg in [fixtures.diamond(), rhombus_grid(2, 1), rhombus_grid(2, 2)] + [
            random_planar_st(12, s, profile="special") for s in range(6)]:
        m = build_mixed_graph(pg)
        und = m.undirected
        if len(und) > 12:
            continue
        for bits in itertools.product((0, 1), repeat=len(und)):
            edges = list(pg.g.edges)
            for (a, b), bit in zip(und, bits):
                edges.append((a, b) if bit else (b, a))
            assert Digraph(pg.n, edges).is_acyclic()


def test_agreement_with_fixed_oracle_exhaustive_6():
    checked = 0
    for pg in exhaustive_small(6):
        if not eligible(pg):
            continue
        got = special_tester(pg)
        oracle = solve_kube_brute(pg.g, 2, mode="fixed", embedding=pg)
        assert (got is not None) == (oracle is not None), pg.g.edges
        if got is not None:
            assert verify_kube(pg.g, got).ok
            assert is_embedding_preserving(pg, got)
        checked += 1
    assert checked > 100


def test_agreement_random_eligible():
    for seed in range(40):
        pg = random_planar_st(14, seed, profile="special")
        got = special_tester(pg)
        oracle = solve_kube_brute(pg.g, 2, mode="fixed", embedding=pg)
        assert (got is not None) == (oracle is not None), (seed, pg.g.edges)
