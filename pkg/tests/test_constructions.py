import pytest

from upbook import fixtures
from upbook.books import hp_completion_to_2ube, is_embedding_preserving, verify_kube
from upbook.constructions import hp_complete_long_right, hp_complete_rhombi
from upbook.generators import long_right_path, random_planar_st, rhombus_grid
from upbook.graphs import GraphError, validate_plane_st_graph
from upbook.solver import solve_kube_brute


def check_completion(pg, comp):
    assert validate_plane_st_graph(comp.gbar) == []
    be = hp_completion_to_2ube(pg.g, comp)
    assert verify_kube(pg.g, be).ok
    assert is_embedding_preserving(pg, be)
    return be


def test_rhombi_diamond():
    pg = fixtures.diamond()
    comp = hp_complete_rhombi(pg)
    assert len(comp.dummy_edges) == 1
    u, v = comp.gbar.g.edges[comp.dummy_edges[0]]
    assert {u, v} == {1, 2}
    check_completion(pg, comp)


def test_rhombi_grids():
    for w, h in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2)]:
        pg = rhombus_grid(w, h)
        comp = hp_complete_rhombi(pg)
        assert len(comp.dummy_edges) == len(pg.internal_faces)
        check_completion(pg, comp)


def test_rhombi_deterministic():
    a = hp_complete_rhombi(rhombus_grid(1, 1))
    b = hp_complete_rhombi(rhombus_grid(1, 1))
    assert a.gbar.g.edges == b.gbar.g.edges and a.path == b.path


def test_rhombi_rejects_non_rhombus():
    with pytest.raises(GraphError):
        hp_complete_rhombi(fixtures.transitive_triangle())


def test_long_right_single_face():
    # one internal face: left path 2 edges, right path 3 edges
    from upbook.generators import _Builder
    b = _Builder.from_path(3)
    b.add_face(0, 2, 3)
    pg = b.finish()
    assert validate_plane_st_graph(pg) == []
    comp = hp_complete_long_right(pg)
    check_completion(pg, comp)
    # Case 1 applies: two dummy edges unless degenerate
    assert len(comp.dummy_edges) <= 2


def test_long_right_random():
    for seed in range(10):
        pg = long_right_path(30, seed)
        comp = hp_complete_long_right(pg)
        check_completion(pg, comp)


def test_long_right_rejects_bad_face():
    with pytest.raises(GraphError):
        hp_complete_long_right(fixtures.diamond())


def test_constructions_agree_with_fixed_oracle_small():
    # whenever the construction succeeds, the fixed-mode solver also finds one
    for seed in range(8):
        pg = random_planar_st(11, seed, profile="rhombi")
        comp = hp_complete_rhombi(pg)
        be = check_completion(pg, comp)
        oracle = solve_kube_brute(pg.g, 2, mode="fixed", embedding=pg)
        assert oracle is not None
