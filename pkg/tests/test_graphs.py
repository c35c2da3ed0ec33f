import pytest

from upbook import fixtures
from upbook.graphs import (
    Digraph,
    GraphError,
    PlaneStGraph,
    classify_faces,
    compute_faces,
    dart,
    dual_graph,
    validate_plane_st_graph,
)


def test_digraph_rejects_self_loop_and_duplicates():
    with pytest.raises(GraphError):
        Digraph(2, [(0, 0)])
    with pytest.raises(GraphError):
        Digraph(2, [(0, 1), (0, 1)])


def test_k2_is_valid_and_has_one_face():
    pg = fixtures.k2()
    assert validate_plane_st_graph(pg) == []
    faces = compute_faces(pg)
    assert len(faces) == 1
    f = faces[0]
    assert f.is_outer
    assert f.left_path == (0, 1)
    assert f.right_path == (0, 1)


def test_diamond_valid_and_face_paths():
    pg = fixtures.diamond()
    assert validate_plane_st_graph(pg) == []
    internal = [f for f in pg.faces if not f.is_outer]
    assert len(internal) == 1
    f = internal[0]
    assert f.left_path == (0, 1, 3)   # s-a-t
    assert f.right_path == (0, 2, 3)  # s-b-t
    assert f.source == 0 and f.sink == 3
    outer = pg.outer_face
    assert outer.left_path == (0, 1, 3)
    assert outer.right_path == (0, 2, 3)


def test_two_sinks_reported():
    g = Digraph(3, [(0, 1), (0, 2)])
    pg = PlaneStGraph(g, 0, 2, [[0, 1], [0], [1]], dart(0, True))
    report = validate_plane_st_graph(pg)
    assert any("2 sinks" in line for line in report)


def test_transitive_triangle_faces():
    pg = fixtures.transitive_triangle()
    assert validate_plane_st_graph(pg) == []
    internal = [f for f in pg.faces if not f.is_outer]
    assert len(internal) == 1
    f = internal[0]
    assert f.left_path == (0, 1, 2)
    assert f.right_path == (0, 2)


def test_dual_graph_t3():
    pg = fixtures.transitive_triangle()
    d = dual_graph(pg)
    fid = [f.id for f in pg.internal_faces][0]
    # s*->f twice (left-boundary edges (s,a),(a,t)), f->t* once
    assert sorted(d.edges) == sorted([(d.s_star, fid), (d.s_star, fid), (fid, d.t_star)])
    order = d.topological_order()
    assert order[0] == d.s_star and order[-1] == d.t_star


def test_dual_graph_diamond_and_k2():
    pg = fixtures.diamond()
    d = dual_graph(pg)
    fid = [f.id for f in pg.internal_faces][0]
    assert sorted(d.edges) == sorted(
        [(d.s_star, fid), (d.s_star, fid), (fid, d.t_star), (fid, d.t_star)])
    d2 = dual_graph(fixtures.k2())
    assert d2.edges == ((d2.s_star, d2.t_star),)


def test_classify_faces():
    assert set(classify_faces(fixtures.diamond()).shapes.values()) == {"rhombus"}
    assert not classify_faces(fixtures.diamond()).has_forbidden_configuration

    fc = classify_faces(fixtures.transitive_triangle())
    assert set(fc.shapes.values()) == {"generalized_triangle"}
    assert not fc.has_forbidden_configuration

    fc2 = classify_faces(fixtures.forbidden_configuration())
    assert fc2.has_forbidden_configuration
    assert len(fc2.forbidden_edges) == 1


def test_rhombus_and_triangle_classes_disjoint_by_construction():
    for fix in (fixtures.diamond(), fixtures.transitive_triangle(),
                fixtures.forbidden_configuration()):
        fc = classify_faces(fix)
        for fid, shape in fc.shapes.items():
            face = fix.faces[fid]
            if shape == "rhombus":
                assert face.left_edge_count == 2 and face.right_edge_count == 2
            if shape == "generalized_triangle":
                assert 1 in (face.left_edge_count, face.right_edge_count)


def test_reversed_maps_valid_to_valid():
    for fix in (fixtures.diamond(), fixtures.transitive_triangle(),
                fixtures.forbidden_configuration(), fixtures.path(4)):
        rev = fix.reversed()
        assert validate_plane_st_graph(rev) == []
        # left/right paths of the outer face swap and reverse
        assert rev.outer_face.left_path == tuple(reversed(fix.outer_face.right_path))


def test_mirrored_is_valid_and_involutive():
    pg = fixtures.transitive_triangle()
    mir = pg.mirrored()
    assert validate_plane_st_graph(mir) == []
    internal = [f for f in mir.faces if not f.is_outer][0]
    assert internal.left_path == (0, 2)      # transitive edge now leftmost
    back = mir.mirrored()
    assert back.rotation == pg.rotation and back.outer_dart == pg.outer_dart


def test_lr_orders_diamond():
    pg = fixtures.diamond()
    assert pg.out_edges_lr(0) == (0, 1)     # (s,a) left of (s,b)
    assert pg.in_edges_lr(3) == (2, 3)      # (a,t) left of (b,t)
