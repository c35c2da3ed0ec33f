import pytest

from upbook import fixtures
from upbook.books import (
    LEFT,
    RIGHT,
    BookEmbedding,
    edges_conflict,
    embedding_equals,
    hp_completion_to_2ube,
    induced_embedding,
    is_embedding_preserving,
    match_pages,
    two_ube_to_hp_completion,
    verify_kube,
)
from upbook.graphs import GraphError


def diamond_2ube():
    # pi = s,a,b,t; left page: (s,a),(a,t); right: (s,b),(b,t)
    return BookEmbedding(2, (0, 1, 2, 3), (LEFT, RIGHT, LEFT, RIGHT))


def test_edges_conflict_examples():
    pos = {0: 1, 1: 2, 2: 3, 3: 4}      # s,a,b,t
    assert edges_conflict(pos, (1, 3), (0, 2))       # (a,t) vs (s,b)
    assert not edges_conflict(pos, (0, 1), (0, 2))   # shared endpoint
    assert not edges_conflict(pos, (0, 3), (1, 2))   # nested


def test_verify_k2():
    pg = fixtures.k2()
    be = BookEmbedding(1, (0, 1), (1,))
    assert verify_kube(pg.g, be).ok


def test_verify_diamond_valid_and_invalid():
    pg = fixtures.diamond()
    assert verify_kube(pg.g, diamond_2ube()).ok
    bad = BookEmbedding(2, (0, 1, 2, 3), (LEFT, LEFT, LEFT, LEFT))
    rep = verify_kube(pg.g, bad)
    assert not rep.ok
    assert "conflict" in rep.problems[0]
    not_topo = BookEmbedding(2, (0, 3, 1, 2), (LEFT, RIGHT, LEFT, RIGHT))
    assert not verify_kube(pg.g, not_topo).ok


def test_induced_embedding_diamond():
    pg = fixtures.diamond()
    be = diamond_2ube()
    ind = induced_embedding(pg.g, be)
    assert embedding_equals(ind, pg)
    assert is_embedding_preserving(pg, be)
    # swap a and b in the order and swap all pages: the mirror image
    swapped = BookEmbedding(2, (0, 2, 1, 3), (RIGHT, LEFT, RIGHT, LEFT))
    assert verify_kube(pg.g, swapped).ok
    assert not is_embedding_preserving(pg, swapped)
    assert is_embedding_preserving(pg.mirrored(), swapped)


def test_induced_embedding_k2_both_pages():
    pg = fixtures.k2()
    for page in (LEFT, RIGHT):
        be = BookEmbedding(2, (0, 1), (page,))
        assert is_embedding_preserving(pg, be)


def test_induced_rejects_invalid():
    pg = fixtures.diamond()
    bad = BookEmbedding(2, (0, 1, 2, 3), (LEFT, LEFT, LEFT, LEFT))
    with pytest.raises(GraphError):
        induced_embedding(pg.g, bad)


def test_path_types_both_left_is_right_open():
    # path s->a->t with both edges left: right side of the spine fully open
    pg = fixtures.path(3)
    be = BookEmbedding(2, (0, 1, 2), (LEFT, LEFT))
    ind = induced_embedding(pg.g, be)
    # a path has a unique embedding, so this must equal the fixture
    assert embedding_equals(ind, pg)


def test_match_pages_diamond():
    pg = fixtures.diamond()
    be = match_pages(pg, (0, 1, 2, 3))
    assert be is not None
    # (b,t) hugs the spine, so both pages preserve the embedding; the
    # canonical result is the lexicographically least assignment
    assert be.pages == (LEFT, RIGHT, LEFT, LEFT)
    assert is_embedding_preserving(pg, be)
    # the mirrored embedding is also matchable (pages rearrange)
    mir = match_pages(pg.mirrored(), (0, 1, 2, 3))
    assert mir is not None and is_embedding_preserving(pg.mirrored(), mir)


def test_match_pages_forbidden_configuration_has_none():
    fc = fixtures.forbidden_configuration()
    assert match_pages(fc, (0, 1, 2, 3)) is None
    assert match_pages(fc, (0, 2, 1, 3)) is None


def test_match_pages_k2_prefers_left():
    pg = fixtures.k2()
    be = match_pages(pg, (0, 1))
    assert be is not None and be.pages == (LEFT,)


def test_hp_completion_diamond_round_trip():
    pg = fixtures.diamond()
    be = match_pages(pg, (0, 1, 2, 3))   # canonical embedding-preserving witness
    comp = two_ube_to_hp_completion(pg, be)
    assert comp.path == (0, 1, 2, 3)
    assert len(comp.dummy_edges) == 1
    u, v = comp.gbar.g.edges[comp.dummy_edges[0]]
    assert (u, v) == (1, 2)             # the (a,b) spine edge
    from upbook.graphs import validate_plane_st_graph
    assert validate_plane_st_graph(comp.gbar) == []
    back = hp_completion_to_2ube(pg.g, comp)
    assert back.order == be.order and back.pages == be.pages


def test_hp_completion_k2_identity():
    pg = fixtures.k2()
    be = BookEmbedding(2, (0, 1), (LEFT,))
    comp = two_ube_to_hp_completion(pg, be)
    assert comp.dummy_edges == ()
    back = hp_completion_to_2ube(pg.g, comp)
    assert back.order == be.order and back.pages == be.pages


def test_hp_completion_rejects_bad_path():
    pg = fixtures.diamond()
    comp = two_ube_to_hp_completion(pg, diamond_2ube())
    bad = type(comp)(gbar=comp.gbar, path=(0, 2, 1, 3), dummy_edges=comp.dummy_edges)
    with pytest.raises(GraphError):
        hp_completion_to_2ube(pg.g, bad)
