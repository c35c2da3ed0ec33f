"""Small named graphs used across tests and documentation examples."""

from __future__ import annotations

from .graphs import Digraph, PlaneStGraph, dart


def k2() -> PlaneStGraph:
    g = Digraph(2, [(0, 1)])
    return PlaneStGraph(g, 0, 1, [[0], [0]], dart(0, True))


def diamond() -> PlaneStGraph:
    """s->a, s->b, a->t, b->t with a on the left. Vertices s,a,b,t = 0..3."""
    g = Digraph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    rotation = [
        [1, 0],        # s: clockwise (s,b) then (s,a)
        [2, 0],        # a: (a,t) then (s,a)
        [1, 3],        # b: (s,b) then (b,t)
        [3, 2],        # t: (b,t) then (a,t)
    ]
    # outer face lies right of the right boundary edge (s,b)
    return PlaneStGraph(g, 0, 3, rotation, dart(1, False))


def transitive_triangle() -> PlaneStGraph:
    """s->a->t plus transitive edge (s,t) drawn rightmost. Vertices s,a,t."""
    g = Digraph(3, [(0, 1), (1, 2), (0, 2)])
    rotation = [
        [2, 0],      # s: (s,t) then (s,a)
        [1, 0],      # a
        [2, 1],      # t: (s,t) then (a,t)
    ]
    return PlaneStGraph(g, 0, 2, rotation, dart(2, False))


def transitive_triangle_left() -> PlaneStGraph:
    """Mirror image: the transitive edge is leftmost."""
    return transitive_triangle().mirrored()


def path(n: int) -> PlaneStGraph:
    """Directed path 0 -> 1 -> ... -> n-1."""
    g = Digraph(n, [(i, i + 1) for i in range(n - 1)])
    rotation = [[0]] + [[i - 1, i] for i in range(1, n - 1)] + [[n - 2]]
    return PlaneStGraph(g, 0, n - 1, rotation, dart(0, True))


def forbidden_configuration() -> PlaneStGraph:
    """Two generalized triangles sharing the transitive edge (u,v).

    u->a->v, u->v, u->b->v with the transitive edge drawn between the two
    paths; the smallest plane st-graph with no embedding-preserving 2UBE.
    """
    # vertices u=0, a=1, b=2, v=3
    g = Digraph(4, [(0, 1), (1, 3), (0, 3), (0, 2), (2, 3)])
    rotation = [
        [0, 2, 3],      # u: (u,a), (u,v), (u,b) clockwise
        [1, 0],         # a
        [3, 4],         # b
        [4, 2, 1],      # v: (b,v), (u,v), (a,v)
    ]
    return PlaneStGraph(g, 0, 3, rotation, dart(3, False))
