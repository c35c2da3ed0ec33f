"""Embedding-preserving 2-page testing for plane st-graphs whose internal
faces are generalized triangles or rhombi.

One undirected edge is added between the two non-pole vertices of each
rhombus face; the graph admits an embedding-preserving 2-page embedding
iff these edges can be oriented so the resulting DAG has a directed
Hamiltonian st-path.  The orientation search builds the spine greedily and
orients an undirected edge the first time it commits a relative order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .books import BookEmbedding, HPCompletion, hp_completion_to_2ube
from .graphs import (
    Digraph,
    GraphError,
    PlaneStGraph,
    classify_faces,
    dart,
    validate_plane_st_graph,
)


@dataclass(frozen=True)
class MixedGraph:
    base: PlaneStGraph
    undirected: tuple[tuple[int, int], ...]    # (left-mid, right-mid) per rhombus
    rhombus_faces: tuple[int, ...]             # face id per undirected edge


def build_mixed_graph(pg: PlaneStGraph) -> MixedGraph:
    fc = classify_faces(pg)
    if any(s == "other" for s in fc.shapes.values()):
        raise GraphError("graph has a face that is neither a generalized "
                         "triangle nor a rhombus")
    und = []
    fids = []
    seen = set()
    for f in pg.internal_faces:
        if fc.shapes[f.id] != "rhombus":
            continue
        a, b = f.left_path[1], f.right_path[1]
        if pg.g.has_edge(a, b) or pg.g.has_edge(b, a) or frozenset((a, b)) in seen:
            raise GraphError(f"rhombus midpoints {a},{b} already joined")
        seen.add(frozenset((a, b)))
        und.append((a, b))
        fids.append(f.id)
    return MixedGraph(base=pg, undirected=tuple(und), rhombus_faces=tuple(fids))


def orient_unilateral(mixed: MixedGraph) -> Optional[dict[tuple[int, int], bool]]:
    """Orientation of the undirected edges whose DAG has a Hamiltonian st-path.

    Returns {(a, b): True if oriented a->b} or None.  Deterministic: the
    spine is extended by the smallest eligible vertex.
    """
    g = mixed.base.g
    n = g.n
    und_at: dict[int, list[int]] = {}
    for i, (a, b) in enumerate(mixed.undirected):
        und_at.setdefault(a, []).append(i)
        und_at.setdefault(b, []).append(i)
    indeg = [len(g.in_edges[v]) for v in range(n)]
    placed = [False] * n
    seq: list[int] = []

    def candidates(last: Optional[int]) -> list[int]:
        out = []
        for v in range(n):
            if placed[v] or indeg[v] > 0:
                continue
            if last is None:
                out.append(v)
                continue
            if g.has_edge(last, v):
                out.append(v)
            else:
                for i in und_at.get(v, ()):
                    a, b = mixed.undirected[i]
                    if a == last or b == last:
                        out.append(v)
                        break
        return out

    def rec() -> bool:
        if len(seq) == n:
            return True
        last = seq[-1] if seq else None
        for v in candidates(last):
            placed[v] = True
            seq.append(v)
            for e in g.out_edges[v]:
                indeg[g.edges[e][1]] -= 1
            if rec():
                return True
            for e in g.out_edges[v]:
                indeg[g.edges[e][1]] += 1
            seq.pop()
            placed[v] = False
        return False

    if not rec():
        return None
    pos = {v: i for i, v in enumerate(seq)}
    return {(a, b): pos[a] < pos[b] for (a, b) in mixed.undirected}


def _insert_rhombus_edge(comp_edges, outs, ins, pg, face, a_to_b: bool):
    """Embed the oriented rhombus edge inside its face."""
    f = face
    a, b = f.left_path[1], f.right_path[1]
    if a_to_b:
        u, v = a, b
        # tail on the left path: just right of (a, t_f); head on the right
        # path: just left of (s_f, b)
        e = len(comp_edges)
        comp_edges.append((u, v))
        i = outs[u].index(pg.g.edge_index(a, f.sink))
        outs[u].insert(i + 1, e)
        j = ins[v].index(pg.g.edge_index(f.source, b))
        ins[v].insert(j, e)
    else:
        u, v = b, a
        e = len(comp_edges)
        comp_edges.append((u, v))
        i = outs[u].index(pg.g.edge_index(b, f.sink))
        outs[u].insert(i, e)
        j = ins[v].index(pg.g.edge_index(f.source, a))
        ins[v].insert(j + 1, e)
    return e


def test_2ube_special_faces(pg: PlaneStGraph) -> Optional[BookEmbedding]:
    """Embedding-preserving 2UBE of an eligible graph, or None."""
    report = validate_plane_st_graph(pg)
    if report:
        raise GraphError("; ".join(report))
    mixed = build_mixed_graph(pg)
    orientation = orient_unilateral(mixed)
    if orientation is None:
        return None
    # build the HP-completion: add each oriented edge inside its rhombus
    edges = list(pg.g.edges)
    outs = [list(pg.out_edges_lr(v)) for v in range(pg.n)]
    ins = [list(pg.in_edges_lr(v)) for v in range(pg.n)]
    dummies = []
    for (a, b), fid in zip(mixed.undirected, mixed.rhombus_faces):
        e = _insert_rhombus_edge(edges, outs, ins, pg, pg.faces[fid],
                                 orientation[(a, b)])
        dummies.append(e)
    g2 = Digraph(pg.n, edges)
    rotation = [outs[v] + list(reversed(ins[v])) for v in range(pg.n)]
    gbar = PlaneStGraph(g2, pg.s, pg.t, rotation, dart(outs[pg.s][-1], False))
    rep = validate_plane_st_graph(gbar)
    if rep:
        raise GraphError("oriented completion invalid: " + "; ".join(rep))
    order = g2.topological_order()
    if order is None:
        raise GraphError("oriented completion has a cycle")
    # every consecutive pair must be adjacent (Hamiltonian by unilaterality)
    for u, v in zip(order, order[1:]):
        if not g2.has_edge(u, v):
            raise GraphError("topological order is not a Hamiltonian path")
    comp = HPCompletion(gbar=gbar, path=tuple(order), dummy_edges=tuple(dummies))
    be = hp_completion_to_2ube(pg.g, comp)
    from .books import is_embedding_preserving, verify_kube
    if not verify_kube(pg.g, be).ok or not is_embedding_preserving(pg, be):
        raise GraphError("tester produced an invalid witness")
    return be
