"""Constructive embedding-preserving HP-completions for two face-shape
families: faces with long right paths, and all-rhombus graphs.

Faces are attached left to right following a topological order of the dual
graph.  The construction maintains the invariant that of any two
consecutive edges along the current right boundary at least one lies on
the Hamiltonian path, and extends the path by bypassing one such edge
through the new face's right path, inserting dummy edges inside the face.
"""

from __future__ import annotations

from .books import HPCompletion
from .graphs import (
    Digraph,
    GraphError,
    PlaneStGraph,
    dart,
    dual_graph,
    validate_plane_st_graph,
)


class _Completion:
    def __init__(self, pg: PlaneStGraph):
        self.pg = pg
        g = pg.g
        self.edges: list[tuple[int, int]] = list(g.edges)
        self.outs = [list(pg.out_edges_lr(v)) for v in range(g.n)]
        self.ins = [list(pg.in_edges_lr(v)) for v in range(g.n)]
        self.dummies: list[int] = []
        outer = pg.outer_face
        self.boundary: list[int] = list(outer.left_path)
        self.succ: dict[int, int] = {}
        self.path_edges: set[tuple[int, int]] = set()
        for u, v in zip(outer.left_path, outer.left_path[1:]):
            self.succ[u] = v
            self.path_edges.add((u, v))
        self.invariant_checks = 0

    def bypass(self, a: int, b: int, via: list[int]) -> None:
        """Replace path edge (a,b) by the path a, via..., b."""
        assert (a, b) in self.path_edges
        self.path_edges.discard((a, b))
        prev = a
        for x in via:
            self.path_edges.add((prev, x))
            self.succ[prev] = x
            prev = x
        self.path_edges.add((prev, b))
        self.succ[prev] = b

    def connect(self, u: int, v: int, tail_side: str, tail_anchor: int,
                head_side: str, head_anchor: int) -> None:
        """Dummy edge (u,v) inside a face, or a no-op if g already has it."""
        if self.pg.g.has_edge(u, v):
            return
        e = len(self.edges)
        self.edges.append((u, v))
        self.dummies.append(e)
        i = self.outs[u].index(tail_anchor)
        self.outs[u].insert(i + 1 if tail_side == "after" else i, e)
        j = self.ins[v].index(head_anchor)
        self.ins[v].insert(j + 1 if head_side == "after" else j, e)

    def check_invariant(self) -> None:
        """Of any two consecutive right-boundary edges, one is on the path."""
        self.invariant_checks += 1
        bd = self.boundary
        for i in range(len(bd) - 2):
            if ((bd[i], bd[i + 1]) not in self.path_edges
                    and (bd[i + 1], bd[i + 2]) not in self.path_edges):
                raise GraphError(
                    f"right-boundary invariant violated at {bd[i + 1]}")

    def splice_boundary(self, face) -> None:
        i = self.boundary.index(face.source)
        j = i + len(face.left_path) - 1
        if self.boundary[i:j + 1] != list(face.left_path):
            raise GraphError(
                "face left path is not on the current right boundary")
        self.boundary[i + 1:j] = list(face.right_path[1:-1])

    def finish(self) -> HPCompletion:
        g = Digraph(self.pg.n, self.edges)
        rotation = [self.outs[v] + list(reversed(self.ins[v]))
                    for v in range(self.pg.n)]
        outer = dart(self.outs[self.pg.s][-1], False)
        gbar = PlaneStGraph(g, self.pg.s, self.pg.t, rotation, outer)
        report = validate_plane_st_graph(gbar)
        if report:
            raise GraphError("completion invalid: " + "; ".join(report))
        path = [self.pg.s]
        while path[-1] in self.succ:
            path.append(self.succ[path[-1]])
        if len(path) != self.pg.n or path[-1] != self.pg.t:
            raise GraphError("completion path is not a Hamiltonian st-path")
        return HPCompletion(gbar=gbar, path=tuple(path),
                            dummy_edges=tuple(self.dummies))


def _ordered_internal_faces(pg: PlaneStGraph):
    d = dual_graph(pg)
    order = d.topological_order()
    faces_by_id = {f.id: f for f in pg.internal_faces}
    return [faces_by_id[fid] for fid in order if fid in faces_by_id]


def _ge(pg: PlaneStGraph, u: int, v: int) -> int:
    e = pg.g.edge_index(u, v)
    if e is None:
        raise GraphError(f"missing edge ({u},{v})")
    return e


def hp_complete_long_right(pg: PlaneStGraph) -> HPCompletion:
    """HP-completion when every internal face has >= 2 left, >= 3 right edges."""
    report = validate_plane_st_graph(pg)
    if report:
        raise GraphError("; ".join(report))
    for f in pg.internal_faces:
        if f.left_edge_count < 2 or f.right_edge_count < 3:
            raise GraphError(
                f"face {f.id} has left {f.left_edge_count} / right "
                f"{f.right_edge_count} edges; need >= 2 and >= 3")
    c = _Completion(pg)
    c.check_invariant()
    for f in _ordered_internal_faces(pg):
        left = list(f.left_path)      # u_0 .. u_h
        right = list(f.right_path)    # v_0 .. v_k
        h, k = len(left) - 1, len(right) - 1
        sf, tf = f.source, f.sink
        bi = c.boundary.index(sf)
        in_minus = sf == pg.s or (c.boundary[bi - 1], sf) in c.path_edges
        in_plus = tf == pg.t or (tf, c.boundary[bi + h + 1]) in c.path_edges
        if in_minus and in_plus:
            # Case 1: bypass a path edge interior to the left path
            j = next(jj for jj in range(h)
                     if (left[jj], left[jj + 1]) in c.path_edges)
            uj, uj1 = left[j], left[j + 1]
            c.connect(uj, right[1],
                      "after", _ge(pg, uj, uj1),
                      "before", _ge(pg, sf, right[1]))
            c.connect(right[k - 1], uj1,
                      "before", _ge(pg, right[k - 1], tf),
                      "after", _ge(pg, uj, uj1))
            c.bypass(uj, uj1, right[1:k])
        elif in_minus:
            # Case 2: bypass (u_{h-1}, t_f) through the whole right interior
            uh1 = left[h - 1]
            c.connect(uh1, right[1],
                      "after", _ge(pg, uh1, tf),
                      "before", _ge(pg, sf, right[1]))
            c.bypass(uh1, tf, right[1:k])
        elif in_plus:
            # Case 3 (mirror of 2): bypass (s_f, u_1)
            u1 = left[1]
            c.connect(right[k - 1], u1,
                      "before", _ge(pg, right[k - 1], tf),
                      "after", _ge(pg, sf, u1))
            c.bypass(sf, u1, right[1:k])
        else:
            # Case 4: bypass (s_f,u_1) through v_1..v_{k-2} and
            # (u_{h-1},t_f) through v_{k-1}
            u1, uh1 = left[1], left[h - 1]
            c.connect(right[k - 2], u1,
                      "before", _ge(pg, right[k - 2], right[k - 1]),
                      "after", _ge(pg, sf, u1))
            c.connect(uh1, right[k - 1],
                      "after", _ge(pg, uh1, tf),
                      "before", _ge(pg, right[k - 2], right[k - 1]))
            c.bypass(sf, u1, right[1:k - 1])
            c.bypass(uh1, tf, [right[k - 1]])
        c.splice_boundary(f)
        c.check_invariant()
    return c.finish()


def hp_complete_rhombi(pg: PlaneStGraph) -> HPCompletion:
    """HP-completion when every internal face is a rhombus; one dummy each."""
    report = validate_plane_st_graph(pg)
    if report:
        raise GraphError("; ".join(report))
    for f in pg.internal_faces:
        if f.left_edge_count != 2 or f.right_edge_count != 2:
            raise GraphError(f"face {f.id} is not a rhombus")
    c = _Completion(pg)
    c.check_invariant()
    for f in _ordered_internal_faces(pg):
        sf, tf = f.source, f.sink
        u1 = f.left_path[1]
        v1 = f.right_path[1]
        bi = c.boundary.index(sf)
        in_minus = sf == pg.s or (c.boundary[bi - 1], sf) in c.path_edges
        in_plus = tf == pg.t or (tf, c.boundary[bi + 3]) in c.path_edges
        # pick the bypassed left edge so the boundary invariant survives:
        # the off-path right edge it creates must be flanked by path edges
        lower_ok = (sf, u1) in c.path_edges and in_plus
        upper_ok = (u1, tf) in c.path_edges and in_minus
        if lower_ok:
            c.connect(v1, u1,
                      "before", _ge(pg, v1, tf),
                      "after", _ge(pg, sf, u1))
            c.bypass(sf, u1, [v1])
        elif upper_ok:
            c.connect(u1, v1,
                      "after", _ge(pg, u1, tf),
                      "before", _ge(pg, sf, v1))
            c.bypass(u1, tf, [v1])
        else:
            raise GraphError(f"no valid bypass at face {f.id}")
        c.splice_boundary(f)
        c.check_invariant()
    return c.finish()
