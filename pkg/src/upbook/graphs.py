"""Directed graphs with a combinatorial planar embedding (rotation system).

A plane st-graph is stored as a DAG plus, for every vertex, the clockwise
cyclic order of its incident edges, plus one dart identifying the outer
face.  Faces are dart orbits of the rotation system; every orbit keeps its
face on the left of each dart, so for an edge e the left face is the orbit
of e's forward dart and the right face the orbit of its backward dart.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Digraph:
    """Simple digraph on vertices 0..n-1; edge identity is its list index."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in edges))
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range")
            if (u, v) in seen or (v, u) in seen:
                raise GraphError(f"duplicate edge ({u},{v})")
            seen.add((u, v))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def out_edges(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, _) in enumerate(self.edges):
            out[u].append(i)
        return tuple(tuple(o) for o in out)

    @cached_property
    def in_edges(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (_, v) in enumerate(self.edges):
            inc[v].append(i)
        return tuple(tuple(o) for o in inc)

    def edge_index(self, u: int, v: int) -> Optional[int]:
        for i in self.out_edges[u]:
            if self.edges[i][1] == v:
                return i
        return None

    def has_edge(self, u: int, v: int) -> bool:
        return self.edge_index(u, v) is not None

    def sources(self) -> list[int]:
        return [v for v in range(self.n) if not self.in_edges[v]]

    def sinks(self) -> list[int]:
        return [v for v in range(self.n) if not self.out_edges[v]]

    def topological_order(self) -> Optional[list[int]]:
        """One topological order, or None if the graph has a cycle."""
        indeg = [len(self.in_edges[v]) for v in range(self.n)]
        stack = [v for v in range(self.n) if indeg[v] == 0]
        order = []
        while stack:
            v = stack.pop()
            order.append(v)
            for i in self.out_edges[v]:
                w = self.edges[i][1]
                indeg[w] -= 1
                if indeg[w] == 0:
                    stack.append(w)
        return order if len(order) == self.n else None

    def is_acyclic(self) -> bool:
        return self.topological_order() is not None

    def reversed(self) -> "Digraph":
        return Digraph(self.n, [(v, u) for u, v in self.edges])


# Darts: dart 2*e is edge e traversed tail->head, 2*e+1 is head->tail.


def dart(edge: int, forward: bool) -> int:
    return 2 * edge + (0 if forward else 1)


def dart_edge(d: int) -> int:
    return d >> 1


def dart_forward(d: int) -> bool:
    return (d & 1) == 0


@dataclass(frozen=True)
class Face:
    """One face: a dart orbit split into the two pole-to-pole paths."""

    id: int
    darts: tuple[int, ...]
    left_path: tuple[int, ...]   # vertices s_f .. t_f
    right_path: tuple[int, ...]
    source: int
    sink: int
    is_outer: bool

    @property
    def left_edge_count(self) -> int:
        return len(self.left_path) - 1

    @property
    def right_edge_count(self) -> int:
        return len(self.right_path) - 1


@dataclass(frozen=True)
class FaceClass:
    """Shape classes of the internal faces plus the forbidden-pattern flag."""

    shapes: dict[int, str]          # face id -> generalized_triangle | rhombus | other
    single_edge_side: dict[int, str]  # for generalized triangles: 'left' | 'right'
    has_forbidden_configuration: bool
    forbidden_edges: tuple[int, ...]


class PlaneStGraph:
    """A plane st-graph: DAG + clockwise rotations + designated outer face."""

    def __init__(self, digraph: Digraph, s: int, t: int,
                 rotation: Sequence[Sequence[int]], outer_dart: int):
        self.g = digraph
        self.s = s
        self.t = t
        self.rotation = tuple(tuple(r) for r in rotation)
        self.outer_dart = outer_dart
        self._rotpos: list[dict[int, int]] = [
            {e: i for i, e in enumerate(r)} for r in self.rotation
        ]

    @property
    def n(self) -> int:
        return self.g.n

    @property
    def m(self) -> int:
        return self.g.m

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self.g.edges

    # -- dart walking ---------------------------------------------------

    def dart_head(self, d: int) -> int:
        u, v = self.g.edges[dart_edge(d)]
        return v if dart_forward(d) else u

    def dart_tail(self, d: int) -> int:
        u, v = self.g.edges[dart_edge(d)]
        return u if dart_forward(d) else v

    def next_face_dart(self, d: int) -> int:
        """Successor of d along its face (face kept on the left)."""
        v = self.dart_head(d)
        e = dart_edge(d)
        rot = self.rotation[v]
        pos = self._rotpos[v][e]
        e2 = rot[(pos + 1) % len(rot)]
        u2, _ = self.g.edges[e2]
        return dart(e2, u2 == v)

    @cached_property
    def face_orbits(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * (2 * self.m)
        orbits = []
        for d0 in range(2 * self.m):
            if seen[d0]:
                continue
            orbit = []
            d = d0
            while not seen[d]:
                seen[d] = True
                orbit.append(d)
                d = self.next_face_dart(d)
            orbits.append(tuple(orbit))
        return tuple(orbits)

    @cached_property
    def dart_face(self) -> dict[int, int]:
        df = {}
        for i, orbit in enumerate(self.face_orbits):
            for d in orbit:
                df[d] = i
        return df

    @property
    def outer_face_id(self) -> int:
        return self.dart_face[self.outer_dart]

    def left_face(self, e: int) -> int:
        return self.dart_face[dart(e, True)]

    def right_face(self, e: int) -> int:
        return self.dart_face[dart(e, False)]

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        faces = []
        for i, orbit in enumerate(self.face_orbits):
            faces.append(self._face_from_orbit(i, orbit))
        return tuple(faces)

    def _face_from_orbit(self, fid: int, orbit: tuple[int, ...]) -> Face:
        is_outer = self.outer_dart in orbit
        k = len(orbit)
        fwd = [dart_forward(d) for d in orbit]
        if all(fwd):
            raise GraphError(f"face {fid} is a directed cycle (graph not acyclic?)")
        if not any(fwd):
            raise GraphError(f"face {fid} has no forward dart")
        # rotate so the orbit starts at the first forward dart after a backward one
        start = next(i for i in range(k) if fwd[i] and not fwd[(i - 1) % k])
        rot = [orbit[(start + i) % k] for i in range(k)]
        rfwd = [dart_forward(d) for d in rot]
        # must be one forward run then one backward run (single source/sink face)
        switch = next((i for i in range(1, k) if not rfwd[i]), k)
        if any(rfwd[i] for i in range(switch, k)):
            raise GraphError(f"face {fid} has multiple local sources/sinks")
        up = rot[:switch]          # forward darts, bottom to top
        down = rot[switch:]        # backward darts, top to bottom
        up_path = [self.dart_tail(up[0])] + [self.dart_head(d) for d in up]
        down_path_rev = [self.dart_head(down[-1])] + [self.dart_tail(d) for d in reversed(down)]
        if up_path[0] != down_path_rev[0] or up_path[-1] != down_path_rev[-1]:
            raise GraphError(f"face {fid} boundary paths do not share endpoints")
        # forward darts have this face on their left; for the outer face these
        # are the left boundary, for an internal face the right path.
        if is_outer:
            left, right = up_path, down_path_rev
        else:
            left, right = down_path_rev, up_path
        return Face(
            id=fid, darts=tuple(rot),
            left_path=tuple(left), right_path=tuple(right),
            source=up_path[0], sink=up_path[-1], is_outer=is_outer,
        )

    @cached_property
    def internal_faces(self) -> tuple[Face, ...]:
        return tuple(f for f in self.faces if not f.is_outer)

    @property
    def outer_face(self) -> Face:
        return self.faces[self.outer_face_id]

    # -- left-to-right edge orders at a vertex --------------------------

    @cached_property
    def _lr_orders(self) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
        """(outgoing left-to-right, incoming left-to-right) per vertex."""
        result = []
        for v in range(self.n):
            rot = self.rotation[v]
            deg = len(rot)
            is_out = [self.g.edges[e][0] == v for e in rot]
            if all(is_out) or not any(is_out):
                # source/sink: linearize at the outer-face gap
                start = self._outer_gap_start(v)
                lin = [rot[(start + i) % deg] for i in range(deg)]
                if all(is_out):
                    result.append((tuple(lin), ()))
                else:
                    # incoming, clockwise from the gap = right-to-left
                    result.append(((), tuple(reversed(lin))))
                continue
            # rotate so outgoing block starts the list
            start = next(i for i in range(deg)
                         if is_out[i] and not is_out[(i - 1) % deg])
            lin = [rot[(start + i) % deg] for i in range(deg)]
            k = next((i for i in range(deg) if self.g.edges[lin[i]][0] != v), deg)
            if any(self.g.edges[lin[i]][0] == v for i in range(k, deg)):
                raise GraphError(f"vertex {v} is not bimodal")
            outs = tuple(lin[:k])                     # clockwise = left-to-right
            ins = tuple(reversed(lin[k:]))            # reversed clockwise = left-to-right
            result.append((outs, ins))
        return tuple(result)

    def _outer_gap_start(self, v: int) -> int:
        """Index in rotation[v] of the edge just after the outer face's visit."""
        orbit = self.face_orbits[self.outer_face_id]
        k = len(orbit)
        for i, d in enumerate(orbit):
            if self.dart_head(d) == v:
                leave = orbit[(i + 1) % k]
                return self._rotpos[v][dart_edge(leave)]
        raise GraphError(f"vertex {v} is not on the outer face")

    def out_edges_lr(self, v: int) -> tuple[int, ...]:
        return self._lr_orders[v][0]

    def in_edges_lr(self, v: int) -> tuple[int, ...]:
        return self._lr_orders[v][1]

    # -- misc ------------------------------------------------------------

    def mirrored(self) -> "PlaneStGraph":
        """The reflected embedding (all rotations reversed, same outer face)."""
        rot = [tuple(reversed(r)) for r in self.rotation]
        # reflection swaps the sides of every dart, so the outer face now lies
        # to the left of the opposite dart
        other = dart(dart_edge(self.outer_dart), not dart_forward(self.outer_dart))
        return PlaneStGraph(self.g, self.s, self.t, rot, other)

    def reversed(self) -> "PlaneStGraph":
        """Reverse all edges and swap s and t (180-degree rotation).

        Orientation is preserved, so rotations are unchanged and left/right
        paths of every face swap.
        """
        g = self.g.reversed()
        other = dart(dart_edge(self.outer_dart), not dart_forward(self.outer_dart))
        return PlaneStGraph(g, self.t, self.s, self.rotation, other)

    def __repr__(self) -> str:
        return f"PlaneStGraph(n={self.n}, m={self.m}, s={self.s}, t={self.t})"


def validate_plane_st_graph(pg: PlaneStGraph) -> list[str]:
    """Diagnostics; an empty list means the object is a valid plane st-graph."""
    report: list[str] = []
    g = pg.g
    if not g.is_acyclic():
        report.append("graph has a directed cycle")
    srcs, sinks = g.sources(), g.sinks()
    if len(srcs) != 1:
        report.append(f"{len(srcs)} sources (expected exactly 1)")
    elif srcs[0] != pg.s:
        report.append(f"designated source {pg.s} differs from the unique source {srcs[0]}")
    if len(sinks) != 1:
        report.append(f"{len(sinks)} sinks (expected exactly 1)")
    elif sinks[0] != pg.t:
        report.append(f"designated sink {pg.t} differs from the unique sink {sinks[0]}")
    # rotation well-formedness
    incident: list[set[int]] = [set() for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        incident[u].add(i)
        incident[v].add(i)
    for v in range(g.n):
        if set(pg.rotation[v]) != incident[v] or len(pg.rotation[v]) != len(incident[v]):
            report.append(f"rotation at {v} is not a permutation of incident edges")
            return report
    if report:
        return report
    # connectivity (needed for the Euler test to mean planarity)
    if g.n > 1:
        seen = {pg.s}
        stack = [pg.s]
        und: list[list[int]] = [[] for _ in range(g.n)]
        for (u, v) in g.edges:
            und[u].append(v)
            und[v].append(u)
        while stack:
            x = stack.pop()
            for y in und[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != g.n:
            report.append("graph is not connected")
            return report
    try:
        faces = pg.faces
    except GraphError as exc:
        report.append(f"face structure invalid: {exc}")
        return report
    if g.n - g.m + len(faces) != 2:
        report.append(
            f"rotation system is not planar: n-m+f = {g.n}-{g.m}+{len(faces)} != 2")
        return report
    outer = pg.outer_face
    boundary = set(outer.left_path) | set(outer.right_path)
    if pg.s not in boundary or pg.t not in boundary:
        report.append("s and t are not both on the outer face")
    if outer.source != pg.s or outer.sink != pg.t:
        report.append("outer face is not bounded by two s-to-t paths")
    return report


def compute_faces(pg: PlaneStGraph) -> tuple[Face, ...]:
    report = validate_plane_st_graph(pg)
    if report:
        raise GraphError("; ".join(report))
    return pg.faces


@dataclass(frozen=True)
class DualGraph:
    """Dual of a plane st-graph. Vertices: internal face ids plus s*/t*."""

    vertices: tuple[int, ...]       # face ids; s_star/t_star are extra labels
    s_star: int
    t_star: int
    edges: tuple[tuple[int, int], ...]   # may contain parallel edges

    def topological_order(self) -> list[int]:
        indeg: dict[int, int] = {v: 0 for v in self.vertices}
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            indeg[v] += 1
        ready = [v for v in self.vertices if indeg[v] == 0]
        order = []
        heapq.heapify(ready)
        while ready:
            v = heapq.heappop(ready)
            order.append(v)
            for w in adj[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(ready, w)
        if len(order) != len(self.vertices):
            raise GraphError("dual graph has a cycle")
        return order


def dual_graph(pg: PlaneStGraph) -> DualGraph:
    """Left-face to right-face dual; boundary edges attach to s*/t*."""
    report = validate_plane_st_graph(pg)
    if report:
        raise GraphError("; ".join(report))
    outer = pg.outer_face_id
    s_star = -1
    t_star = -2
    edges = []
    for e in range(pg.m):
        lf, rf = pg.left_face(e), pg.right_face(e)
        u = s_star if lf == outer else lf
        v = t_star if rf == outer else rf
        edges.append((u, v))
    vertices = tuple([s_star] + [f.id for f in pg.internal_faces] + [t_star])
    return DualGraph(vertices=vertices, s_star=s_star, t_star=t_star, edges=tuple(edges))


def classify_faces(pg: PlaneStGraph) -> FaceClass:
    report = validate_plane_st_graph(pg)
    if report:
        raise GraphError("; ".join(report))
    shapes: dict[int, str] = {}
    side: dict[int, str] = {}
    for f in pg.internal_faces:
        le, re = f.left_edge_count, f.right_edge_count
        if le == 1 or re == 1:
            shapes[f.id] = "generalized_triangle"
            side[f.id] = "left" if le == 1 else "right"
        elif le == 2 and re == 2:
            shapes[f.id] = "rhombus"
        else:
            shapes[f.id] = "other"
    forbidden = []
    outer = pg.outer_face_id
    for e, (u, v) in enumerate(pg.edges):
        lf, rf = pg.left_face(e), pg.right_face(e)
        if lf == outer or rf == outer:
            continue
        fl, fr = pg.faces[lf], pg.faces[rf]
        if fl.source == u and fl.sink == v and fr.source == u and fr.sink == v:
            forbidden.append(e)
    return FaceClass(
        shapes=shapes,
        single_edge_side=side,
        has_forbidden_configuration=bool(forbidden),
        forbidden_edges=tuple(forbidden),
    )
