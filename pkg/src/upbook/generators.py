"""Instance generators: fixed families, random families, exhaustive streams.

All construction goes through a left-to-right face sweep: start from the
left boundary path and repeatedly glue a new face onto a segment of the
current right boundary.  Every plane st-graph arises this way (add faces in
a topological order of the dual), which is also what makes the exhaustive
enumerator complete.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .graphs import Digraph, GraphError, PlaneStGraph, dart


@dataclass
class _Builder:
    """Mutable plane st-graph under left-to-right face sweep."""

    n: int = 0
    edges: list[tuple[int, int]] = field(default_factory=list)
    outs: list[list[int]] = field(default_factory=list)   # per vertex, left-to-right
    ins: list[list[int]] = field(default_factory=list)    # per vertex, left-to-right
    boundary: list[int] = field(default_factory=list)     # current right boundary s..t

    @classmethod
    def from_path(cls, k: int) -> "_Builder":
        b = cls()
        for _ in range(k):
            b.new_vertex()
        for i in range(k - 1):
            b.add_edge(i, i + 1)
        b.boundary = list(range(k))
        return b

    def copy(self) -> "_Builder":
        return _Builder(
            n=self.n,
            edges=list(self.edges),
            outs=[list(o) for o in self.outs],
            ins=[list(o) for o in self.ins],
            boundary=list(self.boundary),
        )

    def new_vertex(self) -> int:
        self.outs.append([])
        self.ins.append([])
        self.n += 1
        return self.n - 1

    def add_edge(self, u: int, v: int) -> int:
        e = len(self.edges)
        self.edges.append((u, v))
        self.outs[u].append(e)   # becomes the rightmost outgoing edge
        self.ins[v].append(e)    # becomes the rightmost incoming edge
        return e

    def add_face(self, i: int, j: int, k: int) -> None:
        """Glue a face over boundary[i..j] with a new right path of k edges."""
        assert 0 <= i < j < len(self.boundary)
        assert (j - i) + k >= 3
        sf, tf = self.boundary[i], self.boundary[j]
        if k == 1:
            self.add_edge(sf, tf)
            new_vertices: list[int] = []
        else:
            new_vertices = [self.new_vertex() for _ in range(k - 1)]
            prev = sf
            for v in new_vertices:
                self.add_edge(prev, v)
                prev = v
            self.add_edge(prev, tf)
        self.boundary[i + 1:j] = new_vertices

    def has_edge(self, u: int, v: int) -> bool:
        return any(self.edges[e][1] == v for e in self.outs[u])

    def finish(self) -> PlaneStGraph:
        g = Digraph(self.n, self.edges)
        rotation = [self.outs[v] + list(reversed(self.ins[v])) for v in range(self.n)]
        outer = dart(self.outs[self.boundary[0]][-1], False)
        return PlaneStGraph(g, self.boundary[0], self.boundary[-1], rotation, outer)


def rhombus_grid(w: int, h: int) -> PlaneStGraph:
    """Grid of w*h rhombus faces; rhombus_grid(1,1) is the diamond."""
    if w < 1 or h < 1:
        raise GraphError("rhombus_grid needs w,h >= 1")

    def vid(i: int, j: int) -> int:
        return i * (h + 1) + j

    n = (w + 1) * (h + 1)
    edges: list[tuple[int, int]] = []
    eidx: dict[tuple[int, int], int] = {}
    for i in range(w + 1):
        for j in range(h + 1):
            if i < w:
                eidx[(vid(i, j), vid(i + 1, j))] = len(edges)
                edges.append((vid(i, j), vid(i + 1, j)))
            if j < h:
                eidx[(vid(i, j), vid(i, j + 1))] = len(edges)
                edges.append((vid(i, j), vid(i, j + 1)))
    rotation: list[list[int]] = []
    for i in range(w + 1):
        for j in range(h + 1):
            v = vid(i, j)
            outs = []
            if i < w:
                outs.append(eidx[(v, vid(i + 1, j))])   # points up-left
            if j < h:
                outs.append(eidx[(v, vid(i, j + 1))])   # points up-right
            ins = []
            if i > 0:
                ins.append(eidx[(vid(i - 1, j), v)])    # arrives from down-right
            if j > 0:
                ins.append(eidx[(vid(i, j - 1), v)])    # arrives from down-left
            rotation.append(outs + ins)                 # ins already right-to-left
    outer = dart(eidx[(0, vid(0, 1))], False)
    return PlaneStGraph(Digraph(n, edges), 0, n - 1, rotation, outer)


def _random_sweep(n: int, rng: random.Random,
                  choices: Optional[list[tuple[int, int]]] = None,
                  min_left: int = 1, min_right: int = 1) -> PlaneStGraph:
    """Random face sweep until ~n vertices; deterministic under the rng."""
    start = max(2, min_left + 1)
    b = _Builder.from_path(rng.randint(start, max(start, min(n, start + 2))))
    stall = 0
    while b.n < n and stall < 60:
        bound = len(b.boundary)
        if choices is not None:
            l, k = rng.choice(choices)
        else:
            l = rng.randint(min_left, max(min_left, min(3, bound - 1)))
            kmin = max(min_right, 3 - l)
            k = rng.randint(kmin, kmin + 2)
        if l > bound - 1 or l + k < 3 or b.n + max(0, k - 1) > n:
            stall += 1
            continue
        i = rng.randint(0, bound - 1 - l)
        j = i + l
        if k == 1 and b.has_edge(b.boundary[i], b.boundary[j]):
            stall += 1
            continue
        b.add_face(i, j, k)
        stall = 0
    return b.finish()


def long_right_path(n: int, seed: int) -> PlaneStGraph:
    """Random instance where every internal face has left >= 2, right >= 3 edges."""
    rng = random.Random(f"lrp-{seed}")
    choices = [(2, 3), (2, 4), (3, 3), (2, 3), (3, 4), (2, 3)]
    return _random_sweep(n, rng, choices=choices, min_left=2, min_right=3)


def random_planar_st(n: int, seed: int, profile: Optional[str] = None) -> PlaneStGraph:
    """Random plane st-graph with about n vertices.

    profile "special" restricts internal faces to generalized triangles and
    rhombi; profile "rhombi" to rhombi only.
    """
    rng = random.Random(f"rps-{seed}-{profile}")
    if profile == "special":
        return _random_sweep(n, rng, choices=[(1, 2), (2, 1), (2, 2), (2, 2)])
    if profile == "rhombi":
        return _random_sweep(n, rng, choices=[(2, 2)])
    return _random_sweep(n, rng)


def series_parallel(n: int, seed: int) -> PlaneStGraph:
    """Random embedded two-terminal series-parallel st-graph, ~n vertices."""
    rng = random.Random(f"sp-{seed}")
    b = _Builder()
    s = b.new_vertex()
    t = b.new_vertex()
    budget = [n - 2]

    def grow(u: int, v: int, depth: int, allow_edge: bool) -> None:
        # leaf edge
        if budget[0] <= 0 or (depth > 1 and rng.random() < 0.35):
            if allow_edge and not b.has_edge(u, v):
                b.add_edge(u, v)
                return
        r = rng.random()
        if r < 0.5 and budget[0] >= 1:
            w = b.new_vertex()
            budget[0] -= 1
            grow(u, w, depth + 1, True)
            grow(w, v, depth + 1, True)
        elif budget[0] >= 2:
            branches = rng.randint(2, 3)
            for i in range(branches):
                if budget[0] >= 1:
                    w = b.new_vertex()
                    budget[0] -= 1
                    grow(u, w, depth + 1, True)
                    grow(w, v, depth + 1, True)
                elif allow_edge and i == 0 and not b.has_edge(u, v):
                    b.add_edge(u, v)
        else:
            w = b.new_vertex() if budget[0] >= 1 else None
            if w is None:
                if not b.has_edge(u, v):
                    b.add_edge(u, v)
                return
            budget[0] -= 1
            grow(u, w, depth + 1, True)
            grow(w, v, depth + 1, True)

    grow(s, t, 0, True)
    if not b.outs[s]:
        b.add_edge(s, t)
    b.boundary = [s, t]
    g = Digraph(b.n, b.edges)
    rotation = [b.outs[v] + list(reversed(b.ins[v])) for v in range(b.n)]
    pg = PlaneStGraph(g, s, t, rotation, dart(b.outs[s][-1], False))
    return pg


# ---------------------------------------------------------------------------
# exhaustive enumeration


def canonical_signature(pg: PlaneStGraph, include_mirror: bool = True) -> tuple:
    """Canonical form of an embedded st-graph (optionally mirror-invariant)."""
    sig = _oriented_signature(pg)
    if include_mirror:
        sig = min(sig, _oriented_signature(pg.mirrored()))
    return sig


def _oriented_signature(pg: PlaneStGraph) -> tuple:
    best = None
    outer_orbit = pg.face_orbits[pg.outer_face_id]
    for start_edge in pg.rotation[pg.s]:
        sig = _signature_from(pg, start_edge, outer_orbit)
        if best is None or sig < best:
            best = sig
    return best


def _signature_from(pg: PlaneStGraph, start_edge: int, outer_orbit) -> tuple:
    g = pg.g
    label = {pg.s: 0}
    order = [pg.s]
    edge_label: dict[int, int] = {}
    rows = []
    first_edge = {pg.s: start_edge}
    qi = 0
    while qi < len(order):
        v = order[qi]
        qi += 1
        rot = pg.rotation[v]
        k = len(rot)
        p = rot.index(first_edge[v])
        row = []
        for i in range(k):
            e = rot[(p + i) % k]
            u, w = g.edges[e]
            other = w if u == v else u
            if other not in label:
                label[other] = len(order)
                order.append(other)
                first_edge[other] = e
            if e not in edge_label:
                edge_label[e] = len(edge_label)
            row.append((edge_label[e], label[other], 1 if u == v else 0))
        rows.append(tuple(row))
    outer_marker = tuple(sorted(
        (edge_label[d >> 1], d & 1) for d in outer_orbit))
    return (g.n, g.m, label.get(pg.t, -1), tuple(rows), outer_marker)


def _builder_signature(b: _Builder) -> tuple:
    """Oriented isomorphism key of a builder state (rotations + boundary)."""
    n, edges = b.n, b.edges
    rotation = [b.outs[v] + b.ins[v][::-1] for v in range(n)]
    s = b.boundary[0]
    best = None
    # the leftmost outgoing edge of s is invariant under isomorphisms that
    # preserve the outer face, so a single traversal is canonical
    for start in (b.outs[s][0],):
        label = [-1] * n
        elabel = [-1] * len(edges)
        label[s] = 0
        order = [s]
        first_edge = [-1] * n
        first_edge[s] = start
        sig: list[int] = []
        qi = 0
        ne = 0
        while qi < len(order):
            v = order[qi]
            qi += 1
            rot = rotation[v]
            k = len(rot)
            p = rot.index(first_edge[v])
            sig.append(-1)
            for i in range(k):
                e = rot[p + i - k]
                u, w = edges[e]
                if u == v:
                    other, d = w, 1
                else:
                    other, d = u, 0
                lo = label[other]
                if lo < 0:
                    lo = label[other] = len(order)
                    order.append(other)
                    first_edge[other] = e
                le = elabel[e]
                if le < 0:
                    le = elabel[e] = ne
                    ne += 1
                sig.append(((le * 4096 + lo) << 1) | d)
        sig.extend(label[v] for v in b.boundary)
        key = tuple(sig)
        if best is None or key < best:
            best = key
    return best


def _mirror_builder(b: _Builder) -> _Builder:
    """The reflected state: reversed rotations, boundary = old left boundary."""
    outs = [list(reversed(o)) for o in b.outs]
    ins = [list(reversed(o)) for o in b.ins]
    s, t = b.boundary[0], b.boundary[-1]
    left = [s]
    v = s
    while v != t:
        e = b.outs[v][0]          # leftmost outgoing edge of the original
        v = b.edges[e][1]
        left.append(v)
    return _Builder(n=b.n, edges=b.edges, outs=outs, ins=ins, boundary=left)


def _enumerate_all(max_n: int) -> list[PlaneStGraph]:
    """All embedded st-graphs up to max_n vertices, mirror images identified."""
    emitted: dict[tuple, PlaneStGraph] = {}
    state_seen: set[tuple] = set()
    stack: list[_Builder] = []
    for k in range(2, max_n + 1):
        b = _Builder.from_path(k)
        key = _builder_signature(b)
        if key not in state_seen:
            state_seen.add(key)
            stack.append(b)
    while stack:
        b = stack.pop()
        sig = min(_builder_signature(b), _builder_signature(_mirror_builder(b)))
        if sig not in emitted:
            emitted[sig] = b.finish()
        bound = len(b.boundary)
        nmax = max_n - b.n + 1
        for i in range(bound - 1):
            for j in range(i + 1, bound):
                l = j - i
                for k in range(1, nmax + 1):
                    if l + k < 3:
                        continue
                    if k == 1 and b.has_edge(b.boundary[i], b.boundary[j]):
                        continue
                    b.add_face(i, j, k)
                    key = _builder_signature(b)
                    if key not in state_seen:
                        state_seen.add(key)
                        stack.append(b.copy())
                    _undo_face(b, i, j, k)
    graphs = sorted(emitted.items(), key=lambda kv: kv[0])
    return [pg for _, pg in graphs]


def _undo_face(b: _Builder, i: int, j: int, k: int) -> None:
    """Reverse the most recent add_face(i, j, k)."""
    sf = b.boundary[i]
    # boundary currently holds the new right path interior between i and j
    tf = b.boundary[i + k]
    for _ in range(k):
        u, v = b.edges.pop()
        b.outs[u].pop()
        b.ins[v].pop()
    for _ in range(k - 1):
        b.outs.pop()
        b.ins.pop()
        b.n -= 1
    # the displaced interior vertices were degree-2 path vertices; they are
    # recoverable from the edge list: walk from sf along remaining boundary
    restored = [sf]
    v = sf
    while v != tf:
        # the boundary edge out of v is now its rightmost remaining out-edge
        e = b.outs[v][-1]
        v = b.edges[e][1]
        restored.append(v)
    b.boundary[i:i + k + 1] = restored


_ENUM_CACHE: dict[int, list[PlaneStGraph]] = {}


def exhaustive_small(max_n: int, exact: bool = False) -> Iterator[PlaneStGraph]:
    """All plane st-graphs with at most (or exactly) max_n vertices.

    Embedded graphs are enumerated up to isomorphism of the embedded
    structure with mirror images identified; deterministic order.
    """
    if max_n not in _ENUM_CACHE:
        _ENUM_CACHE[max_n] = _enumerate_all(max_n)
    for pg in _ENUM_CACHE[max_n]:
        if pg.n == max_n if exact else pg.n <= max_n:
            yield pg


def generate(kind: str, seed: Optional[int] = None, **params):
    """Dispatcher over the generator families."""
    if kind == "rhombus_grid":
        return rhombus_grid(params["w"], params["h"])
    if kind == "long_right_path":
        return long_right_path(params["n"], seed if seed is not None else 0)
    if kind == "series_parallel":
        return series_parallel(params["n"], seed if seed is not None else 0)
    if kind == "random_planar_st":
        return random_planar_st(params["n"], seed if seed is not None else 0,
                                params.get("profile"))
    if kind == "exhaustive_small":
        return exhaustive_small(params["n"], exact=params.get("exact", False))
    raise GraphError(f"unknown generator kind {kind!r}")
