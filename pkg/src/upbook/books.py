"""Upward book embeddings: the witness object, verification, and the
correspondence between embedding-preserving 2-page embeddings and
Hamiltonian-path completions.

Pages are numbered from 1; for two pages, page 1 is the left page and page
2 the right page of the canonical drawing (spine vertical, vertex v at
height pi(v), each edge a circular arc on its page).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .graphs import (
    Digraph,
    GraphError,
    PlaneStGraph,
    dart,
    dart_edge,
    dart_forward,
)

LEFT = 1
RIGHT = 2


@dataclass(frozen=True)
class BookEmbedding:
    k: int
    order: tuple[int, ...]            # vertices bottom-to-top along the spine
    pages: tuple[int, ...]            # page of edge i, 1..k

    def __post_init__(self):
        if self.k < 1:
            raise GraphError("k must be >= 1")

    @cached_property
    def position(self) -> dict[int, int]:
        return {v: i + 1 for i, v in enumerate(self.order)}

    def page(self, e: int) -> int:
        return self.pages[e]


def edges_conflict(position: dict[int, int] | Sequence[int], e1: tuple[int, int],
                   e2: tuple[int, int]) -> bool:
    """Strict interleaving of the two spine intervals."""
    if isinstance(position, dict):
        pos = position
        a, b = pos[e1[0]], pos[e1[1]]
        c, d = pos[e2[0]], pos[e2[1]]
    else:
        a, b = position[e1[0]], position[e1[1]]
        c, d = position[e2[0]], position[e2[1]]
    if a > b:
        a, b = b, a
    if c > d:
        c, d = d, c
    return (a < c < b < d) or (c < a < d < b)


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    problems: tuple[str, ...]


def verify_kube(g: Digraph, be: BookEmbedding) -> VerifyReport:
    """Check that be is a valid upward k-page book embedding of g."""
    problems = []
    if sorted(be.order) != list(range(g.n)):
        problems.append("order is not a permutation of the vertices")
        return VerifyReport(False, tuple(problems))
    if len(be.pages) != g.m:
        problems.append("page assignment is not total over the edges")
        return VerifyReport(False, tuple(problems))
    pos = be.position
    for i, (u, v) in enumerate(g.edges):
        if pos[u] >= pos[v]:
            problems.append(f"edge {i}=({u},{v}) is not upward in the order")
            return VerifyReport(False, tuple(problems))
    for e in range(g.m):
        if not (1 <= be.pages[e] <= be.k):
            problems.append(f"edge {e} assigned page {be.pages[e]} outside 1..{be.k}")
            return VerifyReport(False, tuple(problems))
    # same-page conflicts: spans sorted by tail, then strict interleave test
    by_page: dict[int, list[int]] = {}
    for e in range(g.m):
        by_page.setdefault(be.pages[e], []).append(e)
    for page, es in by_page.items():
        spans = sorted((pos[g.edges[e][0]], pos[g.edges[e][1]], e) for e in es)
        for i in range(len(spans)):
            a1, b1, e1 = spans[i]
            for j in range(i + 1, len(spans)):
                a2, b2, e2 = spans[j]
                if a2 >= b1:
                    break
                if a1 < a2 < b1 < b2:
                    problems.append(f"edges {e1} and {e2} conflict on page {page}")
                    return VerifyReport(False, tuple(problems))
    return VerifyReport(True, ())


def all_conflicts(g: Digraph, order: Sequence[int]) -> list[tuple[int, int]]:
    """All conflicting edge pairs under the given spine order."""
    pos = {v: i + 1 for i, v in enumerate(order)}
    pairs = []
    for i in range(g.m):
        for j in range(i + 1, g.m):
            if edges_conflict(pos, g.edges[i], g.edges[j]):
                pairs.append((i, j))
    return pairs


# ---------------------------------------------------------------------------
# canonical-drawing embedding extraction (k = 2)


def _expected_rotation(g: Digraph, pos: dict[int, int], pages: Sequence[int],
                       v: int) -> tuple[int, ...]:
    """Clockwise rotation at v in the canonical drawing of a 2-page embedding."""
    out_r, out_l, in_r, in_l = [], [], [], []
    for e in g.out_edges[v]:
        span = pos[g.edges[e][1]] - pos[v]
        (out_r if pages[e] == RIGHT else out_l).append((span, e))
    for e in g.in_edges[v]:
        span = pos[v] - pos[g.edges[e][0]]
        (in_r if pages[e] == RIGHT else in_l).append((span, e))
    rot = [e for _, e in sorted(out_r)]
    rot += [e for _, e in sorted(in_r, reverse=True)]
    rot += [e for _, e in sorted(in_l)]
    rot += [e for _, e in sorted(out_l, reverse=True)]
    return tuple(rot)


def induced_embedding(g: Digraph, be: BookEmbedding) -> PlaneStGraph:
    """The combinatorial embedding of the canonical drawing of a valid 2UBE."""
    if be.k != 2:
        raise GraphError("induced embeddings are defined for two pages")
    rep = verify_kube(g, be)
    if not rep.ok:
        raise GraphError("invalid book embedding: " + "; ".join(rep.problems))
    pos = be.position
    rotation = [_expected_rotation(g, pos, be.pages, v) for v in range(g.n)]
    s, t = be.order[0], be.order[-1]
    out_r = [(pos[g.edges[e][1]], e) for e in g.out_edges[s] if be.pages[e] == RIGHT]
    if out_r:
        outer = dart(max(out_r)[1], False)
    else:
        out_l = [(pos[g.edges[e][1]], e) for e in g.out_edges[s]]
        outer = dart(max(out_l)[1], True)
    return PlaneStGraph(g, s, t, rotation, outer)


def embedding_equals(a: PlaneStGraph, b: PlaneStGraph) -> bool:
    """Equality of embeddings of the same digraph (same edge indexing)."""
    if a.g.edges != b.g.edges or a.s != b.s or a.t != b.t:
        return False
    for v in range(a.n):
        ra, rb = a.rotation[v], b.rotation[v]
        if len(ra) != len(rb):
            return False
        if len(ra) <= 2:
            if set(ra) != set(rb):
                return False
            continue
        if ra[0] not in rb:
            return False
        i = rb.index(ra[0])
        if tuple(rb[i:] + rb[:i]) != ra:
            return False
    oa = frozenset(a.face_orbits[a.outer_face_id])
    ob = frozenset(b.face_orbits[b.outer_face_id])
    return oa == ob


def is_embedding_preserving(pg: PlaneStGraph, be: BookEmbedding) -> bool:
    return embedding_equals(induced_embedding(pg.g, be), pg)


# ---------------------------------------------------------------------------
# page recovery: lexicographically least sigma matching a given embedding


class _Block:
    """One valley block (out- or in-block) of a vertex's rotation.

    Sides along the block are prefix/suffix separated by a split index k;
    the set of admissible splits is an interval maintained under forcing.
    """

    __slots__ = ("edges", "prefix_right", "lo", "hi")

    def __init__(self, edges: list[int], spans: list[int], prefix_right: bool):
        self.edges = edges
        self.prefix_right = prefix_right
        n = len(edges)
        if n == 0:
            self.lo, self.hi = 0, 0
            return
        hi = 1
        while hi < n and spans[hi] < spans[hi - 1]:
            hi += 1
        lo = n - 1
        while lo > 0 and spans[lo] > spans[lo - 1]:
            lo -= 1
        self.lo, self.hi = lo, hi   # split index k ranges over [lo, hi]

    def feasible(self) -> bool:
        return self.lo <= self.hi

    def allowed(self, p: int) -> set[int]:
        """Sides allowed for the edge at block position p."""
        first = RIGHT if self.prefix_right else LEFT
        second = LEFT if self.prefix_right else RIGHT
        out = set()
        if self.hi >= p + 1:
            out.add(first)
        if self.lo <= p:
            out.add(second)
        return out

    def assign(self, p: int, side: int) -> bool:
        first = RIGHT if self.prefix_right else LEFT
        if side == first:
            self.lo = max(self.lo, p + 1)
        else:
            self.hi = min(self.hi, p)
        return self.lo <= self.hi


def match_pages(pg: PlaneStGraph, order: Sequence[int]) -> Optional[BookEmbedding]:
    """Lexicographically least 2-page assignment whose canonical drawing has
    exactly the embedding pg, for the given spine order; None if impossible."""
    g = pg.g
    pos = {v: i + 1 for i, v in enumerate(order)}
    for u, v in g.edges:
        if pos[u] >= pos[v]:
            return None
    # anchored linearizations of every vertex's out- and in-block
    blocks: list[_Block] = []
    edge_slots: list[list[tuple[int, int]]] = [[] for _ in range(g.m)]
    for v in range(g.n):
        outs = list(pg.out_edges_lr(v))       # outL decreasing, outR increasing
        ins_l2r = list(pg.in_edges_lr(v))
        ins = list(reversed(ins_l2r))         # clockwise: inR decreasing, inL increasing
        if outs:
            spans = [pos[g.edges[e][1]] - pos[v] for e in outs]
            blk = _Block(outs, spans, prefix_right=False)
            for p, e in enumerate(outs):
                edge_slots[e].append((len(blocks), p))
            blocks.append(blk)
        if ins:
            spans = [pos[v] - pos[g.edges[e][0]] for e in ins]
            blk = _Block(ins, spans, prefix_right=True)
            for p, e in enumerate(ins):
                edge_slots[e].append((len(blocks), p))
            blocks.append(blk)
    if any(not b.feasible() for b in blocks):
        return None

    sides: list[int] = [0] * g.m

    def allowed(e: int) -> set[int]:
        out = {LEFT, RIGHT}
        for bi, p in edge_slots[e]:
            out &= blocks[bi].allowed(p)
        return out

    def snapshot():
        return [(b.lo, b.hi) for b in blocks]

    def restore(snap):
        for b, (lo, hi) in zip(blocks, snap):
            b.lo, b.hi = lo, hi

    def propagate() -> Optional[list[int]]:
        """Assign forced edges until fixpoint; return newly fixed or None."""
        fixed = []
        changed = True
        while changed:
            changed = False
            for e in range(g.m):
                if sides[e]:
                    continue
                opts = allowed(e)
                if not opts:
                    return None
                if len(opts) == 1:
                    side = opts.pop()
                    sides[e] = side
                    fixed.append(e)
                    for bi, p in edge_slots[e]:
                        if not blocks[bi].assign(p, side):
                            return None
                    changed = True
        return fixed

    def solve() -> bool:
        snap0, saved0 = snapshot(), sides.copy()
        if propagate() is None:
            restore(snap0)
            sides[:] = saved0
            return False
        free = [e for e in range(g.m) if not sides[e]]
        if not free:
            return True
        e = free[0]
        for side in (LEFT, RIGHT):
            if side not in allowed(e):
                continue
            snap, saved = snapshot(), sides.copy()
            sides[e] = side
            ok = all(blocks[bi].assign(p, side) for bi, p in edge_slots[e])
            if ok and solve():
                return True
            restore(snap)
            sides[:] = saved
        restore(snap0)
        sides[:] = saved0
        return False

    if not solve():
        return None
    be = BookEmbedding(2, tuple(order), tuple(sides))
    if not is_embedding_preserving(pg, be):
        return None
    return be


# ---------------------------------------------------------------------------
# Hamiltonian-path completions


@dataclass(frozen=True)
class HPCompletion:
    gbar: PlaneStGraph
    path: tuple[int, ...]             # vertices of the Hamiltonian st-path
    dummy_edges: tuple[int, ...]      # edge indices in gbar not present in g


def two_ube_to_hp_completion(pg: PlaneStGraph, be: BookEmbedding) -> HPCompletion:
    """Augment with spine edges between consecutive non-adjacent vertices."""
    g = pg.g
    rep = verify_kube(g, be)
    if be.k != 2 or not rep.ok:
        raise GraphError("need a valid 2-page embedding")
    edges = list(g.edges)
    pages = list(be.pages)
    dummies = []
    for u, v in zip(be.order, be.order[1:]):
        if not g.has_edge(u, v):
            dummies.append(len(edges))
            edges.append((u, v))
            pages.append(RIGHT)
    gbar = Digraph(g.n, edges)
    be2 = BookEmbedding(2, be.order, tuple(pages))
    embedded = induced_embedding(gbar, be2)
    return HPCompletion(gbar=embedded, path=be.order, dummy_edges=tuple(dummies))


def hp_completion_to_2ube(g: Digraph, completion: HPCompletion) -> BookEmbedding:
    """Recover the 2UBE of g from an embedded HP-completion (Theorem 1 inverse)."""
    gbar = completion.gbar
    path = completion.path
    if sorted(path) != list(range(gbar.n)):
        raise GraphError("path is not Hamiltonian")
    for u, v in zip(path, path[1:]):
        if not gbar.g.has_edge(u, v):
            raise GraphError("path is not a directed path of the completion")
    from .graphs import validate_plane_st_graph
    if validate_plane_st_graph(gbar):
        raise GraphError("completion is not a valid plane st-graph")
    full = match_pages(gbar, path)
    if full is None:
        raise GraphError("completion embedding is not realizable along the path")
    # map gbar pages back onto g's edge indexing
    index_of = {}
    for i, (u, v) in enumerate(gbar.g.edges):
        index_of[(u, v)] = i
    pages = tuple(full.pages[index_of[(u, v)]] for (u, v) in g.edges)
    be = BookEmbedding(2, tuple(path), pages)
    rep = verify_kube(g, be)
    if not rep.ok:
        raise GraphError("recovered embedding invalid: " + "; ".join(rep.problems))
    return be
