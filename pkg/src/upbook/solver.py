"""Exact backtracking solver for upward k-page book embeddings.

The search extends a topological prefix by the smallest eligible source.
Page feasibility is tracked incrementally: conflicts are discovered when an
edge closes over the tails of still-open edges.  For two pages this is an
exact 2-colourability test (union-find with parity); for k >= 3 the solver
prunes on (k+1)-cliques of mutually conflicting edges (the pigeonhole
obstruction) and decides the page assignment exactly at complete orders.

The budget counts search nodes and makes exhaustion explicit: exceeding it
raises BudgetExceeded, never a wrong answer.
"""

from __future__ import annotations

from typing import Iterator, Optional

from .books import BookEmbedding, match_pages
from .graphs import Digraph, GraphError, PlaneStGraph

DEFAULT_BUDGET = 10_000_000


class BudgetExceeded(Exception):
    """The solver ran out of its node budget; the answer is unknown."""


class _Budget:
    __slots__ = ("left",)

    def __init__(self, n: int):
        self.left = n

    def spend(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise BudgetExceeded()


class _ParityDSU:
    """Union-find with parity and journaled rollback (no path compression)."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.par = [0] * n              # parity of the link to the parent
        self.journal: list[tuple[int, int]] = []

    def find(self, x: int) -> tuple[int, int]:
        p = 0
        parent = self.parent
        while parent[x] != x:
            p ^= self.par[x]
            x = parent[x]
        return x, p

    def union_diff(self, a: int, b: int) -> bool:
        """Constrain a and b to different pages; False on contradiction."""
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            return pa != pb
        if self.rank[ra] > self.rank[rb]:
            ra, rb = rb, ra
            pa, pb = pb, pa
        self.journal.append((ra, self.rank[rb]))
        self.parent[ra] = rb
        self.par[ra] = pa ^ pb ^ 1
        if self.rank[ra] == self.rank[rb]:
            self.rank[rb] += 1
        return True

    def mark(self) -> int:
        return len(self.journal)

    def rollback(self, mark: int) -> None:
        while len(self.journal) > mark:
            child, old_rank = self.journal.pop()
            parent = self.parent[child]
            self.parent[child] = child
            self.par[child] = 0
            self.rank[parent] = old_rank


def _page_components(m: int, dsu: _ParityDSU) -> tuple[int, ...]:
    """Lexicographically least 2-page assignment consistent with the DSU."""
    pages = [0] * m
    root_page: dict[int, int] = {}
    for e in range(m):
        r, p = dsu.find(e)
        if r not in root_page:
            root_page[r] = p            # lands edge e on page 1
        pages[e] = 1 + (p ^ root_page[r])
    return tuple(pages)


def _has_clique(adj: list[set[int]], e: int, k: int) -> bool:
    """Does e belong to a clique of size k+1 in the conflict graph?"""
    cands = list(adj[e])
    if len(cands) < k:
        return False

    def grow(need: int, rest: list[int]) -> bool:
        if need == 0:
            return True
        if len(rest) < need:
            return False
        for i, c in enumerate(rest):
            nxt = [d for d in rest[i + 1:] if d in adj[c]]
            if grow(need - 1, nxt):
                return True
        return False

    return grow(k, cands)


def _lex_coloring(m: int, adj: list[set[int]], k: int,
                  budget: _Budget) -> Optional[tuple[int, ...]]:
    """Lexicographically least proper k-colouring of the conflict graph."""
    colors = [0] * m
    used_hi = [0] * (m + 1)

    def rec(i: int) -> bool:
        if i == m:
            return True
        budget.spend()
        cap = min(k, used_hi[i] + 1)
        for c in range(1, cap + 1):
            if all(colors[f] != c for f in adj[i]):
                colors[i] = c
                used_hi[i + 1] = max(used_hi[i], c)
                if rec(i + 1):
                    return True
                colors[i] = 0
        return False

    if rec(0):
        return tuple(colors)
    return None


class _Search:
    def __init__(self, g: Digraph, k: int, mode: str,
                 embedding: Optional[PlaneStGraph], budget: int):
        self.g = g
        self.k = k
        self.mode = mode
        self.embedding = embedding
        self.budget = _Budget(budget)
        n, m = g.n, g.m
        self.pos = [0] * n
        self.order: list[int] = []
        self.indeg = [len(g.in_edges[v]) for v in range(n)]
        self.open_tailpos = [0] * m
        self.open_set: set[int] = set()
        self.use_dsu = k <= 2
        self.dsu = _ParityDSU(m)
        self.adj: list[set[int]] = [set() for _ in range(m)]
        if mode == "fixed":
            self.in_block = [tuple(reversed(embedding.in_edges_lr(v)))
                             for v in range(n)]
            self.out_block = [tuple(embedding.out_edges_lr(v)) for v in range(n)]
            self.pending_out = [len(g.out_edges[v]) for v in range(n)]
            # consecutive spine vertices must be adjacent or share a face of
            # the embedding (the completion's dummy edge lives in a face)
            vertex_faces: list[set[int]] = [set() for _ in range(n)]
            for f in embedding.faces:
                for x in set(f.left_path) | set(f.right_path):
                    vertex_faces[x].add(f.id)
            self.cofacial = [
                [bool(vertex_faces[u] & vertex_faces[v]) or g.has_edge(u, v)
                 for v in range(n)] for u in range(n)]
        self.result: Optional[BookEmbedding] = None

    # -- state changes, all journaled through try_place/unplace ----------

    def try_place(self, v: int) -> Optional[list]:
        """Place v; None if pruned (state already restored)."""
        g, pos = self.g, self.pos
        self.budget.spend()
        pos[v] = len(self.order) + 1
        self.order.append(v)
        journal = [self.dsu.mark(), [], []]   # dsu mark, new adj pairs, out decrs
        closed = g.in_edges[v]
        for e in closed:
            self.open_set.discard(e)
        ok = True
        for e in closed:
            if not self._close(e, journal):
                ok = False
                break
        if ok and self.mode == "fixed":
            ok = self._fixed_checks(v, journal)
        if ok:
            for e in g.out_edges[v]:
                self.open_tailpos[e] = pos[v]
                self.open_set.add(e)
            for e in g.out_edges[v]:
                self.indeg[g.edges[e][1]] -= 1
            return journal
        self._restore(v, journal)
        return None

    def unplace(self, v: int, journal: list) -> None:
        g = self.g
        for e in g.out_edges[v]:
            self.indeg[g.edges[e][1]] += 1
            self.open_set.discard(e)
        self._restore(v, journal)

    def _restore(self, v: int, journal: list) -> None:
        mark, pairs, decrs = journal
        for (a, bb) in pairs:
            self.adj[a].discard(bb)
            self.adj[bb].discard(a)
        if self.mode == "fixed":
            for u in decrs:
                self.pending_out[u] += 1
        self.dsu.rollback(mark)
        for e in self.g.in_edges[v]:
            self.open_set.add(e)
        self.order.pop()
        self.pos[v] = 0

    def _close(self, e: int, journal: list) -> bool:
        g = self.g
        pu = self.pos[g.edges[e][0]]
        pairs = journal[1]
        fresh = [f for f in self.open_set if self.open_tailpos[f] > pu]
        if not fresh:
            return True
        if self.k == 1:
            return False
        for f in fresh:
            if f not in self.adj[e]:
                self.adj[e].add(f)
                self.adj[f].add(e)
                pairs.append((e, f))
                if self.use_dsu and not self.dsu.union_diff(e, f):
                    return False
        if not self.use_dsu and _has_clique(self.adj, e, self.k):
            return False
        return True

    def _fixed_checks(self, v: int, journal: list) -> bool:
        g, pos = self.g, self.pos
        blocks = []
        if g.in_edges[v]:
            blocks.append([pos[v] - pos[g.edges[e][0]] for e in self.in_block[v]])
        decrs = journal[2]
        for e in g.in_edges[v]:
            u = g.edges[e][0]
            self.pending_out[u] -= 1
            decrs.append(u)
            if self.pending_out[u] == 0:
                blocks.append([pos[g.edges[f][1]] - pos[u]
                               for f in self.out_block[u]])
        return all(_valley_ok(sp) for sp in blocks)

    def leaf(self) -> bool:
        order = tuple(self.order)
        if self.mode == "fixed":
            got = match_pages(self.embedding, order)
            if got is None:
                return False
            self.result = got
            return True
        if self.use_dsu:
            pages = _page_components(self.g.m, self.dsu)
            self.result = BookEmbedding(self.k, order,
                                        pages if self.k == 2 else (1,) * self.g.m)
            return True
        colors = _lex_coloring(self.g.m, self.adj, self.k, self.budget)
        if colors is None:
            return False
        self.result = BookEmbedding(self.k, order, colors)
        return True

    def run(self) -> bool:
        if len(self.order) == self.g.n:
            return self.leaf()
        last = self.order[-1] if self.order else None
        for v in range(self.g.n):
            if self.pos[v] == 0 and self.indeg[v] == 0:
                if (self.mode == "fixed" and last is not None
                        and not self.cofacial[last][v]):
                    continue
                journal = self.try_place(v)
                if journal is not None:
                    if self.run():
                        self.unplace(v, journal)
                        return True
                    self.unplace(v, journal)
        return False


def _valley_ok(spans: list[int]) -> bool:
    n = len(spans)
    if n <= 1:
        return True
    hi = 1
    while hi < n and spans[hi] < spans[hi - 1]:
        hi += 1
    lo = n - 1
    while lo > 0 and spans[lo] > spans[lo - 1]:
        lo -= 1
    return lo <= hi


def solve_kube_brute(
    g: Digraph,
    k: int,
    mode: str = "variable",
    embedding: Optional[PlaneStGraph] = None,
    budget: int = DEFAULT_BUDGET,
) -> Optional[BookEmbedding]:
    """First (lexicographic) valid kUBE of g, or None if there is none.

    mode "fixed" (k = 2 only) additionally requires the canonical drawing to
    induce exactly the given embedding.  Raises BudgetExceeded when the node
    budget runs out before the search is decided.
    """
    if mode not in ("variable", "fixed"):
        raise GraphError(f"unknown mode {mode!r}")
    if mode == "fixed":
        if k != 2:
            raise GraphError("fixed-embedding solving is defined for k = 2")
        if embedding is None:
            raise GraphError("fixed mode needs the embedding")
        if embedding.g.edges != g.edges or embedding.g.n != g.n:
            raise GraphError("embedding is over a different graph")
    if g.n == 0:
        return None
    if not g.is_acyclic():
        return None
    search = _Search(g, k, mode, embedding, budget)
    if search.run():
        return search.result
    return None


def iter_2ubes(g: Digraph, budget: int = DEFAULT_BUDGET) -> Iterator[BookEmbedding]:
    """All valid 2-page upward book embeddings of g (every order and page map)."""
    if not g.is_acyclic():
        return
    budget_obj = _Budget(budget)
    n, m = g.n, g.m
    pos = [0] * n
    order: list[int] = []
    indeg = [len(g.in_edges[v]) for v in range(n)]
    open_tailpos = [0] * m
    open_set: set[int] = set()
    dsu = _ParityDSU(m)
    pairs_stack: list[list[tuple[int, int]]] = []
    adj: list[set[int]] = [set() for _ in range(m)]

    def close_all(v: int) -> bool:
        pairs: list[tuple[int, int]] = []
        pairs_stack.append(pairs)
        for e in g.in_edges[v]:
            open_set.discard(e)
        for e in g.in_edges[v]:
            pu = pos[g.edges[e][0]]
            for f in list(open_set):
                if open_tailpos[f] > pu and f not in adj[e]:
                    adj[e].add(f)
                    adj[f].add(e)
                    pairs.append((e, f))
                    if not dsu.union_diff(e, f):
                        return False
        return True

    def undo(v: int, mark: int) -> None:
        for (a, bb) in pairs_stack.pop():
            adj[a].discard(bb)
            adj[bb].discard(a)
        dsu.rollback(mark)
        for e in g.in_edges[v]:
            open_set.add(e)

    def emit() -> Iterator[BookEmbedding]:
        # enumerate all 2-colourings: free components get both choices
        roots = []
        seen = set()
        for e in range(m):
            r, _ = dsu.find(e)
            if r not in seen:
                seen.add(r)
                roots.append(r)
        for mask in range(1 << len(roots)):
            root_page = {r: (mask >> i) & 1 for i, r in enumerate(roots)}
            pages = []
            for e in range(m):
                r, p = dsu.find(e)
                pages.append(1 + (p ^ root_page[r]))
            yield BookEmbedding(2, tuple(order), tuple(pages))

    def rec() -> Iterator[BookEmbedding]:
        if len(order) == n:
            yield from emit()
            return
        for v in range(n):
            if pos[v] == 0 and indeg[v] == 0:
                budget_obj.spend()
                mark = dsu.mark()
                pos[v] = len(order) + 1
                order.append(v)
                ok = close_all(v)
                if ok:
                    for e in g.out_edges[v]:
                        open_tailpos[e] = pos[v]
                        open_set.add(e)
                        indeg[g.edges[e][1]] -= 1
                    yield from rec()
                    for e in g.out_edges[v]:
                        open_set.discard(e)
                        indeg[g.edges[e][1]] += 1
                undo(v, mark)
                order.pop()
                pos[v] = 0

    yield from rec()
