"""Betweenness-to-kUBE reduction: shell digraphs, filled shells, the
two-state gadgets, the reduction itself, structural-condition checkers, and
a brute-force Betweenness solver.

Vertex ids are assigned along the order forced by the shell structure, so
the solver's lexicographic search visits near-feasible orders first.
Vertex names follow a stable scheme ("s_2", "alpha_1_3", "lambda_1_x").
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .books import BookEmbedding, verify_kube
from .graphs import Digraph, GraphError


@dataclass(frozen=True)
class BetweennessInstance:
    elements: tuple[str, ...]
    triplets: tuple[tuple[str, str, str], ...]

    def __post_init__(self):
        for (a, b, c) in self.triplets:
            if len({a, b, c}) != 3 or not {a, b, c} <= set(self.elements):
                raise GraphError(f"bad triplet ({a},{b},{c})")

    def satisfied_by(self, tau: Sequence[str]) -> bool:
        pos = {e: i for i, e in enumerate(tau)}
        for (a, b, c) in self.triplets:
            if not (pos[a] < pos[b] < pos[c] or pos[c] < pos[b] < pos[a]):
                return False
        return True


def solve_betweenness_brute(inst: BetweennessInstance) -> Optional[tuple[str, ...]]:
    """Lexicographically least satisfying order, or None (|S| <= 10)."""
    if len(inst.elements) > 10:
        raise GraphError("brute-force Betweenness is limited to 10 elements")
    for tau in itertools.permutations(sorted(inst.elements)):
        if inst.satisfied_by(tau):
            return tau
    return None


@dataclass
class GadgetGraph:
    graph: Digraph
    k: int
    h: int
    s: int
    names: dict[str, int]
    roles: dict[int, str]           # edge index -> role
    groups: dict[int, list[int]]    # group index (-1..h) -> vertex ids
    shell_levels: dict[int, list[int]]   # level -> shell vertex ids of G_i
    gadget_levels: dict[int, dict[str, int]]  # odd level -> {u,w,x,y,z}
    triplet_edges: dict[int, list[int]]  # odd level -> edge ids
    instance: Optional[BetweennessInstance] = None

    def vid(self, name: str) -> int:
        return self.names[name]


class _GGBuilder:
    def __init__(self, k: int, h: int, s: int):
        self.k, self.h, self.s = k, h, s
        self.names: dict[str, int] = {}
        self.order: list[str] = []
        self.edges: list[tuple[int, int]] = []
        self.roles: dict[int, str] = {}

    def v(self, name: str) -> int:
        if name not in self.names:
            self.names[name] = len(self.order)
            self.order.append(name)
        return self.names[name]

    def e(self, a: str, b: str, role: str) -> int:
        i = len(self.edges)
        self.edges.append((self.v(a), self.v(b)))
        self.roles[i] = role
        return i


def _build(k: int, h: int, s: int, inst: Optional[BetweennessInstance],
           fill: bool = True, gadgets: bool = True) -> GadgetGraph:
    if h < 0 or h % 2 != 0:
        raise GraphError("shell height h must be even and nonnegative")
    if fill and s < 1:
        raise GraphError("group size s must be >= 1")
    if k < 3:
        raise GraphError("the reduction needs k >= 3")
    b = _GGBuilder(k, h, s)

    # spine-order vertex creation: top shell level first
    for i in range(h, -1, -1):
        b.v(f"s_{i}")
        b.v(f"q_{i}")
        for j in range(3, k):
            b.v(f"bundle_{i}_c{j}")
    b.v("p_-1")
    if fill:
        for j in range(s):
            b.v(f"alpha_-1_{j}")
    b.v("t_-1")
    for i in range(0, h + 1):
        b.v(f"s'_{i}")
        b.v(f"q'_{i}")
        for j in range(3, k):
            b.v(f"bundle_{i}_d{j}")
        b.v(f"t'_{i}")
        if gadgets and i % 2 == 1:
            b.v(f"lambda_{i}_u")
            for j in range(3, k):
                b.v(f"lambda_{i}_e{j}")
            b.v(f"lambda_{i}_w")
            b.v(f"lambda_{i}_x")
            b.v(f"lambda_{i}_y")
            b.v(f"lambda_{i}_z")
            for j in range(3, k):
                b.v(f"lambda_{i}_f{j}")
        b.v(f"p_{i}")
        if fill:
            for j in range(s):
                b.v(f"alpha_{i}_{j}")
        b.v(f"t_{i}")

    # shell path edges, with bundle-tail subdivisions for k > 3
    def tail_chain(i: int, nxt: str):
        prev = f"q_{i}"
        for j in range(3, k):
            b.e(prev, f"bundle_{i}_c{j}", "path")
            prev = f"bundle_{i}_c{j}"
        b.e(prev, nxt, "path")

    for i in range(h, 0, -1):
        b.e(f"s_{i}", f"q_{i}", "path")
        tail_chain(i, f"s_{i-1}")
    b.e("s_0", "q_0", "path")
    tail_chain(0, "p_-1")
    b.e("p_-1", "t_-1", "path")
    for i in range(0, h + 1):
        b.e(f"t_{i-1}", f"s'_{i}", "path")
        b.e(f"s'_{i}", f"q'_{i}", "path")
        prev = f"q'_{i}"
        for j in range(3, k):
            b.e(prev, f"bundle_{i}_d{j}", "path")
            prev = f"bundle_{i}_d{j}"
        b.e(prev, f"t'_{i}", "path")
        if gadgets and i % 2 == 1:
            # gadget replacing (t'_i, p_i)
            b.e(f"t'_{i}", f"lambda_{i}_u", "gadget")
            prev = f"lambda_{i}_u"
            for j in range(3, k):
                b.e(prev, f"lambda_{i}_e{j}", "gadget")
                prev = f"lambda_{i}_e{j}"
            b.e(prev, f"lambda_{i}_w", "gadget")
            b.e(f"lambda_{i}_w", f"lambda_{i}_x", "gadget")
            b.e(f"lambda_{i}_w", f"lambda_{i}_y", "gadget")
            b.e(f"lambda_{i}_x", f"lambda_{i}_z", "gadget")
            b.e(f"lambda_{i}_y", f"lambda_{i}_z", "gadget")
            prev = f"lambda_{i}_z"
            for j in range(3, k):
                b.e(prev, f"lambda_{i}_f{j}", "gadget")
                prev = f"lambda_{i}_f{j}"
            b.e(prev, f"p_{i}", "gadget")
            if k == 3:
                b.e(f"lambda_{i}_u", f"lambda_{i}_z", "gadget")
                b.e(f"lambda_{i}_w", f"p_{i}", "gadget")
            else:
                b.e(f"lambda_{i}_u", f"lambda_{i}_z", "bundle")
                b.e(f"lambda_{i}_w", f"p_{i}", "bundle")
                for j in range(3, k):
                    b.e(f"lambda_{i}_e{j}", f"lambda_{i}_f{j}", "bundle")
        else:
            b.e(f"t'_{i}", f"p_{i}", "path")
        # forcing pair (or its bundle), channels, closing
        if k == 3:
            b.e(f"s_{i}", f"s'_{i}", "forcing")
            b.e(f"q_{i}", f"q'_{i}", "forcing")
        else:
            b.e(f"s_{i}", f"s'_{i}", "bundle")
            b.e(f"q_{i}", f"q'_{i}", "bundle")
            for j in range(3, k):
                b.e(f"bundle_{i}_c{j}", f"bundle_{i}_d{j}", "bundle")
        b.e(f"p_{i-1}", f"t_{i}", "channel")
        b.e(f"t_{i-1}", f"p_{i}", "channel")
        b.e(f"t'_{i}", f"t_{i}", "closing")

    # groups
    if fill:
        for j in range(s):
            b.e("p_-1", f"alpha_-1_{j}", "group")
            b.e(f"alpha_-1_{j}", "t_-1", "group")
        for i in range(0, h + 1):
            for j in range(s):
                if i % 2 == 0:
                    b.e(f"p_{i}", f"alpha_{i}_{j}", "group")
                b.e(f"alpha_{i-1}_{j}", f"alpha_{i}_{j}", "group")

    triplet_edges: dict[int, list[int]] = {}
    if inst is not None:
        index = {el: j for j, el in enumerate(inst.elements)}
        for jj, (ta, tb, tc) in enumerate(inst.triplets, start=1):
            i = 2 * jj - 1
            a, bb, cc = index[ta], index[tb], index[tc]
            es = [
                b.e(f"lambda_{i}_x", f"alpha_{i}_{a}", "triplet"),
                b.e(f"lambda_{i}_x", f"alpha_{i}_{bb}", "triplet"),
                b.e(f"lambda_{i}_y", f"alpha_{i}_{bb}", "triplet"),
                b.e(f"lambda_{i}_y", f"alpha_{i}_{cc}", "triplet"),
            ]
            triplet_edges[i] = es
        for j in range(s):
            b.e(f"alpha_{h}_{j}", f"t_{h}", "sink")

    graph = Digraph(len(b.order), b.edges)
    groups = {}
    if fill:
        groups[-1] = [b.names[f"alpha_-1_{j}"] for j in range(s)]
        for i in range(0, h + 1):
            groups[i] = [b.names[f"alpha_{i}_{j}"] for j in range(s)]
    shell_levels: dict[int, list[int]] = {}
    base = [f"s_0", f"q_0", "p_-1", "t_-1", "s'_0", "q'_0", "t'_0", "p_0", "t_0"]
    shell: list[str] = []
    for i in range(0, h + 1):
        extra = [f"s_{i}", f"q_{i}", f"s'_{i}", f"q'_{i}", f"t'_{i}", f"p_{i}",
                 f"t_{i}"]
        if i == 0:
            extra = base
        shell = shell + [x for x in extra if x not in shell]
        shell_levels[i] = [b.names[x] for x in shell]
    gadget_levels = {}
    for i in (range(1, h + 1, 2) if gadgets else ()):
        gadget_levels[i] = {c: b.names[f"lambda_{i}_{c}"]
                            for c in ("u", "w", "x", "y", "z")}
        for j in range(3, k):
            gadget_levels[i][f"e{j}"] = b.names[f"lambda_{i}_e{j}"]
            gadget_levels[i][f"f{j}"] = b.names[f"lambda_{i}_f{j}"]
    return GadgetGraph(graph=graph, k=k, h=h, s=s, names=b.names,
                       roles=b.roles, groups=groups, shell_levels=shell_levels,
                       gadget_levels=gadget_levels, triplet_edges=triplet_edges,
                       instance=inst)


def build_shell(h: int, k: int = 3) -> GadgetGraph:
    """Bare shell digraph G_h (no groups, no gadgets)."""
    return _build(k, h, 0, None, fill=False, gadgets=False)


def build_filled_shell(h: int, s: int, k: int = 3) -> GadgetGraph:
    """Filled shell H_{h,s}: h+2 groups of s vertices, no gadgets."""
    return _build(k, h, s, None, fill=True, gadgets=False)


def build_lambda_filled(h: int, s: int, k: int = 3) -> GadgetGraph:
    """Lambda-filled shell: gadgets replace (t'_i, p_i) for odd i."""
    return _build(k, h, s, None, fill=True, gadgets=True)


def reduce_betweenness(inst: BetweennessInstance, k: int = 3) -> GadgetGraph:
    if len(inst.triplets) < 1:
        raise GraphError("need at least one triplet")
    if len(inst.elements) < 3:
        raise GraphError("need at least three elements")
    gg = _build(k, 2 * len(inst.triplets), len(inst.elements), inst)
    srcs, sinks = gg.graph.sources(), gg.graph.sinks()
    if srcs != [gg.vid(f"s_{gg.h}")] or sinks != [gg.vid(f"t_{gg.h}")]:
        raise GraphError("reduced graph is not an st-graph")
    return gg


def reduce_betweenness_json(data: dict, k: int = 3) -> GadgetGraph:
    inst = BetweennessInstance(tuple(str(x) for x in data["S"]),
                               tuple(tuple(str(x) for x in t) for t in data["R"]))
    return reduce_betweenness(inst, k)


def check_structural_conditions(gg: GadgetGraph,
                                be: BookEmbedding) -> dict[str, bool]:
    """Pass/fail for the shell, filling, and gadget conditions (k = 3)."""
    rep = verify_kube(gg.graph, be)
    if not rep.ok:
        raise GraphError("not a valid book embedding: " + "; ".join(rep.problems))
    pos = be.position
    out: dict[str, bool] = {}
    name = gg.names

    def channel_edges(i: int) -> list[int]:
        want = {(name[f"p_{i-1}"], name[f"t_{i}"]),
                (name[f"t_{i-1}"], name[f"p_{i}"])}
        return [e for e, r in gg.roles.items()
                if r == "channel" and gg.graph.edges[e] in want]

    for i in range(0, gg.h + 1):
        lo, hi = pos[name[f"s_{i}"]], pos[name[f"t_{i}"]]
        out[f"S1[{i}]"] = all(lo <= pos[v] <= hi for v in gg.shell_levels[i])
        ch = channel_edges(i)
        out[f"S2[{i}]"] = len({be.pages[e] for e in ch}) == 1
        if i > 0:
            prev = channel_edges(i - 1)
            out[f"S3[{i}]"] = ({be.pages[e] for e in ch}
                               != {be.pages[e] for e in prev})
    for i in sorted(gg.groups):
        lo, hi = pos[name[f"p_{i}"]], pos[name[f"t_{i}"]]
        out[f"F1[{i}]"] = all(lo < pos[v] < hi for v in gg.groups[i])
        if i >= 0:
            prevg = gg.groups[i - 1]
            ranks_prev = sorted(range(len(prevg)), key=lambda j: pos[prevg[j]])
            ranks_cur = sorted(range(len(gg.groups[i])),
                               key=lambda j: pos[gg.groups[i][j]])
            out[f"F2[{i}]"] = ranks_cur == list(reversed(ranks_prev))
            chain = [e for e, r in gg.roles.items() if r == "group"
                     and gg.graph.edges[e][0] in prevg
                     and gg.graph.edges[e][1] in gg.groups[i]]
            chpage = {be.pages[e] for e in channel_edges(i)}
            out[f"F3[{i}]"] = {be.pages[e] for e in chain} == chpage
    for i in sorted(gg.gadget_levels):
        d = gg.gadget_levels[i]
        lo, hi = pos[name[f"t'_{i}"]], pos[name[f"p_{i}"]]
        out[f"G1[{i}]"] = all(lo < pos[v] < hi for v in d.values())
        out[f"G2[{i}]"] = (pos[d["w"]] < pos[d["x"]] < pos[d["z"]]
                           and pos[d["w"]] < pos[d["y"]] < pos[d["z"]])
    return out


def construct_3ube_from_witness(inst: BetweennessInstance,
                                tau: Sequence[str]) -> tuple[GadgetGraph, BookEmbedding]:
    """The 3UBE of the reduced graph determined by a satisfying order."""
    if not inst.satisfied_by(tau):
        raise GraphError("order does not satisfy the instance")
    gg = reduce_betweenness(inst, 3)
    name = gg.names
    h, s = gg.h, gg.s
    index = {el: j for j, el in enumerate(inst.elements)}
    tau_idx = [index[el] for el in tau]           # group-index order = tau
    rev_idx = list(reversed(tau_idx))
    tau_pos = {el: i for i, el in enumerate(tau)}

    def group_order(i: int) -> list[int]:
        idxs = tau_idx if (i % 2 != 0) else rev_idx   # odd groups follow tau
        return [name[f"alpha_{i}_{j}"] for j in idxs]

    # gadget orientation per encoded triplet
    flip: dict[int, bool] = {}
    for jj, (a, b, c) in enumerate(inst.triplets, start=1):
        i = 2 * jj - 1
        flip[i] = not (tau_pos[a] < tau_pos[b] < tau_pos[c])  # x first if reversed

    order: list[int] = []
    for i in range(h, -1, -1):
        order += [name[f"s_{i}"], name[f"q_{i}"]]
    order.append(name["p_-1"])
    order += group_order(-1)
    order.append(name["t_-1"])
    for i in range(0, h + 1):
        order += [name[f"s'_{i}"], name[f"q'_{i}"], name[f"t'_{i}"]]
        if i % 2 == 1:
            d = gg.gadget_levels[i]
            mids = [d["x"], d["y"]] if flip[i] else [d["y"], d["x"]]
            order += [d["u"], d["w"]] + mids + [d["z"]]
        order.append(name[f"p_{i}"])
        order += group_order(i)
        order.append(name[f"t_{i}"])

    pages = [0] * gg.graph.m
    edges = gg.graph.edges
    posn = {v: i for i, v in enumerate(order)}

    def C(i: int) -> int:
        return 1 if i % 2 == 0 else 2

    second_mid = {i: (gg.gadget_levels[i]["y"] if flip[i]
                      else gg.gadget_levels[i]["x"])
                  for i in flip}
    for e, role in gg.roles.items():
        u, v = edges[e]
        if role == "path":
            pages[e] = 2 if (u, v) == (name["p_-1"], name["t_-1"]) else 1
        elif role == "channel":
            i = next(i for i in range(0, h + 1)
                     if v in (name[f"t_{i}"], name[f"p_{i}"]))
            pages[e] = C(i)
        elif role == "closing":
            # conflicts the channels of both adjacent levels (pages 1 and 2)
            pages[e] = 3
        elif role == "forcing":
            i = next(i for i in range(0, h + 1) if u == name[f"s_{i}"]
                     or u == name[f"q_{i}"])
            lowpage, highpage = (2, 3) if i % 2 == 0 else (1, 3)
            pages[e] = lowpage if u == name[f"s_{i}"] else highpage
        elif role == "gadget":
            i = next(i for i in gg.gadget_levels
                     if u in gg.gadget_levels[i].values()
                     or u == name[f"t'_{i}"])
            d = gg.gadget_levels[i]
            if (u, v) == (d["w"], name[f"p_{i}"]):
                pages[e] = 2
            elif u == d["w"] and v == second_mid[i]:
                pages[e] = 2
            else:
                pages[e] = 1
        elif role == "group":
            if v == name["t_-1"]:
                pages[e] = 3
            elif u == name["p_-1"]:
                pages[e] = 2
            elif any(u == name[f"p_{i}"] for i in range(0, h + 1, 2)):
                # conflicts chains entering (page C(i)) and leaving (C(i+1))
                pages[e] = 3
            else:
                i = next(i for i in range(0, h + 1)
                         if v in gg.groups.get(i, ()))
                pages[e] = C(i)                      # chain edges
        elif role == "triplet":
            pages[e] = 3
        elif role == "sink":
            pages[e] = 2
        else:
            raise GraphError(f"unexpected role {role} in a k=3 gadget")
    be = BookEmbedding(3, tuple(order), tuple(pages))
    rep = verify_kube(gg.graph, be)
    if not rep.ok:
        raise GraphError("constructed witness invalid: " + "; ".join(rep.problems))
    return gg, be
