"""Full decoders and their combination with the lazy pre-decoder.

Two interchangeable fallback decoders operate on the same decoding graph:

* Union-Find: grow clusters around defects in half-edge increments, merge on
  contact, stop when every cluster has even parity or touches the boundary,
  then peel a spanning forest to read off the correction.
* Minimum-weight perfect matching: shortest defect-to-defect paths by
  Dijkstra, a virtual boundary node per defect, and an exact maximum-weight
  matching on the complete defect graph.

``hierarchical_decode`` tries the lazy pre-decoder first and only hands the
syndrome to the fallback when the pre-decoder reports failure.
"""

from __future__ import annotations

import enum
import heapq
import itertools
import math
from typing import NamedTuple

import networkx as nx

from .graph import DecodingGraph, Syndrome, Vertex
from .lazy import LazyOutcome, lazy_decode


class DecoderKind(enum.Enum):
    LAZY = "lazy"
    UNION_FIND = "uf"
    MWPM = "mwpm"
    LAZY_UNION_FIND = "lazy+uf"
    LAZY_MWPM = "lazy+mwpm"


class DecodeRecord(NamedTuple):
    """Result of one decode call: edge ids of the correction, whether the
    fallback ran, and the pre-decoder's outcome when one was used."""

    correction: frozenset[int]
    used_fallback: bool = False
    lazy_outcome: LazyOutcome | None = None


# --- Union-Find ------------------------------------------------------------

# A virtual node absorbing every half-edge; clusters containing it are always
# satisfied regardless of parity.
_BOUNDARY = ("boundary", -1)


class _Dsu:
    __slots__ = ("parent", "rank")

    def __init__(self):
        self.parent: dict = {}
        self.rank: dict = {}

    def find(self, x):
        parent = self.parent
        root = x
        while parent.setdefault(root, root) != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank.setdefault(ra, 0) < self.rank.setdefault(rb, 0):
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def uf_decode(graph: DecodingGraph, syndrome: Syndrome) -> frozenset[int]:
    """Union-Find decoding: returns edge ids whose incidence XOR reproduces
    the syndrome.  Raises if a component has odd parity and no boundary."""
    defects = syndrome.defects
    if not defects:
        return frozenset()

    dsu = _Dsu()
    parity: dict = {}
    members: dict = {}
    for v in defects:
        r = dsu.find(v)
        parity[r] = 1
        members[r] = {v}

    growth: dict[int, int] = {}
    grown: set[int] = set()

    def incident(v: Vertex):
        for u, eid in graph.neighbors.get(v, ()):
            yield eid, u
        heid = graph.half_edge_id.get(v)
        if heid is not None:
            yield heid, _BOUNDARY

    def satisfied(root) -> bool:
        return parity.get(root, 0) % 2 == 0 or dsu.find(_BOUNDARY) == root

    active = set(parity)
    while True:
        active = {dsu.find(r) for r in active}
        active = {r for r in active if not satisfied(r)}
        if not active:
            break
        # Grow every frontier edge of every unsatisfied cluster by half an
        # edge length, collecting the ones that become fully grown.
        newly_full: list[tuple[int, Vertex, Vertex | tuple]] = []
        progressed = False
        for r in active:
            for v in members[r]:
                for eid, u in incident(v):
                    if eid in grown:
                        continue
                    progressed = True
                    g = growth.get(eid, 0) + 1
                    growth[eid] = g
                    if g >= 2:
                        grown.add(eid)
                        newly_full.append((eid, v, u))
        for eid, v, u in newly_full:
            ra, rb = dsu.find(v), dsu.find(u)
            if ra == rb:
                continue
            pab = parity.get(ra, 0) + parity.get(rb, 0)
            mab = members.pop(ra, set()) | members.pop(rb, set())
            dsu.union(ra, rb)
            root = dsu.find(ra)
            parity[root] = pab
            mab.add(v)
            if u != _BOUNDARY:
                mab.add(u)
            members[root] = mab
        if not progressed and active:
            # No edge can grow further: odd cluster in a boundaryless graph.
            raise ValueError("odd defect cluster with no boundary to absorb it")

    return _peel(graph, defects, grown)


def _peel(graph: DecodingGraph, defects: frozenset[Vertex], grown: set[int]) -> frozenset[int]:
    """Peel a spanning forest of the grown edges, leaves first, flipping an
    edge whenever the leaf below it carries unresolved defect parity."""
    adj: dict = {}
    for eid in grown:
        e = graph.edge(eid)
        u = e.v if e.v is not None else _BOUNDARY
        adj.setdefault(e.u, []).append((u, eid))
        adj.setdefault(u, []).append((e.u, eid))

    visited: set = set()
    correction: set[int] = set()
    flip = {v: (v in defects) for v in adj}
    # Root every tree at the boundary when it is present so leftover parity
    # can drain into it.
    roots = ([_BOUNDARY] if _BOUNDARY in adj else []) + sorted(
        v for v in adj if v != _BOUNDARY
    )
    for root in roots:
        if root in visited:
            continue
        order: list[tuple] = []
        parent_edge: dict = {root: None}
        visited.add(root)
        stack = [root]
        while stack:
            v = stack.pop()
            order.append(v)
            for u, eid in adj[v]:
                if u not in visited:
                    visited.add(u)
                    parent_edge[u] = (v, eid)
                    stack.append(u)
        for v in reversed(order):
            if v == _BOUNDARY or not flip[v]:
                continue
            pe = parent_edge[v]
            if pe is None:
                raise ValueError("unresolved defect parity at a tree root")
            parent, eid = pe
            correction.symmetric_difference_update({eid})
            if parent != _BOUNDARY:
                flip[parent] = not flip[parent]
            flip[v] = False
    return frozenset(correction)


# --- minimum-weight perfect matching ---------------------------------------


def _dijkstra(graph: DecodingGraph, source: Vertex):
    """Distances and predecessor edges from one vertex over weighted edges."""
    dist = {source: 0.0}
    pred: dict[Vertex, tuple[Vertex, int]] = {}
    heap = [(0.0, source)]
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist.get(v, math.inf):
            continue
        for u, eid in graph.neighbors.get(v, ()):
            nd = d + graph.edges[eid].weight
            if nd < dist.get(u, math.inf):
                dist[u] = nd
                pred[u] = (v, eid)
                heapq.heappush(heap, (nd, u))
    return dist, pred


def _walk(pred, source: Vertex, target: Vertex) -> list[int]:
    path = []
    v = target
    while v != source:
        v, eid = pred[v]
        path.append(eid)
    return path


def mwpm_decode(graph: DecodingGraph, syndrome: Syndrome) -> frozenset[int]:
    """Exact minimum-weight matching of the defects, with a virtual boundary
    partner per defect when the graph has half-edges."""
    return _mwpm(graph, syndrome)[0]


def mwpm_matching_weight(graph: DecodingGraph, syndrome: Syndrome) -> float:
    """Total path weight of the optimal matching (before path cancellation)."""
    return _mwpm(graph, syndrome)[1]


def _mwpm(graph: DecodingGraph, syndrome: Syndrome) -> tuple[frozenset[int], float]:
    defects = sorted(syndrome.defects)
    n = len(defects)
    if n == 0:
        return frozenset(), 0.0
    has_boundary = bool(graph.half_edge_id)
    if n % 2 == 1 and not has_boundary:
        raise ValueError("odd defect count in a graph without boundary")

    dists, preds, bpartner = [], [], []
    for v in defects:
        dist, pred = _dijkstra(graph, v)
        dists.append(dist)
        preds.append(pred)
        best = None
        for hv, heid in graph.half_edge_id.items():
            dv = dist.get(hv)
            if dv is None:
                continue
            total = dv + graph.half_edges[heid - len(graph.edges)].weight
            if best is None or total < best[0]:
                best = (total, hv, heid)
        bpartner.append(best)

    g = nx.Graph()
    # Large constant turning minimum weight into maximum weight; strictly
    # larger than any simple path cost.
    total_w = sum(e.weight for e in graph.edges) + sum(e.weight for e in graph.half_edges)
    big = total_w + 1.0
    for i, j in itertools.combinations(range(n), 2):
        dij = dists[i].get(defects[j])
        if dij is not None:
            g.add_edge(("d", i), ("d", j), weight=big - dij)
    if has_boundary:
        for i in range(n):
            if bpartner[i] is not None:
                g.add_edge(("d", i), ("b", i), weight=big - bpartner[i][0])
        for i, j in itertools.combinations(range(n), 2):
            g.add_edge(("b", i), ("b", j), weight=big)

    matching = nx.max_weight_matching(g, maxcardinality=True)
    paired = dict(matching) | {b: a for a, b in matching}
    if any(("d", i) not in paired for i in range(n)):
        raise ValueError("defects could not be perfectly matched")

    correction: set[int] = set()
    total = 0.0
    for i in range(n):
        mate = paired[("d", i)]
        if mate[0] == "d":
            j = mate[1]
            if j < i:
                continue
            total += dists[i][defects[j]]
            correction.symmetric_difference_update(_walk(preds[i], defects[i], defects[j]))
        else:
            total += bpartner[i][0]
            _, hv, heid = bpartner[i]
            correction.symmetric_difference_update(_walk(preds[i], defects[i], hv))
            correction.symmetric_difference_update({heid})
    return frozenset(correction), total


# --- composition ------------------------------------------------------------

_FALLBACKS = {
    DecoderKind.UNION_FIND: uf_decode,
    DecoderKind.MWPM: mwpm_decode,
}


def hierarchical_decode(
    graph: DecodingGraph,
    syndrome: Syndrome,
    fallback: DecoderKind = DecoderKind.UNION_FIND,
) -> DecodeRecord:
    """Lazy pre-decoder first; on failure the whole original syndrome goes to
    the fallback decoder."""
    outcome = lazy_decode(graph, syndrome)
    if outcome.success:
        return DecodeRecord(outcome.correction, False, outcome)
    correction = _FALLBACKS[fallback](graph, syndrome)
    return DecodeRecord(correction, True, outcome)


def decode(graph: DecodingGraph, syndrome: Syndrome, kind: DecoderKind) -> DecodeRecord:
    """Run one decoder configuration on a syndrome."""
    if kind is DecoderKind.LAZY:
        outcome = lazy_decode(graph, syndrome)
        if not outcome.success:
            raise ValueError(f"lazy decoder failed without a fallback: {outcome.failure}")
        return DecodeRecord(outcome.correction, False, outcome)
    if kind is DecoderKind.UNION_FIND:
        return DecodeRecord(uf_decode(graph, syndrome))
    if kind is DecoderKind.MWPM:
        return DecodeRecord(mwpm_decode(graph, syndrome))
    fb = DecoderKind.UNION_FIND if kind is DecoderKind.LAZY_UNION_FIND else DecoderKind.MWPM
    return hierarchical_decode(graph, syndrome, fb)
