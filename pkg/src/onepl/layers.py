"""BFS layering of the radial planarization and the bounded-depth windows built from it.

Layers are 1-based: layer 1 holds the BFS root, layer ``j`` the vertices at
distance ``j - 1``.  ``within[j]`` are the edges inside layer ``j`` and
``between[j]`` the edges joining layer ``j`` to layer ``j + 1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import InternalInvariantError, OnePlaneError
from .planar import ORIGINAL, PlanarGraph

__all__ = [
    "BfsLayering",
    "AuxEdges",
    "WindowGraph",
    "bfs_layering",
    "build_upper_sets",
    "build_lower_sets",
    "build_aux",
    "window_indices",
    "assemble_window",
    "augment_window",
    "eccentricity",
]


@dataclass
class BfsLayering:
    graph: PlanarGraph
    root: int
    layer: list[int]
    parent: list[int]
    layers: list[list[int]]  # layers[0] is empty; layers[1..d]
    within: list[list[int]]  # edge ids inside layer j
    between: list[list[int]]  # edge ids joining layer j and j + 1

    @property
    def depth(self) -> int:
        return len(self.layers) - 1

    def layer_vertices(self, j: int) -> list[int]:
        if 1 <= j <= self.depth:
            return self.layers[j]
        return []


@dataclass
class AuxEdges:
    upper: list[list[tuple[int, int]]]  # U_j, star at the lowest-id vertex of layer j
    lower: list[list[tuple[int, int]]]  # L_j, simple edge set inside layer j

    def total(self) -> int:
        return sum(map(len, self.upper)) + sum(map(len, self.lower))


@dataclass
class WindowGraph:
    """A window of consecutive layers with local vertex ids ``0..n-1``."""

    index: int
    width: int
    vertices: list[int]  # local -> global
    local: dict[int, int]  # global -> local
    layer: list[int]
    kinds: list[int]
    center: int
    adj: list[set[int]]
    edges: list[tuple[int, int, str]]  # tags: "lam", "U", "L", "G"
    plus: bool = False
    # window+ only: local dummy -> its crossing endpoints inside the window
    dummy_ends: dict[int, list[int]] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def is_g_vertex(self, v: int) -> bool:
        return self.kinds[v] == ORIGINAL

    def x_allowed(self, v: int) -> bool:
        """Whether the local vertex lies in the layers that may hold separator vertices."""
        return self.index + 1 <= self.layer[v] <= self.index + self.width - 2

    def simple_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]


# ---------------------------------------------------------------------------
# Layering
# ---------------------------------------------------------------------------


def bfs_layering(lg: PlanarGraph, root: int = 0) -> BfsLayering:
    nv = lg.num_vertices
    layer = [0] * nv
    parent = [-1] * nv
    layer[root] = 1
    order = [root]
    q = deque([root])
    edges = lg.edges
    rots = lg.rotations
    while q:
        u = q.popleft()
        lu = layer[u] + 1
        for dart in rots[u]:
            a, b = edges[dart >> 1]
            w = a if dart & 1 else b
            if not layer[w]:
                layer[w] = lu
                parent[w] = u
                order.append(w)
                q.append(w)
    if len(order) != nv:
        raise OnePlaneError(f"radial planarization is disconnected ({len(order)} of {nv} reached)")
    d = layer[order[-1]]
    layers: list[list[int]] = [[] for _ in range(d + 1)]
    for v in sorted(range(nv), key=layer.__getitem__):
        layers[layer[v]].append(v)
    for lst in layers:
        lst.sort()
    within: list[list[int]] = [[] for _ in range(d + 1)]
    between: list[list[int]] = [[] for _ in range(d + 1)]
    for eid, (a, b) in enumerate(edges):
        la, lb = layer[a], layer[b]
        if la == lb:
            within[la].append(eid)
        elif abs(la - lb) == 1:
            between[min(la, lb)].append(eid)
        else:
            raise InternalInvariantError(f"edge {eid} spans layers {la} and {lb}")
    return BfsLayering(lg, root, layer, parent, layers, within, between)


def build_upper_sets(bl: BfsLayering) -> list[list[tuple[int, int]]]:
    """U_j: a star joining the lowest-id vertex of layer j to the rest of the layer."""
    upper: list[list[tuple[int, int]]] = [[] for _ in range(bl.depth + 1)]
    for j in range(1, bl.depth + 1):
        vs = bl.layers[j]
        if len(vs) > 1:
            r = vs[0]
            upper[j] = [(r, v) for v in vs[1:]]
    return upper


def _simplify(pairs) -> list[tuple[int, int]]:
    seen = set()
    out = []
    for u, v in pairs:
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out


def build_lower_sets(bl: BfsLayering) -> list[list[tuple[int, int]]]:
    """L_j by contracting deeper layers into their BFS parents, bottom-up with simplification."""
    d = bl.depth
    edges = bl.graph.edges
    layer, parent = bl.layer, bl.parent
    lower: list[list[tuple[int, int]]] = [[] for _ in range(d + 2)]
    for j in range(d, 0, -1):
        hat: list[tuple[int, int]] = [edges[e] for e in bl.within[j]]
        for e in bl.between[j]:
            a, b = edges[e]
            if layer[a] == j:
                hat.append((a, parent[b]))
            else:
                hat.append((b, parent[a]))
        for a, b in lower[j + 1]:
            hat.append((parent[a], parent[b]))
        lower[j] = _simplify(hat)
    return lower[: d + 1]


def build_aux(bl: BfsLayering) -> AuxEdges:
    return AuxEdges(build_upper_sets(bl), build_lower_sets(bl))


# ---------------------------------------------------------------------------
# Windows
# ---------------------------------------------------------------------------


def window_indices(bl: BfsLayering, w: int) -> range:
    """Window start indices; a single window 0 when the layering is shallow."""
    return range(0, max(0, bl.depth - w + 2) + 1)


def eccentricity(adj: list[set[int]], src: int) -> int:
    dist = {src: 0}
    q = deque([src])
    far = 0
    while q:
        u = q.popleft()
        du = dist[u]
        for v in adj[u]:
            if v not in dist:
                dist[v] = du + 1
                far = du + 1
                q.append(v)
    if len(dist) != len(adj):
        return -1
    return far


def assemble_window(bl: BfsLayering, aux: AuxEdges, i: int, w: int, check: bool = True,
                    check_planar: bool = False) -> WindowGraph:
    """Window ``i``: layers ``i-1 .. i+w`` with U_{i-1} on top and L_{i+w} at the bottom."""
    if i < 0 or w < 1:
        raise ValueError("window index must be >= 0 and width >= 1")
    d = bl.depth
    lo, hi = max(1, i - 1), min(d, i + w)
    g = bl.graph
    vertices: list[int] = []
    for j in range(lo, hi + 1):
        vertices.extend(bl.layers[j])
    local = {v: k for k, v in enumerate(vertices)}
    layer = [bl.layer[v] for v in vertices]
    kinds = [g.kinds[v] for v in vertices]
    adj: list[set[int]] = [set() for _ in vertices]
    wedges: list[tuple[int, int, str]] = []

    def add(a: int, b: int, tag: str) -> None:
        la, lb = local[a], local[b]
        if la == lb:
            return
        adj[la].add(lb)
        adj[lb].add(la)
        wedges.append((la, lb, tag))

    if i - 1 >= 1:
        for a, b in aux.upper[i - 1]:
            add(a, b, "U")
    for j in range(max(1, i - 1), min(d, i + w - 1) + 1):
        for e in bl.between[j]:
            a, b = g.edges[e]
            add(a, b, "lam")
    for j in range(max(1, i), min(d, i + w - 1) + 1):
        for e in bl.within[j]:
            a, b = g.edges[e]
            add(a, b, "lam")
    if i + w <= d:
        for a, b in aux.lower[i + w]:
            add(a, b, "L")

    if i >= 2:
        center = local[bl.layers[i - 1][0]]
    else:
        center = local[bl.root]
    win = WindowGraph(i, w, vertices, local, layer, kinds, center, adj, wedges)
    if check:
        ecc = eccentricity(adj, center)
        if ecc < 0 or ecc > w + 2:
            raise InternalInvariantError(
                f"window {i}: centre eccentricity {ecc} violates radius bound {w + 2}")
    if check_planar:
        from .tdecomp import window_embedding

        if window_embedding(win) is None:
            raise InternalInvariantError(f"window {i} is not planar")
    return win


def augment_window(win: WindowGraph, crossed: dict[int, tuple[int, int, int]]) -> WindowGraph:
    """Add every crossed G-edge whose two endpoints and dummy all lie in the window."""
    adj = [set(s) for s in win.adj]
    edges = list(win.edges)
    local = win.local
    ends: dict[int, list[int]] = {}
    for u, v, c in crossed.values():
        if c in local:
            lst = ends.setdefault(local[c], [])
            lst.extend(local[x] for x in (u, v) if x in local)
        if u in local and v in local and c in local:
            a, b = local[u], local[v]
            if b not in adj[a]:
                adj[a].add(b)
                adj[b].add(a)
            edges.append((a, b, "G"))
    return WindowGraph(win.index, win.width, win.vertices, win.local, win.layer, win.kinds,
                       win.center, adj, edges, plus=True,
                       dummy_ends={c: sorted(set(xs)) for c, xs in ends.items()})
