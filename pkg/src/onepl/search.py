"""Co-separating triples on windows and the layered vertex-connectivity algorithm.

A labelling of a window+ into ``A``, ``X`` and ``B`` is co-separating for
``k`` when separator vertices lie only in the allowed layers, exactly ``k``
original vertices carry ``X``, both ``A`` and ``B`` contain an original
vertex, and no window+ edge joins ``A`` to ``B``.  ``X`` restricted to the
original graph is then a separating set of it.
"""

from __future__ import annotations

import enum
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .embed import OnePlaneEmbedding, add_kite_edges, find_x_crossing, require_valid
from .errors import InternalInvariantError, WidthBlowupError, XCrossingError
from .layers import (
    WindowGraph,
    assemble_window,
    augment_window,
    bfs_layering,
    build_aux,
    window_indices,
)
from .planar import ORIGINAL, crossed_edge_map, radial_planarization
from .tdecomp import (
    FORGET,
    INTRODUCE,
    JOIN,
    LEAF,
    NiceTreeDecomposition,
    TreeDecomposition,
    augment_decomposition,
    make_nice,
    min_degree_decomposition,
    tree_decompose,
)

__all__ = [
    "Label",
    "CoSepAssignment",
    "KappaResult",
    "COMPLETE",
    "DEFAULT_CEILING",
    "MAX_K",
    "window_width",
    "check_cosep",
    "find_cosep",
    "kappa",
    "verify_separator",
]

DEFAULT_CEILING = 22
MAX_K = 7


class Label(enum.IntEnum):
    A = 0
    X = 1
    B = 2


@dataclass
class CoSepAssignment:
    window: WindowGraph
    labels: list[Label]

    def _select(self, lab: Label) -> list[int]:
        return [v for v, x in enumerate(self.labels) if x == lab]

    @property
    def A(self) -> list[int]:
        return self._select(Label.A)

    @property
    def X(self) -> list[int]:
        return self._select(Label.X)

    @property
    def B(self) -> list[int]:
        return self._select(Label.B)

    def separator(self) -> list[int]:
        """Original-graph vertices labelled X (global ids)."""
        win = self.window
        return sorted(win.vertices[v] for v in self.X if win.kinds[v] == ORIGINAL)


class _Complete:
    def __repr__(self) -> str:
        return "COMPLETE"


COMPLETE = _Complete()


@dataclass
class KappaResult:
    kappa: int
    witness: object  # sorted vertex list, or COMPLETE
    stats: dict = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return self.witness is COMPLETE


def window_width(k: int) -> int:
    return 4 * k + 2


# ---------------------------------------------------------------------------
# Conditions
# ---------------------------------------------------------------------------


def check_cosep(wp: WindowGraph, labels, k: int) -> bool:
    """Whether ``labels`` is a co-separating assignment of ``wp`` with exactly ``k`` separator vertices."""
    if len(labels) != wp.n:
        return False
    count = 0
    has_a = has_b = False
    for v, lab in enumerate(labels):
        g = wp.kinds[v] == ORIGINAL
        if lab == Label.X:
            if not wp.x_allowed(v):
                return False
            count += g
        elif lab == Label.A:
            has_a |= g
        elif lab == Label.B:
            has_b |= g
        else:
            return False
    if count != k or not (has_a and has_b):
        return False
    for u in range(wp.n):
        if labels[u] == Label.A and any(labels[v] == Label.B for v in wp.adj[u]):
            return False
    return True


# ---------------------------------------------------------------------------
# Reduction used by the pruned search
# ---------------------------------------------------------------------------


@dataclass
class _Reduced:
    """Window+ with forced labels folded in.

    ``image[v]`` is the reduced vertex of window vertex ``v`` or ``-1`` when
    ``v`` is forced to X.  Each reduced vertex is a free original vertex of the
    separator layers or a connected group of vertices outside them.
    """

    image: list[int]
    adj: list[set[int]]
    is_g: list[bool]
    can_x: list[bool]


def _reduce(wp: WindowGraph) -> _Reduced:
    n = wp.n
    image = [-1] * n
    is_g: list[bool] = []
    can_x: list[bool] = []
    allowed = [wp.x_allowed(v) for v in range(n)]
    for v in range(n):
        if allowed[v] and wp.kinds[v] == ORIGINAL:
            image[v] = len(is_g)
            is_g.append(True)
            can_x.append(True)
    for s in range(n):
        if allowed[s] or image[s] >= 0:
            continue
        rid = len(is_g)
        g = False
        image[s] = rid
        q = deque([s])
        while q:
            u = q.popleft()
            g |= wp.kinds[u] == ORIGINAL
            for x in wp.adj[u]:
                if not allowed[x] and image[x] < 0:
                    image[x] = rid
                    q.append(x)
        is_g.append(g)
        can_x.append(False)
    adj: list[set[int]] = [set() for _ in is_g]
    for u in range(n):
        a = image[u]
        if a < 0:
            continue
        for v in wp.adj[u]:
            b = image[v]
            if b >= 0 and b != a:
                adj[a].add(b)
    return _Reduced(image, adj, is_g, can_x)


def _map_decomposition(t: TreeDecomposition, image: list[int]) -> TreeDecomposition:
    from .tdecomp import _compress

    bags = [frozenset(image[v] for v in b if image[v] >= 0) for b in t.bags]
    return _compress(TreeDecomposition(bags, [list(nb) for nb in t.tree], t.method))


# ---------------------------------------------------------------------------
# Dynamic program
# ---------------------------------------------------------------------------


def _run_dp(nice: NiceTreeDecomposition, nbr: list[int], is_g: list[bool], can_x: list[bool],
            k: int):
    """Bottom-up over the nice decomposition; returns (tables, accepting root key) or None.

    A state is ``(amask, bmask, count, flags)`` over the current bag, where
    ``count`` is the number of original X vertices seen so far and ``flags``
    records whether A (bit 0) and B (bit 1) already hold an original vertex.
    Tables map a state to its back-pointer.
    """
    gmask = 0
    for v, g in enumerate(is_g):
        if g:
            gmask |= 1 << v
    tables: list[dict | None] = [None] * len(nice)
    for t, kind in enumerate(nice.kinds):
        if kind == LEAF:
            tab = {(0, 0, 0, 0): None}
        elif kind == INTRODUCE:
            v = nice.vertex[t]
            bit = 1 << v
            nv = nbr[v]
            ga, gb = (1, 2) if is_g[v] else (0, 0)
            xok = can_x[v]
            xinc = 1 if is_g[v] else 0
            tab = {}
            for key in tables[nice.children[t][0]]:
                a, b, c, f = key
                if not b & nv:
                    tab.setdefault((a | bit, b, c, f | ga), key)
                if not a & nv:
                    tab.setdefault((a, b | bit, c, f | gb), key)
                if xok and c + xinc <= k:
                    tab.setdefault((a, b, c + xinc, f), key)
        elif kind == FORGET:
            keep = ~(1 << nice.vertex[t])
            tab = {}
            for key in tables[nice.children[t][0]]:
                a, b, c, f = key
                tab.setdefault((a & keep, b & keep, c, f), key)
        elif kind == JOIN:
            left, right = tables[nice.children[t][0]], tables[nice.children[t][1]]
            bag_mask = 0
            for v in nice.bags[t]:
                bag_mask |= 1 << v
            by_ab: dict[tuple[int, int], list] = {}
            for key in right:
                by_ab.setdefault((key[0], key[1]), []).append(key)
            tab = {}
            for lk in left:
                a, b, cl, fl = lk
                rs = by_ab.get((a, b))
                if not rs:
                    continue
                cb = bin(bag_mask & ~(a | b) & gmask).count("1")
                for rk in rs:
                    c = cl + rk[2] - cb
                    if c <= k:
                        tab.setdefault((a, b, c, fl | rk[3]), (lk, rk))
        else:
            raise InternalInvariantError(f"unknown nice node kind {kind!r}")
        tables[t] = tab
        if not tab:
            return None
    root = nice.root
    for key in tables[root]:
        a, b, c, f = key
        if c == k and f == 3 and not a and not b:
            return tables, key
    return None


def _trace(nice: NiceTreeDecomposition, tables, key) -> dict[int, Label]:
    labels: dict[int, Label] = {}
    stack = [(nice.root, key)]
    while stack:
        t, key = stack.pop()
        kind = nice.kinds[t]
        back = tables[t][key]
        if kind == INTRODUCE:
            v = nice.vertex[t]
            a, b = key[0], key[1]
            bit = 1 << v
            labels[v] = Label.A if a & bit else Label.B if b & bit else Label.X
            stack.append((nice.children[t][0], back))
        elif kind == FORGET:
            stack.append((nice.children[t][0], back))
        elif kind == JOIN:
            stack.append((nice.children[t][0], back[0]))
            stack.append((nice.children[t][1], back[1]))
    return labels


def _merge_blocks(blocks, extra, vmask: int):
    """Common coarsening of two partitions of the same vertices (blocks are int masks).

    One pass suffices: the accumulated blocks stay pairwise disjoint, so a
    block of ``extra`` can only touch the ones it overlaps directly.  The
    flag bit never decides overlap because both sides mask it off.
    """
    out = list(blocks)
    for m in extra:
        keep = []
        for bm in out:
            if bm & m & vmask:
                m |= bm
            else:
                keep.append(bm)
        keep.append(m)
        out = keep
    out.sort()
    return tuple(out)


def _run_components_dp(nice: NiceTreeDecomposition, nbr: list[int], is_g: list[bool],
                       can_x: list[bool], k: int):
    """Bottom-up over the nice decomposition tracking connectivity instead of sides.

    A state is ``(xmask, blocks, closed, count)``: the bag vertices in X, the
    partition of the other bag vertices into components of the processed
    graph minus X, the number of finished components holding an original
    vertex (capped at 2) and the number of original X vertices.  A block is a
    vertex mask with one extra flag bit set when its component holds an
    original vertex.  A finished run with two such components is exactly a
    choice of A and B.
    """
    nvert = len(is_g)
    flag = 1 << nvert
    vmask = flag - 1
    gmask = 0
    for v, g in enumerate(is_g):
        if g:
            gmask |= 1 << v
    tables: list[dict | None] = [None] * len(nice)
    for t, kind in enumerate(nice.kinds):
        if kind == LEAF:
            tab = {(0, (), 0, 0): None}
        elif kind == INTRODUCE:
            v = nice.vertex[t]
            bit = 1 << v
            nv = nbr[v]
            own = bit | (flag if is_g[v] else 0)
            xok = can_x[v]
            xinc = 1 if is_g[v] else 0
            tab = {}
            for key in tables[nice.children[t][0]]:
                xm, blocks, closed, c = key
                if xok and c + xinc <= k:
                    tab.setdefault((xm | bit, blocks, closed, c + xinc), key)
                m = own
                rest = []
                for bm in blocks:
                    if bm & nv:
                        m |= bm
                    else:
                        rest.append(bm)
                rest.append(m)
                rest.sort()
                tab.setdefault((xm, tuple(rest), closed, c), key)
        elif kind == FORGET:
            v = nice.vertex[t]
            bit = 1 << v
            tab = {}
            for key in tables[nice.children[t][0]]:
                xm, blocks, closed, c = key
                if xm & bit:
                    tab.setdefault((xm & ~bit, blocks, closed, c), key)
                    continue
                out = []
                for bm in blocks:
                    if bm & bit:
                        bm &= ~bit
                        if not bm & vmask:
                            if bm and closed < 2:
                                closed += 1
                            continue
                    out.append(bm)
                tab.setdefault((xm, tuple(out), closed, c), key)
        elif kind == JOIN:
            left, right = tables[nice.children[t][0]], tables[nice.children[t][1]]
            by_x: dict[int, list] = {}
            for key in right:
                by_x.setdefault(key[0], []).append(key)
            tab = {}
            for lk in left:
                xm, lb, lc, lcount = lk
                rs = by_x.get(xm)
                if not rs:
                    continue
                cb = bin(xm & gmask).count("1")
                for rk in rs:
                    c = lcount + rk[3] - cb
                    if c > k:
                        continue
                    blocks = lb if lb == rk[1] else _merge_blocks(lb, rk[1], vmask)
                    tab.setdefault((xm, blocks, min(2, lc + rk[2]), c), (lk, rk))
        else:
            raise InternalInvariantError(f"unknown nice node kind {kind!r}")
        tables[t] = tab
        if not tab:
            return None
    for key in tables[nice.root]:
        xm, blocks, closed, c = key
        if c == k and closed == 2 and not xm and not blocks:
            return tables, key
    return None


def _trace_x(nice: NiceTreeDecomposition, tables, key) -> set[int]:
    xs: set[int] = set()
    stack = [(nice.root, key)]
    while stack:
        t, key = stack.pop()
        kind = nice.kinds[t]
        back = tables[t][key]
        if kind == INTRODUCE:
            v = nice.vertex[t]
            if key[0] >> v & 1:
                xs.add(v)
            stack.append((nice.children[t][0], back))
        elif kind == FORGET:
            stack.append((nice.children[t][0], back))
        elif kind == JOIN:
            stack.append((nice.children[t][0], back[0]))
            stack.append((nice.children[t][1], back[1]))
    return xs


def _sides_from_x(adj: list[set[int]], is_g: list[bool], xs: set[int]) -> dict[int, Label]:
    """A for the component of the first original non-X vertex, B for the rest."""
    labels = {v: Label.X for v in xs}
    first = next((v for v in range(len(adj)) if v not in xs and is_g[v]), None)
    if first is not None:
        labels[first] = Label.A
        q = deque([first])
        while q:
            u = q.popleft()
            for x in adj[u]:
                if x not in labels:
                    labels[x] = Label.A
                    q.append(x)
    for v in range(len(adj)):
        labels.setdefault(v, Label.B)
    return labels


def _nbr_masks(adj: list[set[int]]) -> list[int]:
    out = []
    for nb in adj:
        m = 0
        for x in nb:
            m |= 1 << x
        out.append(m)
    return out


def find_cosep(wp: WindowGraph, td: TreeDecomposition | NiceTreeDecomposition, k: int,
               prune: bool = True, ceiling: int = DEFAULT_CEILING,
               stats: dict | None = None, engine: str = "components") -> CoSepAssignment | None:
    """A co-separating assignment of ``wp`` with exactly ``k`` original separator vertices, or None.

    ``td`` must be a valid decomposition of ``wp``.  With ``prune`` (the
    default) vertices whose label can be fixed in advance are folded away
    before the dynamic program: dummy and face vertices in the separator
    layers always take X (that never breaks a solution and does not count
    towards ``k``), and each connected group outside the separator layers is
    monochromatic, so it is contracted to one vertex.  The reduced graph uses
    the image of ``td`` or its own min-degree decomposition, whichever is
    narrower.

    ``engine`` selects the table layout: ``"labels"`` keeps an A/X/B label
    per bag vertex, ``"components"`` keeps the X vertices and the component
    structure of the rest, which collapses labellings that differ only in how
    not-yet-connected parts are sided.
    """
    if engine not in ("labels", "components"):
        raise ValueError(f"unknown engine {engine!r}")
    if not 1 <= k:
        raise ValueError("k must be positive")
    if prune:
        if isinstance(td, NiceTreeDecomposition):
            td = td.as_tree_decomposition()
        red = _reduce(wp)
        rtd = _map_decomposition(td, red.image)
        fresh = min_degree_decomposition(red.adj)
        if fresh.width < rtd.width:
            rtd = fresh
        nice = make_nice(rtd)
        adj, is_g, can_x = red.adj, red.is_g, red.can_x
    else:
        nice = td if isinstance(td, NiceTreeDecomposition) else make_nice(td)
        adj = wp.adj
        is_g = [kd == ORIGINAL for kd in wp.kinds]
        can_x = [wp.x_allowed(v) for v in range(wp.n)]
    biggest = max((len(b) for b in nice.bags), default=0)
    if stats is not None:
        stats["dp_bag"] = max(stats.get("dp_bag", 0), biggest)
    if biggest > ceiling:
        raise WidthBlowupError(biggest, ceiling, wp.index)
    if not any(is_g[v] and can_x[v] for v in range(len(is_g))):
        return None
    if engine == "labels":
        found = _run_dp(nice, _nbr_masks(adj), is_g, can_x, k)
        if found is None:
            return None
        rl = _trace(nice, *found)
    else:
        found = _run_components_dp(nice, _nbr_masks(adj), is_g, can_x, k)
        if found is None:
            return None
        rl = _sides_from_x(adj, is_g, _trace_x(nice, *found))
    if prune:
        labels = [Label.X if red.image[v] < 0 else rl[red.image[v]] for v in range(wp.n)]
    else:
        labels = [rl[v] for v in range(wp.n)]
    if not check_cosep(wp, labels, k):
        raise InternalInvariantError(f"window {wp.index}: reconstructed assignment is not co-separating")
    return CoSepAssignment(wp, labels)


# ---------------------------------------------------------------------------
# Top level
# ---------------------------------------------------------------------------


def verify_separator(e: OnePlaneEmbedding, s: Iterable[int]) -> bool:
    """True iff removing ``s`` leaves at least two components."""
    removed = set(s)
    if any(not 0 <= v < e.n for v in removed):
        return False
    rest = [v for v in range(e.n) if v not in removed]
    if len(rest) < 2:
        return False
    adj = e.adjacency
    seen = {rest[0]}
    q = deque([rest[0]])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if v not in removed and v not in seen:
                seen.add(v)
                q.append(v)
    return len(seen) < len(rest)


def kappa(e: OnePlaneEmbedding, ceiling: int = DEFAULT_CEILING, method: str = "auto",
          prune: bool = True, check: bool = False, engine: str = "components") -> KappaResult:
    """Vertex connectivity of a 1-plane graph without x-crossings.

    ``check`` additionally validates every decomposition and tests window
    planarity; it is meant for tests, not for timing.
    """
    require_valid(e)
    x = find_x_crossing(e)
    if x is not None:
        raise XCrossingError(x, e.crossings[x].cw)
    t0 = time.perf_counter()
    if e.n <= 2 or e.is_complete():
        return KappaResult(e.n - 1, COMPLETE, {"windows": 0, "dp_bag": 0, "seconds": 0.0})
    e2 = add_kite_edges(e)
    lg = radial_planarization(e2, check=False)
    bl = bfs_layering(lg)
    aux = build_aux(bl)
    crossed = crossed_edge_map(e2, lg)
    stats = {"windows": 0, "dp_bag": 0, "width": 0, "depth": bl.depth, "lambda_n": lg.num_vertices}
    for k in range(1, MAX_K + 1):
        w = window_width(k)
        for i in window_indices(bl, w):
            win = assemble_window(bl, aux, i, w, check=True, check_planar=check)
            wp = augment_window(win, crossed)
            t = tree_decompose(win, method)
            tp = augment_decomposition(t, wp)
            if check:
                from .tdecomp import validate_decomposition

                if not validate_decomposition(t, win) or not validate_decomposition(tp, wp):
                    raise InternalInvariantError(f"window {i}: invalid decomposition")
                if tp.width > 5 * (t.width + 1) - 1:
                    raise InternalInvariantError(f"window {i}: augmented width {tp.width} too large")
            stats["windows"] += 1
            stats["width"] = max(stats["width"], tp.width)
            res = find_cosep(wp, tp, k, prune=prune, ceiling=ceiling, stats=stats, engine=engine)
            if res is None:
                continue
            sep = res.separator()
            if len(sep) != k or not verify_separator(e, sep):
                raise InternalInvariantError(f"window {i}: X does not separate the graph")
            stats["window"] = i
            stats["seconds"] = time.perf_counter() - t0
            return KappaResult(k, sep, stats)
    raise InternalInvariantError(
        f"no separating set of size <= {MAX_K} found in a non-complete graph")
