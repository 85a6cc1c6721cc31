"""Instance generators producing valid 1-plane embeddings.

Small families are built from straight-line drawings (rotations and crossing
orders read off the coordinates); the large regular families are built
combinatorially so that they scale to tens of thousands of vertices.
"""

from __future__ import annotations

import math
import os
import random
from typing import Sequence

import numpy as np
from scipy.spatial import Delaunay

from ..embed import Crossing, CrossingType, OnePlaneEmbedding, classify_crossing, validate

__all__ = [
    "from_drawing",
    "gen_cylinder",
    "gen_full_random",
    "gen_random_1plane",
    "gen_arrow_single",
    "gen_fig5",
    "gen_xcross_rings",
    "FAMILIES",
    "generate",
]


def _seed(seed: int) -> int:
    env = os.environ.get("ONEPL_SEED")
    return int(env) if env not in (None, "") else int(seed)


# ---------------------------------------------------------------------------
# Straight-line drawings
# ---------------------------------------------------------------------------


def _orient(a, b, c) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _segment_cross_point(p1, p2, q1, q2):
    """Intersection point of two properly crossing segments, else None."""
    d1, d2 = _orient(q1, q2, p1), _orient(q1, q2, p2)
    d3, d4 = _orient(p1, p2, q1), _orient(p1, p2, q2)
    if d1 * d2 < 0 and d3 * d4 < 0:
        t = d1 / (d1 - d2)
        return (p1[0] + t * (p2[0] - p1[0]), p1[1] + t * (p2[1] - p1[1]))
    return None


def _cw_sort(center, items):
    """Sort ``(point, payload)`` pairs clockwise around ``center``."""
    return sorted(items, key=lambda it: -math.atan2(it[0][1] - center[1], it[0][0] - center[0]))


def from_drawing(points: Sequence[Sequence[float]], edges: Sequence[tuple[int, int]],
                 extra_crossings: bool = True) -> OnePlaneEmbedding:
    """Combinatorial embedding of a straight-line drawing.

    Crossings are detected by brute force over edge pairs; an edge crossed more
    than once raises ``ValueError``.
    """
    pts = [tuple(map(float, p)) for p in points]
    n = len(pts)
    crossings = []
    crossed: dict[int, int] = {}
    if extra_crossings:
        for i, (a, b) in enumerate(edges):
            for j in range(i + 1, len(edges)):
                c, d = edges[j]
                if len({a, b, c, d}) < 4:
                    continue
                x = _segment_cross_point(pts[a], pts[b], pts[c], pts[d])
                if x is None:
                    continue
                if i in crossed or j in crossed:
                    raise ValueError(f"edge crossed twice ({i} or {j})")
                crossed[i] = crossed[j] = len(crossings)
                order = [p for _, p in _cw_sort(x, [(pts[v], v) for v in (a, b, c, d)])]
                while order[0] not in (a, b):
                    order = order[1:] + order[:1]
                crossings.append(Crossing(i, j, tuple(order)))
    incident: list[list[tuple[tuple[float, float], int]]] = [[] for _ in range(n)]
    for eid, (u, v) in enumerate(edges):
        incident[u].append((pts[v], eid))
        incident[v].append((pts[u], eid))
    rotations = [tuple(eid for _, eid in _cw_sort(pts[v], incident[v])) for v in range(n)]
    return OnePlaneEmbedding(n, tuple((int(u), int(v)) for u, v in edges), tuple(rotations),
                             tuple(crossings))


# ---------------------------------------------------------------------------
# Regular families
# ---------------------------------------------------------------------------


def gen_cylinder(circumference: int, length: int) -> OnePlaneEmbedding:
    """Plane grid cylinder: ``length`` concentric rings of ``circumference`` vertices."""
    c, L = int(circumference), int(length)
    if c < 3 or L < 1:
        raise ValueError("cylinder needs circumference >= 3 and length >= 1")
    vid = lambda r, j: r * c + (j % c)  # noqa: E731
    edges: list[tuple[int, int]] = []
    ring: dict[tuple[int, int], int] = {}
    rung: dict[tuple[int, int], int] = {}
    for r in range(L):
        for j in range(c):
            ring[(r, j)] = len(edges)
            edges.append((vid(r, j), vid(r, j + 1)))
    for r in range(L - 1):
        for j in range(c):
            rung[(r, j)] = len(edges)
            edges.append((vid(r, j), vid(r + 1, j)))
    rotations = []
    for r in range(L):
        for j in range(c):
            rot = []
            if r + 1 < L:
                rot.append(rung[(r, j)])
            rot.append(ring[(r, (j - 1) % c)])
            if r > 0:
                rot.append(rung[(r - 1, j)])
            rot.append(ring[(r, j)])
            rotations.append(tuple(rot))
    return OnePlaneEmbedding(c * L, tuple(edges), tuple(rotations), ())


def gen_xcross_rings(rings: int, width: int) -> OnePlaneEmbedding:
    """Interleaved rings: every quadrilateral between two rings holds two crossing diagonals.

    No edge joins consecutive crossing endpoints, so crossings are x-crossings;
    when the diagonals split into two colour classes a single ring edge is
    added on the innermost ring to keep the graph connected.
    """
    R, W = int(rings), int(width)
    if R < 2 or W < 3:
        raise ValueError("xcross rings need rings >= 2 and width >= 3")
    vid = lambda r, j: r * W + (j % W)  # noqa: E731
    edges: list[tuple[int, int]] = []
    up_ccw: dict[tuple[int, int], int] = {}  # (r,j)->(r+1,j+1)
    up_cw: dict[tuple[int, int], int] = {}  # (r,j)->(r+1,j-1)
    crossings = []
    for r in range(R - 1):
        for j in range(W):
            a = len(edges)
            edges.append((vid(r, j), vid(r + 1, j + 1)))
            up_ccw[(r, j)] = a
            b = len(edges)
            edges.append((vid(r, j + 1), vid(r + 1, j)))
            up_cw[(r, (j + 1) % W)] = b
            crossings.append(Crossing(a, b, (vid(r + 1, j + 1), vid(r + 1, j), vid(r, j), vid(r, j + 1))))
    link = None
    if W % 2 == 0:
        link = len(edges)
        edges.append((vid(0, 0), vid(0, 1)))
    rotations = []
    for r in range(R):
        for j in range(W):
            rot = []
            if r + 1 < R:
                rot += [up_ccw[(r, j)], up_cw[(r, j)]]
            if link is not None and r == 0 and j == 1:
                rot.append(link)
            if r > 0:
                rot += [up_ccw[(r - 1, (j - 1) % W)], up_cw[(r - 1, (j + 1) % W)]]
            if link is not None and r == 0 and j == 0:
                rot.append(link)
            rotations.append(tuple(rot))
    return OnePlaneEmbedding(R * W, tuple(edges), tuple(rotations), tuple(crossings))


def gen_arrow_single() -> OnePlaneEmbedding:
    """A single arrow crossing: tip 1, tail 3, base vertices 0 and 2."""
    pts = [(0, 1), (1, 0), (0, -1), (-1, 0)]
    edges = [(0, 2), (1, 3), (1, 0), (1, 2)]
    return from_drawing(pts, edges)


ARROW_TIP = 1


# ---------------------------------------------------------------------------
# Random families
# ---------------------------------------------------------------------------


def _connected(n: int, edges) -> bool:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def _random_crossed_triangulation(rng: random.Random, size: int, cross_prob: float):
    """Delaunay triangulation of random points with diagonals planted in convex quads.

    Returns ``(points, edge set, crossing quads)`` where each quad is
    ``(a, b, c, d)`` in boundary order with planted diagonals ``a-c`` and ``b-d``.
    """
    size = max(4, int(size))
    nprng = np.random.default_rng(rng.randrange(2**32))
    while True:
        pts = nprng.random((size, 2))
        try:
            tri = Delaunay(pts)
        except Exception:  # degenerate point set; resample
            continue
        break
    simplices = [tuple(int(x) for x in s) for s in tri.simplices]
    edge_tris: dict[frozenset, list[int]] = {}
    edges: set[frozenset] = set()
    for ti, (a, b, c) in enumerate(simplices):
        for u, v in ((a, b), (b, c), (c, a)):
            key = frozenset((u, v))
            edges.add(key)
            edge_tris.setdefault(key, []).append(ti)
    used = set()
    quads = []
    interior = sorted((tuple(sorted(k)) for k, ts in edge_tris.items() if len(ts) == 2))
    rng.shuffle(interior)
    for b, d in interior:
        t1, t2 = edge_tris[frozenset((b, d))]
        if t1 in used or t2 in used or rng.random() >= cross_prob:
            continue
        a = next(x for x in simplices[t1] if x not in (b, d))
        c = next(x for x in simplices[t2] if x not in (b, d))
        if _segment_cross_point(pts[a], pts[c], pts[b], pts[d]) is None:
            continue
        used.update((t1, t2))
        edges.add(frozenset((a, c)))
        quads.append((a, b, c, d))
    return pts, edges, quads


def _thin(rng: random.Random, n: int, edges: set, protected: set, fraction: float) -> None:
    order = sorted((tuple(sorted(e)) for e in edges if e not in protected))
    rng.shuffle(order)
    target = int(fraction * len(order))
    removed = 0
    for u, v in order:
        if removed >= target:
            break
        key = frozenset((u, v))
        edges.discard(key)
        if _connected(n, [tuple(e) for e in edges]):
            removed += 1
        else:
            edges.add(key)


def gen_full_random(seed: int, size: int, thin: float | None = None) -> OnePlaneEmbedding:
    """Full 1-plane graph: crossing diagonals planted inside quadrangles of a random triangulation."""
    rng = random.Random(_seed(seed))
    pts, edges, quads = _random_crossed_triangulation(rng, size, cross_prob=rng.uniform(0.3, 0.9))
    protected = set()
    for a, b, c, d in quads:
        protected.update(frozenset(p) for p in ((a, b), (b, c), (c, d), (d, a), (a, c), (b, d)))
    if thin is None:
        thin = rng.choice([0.0, 0.1, 0.25, 0.4])
    _thin(rng, len(pts), edges, protected, thin)
    return from_drawing(pts, sorted(tuple(sorted(e)) for e in edges))


_KITES_TO_DROP = {
    CrossingType.FULL: [],
    CrossingType.ALMOST_FULL: [0],
    CrossingType.BOWTIE: [0, 2],
    CrossingType.ARROW: [0, 1],
    CrossingType.CHAIR: [0, 1, 2],
}


def gen_random_1plane(seed: int, size: int, wedge_prob: float = 0.1) -> OnePlaneEmbedding:
    """Random 1-plane graph mixing full, almost-full, bowtie, arrow and chair crossings.

    With probability ``wedge_prob`` per crossing a degree-2 vertex is placed in
    one kite corner, so that kite edge is drawn away from its crossing.
    """
    rng = random.Random(_seed(seed))
    pts, edges, quads = _random_crossed_triangulation(rng, size, cross_prob=rng.uniform(0.3, 0.9))
    pts = [tuple(p) for p in pts]
    crossing_edges = set()
    for a, b, c, d in quads:
        crossing_edges.update((frozenset((a, c)), frozenset((b, d))))

    def quad_has_kite(q) -> bool:
        a, b, c, d = q
        return any(frozenset(p) in edges for p in ((a, b), (b, c), (c, d), (d, a)))

    for q in quads:
        kind = rng.choice(list(_KITES_TO_DROP))
        sides = [(q[i], q[(i + 1) % 4]) for i in range(4)]
        rot = rng.randrange(4)
        sides = sides[rot:] + sides[:rot]
        for idx in _KITES_TO_DROP[kind]:
            key = frozenset(sides[idx])
            if key not in edges or key in crossing_edges:
                continue
            edges.discard(key)
            touching = [q2 for q2 in quads if key <= set(q2)]
            if not all(quad_has_kite(q2) for q2 in touching) or not _connected(len(pts), edges):
                edges.add(key)

    thin = rng.choice([0.0, 0.0, 0.1, 0.2])
    kite_sides = set()
    for a, b, c, d in quads:
        kite_sides.update(frozenset(p) for p in ((a, b), (b, c), (c, d), (d, a)))
    _thin(rng, len(pts), edges, crossing_edges | kite_sides, thin)

    # wedge vertices inside kite corners push the kite edge away from the crossing
    for a, b, c, d in quads:
        if rng.random() >= wedge_prob:
            continue
        x = _segment_cross_point(pts[a], pts[c], pts[b], pts[d])
        u, v = (a, b) if rng.random() < 0.5 else (c, d)
        if frozenset((u, v)) not in edges:
            continue
        z = len(pts)
        pts.append(tuple(0.6 * np.asarray(x) + 0.2 * np.asarray(pts[u]) + 0.2 * np.asarray(pts[v])))
        edges.add(frozenset((z, u)))
        edges.add(frozenset((z, v)))
    return from_drawing(pts, sorted(tuple(sorted(e)) for e in edges))


# ---------------------------------------------------------------------------
# Registry used by the CLI
# ---------------------------------------------------------------------------


def gen_fig5() -> OnePlaneEmbedding:
    from .fig5 import fig5_embedding

    return fig5_embedding()


FAMILIES = {
    "cylinder": (gen_cylinder, ("circumference", "length")),
    "full": (gen_full_random, ("seed", "size")),
    "random": (gen_random_1plane, ("seed", "size")),
    "arrow": (gen_arrow_single, ()),
    "fig5": (gen_fig5, ()),
    "xcross": (gen_xcross_rings, ("rings", "width")),
}


def generate(family: str, *params: int) -> OnePlaneEmbedding:
    try:
        fn, names = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}") from None
    if len(params) != len(names):
        raise ValueError(f"family {family!r} takes parameters: {' '.join(names) or '(none)'}")
    return fn(*(int(p) for p in params))
