"""Brute-force ground truth: vertex connectivity by max-flow, exhaustive searches, separator minimization."""

from __future__ import annotations

import itertools
from collections import deque

from ..embed import OnePlaneEmbedding
from ..layers import WindowGraph
from ..planar import ORIGINAL
from ..search import COMPLETE, CoSepAssignment, KappaResult, Label

__all__ = [
    "as_adjacency",
    "is_separating",
    "local_connectivity",
    "brute_kappa",
    "kappa_by_subsets",
    "exhaustive_cosep",
    "minimalize_separator",
]


def as_adjacency(g) -> list[set[int]]:
    """Simple-graph adjacency from an embedding, an adjacency list, or ``(n, edges)``."""
    if isinstance(g, OnePlaneEmbedding):
        return [set(a) for a in g.adjacency]
    if isinstance(g, tuple) and len(g) == 2 and isinstance(g[0], int):
        n, edges = g
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u != v:
                adj[u].add(v)
                adj[v].add(u)
        return adj
    return [set(x for x in a if x != v) for v, a in enumerate(g)]


def _components_without(adj: list[set[int]], removed: set[int]) -> int:
    seen: set[int] = set()
    comps = 0
    for s in range(len(adj)):
        if s in removed or s in seen:
            continue
        comps += 1
        seen.add(s)
        q = deque([s])
        while q:
            u = q.popleft()
            for v in adj[u]:
                if v not in removed and v not in seen:
                    seen.add(v)
                    q.append(v)
    return comps


def is_separating(g, s) -> bool:
    adj = as_adjacency(g)
    return _components_without(adj, set(s)) >= 2


def local_connectivity(adj: list[set[int]], s: int, t: int, limit: int | None = None):
    """Max number of internally vertex-disjoint s-t paths (s, t non-adjacent) and a minimum cut.

    Unit-capacity augmenting paths on the split graph: vertex ``v`` becomes
    ``2v`` (in) and ``2v+1`` (out) joined by a unit arc.
    """
    n = len(adj)
    flow: dict[tuple[int, int], int] = {}

    def cap(a: int, b: int) -> int:
        # residual capacity of arc a -> b in the split graph
        base = 0
        if a // 2 == b // 2 and a % 2 == 0 and b == a + 1:
            base = 1 if a // 2 not in (s, t) else n
        elif a % 2 == 1 and b % 2 == 0 and (b // 2) in adj[a // 2]:
            base = n
        return base - flow.get((a, b), 0) + flow.get((b, a), 0)

    def neighbors(a: int):
        v = a // 2
        if a % 2 == 0:
            yield a + 1
            for u in adj[v]:
                yield 2 * u + 1  # reverse of u_out -> v_in
        else:
            yield a - 1
            for u in adj[v]:
                yield 2 * u

    src, dst = 2 * s + 1, 2 * t
    total = 0
    while limit is None or total < limit:
        prev = {src: -1}
        q = deque([src])
        while q and dst not in prev:
            a = q.popleft()
            for b in neighbors(a):
                if b not in prev and cap(a, b) > 0:
                    prev[b] = a
                    q.append(b)
        if dst not in prev:
            cut = sorted(v for v in range(n) if 2 * v in prev and 2 * v + 1 not in prev)
            return total, cut, False
        b = dst
        while prev[b] != -1:
            a = prev[b]
            back = flow.get((b, a), 0)
            if back:
                flow[(b, a)] = back - 1
            else:
                flow[(a, b)] = flow.get((a, b), 0) + 1
            b = a
        total += 1
    return total, [], True


def brute_kappa(g) -> KappaResult:
    """Exact vertex connectivity by Even's scheme of pairwise vertex-disjoint path counts."""
    adj = as_adjacency(g)
    n = len(adj)
    if _components_without(adj, set()) != 1:
        raise ValueError("graph is disconnected")
    if all(len(a) == n - 1 for a in adj):
        return KappaResult(n - 1, COMPLETE)
    best = n - 1
    best_cut: list[int] | None = None
    i = 0
    # some vertex among the first best+1 lies outside a minimum separator
    while i <= best and i < n:
        for j in range(i + 1, n):
            if j in adj[i]:
                continue
            val, cut, capped = local_connectivity(adj, i, j, limit=best)
            if not capped and val < best:
                best, best_cut = val, cut
        i += 1
    if best_cut is None:
        # every non-adjacent pair met the degree bound; take a minimum-degree neighbourhood
        v = min(range(n), key=lambda x: (len(adj[x]), x))
        best_cut = sorted(adj[v])
    return KappaResult(best, sorted(best_cut))


def kappa_by_subsets(g, max_n: int = 18) -> int:
    """Vertex connectivity by trying every vertex subset in order of size."""
    adj = as_adjacency(g)
    n = len(adj)
    if n > max_n:
        raise ValueError(f"subset enumeration limited to n <= {max_n}")
    if all(len(a) == n - 1 for a in adj):
        return n - 1
    for r in range(0, n - 1):
        for s in itertools.combinations(range(n), r):
            if _components_without(adj, set(s)) >= 2:
                return r
    return n - 1


def minimalize_separator(g, s) -> list[int]:
    """Drop vertices in ascending id order while the rest still separates."""
    adj = as_adjacency(g)
    cur = set(s)
    if _components_without(adj, cur) < 2:
        raise ValueError("set is not separating")
    for v in sorted(s):
        cur.discard(v)
        if _components_without(adj, cur) < 2:
            cur.add(v)
    return sorted(cur)


def exhaustive_cosep(wp: WindowGraph, k: int, max_n: int = 16) -> CoSepAssignment | None:
    """Plain backtracking over all A/X/B labellings of the window+."""
    n = wp.n
    if n > max_n:
        raise ValueError(f"exhaustive search limited to {max_n} window vertices, got {n}")
    is_g = [kd == ORIGINAL for kd in wp.kinds]
    allowed = [wp.x_allowed(v) for v in range(n)]
    # remaining original vertices that may still take X, for count pruning
    room = [0] * (n + 1)
    for v in range(n - 1, -1, -1):
        room[v] = room[v + 1] + (1 if is_g[v] and allowed[v] else 0)
    labels: list[Label | None] = [None] * n

    def rec(v: int, count: int, fa: bool, fb: bool) -> bool:
        if count > k or count + room[v] < k:
            return False
        if v == n:
            return count == k and fa and fb
        for lab in (Label.A, Label.X, Label.B):
            if lab == Label.X and not allowed[v]:
                continue
            if lab != Label.X:
                other = Label.B if lab == Label.A else Label.A
                if any(u < v and labels[u] == other for u in wp.adj[v]):
                    continue
            labels[v] = lab
            if rec(v + 1, count + (lab == Label.X and is_g[v]),
                   fa or (lab == Label.A and is_g[v]), fb or (lab == Label.B and is_g[v])):
                return True
        labels[v] = None
        return False

    if rec(0, 0, False, False):
        return CoSepAssignment(wp, list(labels))
    return None
