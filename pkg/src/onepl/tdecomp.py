"""Tree decompositions of window graphs, their augmentation for crossed edges, and nice form."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InternalInvariantError

__all__ = [
    "TreeDecomposition",
    "NiceTreeDecomposition",
    "LEAF", "INTRODUCE", "FORGET", "JOIN",
    "min_degree_decomposition",
    "radial_decomposition",
    "radial_width_bound",
    "tree_decompose",
    "augment_decomposition",
    "validate_decomposition",
    "restrict",
    "contract",
    "make_nice",
    "window_embedding",
]

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass
class TreeDecomposition:
    bags: list[frozenset]
    tree: list[list[int]]  # adjacency between bag indices
    method: str = ""

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @property
    def max_bag(self) -> int:
        return max((len(b) for b in self.bags), default=0)

    def tree_edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a, nb in enumerate(self.tree) for b in nb if a < b]


@dataclass
class NiceTreeDecomposition:
    """Nodes in post-order: every child index is smaller than its parent's."""

    kinds: list[str]
    vertex: list[int]  # introduced/forgotten vertex, -1 otherwise
    children: list[tuple[int, ...]]
    bags: list[frozenset]

    @property
    def root(self) -> int:
        return len(self.kinds) - 1

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def __len__(self) -> int:
        return len(self.kinds)

    def as_tree_decomposition(self) -> TreeDecomposition:
        tree: list[list[int]] = [[] for _ in self.kinds]
        for p, ch in enumerate(self.children):
            for c in ch:
                tree[p].append(c)
                tree[c].append(p)
        return TreeDecomposition(list(self.bags), tree, "nice")

    def check_shape(self) -> bool:
        for t, kind in enumerate(self.kinds):
            ch, bag, v = self.children[t], self.bags[t], self.vertex[t]
            if any(c >= t for c in ch):
                return False
            if kind == LEAF:
                ok = not ch and not bag
            elif kind == INTRODUCE:
                ok = len(ch) == 1 and v in bag and bag - {v} == self.bags[ch[0]] and v not in self.bags[ch[0]]
            elif kind == FORGET:
                ok = len(ch) == 1 and v not in bag and self.bags[ch[0]] - {v} == bag and v in self.bags[ch[0]]
            elif kind == JOIN:
                ok = len(ch) == 2 and self.bags[ch[0]] == bag == self.bags[ch[1]]
            else:
                ok = False
            if not ok:
                return False
        return True


def _host_adjacency(host) -> list[set[int]] | dict:
    if hasattr(host, "adj"):
        return host.adj
    n, edges = host
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    return adj


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def _tree_ok(t: TreeDecomposition) -> bool:
    nb = len(t.bags)
    if nb == 0:
        return False
    edges = t.tree_edges()
    if len(edges) != nb - 1 or len(t.tree) != nb:
        return False
    seen = {0}
    q = deque([0])
    while q:
        a = q.popleft()
        for b in t.tree[a]:
            if b not in seen:
                seen.add(b)
                q.append(b)
    return len(seen) == nb


def _occurrences(t: TreeDecomposition) -> dict[int, list[int]]:
    occ: dict[int, list[int]] = {}
    for i, bag in enumerate(t.bags):
        for v in bag:
            occ.setdefault(v, []).append(i)
    return occ


def _is_connected_in_tree(t: TreeDecomposition, nodes: list[int]) -> bool:
    target = set(nodes)
    start = nodes[0]
    seen = {start}
    q = deque([start])
    while q:
        a = q.popleft()
        for b in t.tree[a]:
            if b in target and b not in seen:
                seen.add(b)
                q.append(b)
    return len(seen) == len(target)


def validate_decomposition(t: TreeDecomposition, host) -> bool:
    """Vertex coverage, edge coverage and contiguity for ``host``.

    ``host`` is a window graph (anything with ``adj``) or a pair ``(n, edges)``.
    """
    adj = _host_adjacency(host)
    if not _tree_ok(t):
        return False
    occ = _occurrences(t)
    for v in range(len(adj)):
        if v not in occ:
            return False
    for v, nodes in occ.items():
        if not 0 <= v < len(adj) or not _is_connected_in_tree(t, nodes):
            return False
    for u in range(len(adj)):
        for v in adj[u]:
            if u < v and not any(v in t.bags[i] for i in occ[u]):
                return False
    return True


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def _single_bag(n: int, method: str) -> TreeDecomposition:
    return TreeDecomposition([frozenset(range(n))], [[]], method)


def min_degree_decomposition(adj: Sequence[Iterable[int]]) -> TreeDecomposition:
    """Greedy min-degree elimination; ties broken by vertex id."""
    n = len(adj)
    if n == 0:
        return TreeDecomposition([frozenset()], [[]], "min-degree")
    g = [set(a) for a in adj]
    for v in range(n):
        g[v].discard(v)
    heap = [(len(g[v]), v) for v in range(n)]
    heapq.heapify(heap)
    gone = [False] * n
    order_pos = [0] * n
    bags: list[frozenset] = []
    nbrs_at: list[set[int]] = []
    step = 0
    while heap:
        deg, v = heapq.heappop(heap)
        if gone[v] or deg != len(g[v]):
            continue
        nb = g[v]
        gone[v] = True
        order_pos[v] = step
        step += 1
        bags.append(frozenset(nb | {v}))
        nbrs_at.append(set(nb))
        for a in nb:
            ga = g[a]
            ga.discard(v)
            ga.update(nb)
            ga.discard(a)
            heapq.heappush(heap, (len(ga), a))
        g[v] = set()
    # bag index == elimination step; parent = earliest eliminated neighbour
    tree: list[list[int]] = [[] for _ in range(n)]
    roots = []
    for s in range(n):
        nb = nbrs_at[s]
        if nb:
            p = min(order_pos[a] for a in nb)
            tree[s].append(p)
            tree[p].append(s)
        else:
            roots.append(s)
    for a, b in zip(roots, roots[1:]):
        tree[a].append(b)
        tree[b].append(a)
    return _compress(TreeDecomposition(bags, tree, "min-degree"))


def _compress(t: TreeDecomposition) -> TreeDecomposition:
    """Merge bags that are contained in a neighbouring bag."""
    bags = list(t.bags)
    tree = [set(nb) for nb in t.tree]
    alive = [True] * len(bags)
    changed = True
    while changed:
        changed = False
        for a in range(len(bags)):
            if not alive[a]:
                continue
            for b in tree[a]:
                if bags[a] <= bags[b]:
                    for c in tree[a]:
                        if c != b:
                            tree[c].discard(a)
                            tree[c].add(b)
                            tree[b].add(c)
                    tree[b].discard(a)
                    tree[a] = set()
                    alive[a] = False
                    changed = True
                    break
    idx = {}
    for a in range(len(bags)):
        if alive[a]:
            idx[a] = len(idx)
    new_bags = [bags[a] for a in idx]
    new_tree = [sorted(idx[b] for b in tree[a]) for a in idx]
    return TreeDecomposition(new_bags, new_tree, t.method)


def window_embedding(win):
    """A planar embedding of the window's simple graph (networkx), or None if nonplanar."""
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(range(len(win.adj)))
    for u, nb in enumerate(win.adj):
        for v in nb:
            if u < v:
                g.add_edge(u, v)
    ok, emb = nx.check_planarity(g)
    return emb if ok else None


def radial_width_bound(w: int) -> int:
    return 3 * (w + 3) - 1


def radial_decomposition(win) -> TreeDecomposition:
    """Radius-based decomposition: triangulate, one bag per triangle from BFS root paths.

    Every face of a planar embedding gets a temporary apex joined to all of its
    corners, which triangulates it.  With a BFS tree from the window centre,
    the bag of a triangle is the union of its corners' root paths; the dual
    edges not crossing tree edges form the decomposition tree.  Temporary
    apices are removed from the bags at the end.
    """
    n = len(win.adj)
    if n <= 1:
        return _single_bag(n, "radial")
    emb = window_embedding(win)
    if emb is None:
        raise InternalInvariantError(f"window {getattr(win, 'index', '?')} is not planar")
    # faces as node walks
    seen_half: set = set()
    faces: list[list[int]] = []
    for u, v in emb.edges():
        if (u, v) in seen_half:
            continue
        faces.append(emb.traverse_face(u, v, mark_half_edges=seen_half))
    # augmented graph: apex n+fi for face fi
    aug_adj: list[set[int]] = [set(a) for a in win.adj] + [set() for _ in faces]
    tri: list[tuple[int, int, int]] = []
    tri_of_dart: dict[tuple[int, int], int] = {}
    apex_edge_tris: dict[tuple[int, int, int], list[int]] = {}  # (apex, corner idx) -> triangles
    for fi, walk in enumerate(faces):
        a = n + fi
        L = len(walk)
        for j in range(L):
            x, y = walk[j], walk[(j + 1) % L]
            aug_adj[a].add(x)
            aug_adj[x].add(a)
            t = len(tri)
            tri.append((x, y, a))
            tri_of_dart[(x, y)] = t
            apex_edge_tris.setdefault((a, fi, j), []).append(t)
            apex_edge_tris.setdefault((a, fi, (j + 1) % L), []).append(t)
    # BFS tree of the augmented graph from the centre
    root = win.center
    parent = {root: root}
    q = deque([root])
    while q:
        u = q.popleft()
        for v in sorted(aug_adj[u]):
            if v not in parent:
                parent[v] = u
                q.append(v)
    tree_edge = set()
    for v, p in parent.items():
        if v != p:
            tree_edge.add((min(v, p), max(v, p)))
    # dual adjacency across non-tree edges, spanning forest by union-find
    uf = list(range(len(tri)))

    def find(x: int) -> int:
        while uf[x] != x:
            uf[x] = uf[uf[x]]
            x = uf[x]
        return x

    dual: list[list[int]] = [[] for _ in tri]

    def link(s: int, t: int) -> None:
        rs, rt = find(s), find(t)
        if rs != rt:
            uf[rs] = rt
            dual[s].append(t)
            dual[t].append(s)

    for (x, y), t in tri_of_dart.items():
        if x < y and (min(x, y), max(x, y)) not in tree_edge:
            other = tri_of_dart.get((y, x))
            if other is not None:
                link(t, other)
    for (a, fi, j), ts in apex_edge_tris.items():
        x = faces[fi][j]
        if (min(a, x), max(a, x)) not in tree_edge and len(ts) == 2:
            link(ts[0], ts[1])
    # any leftover components (degenerate faces) are joined arbitrarily
    reps = sorted({find(t) for t in range(len(tri))})
    for r1, r2 in zip(reps, reps[1:]):
        link(r1, r2)

    path_cache: dict[int, frozenset] = {}

    def root_path(v: int) -> frozenset:
        got = path_cache.get(v)
        if got is not None:
            return got
        chain = []
        x = v
        while x not in path_cache and parent[x] != x:
            chain.append(x)
            x = parent[x]
        base = path_cache.get(x)
        if base is None:
            base = frozenset([x] if x < n else [])
            path_cache[x] = base
        for y in reversed(chain):
            base = base | ({y} if y < n else frozenset())
            path_cache[y] = base
        return path_cache[v]

    bags = [root_path(x) | root_path(y) | root_path(a) for x, y, a in tri]
    return _compress(TreeDecomposition(bags, dual, "radial"))


def tree_decompose(win, method: str = "auto") -> TreeDecomposition:
    """Decompose a window.

    ``method`` is ``"min-degree"``, ``"radial"`` or ``"auto"``; ``auto`` uses
    min-degree elimination and falls back to the radial construction only when
    the heuristic exceeds the radial width guarantee.
    """
    if method == "min-degree":
        return min_degree_decomposition(win.adj)
    if method == "radial":
        return radial_decomposition(win)
    if method != "auto":
        raise ValueError(f"unknown decomposition method {method!r}")
    t = min_degree_decomposition(win.adj)
    bound = radial_width_bound(win.width)
    if t.width > bound:
        r = radial_decomposition(win)
        if r.width < t.width:
            return r
    return t


# ---------------------------------------------------------------------------
# Transformations
# ---------------------------------------------------------------------------


def _steiner_nodes(t: TreeDecomposition, targets: set[int]) -> set[int]:
    """Nodes of the smallest subtree containing ``targets``."""
    start = next(iter(targets))
    parent = {start: -1}
    order = [start]
    q = deque([start])
    while q:
        a = q.popleft()
        for b in t.tree[a]:
            if b not in parent:
                parent[b] = a
                order.append(b)
                q.append(b)
    keep = set()
    has = {a: a in targets for a in order}
    for a in reversed(order):
        if has[a]:
            keep.add(a)
            p = parent[a]
            if p >= 0:
                has[p] = True
    return keep


def augment_decomposition(t: TreeDecomposition, wp) -> TreeDecomposition:
    """Add the crossing endpoints of every dummy to each bag that holds the dummy.

    ``wp.dummy_ends`` maps a local dummy to its crossing endpoints inside the
    window.  If an endpoint's occurrence stops being contiguous (possible when
    the window dropped the dummy's edge to it), the vertex is added along the
    connecting tree path.
    """
    ends = getattr(wp, "dummy_ends", {}) or {}
    if not ends:
        return TreeDecomposition(list(t.bags), [list(nb) for nb in t.tree], t.method)
    bags = []
    touched: set[int] = set()
    for bag in t.bags:
        extra = set()
        for v in bag:
            e = ends.get(v)
            if e:
                extra.update(e)
        if extra - bag:
            touched |= extra - bag
            bags.append(bag | extra)
        else:
            bags.append(bag)
    out = TreeDecomposition(bags, [list(nb) for nb in t.tree], t.method + "+")
    occ = _occurrences(out)
    for x in sorted(touched):
        nodes = occ[x]
        if not _is_connected_in_tree(out, nodes):
            for a in _steiner_nodes(out, set(nodes)):
                out.bags[a] = out.bags[a] | {x}
    return out


def restrict(t: TreeDecomposition, keep: set[int] | Sequence[bool]) -> TreeDecomposition:
    """Decomposition of the induced subgraph on ``keep``."""
    if isinstance(keep, set):
        bags = [frozenset(v for v in b if v in keep) for b in t.bags]
    else:
        bags = [frozenset(v for v in b if keep[v]) for b in t.bags]
    return _compress(TreeDecomposition(bags, [list(nb) for nb in t.tree], t.method))


def contract(t: TreeDecomposition, image: Sequence[int]) -> TreeDecomposition:
    """Decomposition of the graph obtained by contracting connected vertex groups.

    ``image[v]`` is the new id of ``v``; every group must induce a connected
    subgraph of the host for the result to be valid.
    """
    bags = [frozenset(image[v] for v in b) for b in t.bags]
    return _compress(TreeDecomposition(bags, [list(nb) for nb in t.tree], t.method))


def make_nice(t: TreeDecomposition, root: int = 0, forget_root: bool = True) -> NiceTreeDecomposition:
    """Nice form with leaf / introduce / forget / join nodes, in post-order."""
    kinds: list[str] = []
    vertex: list[int] = []
    children: list[tuple[int, ...]] = []
    bags: list[frozenset] = []

    def emit(kind: str, v: int, ch: tuple[int, ...], bag: frozenset) -> int:
        kinds.append(kind)
        vertex.append(v)
        children.append(ch)
        bags.append(bag)
        return len(kinds) - 1

    def morph(node: int, src: frozenset, dst: frozenset) -> int:
        cur = src
        for v in sorted(src - dst):
            cur = cur - {v}
            node = emit(FORGET, v, (node,), cur)
        for v in sorted(dst - src):
            cur = cur | {v}
            node = emit(INTRODUCE, v, (node,), cur)
        return node

    # iterative post-order over the decomposition tree
    nb = len(t.bags)
    parent = [-1] * nb
    order = []
    seen = [False] * nb
    stack = [root]
    seen[root] = True
    while stack:
        a = stack.pop()
        order.append(a)
        for b in t.tree[a]:
            if not seen[b]:
                seen[b] = True
                parent[b] = a
                stack.append(b)
    top: dict[int, int] = {}  # tree node -> nice node whose bag equals bags[a]
    kids: dict[int, list[int]] = {}
    for a in order:
        if parent[a] >= 0:
            kids.setdefault(parent[a], []).append(a)
    for a in reversed(order):
        bag = t.bags[a]
        chains = [morph(top[c], t.bags[c], bag) for c in kids.get(a, [])]
        if not chains:
            leaf = emit(LEAF, -1, (), frozenset())
            chains = [morph(leaf, frozenset(), bag)]
        node = chains[0]
        for other in chains[1:]:
            node = emit(JOIN, -1, (node, other), bag)
        top[a] = node
    node = top[root]
    if forget_root:
        morph(node, t.bags[root], frozenset())
    return NiceTreeDecomposition(kinds, vertex, children, bags)
