"""Planarization and radial planarization of 1-plane embeddings.

Darts: planar edge ``i`` with endpoints ``(u, v)`` owns dart ``2*i`` (u -> v)
and dart ``2*i + 1`` (v -> u).  Rotations list outgoing darts clockwise.  The
face successor of a dart entering ``v`` is the outgoing dart that follows its
reverse clockwise at ``v``; the angle between those two darts is the corner of
that face at ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .errors import InvalidEmbeddingError, OnePlaneError

if TYPE_CHECKING:
    from .embed import OnePlaneEmbedding

ORIGINAL, DUMMY, FACE = 0, 1, 2
PLAIN, RADIAL = 0, 1
KIND_TAGS = {ORIGINAL: "G", DUMMY: "D", FACE: "F"}

__all__ = [
    "ORIGINAL", "DUMMY", "FACE", "PLAIN", "RADIAL",
    "PlanarGraph", "NonplanarError",
    "planarize", "trace_faces", "radialize", "radial_planarization", "crossed_edge_map",
]


class NonplanarError(OnePlaneError):
    """The rotation system does not describe a connected plane graph."""


@dataclass
class PlanarGraph:
    kinds: list[int]
    refs: list[int]
    edges: list[tuple[int, int]]
    edge_kinds: list[int]
    rotations: list[list[int]]
    faces: list[list[int]] = field(default_factory=list)
    # G-edge id -> planar edge ids replacing it (one, or two halves through a dummy)
    g_edge_parts: dict[int, tuple[int, ...]] = field(default_factory=dict)
    # crossing id -> dummy vertex
    dummy_of_crossing: list[int] = field(default_factory=list)
    # radial planarization only: face index of the planarization -> face vertex
    face_vertex: list[int] = field(default_factory=list)
    # radial planarization only: outgoing dart o of a non-face vertex -> radial
    # edge lying in the corner clockwise after o
    corner_radial: dict[int, int] = field(default_factory=dict)
    # radial planarization only: the planarization it was built from
    base: "PlanarGraph | None" = None
    _face_of_dart: list[int] | None = field(default=None, repr=False)
    _next: list[int] | None = field(default=None, repr=False)

    # -- basic accessors -----------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.kinds)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def head(self, dart: int) -> int:
        u, v = self.edges[dart >> 1]
        return u if dart & 1 else v

    def tail(self, dart: int) -> int:
        u, v = self.edges[dart >> 1]
        return v if dart & 1 else u

    def neighbors(self, v: int) -> list[int]:
        """Neighbours in rotation order (with multiplicity for parallel edges)."""
        return [self.head(d) for d in self.rotations[v]]

    def degree(self, v: int, kind: int | None = None) -> int:
        if kind is None:
            return len(self.rotations[v])
        return sum(1 for d in self.rotations[v] if self.edge_kinds[d >> 1] == kind)

    def vertices_of_kind(self, kind: int) -> list[int]:
        return [v for v, k in enumerate(self.kinds) if k == kind]

    def euler(self) -> int:
        return self.num_vertices - self.num_edges + len(self.faces)

    # -- faces ---------------------------------------------------------------

    def next_dart(self, dart: int) -> int:
        return self.successor_array()[dart]

    def successor_array(self) -> list[int]:
        if self._next is None:
            pos = [0] * (2 * len(self.edges))
            for rot in self.rotations:
                for i, d in enumerate(rot):
                    pos[d] = i
            nxt = [0] * (2 * len(self.edges))
            edges, rots = self.edges, self.rotations
            for d in range(2 * len(edges)):
                u, v = edges[d >> 1]
                h = u if d & 1 else v
                rot = rots[h]
                i = pos[d ^ 1] + 1
                nxt[d] = rot[i if i < len(rot) else 0]
            self._next = nxt
        return self._next

    def face_of_dart(self, dart: int) -> int:
        if self._face_of_dart is None:
            self._index_faces()
        return self._face_of_dart[dart]

    def face_at_corner(self, out_dart: int) -> int:
        """Face containing the corner clockwise after outgoing dart ``out_dart``."""
        return self.face_of_dart(out_dart ^ 1)

    def _index_faces(self) -> None:
        fod = [-1] * (2 * len(self.edges))
        for fi, walk in enumerate(self.faces):
            for d in walk:
                fod[d] = fi
        self._face_of_dart = fod

    def face_vertices(self, fi: int) -> list[int]:
        """Vertices along face ``fi`` (one entry per corner, repeats kept)."""
        return [self.head(d) for d in self.faces[fi]]

    def is_kite_corner(self, crossing: int, j: int) -> bool:
        """Whether the corner of a dummy between ``cw[j]`` and ``cw[j+1]`` is a kite face."""
        d = self.dummy_of_crossing[crossing]
        out = self.rotations[d][j]
        start = out ^ 1  # enters the dummy from cw[j]
        nxt = self.successor_array()
        return nxt[nxt[nxt[start]]] == start and self.head(nxt[nxt[start]]) == self.tail(start)

    def radial_subgraph_edges(self) -> list[int]:
        return [i for i, k in enumerate(self.edge_kinds) if k == RADIAL]


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def _build_planarization(e: "OnePlaneEmbedding") -> PlanarGraph:
    n = e.n
    cross_of = e.crossing_of_edge
    kinds = [ORIGINAL] * n + [DUMMY] * len(e.crossings)
    refs = list(range(n)) + list(range(len(e.crossings)))
    edges: list[tuple[int, int]] = []
    parts: dict[int, tuple[int, ...]] = {}
    # (vertex, G-edge) -> outgoing dart at vertex
    out_dart: dict[tuple[int, int], int] = {}
    for eid, (u, v) in enumerate(e.edges):
        cid = cross_of.get(eid)
        if cid is None:
            i = len(edges)
            edges.append((u, v))
            parts[eid] = (i,)
            out_dart[(u, eid)] = 2 * i
            out_dart[(v, eid)] = 2 * i + 1
        else:
            d = n + cid
            i = len(edges)
            edges.append((u, d))
            edges.append((d, v))
            parts[eid] = (i, i + 1)
            out_dart[(u, eid)] = 2 * i
            out_dart[(v, eid)] = 2 * (i + 1) + 1
            out_dart[(d, eid, u)] = 2 * i + 1
            out_dart[(d, eid, v)] = 2 * (i + 1)
    rotations: list[list[int]] = [[out_dart[(v, eid)] for eid in e.rotations[v]] for v in range(n)]
    for cid, c in enumerate(e.crossings):
        d = n + cid
        rot = []
        for j, p in enumerate(c.cw):
            eid = c.edge_a if j % 2 == 0 else c.edge_b
            rot.append(out_dart[(d, eid, p)])
        rotations.append(rot)
    return PlanarGraph(
        kinds=kinds,
        refs=refs,
        edges=edges,
        edge_kinds=[PLAIN] * len(edges),
        rotations=rotations,
        g_edge_parts=parts,
        dummy_of_crossing=[n + c for c in range(len(e.crossings))],
    )


def _walk_faces(p: PlanarGraph) -> list[list[int]]:
    nxt = p.successor_array()
    seen = bytearray(len(nxt))
    faces = []
    for d0 in range(len(nxt)):
        if seen[d0]:
            continue
        walk = []
        d = d0
        while not seen[d]:
            seen[d] = 1
            walk.append(d)
            d = nxt[d]
        faces.append(walk)
    return faces


def _components(nv: int, edges: list[tuple[int, int]]) -> int:
    parent = list(range(nv))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = nv
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            count -= 1
    return count


def euler_characteristic_of(e: "OnePlaneEmbedding") -> tuple[int, int]:
    """(number of components, V - E + F) of the planarization of ``e``."""
    p = _build_planarization(e)
    comps = _components(p.num_vertices, p.edges)
    faces = _walk_faces(p) if p.edges else [[]]
    return comps, p.num_vertices - p.num_edges + len(faces)


def trace_faces(p: PlanarGraph) -> list[list[int]]:
    """Trace boundary walks and check Euler's formula for a connected plane graph."""
    if not p.edges:
        faces: list[list[int]] = [[]]
    else:
        faces = _walk_faces(p)
    comps = _components(p.num_vertices, p.edges)
    if comps != 1:
        raise NonplanarError(f"graph has {comps} components")
    chi = p.num_vertices - p.num_edges + len(faces)
    if chi != 2:
        raise NonplanarError(f"nonplanar rotation system: V-E+F = {chi}")
    return faces


def planarize(e: "OnePlaneEmbedding", check: bool = True) -> PlanarGraph:
    """Replace every crossing by a degree-4 dummy vertex and trace faces."""
    if check:
        from .embed import validate

        rep = validate(e)
        if not rep.ok:
            raise InvalidEmbeddingError(rep.violations)
    p = _build_planarization(e)
    p.faces = trace_faces(p)
    p._index_faces()
    return p


def radialize(p: PlanarGraph) -> PlanarGraph:
    """Insert a face vertex into every face, joined to every corner of the face."""
    nv = p.num_vertices
    kinds = list(p.kinds)
    refs = list(p.refs)
    edges = list(p.edges)
    edge_kinds = list(p.edge_kinds)
    face_vertex = []
    corner_radial: dict[int, int] = {}
    face_rot: list[list[int]] = []
    for fi, walk in enumerate(p.faces):
        f = nv + fi
        kinds.append(FACE)
        refs.append(fi)
        face_vertex.append(f)
        darts = []
        for d in walk:
            v = p.head(d)
            i = len(edges)
            edges.append((v, f))
            edge_kinds.append(RADIAL)
            corner_radial[d ^ 1] = i
            darts.append(2 * i + 1)
        # boundary walks keep the face on their left, so clockwise at f is reverse walk order
        darts.reverse()
        face_rot.append(darts)
    rotations = []
    for v in range(nv):
        rot = []
        for o in p.rotations[v]:
            rot.append(o)
            rot.append(2 * corner_radial[o])
        rotations.append(rot)
    rotations.extend(face_rot)
    lam = PlanarGraph(
        kinds=kinds,
        refs=refs,
        edges=edges,
        edge_kinds=edge_kinds,
        rotations=rotations,
        g_edge_parts=dict(p.g_edge_parts),
        dummy_of_crossing=list(p.dummy_of_crossing),
        face_vertex=face_vertex,
        corner_radial=corner_radial,
        base=p,
    )
    lam.faces = trace_faces(lam)
    lam._index_faces()
    return lam


def radial_planarization(e: "OnePlaneEmbedding", check: bool = True) -> PlanarGraph:
    return radialize(planarize(e, check=check))


def crossed_edge_map(e: "OnePlaneEmbedding", p: PlanarGraph) -> dict[int, tuple[int, int, int]]:
    """Crossed G-edge id -> (u, v, dummy vertex)."""
    out = {}
    for cid, c in enumerate(e.crossings):
        d = p.dummy_of_crossing[cid]
        for eid in (c.edge_a, c.edge_b):
            u, v = e.edges[eid]
            out[eid] = (u, v, d)
    return out
