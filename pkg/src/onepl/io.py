"""Text formats: ``.1pl`` for 1-plane embeddings and ``.pg`` for planarizations.

``.1pl``::

    1pl <n> <m> <c>
    edge <id> <u> <v>            (m lines)
    rot <v>: <edge-end> ...      (n lines, clockwise)
    cross <a> <b> : <p0> <p1> <p2> <p3>   (c lines, clockwise endpoints)

``#`` starts a comment.  An edge-end may carry a trailing ``'`` to mark the
incidence at the edge's second endpoint; plain ids are accepted everywhere.

``.pg`` uses the same layout with a kind-tagged vertex list::

    pg <V> <E> <F>
    v <id> G|D|F <ref>
    edge <id> <u> <v> P|R
    rot <v>: <edge-end> ...
"""

from __future__ import annotations

from .embed import Crossing, OnePlaneEmbedding
from .errors import FormatError
from .planar import KIND_TAGS, PLAIN, RADIAL, PlanarGraph

__all__ = ["parse_1pl", "serialize_1pl", "read_1pl", "write_1pl", "serialize_pg", "parse_pg"]


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _int(tok: str, no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"expected integer for {what}, got {tok!r}", no) from None


def parse_1pl(text: str) -> OnePlaneEmbedding:
    """Parse a ``.1pl`` document; syntax problems raise :class:`FormatError` with a line number."""
    it = list(_lines(text))
    if not it:
        raise FormatError("empty document", 1)
    no, head = it[0]
    parts = head.split()
    if len(parts) != 4 or parts[0] != "1pl":
        raise FormatError("header must be '1pl <n> <m> <c>'", no)
    n, m, c = (_int(p, no, "header count") for p in parts[1:])
    if min(n, m, c) < 0:
        raise FormatError("negative count in header", no)

    edges: dict[int, tuple[int, int]] = {}
    rots: dict[int, list[int]] = {}
    crossings: list[Crossing] = []
    last = no
    for no, line in it[1:]:
        last = no
        word = line.split(None, 1)[0]
        if word == "edge":
            toks = line.split()
            if len(toks) != 4:
                raise FormatError("edge line must be 'edge <id> <u> <v>'", no)
            eid, u, v = (_int(t, no, "edge field") for t in toks[1:])
            if eid in edges:
                raise FormatError(f"duplicate edge id {eid}", no)
            if not 0 <= eid < m:
                raise FormatError(f"edge id {eid} out of range 0..{m - 1}", no)
            edges[eid] = (u, v)
        elif word == "rot":
            head_, _, rest = line.partition(":")
            toks = head_.split()
            if len(toks) != 2 or not _:
                raise FormatError("rotation line must be 'rot <v>: <edge-ends>'", no)
            v = _int(toks[1], no, "rotation vertex")
            if v in rots:
                raise FormatError(f"duplicate rotation for vertex {v}", no)
            if not 0 <= v < n:
                raise FormatError(f"rotation vertex {v} out of range", no)
            ends = []
            for tok in rest.split():
                primed = tok.endswith("'")
                eid = _int(tok.rstrip("'"), no, "edge-end")
                if primed:
                    uv = edges.get(eid)
                    if uv is None or uv[1] != v or uv[0] == v:
                        raise FormatError(f"edge-end {tok} at vertex {v} is not a second incidence", no)
                ends.append(eid)
            rots[v] = ends
        elif word == "cross":
            left, sep, right = line[len("cross"):].partition(":")
            if not sep:
                raise FormatError("crossing line must be 'cross <a> <b> : <p0> <p1> <p2> <p3>'", no)
            ab = left.split()
            ps = right.split()
            if len(ab) != 2 or len(ps) != 4:
                raise FormatError("crossing line must be 'cross <a> <b> : <p0> <p1> <p2> <p3>'", no)
            a, b = (_int(t, no, "crossing edge") for t in ab)
            cw = tuple(_int(t, no, "crossing endpoint") for t in ps)
            crossings.append(Crossing(a, b, cw))
        else:
            raise FormatError(f"unknown record {word!r}", no)
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}", last)
    if len(rots) != n:
        raise FormatError(f"header announces {n} rotations, found {len(rots)}", last)
    if len(crossings) != c:
        raise FormatError(f"header announces {c} crossings, found {len(crossings)}", last)
    return OnePlaneEmbedding.build(n, [edges[i] for i in range(m)], [rots[v] for v in range(n)],
                                   crossings)


def serialize_1pl(e: OnePlaneEmbedding, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend("# " + ln for ln in comment.splitlines())
    out.append(f"1pl {e.n} {e.m} {len(e.crossings)}")
    for eid, (u, v) in enumerate(e.edges):
        out.append(f"edge {eid} {u} {v}")
    for v, rot in enumerate(e.rotations):
        out.append(f"rot {v}: " + " ".join(map(str, rot)))
    for cr in e.crossings:
        out.append(f"cross {cr.edge_a} {cr.edge_b} : " + " ".join(map(str, cr.cw)))
    return "\n".join(out) + "\n"


def read_1pl(path) -> OnePlaneEmbedding:
    with open(path, encoding="utf-8") as fh:
        return parse_1pl(fh.read())


def write_1pl(e: OnePlaneEmbedding, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_1pl(e, comment))


_EDGE_TAG = {PLAIN: "P", RADIAL: "R"}


def serialize_pg(p: PlanarGraph) -> str:
    out = [f"pg {p.num_vertices} {p.num_edges} {len(p.faces)}"]
    for v, kind in enumerate(p.kinds):
        out.append(f"v {v} {KIND_TAGS[kind]} {p.refs[v]}")
    for i, (a, b) in enumerate(p.edges):
        out.append(f"edge {i} {a} {b} {_EDGE_TAG[p.edge_kinds[i]]}")
    for v, rot in enumerate(p.rotations):
        # edge-ends: dart 2i leaves the first endpoint, 2i+1 the second
        out.append(f"rot {v}: " + " ".join(f"{d >> 1}'" if d & 1 else str(d >> 1) for d in rot))
    return "\n".join(out) + "\n"


def parse_pg(text: str) -> PlanarGraph:
    """Parse a ``.pg`` document back into a face-traced planar graph."""
    from .planar import trace_faces

    it = list(_lines(text))
    if not it:
        raise FormatError("empty document", 1)
    no, head = it[0]
    parts = head.split()
    if len(parts) != 4 or parts[0] != "pg":
        raise FormatError("header must be 'pg <V> <E> <F>'", no)
    nv, ne, nf = (_int(x, no, "header count") for x in parts[1:])
    tags = {t: k for k, t in KIND_TAGS.items()}
    etags = {t: k for k, t in _EDGE_TAG.items()}
    kinds = [0] * nv
    refs = [0] * nv
    edges = [(0, 0)] * ne
    ekinds = [PLAIN] * ne
    rots: list[list[int]] = [[] for _ in range(nv)]
    for no, line in it[1:]:
        toks = line.replace(":", " ").split()
        if toks[0] == "v" and len(toks) == 4 and toks[2] in tags:
            v = _int(toks[1], no, "vertex")
            kinds[v], refs[v] = tags[toks[2]], _int(toks[3], no, "ref")
        elif toks[0] == "edge" and len(toks) == 5 and toks[4] in etags:
            i, a, b = (_int(t, no, "edge field") for t in toks[1:4])
            edges[i], ekinds[i] = (a, b), etags[toks[4]]
        elif toks[0] == "rot":
            v = _int(toks[1], no, "rotation vertex")
            rots[v] = [2 * _int(t.rstrip("'"), no, "edge-end") + t.endswith("'") for t in toks[2:]]
        else:
            raise FormatError(f"cannot parse {line!r}", no)
    p = PlanarGraph(kinds=kinds, refs=refs, edges=edges, edge_kinds=ekinds, rotations=rots)
    p.faces = trace_faces(p)
    if len(p.faces) != nf:
        raise FormatError(f"header announces {nf} faces, traced {len(p.faces)}", 1)
    return p
