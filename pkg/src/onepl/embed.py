"""Combinatorial 1-plane embeddings: data model, validation, crossing types, kite edges.

An embedding is stored as a rotation system (clockwise order of incident edge
ids around every vertex) plus, for every crossing pair of edges, the clockwise
order of the four crossing endpoints around the crossing point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidEmbeddingError, XCrossingError

__all__ = [
    "Crossing",
    "OnePlaneEmbedding",
    "CrossingType",
    "CrossingClass",
    "ValidationReport",
    "validate",
    "require_valid",
    "classify_crossing",
    "crossing_classes",
    "find_x_crossing",
    "has_x_crossing",
    "add_kite_edges",
]


@dataclass(frozen=True)
class Crossing:
    """Two edges crossing each other.

    ``cw`` lists the four endpoints clockwise around the crossing point;
    positions 0 and 2 are the ends of ``edge_a``, positions 1 and 3 those of
    ``edge_b``.
    """

    edge_a: int
    edge_b: int
    cw: tuple[int, int, int, int]

    def consecutive_pairs(self) -> list[tuple[int, int]]:
        p = self.cw
        return [(p[0], p[1]), (p[1], p[2]), (p[2], p[3]), (p[3], p[0])]


@dataclass(frozen=True)
class OnePlaneEmbedding:
    n: int
    edges: tuple[tuple[int, int], ...]
    rotations: tuple[tuple[int, ...], ...]
    crossings: tuple[Crossing, ...] = ()

    @classmethod
    def build(cls, n: int, edges: Iterable[Sequence[int]], rotations: Iterable[Iterable[int]],
              crossings: Iterable[Crossing | Sequence] = ()) -> "OnePlaneEmbedding":
        """Normalize plain Python containers into an (unvalidated) embedding."""
        cr = []
        for c in crossings:
            if not isinstance(c, Crossing):
                a, b, cw = c
                c = Crossing(int(a), int(b), tuple(int(x) for x in cw))
            cr.append(c)
        return cls(
            n=int(n),
            edges=tuple((int(u), int(v)) for u, v in edges),
            rotations=tuple(tuple(int(x) for x in r) for r in rotations),
            crossings=tuple(cr),
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def crossing_of_edge(self) -> dict[int, int]:
        """Map edge id -> id of the crossing it participates in."""
        out: dict[int, int] = {}
        for cid, c in enumerate(self.crossings):
            out.setdefault(c.edge_a, cid)
            out.setdefault(c.edge_b, cid)
        return out

    @cached_property
    def adjacency(self) -> list[set[int]]:
        """Neighbour sets of the underlying simple graph."""
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            if u != v and 0 <= u < self.n and 0 <= v < self.n:
                adj[u].add(v)
                adj[v].add(u)
        return adj

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def is_complete(self) -> bool:
        """True when the underlying simple graph is complete."""
        return all(len(a) == self.n - 1 for a in self.adjacency)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def add(self, msg: str) -> None:
        self.violations.append(msg)


def validate(e: OnePlaneEmbedding) -> ValidationReport:
    """Collect every structural violation of ``e``; an empty report means valid."""
    rep = ValidationReport()
    n, m = e.n, e.m
    if n < 2:
        rep.add(f"too few vertices: n={n}, need at least 2")
    if len(e.rotations) != n:
        rep.add(f"rotation count {len(e.rotations)} does not match n={n}")

    endpoints_ok = True
    for eid, (u, v) in enumerate(e.edges):
        if not (0 <= u < n and 0 <= v < n):
            rep.add(f"edge {eid} has endpoint out of range")
            endpoints_ok = False
        elif u == v:
            rep.add(f"loop at vertex {u} (edge {eid})")
            endpoints_ok = False

    rotations_ok = endpoints_ok and len(e.rotations) == n
    if rotations_ok:
        expected: list[list[int]] = [[] for _ in range(n)]
        for eid, (u, v) in enumerate(e.edges):
            expected[u].append(eid)
            expected[v].append(eid)
        for v in range(n):
            rot = e.rotations[v]
            if sorted(rot) != sorted(expected[v]):
                bad = set(rot) ^ set(expected[v])
                if len(set(rot)) != len(rot):
                    rep.add(f"rotation/edge-end mismatch at vertex {v}: repeated edge-end")
                else:
                    rep.add(f"rotation/edge-end mismatch at vertex {v}: edges {sorted(bad)}")
                rotations_ok = False

    seen: dict[int, int] = {}
    crossings_ok = endpoints_ok
    for cid, c in enumerate(e.crossings):
        ok = True
        for eid in (c.edge_a, c.edge_b):
            if not 0 <= eid < m:
                rep.add(f"crossing {cid} refers to unknown edge {eid}")
                ok = False
            elif eid in seen:
                rep.add(f"edge crossed twice: edge {eid} in crossings {seen[eid]} and {cid}")
                ok = False
            else:
                seen[eid] = cid
        if ok and c.edge_a == c.edge_b:
            rep.add(f"crossing {cid} crosses edge {c.edge_a} with itself")
            ok = False
        if ok:
            a, b = e.edges[c.edge_a], e.edges[c.edge_b]
            p = c.cw
            if len(p) != 4 or len(set(p)) != 4:
                rep.add(f"crossing {cid}: endpoints are not four distinct vertices")
                ok = False
            elif {p[0], p[2]} != set(a) or {p[1], p[3]} != set(b):
                rep.add(f"crossing {cid}: clockwise endpoints do not alternate between edges "
                        f"{c.edge_a} and {c.edge_b}")
                ok = False
        crossings_ok = crossings_ok and ok

    if rotations_ok and crossings_ok and n >= 1:
        from .planar import euler_characteristic_of

        components, chi = euler_characteristic_of(e)
        if components != 1:
            rep.add(f"disconnected: planarization has {components} components")
        elif chi != 2:
            rep.add(f"nonplanar rotation system: V-E+F = {chi}")
    return rep


def require_valid(e: OnePlaneEmbedding) -> None:
    rep = validate(e)
    if not rep.ok:
        raise InvalidEmbeddingError(rep.violations)


# ---------------------------------------------------------------------------
# Crossing classification
# ---------------------------------------------------------------------------


class CrossingType(enum.Enum):
    FULL = "full"
    ALMOST_FULL = "almost-full"
    BOWTIE = "bowtie"
    ARROW = "arrow"
    CHAIR = "chair"
    X = "x"


@dataclass(frozen=True)
class CrossingClass:
    kind: CrossingType
    kite_pairs: tuple[tuple[int, int], ...]
    wing_tips: tuple[int, ...] = ()
    spine: tuple[int, ...] = ()
    tip: int | None = None
    tail: int | None = None
    base: tuple[int, ...] = ()

    @property
    def induced_edge_count(self) -> int:
        return 2 + len(self.kite_pairs)


def classify_crossing(e: OnePlaneEmbedding, c: int) -> CrossingClass:
    if not 0 <= c < len(e.crossings):
        raise KeyError(f"unknown crossing id {c}")
    cr = e.crossings[c]
    kites = tuple(pr for pr in cr.consecutive_pairs() if e.adjacent(*pr))
    k = len(kites)
    if k == 4:
        return CrossingClass(CrossingType.FULL, kites)
    if k == 3:
        missing = next(pr for pr in cr.consecutive_pairs() if pr not in kites)
        spine = tuple(v for v in cr.cw if v not in missing)
        return CrossingClass(CrossingType.ALMOST_FULL, kites, wing_tips=missing, spine=spine)
    if k == 2:
        (a1, b1), (a2, b2) = kites
        shared = {a1, b1} & {a2, b2}
        if not shared:
            return CrossingClass(CrossingType.BOWTIE, kites)
        tip = shared.pop()
        base = tuple(v for v in (a1, b1, a2, b2) if v != tip)
        tail = next(v for v in cr.cw if v != tip and v not in base)
        return CrossingClass(CrossingType.ARROW, kites, tip=tip, tail=tail, base=base)
    if k == 1:
        return CrossingClass(CrossingType.CHAIR, kites)
    return CrossingClass(CrossingType.X, kites)


def crossing_classes(e: OnePlaneEmbedding) -> list[CrossingClass]:
    return [classify_crossing(e, c) for c in range(len(e.crossings))]


def find_x_crossing(e: OnePlaneEmbedding) -> int | None:
    """Id of the first x-crossing, or None."""
    for cid, cr in enumerate(e.crossings):
        if not any(e.adjacent(a, b) for a, b in cr.consecutive_pairs()):
            return cid
    return None


def has_x_crossing(e: OnePlaneEmbedding) -> bool:
    return find_x_crossing(e) is not None


# ---------------------------------------------------------------------------
# Kite-edge pre-processing
# ---------------------------------------------------------------------------


def missing_kite_corners(e: OnePlaneEmbedding) -> list[tuple[int, int, int]]:
    """Corners ``(crossing, j, j+1)`` whose endpoints are adjacent but lack a kite face.

    ``j`` indexes ``Crossing.cw``; the corner lies between endpoints ``cw[j]``
    and ``cw[(j+1) % 4]``.
    """
    from .planar import planarize

    pg = planarize(e, check=False)
    out = []
    for cid, cr in enumerate(e.crossings):
        for j in range(4):
            a, b = cr.cw[j], cr.cw[(j + 1) % 4]
            if not e.adjacent(a, b):
                continue
            if not pg.is_kite_corner(cid, j):
                out.append((cid, j, (j + 1) % 4))
    return out


def add_kite_edges(e: OnePlaneEmbedding) -> OnePlaneEmbedding:
    """Duplicate every kite edge that is not drawn beside its crossing.

    The duplicate of ``(cw[j], cw[j+1])`` is inserted clockwise-before the
    crossed edge at ``cw[j]`` and clockwise-after the crossed edge at
    ``cw[j+1]``, which closes the triangular kite face at that corner.
    """
    require_valid(e)
    x = find_x_crossing(e)
    if x is not None:
        raise XCrossingError(x, e.crossings[x].cw)
    corners = missing_kite_corners(e)
    if not corners:
        return e

    edges = list(e.edges)
    before: dict[tuple[int, int], list[int]] = {}
    after: dict[tuple[int, int], list[int]] = {}
    for cid, j, j1 in corners:
        cr = e.crossings[cid]
        a, b = cr.cw[j], cr.cw[j1]
        ea = cr.edge_a if j % 2 == 0 else cr.edge_b
        eb = cr.edge_b if j % 2 == 0 else cr.edge_a
        new = len(edges)
        edges.append((a, b))
        before.setdefault((a, ea), []).append(new)
        after.setdefault((b, eb), []).append(new)

    rotations = []
    for v, rot in enumerate(e.rotations):
        out: list[int] = []
        for eid in rot:
            out.extend(before.get((v, eid), ()))
            out.append(eid)
            out.extend(after.get((v, eid), ()))
        rotations.append(tuple(out))
    result = OnePlaneEmbedding(e.n, tuple(edges), tuple(rotations), e.crossings)
    rep = validate(result)
    if not rep.ok:
        from .errors import InternalInvariantError

        raise InternalInvariantError("kite insertion broke the embedding: " + "; ".join(rep.violations))
    return result
