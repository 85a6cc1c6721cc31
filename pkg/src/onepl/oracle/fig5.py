"""A 4-connected 1-plane graph whose minimum separator lies on no short radial cycle.

Reconstructed fixture: the drawing below was built by hand to have the
advertised properties (only arrow and chair crossings, exactly one chair,
connectivity 4, a minimum separator ``S`` no two of whose vertices share a
face), and every property is re-checked by the tests.  It is not a copy of any
published drawing.

Layout, in concentric rings around a hub:

* inner flap: hub ``h``, ring ``i0..i3``, tails ``tau0..tau3``;
* separator: tips ``t0..t3``; each ``t_k - tau_k`` crosses the base edge
  ``b1_k - b2_k`` of the outer flap, an arrow with tip ``t_k``;
* outer flap: bases, middle vertices and an outer ring ``o0..o3``.

The crossing at ``t0`` lacks the kite edge ``t0 - b2_0`` and is the chair;
``m0`` is split in two so that ``b2_0`` keeps degree four.
"""

from __future__ import annotations

import math

from ..embed import OnePlaneEmbedding
from ..planar import RADIAL, radial_planarization

__all__ = ["fig5_embedding", "fig5_augmented", "fig5_separator", "fig5_names", "radial_cycles_through"]


def _polar(r: float, deg: float) -> tuple[float, float]:
    a = math.radians(deg)
    return (r * math.cos(a), r * math.sin(a))


def _drawing(augmented: bool = False):
    pts: list[tuple[float, float]] = []
    name: dict[str, int] = {}

    def add(nm, p):
        name[nm] = len(pts)
        pts.append(p)

    add("h", (0.0, 0.0))
    for k in range(4):
        add(f"i{k}", _polar(0.8, 45 + 90 * k))
        add(f"tau{k}", _polar(1.5, 90 * k))
        add(f"b1_{k}", _polar(2.0, 90 * k - 15))
        add(f"b2_{k}", _polar(2.0, 90 * k + 15))
        add(f"t{k}", _polar(2.5, 90 * k))
        add(f"o{k}", _polar(4.2, 90 * k + 45))
        if k == 0:
            add("m0a", _polar(2.8, 25))
            add("m0b", _polar(2.8, 65))
        else:
            add(f"m{k}", _polar(3.0, 90 * k + 45))

    pairs = []
    for k in range(4):
        k1, km = (k + 1) % 4, (k - 1) % 4
        pairs += [("h", f"i{k}"), (f"i{k}", f"i{k1}"), (f"tau{k}", f"i{k}"), (f"tau{k}", f"i{km}"),
                  (f"tau{k}", f"tau{k1}"), (f"t{k}", f"tau{k}"), (f"b1_{k}", f"b2_{k}"),
                  (f"t{k}", f"b1_{k}"), (f"b2_{k}", f"b1_{k1}"), (f"o{k}", f"o{k1}"),
                  (f"o{k}", f"t{k1}")]
        if k == 0:
            pairs += [("m0a", "t0"), ("m0a", "b2_0"), ("m0a", "m0b"), ("m0a", "o0"),
                      ("m0b", "b2_0"), ("m0b", "b1_1"), ("m0b", "t1"), ("m0b", "o0")]
        else:
            pairs += [(f"t{k}", f"b2_{k}"), (f"m{k}", f"b2_{k}"), (f"m{k}", f"b1_{k1}"),
                      (f"m{k}", f"t{k}"), (f"m{k}", f"t{k1}"), (f"o{k}", f"m{k}")]
    if augmented:
        pairs.append(("t0", "b2_0"))
    return pts, [(name[a], name[b]) for a, b in pairs], name


def fig5_names() -> dict[str, int]:
    return dict(_drawing()[2])


def fig5_embedding() -> OnePlaneEmbedding:
    from .generators import from_drawing

    pts, edges, _ = _drawing()
    return from_drawing(pts, edges)


def fig5_augmented() -> OnePlaneEmbedding:
    """The graph with the one kite edge that can be added without joining the flaps of the tips.

    Adding ``t0 - b2_0`` turns the chair into an arrow; every crossing is then an arrow.
    """
    from .generators import from_drawing

    pts, edges, _ = _drawing(augmented=True)
    return from_drawing(pts, edges)


def fig5_separator() -> list[int]:
    """The four arrow tips: a minimum separating set."""
    name = fig5_names()
    return sorted(name[f"t{k}"] for k in range(4))


def radial_cycles_through(e: OnePlaneEmbedding, s, length: int, limit: int | None = None) -> list[list[int]]:
    """Simple cycles of exactly ``length`` radial edges through every vertex of ``s``.

    Exhaustive DFS from the smallest vertex of ``s``; each cycle is reported once
    per direction.  ``limit`` stops early after that many cycles.
    """
    lam = radial_planarization(e)
    adj: list[set[int]] = [set() for _ in lam.kinds]
    for i, (a, b) in enumerate(lam.edges):
        if lam.edge_kinds[i] == RADIAL:
            adj[a].add(b)
            adj[b].add(a)
    s = set(s)
    s0 = min(s)
    out: list[list[int]] = []
    path = [s0]
    on = {s0}

    def dfs() -> bool:
        v = path[-1]
        if len(path) == length:
            if s0 in adj[v] and s <= on:
                out.append(list(path))
                return limit is not None and len(out) >= limit
            return False
        missing = len(s - on)
        if length - len(path) < missing:
            return False
        for w in adj[v]:
            if w not in on:
                path.append(w)
                on.add(w)
                stop = dfs()
                path.pop()
                on.discard(w)
                if stop:
                    return True
        return False

    dfs()
    return out
