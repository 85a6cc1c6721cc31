from __future__ import annotations

import functools

import pytest

from onepl.embed import OnePlaneEmbedding
from onepl.oracle.generators import from_drawing, gen_full_random, gen_random_1plane


def k4_crossing() -> OnePlaneEmbedding:
    """K4 drawn on a square with crossing diagonals; all four sides are kite edges."""
    return from_drawing([(0, 0), (1, 0), (1, 1), (0, 1)],
                        [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)])


def k4_kite_elsewhere() -> OnePlaneEmbedding:
    """K4 crossing plus vertex 4 on (0,1); the side edge 0-1 is routed around vertex 4."""
    base = from_drawing([(0, 0), (1, 0), (1, 1), (0, 1), (0.5, -1)],
                        [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3), (4, 0), (4, 1)])
    rot = list(base.rotations)
    rot[0] = (3, 4, 6, 0)
    rot[1] = (0, 7, 5, 1)
    return OnePlaneEmbedding(5, base.edges, tuple(rot), base.crossings)


@functools.lru_cache(maxsize=None)
def small_corpus(count: int = 24) -> tuple[OnePlaneEmbedding, ...]:
    out = []
    for seed in range(count):
        size = 6 + (seed * 7) % 30
        gen = gen_random_1plane if seed % 2 == 0 else gen_full_random
        out.append(gen(seed, size))
    return tuple(out)


@pytest.fixture
def corpus():
    return small_corpus()
