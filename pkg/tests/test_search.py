from __future__ import annotations

import pytest

from conftest import k4_crossing, small_corpus
from onepl.embed import OnePlaneEmbedding, add_kite_edges
from onepl.errors import WidthBlowupError, XCrossingError
from onepl.layers import assemble_window, augment_window, bfs_layering, build_aux, window_indices
from onepl.oracle.brute import brute_kappa, exhaustive_cosep
from onepl.oracle.generators import gen_arrow_single, gen_cylinder, gen_random_1plane, gen_xcross_rings
from onepl.planar import crossed_edge_map, radial_planarization
from onepl.search import (COMPLETE, Label, check_cosep, find_cosep, kappa, verify_separator,
                          window_width)
from onepl.tdecomp import augment_decomposition, make_nice, tree_decompose


def windows_plus(e, k):
    e2 = add_kite_edges(e)
    lg = radial_planarization(e2)
    bl = bfs_layering(lg)
    aux = build_aux(bl)
    crossed = crossed_edge_map(e2, lg)
    w = window_width(k)
    for i in window_indices(bl, w):
        win = assemble_window(bl, aux, i, w)
        wp = augment_window(win, crossed)
        yield win, wp, augment_decomposition(tree_decompose(win), wp)


def test_window_width():
    assert [window_width(k) for k in (1, 2, 7)] == [6, 10, 30]


@pytest.mark.parametrize("e,expected", [
    (gen_cylinder(4, 1), 2),
    (gen_cylinder(5, 3), 3),
    (gen_cylinder(6, 8), 3),
    (gen_arrow_single(), 1),
])
def test_kappa_small_known(e, expected):
    res = kappa(e, check=True)
    assert res.kappa == expected
    assert len(res.witness) == expected and verify_separator(e, res.witness)


def test_complete_graphs():
    res = kappa(k4_crossing())
    assert res.kappa == 3 and res.witness is COMPLETE and res.complete
    edge = OnePlaneEmbedding(2, ((0, 1),), ((0,), (0,)), ())
    assert kappa(edge).kappa == 1 and kappa(edge).complete


def test_x_crossing_rejected():
    with pytest.raises(XCrossingError):
        kappa(gen_xcross_rings(2, 5))


@pytest.mark.parametrize("engine", ["components", "labels"])
def test_kappa_matches_oracle_on_corpus(engine):
    for e in small_corpus():
        res = kappa(e, check=True, engine=engine)
        assert res.kappa == brute_kappa(e).kappa
        assert verify_separator(e, res.witness)


def test_unpruned_search_matches():
    for e in small_corpus()[:6]:
        assert kappa(e, prune=False).kappa == brute_kappa(e).kappa


def test_ceiling_raises_width_blowup():
    with pytest.raises(WidthBlowupError) as info:
        kappa(gen_random_1plane(3, 30), ceiling=2)
    assert info.value.ceiling == 2


def test_verify_separator():
    e = gen_cylinder(4, 1)
    assert verify_separator(e, [0, 2])
    assert not verify_separator(e, [0, 1])
    assert not verify_separator(e, [0, 1, 2])
    assert not verify_separator(e, [9])


def test_find_cosep_agrees_with_exhaustive():
    checked = found = 0
    for seed in range(40):
        e = gen_random_1plane(seed, 4 + seed % 3)
        for k in range(1, 8):
            for win, wp, tp in windows_plus(e, k):
                if wp.n > 14:
                    continue
                ex = exhaustive_cosep(wp, k)
                for engine in ("components", "labels"):
                    for prune in (True, False):
                        r = find_cosep(wp, tp, k, prune=prune, engine=engine)
                        assert (r is None) == (ex is None)
                        if r is not None:
                            assert check_cosep(wp, r.labels, k)
                checked += 1
                found += ex is not None
    assert checked > 100 and found > 10


def test_find_cosep_accepts_nice_decomposition():
    e = small_corpus()[0]
    k = brute_kappa(e).kappa
    hits = [find_cosep(wp, make_nice(tp), k) for _, wp, tp in windows_plus(e, k)]
    assert any(h is not None for h in hits)


def test_check_cosep_conditions():
    e = gen_cylinder(4, 1)
    _, wp, _ = next(windows_plus(e, 2))
    r = find_cosep(wp, tree_decompose(wp), 2)
    assert r is not None
    labels = list(r.labels)
    assert check_cosep(wp, labels, 2)
    assert not check_cosep(wp, labels, 1)
    # an A vertex next to a B vertex breaks the triple
    a = next(v for v in range(wp.n) if labels[v] == Label.A)
    nb = next(iter(wp.adj[a]))
    broken = list(labels)
    broken[nb] = Label.B
    assert labels[nb] != Label.B and not check_cosep(wp, broken, 2)
    assert sorted(r.separator()) in ([0, 2], [1, 3])


def test_stats_reported():
    res = kappa(gen_cylinder(6, 10))
    for key in ("windows", "dp_bag", "width", "depth", "lambda_n", "window", "seconds"):
        assert key in res.stats
