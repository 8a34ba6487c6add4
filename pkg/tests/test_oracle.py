import numpy as np
import pytest

from mgraph import genmodel as GM
from mgraph import graph as G
from mgraph import oracle as O


def path4():
    return G.build_from_edges([(0, 1), (1, 2), (2, 3)])


def star5():
    return G.build_from_edges([(0, i) for i in range(1, 6)])


def test_star_labels_golden():
    lab = O.build_labels(star5())
    # hub first; every leaf holds exactly {(center,1), (self,0)}
    for leaf in range(1, 6):
        assert lab.hubs[leaf].tolist() == [0, leaf]
        assert lab.dists[leaf].tolist() == [1, 0]
    assert lab.hubs[0].tolist() == [0]
    assert lab.total_entries() == 11
    assert lab.total_entries() <= 2 * 6


def test_star_stats_golden():
    stats = O.label_stats(O.build_labels(star5()))
    assert stats["total_entries"] == 11
    assert stats["avg_label_size"] == 11 / 6
    assert stats["max_label_size"] == 2
    assert stats["estimated_bytes"] == 11 * 6


def test_p4_total_golden():
    lab = O.build_labels(path4())
    assert lab.total_entries() == 8
    assert lab.total_entries() <= 10


def test_k2_total_golden():
    lab = O.build_labels(G.build_from_edges([(0, 1)]))
    assert lab.total_entries() == 3


def test_query_examples():
    lab = O.build_labels(star5())
    assert all(O.query(lab, v, v) == 0 for v in range(6))
    assert O.query(lab, 1, 2) == 2
    assert O.query(lab, 0, 3) == 1
    lab4 = O.build_labels(path4())
    assert O.query(lab4, 0, 3) == 3


def test_query_cross_component_unreached():
    g = G.build_from_edges([(0, 1), (2, 3)])
    lab = O.build_labels(g)
    assert O.query(lab, 0, 2) == G.UNREACHED
    assert O.query(lab, 0, 1) == 1


def _random_graphs(count, seed, lo=5, hi=200):
    rng = np.random.default_rng(seed)
    made = 0
    while made < count:
        n = int(rng.integers(lo, hi))
        pairs = rng.integers(0, n, size=(int(rng.integers(n // 2, 3 * n)), 2))
        try:
            yield G.build_from_edges(pairs)
        except ValueError:
            continue
        made += 1


def test_exactness_full_enumeration():
    for g in _random_graphs(10, seed=3):
        lab = O.build_labels(g)
        for s in range(g.n):
            dist = G.bfs(g, s).dist
            for t in range(g.n):
                assert O.query(lab, s, t) == int(dist[t])


def test_pruning_lossless():
    for g in _random_graphs(6, seed=4, hi=120):
        pruned = O.build_labels(g)
        full = O.build_labels(g, prune=False)
        assert pruned.total_entries() <= full.total_entries()
        for s in range(g.n):
            for t in range(g.n):
                assert O.query(pruned, s, t) == O.query(full, s, t)


def test_monotone_build_keeps_correct_answers():
    g = next(iter(_random_graphs(1, seed=6, lo=30, hi=60)))
    order = O.default_build_order(g)
    dist = {s: G.bfs(g, s).dist for s in range(g.n)}
    correct: set[tuple[int, int]] = set()
    for i in range(1, g.n + 1):
        lab = O.build_labels(g, order=order[:i])
        now = {(s, t) for s in range(g.n) for t in range(g.n)
               if O.query(lab, s, t) == int(dist[s][t])}
        assert correct <= now  # later roots never break earlier answers
        correct = now
    assert len(correct) == g.n * g.n


def test_exactness_on_model_graphs():
    rng = np.random.default_rng(8)
    for kind, beta in [("cm", 2.5), ("cl", 1.5), ("nr", 3.5)]:
        g = GM.generate_graph(GM.ModelSpec(kind=kind, n=500, beta=beta, seed=2))
        lab = O.build_labels(g)
        for s in rng.choice(g.n, 8, replace=False):
            dist = G.bfs(g, int(s)).dist
            for t in rng.choice(g.n, 50, replace=False):
                assert O.query(lab, int(s), int(t)) == int(dist[t])


def test_file_round_trip_bit_exact(tmp_path):
    g = GM.generate_graph(GM.ModelSpec(kind="cm", n=300, beta=2.5, seed=5))
    lab = O.build_labels(g)
    p1, p2 = tmp_path / "a.pll", tmp_path / "b.pll"
    O.save_labels(lab, p1)
    again = O.load_labels(p1)
    assert O.label_stats(again) == O.label_stats(lab)
    for v in range(g.n):
        assert np.array_equal(again.hubs[v], lab.hubs[v])
        assert np.array_equal(again.dists[v], lab.dists[v])
    O.save_labels(again, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_file_header_layout(tmp_path):
    lab = O.build_labels(G.build_from_edges([(0, 1)]))
    p = tmp_path / "k2.pll"
    O.save_labels(lab, p)
    raw = p.read_bytes()
    assert raw[:4] == b"PLL1"
    n = int.from_bytes(raw[4:8], "little")
    total = int.from_bytes(raw[8:16], "little")
    assert (n, total) == (2, 3)
    assert len(raw) == 16 + 4 * n + 6 * total


def test_load_rejects_bad_magic(tmp_path):
    p = tmp_path / "junk.pll"
    p.write_bytes(b"NOPE" + b"\0" * 12)
    with pytest.raises(ValueError, match="not a label file"):
        O.load_labels(p)
