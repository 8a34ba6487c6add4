"""Pruned landmark labeling: exact 2-hop distance labels and queries.

Roots are processed in decreasing-degree order; each root's BFS visits a
vertex only while the labels built so far cannot already answer the
root-vertex distance, and adds (root, distance) to the labels of the
vertices it does visit. The resulting labeling answers any same-component
distance exactly as min over common hubs of the two stored distances.
"""

from __future__ import annotations

import struct
from array import array
from dataclasses import dataclass

import numpy as np

from .graph import Graph, UNREACHED, _bump_bfs_counter, _gather_neighbors

_MAGIC = b"PLL1"
_BYTES_PER_ENTRY = 6  # 32-bit hub id + 16-bit distance


@dataclass(frozen=True)
class HubLabeling:
    """Per-vertex (hub, distance) lists, hub ids ascending."""

    n: int
    hubs: tuple[np.ndarray, ...]
    dists: tuple[np.ndarray, ...]
    build_order: np.ndarray

    def label_sizes(self) -> np.ndarray:
        return np.asarray([h.size for h in self.hubs], dtype=np.int64)

    def total_entries(self) -> int:
        return int(self.label_sizes().sum())


def default_build_order(g: Graph) -> np.ndarray:
    """Decreasing degree, ties toward the lowest id."""
    return np.lexsort((np.arange(g.n), -g.degrees()))


def _prune_frontier(frontier: np.ndarray, hub_arrs, dist_arrs,
                    root_dist: np.ndarray, d: int) -> np.ndarray:
    """Keep only vertices whose existing labels cannot already answer the
    root distance d (batched segmented min over the frontier's labels)."""
    fl = frontier.tolist()
    sizes = np.asarray([len(hub_arrs[v]) for v in fl], dtype=np.int64)
    nz = sizes > 0
    if not nz.any():
        return frontier
    flat_h = np.concatenate(
        [np.frombuffer(hub_arrs[v], dtype=np.int64) for v, s in zip(fl, sizes)
         if s])
    flat_d = np.concatenate(
        [np.frombuffer(dist_arrs[v], dtype=np.int64) for v, s in zip(fl, sizes)
         if s])
    nz_sizes = sizes[nz]
    starts = np.concatenate(([0], np.cumsum(nz_sizes)[:-1]))
    mins = np.minimum.reduceat(root_dist[flat_h] + flat_d, starts)
    keep = np.ones(frontier.size, dtype=bool)
    keep[nz] = mins > d
    return frontier[keep]


def build_labels(g: Graph, order=None, prune: bool = True) -> HubLabeling:
    """Construct the labeling; covers every component of g.

    order may be a prefix of the vertices (a partial build); the default
    is all vertices by decreasing degree. prune=False builds the naive
    full labeling (every root labels everything it reaches) and exists to
    demonstrate that pruning is lossless.
    """
    if order is None:
        order = default_build_order(g)
    order = np.asarray(order, dtype=np.int64)
    n = g.n
    hub_arrs = [array("l") for _ in range(n)]
    dist_arrs = [array("l") for _ in range(n)]
    # dense view of the current root's previously built label
    root_dist = np.full(n, np.iinfo(np.int64).max // 4, dtype=np.int64)
    dist = np.full(n, UNREACHED, dtype=np.int32)
    for root in order.tolist():
        _bump_bfs_counter()
        r_hubs = np.frombuffer(hub_arrs[root], dtype=np.int64).copy()
        r_dists = np.frombuffer(dist_arrs[root], dtype=np.int64).copy()
        root_dist[r_hubs] = r_dists
        frontier = np.array([root], dtype=np.int64)
        dist[root] = 0
        visited = [frontier]
        d = 0
        while frontier.size:
            if prune:
                frontier = _prune_frontier(frontier, hub_arrs, dist_arrs,
                                           root_dist, d)
            for v in frontier.tolist():
                hub_arrs[v].append(root)
                dist_arrs[v].append(d)
            if frontier.size == 0:
                break
            nxt = _gather_neighbors(g.offsets, g.neighbors, frontier)
            if nxt.size:
                nxt = nxt[dist[nxt] == UNREACHED]
            if nxt.size == 0:
                break
            nxt = np.unique(nxt)
            d += 1
            dist[nxt] = d
            visited.append(nxt.astype(np.int64))
            frontier = nxt.astype(np.int64)
        dist[np.concatenate(visited)] = UNREACHED
        root_dist[r_hubs] = np.iinfo(np.int64).max // 4
    hubs = []
    dists = []
    for v in range(n):
        h = np.frombuffer(hub_arrs[v], dtype=np.int64).astype(np.int64)
        dd = np.frombuffer(dist_arrs[v], dtype=np.int64).astype(np.int64)
        srt = np.argsort(h, kind="stable")
        hubs.append(h[srt])
        dists.append(dd[srt])
    return HubLabeling(n=n, hubs=tuple(hubs), dists=tuple(dists),
                       build_order=order)


def query(labels: HubLabeling, s: int, t: int) -> int:
    """min over common hubs of d(s,h) + d(h,t); UNREACHED when the label
    sets share no hub (different components)."""
    hs, ht = labels.hubs[s], labels.hubs[t]
    common, is_, it_ = np.intersect1d(hs, ht, assume_unique=True,
                                      return_indices=True)
    if common.size == 0:
        return UNREACHED
    return int((labels.dists[s][is_] + labels.dists[t][it_]).min())


def label_stats(labels: HubLabeling) -> dict:
    sizes = labels.label_sizes()
    total = int(sizes.sum())
    return {
        "n": labels.n,
        "total_entries": total,
        "avg_label_size": total / labels.n if labels.n else 0.0,
        "max_label_size": int(sizes.max()) if labels.n else 0,
        "estimated_bytes": total * _BYTES_PER_ENTRY,
    }


def save_labels(labels: HubLabeling, path) -> None:
    """Binary format: magic "PLL1", n (u32 LE), total entries (u64 LE),
    per-vertex entry counts (u32 LE each), then each vertex's (hub u32 LE,
    distance u16 LE) pairs with hubs ascending. Bit-exact for goldens."""
    sizes = labels.label_sizes()
    total = int(sizes.sum())
    rec = np.dtype([("hub", "<u4"), ("dist", "<u2")])
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<IQ", labels.n, total))
        sizes.astype("<u4").tofile(fh)
        flat = np.empty(total, dtype=rec)
        pos = 0
        for v in range(labels.n):
            k = int(sizes[v])
            flat["hub"][pos:pos + k] = labels.hubs[v]
            flat["dist"][pos:pos + k] = labels.dists[v]
            pos += k
        flat.tofile(fh)


def load_labels(path) -> HubLabeling:
    rec = np.dtype([("hub", "<u4"), ("dist", "<u2")])
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _MAGIC:
            raise ValueError(f"{path}: not a label file")
        n, total = struct.unpack("<IQ", fh.read(12))
        sizes = np.fromfile(fh, dtype="<u4", count=n).astype(np.int64)
        flat = np.fromfile(fh, dtype=rec, count=total)
    if int(sizes.sum()) != total:
        raise ValueError(f"{path}: truncated label file")
    bounds = np.concatenate(([0], np.cumsum(sizes)))
    hubs = tuple(flat["hub"][bounds[v]:bounds[v + 1]].astype(np.int64)
                 for v in range(n))
    dists = tuple(flat["dist"][bounds[v]:bounds[v + 1]].astype(np.int64)
                  for v in range(n))
    return HubLabeling(n=int(n), hubs=hubs, dists=dists,
                       build_order=np.empty(0, dtype=np.int64))
