"""Immutable compressed-adjacency graphs and the BFS kernel.

Everything in this package runs on one representation: a CSR pair
(offsets, neighbors) over contiguous vertex ids 0..n-1, undirected and
simple (no self-loops, no parallel edges, symmetric adjacency, neighbor
lists sorted ascending). BFS is the single traversal primitive; all
higher-level machinery (eccentricities, growth profiles, bound
refinement, hub labelings) is built on it.

Graphs are frozen after construction and safe to share across workers;
each BFS owns its scratch arrays.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

# Reserved maximal distance value for unreachable vertices. Kept maximal
# (never -1) so distance comparisons stay monotone.
UNREACHED = int(np.iinfo(np.int32).max)

_EMPTY_I32 = np.empty(0, dtype=np.int32)

# Running count of BFS invocations, used by the algorithm layer to report
# honest per-run BFS budgets.
_bfs_calls = 0


def bfs_call_count() -> int:
    """Total number of bfs() invocations in this process so far."""
    return _bfs_calls


def _bump_bfs_counter(k: int = 1) -> None:
    """Account for BFS work done by a caller's own traversal loop."""
    global _bfs_calls
    _bfs_calls += k


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph in CSR form.

    offsets has length n+1 with offsets[0] == 0 and offsets[n] == 2m;
    neighbors holds each vertex's adjacency sorted ascending.
    orig_ids, when present, maps the contiguous ids back to the ids seen
    in the input edge list (orig_ids[new] == old).
    """

    n: int
    m: int
    offsets: np.ndarray
    neighbors: np.ndarray
    orig_ids: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        self.offsets.flags.writeable = False
        self.neighbors.flags.writeable = False

    def degree(self, v: int) -> int:
        return int(self.offsets[v + 1] - self.offsets[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def neighbors_of(self, v: int) -> np.ndarray:
        return self.neighbors[self.offsets[v]:self.offsets[v + 1]]

    def max_degree_vertex(self) -> int:
        # ties broken by lowest id (argmax returns the first maximum)
        return int(np.argmax(self.degrees()))


@dataclass(frozen=True)
class DistanceArray:
    """Hop distances from one source; UNREACHED marks other components."""

    source: int
    dist: np.ndarray

    def reached(self) -> np.ndarray:
        return self.dist != UNREACHED

    def eccentricity(self) -> int:
        d = self.dist[self.dist != UNREACHED]
        return int(d.max())

    def level_sizes(self) -> np.ndarray:
        d = self.dist[self.dist != UNREACHED]
        return np.bincount(d)


def _graph_from_pairs(n: int, u: np.ndarray, v: np.ndarray,
                      orig_ids: np.ndarray | None = None) -> Graph:
    """CSR over a fixed id space 0..n-1; drops self-loops and duplicates."""
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    keep = u != v
    u, v = u[keep], v[keep]
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    key = lo * n + hi
    key = np.unique(key)
    lo = (key // n).astype(np.int64)
    hi = (key % n).astype(np.int64)
    m = lo.size
    src = np.concatenate([lo, hi])
    dst = np.concatenate([hi, lo])
    order = np.lexsort((dst, src))
    neighbors = dst[order].astype(np.int32)
    counts = np.bincount(src, minlength=n)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return Graph(n=n, m=int(m), offsets=offsets, neighbors=neighbors,
                 orig_ids=orig_ids)


def build_from_edges(pairs) -> Graph:
    """Build a simple undirected Graph from raw (u, v) pairs.

    Accepts duplicates, self-loops and both orientations; all are
    collapsed (they do not change distances). Arbitrary nonnegative ids
    are remapped to 0..n-1 in ascending order; the remap is retrievable
    through Graph.orig_ids.
    """
    arr = np.asarray(pairs, dtype=np.int64)
    if arr.size == 0:
        raise ValueError("empty graph")
    arr = arr.reshape(-1, 2)
    if arr.min() < 0:
        raise ValueError("vertex ids must be nonnegative")
    ids = np.unique(arr)
    remapped = np.searchsorted(ids, arr)
    return _graph_from_pairs(len(ids), remapped[:, 0], remapped[:, 1],
                             orig_ids=ids)


def _gather_neighbors(offsets: np.ndarray, neighbors: np.ndarray,
                      frontier: np.ndarray) -> np.ndarray:
    """Concatenated neighbor lists of all frontier vertices."""
    starts = offsets[frontier]
    counts = offsets[frontier + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return _EMPTY_I32
    shift = np.concatenate(([0], np.cumsum(counts)[:-1]))
    idx = np.repeat(starts - shift, counts) + np.arange(total)
    return neighbors[idx]


def _bfs_levels(g: Graph, s: int, stop_level_gt: int | None = None):
    """Level-synchronous BFS from s.

    Returns (dist, level_sizes). When stop_level_gt is given, the search
    stops right after completing the first level whose size exceeds it;
    dist is then only valid for the levels produced. Frontiers are kept
    sorted, so iteration order is deterministic.

    Two expansion strategies are mixed per level: gather the frontier's
    adjacency when its edge mass is small, or scan the whole edge array
    with a segmented reduction when the frontier is a large share of the
    graph (fewer passes, no per-level index construction).
    """
    global _bfs_calls
    _bfs_calls += 1
    if not 0 <= s < g.n:
        raise ValueError(f"source {s} out of range for n={g.n}")
    n = g.n
    offsets, neighbors = g.offsets, g.neighbors
    dist = np.full(n, UNREACHED, dtype=np.int32)
    dist[s] = 0
    frontier = np.array([s], dtype=np.int64)
    sizes = [1]
    d = 0
    dense_cut = (neighbors.size * 5) >> 3
    seg_starts = None
    while True:
        if stop_level_gt is not None and sizes[-1] > stop_level_gt:
            break
        if frontier.size == 1:
            v = frontier[0]
            nxt = neighbors[offsets[v]:offsets[v + 1]]
            edge_mass = nxt.size
        else:
            starts = offsets[frontier]
            counts = offsets[frontier + 1] - starts
            edge_mass = int(counts.sum())
            nxt = None
        if edge_mass == 0:
            break
        if nxt is None and edge_mass <= dense_cut:
            shift = np.concatenate(([np.int64(0)], np.cumsum(counts)[:-1]))
            idx = np.repeat(starts - shift, counts)
            idx += np.arange(edge_mass, dtype=np.int64)
            nxt = neighbors[idx]
        if nxt is not None:
            cand = nxt[dist[nxt] == UNREACHED]
            if cand.size == 0:
                break
            d += 1
            dist[cand] = d
            if cand.size > (n >> 4):
                frontier = np.flatnonzero(dist == d)
            else:
                frontier = np.unique(cand).astype(np.int64)
        else:
            # dense: mark vertices adjacent to the current level
            if seg_starts is None:
                seg_starts = np.minimum(offsets[:-1], neighbors.size - 1)
                has_edges = offsets[1:] > offsets[:-1]
            hit = np.logical_or.reduceat(dist[neighbors] == d, seg_starts)
            hit &= has_edges
            hit &= dist == UNREACHED
            frontier = np.flatnonzero(hit)
            if frontier.size == 0:
                break
            d += 1
            dist[frontier] = d
        sizes.append(int(frontier.size))
    return dist, np.asarray(sizes, dtype=np.int64)


def bfs(g: Graph, s: int) -> DistanceArray:
    """Exact hop distances from s; unreachable vertices carry UNREACHED."""
    dist, _ = _bfs_levels(g, s)
    return DistanceArray(source=int(s), dist=dist)


def _bfs_level_sizes_capped(g: Graph, s: int, k_stop: int) -> np.ndarray:
    """Level sizes until the first level exceeding k_stop.

    The final entry may undercount its level, but only once it is already
    above k_stop; every earlier entry is exact. Consumers compare sizes
    against thresholds <= k_stop only, so the answers match a full BFS
    while never materializing a huge hub level.
    """
    global _bfs_calls
    _bfs_calls += 1
    offsets, neighbors = g.offsets, g.neighbors
    dist = np.full(g.n, UNREACHED, dtype=np.int32)
    dist[s] = 0
    frontier = np.array([s], dtype=np.int64)
    sizes = [1]
    d = 0
    mass_limit = max(4 * k_stop, 2048)
    while sizes[-1] <= k_stop:
        cum = np.cumsum(offsets[frontier + 1] - offsets[frontier])
        nf = frontier.size
        d += 1
        new_chunks = []
        new_count = 0
        start = 0
        bailed = False
        while start < nf:
            base = int(cum[start - 1]) if start else 0
            end = int(np.searchsorted(cum, base + mass_limit)) + 1
            end = min(max(end, start + 1), nf)
            if end == start + 1:
                # single vertex: walk its adjacency in windows so one
                # giant hub cannot force a full-degree gather
                v = int(frontier[start])
                lo, hi = int(offsets[v]), int(offsets[v + 1])
                pieces = [neighbors[a:min(a + mass_limit, hi)]
                          for a in range(lo, hi, mass_limit)] or [_EMPTY_I32]
            else:
                pieces = [_gather_neighbors(offsets, neighbors,
                                            frontier[start:end])]
            start = end
            for nxt in pieces:
                if nxt.size:
                    nxt = nxt[dist[nxt] == UNREACHED]
                if nxt.size:
                    nxt = np.unique(nxt)
                    dist[nxt] = d
                    new_chunks.append(nxt)
                    new_count += int(nxt.size)
                    if new_count > k_stop:
                        bailed = True
                        break
            if bailed:
                break
        if new_count == 0:
            break
        sizes.append(new_count)
        if bailed:
            break
        frontier = np.concatenate(new_chunks) if len(new_chunks) > 1 \
            else new_chunks[0]
        frontier = np.sort(frontier).astype(np.int64)
    return np.asarray(sizes, dtype=np.int64)


def multi_source_sweep(g: Graph, sources) -> tuple[np.ndarray, np.ndarray]:
    """Eccentricity of every source plus pointwise min distance to the set.

    Runs the sources' BFSes in batches of 64 sharing one pass per level:
    each vertex carries a bitmask of which batch members have reached it,
    and a level advances all of them with a single segmented OR over the
    edge array. Results are identical to per-source BFS; each source is
    counted as one BFS invocation.
    """
    global _bfs_calls
    sources = np.asarray(sources, dtype=np.int64)
    if sources.size != np.unique(sources).size:
        raise ValueError("sources must be distinct")
    _bfs_calls += int(sources.size)
    n = g.n
    neighbors = g.neighbors
    seg_starts = np.minimum(g.offsets[:-1], max(neighbors.size - 1, 0))
    no_edges = g.offsets[1:] == g.offsets[:-1]
    eccs = np.zeros(sources.size, dtype=np.int64)
    min_dist = np.full(n, UNREACHED, dtype=np.int32)
    for b0 in range(0, sources.size, 64):
        batch = sources[b0:b0 + 64]
        bits = np.uint64(1) << np.arange(batch.size, dtype=np.uint64)
        mask = np.zeros(n, dtype=np.uint64)
        mask[batch] = bits
        min_dist[batch] = 0
        cur = mask.copy()
        level = 0
        if neighbors.size == 0:
            continue
        while True:
            agg = np.bitwise_or.reduceat(cur[neighbors], seg_starts)
            agg[no_edges] = 0
            new = agg & ~mask
            alive = int(np.bitwise_or.reduce(new))
            if alive == 0:
                break
            level += 1
            idx = np.flatnonzero((mask == 0) & (new != 0))
            min_dist[idx] = np.minimum(min_dist[idx], np.int32(level))
            mask |= new
            i = 0
            while alive:
                if alive & 1:
                    eccs[b0 + i] = level
                alive >>= 1
                i += 1
            cur = new
    return eccs, min_dist


def connected_components(g: Graph) -> np.ndarray:
    """Component label per vertex; labels are assigned in id order."""
    labels = np.full(g.n, -1, dtype=np.int64)
    comp = 0
    for v in range(g.n):
        if labels[v] >= 0:
            continue
        dist, _ = _bfs_levels(g, v)
        labels[dist != UNREACHED] = comp
        comp += 1
    return labels


def is_connected(g: Graph) -> bool:
    dist, _ = _bfs_levels(g, 0)
    return bool(np.all(dist != UNREACHED))


def giant_component(g: Graph) -> tuple[Graph, np.ndarray]:
    """Induced subgraph on the largest component plus the old->new id map.

    Ties between equal-size components are broken by the smallest
    contained original id. Dropped vertices map to -1.
    """
    labels = connected_components(g)
    sizes = np.bincount(labels)
    # labels are assigned in ascending order of their smallest member, so
    # argmax picks the tied component containing the smallest id.
    best = int(np.argmax(sizes))
    keep = labels == best
    old_to_new = np.full(g.n, -1, dtype=np.int64)
    old_to_new[keep] = np.arange(int(keep.sum()))
    nk = int(keep.sum())
    if g.m:
        src = np.repeat(np.arange(g.n, dtype=np.int64), np.diff(g.offsets))
        dst = g.neighbors.astype(np.int64)
        sel = keep[src] & (src < dst)
        sub = _graph_from_pairs(nk, old_to_new[src[sel]], old_to_new[dst[sel]])
    else:
        sub = Graph(n=nk, m=0, offsets=np.zeros(nk + 1, np.int64),
                    neighbors=_EMPTY_I32.copy())
    return sub, old_to_new


def save_edge_list(g: Graph, path) -> None:
    """Write one 'u v' line per edge (u < v, ascending), newline-terminated.

    The format carries edges only, so isolated vertices are not
    representable; every generator output has minimum degree 1.
    """
    src = np.repeat(np.arange(g.n, dtype=np.int64), np.diff(g.offsets))
    dst = g.neighbors
    sel = src < dst
    u, v = src[sel], dst[sel]
    with open(path, "w", encoding="utf-8") as fh:
        if u.size:
            fh.write("\n".join(f"{a} {b}" for a, b in zip(u.tolist(), v.tolist())))
            fh.write("\n")


def load_edge_list(path) -> Graph:
    """Parse a whitespace-separated edge list; '#' lines are comments."""
    p = Path(path)
    text = p.read_text(encoding="utf-8")
    us: list[int] = []
    vs: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{p}: malformed line {lineno}: {raw!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"{p}: malformed line {lineno}: {raw!r}") from None
        if a < 0 or b < 0:
            raise ValueError(f"{p}: malformed line {lineno}: {raw!r}")
        us.append(a)
        vs.append(b)
    if not us:
        raise ValueError(f"{p}: empty edge list")
    return build_from_edges(np.stack([np.asarray(us), np.asarray(vs)], axis=1))


# ---------------------------------------------------------------------------
# Deterministic parallel per-source map. Workers are forked so the CSR
# arrays are shared copy-on-write; results are concatenated in source
# order, so the outcome is independent of the worker count.

_WORKER_STATE: dict = {}


def _init_worker(graph: Graph, fn):
    _WORKER_STATE["graph"] = graph
    _WORKER_STATE["fn"] = fn


def _run_chunk(sources):
    g = _WORKER_STATE["graph"]
    fn = _WORKER_STATE["fn"]
    return [fn(g, s) for s in sources]


def map_sources(fn, g: Graph, sources, threads: int = 1) -> list:
    """[fn(g, s) for s in sources], optionally fanned out over processes."""
    sources = list(sources)
    if threads <= 1 or len(sources) < 64:
        return [fn(g, s) for s in sources]
    nchunks = threads * 8
    chunks = [sources[i::nchunks] for i in range(nchunks)]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(threads, initializer=_init_worker, initargs=(g, fn)) as pool:
        results = pool.map(_run_chunk, chunks)
    out: list = [None] * len(sources)
    for i, chunk_res in enumerate(results):
        out[i::nchunks] = chunk_res
    return out
