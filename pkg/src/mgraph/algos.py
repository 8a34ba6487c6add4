"""Diameter/radius algorithms and exact top-k closeness, instrumented.

Lower-bound heuristics (random sampling, double sweep, the guaranteed
3/2-approximation, the sum-sweep selection) and the exact algorithms
(level-ordered eccentricity refinement, certified bound refinement for
both diameter and radius) all run over a shared read-only Graph and
report how many BFS invocations they actually performed. Every tie is
broken toward the lowest vertex id so repeated runs are byte-identical.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import graph as _g
from .graph import Graph, UNREACHED, bfs_call_count, multi_source_sweep


class RWFailure(RuntimeError):
    """Both attempts of the randomized 3/2-approximation failed to make
    its source and probe sets intersect; callers may rerun."""


@dataclass(frozen=True)
class AlgoResult:
    algo: str
    value: int
    witnesses: tuple[int, ...]
    bfs_count: int
    wall_time_ms: float
    params: dict = field(default_factory=dict)
    seed: int | None = None

    def to_dict(self) -> dict:
        return {
            "algo": self.algo,
            "value": int(self.value),
            "witnesses": [int(w) for w in self.witnesses],
            "bfs_count": int(self.bfs_count),
            "wall_time_ms": float(self.wall_time_ms),
            "params": dict(self.params),
            "seed": self.seed,
        }


@dataclass
class BoundState:
    """Per-vertex eccentricity brackets plus the global extremes.

    L(v) <= ecc(v) <= U(v) at all times; processed sources have both
    bounds pinned to their exact eccentricity. D_L never decreases and
    R_U never increases over a run.
    """

    L: np.ndarray
    U: np.ndarray
    D_L: int
    R_U: int
    processed: list[int]

    @classmethod
    def fresh(cls, n: int) -> "BoundState":
        return cls(L=np.zeros(n, dtype=np.int64),
                   U=np.full(n, n, dtype=np.int64),
                   D_L=0, R_U=np.iinfo(np.int64).max, processed=[])


class _Sweep:
    """Shared BFS bookkeeping for the sum-sweep family.

    Each BFS from src pins L(src) = U(src) = ecc(src), tightens
    U(v) <= ecc(src) + dist(src, v) everywhere, and (when lower_all)
    raises L(v) to dist(src, v). Distances from random sources are also
    accumulated for the argmax-sum target selection.
    """

    def __init__(self, g: Graph, seed: int, lower_all: bool):
        self.g = g
        self.state = BoundState.fresh(g.n)
        self.lower_all = lower_all
        self.sum_dist = np.zeros(g.n, dtype=np.int64)
        self.chosen = np.zeros(g.n, dtype=bool)
        self.ecc = {}
        self.rng = np.random.default_rng([int(seed), 21])

    def run_bfs(self, src: int, accumulate_sum: bool) -> int:
        dist, _ = _g._bfs_levels(self.g, src)
        reached = dist != UNREACHED
        if not reached.all():
            raise ValueError("graph must be connected")
        ecc = int(dist[reached].max())
        st = self.state
        if self.lower_all:
            np.maximum(st.L, dist, out=st.L, where=reached)
        np.minimum(st.U, ecc + dist.astype(np.int64), out=st.U, where=reached)
        st.L[src] = st.U[src] = ecc
        st.D_L = max(st.D_L, ecc)
        st.R_U = min(st.R_U, ecc)
        st.processed.append(int(src))
        self.chosen[src] = True
        self.ecc[int(src)] = ecc
        if accumulate_sum:
            self.sum_dist[reached] += dist[reached]
        return ecc

    def random_unchosen(self) -> int | None:
        free = np.flatnonzero(~self.chosen)
        if free.size == 0:
            return None
        return int(self.rng.choice(free))

    def argmax_sum_unchosen(self) -> int | None:
        masked = np.where(self.chosen, -1, self.sum_dist)
        best = int(np.argmax(masked))
        if masked[best] < 0:
            return None
        return best

    def heuristic_rounds(self, k: int, update_l_from_targets: bool):
        """k rounds of: BFS from a fresh random vertex, then BFS from the
        unchosen vertex maximizing the summed distance to the random
        sources so far. Target BFSes raise the global lower bounds."""
        for _ in range(k):
            s = self.random_unchosen()
            if s is None:
                break
            self.run_bfs(s, accumulate_sum=True)
            t = self.argmax_sum_unchosen()
            if t is None:
                break
            save = self.lower_all
            if update_l_from_targets:
                self.lower_all = True
            self.run_bfs(t, accumulate_sum=False)
            self.lower_all = save


def _timed(algo: str, value: int, witnesses, calls0: int, t0: float,
           params: dict, seed: int | None) -> AlgoResult:
    return AlgoResult(algo=algo, value=int(value),
                      witnesses=tuple(int(w) for w in witnesses),
                      bfs_count=bfs_call_count() - calls0,
                      wall_time_ms=(time.perf_counter() - t0) * 1e3,
                      params=params, seed=seed)


def sample_lower_bound(g: Graph, k: int, seed: int = 0) -> AlgoResult:
    """Max eccentricity over k uniformly sampled sources (no replacement)."""
    if not 1 <= k <= g.n:
        raise ValueError("k must be in [1, n]")
    t0 = time.perf_counter()
    calls0 = bfs_call_count()
    rng = np.random.default_rng([int(seed), 31])
    sources = np.sort(rng.choice(g.n, size=k, replace=False))
    eccs, _ = multi_source_sweep(g, sources)
    best = int(np.argmax(eccs))
    return _timed("sampling", int(eccs[best]), [int(sources[best])],
                  calls0, t0, {"k": k}, seed)


def two_sweep(g: Graph, start: int | None = None, seed: int = 0,
              max_degree_start: bool = False) -> AlgoResult:
    """BFS to the farthest vertex t, then report ecc(t)."""
    t0 = time.perf_counter()
    calls0 = bfs_call_count()
    if start is None:
        if max_degree_start:
            start = g.max_degree_vertex()
        else:
            start = int(np.random.default_rng([int(seed), 32]).integers(g.n))
    dist, _ = _g._bfs_levels(g, start)
    reached = dist != UNREACHED
    far = int(dist[reached].max())
    t = int(np.flatnonzero(reached & (dist == far))[0])  # lowest id tie
    dist2, _ = _g._bfs_levels(g, t)
    r2 = dist2 != UNREACHED
    ecc_t = int(dist2[r2].max())
    u = int(np.flatnonzero(r2 & (dist2 == ecc_t))[0])
    return _timed("two_sweep", ecc_t, [t, u], calls0, t0,
                  {"start": int(start), "max_degree_start": max_degree_start},
                  seed)


def rw_approx(g: Graph, seed: int = 0) -> AlgoResult:
    """Randomized diameter lower bound with a 2/3-of-D guarantee.

    Samples k = min(n, ceil(sqrt(n) ln n)) sources, probes the vertex t
    farthest from the whole sample, collects the k vertices closest to t,
    and reports the best eccentricity seen on both sets provided they
    intersect. A disjoint pair triggers one reseeded retry, then failure.
    """
    if g.n < 4:
        raise ValueError("n must be at least 4")
    t0 = time.perf_counter()
    calls0 = bfs_call_count()
    import math
    k = min(g.n, int(math.ceil(math.sqrt(g.n) * math.log(g.n))))
    for attempt, s in enumerate((seed, seed + 0x9E3779B9)):
        rng = np.random.default_rng([int(s), 33])
        sources = np.sort(rng.choice(g.n, size=k, replace=False))
        eccs, min_dist = multi_source_sweep(g, sources)
        reachable = min_dist != UNREACHED
        md = np.where(reachable, min_dist, -1)
        t = int(np.argmax(md))
        dist_t, _ = _g._bfs_levels(g, t)
        # k vertices closest to t, distance then id
        reach_t = dist_t != UNREACHED
        order = np.lexsort((np.arange(g.n), np.where(reach_t, dist_t, UNREACHED)))
        closest = order[:k]
        src_set = set(sources.tolist())
        if not src_set.intersection(closest.tolist()):
            continue
        fresh = np.setdiff1d(closest, sources)
        eccs2, _ = multi_source_sweep(g, fresh) if fresh.size else (np.empty(0, np.int64), None)
        value = int(max(eccs.max(), eccs2.max() if eccs2.size else 0))
        if value == int(eccs.max()):
            wit = int(sources[int(np.argmax(eccs))])
        else:
            wit = int(fresh[int(np.argmax(eccs2))])
        return _timed("rw", value, [wit], calls0, t0,
                      {"k": k, "attempt": attempt}, seed)
    raise RWFailure("RW failed")


def sumsweep_heuristic(g: Graph, k: int, seed: int = 0
                       ) -> tuple[BoundState, AlgoResult]:
    """k selection rounds; the max lower bound is a diameter lower bound.

    Lower bounds come from the argmax-sum target BFSes plus exact source
    eccentricities; upper bounds are tracked on the side for reuse by the
    exact refinement.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    t0 = time.perf_counter()
    calls0 = bfs_call_count()
    sweep = _Sweep(g, seed, lower_all=False)
    sweep.heuristic_rounds(k, update_l_from_targets=True)
    st = sweep.state
    value = int(st.L.max())
    wit = int(np.argmax(st.L))
    return st, _timed("sumsweep_heuristic", value, [wit], calls0, t0,
                      {"k": k}, seed)


def ifub(g: Graph, start: int | None = None) -> AlgoResult:
    """Exact diameter by processing vertices in decreasing distance from
    a root (default: max degree), stopping once the remaining vertices
    are provably too close to matter."""
    t0 = time.perf_counter()
    calls0 = bfs_call_count()
    if start is None:
        start = g.max_degree_vertex()
    dist, _ = _g._bfs_levels(g, start)
    if np.any(dist == UNREACHED):
        raise ValueError("graph must be connected")
    ecc_start = int(dist.max())
    d_l = ecc_start
    wit = int(start)
    # decreasing distance, id ascending inside a level
    order = np.lexsort((np.arange(g.n), -dist))
    for v in order:
        if v == start:
            continue
        if 2 * int(dist[v]) <= d_l:
            # every unprocessed pair is now within 2 * dist <= D_L
            break
        dv, _ = _g._bfs_levels(g, int(v))
        ecc_v = int(dv.max())
        if ecc_v > d_l:
            d_l = ecc_v
            wit = int(v)
    return _timed("ifub", d_l, [wit], calls0, t0, {"start": int(start)}, None)


def exact_sumsweep(g: Graph, initial_k: int = 10, hub_period: int = 5,
                   seed: int = 0) -> tuple[AlgoResult, AlgoResult]:
    """Certified exact diameter and radius via bound refinement.

    Starts with the sum-sweep selection schedule, then alternates a
    diameter step (BFS from the unconfirmed vertex with the largest lower
    bound) with a radius step (BFS from the unconfirmed vertex with the
    smallest lower bound), inserting a BFS from the highest-degree
    unprocessed vertex every hub_period refinement steps. The diameter is
    final once no vertex has U(v) > D_L, the radius once no vertex has
    L(v) < R_U; every BFS confirms at least its own source, so the loop
    terminates.
    """
    if initial_k < 1:
        raise ValueError("initial_k must be at least 1")
    if hub_period < 1:
        raise ValueError("hub_period must be at least 1")
    t0 = time.perf_counter()
    calls0 = bfs_call_count()
    sweep = _Sweep(g, seed=seed, lower_all=True)
    sweep.heuristic_rounds(initial_k, update_l_from_targets=True)
    st = sweep.state
    degrees = g.degrees()
    step = 0
    diam_turn = True
    while True:
        unconf_d = st.U > st.D_L
        unconf_r = st.L < st.R_U
        need_d = bool(unconf_d.any())
        need_r = bool(unconf_r.any())
        if not need_d and not need_r:
            break
        step += 1
        src = None
        if step % hub_period == 0:
            free = ~sweep.chosen
            if free.any():
                deg_masked = np.where(free, degrees, -1)
                src = int(np.argmax(deg_masked))
        if src is None:
            pick_d = (diam_turn and need_d) or not need_r
            if pick_d:
                masked = np.where(unconf_d, st.L, -1)
                src = int(np.argmax(masked))
            else:
                masked = np.where(unconf_r, st.L, np.iinfo(np.int64).max)
                src = int(np.argmin(masked))
            diam_turn = not diam_turn
        sweep.run_bfs(src, accumulate_sum=False)
    processed = np.asarray(st.processed)
    eccs = np.asarray([sweep.ecc[int(v)] for v in processed])
    dw = processed[eccs == st.D_L]
    rw_ = processed[eccs == st.R_U]
    total = bfs_call_count() - calls0
    wall = (time.perf_counter() - t0) * 1e3
    params = {"initial_k": initial_k, "hub_period": hub_period}
    d_res = AlgoResult(algo="exact_sumsweep_diameter", value=int(st.D_L),
                       witnesses=(int(dw.min()),), bfs_count=total,
                       wall_time_ms=wall, params=params, seed=None)
    r_res = AlgoResult(algo="exact_sumsweep_radius", value=int(st.R_U),
                       witnesses=(int(rw_.min()),), bfs_count=total,
                       wall_time_ms=wall, params=params, seed=None)
    return d_res, r_res


def bcm_topk(g: Graph, k: int) -> list[tuple[int, int]]:
    """Exact k smallest-farness vertices via pruned BFS.

    Vertices are processed in decreasing-degree order; each BFS carries
    the lower bound (farness so far) + (next level) * (vertices not yet
    seen) and aborts as soon as the bound proves it cannot enter the
    current top k. Ties are resolved toward the lowest id. Output is
    identical to the unpruned computation.
    """
    if not 1 <= k <= g.n:
        raise ValueError("k must be in [1, n]")
    dist0, _ = _g._bfs_levels(g, 0)
    if np.any(dist0 == UNREACHED):
        raise ValueError("graph must be connected")
    n = g.n
    order = np.lexsort((np.arange(n), -g.degrees()))
    best: list[tuple[int, int]] = []  # (farness, vertex), kept sorted

    def kth() -> tuple[int, int]:
        return best[-1]

    for v in order:
        v = int(v)
        aborted = False
        dist = np.full(n, UNREACHED, dtype=np.int32)
        dist[v] = 0
        frontier = np.array([v], dtype=np.int64)
        partial = 0
        visited = 1
        lv = 0
        _g._bump_bfs_counter()
        while frontier.size:
            if len(best) == k:
                bound = partial + (lv + 1) * (n - visited)
                if (bound, v) > kth():
                    aborted = True
                    break
            nxt = _g._gather_neighbors(g.offsets, g.neighbors, frontier)
            if nxt.size:
                nxt = nxt[dist[nxt] == UNREACHED]
            if nxt.size == 0:
                break
            nxt = np.unique(nxt)
            lv += 1
            dist[nxt] = lv
            partial += lv * int(nxt.size)
            visited += int(nxt.size)
            frontier = nxt.astype(np.int64)
        if aborted:
            continue
        entry = (partial, v)
        if len(best) < k:
            best.append(entry)
            best.sort()
        elif entry < kth():
            best[-1] = entry
            best.sort()
    return [(v, f) for f, v in best]
