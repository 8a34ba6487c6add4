"""Neighborhood-growth measurements and exact metric quantities.

The central object is the growth clock tau_s(k): the first BFS level
from s whose size exceeds k. Per-degree averages of tau (the T~ table)
drive the empirical property checks and the tail-decay constant c; the
exact eccentricity/diameter/radius/farness routines double as the
brute-force oracles for the algorithm layer.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .graph import (Graph, UNREACHED, _bfs_level_sizes_capped, _bfs_levels,
                    map_sources, multi_source_sweep)


@dataclass(frozen=True)
class NeighborhoodProfile:
    """Exact BFS level sizes from one source (level_sizes[0] == 1)."""

    source: int
    level_sizes: np.ndarray

    @property
    def cumulative(self) -> np.ndarray:
        return np.cumsum(self.level_sizes)

    @property
    def reached(self) -> int:
        return int(self.level_sizes.sum())

    @property
    def eccentricity(self) -> int:
        return self.level_sizes.size - 1


def neighborhood_profile(g: Graph, s: int) -> NeighborhoodProfile:
    _, sizes = _bfs_levels(g, s)
    return NeighborhoodProfile(source=int(s), level_sizes=sizes)


def tau(profile: NeighborhoodProfile, k: int) -> int | None:
    """Smallest level index with more than k vertices; None if no level
    ever exceeds k (callers exclude None from averages)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return tau_from_sizes(profile.level_sizes, k)


def tau_from_sizes(sizes: np.ndarray, k: int) -> int | None:
    big = np.nonzero(sizes > k)[0]
    if big.size == 0:
        return None
    return int(big[0])


def _tau_many(g: Graph, s: int, ks: list[int]) -> list[int | None]:
    """tau_s for several thresholds from one capped BFS."""
    sizes = _bfs_level_sizes_capped(g, s, max(ks))
    return [tau_from_sizes(sizes, k) for k in ks]


@dataclass(frozen=True)
class TauTable:
    """Growth-clock values tau_s(ceil(n^x)) over a vertex sample.

    taus is (len(vertices), len(x_grid)) with -1 encoding "no level ever
    exceeded the threshold"; class_means[i] maps degree -> mean tau over
    the sampled vertices of that degree with a defined tau.
    """

    n: int
    x_grid: tuple[float, ...]
    k_values: tuple[int, ...]
    vertices: np.ndarray
    degrees: np.ndarray
    taus: np.ndarray
    class_means: tuple[dict[int, float], ...]

    def _xi(self, x: float) -> int:
        for i, xv in enumerate(self.x_grid):
            if math.isclose(xv, x):
                return i
        raise ValueError(f"x={x} not in table grid {self.x_grid}")

    def tau_of(self, vertex: int, x: float) -> int | None:
        xi = self._xi(x)
        vi = int(np.searchsorted(self.vertices, vertex))
        if vi >= self.vertices.size or self.vertices[vi] != vertex:
            raise ValueError(f"vertex {vertex} not in table sample")
        t = int(self.taus[vi, xi])
        return None if t < 0 else t

    def t_tilde(self, degree: int, x: float) -> float | None:
        return self.class_means[self._xi(x)].get(int(degree))

    def deviations(self, x: float) -> np.ndarray:
        """tau_s - T~_deg(s) per sampled vertex; NaN where tau undefined."""
        xi = self._xi(x)
        means = self.class_means[xi]
        t = self.taus[:, xi].astype(np.float64)
        t[self.taus[:, xi] < 0] = np.nan
        tbar = np.array([means.get(int(d), np.nan) for d in self.degrees])
        return t - tbar

    def to_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["vertex", "degree"] + [f"tau_x{x:g}" for x in self.x_grid])
            for vi, v in enumerate(self.vertices.tolist()):
                row = [v, int(self.degrees[vi])]
                for xi in range(len(self.x_grid)):
                    t = int(self.taus[vi, xi])
                    row.append("" if t < 0 else t)
                w.writerow(row)


def tau_table(g: Graph, x_grid, sample=None, threads: int = 1) -> TauTable:
    """tau_s(ceil(n^x)) for each x and every sampled source, plus exact
    per-degree-class means over the sample (None values excluded)."""
    x_grid = tuple(float(x) for x in x_grid)
    if not x_grid or not all(0 < x < 1 for x in x_grid):
        raise ValueError("x values must lie in (0, 1)")
    if sample is None:
        vertices = np.arange(g.n, dtype=np.int64)
    else:
        vertices = np.unique(np.asarray(sample, dtype=np.int64))
        if vertices.size == 0:
            raise ValueError("empty sample")
        if vertices.min() < 0 or vertices.max() >= g.n:
            raise ValueError("sample vertex out of range")
    ks = [int(math.ceil(g.n ** x)) for x in x_grid]
    rows = map_sources(lambda gg, s: _tau_many(gg, s, ks), g,
                       vertices.tolist(), threads=threads)
    taus = np.full((vertices.size, len(x_grid)), -1, dtype=np.int32)
    for i, row in enumerate(rows):
        for j, t in enumerate(row):
            if t is not None:
                taus[i, j] = t
    degrees = g.degrees()[vertices]
    class_means = []
    for j in range(len(x_grid)):
        col = taus[:, j]
        means: dict[int, float] = {}
        ok = col >= 0
        for d in np.unique(degrees):
            mask = (degrees == d) & ok
            if mask.any():
                means[int(d)] = float(col[mask].mean())
        class_means.append(means)
    return TauTable(n=g.n, x_grid=x_grid, k_values=tuple(ks),
                    vertices=vertices, degrees=degrees, taus=taus,
                    class_means=tuple(class_means))


# ---------------------------------------------------------------------------
# exact metric quantities (the brute-force oracles)

def eccentricity(g: Graph, s: int) -> int:
    dist, _ = _bfs_levels(g, s)
    d = dist[dist != UNREACHED]
    return int(d.max())


def all_eccentricities(g: Graph, threads: int = 1) -> np.ndarray:
    """One BFS per vertex; the O(nm) oracle behind exact diameter/radius.

    Runs through the batched multi-source kernel; the result is
    independent of the threads argument by construction.
    """
    del threads  # batched kernel is deterministic and already fast
    eccs, _ = multi_source_sweep(g, np.arange(g.n, dtype=np.int64))
    return eccs


def exact_diameter(g: Graph, threads: int = 1) -> int:
    return int(all_eccentricities(g, threads=threads).max())


def exact_radius(g: Graph, threads: int = 1) -> int:
    return int(all_eccentricities(g, threads=threads).min())


def farness(g: Graph, s: int) -> int:
    """Sum of distances from s to every reachable vertex."""
    dist, _ = _bfs_levels(g, s)
    return int(dist[dist != UNREACHED].sum())


def closeness(g: Graph, s: int) -> float:
    return 1.0 / farness(g, s)


class AverageDistance(NamedTuple):
    value: float
    stderr: float
    sources: int


def average_distance(g: Graph, sample_size: int | None = None,
                     seed: int = 0, threads: int = 1) -> AverageDistance:
    """Mean distance over sampled sources: mean farness / (n - 1).

    With the full sample this equals sum(farness) / (n (n-1)) exactly.
    Default sample is min(n, 1000) sources, drawn without replacement.
    """
    if sample_size is None:
        sample_size = min(g.n, 1000)
    if not 1 <= sample_size <= g.n:
        raise ValueError("sample_size must be in [1, n]")
    if sample_size == g.n:
        sources = np.arange(g.n, dtype=np.int64)
    else:
        rng = np.random.default_rng([int(seed), 11])
        sources = np.sort(rng.choice(g.n, size=sample_size, replace=False))
    far = np.asarray(map_sources(farness, g, sources.tolist(), threads=threads),
                     dtype=np.float64)
    per_source = far / (g.n - 1)
    value = float(per_source.mean())
    stderr = float(per_source.std(ddof=1) / math.sqrt(sample_size)) \
        if sample_size > 1 else 0.0
    return AverageDistance(value=value, stderr=stderr, sources=int(sample_size))


def estimate_constant_C(g: Graph, sample_size: int | None = None,
                        seed: int = 0, diameter: int | None = None) -> float:
    """2 * avg / (D - avg) with avg estimated by sampling; pass a
    precomputed diameter for large graphs (otherwise the O(nm) oracle
    runs)."""
    avg = average_distance(g, sample_size=sample_size, seed=seed).value
    d = exact_diameter(g) if diameter is None else int(diameter)
    if d <= avg:
        raise ValueError("formula undefined")
    return 2.0 * avg / (d - avg)


class TailFit(NamedTuple):
    c: float
    slope: float
    residual: float
    counts: tuple[int, ...]


def fit_tail_decay(deviations: np.ndarray, min_buckets: int = 3) -> TailFit:
    """Least-squares fit of log #{dev >= k} against k over k >= 1.

    Returns c = e^slope. NaN deviations (undefined tau) are ignored.
    Raises when fewer than min_buckets cumulative buckets are nonempty.
    """
    dev = np.asarray(deviations, dtype=np.float64)
    dev = dev[~np.isnan(dev)]
    kmax = int(math.floor(dev.max())) if dev.size else 0
    ks, counts = [], []
    for k in range(1, kmax + 1):
        c = int((dev >= k).sum())
        if c > 0:
            ks.append(k)
            counts.append(c)
    if len(ks) < min_buckets:
        raise ValueError("insufficient tail buckets")
    x = np.asarray(ks, dtype=np.float64)
    y = np.log(np.asarray(counts, dtype=np.float64))
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return TailFit(c=float(math.exp(slope)), slope=float(slope),
                   residual=resid, counts=tuple(counts))


def estimate_c_tail(table: TauTable, x: float) -> float:
    """Tail-decay constant of tau deviations at exponent x."""
    return fit_tail_decay(table.deviations(x)).c
